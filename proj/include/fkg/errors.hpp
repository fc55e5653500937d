#pragma once

#include <stdexcept>
#include <string>

namespace fkg {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument lies outside the mathematical domain of the operation
/// (outside the light cone, singular point of a series, negative w, ...).
class domain_error : public error {
public:
    using error::error;
};

/// Gamma function evaluated at a non-positive integer.
class pole_error : public domain_error {
public:
    using domain_error::domain_error;
};

class overflow_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// A documented precondition of an operator does not hold.
class precondition_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// The operator coefficient vanishes, so the requested inversion has no
/// monomial solution.
class resonance_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Parameter regime the library deliberately does not handle.
class unsupported_regime_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Real-valued result would require choosing a complex branch.
class complex_result_error : public domain_error {
public:
    using domain_error::domain_error;
};

class no_root_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// Iterative summation or quadrature failed to meet its tolerance.
class convergence_error : public error {
public:
    convergence_error(const std::string& what, double achieved_error)
        : error(what), achieved_error_(achieved_error) {}

    [[nodiscard]] double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

}  // namespace fkg
