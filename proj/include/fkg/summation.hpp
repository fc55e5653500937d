#pragma once

#include <cmath>

namespace fkg {

/// Neumaier's variant of Kahan summation. Order-dependent but deterministic:
/// adding the same terms in the same order always produces the same bits.
class CompensatedSum {
public:
    constexpr CompensatedSum() = default;
    constexpr explicit CompensatedSum(double initial) : sum_(initial) {}

    constexpr CompensatedSum& operator+=(double term) noexcept {
        const double t = sum_ + term;
        if (std::abs(sum_) >= std::abs(term)) {
            compensation_ += (sum_ - t) + term;
        } else {
            compensation_ += (term - t) + sum_;
        }
        sum_ = t;
        return *this;
    }

    [[nodiscard]] constexpr double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace fkg
