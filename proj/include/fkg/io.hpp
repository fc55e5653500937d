#pragma once

// Deterministic text output: shortest round-trip decimal formatting, CSV
// tables and the JSON verification report.

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "fkg/verification.hpp"

namespace fkg {

/// Shortest decimal string that parses back to exactly `v`.
[[nodiscard]] inline std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        return "nan";
    }
    return {buf, end};
}

/// Parses a value written by format_double.
[[nodiscard]] inline double parse_double(std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw domain_error("parse_double: malformed number '" + std::string(text) + "'");
    }
    return v;
}

/// Column-named table of doubles.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_double(row[i]);
        }
        os << '\n';
    }
}

inline void write_json(std::ostream& os, const Table& table) {
    nlohmann::ordered_json j;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    os << j.dump(2) << '\n';
}

/// One entry of the verification report.
struct VerificationCase {
    std::string name;
    double max_abs_residual = 0.0;
    double tail_bound = 0.0;
    bool verdict = false;
    std::string note;
};

[[nodiscard]] inline VerificationCase to_case(std::string name, const ResidualReport& r,
                                              std::string note = {}) {
    return {std::move(name), r.max_abs_residual, r.truncation_tail_bound, r.verdict,
            std::move(note)};
}

/// {suite, cases: [{name, max_abs_residual, tail_bound, verdict[, note]}]}
[[nodiscard]] inline nlohmann::ordered_json report_to_json(const std::string& suite,
                                                           const std::vector<VerificationCase>& cases) {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["cases"] = nlohmann::ordered_json::array();
    for (const auto& c : cases) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["max_abs_residual"] = c.max_abs_residual;
        e["tail_bound"] = c.tail_bound;
        e["verdict"] = c.verdict ? "pass" : "fail";
        if (!c.note.empty()) {
            e["note"] = c.note;
        }
        j["cases"].push_back(std::move(e));
    }
    return j;
}

}  // namespace fkg
