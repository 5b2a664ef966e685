// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "crt/examples.hpp"

// Verification suite: a fixed registry of checks run against one example geometry.
namespace crt::suite {

inline constexpr int schema_version = 1;

// absolute: max_abs <= tol. relative: max_rel <= tol, residual/(1 + |reference|).
// at_least: non-vacuity, the measured magnitude (max_abs) must reach tol.
enum class Measure { absolute, relative, at_least };
enum class Status { pass, fail, skip };

std::string to_string(Measure m);
std::string to_string(Status s);

struct CheckInfo {
    std::string id;      // group.name
    std::string anchor;  // the identity or statement the check reproduces
    std::vector<int> criteria;
    Measure measure = Measure::absolute;
    double tol = 1e-9;
    // informational checks report a corrected or diagnostic variant next to a literal one
    bool informational = false;
    std::string group() const { return id.substr(0, id.find('.')); }
};

// sorted by id
const std::vector<CheckInfo>& registry();
const CheckInfo* find_check(const std::string& id);

struct CheckResult {
    CheckInfo info;
    Status status = Status::skip;
    int points = 0;  // evaluations that entered the residuals
    double max_abs = 0.0;
    double max_rel = 0.0;
    double tol = 0.0;  // effective tolerance after overrides
    double wall_ms = 0.0;
    std::string note;
};

struct RunConfig {
    std::string filter = "all";  // all | group | check id | criterion:N, comma separated
    int points = 20;
    std::uint64_t seed = 42;
    std::map<std::string, double> tol_override;  // by check id, "*" for every check
    bool timing = true;                          // false zeroes wall_ms
};

struct Report {
    std::string example;
    RunConfig config;
    std::vector<CheckResult> checks;  // sorted by id
    bool passed() const;              // no check has status fail
    int count(Status s) const;
};

bool selected(const CheckInfo& c, const std::string& filter);

// Checks that throw are reported as failed with the message in the note.
Report run_suite(const ExampleGeometry& ex, const RunConfig& cfg);

// format: json or text; throws std::invalid_argument otherwise
std::string emit_report(const Report& r, const std::string& format);
// structural validation of a parsed JSON report; empty string when valid
std::string validate_report_json(const std::string& text);

}  // namespace crt::suite
