#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polyembed/linalg.hpp"

namespace polyembed {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

struct VerificationReport {
    std::string check;
    Verdict verdict = Verdict::Pass;
    std::size_t samples = 0;
    double tolerance = 0.0;
    /// Worst observed value of the checked quantity (meaning per check).
    double margin = 0.0;
    std::vector<Vec> witnesses;
    double wall_time = 0.0;
    /// Additional named measurements, kept sorted for stable output.
    std::map<std::string, double> metrics;
    std::vector<std::string> notes;

    bool passed() const { return verdict == Verdict::Pass; }
};

/// Overall verdict of several reports: Fail if any failed, else Inconclusive
/// if any was, else Pass.
Verdict combine(const std::vector<VerificationReport>& reports);

/// One `key=value` line per field; witnesses as `witness.k=(a,b,...)`.
/// Timing is left out unless requested so that output is reproducible.
std::string to_key_value(const VerificationReport& r, bool include_timing = false);
nlohmann::json to_json(const VerificationReport& r, bool include_timing = false);

/// Seconds elapsed since construction.
class Stopwatch {
public:
    Stopwatch();
    double seconds() const;

private:
    double start_;
};

}  // namespace polyembed
