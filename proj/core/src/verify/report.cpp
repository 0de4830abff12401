#include "polyembed/verify/report.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>
#include <string>

#include "polyembed/shape_literal.hpp"
#include "polyembed/verify/parallel.hpp"

namespace polyembed {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict combine(const std::vector<VerificationReport>& reports)
{
    Verdict out = Verdict::Pass;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::Fail) return Verdict::Fail;
        if (r.verdict == Verdict::Inconclusive) out = Verdict::Inconclusive;
    }
    return out;
}

namespace {

std::string vec_text(const Vec& v)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_double(v[i]);
    }
    return s + ")";
}

}  // namespace

std::string to_key_value(const VerificationReport& r, bool include_timing)
{
    std::ostringstream os;
    os << "check=" << r.check << "\n";
    os << "verdict=" << to_string(r.verdict) << "\n";
    os << "samples=" << r.samples << "\n";
    os << "tolerance=" << format_double(r.tolerance) << "\n";
    os << "margin=" << format_double(r.margin) << "\n";
    for (const auto& [k, v] : r.metrics) os << "metric." << k << "=" << format_double(v) << "\n";
    for (std::size_t i = 0; i < r.witnesses.size(); ++i) os << "witness." << i << "=" << vec_text(r.witnesses[i]) << "\n";
    for (std::size_t i = 0; i < r.notes.size(); ++i) os << "note." << i << "=" << r.notes[i] << "\n";
    if (include_timing) os << "wall_time=" << format_double(r.wall_time) << "\n";
    return os.str();
}

nlohmann::json to_json(const VerificationReport& r, bool include_timing)
{
    nlohmann::json j;
    j["check"] = r.check;
    j["verdict"] = to_string(r.verdict);
    j["samples"] = r.samples;
    j["tolerance"] = r.tolerance;
    j["margin"] = r.margin;
    j["metrics"] = r.metrics;
    auto w = nlohmann::json::array();
    for (const auto& v : r.witnesses) w.push_back(std::vector<double>(v.data(), v.data() + v.size()));
    j["witnesses"] = w;
    j["notes"] = r.notes;
    if (include_timing) j["wall_time"] = r.wall_time;
    return j;
}

namespace {

double now_seconds()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

Stopwatch::Stopwatch() : start_(now_seconds()) {}

double Stopwatch::seconds() const { return now_seconds() - start_; }

unsigned worker_count()
{
    if (const char* env = std::getenv("POLYEMBED_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

}  // namespace polyembed
