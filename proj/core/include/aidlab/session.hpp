#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aidlab/algebra.hpp"
#include "aidlab/derivation.hpp"

namespace aidlab {

struct SuiteConfig {
    int rank = 2;
    RatMatrix gram;    ///< empty → identity(rank)
    int window = 6;
    int ywindow_cap = 14;
    std::uint64_t seed = 42;

    /// Throws std::invalid_argument on rejected configs (window < 1, bad gram
    /// dimensions, cap below window).
    void validate() const;
    RatMatrix effective_gram() const;
};

/// Named algebra, elements and derivation maps, plus the suite configuration;
/// round-trips through JSON exactly.
struct Session {
    AlgSpec spec;
    std::map<std::string, Elem> elements;
    std::map<std::string, DMap> dmaps;
    SuiteConfig suite;
};

std::string session_to_json(const Session& s);
Session session_from_json(const std::string& text); ///< throws std::runtime_error
void save_session(const Session& s, const std::string& path);
Session load_session(const std::string& path);

enum class CheckStatus { pass, fail, finding };

std::string status_name(CheckStatus s);

struct CheckResult {
    std::string name;
    std::string params_json = "{}";  ///< JSON object fragment
    CheckStatus status = CheckStatus::pass;
    std::string witness_json = "{}"; ///< reproducible witness/certificate
    double ms = 0.0;
};

struct ReportFile {
    std::string tool = "aidlab";
    std::string version = "0.1.0";
    std::uint64_t seed = 0;
    std::string spec_json = "{}";
    std::vector<CheckResult> checks;
};

/// Stable key order, rationals as strings "p/q".
std::string report_to_json(const ReportFile& r);
bool report_any_failure(const ReportFile& r);

std::string gram_to_json(const RatMatrix& g);
RatMatrix gram_from_json(const std::string& text);

} // namespace aidlab
