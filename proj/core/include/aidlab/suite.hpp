#pragma once

#include "aidlab/aid.hpp"
#include "aidlab/session.hpp"

namespace aidlab {

/// Individual suite checks. Each runs one verification campaign and returns
/// a pass/fail/finding record with a reproducible witness.
namespace checks {

CheckResult bracket_laws(const AlgSpec& any_variant_spec, int window);
CheckResult der_L_oracle(int lmax);
CheckResult der_L1_printed_form(int l); ///< finding: b-directions fail the law
CheckResult centroid_oracle(int lmax);
CheckResult lemma23_split(const AlgSpec& loop_spec, int window, std::uint64_t seed, int count);
CheckResult lemma25_window(const AlgSpec& loop_spec, int window);
CheckResult thm26_inner(const AlgSpec& loop_spec, int window, std::uint64_t seed, int count);
CheckResult lemma32_certify(const AlgSpec& affine_spec, int window, int jmax,
                            std::uint64_t seed, int random_count, int ywindow_cap);
CheckResult dij_j0_finding(const AlgSpec& affine_spec, int window);
CheckResult thm33_roundtrip(const AlgSpec& affine_spec, int window, std::uint64_t seed,
                            int count);
CheckResult independence(const AlgSpec& affine_spec, int window, int y_window);
CheckResult rigidity(const AlgSpec& affine_spec, int window, int y_window);
CheckResult parser_roundtrip(std::uint64_t seed, int count);
CheckResult linalg_oracle(std::uint64_t seed, int count);

} // namespace checks

SolveSchedule schedule_for(int window, int ywindow_cap);

/// Runs every check at the configured scale. Deterministic under a fixed
/// seed. Findings do not fail the report.
ReportFile run_suite(const SuiteConfig& config);

} // namespace aidlab
