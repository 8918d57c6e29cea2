#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aidlab/derivation.hpp"

namespace aidlab {

enum class SolveStatus { solved, infeasible_in_window, not_applicable };

struct SolveResult {
    SolveStatus status = SolveStatus::not_applicable;
    std::optional<Elem> witness; ///< verified: [X, witness] == D(X)
    int window_tried = 0;
    int freedom_dim = 0; ///< dimension of the solution affine space
};

/// The Lemma 3.2 derivation D_ij: h_i⊗t^{2j} ↦ K, every other window basis
/// vector (and K) ↦ 0. Affine variant; |2j| <= window.
DMap make_Dij(const AlgSpec& spec, int i, int j, int window);

/// Exact solve of [X, Y] = D(X) for Y supported on basis vectors with
/// |degree| <= y_window (K excluded: ad K = 0). The witness is re-verified
/// by bracket evaluation before being returned.
SolveResult solve_ad_at(const AlgSpec& spec, const DMap& D, const Elem& X, int y_window);

/// The Lemma 3.2 proof ansatz
///   Y = ½ j⁻¹ h_i'⊗t^{-2j} − Σ_{k∈B} d_k h_k'⊗t^{-2j} + Σ e_{pq} x_p⊗t^{2q+1},
/// with the d_k solved from the Gram subsystem over B and the e's from the
/// A-indexed convolution equations. Returns nothing when the convolution
/// divisibility obstruction blocks the ansatz; j must be nonzero and X free
/// of K.
std::optional<Elem> lemma32_ansatz_Y(const AlgSpec& spec, int i, int j, const Elem& X);

struct ProbeStrategy {
    bool basis = false;
    int random_count = 0;
    std::uint64_t seed = 0;
    bool adversarial = false;

    static ProbeStrategy basis_only() { return {true, 0, 0, false}; }
    static ProbeStrategy random(int count, std::uint64_t seed) { return {false, count, seed, false}; }
    static ProbeStrategy adversarial_only() { return {false, 0, 0, true}; }
    static ProbeStrategy full(int count, std::uint64_t seed) { return {true, count, seed, true}; }
};

/// Y-window escalation: offsets added to the D-window, tried in order.
struct SolveSchedule {
    std::vector<int> offsets{0, 2, 4, 8};
};

enum class Verdict { certified_on_samples, refuted, inconclusive };

std::string verdict_name(Verdict v);

struct ProbeOutcome {
    Elem x;
    SolveResult result;
    bool structural = false;     ///< window-independent infeasibility
    std::string certificate;     ///< e.g. which component of D(X) is unreachable
};

struct CertReport {
    std::string target;
    Verdict verdict = Verdict::inconclusive;
    std::vector<ProbeOutcome> probes;
    std::optional<Elem> refuting_witness;
};

/// Probes D per strategy. A probe refutes when some component of D(X) is
/// unreachable by [X, ·] regardless of window (zero-row certificate);
/// certified-on-samples when every probe solves. Never claims a proof.
CertReport certify_aid(const AlgSpec& spec, const DMap& D, const ProbeStrategy& strategy,
                       const SolveSchedule& schedule = {});

/// True when no element [X, e] can have a nonzero v-component, for any basis
/// vector e of any degree. Decided from the bracket structure, not a window.
bool component_reachable(const AlgSpec& spec, const Elem& X, BasisVec v);

/// First unreachable component of target = D(X), if any.
std::optional<BasisVec> structural_obstruction(const AlgSpec& spec, const Elem& X,
                                               const Elem& target);

/// Joint exact solve of D(b) = [y, b] over every window basis vector; y
/// supported in |degree| <= y_window, K excluded. Verified before returning.
std::optional<Elem> find_inner(const AlgSpec& spec, const DMap& D, int y_window);

/// Coordinates of Theorem 3.3: D = Σ a_ij D_ij + ad y.
struct AidCoords {
    std::map<std::pair<int, int>, Rat> a;
    Elem y; ///< zero K-component
};

/// Normalizes a homogeneous derivation of the affine variant per Theorem 3.3:
/// quotient by K, find the inner part, read a_ij off the K-components of
/// (D − ad y)(h_i⊗t^{2j}). Odd derivations must come out with empty a.
Classified<AidCoords> normalize_aid(const AlgSpec& spec, const DMap& D,
                                    const SolveSchedule& schedule = {});

struct IndependenceReport {
    bool independent = false;
    int nullspace_dim = 0;   ///< of the joint system (a, y)
    int a_component_dim = 0; ///< dimension of the a-projection of the nullspace
};

/// Tests {D_ij + Inn : (i,j) in indices} for linear independence in
/// AID/Inn on the window: the joint homogeneous system
/// Σ a_ij D_ij(b) = [y, b] must have no solution with a ≠ 0.
IndependenceReport independence_check(const AlgSpec& spec,
                                      const std::vector<std::pair<int, int>>& indices,
                                      int window, int y_window);

/// Theorem 3.3 rigidity: an inner derivation of the affine variant killing
/// I⊗Rt and K and mapping H⊗R into F·K is zero. Checks the window system
/// has nullspace {0}.
bool rigidity_holds(const AlgSpec& spec, int window, int y_window);

} // namespace aidlab
