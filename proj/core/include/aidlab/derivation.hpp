#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "aidlab/algebra.hpp"
#include "aidlab/laurent.hpp"

namespace aidlab {

/// A linear map given on every basis vector of a degree window, the
/// representation of derivation candidates. Images are arbitrary finite
/// elements; only the domain is truncated.
class DMap {
public:
    DMap(AlgSpec spec, int window);

    const AlgSpec& spec() const { return spec_; }
    int window() const { return window_; }
    const std::vector<BasisVec>& domain() const { return domain_; }
    bool in_domain(BasisVec b) const;

    const Elem& image(BasisVec b) const; ///< throws when b is outside the domain
    /// Validates b in domain, the image valid for the variant, and the
    /// invariant image(K) ∈ F·K.
    void set_image(BasisVec b, Elem img);

    bool applicable(const Elem& e) const; ///< support inside the domain
    Elem apply(const Elem& e) const;      ///< linear extension; throws if not applicable

    bool is_zero() const;
    /// even: preserves the Z2-grading on every image; odd: reverses it.
    Parity map_parity() const;

    DMap& operator+=(const DMap& o);
    DMap& operator-=(const DMap& o);
    friend DMap operator+(DMap a, const DMap& b) { a += b; return a; }
    friend DMap operator-(DMap a, const DMap& b) { a -= b; return a; }
    DMap scaled(const Rat& c) const;

    friend bool operator==(const DMap& a, const DMap& b);

private:
    AlgSpec spec_;
    int window_;
    std::vector<BasisVec> domain_;
    std::map<BasisVec, Elem> images_;
    static const Elem zero_elem_;
};

struct DerivationCheck {
    bool ok = true;
    long checked = 0;
    long skipped = 0; ///< pairs whose bracket support leaves the window
    /// (b1, b2, lhs = D[b1,b2], rhs = [D b1, b2] + [b1, D b2]) for the first
    /// violated pair.
    std::optional<std::tuple<BasisVec, BasisVec, Elem, Elem>> counterexample;
};

/// Verifies D[b1,b2] = [D b1, b2] + [b1, D b2] over all domain pairs whose
/// bracket support stays inside the window.
DerivationCheck check_derivation(const DMap& d);

/// ad y on the window: b ↦ [y, b].
DMap make_ad(const AlgSpec& spec, const Elem& y, int window);

/// Parity decomposition D = D0 + D1 into grade-preserving and
/// grade-reversing parts.
std::pair<DMap, DMap> split_parity_map(const DMap& d);

/// The Lemma 2.3 split D = d + delta: d(h_i⊗t^{2j}) = D(h_i⊗t^0)·t^{2j},
/// d(x_i⊗t^{2j+1}) = D(x_i⊗t^1)·t^{2j}, delta = D − d. Loop variant,
/// window >= 1.
std::pair<DMap, DMap> project_to_DS(const DMap& d);

/// Coordinates of a D_S-form map: evenPart[(m,e)] = b means
/// x_m⊗t^a ↦ b·x_m⊗t^{a+e} (e even); oddPart[(m,e)] = a means
/// h_m⊗t^a ↦ a·x_m⊗t^{a+e} (e odd).
struct DSCoords {
    std::map<std::pair<int, int>, Rat> even;
    std::map<std::pair<int, int>, Rat> odd;

    friend bool operator==(const DSCoords&, const DSCoords&) = default;
};

struct Diagnostic {
    std::string message;
    std::optional<BasisVec> at; ///< offending basis vector, when one exists
    std::string term;           ///< offending image term, printed
};

template <typename T> using Classified = std::variant<T, Diagnostic>;

Classified<DSCoords> classify_DS(const DMap& d);
DMap reconstruct_DS(const AlgSpec& spec, const DSCoords& coords, int window);

/// Reads the f_k of Lemma 2.5 from a map vanishing on H⊗1 and I⊗t:
/// h_i⊗t^{2j} ↦ h_i⊗ j f_i t^{2j-2}, x_i⊗t^{2j+1} ↦ x_i⊗ j f_i t^{2j-1}.
Classified<std::vector<LPoly>> classify_DL1(const DMap& delta);

/// λ_k ⊗ δ_f with δ_f(t^{2j}) = j t^{2j-2} f(t). Loop variant; f must have
/// even support.
struct CentDerForm {
    int k = 1;
    LPoly f;
};
DMap make_cent_der(const AlgSpec& spec, const CentDerForm& form, int window);
DMap reconstruct_DL1(const AlgSpec& spec, const std::vector<LPoly>& f, int window);

/// Basis of Der(L) on the finite variant, computed as the nullspace of the
/// derivation constraints on End(L). Dimension 2l.
std::vector<DMap> der_L_basis(int l);

/// Basis of Cent(L): nullspace of λ[a,b] = [λa,b] = [a,λb]. Normalized so
/// the k-th map is the projector λ_k (λ_k(h_j) = δ_kj h_j).
std::vector<DMap> centroid_basis(int l);

/// All window maps of one parity that vanish on the degree-0/1 vectors and
/// satisfy every checkable derivation constraint, with image degrees bounded
/// by image_window. Basis of the solution space.
std::vector<DMap> dl1_window_nullspace(const AlgSpec& loop_spec, int window,
                                       int image_window, Parity parity);

} // namespace aidlab
