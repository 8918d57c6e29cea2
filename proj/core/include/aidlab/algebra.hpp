#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aidlab/matrix.hpp"
#include "aidlab/rational.hpp"

namespace aidlab {

/// finite: L itself (h_i = h_i⊗t^0, x_i = x_i⊗t^1);
/// loop:   L̄ = H⊗F[t^2,t^-2] ⊕ I⊗F[t^2,t^-2]t;
/// affine: L̂ = L̄ ⊕ F·K.
enum class Variant : std::uint8_t { finite, loop, affine };

std::string variant_name(Variant v);

enum class Kind : std::uint8_t { H = 0, X = 1, K = 2 };

/// One basis vector: h_i⊗t^d (d even), x_i⊗t^d (d odd), or the central K.
/// Ordering (kind, index, degree) fixes every matrix layout and report order.
struct BasisVec {
    Kind kind = Kind::H;
    int index = 0;  ///< 1..l; 0 for K
    int degree = 0; ///< t-exponent; 0 for K

    static BasisVec h(int i, int d) { return BasisVec{Kind::H, i, d}; }
    static BasisVec x(int i, int d) { return BasisVec{Kind::X, i, d}; }
    static BasisVec k() { return BasisVec{Kind::K, 0, 0}; }

    friend auto operator<=>(const BasisVec&, const BasisVec&) = default;
};

enum class Parity { even, odd, mixed, zero };

/// Finite linear combination of basis vectors with exact coefficients.
class Elem {
public:
    Elem() = default;
    static Elem unit(BasisVec b) { return of(b, Rat(1)); }
    static Elem of(BasisVec b, Rat c);

    bool is_zero() const { return terms_.empty(); }
    const std::map<BasisVec, Rat>& terms() const { return terms_; }
    Rat coeff(BasisVec b) const;
    std::size_t size() const { return terms_.size(); }

    void add_term(BasisVec b, const Rat& c);

    Elem operator-() const;
    Elem& operator+=(const Elem& o);
    Elem& operator-=(const Elem& o);
    friend Elem operator+(Elem a, const Elem& b) { a += b; return a; }
    friend Elem operator-(Elem a, const Elem& b) { a -= b; return a; }
    Elem scaled(const Rat& c) const;

    Rat k_coeff() const { return coeff(BasisVec::k()); }
    Elem without_k() const;
    /// Multiply by t^k; throws std::logic_error when a K term is present.
    Elem shifted(int k) const;

    friend bool operator==(const Elem& a, const Elem& b) { return a.terms_ == b.terms_; }

private:
    std::map<BasisVec, Rat> terms_;
};

Parity parity_of(const Elem& e);
Parity parity_of(BasisVec b);

/// The algebra presented by (rank l, Gram matrix G, variant). G holds the
/// root pairings (β_k, β_m); its inverse B holds the torus form (h_i, h_u)
/// that feeds the central cocycle.
class AlgSpec {
public:
    /// Validates: G is l×l, symmetric, positive definite (every leading
    /// principal minor > 0; the failing minor is named on rejection).
    static AlgSpec make(int rank, RatMatrix gram, Variant variant);

    int rank() const { return rank_; }
    Variant variant() const { return variant_; }
    const RatMatrix& gram() const { return gram_; }
    const RatMatrix& torus_form() const { return torus_form_; }

    bool valid(BasisVec b) const;
    void require_valid(BasisVec b) const;
    void require_valid(const Elem& e) const;

    /// All basis vectors with |degree| <= window, plus K in the affine
    /// variant, in canonical order. The finite variant ignores the window.
    std::vector<BasisVec> window_basis(int window) const;

    /// [h_i⊗t^a, x_j⊗t^b] = δ_ij x_j⊗t^{a+b}; [x,x'] = 0;
    /// [h_i⊗t^a, h_u⊗t^b] = a δ_{a+b,0} B_iu K (affine only); K central.
    Elem bracket(BasisVec a, BasisVec b) const;
    Elem bracket(const Elem& a, const Elem& b) const;

    /// h_i' = Σ_k G_ik h_k⊗t^0, the torus-form dual of h_i.
    Elem dual_torus(int i) const;

    friend bool operator==(const AlgSpec& a, const AlgSpec& b);

private:
    AlgSpec(int rank, RatMatrix gram, RatMatrix torus_form, Variant variant)
        : rank_(rank), variant_(variant), gram_(std::move(gram)),
          torus_form_(std::move(torus_form)) {}

    int rank_;
    Variant variant_;
    RatMatrix gram_;
    RatMatrix torus_form_;
};

AlgSpec with_variant(const AlgSpec& spec, Variant v);

} // namespace aidlab
