#pragma once

#include <map>
#include <string>
#include <utility>

#include "aidlab/rational.hpp"

namespace aidlab {

/// Sparse Laurent polynomial in t with exact rational coefficients.
/// Invariant: no stored zero coefficients. The even-exponent subring models
/// R = F[t^2, t^-2]; the odd-exponent part models Rt.
class LPoly {
public:
    LPoly() = default;

    static LPoly monomial(Rat c, int exp);
    static LPoly constant(Rat c) { return monomial(std::move(c), 0); }
    static LPoly one() { return constant(Rat(1)); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Rat>& terms() const { return terms_; }
    Rat coeff(int exp) const;
    int min_exp() const; ///< throws on zero polynomial
    int max_exp() const; ///< throws on zero polynomial

    void add_term(int exp, const Rat& c);

    LPoly operator-() const;
    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    friend LPoly operator+(LPoly a, const LPoly& b) { a += b; return a; }
    friend LPoly operator-(LPoly a, const LPoly& b) { a -= b; return a; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);
    LPoly scaled(const Rat& c) const;
    LPoly shifted(int k) const; ///< multiply by t^k

    /// Splits by exponent parity; even + odd == *this.
    std::pair<LPoly, LPoly> parity_split() const;
    bool even_supported() const;
    bool odd_supported() const;

    friend bool operator==(const LPoly& a, const LPoly& b) { return a.terms_ == b.terms_; }

    /// Signed sum of `c t^e` monomials, exponents ascending, rationals "p/q".
    std::string str() const;

private:
    std::map<int, Rat> terms_;
};

LPoly lpoly_mul(const LPoly& a, const LPoly& b);
std::pair<LPoly, LPoly> lpoly_parity_split(const LPoly& a);

} // namespace aidlab
