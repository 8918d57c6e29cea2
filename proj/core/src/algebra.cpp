#include "aidlab/algebra.hpp"

#include <stdexcept>

namespace aidlab {

std::string variant_name(Variant v) {
    switch (v) {
    case Variant::finite: return "finite";
    case Variant::loop: return "loop";
    case Variant::affine: return "affine";
    }
    return "?";
}

Elem Elem::of(BasisVec b, Rat c) {
    Elem e;
    e.add_term(b, c);
    return e;
}

Rat Elem::coeff(BasisVec b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Elem::add_term(BasisVec b, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(b, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Elem Elem::operator-() const {
    Elem r;
    for (const auto& [b, c] : terms_) r.terms_.emplace(b, -c);
    return r;
}

Elem& Elem::operator+=(const Elem& o) {
    for (const auto& [b, c] : o.terms_) add_term(b, c);
    return *this;
}

Elem& Elem::operator-=(const Elem& o) {
    for (const auto& [b, c] : o.terms_) add_term(b, -c);
    return *this;
}

Elem Elem::scaled(const Rat& c) const {
    Elem r;
    if (c.is_zero()) return r;
    for (const auto& [b, v] : terms_) r.terms_.emplace(b, v * c);
    return r;
}

Elem Elem::without_k() const {
    Elem r;
    for (const auto& [b, c] : terms_)
        if (b.kind != Kind::K) r.terms_.emplace(b, c);
    return r;
}

Elem Elem::shifted(int k) const {
    Elem r;
    for (const auto& [b, c] : terms_) {
        if (b.kind == Kind::K)
            throw std::logic_error("Elem::shifted: K has no t-degree");
        BasisVec s = b;
        s.degree += k;
        r.terms_.emplace(s, c);
    }
    return r;
}

Parity parity_of(BasisVec b) { return b.kind == Kind::X ? Parity::odd : Parity::even; }

Parity parity_of(const Elem& e) {
    if (e.is_zero()) return Parity::zero;
    bool has_even = false, has_odd = false;
    for (const auto& [b, c] : e.terms()) {
        if (parity_of(b) == Parity::even)
            has_even = true;
        else
            has_odd = true;
    }
    if (has_even && has_odd) return Parity::mixed;
    return has_even ? Parity::even : Parity::odd;
}

AlgSpec AlgSpec::make(int rank, RatMatrix gram, Variant variant) {
    if (rank < 1) throw std::invalid_argument("AlgSpec: rank must be positive");
    if (gram.rows() != rank || gram.cols() != rank)
        throw std::invalid_argument("AlgSpec: Gram matrix must be rank x rank");
    if (!gram.is_symmetric())
        throw std::invalid_argument("AlgSpec: Gram matrix must be symmetric");
    for (int k = 1; k <= rank; ++k) {
        RatMatrix minor(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor.at(i, j) = gram.at(i, j);
        Rat d = determinant(minor);
        if (d.sign() <= 0)
            throw std::invalid_argument(
                "AlgSpec: Gram matrix not positive definite (leading minor " +
                std::to_string(k) + " is " + d.str() + ")");
    }
    RatMatrix b = inverse(gram);
    return AlgSpec(rank, std::move(gram), std::move(b), variant);
}

bool AlgSpec::valid(BasisVec b) const {
    switch (b.kind) {
    case Kind::K:
        return variant_ == Variant::affine && b.index == 0 && b.degree == 0;
    case Kind::H:
        if (b.index < 1 || b.index > rank_) return false;
        if (b.degree % 2 != 0) return false;
        return variant_ != Variant::finite || b.degree == 0;
    case Kind::X:
        if (b.index < 1 || b.index > rank_) return false;
        if (b.degree % 2 == 0) return false;
        return variant_ != Variant::finite || b.degree == 1;
    }
    return false;
}

void AlgSpec::require_valid(BasisVec b) const {
    if (!valid(b))
        throw std::invalid_argument("basis vector invalid for " + variant_name(variant_) +
                                    " variant of rank " + std::to_string(rank_));
}

void AlgSpec::require_valid(const Elem& e) const {
    for (const auto& [b, c] : e.terms()) require_valid(b);
}

std::vector<BasisVec> AlgSpec::window_basis(int window) const {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    std::vector<BasisVec> out;
    if (variant_ == Variant::finite) {
        for (int i = 1; i <= rank_; ++i) out.push_back(BasisVec::h(i, 0));
        for (int i = 1; i <= rank_; ++i) out.push_back(BasisVec::x(i, 1));
        return out;
    }
    for (int i = 1; i <= rank_; ++i)
        for (int d = -window + (window % 2 != 0 ? 1 : 0); d <= window; d += 2)
            out.push_back(BasisVec::h(i, d));
    for (int i = 1; i <= rank_; ++i) {
        int lo = -window;
        if (lo % 2 == 0) ++lo;
        for (int d = lo; d <= window; d += 2) out.push_back(BasisVec::x(i, d));
    }
    if (variant_ == Variant::affine) out.push_back(BasisVec::k());
    return out;
}

Elem AlgSpec::bracket(BasisVec a, BasisVec b) const {
    require_valid(a);
    require_valid(b);
    if (a.kind == Kind::K || b.kind == Kind::K) return {};
    if (a.kind == Kind::H && b.kind == Kind::H) {
        if (variant_ != Variant::affine) return {};
        if (a.degree + b.degree != 0 || a.degree == 0) return {};
        Rat c = Rat(a.degree) * torus_form_.at(a.index - 1, b.index - 1);
        return Elem::of(BasisVec::k(), c);
    }
    if (a.kind == Kind::H && b.kind == Kind::X) {
        if (a.index != b.index) return {};
        return Elem::unit(BasisVec::x(b.index, a.degree + b.degree));
    }
    if (a.kind == Kind::X && b.kind == Kind::H) {
        if (a.index != b.index) return {};
        return Elem::of(BasisVec::x(a.index, a.degree + b.degree), Rat(-1));
    }
    return {}; // [x, x'] = 0: I abelian, and Ψ independent kills the cocycle
}

Elem AlgSpec::bracket(const Elem& a, const Elem& b) const {
    require_valid(a);
    require_valid(b);
    Elem out;
    for (const auto& [ba, ca] : a.terms())
        for (const auto& [bb, cb] : b.terms())
            out += bracket(ba, bb).scaled(ca * cb);
    return out;
}

Elem AlgSpec::dual_torus(int i) const {
    if (variant_ == Variant::finite)
        throw std::invalid_argument("dual_torus: loop or affine variant required");
    if (i < 1 || i > rank_) throw std::invalid_argument("dual_torus: index out of range");
    Elem out;
    for (int k = 1; k <= rank_; ++k)
        out.add_term(BasisVec::h(k, 0), gram_.at(i - 1, k - 1));
    return out;
}

bool operator==(const AlgSpec& a, const AlgSpec& b) {
    return a.rank_ == b.rank_ && a.variant_ == b.variant_ && a.gram_ == b.gram_;
}

AlgSpec with_variant(const AlgSpec& spec, Variant v) {
    return AlgSpec::make(spec.rank(), spec.gram(), v);
}

} // namespace aidlab
