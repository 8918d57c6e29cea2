#include "aidlab/laurent.hpp"

#include <stdexcept>

namespace aidlab {

LPoly LPoly::monomial(Rat c, int exp) {
    LPoly p;
    p.add_term(exp, c);
    return p;
}

Rat LPoly::coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? Rat(0) : it->second;
}

int LPoly::min_exp() const {
    if (terms_.empty()) throw std::logic_error("LPoly: min_exp of zero");
    return terms_.begin()->first;
}

int LPoly::max_exp() const {
    if (terms_.empty()) throw std::logic_error("LPoly: max_exp of zero");
    return terms_.rbegin()->first;
}

void LPoly::add_term(int exp, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LPoly LPoly::operator-() const {
    LPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LPoly& LPoly::operator+=(const LPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term(ea + eb, ca * cb);
    return r;
}

LPoly LPoly::scaled(const Rat& c) const {
    LPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

LPoly LPoly::shifted(int k) const {
    LPoly r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e + k, v);
    return r;
}

std::pair<LPoly, LPoly> LPoly::parity_split() const {
    LPoly even, odd;
    for (const auto& [e, c] : terms_) {
        if (e % 2 == 0)
            even.terms_.emplace(e, c);
        else
            odd.terms_.emplace(e, c);
    }
    return {even, odd};
}

bool LPoly::even_supported() const {
    for (const auto& [e, c] : terms_)
        if (e % 2 != 0) return false;
    return true;
}

bool LPoly::odd_supported() const {
    for (const auto& [e, c] : terms_)
        if (e % 2 == 0) return false;
    return true;
}

std::string LPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool neg = c.sign() < 0;
        const Rat mag = neg ? -c : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        const bool unit = (mag == Rat(1));
        if (e == 0) {
            out += mag.str();
        } else {
            if (!unit) {
                out += mag.str();
                out += " ";
            }
            out += "t^" + std::to_string(e);
        }
    }
    return out;
}

LPoly lpoly_mul(const LPoly& a, const LPoly& b) { return a * b; }

std::pair<LPoly, LPoly> lpoly_parity_split(const LPoly& a) { return a.parity_split(); }

} // namespace aidlab
