#include "aidlab/rational.hpp"

namespace aidlab {

Rat::Rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::invalid_argument("Rat: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::inverse() const {
    if (is_zero()) throw std::invalid_argument("Rat: inverse of zero");
    return Rat(mpq_class(1) / v_);
}

std::optional<Rat> Rat::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    // mpq_class(string) accepts "p/q" but also whitespace and bases we do
    // not want; validate the shape first.
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') { ++i; ++digits; }
    if (digits == 0) return std::nullopt;
    if (i < text.size()) {
        if (text[i] != '/') return std::nullopt;
        ++i;
        std::size_t den_digits = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') { ++i; ++den_digits; }
        if (den_digits == 0 || i != text.size()) return std::nullopt;
    }
    mpq_class v;
    if (v.set_str(std::string(text), 10) != 0) return std::nullopt;
    if (v.get_den() == 0) return std::nullopt;
    v.canonicalize();
    return Rat(std::move(v));
}

std::string Rat::str() const {
    return v_.get_str();
}

} // namespace aidlab
