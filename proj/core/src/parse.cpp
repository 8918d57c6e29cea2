#include "aidlab/parse.hpp"

namespace aidlab {

namespace {

struct Cursor {
    std::string_view s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    char take() {
        skip_ws();
        return s[i++];
    }
    bool accept(char c) {
        if (peek() == c) { ++i; return true; }
        return false;
    }

    [[noreturn]] void fail(ParseError::Code code, const std::string& msg) {
        throw ParseError(code, i, msg);
    }

    // unsigned digit run
    std::string digits() {
        skip_ws();
        std::string out;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') out += s[i++];
        if (out.empty()) fail(ParseError::Code::syntax, "expected digits");
        return out;
    }

    Rat rational() {
        std::string num = digits();
        if (i < s.size() && s[i] == '/') {
            ++i;
            std::string den = digits();
            auto r = Rat::parse(num + "/" + den);
            if (!r) fail(ParseError::Code::syntax, "zero denominator");
            return *r;
        }
        return *Rat::parse(num);
    }

    int integer() {
        skip_ws();
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
        std::string d = digits();
        if (d.size() > 6) fail(ParseError::Code::range, "exponent out of range");
        int v = std::stoi(d);
        return neg ? -v : v;
    }

    int index() {
        // digits directly after the generator letter, no whitespace
        std::string out;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') out += s[i++];
        if (out.empty()) fail(ParseError::Code::syntax, "generator needs an index");
        if (out.size() > 4) fail(ParseError::Code::range, "generator index out of range");
        return std::stoi(out);
    }
};

bool starts_rational(char c) { return c >= '0' && c <= '9'; }

} // namespace

Elem parse_element(const AlgSpec& spec, std::string_view text) {
    Cursor c{text};
    Elem out;
    bool first = true;
    while (true) {
        c.skip_ws();
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.take() == '-' ? -1 : 1;
        } else if (!first) {
            if (c.eof()) break;
            c.fail(ParseError::Code::syntax, "expected '+' or '-' between terms");
        }
        if (c.eof()) c.fail(ParseError::Code::syntax, "expected a term");

        Rat coeff(sign);
        if (starts_rational(c.peek())) coeff *= c.rational();

        const std::size_t gen_pos = c.i;
        char g = c.peek();
        if (g == 'h' || g == 'x') {
            c.take();
            int idx = c.index();
            if (idx < 1 || idx > spec.rank())
                throw ParseError(ParseError::Code::range, gen_pos,
                                 "generator index exceeds rank " + std::to_string(spec.rank()));
            bool has_exp = false;
            int exp = 0;
            if (c.peek() == 't') {
                c.take();
                const std::size_t caret = c.i;
                if (!c.accept('^'))
                    throw ParseError(ParseError::Code::syntax, caret, "expected '^' after t");
                exp = c.integer();
                has_exp = true;
            }
            if (g == 'h') {
                if (has_exp && exp % 2 != 0)
                    throw ParseError(ParseError::Code::parity, gen_pos,
                                     "h takes an even exponent");
                if (spec.variant() == Variant::finite && exp != 0)
                    throw ParseError(ParseError::Code::variant, gen_pos,
                                     "finite variant fixes h at t^0");
                out.add_term(BasisVec::h(idx, exp), coeff);
            } else {
                if (!has_exp)
                    throw ParseError(ParseError::Code::syntax, gen_pos,
                                     "x requires an exponent");
                if (exp % 2 == 0)
                    throw ParseError(ParseError::Code::parity, gen_pos,
                                     "x takes an odd exponent");
                if (spec.variant() == Variant::finite && exp != 1)
                    throw ParseError(ParseError::Code::variant, gen_pos,
                                     "finite variant fixes x at t^1");
                out.add_term(BasisVec::x(idx, exp), coeff);
            }
        } else if (g == 'K') {
            c.take();
            if (spec.variant() != Variant::affine)
                throw ParseError(ParseError::Code::variant, gen_pos,
                                 "K exists only in the affine variant");
            if (c.peek() == 't')
                throw ParseError(ParseError::Code::syntax, c.i, "K takes no exponent");
            out.add_term(BasisVec::k(), coeff);
        } else {
            c.fail(ParseError::Code::syntax, "expected generator h, x or K");
        }
        first = false;
        if (c.eof()) break;
    }
    if (first) c.fail(ParseError::Code::syntax, "empty element");
    return out;
}

std::string print_basis_vec(BasisVec b) {
    switch (b.kind) {
    case Kind::K: return "K";
    case Kind::H:
        return b.degree == 0 ? "h" + std::to_string(b.index)
                             : "h" + std::to_string(b.index) + " t^" + std::to_string(b.degree);
    case Kind::X:
        return "x" + std::to_string(b.index) + " t^" + std::to_string(b.degree);
    }
    return "?";
}

std::string print_element(const Elem& e) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [b, c] : e.terms()) {
        const bool neg = c.sign() < 0;
        const Rat mag = neg ? -c : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (!(mag == Rat(1))) out += mag.str() + " ";
        out += print_basis_vec(b);
    }
    return out;
}

BasisVec parse_basis_vec(const AlgSpec& spec, std::string_view text) {
    Elem e = parse_element(spec, text);
    if (e.size() != 1 || !(e.terms().begin()->second == Rat(1)))
        throw ParseError(ParseError::Code::syntax, 0, "expected a single unit basis vector");
    return e.terms().begin()->first;
}

LPoly parse_lpoly(std::string_view text) {
    Cursor c{text};
    LPoly out;
    bool first = true;
    while (true) {
        c.skip_ws();
        int sign = 1;
        if (c.peek() == '+' || c.peek() == '-') {
            sign = c.take() == '-' ? -1 : 1;
        } else if (!first) {
            if (c.eof()) break;
            c.fail(ParseError::Code::syntax, "expected '+' or '-' between monomials");
        }
        if (c.eof()) c.fail(ParseError::Code::syntax, "expected a monomial");

        Rat coeff(sign);
        bool saw_rat = false;
        if (starts_rational(c.peek())) {
            coeff *= c.rational();
            saw_rat = true;
        }
        int exp = 0;
        if (c.peek() == 't') {
            c.take();
            const std::size_t caret = c.i;
            if (!c.accept('^'))
                throw ParseError(ParseError::Code::syntax, caret, "expected '^' after t");
            exp = c.integer();
        } else if (!saw_rat) {
            c.fail(ParseError::Code::syntax, "expected coefficient or t^e");
        }
        out.add_term(exp, coeff);
        first = false;
        if (c.eof()) break;
    }
    if (first) c.fail(ParseError::Code::syntax, "empty polynomial");
    return out;
}

std::string print_lpoly(const LPoly& f) { return f.str(); }

} // namespace aidlab
