#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "aidlab/algebra.hpp"
#include "aidlab/laurent.hpp"

namespace aidlab {

/// Position-annotated parse failure.
/// Grammar: element := ['+'|'-'] term (('+'|'-') term)*,
///          term    := [rat] gen ['t' '^' int],
///          gen     := 'h'idx | 'x'idx | 'K'.
/// h takes an even exponent (default 0), x a mandatory odd exponent, K none.
class ParseError : public std::runtime_error {
public:
    enum class Code { syntax, parity, variant, range };

    ParseError(Code code, std::size_t pos, const std::string& message)
        : std::runtime_error(message + " (at position " + std::to_string(pos) + ")"),
          code_(code), pos_(pos) {}

    Code code() const { return code_; }
    std::size_t pos() const { return pos_; }

private:
    Code code_;
    std::size_t pos_;
};

Elem parse_element(const AlgSpec& spec, std::string_view text); ///< throws ParseError
std::string print_element(const Elem& e);                       ///< canonical form

LPoly parse_lpoly(std::string_view text); ///< throws ParseError
std::string print_lpoly(const LPoly& f);

BasisVec parse_basis_vec(const AlgSpec& spec, std::string_view text);
std::string print_basis_vec(BasisVec b);

} // namespace aidlab
