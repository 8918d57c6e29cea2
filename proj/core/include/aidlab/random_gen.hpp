#pragma once

#include <cstdint>
#include <random>

#include "aidlab/algebra.hpp"
#include "aidlab/derivation.hpp"

namespace aidlab {

/// Deterministic seeded source. mt19937_64 output is pinned by the standard,
/// and bounded draws avoid std::uniform_int_distribution, whose mapping is
/// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
    bool flip() { return (next() & 1) != 0; }

    /// Coefficient pool {±1, ±1/2, ±2}.
    Rat coeff() {
        switch (below(6)) {
        case 0: return Rat(1);
        case 1: return Rat(-1);
        case 2: return Rat(1, 2);
        case 3: return Rat(-1, 2);
        case 4: return Rat(2);
        default: return Rat(-2);
        }
    }

private:
    std::mt19937_64 eng_;
};

inline Elem random_elem(Rng& rng, const AlgSpec& spec, int max_degree, int max_terms,
                        bool allow_k) {
    Elem out;
    const int nterms = 1 + rng.below(max_terms);
    for (int t = 0; t < nterms; ++t) {
        if (allow_k && spec.variant() == Variant::affine && rng.below(8) == 0) {
            out.add_term(BasisVec::k(), rng.coeff());
            continue;
        }
        const int i = 1 + rng.below(spec.rank());
        if (spec.variant() == Variant::finite) {
            out.add_term(rng.flip() ? BasisVec::h(i, 0) : BasisVec::x(i, 1), rng.coeff());
            continue;
        }
        if (rng.flip()) {
            const int jmax = max_degree / 2;
            out.add_term(BasisVec::h(i, 2 * rng.range(-jmax, jmax)), rng.coeff());
        } else {
            const int qhi = (max_degree - 1) / 2;
            const int qlo = -(max_degree + 1) / 2;
            out.add_term(BasisVec::x(i, 2 * rng.range(qlo, qhi) + 1), rng.coeff());
        }
    }
    return out;
}

inline LPoly random_even_lpoly(Rng& rng, int max_half_degree, int max_terms) {
    LPoly f;
    const int nterms = 1 + rng.below(max_terms);
    for (int t = 0; t < nterms; ++t)
        f.add_term(2 * rng.range(-max_half_degree, max_half_degree), rng.coeff());
    return f;
}

inline DSCoords random_ds_coords(Rng& rng, int rank, int max_half_shift, int entries) {
    DSCoords c;
    for (int t = 0; t < entries; ++t) {
        const int m = 1 + rng.below(rank);
        if (rng.flip())
            c.even[{m, 2 * rng.range(-max_half_shift, max_half_shift)}] = rng.coeff();
        else
            c.odd[{m, 2 * rng.range(-max_half_shift, max_half_shift) + 1}] = rng.coeff();
    }
    return c;
}

} // namespace aidlab
