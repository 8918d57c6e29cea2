#include "aidlab/aid.hpp"

#include <algorithm>
#include <stdexcept>

#include "aidlab/matrix.hpp"
#include "aidlab/random_gen.hpp"

namespace aidlab {

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::certified_on_samples: return "certified-on-samples";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

DMap make_Dij(const AlgSpec& spec, int i, int j, int window) {
    if (spec.variant() != Variant::affine)
        throw std::invalid_argument("make_Dij: affine variant required");
    if (i < 1 || i > spec.rank()) throw std::invalid_argument("make_Dij: index out of range");
    if (2 * j > window || 2 * j < -window)
        throw std::invalid_argument("make_Dij: |2j| exceeds the window");
    DMap d(spec, window);
    d.set_image(BasisVec::h(i, 2 * j), Elem::unit(BasisVec::k()));
    return d;
}

namespace {

// y-coefficient columns: all window basis vectors except K (ad K = 0).
std::vector<BasisVec> y_columns(const AlgSpec& spec, int y_window) {
    std::vector<BasisVec> cols;
    for (BasisVec b : spec.window_basis(y_window))
        if (b.kind != Kind::K) cols.push_back(b);
    return cols;
}

Elem elem_from_coeffs(const std::vector<BasisVec>& cols, const std::vector<Rat>& v) {
    Elem out;
    for (std::size_t k = 0; k < cols.size(); ++k) out.add_term(cols[k], v[k]);
    return out;
}

} // namespace

SolveResult solve_ad_at(const AlgSpec& spec, const DMap& D, const Elem& X, int y_window) {
    if (!D.applicable(X))
        throw std::invalid_argument("solve_ad_at: X outside the map's window");
    const Elem target = D.apply(X);

    const std::vector<BasisVec> cols = y_columns(spec, y_window);
    LinearSystem sys(static_cast<int>(cols.size()));

    std::map<BasisVec, std::vector<std::pair<int, Rat>>> rows;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        Elem w = spec.bracket(X, Elem::unit(cols[c]));
        for (const auto& [v, coeff] : w.terms())
            rows[v].emplace_back(static_cast<int>(c), coeff);
    }
    for (const auto& [v, coeff] : target.terms())
        if (!rows.count(v)) rows[v] = {};

    for (auto& [v, cs] : rows) sys.add_row(std::move(cs), target.coeff(v));

    SolveResult res;
    res.window_tried = y_window;
    auto sol = sys.solve();
    if (!sol) {
        res.status = SolveStatus::infeasible_in_window;
        return res;
    }
    Elem y = elem_from_coeffs(cols, sol->particular);
    if (!(spec.bracket(X, y) == target))
        throw std::logic_error("solve_ad_at: witness failed re-verification");
    res.status = SolveStatus::solved;
    res.witness = std::move(y);
    res.freedom_dim = static_cast<int>(sol->nullspace.size());
    return res;
}

namespace {

// Exact Laurent division: q with q*div == num, or nothing.
std::optional<LPoly> lpoly_div_exact(const LPoly& num, const LPoly& div) {
    if (div.is_zero()) return std::nullopt;
    if (num.is_zero()) return LPoly{};
    const int qmin = num.min_exp() - div.min_exp();
    LPoly r = num;
    LPoly q;
    while (!r.is_zero()) {
        const int e = r.max_exp() - div.max_exp();
        if (e < qmin) return std::nullopt;
        const Rat c = r.coeff(r.max_exp()) / div.coeff(div.max_exp());
        q.add_term(e, c);
        r -= div.scaled(c).shifted(e);
    }
    return q;
}

} // namespace

std::optional<Elem> lemma32_ansatz_Y(const AlgSpec& spec, int i, int j, const Elem& X) {
    if (spec.variant() != Variant::affine)
        throw std::invalid_argument("lemma32_ansatz_Y: affine variant required");
    if (i < 1 || i > spec.rank())
        throw std::invalid_argument("lemma32_ansatz_Y: index out of range");
    if (j == 0) throw std::invalid_argument("lemma32_ansatz_Y: not applicable for j = 0");
    if (!X.k_coeff().is_zero())
        throw std::invalid_argument("lemma32_ansatz_Y: X must have no K component");
    spec.require_valid(X);

    const int l = spec.rank();
    const RatMatrix& G = spec.gram();
    const Rat half_inv_j = Rat(1, 2 * j);

    // b_m(T) = Σ_n b_{mn} T^n and c_u(T) = Σ_v c_{uv} T^v from
    // X = Σ b_{mn} h_m⊗t^{2n} + Σ c_{uv} x_u⊗t^{2v+1}.
    std::vector<LPoly> b(static_cast<std::size_t>(l)), c(static_cast<std::size_t>(l));
    for (const auto& [v, coeff] : X.terms()) {
        if (v.kind == Kind::H)
            b[v.index - 1].add_term(v.degree / 2, coeff);
        else
            c[v.index - 1].add_term((v.degree - 1) / 2, coeff);
    }

    std::vector<int> A, B;
    for (int m = 1; m <= l; ++m) (b[m - 1].is_zero() ? B : A).push_back(m);

    // Gram subsystem over B: Σ_{m∈B} β_k(h_m') d_m = β_k(h_i') ½ j⁻¹, k ∈ B.
    std::vector<Rat> d(static_cast<std::size_t>(l), Rat(0));
    if (!B.empty()) {
        RatMatrix sub(static_cast<int>(B.size()), static_cast<int>(B.size()));
        std::vector<Rat> rhs(B.size());
        for (std::size_t r = 0; r < B.size(); ++r) {
            for (std::size_t s = 0; s < B.size(); ++s)
                sub.at(static_cast<int>(r), static_cast<int>(s)) = G.at(B[r] - 1, B[s] - 1);
            rhs[r] = G.at(B[r] - 1, i - 1) * half_inv_j;
        }
        auto sol = solve_exact(sub, rhs);
        if (!sol) throw std::logic_error("lemma32_ansatz_Y: Gram subsystem singular");
        for (std::size_t s = 0; s < B.size(); ++s) d[B[s] - 1] = sol->particular[s];
    }

    Elem Y = spec.dual_torus(i).scaled(half_inv_j).shifted(-2 * j);
    for (int k : B) Y -= spec.dual_torus(k).scaled(d[k - 1]).shifted(-2 * j);

    // Convolution equations for k ∈ A: b_k(T) e_k(T) = w_k · c_k(T) T^{-j}.
    for (int k : A) {
        Rat w = G.at(k - 1, i - 1) * half_inv_j;
        for (int m : B) w -= G.at(k - 1, m - 1) * d[m - 1];
        LPoly rhs = c[k - 1].scaled(w).shifted(-j);
        if (rhs.is_zero()) continue;
        auto e = lpoly_div_exact(rhs, b[k - 1]);
        if (!e) return std::nullopt; // divisibility obstruction
        for (const auto& [q, coeff] : e->terms())
            Y.add_term(BasisVec::x(k, 2 * q + 1), coeff);
    }

    const Elem expected = Elem::of(BasisVec::k(), b[i - 1].coeff(j));
    if (!(spec.bracket(X, Y) == expected))
        throw std::logic_error("lemma32_ansatz_Y: ansatz witness failed re-verification");
    return Y;
}

bool component_reachable(const AlgSpec& spec, const Elem& X, BasisVec v) {
    switch (v.kind) {
    case Kind::H:
        return false; // brackets land in I⊗Rt ⊕ F·K
    case Kind::X:
        for (const auto& [b, c] : X.terms())
            if (b.kind != Kind::K && b.index == v.index) return true;
        return false;
    case Kind::K:
        for (const auto& [b, c] : X.terms())
            if (b.kind == Kind::H && b.degree != 0) return true;
        return false;
    }
    return false;
}

std::optional<BasisVec> structural_obstruction(const AlgSpec& spec, const Elem& X,
                                               const Elem& target) {
    for (const auto& [v, c] : target.terms())
        if (!component_reachable(spec, X, v)) return v;
    return std::nullopt;
}

namespace {

std::vector<Elem> adversarial_probes(const AlgSpec& spec, int window) {
    std::vector<Elem> out;
    auto push = [&](Elem e) {
        for (const auto& [b, c] : e.terms())
            if (b.degree > window || b.degree < -window) return;
        out.push_back(std::move(e));
    };
    for (int i = 1; i <= spec.rank(); ++i) {
        Elem h2 = Elem::unit(BasisVec::h(i, 2));
        Elem h4 = Elem::unit(BasisVec::h(i, 4));
        Elem h6 = Elem::unit(BasisVec::h(i, 6));
        Elem hm2 = Elem::unit(BasisVec::h(i, -2));
        Elem x1 = Elem::unit(BasisVec::x(i, 1));
        Elem x3 = Elem::unit(BasisVec::x(i, 3));
        Elem xm1 = Elem::unit(BasisVec::x(i, -1));
        push(h2 + h4 + x1);                       // 1+T ∤ const: ansatz obstruction
        push(h2 + h4 + x3 + xm1);
        push(h2 - h4 + x1);
        push(hm2 + h2 + x1);
        push(h2 + h6 + x1);                       // 1+T^2 obstruction
    }
    return out;
}

} // namespace

CertReport certify_aid(const AlgSpec& spec, const DMap& D, const ProbeStrategy& strategy,
                       const SolveSchedule& schedule) {
    DerivationCheck chk = check_derivation(D);
    if (!chk.ok)
        throw std::invalid_argument("certify_aid: map fails the derivation law on its window");

    std::vector<Elem> probes;
    if (strategy.basis)
        for (BasisVec b : D.domain()) probes.push_back(Elem::unit(b));
    if (strategy.random_count > 0) {
        Rng rng(strategy.seed);
        for (int k = 0; k < strategy.random_count; ++k)
            probes.push_back(random_elem(rng, spec, D.window(), 4, false));
    }
    if (strategy.adversarial)
        for (Elem& e : adversarial_probes(spec, D.window())) probes.push_back(std::move(e));

    CertReport report;
    report.verdict = Verdict::certified_on_samples;
    bool any_unsolved = false;
    for (const Elem& X : probes) {
        ProbeOutcome po;
        po.x = X;
        const Elem target = D.apply(X);
        if (auto blocked = structural_obstruction(spec, X, target)) {
            po.structural = true;
            po.certificate = "zero-row: no [X, ·] reaches the " +
                             std::string(blocked->kind == Kind::K ? "K" : "target") +
                             " component of D(X)";
            po.result.status = SolveStatus::infeasible_in_window;
            if (report.verdict != Verdict::refuted) {
                report.verdict = Verdict::refuted;
                report.refuting_witness = X;
            }
            report.probes.push_back(std::move(po));
            continue;
        }
        for (std::size_t s = 0; s < schedule.offsets.size(); ++s) {
            po.result = solve_ad_at(spec, D, X, D.window() + schedule.offsets[s]);
            if (po.result.status == SolveStatus::solved) break;
        }
        if (po.result.status != SolveStatus::solved) any_unsolved = true;
        report.probes.push_back(std::move(po));
    }
    if (report.verdict != Verdict::refuted && any_unsolved)
        report.verdict = Verdict::inconclusive;
    return report;
}

std::optional<Elem> find_inner(const AlgSpec& spec, const DMap& D, int y_window) {
    const std::vector<BasisVec> cols = y_columns(spec, y_window);
    LinearSystem sys(static_cast<int>(cols.size()));

    for (BasisVec b : D.domain()) {
        const Elem& target = D.image(b);
        std::map<BasisVec, std::vector<std::pair<int, Rat>>> rows;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            Elem w = spec.bracket(Elem::unit(cols[c]), Elem::unit(b));
            for (const auto& [v, coeff] : w.terms())
                rows[v].emplace_back(static_cast<int>(c), coeff);
        }
        for (const auto& [v, coeff] : target.terms())
            if (!rows.count(v)) rows[v] = {};
        for (auto& [v, cs] : rows) sys.add_row(std::move(cs), target.coeff(v));
    }

    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    Elem y = elem_from_coeffs(cols, sol->particular);
    for (BasisVec b : D.domain())
        if (!(spec.bracket(y, Elem::unit(b)) == D.image(b)))
            throw std::logic_error("find_inner: witness failed re-verification");
    return y;
}

Classified<AidCoords> normalize_aid(const AlgSpec& spec, const DMap& D,
                                    const SolveSchedule& schedule) {
    if (spec.variant() != Variant::affine)
        throw std::invalid_argument("normalize_aid: affine variant required");
    const Parity p = D.map_parity();
    if (p == Parity::mixed)
        throw std::invalid_argument("normalize_aid: map must be homogeneous");
    if (!D.image(BasisVec::k()).is_zero())
        throw std::invalid_argument("normalize_aid: D(K) must vanish");
    if (!check_derivation(D).ok)
        throw std::invalid_argument("normalize_aid: map fails the derivation law");

    // Induced map on L̂/F·K ≅ L̄.
    AlgSpec loop_spec = with_variant(spec, Variant::loop);
    DMap quotient(loop_spec, D.window());
    for (BasisVec b : quotient.domain()) quotient.set_image(b, D.image(b).without_k());

    std::optional<Elem> y;
    int tried = 0;
    for (int off : schedule.offsets) {
        tried = D.window() + off;
        y = find_inner(loop_spec, quotient, tried);
        if (y) break;
    }
    if (!y)
        return Diagnostic{"not almost inner at this window, or window too small (cap " +
                              std::to_string(tried) + ")",
                          std::nullopt, ""};

    DMap E = D - make_ad(spec, *y, D.window());
    AidCoords coords;
    coords.y = *y;
    for (BasisVec b : E.domain()) {
        const Elem& img = E.image(b);
        if (b.kind == Kind::X) {
            if (!img.is_zero())
                return Diagnostic{"normalize_aid: (D - ad y)(I⊗Rt) != 0", b, ""};
        } else if (b.kind == Kind::H) {
            for (const auto& [v, c] : img.terms())
                if (v.kind != Kind::K)
                    return Diagnostic{"normalize_aid: (D - ad y)(H⊗R) leaves F·K", b,
                                      c.str()};
            Rat a = img.k_coeff();
            if (!a.is_zero()) coords.a[{b.index, b.degree / 2}] = a;
        }
    }

    if (p == Parity::odd && !coords.a.empty())
        return Diagnostic{"normalize_aid: odd map left nonzero a-coordinates",
                          std::nullopt, ""};

    DMap recon = make_ad(spec, *y, D.window());
    for (const auto& [ij, a] : coords.a)
        recon += make_Dij(spec, ij.first, ij.second, D.window()).scaled(a);
    if (!(recon == D))
        return Diagnostic{"normalize_aid: reconstruction mismatch", std::nullopt, ""};
    return coords;
}

IndependenceReport independence_check(const AlgSpec& spec,
                                      const std::vector<std::pair<int, int>>& indices,
                                      int window, int y_window) {
    if (spec.variant() != Variant::affine)
        throw std::invalid_argument("independence_check: affine variant required");
    std::vector<std::pair<int, int>> idx = indices;
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (auto& [i, j] : idx) {
        if (i < 1 || i > spec.rank() || 2 * j > window || 2 * j < -window)
            throw std::invalid_argument("independence_check: index pair out of range");
    }

    IndependenceReport rep;
    if (idx.empty()) { rep.independent = true; return rep; }

    const std::vector<BasisVec> ycols = y_columns(spec, y_window);
    const int na = static_cast<int>(idx.size());
    LinearSystem sys(na + static_cast<int>(ycols.size()));

    for (BasisVec b : spec.window_basis(window)) {
        std::map<BasisVec, std::vector<std::pair<int, Rat>>> rows;
        // Σ a_ij D_ij(b): K component exactly when b = h_i⊗t^{2j}.
        if (b.kind == Kind::H && b.degree % 2 == 0) {
            for (int k = 0; k < na; ++k)
                if (idx[k].first == b.index && 2 * idx[k].second == b.degree)
                    rows[BasisVec::k()].emplace_back(k, Rat(1));
        }
        for (std::size_t c = 0; c < ycols.size(); ++c) {
            Elem w = spec.bracket(Elem::unit(ycols[c]), Elem::unit(b));
            for (const auto& [v, coeff] : w.terms())
                rows[v].emplace_back(na + static_cast<int>(c), -coeff);
        }
        for (auto& [v, cs] : rows) sys.add_row(std::move(cs), Rat(0));
    }

    auto null_basis = sys.nullspace();
    rep.nullspace_dim = static_cast<int>(null_basis.size());
    RatMatrix aproj(rep.nullspace_dim, na);
    for (int r = 0; r < rep.nullspace_dim; ++r)
        for (int c = 0; c < na; ++c) aproj.at(r, c) = null_basis[r][c];
    rep.a_component_dim = rank(aproj);
    rep.independent = rep.a_component_dim == 0;
    return rep;
}

bool rigidity_holds(const AlgSpec& spec, int window, int y_window) {
    if (spec.variant() != Variant::affine)
        throw std::invalid_argument("rigidity_holds: affine variant required");
    const std::vector<BasisVec> ycols = y_columns(spec, y_window);
    LinearSystem sys(static_cast<int>(ycols.size()));
    for (BasisVec b : spec.window_basis(window)) {
        if (b.kind == Kind::K) continue;
        std::map<BasisVec, std::vector<std::pair<int, Rat>>> rows;
        for (std::size_t c = 0; c < ycols.size(); ++c) {
            Elem w = spec.bracket(Elem::unit(ycols[c]), Elem::unit(b));
            for (const auto& [v, coeff] : w.terms()) {
                if (b.kind == Kind::H && v.kind == Kind::K) continue; // (D)(H⊗R) ⊂ F·K allowed
                rows[v].emplace_back(static_cast<int>(c), coeff);
            }
        }
        for (auto& [v, cs] : rows) sys.add_row(std::move(cs), Rat(0));
    }
    return sys.nullspace().empty();
}

} // namespace aidlab
