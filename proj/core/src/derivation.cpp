#include "aidlab/derivation.hpp"

#include <algorithm>
#include <stdexcept>

#include "aidlab/matrix.hpp"

namespace aidlab {

const Elem DMap::zero_elem_{};

DMap::DMap(AlgSpec spec, int window)
    : spec_(std::move(spec)), window_(window), domain_(spec_.window_basis(window)) {}

bool DMap::in_domain(BasisVec b) const {
    return std::binary_search(domain_.begin(), domain_.end(), b);
}

const Elem& DMap::image(BasisVec b) const {
    if (!in_domain(b)) throw std::invalid_argument("DMap: basis vector outside the window");
    auto it = images_.find(b);
    return it == images_.end() ? zero_elem_ : it->second;
}

void DMap::set_image(BasisVec b, Elem img) {
    if (!in_domain(b)) throw std::invalid_argument("DMap: basis vector outside the window");
    spec_.require_valid(img);
    if (b.kind == Kind::K)
        for (const auto& [v, c] : img.terms())
            if (v.kind != Kind::K)
                throw std::invalid_argument("DMap: image of K must be a multiple of K");
    if (img.is_zero())
        images_.erase(b);
    else
        images_[b] = std::move(img);
}

bool DMap::applicable(const Elem& e) const {
    for (const auto& [b, c] : e.terms())
        if (!in_domain(b)) return false;
    return true;
}

Elem DMap::apply(const Elem& e) const {
    Elem out;
    for (const auto& [b, c] : e.terms()) out += image(b).scaled(c);
    return out;
}

bool DMap::is_zero() const { return images_.empty(); }

Parity DMap::map_parity() const {
    bool any = false, even_ok = true, odd_ok = true;
    for (const auto& [b, img] : images_) {
        any = true;
        Parity pi = parity_of(img);
        if (pi == Parity::mixed) { even_ok = odd_ok = false; break; }
        if (pi == parity_of(b))
            odd_ok = false;
        else
            even_ok = false;
    }
    if (!any) return Parity::zero;
    if (even_ok) return Parity::even;
    if (odd_ok) return Parity::odd;
    return Parity::mixed;
}

DMap& DMap::operator+=(const DMap& o) {
    if (!(spec_ == o.spec_) || window_ != o.window_)
        throw std::invalid_argument("DMap: mixed spec or window in sum");
    for (const auto& [b, img] : o.images_) set_image(b, image(b) + img);
    return *this;
}

DMap& DMap::operator-=(const DMap& o) {
    if (!(spec_ == o.spec_) || window_ != o.window_)
        throw std::invalid_argument("DMap: mixed spec or window in difference");
    for (const auto& [b, img] : o.images_) set_image(b, image(b) - img);
    return *this;
}

DMap DMap::scaled(const Rat& c) const {
    DMap out(spec_, window_);
    if (c.is_zero()) return out;
    for (const auto& [b, img] : images_) out.images_.emplace(b, img.scaled(c));
    return out;
}

bool operator==(const DMap& a, const DMap& b) {
    return a.spec_ == b.spec_ && a.window_ == b.window_ && a.images_ == b.images_;
}

DerivationCheck check_derivation(const DMap& d) {
    DerivationCheck out;
    const AlgSpec& spec = d.spec();
    const auto& dom = d.domain();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = i + 1; j < dom.size(); ++j) {
            Elem z = spec.bracket(dom[i], dom[j]);
            if (!d.applicable(z)) { ++out.skipped; continue; }
            Elem lhs = d.apply(z);
            Elem rhs = spec.bracket(d.image(dom[i]), Elem::unit(dom[j])) +
                       spec.bracket(Elem::unit(dom[i]), d.image(dom[j]));
            ++out.checked;
            if (!(lhs == rhs)) {
                out.ok = false;
                if (!out.counterexample)
                    out.counterexample = {dom[i], dom[j], lhs, rhs};
                return out;
            }
        }
    }
    return out;
}

DMap make_ad(const AlgSpec& spec, const Elem& y, int window) {
    spec.require_valid(y);
    DMap d(spec, window);
    for (BasisVec b : d.domain()) d.set_image(b, spec.bracket(y, Elem::unit(b)));
    return d;
}

namespace {

Elem parity_part(const Elem& e, Parity p) {
    Elem out;
    for (const auto& [b, c] : e.terms())
        if (parity_of(b) == p) out.add_term(b, c);
    return out;
}

Elem elem_of_poly(Kind kind, int index, const LPoly& f) {
    Elem out;
    for (const auto& [e, c] : f.terms()) out.add_term(BasisVec{kind, index, e}, c);
    return out;
}

} // namespace

std::pair<DMap, DMap> split_parity_map(const DMap& d) {
    DMap d0(d.spec(), d.window());
    DMap d1(d.spec(), d.window());
    for (BasisVec b : d.domain()) {
        const Elem& img = d.image(b);
        if (img.is_zero()) continue;
        Parity pb = parity_of(b);
        Elem keep = parity_part(img, pb);
        d0.set_image(b, keep);
        d1.set_image(b, img - keep);
    }
    return {d0, d1};
}

std::pair<DMap, DMap> project_to_DS(const DMap& d) {
    if (d.spec().variant() != Variant::loop)
        throw std::invalid_argument("project_to_DS: loop variant required");
    DMap ds(d.spec(), d.window());
    for (BasisVec b : d.domain()) {
        if (b.kind == Kind::H)
            ds.set_image(b, d.image(BasisVec::h(b.index, 0)).shifted(b.degree));
        else
            ds.set_image(b, d.image(BasisVec::x(b.index, 1)).shifted(b.degree - 1));
    }
    DMap delta = d - ds;
    return {ds, delta};
}

Classified<DSCoords> classify_DS(const DMap& d) {
    if (d.spec().variant() != Variant::loop)
        return Diagnostic{"classify_DS: loop variant required", std::nullopt, ""};
    for (BasisVec b : d.domain()) {
        Elem expect = b.kind == Kind::H
                          ? d.image(BasisVec::h(b.index, 0)).shifted(b.degree)
                          : d.image(BasisVec::x(b.index, 1)).shifted(b.degree - 1);
        if (!(d.image(b) == expect))
            return Diagnostic{"classify_DS: D_S shift identity fails", b,
                              "image differs from shifted degree-0/1 image"};
    }
    DSCoords coords;
    for (int m = 1; m <= d.spec().rank(); ++m) {
        for (const auto& [v, c] : d.image(BasisVec::h(m, 0)).terms()) {
            if (v.kind != Kind::X || v.index != m)
                return Diagnostic{"classify_DS: image outside Der(L)_1 shape on torus",
                                  BasisVec::h(m, 0), c.str()};
            coords.odd[{m, v.degree}] = c;
        }
        for (const auto& [v, c] : d.image(BasisVec::x(m, 1)).terms()) {
            if (v.kind != Kind::X || v.index != m)
                return Diagnostic{"classify_DS: image not diagonal on x part",
                                  BasisVec::x(m, 1), c.str()};
            coords.even[{m, v.degree - 1}] = c;
        }
    }
    return coords;
}

DMap reconstruct_DS(const AlgSpec& spec, const DSCoords& coords, int window) {
    if (spec.variant() != Variant::loop)
        throw std::invalid_argument("reconstruct_DS: loop variant required");
    DMap d(spec, window);
    for (BasisVec b : d.domain()) {
        Elem img;
        if (b.kind == Kind::H) {
            for (const auto& [key, a] : coords.odd)
                if (key.first == b.index)
                    img.add_term(BasisVec::x(b.index, b.degree + key.second), a);
        } else {
            for (const auto& [key, c] : coords.even)
                if (key.first == b.index)
                    img.add_term(BasisVec::x(b.index, b.degree + key.second), c);
        }
        d.set_image(b, img);
    }
    return d;
}

Classified<std::vector<LPoly>> classify_DL1(const DMap& delta) {
    const AlgSpec& spec = delta.spec();
    if (spec.variant() != Variant::loop)
        return Diagnostic{"classify_DL1: loop variant required", std::nullopt, ""};
    if (delta.window() < 2)
        return Diagnostic{"classify_DL1: window must reach h_i⊗t^2", std::nullopt, ""};
    for (int i = 1; i <= spec.rank(); ++i) {
        if (!delta.image(BasisVec::h(i, 0)).is_zero())
            return Diagnostic{"classify_DL1: map does not annihilate H⊗1",
                              BasisVec::h(i, 0), ""};
        if (!delta.image(BasisVec::x(i, 1)).is_zero())
            return Diagnostic{"classify_DL1: map does not annihilate I⊗t",
                              BasisVec::x(i, 1), ""};
    }

    std::vector<LPoly> f(static_cast<std::size_t>(spec.rank()));
    for (int i = 1; i <= spec.rank(); ++i) {
        for (const auto& [v, c] : delta.image(BasisVec::h(i, 2)).terms()) {
            if (v.kind != Kind::H || v.index != i)
                return Diagnostic{"classify_DL1: image of h_i⊗t^2 outside h_i⊗R",
                                  BasisVec::h(i, 2), c.str()};
            f[i - 1].add_term(v.degree, c);
        }
    }

    for (BasisVec b : delta.domain()) {
        const int j = b.kind == Kind::H ? b.degree / 2 : (b.degree - 1) / 2;
        const LPoly& fi = f[b.index - 1];
        LPoly expected_poly = fi.scaled(Rat(j)).shifted(b.degree - 2);
        Elem expected = elem_of_poly(b.kind, b.index, expected_poly);
        if (!(delta.image(b) == expected))
            return Diagnostic{"classify_DL1: image violates f_ij = j f_i1 t^{2j-2}", b,
                              "expected h/x ⊗ " + expected_poly.str()};
    }
    return f;
}

DMap make_cent_der(const AlgSpec& spec, const CentDerForm& form, int window) {
    if (spec.variant() != Variant::loop)
        throw std::invalid_argument("make_cent_der: loop variant required");
    if (form.k < 1 || form.k > spec.rank())
        throw std::invalid_argument("make_cent_der: index out of range");
    if (!form.f.even_supported())
        throw std::invalid_argument("make_cent_der: f must lie in R (even exponents)");
    DMap d(spec, window);
    for (BasisVec b : d.domain()) {
        if (b.index != form.k) continue;
        const int j = b.kind == Kind::H ? b.degree / 2 : (b.degree - 1) / 2;
        if (j == 0) continue;
        d.set_image(b, elem_of_poly(b.kind, b.index,
                                    form.f.scaled(Rat(j)).shifted(b.degree - 2)));
    }
    return d;
}

DMap reconstruct_DL1(const AlgSpec& spec, const std::vector<LPoly>& f, int window) {
    if (static_cast<int>(f.size()) != spec.rank())
        throw std::invalid_argument("reconstruct_DL1: need one f_k per index");
    DMap d(spec, window);
    for (int k = 1; k <= spec.rank(); ++k)
        if (!f[k - 1].is_zero()) d += make_cent_der(spec, {k, f[k - 1]}, window);
    return d;
}

namespace {

// Columns of a linear-map unknown space: one unknown per (domain vec, image vec).
struct UnknownIndex {
    std::vector<std::pair<BasisVec, BasisVec>> cols;
    std::map<std::pair<BasisVec, BasisVec>, int> pos;

    void add(BasisVec from, BasisVec to) {
        pos.emplace(std::make_pair(from, to), static_cast<int>(cols.size()));
        cols.emplace_back(from, to);
    }
    std::optional<int> find(BasisVec from, BasisVec to) const {
        auto it = pos.find(std::make_pair(from, to));
        if (it == pos.end()) return std::nullopt;
        return it->second;
    }
};

using RowExpr = std::map<BasisVec, std::vector<std::pair<int, Rat>>>;

// Derivation law rows for the pair (b1, b2): for every component v,
//   Σ_b z_b u_{b,v} − Σ_w u_{b1,w} [w,b2]_v − Σ_w u_{b2,w} [b1,w]_v = 0,
// where z = [b1,b2]. Unknowns missing from idx are identically zero.
void add_derivation_rows(LinearSystem& sys, const AlgSpec& spec, const UnknownIndex& idx,
                         const std::vector<BasisVec>& image_space,
                         BasisVec b1, BasisVec b2, const Elem& z) {
    RowExpr expr;
    for (const auto& [b, c] : z.terms())
        for (BasisVec v : image_space)
            if (auto col = idx.find(b, v)) expr[v].emplace_back(*col, c);
    for (BasisVec w : image_space) {
        if (auto col = idx.find(b1, w)) {
            for (const auto& [v, c] : spec.bracket(w, b2).terms())
                expr[v].emplace_back(*col, -c);
        }
        if (auto col = idx.find(b2, w)) {
            for (const auto& [v, c] : spec.bracket(b1, w).terms())
                expr[v].emplace_back(*col, -c);
        }
    }
    for (auto& [v, cols] : expr) sys.add_row(std::move(cols), Rat(0));
}

std::vector<DMap> maps_from_nullspace(const AlgSpec& spec, int window,
                                      const UnknownIndex& idx,
                                      const std::vector<std::vector<Rat>>& basis) {
    std::vector<DMap> out;
    out.reserve(basis.size());
    for (const auto& vec : basis) {
        DMap d(spec, window);
        std::map<BasisVec, Elem> imgs;
        for (std::size_t c = 0; c < idx.cols.size(); ++c)
            if (!vec[c].is_zero()) imgs[idx.cols[c].first].add_term(idx.cols[c].second, vec[c]);
        for (auto& [b, img] : imgs) d.set_image(b, std::move(img));
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace

std::vector<DMap> der_L_basis(int l) {
    AlgSpec spec = AlgSpec::make(l, RatMatrix::identity(l), Variant::finite);
    DMap probe(spec, 1);
    const std::vector<BasisVec>& basis = probe.domain();

    UnknownIndex idx;
    for (BasisVec b : basis)
        for (BasisVec v : basis) idx.add(b, v);

    LinearSystem sys(static_cast<int>(idx.cols.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            add_derivation_rows(sys, spec, idx, basis, basis[i], basis[j],
                                spec.bracket(basis[i], basis[j]));

    return maps_from_nullspace(spec, 1, idx, sys.nullspace());
}

std::vector<DMap> centroid_basis(int l) {
    AlgSpec spec = AlgSpec::make(l, RatMatrix::identity(l), Variant::finite);
    DMap probe(spec, 1);
    const std::vector<BasisVec>& basis = probe.domain();

    UnknownIndex idx;
    for (BasisVec b : basis)
        for (BasisVec v : basis) idx.add(b, v);

    LinearSystem sys(static_cast<int>(idx.cols.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i; j < basis.size(); ++j) {
            const BasisVec a = basis[i], b = basis[j];
            const Elem z = spec.bracket(a, b);
            // λ[a,b] = [λa, b]
            RowExpr left;
            for (const auto& [bb, c] : z.terms())
                for (BasisVec v : basis)
                    if (auto col = idx.find(bb, v)) left[v].emplace_back(*col, c);
            for (BasisVec w : basis)
                if (auto col = idx.find(a, w))
                    for (const auto& [v, c] : spec.bracket(w, b).terms())
                        left[v].emplace_back(*col, -c);
            for (auto& [v, cols] : left) sys.add_row(std::move(cols), Rat(0));
            // λ[a,b] = [a, λb]
            RowExpr right;
            for (const auto& [bb, c] : z.terms())
                for (BasisVec v : basis)
                    if (auto col = idx.find(bb, v)) right[v].emplace_back(*col, c);
            for (BasisVec w : basis)
                if (auto col = idx.find(b, w))
                    for (const auto& [v, c] : spec.bracket(a, w).terms())
                        right[v].emplace_back(*col, -c);
            for (auto& [v, cols] : right) sys.add_row(std::move(cols), Rat(0));
        }
    }

    std::vector<DMap> maps = maps_from_nullspace(spec, 1, idx, sys.nullspace());

    // Normalize to the projector form λ_k(h_j) = δ_kj h_j and order by k.
    std::vector<std::pair<int, DMap>> keyed;
    for (DMap& m : maps) {
        for (int i = 1; i <= l; ++i) {
            Rat c = m.image(BasisVec::h(i, 0)).coeff(BasisVec::h(i, 0));
            if (!c.is_zero()) {
                keyed.emplace_back(i, m.scaled(c.inverse()));
                break;
            }
        }
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<DMap> out;
    for (auto& [k, m] : keyed) out.push_back(std::move(m));
    return out;
}

std::vector<DMap> dl1_window_nullspace(const AlgSpec& loop_spec, int window,
                                       int image_window, Parity parity) {
    if (loop_spec.variant() != Variant::loop)
        throw std::invalid_argument("dl1_window_nullspace: loop variant required");
    if (parity != Parity::even && parity != Parity::odd)
        throw std::invalid_argument("dl1_window_nullspace: parity must be even or odd");

    DMap probe(loop_spec, window);
    const std::vector<BasisVec>& dom = probe.domain();

    std::vector<BasisVec> image_space = loop_spec.window_basis(image_window);

    auto allowed_image_kind = [&](BasisVec b) {
        bool flip = parity == Parity::odd;
        bool b_even = b.kind == Kind::H;
        return (b_even != flip) ? Kind::H : Kind::X;
    };

    UnknownIndex idx;
    for (BasisVec b : dom) {
        if (b.kind == Kind::H && b.degree == 0) continue; // fixed: δ(H⊗1) = 0
        if (b.kind == Kind::X && b.degree == 1) continue; // fixed: δ(I⊗t) = 0
        Kind want = allowed_image_kind(b);
        for (BasisVec v : image_space)
            if (v.kind == want) idx.add(b, v);
    }

    LinearSystem sys(static_cast<int>(idx.cols.size()));
    for (std::size_t i = 0; i < dom.size(); ++i) {
        for (std::size_t j = i + 1; j < dom.size(); ++j) {
            Elem z = loop_spec.bracket(dom[i], dom[j]);
            bool checkable = true;
            for (const auto& [b, c] : z.terms())
                if (!probe.in_domain(b)) { checkable = false; break; }
            if (!checkable) continue;
            add_derivation_rows(sys, loop_spec, idx, image_space, dom[i], dom[j], z);
        }
    }

    return maps_from_nullspace(loop_spec, window, idx, sys.nullspace());
}

} // namespace aidlab
