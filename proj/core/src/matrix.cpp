#include "aidlab/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace aidlab {

RatMatrix::RatMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("RatMatrix: negative dimension");
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

RatMatrix RatMatrix::transposed() const {
    RatMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw std::invalid_argument("RatMatrix::apply: dimension mismatch");
    std::vector<Rat> out(rows_);
    for (int i = 0; i < rows_; ++i) {
        Rat s(0);
        for (int j = 0; j < cols_; ++j) s += at(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix: product dimension mismatch");
    RatMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Rat& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) m.at(i, j) += aik * b.at(k, j);
        }
    return m;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

namespace {

// Clears denominators of one augmented row; returns the scale applied.
mpz_class integerize_row(const std::vector<Rat>& row, std::vector<mpz_class>& out) {
    mpz_class l(1);
    for (const Rat& r : row) {
        mpz_class d = r.denominator();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        l = l / g * d;
    }
    out.clear();
    out.reserve(row.size());
    for (const Rat& r : row) out.push_back(r.numerator() * (l / r.denominator()));
    return l;
}

mpz_class divexact(const mpz_class& a, const mpz_class& b) {
    assert(mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()));
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

struct EchelonSolve {
    bool consistent = true;
    int rank = 0;
    std::vector<Rat> particular;
    std::vector<int> free_cols;
    std::vector<std::vector<Rat>> nullspace; // aligned with free_cols
};

// Fraction-free forward elimination (one-step Bareiss) on the augmented
// matrix, leftmost column / lowest row pivoting, then exact back-substitution.
EchelonSolve eliminate_and_solve(std::vector<std::vector<Rat>> rows, int ncols,
                                 const std::vector<Rat>& rhs) {
    const int m = static_cast<int>(rows.size());
    if (static_cast<int>(rhs.size()) != m)
        throw std::invalid_argument("linear system: rhs size mismatch");

    std::vector<std::vector<mpz_class>> a(m);
    for (int i = 0; i < m; ++i) {
        rows[i].push_back(rhs[i]);
        integerize_row(rows[i], a[i]);
    }

    std::vector<int> pivot_cols;
    mpz_class prev(1);
    int pr = 0;
    for (int col = 0; col < ncols && pr < m; ++col) {
        int sel = -1;
        for (int r = pr; r < m; ++r)
            if (sgn(a[r][col]) != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[pr], a[sel]);
        const mpz_class piv = a[pr][col];
        for (int i = pr + 1; i < m; ++i) {
            const mpz_class head = a[i][col];
            for (int j = col + 1; j <= ncols; ++j)
                a[i][j] = divexact(piv * a[i][j] - head * a[pr][j], prev);
            a[i][col] = 0;
        }
        prev = piv;
        pivot_cols.push_back(col);
        ++pr;
    }

    EchelonSolve out;
    out.rank = pr;
    for (int i = pr; i < m; ++i)
        if (sgn(a[i][ncols]) != 0) { out.consistent = false; return out; }

    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_cols) is_pivot[c] = true;
    for (int c = 0; c < ncols; ++c)
        if (!is_pivot[c]) out.free_cols.push_back(c);

    auto back_substitute = [&](const std::vector<Rat>& fixed, bool use_rhs) {
        std::vector<Rat> x = fixed; // free columns preset, pivots to fill
        for (int r = pr - 1; r >= 0; --r) {
            const int pc = pivot_cols[r];
            Rat s = use_rhs ? Rat(mpq_class(a[r][ncols])) : Rat(0);
            for (int j = pc + 1; j < ncols; ++j) {
                if (sgn(a[r][j]) == 0 || x[j].is_zero()) continue;
                s -= Rat(mpq_class(a[r][j])) * x[j];
            }
            x[pc] = s / Rat(mpq_class(a[r][pc]));
        }
        return x;
    };

    out.particular = back_substitute(std::vector<Rat>(ncols), true);
    out.nullspace.reserve(out.free_cols.size());
    for (int f : out.free_cols) {
        std::vector<Rat> seed(ncols);
        seed[f] = Rat(1);
        out.nullspace.push_back(back_substitute(seed, false));
    }
    return out;
}

EchelonSolve run_dense(const RatMatrix& A, const std::vector<Rat>& rhs) {
    std::vector<std::vector<Rat>> rows(A.rows());
    for (int i = 0; i < A.rows(); ++i) {
        rows[i].resize(A.cols());
        for (int j = 0; j < A.cols(); ++j) rows[i][j] = A.at(i, j);
    }
    return eliminate_and_solve(std::move(rows), A.cols(), rhs);
}

} // namespace

std::optional<SolveOutcome> solve_exact(const RatMatrix& A, const std::vector<Rat>& b) {
    if (static_cast<int>(b.size()) != A.rows())
        throw std::invalid_argument("solve_exact: dimension mismatch");
    EchelonSolve es = run_dense(A, b);
    if (!es.consistent) return std::nullopt;
    return SolveOutcome{std::move(es.particular), std::move(es.nullspace)};
}

std::vector<std::vector<Rat>> nullspace(const RatMatrix& A) {
    EchelonSolve es = run_dense(A, std::vector<Rat>(A.rows()));
    return std::move(es.nullspace);
}

int rank(const RatMatrix& A) {
    EchelonSolve es = run_dense(A, std::vector<Rat>(A.rows()));
    return es.rank;
}

Rat determinant(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant: non-square matrix");
    const int n = A.rows();
    if (n == 0) return Rat(1);

    std::vector<std::vector<mpz_class>> a(n);
    mpz_class scale(1);
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> row(n);
        for (int j = 0; j < n; ++j) row[j] = A.at(i, j);
        scale *= integerize_row(row, a[i]);
    }

    mpz_class prev(1);
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int sel = -1;
        for (int r = col; r < n; ++r)
            if (sgn(a[r][col]) != 0) { sel = r; break; }
        if (sel < 0) return Rat(0);
        if (sel != col) { std::swap(a[col], a[sel]); sign = -sign; }
        const mpz_class piv = a[col][col];
        for (int i = col + 1; i < n; ++i) {
            const mpz_class head = a[i][col];
            for (int j = col + 1; j < n; ++j)
                a[i][j] = divexact(piv * a[i][j] - head * a[col][j], prev);
            a[i][col] = 0;
        }
        prev = piv;
    }
    mpq_class det(sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1]);
    det /= scale;
    det.canonicalize();
    return Rat(det);
}

RatMatrix inverse(const RatMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("inverse: non-square matrix");
    const int n = A.rows();
    if (rank(A) != n) throw std::invalid_argument("inverse: singular matrix");
    RatMatrix inv(n, n);
    for (int c = 0; c < n; ++c) {
        std::vector<Rat> e(n);
        e[c] = Rat(1);
        auto sol = solve_exact(A, e);
        if (!sol) throw std::invalid_argument("inverse: singular matrix");
        for (int r = 0; r < n; ++r) inv.at(r, c) = sol->particular[r];
    }
    return inv;
}

void LinearSystem::add_row(std::vector<std::pair<int, Rat>> cols, Rat rhs) {
    std::sort(cols.begin(), cols.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    Row row;
    row.rhs = std::move(rhs);
    for (auto& [c, v] : cols) {
        if (c < 0 || c >= ncols_) throw std::invalid_argument("LinearSystem: column out of range");
        if (!row.cols.empty() && row.cols.back().first == c)
            row.cols.back().second += v;
        else
            row.cols.emplace_back(c, v);
        if (!row.cols.empty() && row.cols.back().second.is_zero()) row.cols.pop_back();
    }
    rows_.push_back(std::move(row));
}

std::optional<int> LinearSystem::zero_row_with_rhs() const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].cols.empty() && !rows_[i].rhs.is_zero()) return static_cast<int>(i);
    return std::nullopt;
}

namespace {

struct Component {
    std::vector<int> cols;  // global columns, ascending
    std::vector<int> rows;  // row indices, ascending
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

std::optional<SolveOutcome> LinearSystem::solve() const {
    if (zero_row_with_rhs()) return std::nullopt;

    UnionFind uf(ncols_);
    for (const Row& r : rows_)
        for (std::size_t k = 1; k < r.cols.size(); ++k)
            uf.unite(r.cols[0].first, r.cols[k].first);

    std::map<int, Component> comps; // root -> component
    std::vector<bool> touched(ncols_, false);
    for (const Row& r : rows_)
        for (const auto& [c, v] : r.cols) touched[c] = true;
    for (int c = 0; c < ncols_; ++c)
        if (touched[c]) comps[uf.find(c)].cols.push_back(c);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (!rows_[i].cols.empty())
            comps[uf.find(rows_[i].cols[0].first)].rows.push_back(static_cast<int>(i));

    SolveOutcome out;
    out.particular.assign(ncols_, Rat(0));
    std::vector<std::pair<int, std::vector<Rat>>> null_by_free;

    for (int c = 0; c < ncols_; ++c) {
        if (touched[c]) continue;
        std::vector<Rat> v(ncols_);
        v[c] = Rat(1);
        null_by_free.emplace_back(c, std::move(v));
    }

    for (const auto& [root, comp] : comps) {
        std::map<int, int> local; // global col -> local col
        for (std::size_t k = 0; k < comp.cols.size(); ++k) local[comp.cols[k]] = static_cast<int>(k);
        std::vector<std::vector<Rat>> rows(comp.rows.size(),
                                           std::vector<Rat>(comp.cols.size()));
        std::vector<Rat> rhs(comp.rows.size());
        for (std::size_t r = 0; r < comp.rows.size(); ++r) {
            const Row& row = rows_[comp.rows[r]];
            for (const auto& [c, v] : row.cols) rows[r][local[c]] = v;
            rhs[r] = row.rhs;
        }
        EchelonSolve es = eliminate_and_solve(std::move(rows), static_cast<int>(comp.cols.size()), rhs);
        if (!es.consistent) return std::nullopt;
        for (std::size_t k = 0; k < comp.cols.size(); ++k)
            out.particular[comp.cols[k]] = es.particular[k];
        for (std::size_t f = 0; f < es.free_cols.size(); ++f) {
            std::vector<Rat> v(ncols_);
            for (std::size_t k = 0; k < comp.cols.size(); ++k)
                v[comp.cols[k]] = es.nullspace[f][k];
            null_by_free.emplace_back(comp.cols[es.free_cols[f]], std::move(v));
        }
    }

    std::sort(null_by_free.begin(), null_by_free.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [f, v] : null_by_free) out.nullspace.push_back(std::move(v));
    return out;
}

std::vector<std::vector<Rat>> LinearSystem::nullspace() const {
    LinearSystem hom(ncols_);
    for (const Row& r : rows_) hom.rows_.push_back(Row{r.cols, Rat(0)});
    auto sol = hom.solve();
    return sol ? std::move(sol->nullspace) : std::vector<std::vector<Rat>>{};
}

} // namespace aidlab
