#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "aidlab/rational.hpp"

namespace aidlab {

/// Dense matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols);
    static RatMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_symmetric() const;
    RatMatrix transposed() const;
    std::vector<Rat> apply(const std::vector<Rat>& v) const;
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> e_;
};

struct SolveOutcome {
    std::vector<Rat> particular;                ///< A * particular == b, free variables zero
    std::vector<std::vector<Rat>> nullspace;    ///< basis of {v : A v = 0}
};

/// Exact solve of A x = b. Fraction-free (Bareiss) forward elimination with
/// deterministic leftmost-lowest pivoting, back-substitution over Rat.
/// Returns nullopt when the system is inconsistent.
std::optional<SolveOutcome> solve_exact(const RatMatrix& A, const std::vector<Rat>& b);

std::vector<std::vector<Rat>> nullspace(const RatMatrix& A);
int rank(const RatMatrix& A);
Rat determinant(const RatMatrix& A);
RatMatrix inverse(const RatMatrix& A); ///< throws std::invalid_argument if singular

/// Sparse linear system assembled row by row. Solved per connected component
/// of the column-coupling graph; the window constraint systems decompose into
/// many small blocks, which keeps exact elimination cheap.
class LinearSystem {
public:
    explicit LinearSystem(int ncols) : ncols_(ncols) {}

    int cols() const { return ncols_; }
    int row_count() const { return static_cast<int>(rows_.size()); }

    /// cols holds (column, coefficient) pairs; duplicates are accumulated.
    void add_row(std::vector<std::pair<int, Rat>> cols, Rat rhs);

    std::optional<SolveOutcome> solve() const;
    std::vector<std::vector<Rat>> nullspace() const;

    /// A row with no nonzero coefficients but nonzero right-hand side, if one
    /// was added (certificate of infeasibility independent of elimination).
    std::optional<int> zero_row_with_rhs() const;

private:
    struct Row {
        std::vector<std::pair<int, Rat>> cols;
        Rat rhs;
    };
    int ncols_;
    std::vector<Row> rows_;
};

} // namespace aidlab
