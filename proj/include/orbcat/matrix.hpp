#ifndef ORBCAT_MATRIX_HPP
#define ORBCAT_MATRIX_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "orbcat/scalar.hpp"

namespace orbcat {

// Small dense matrix, row-major. Rows index the codomain basis, columns the
// domain basis, so composition is plain matrix product.
template <class K>
struct Matrix {
    int rows{0}, cols{0};
    std::vector<K> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(size_t(r) * c, ScalarOps<K>::zero()) {}

    K& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const K& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = ScalarOps<K>::one();
        return m;
    }

    Matrix transposed() const {
        Matrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw Error("matrix product shape mismatch");
        Matrix z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const K& v = x.at(i, k);
                if (ScalarOps<K>::abs(v) == 0.0) continue;
                for (int j = 0; j < y.cols; ++j)
                    z.at(i, j) = z.at(i, j) + v * y.at(k, j);
            }
        return z;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix sum shape mismatch");
        Matrix z = x;
        for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] + y.a[i];
        return z;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw Error("matrix difference shape mismatch");
        Matrix z = x;
        for (size_t i = 0; i < z.a.size(); ++i) z.a[i] = z.a[i] - y.a[i];
        return z;
    }
    Matrix scaled(K s) const {
        Matrix z = *this;
        for (auto& v : z.a) v = s * v;
        return z;
    }

    double sup_norm() const {
        double m = 0.0;
        for (const auto& v : a) m = std::max(m, ScalarOps<K>::abs(v));
        return m;
    }
};

template <class K>
double distance(const Matrix<K>& x, const Matrix<K>& y) {
    return (x - y).sup_norm();
}

// Row echelon state after rank-revealing elimination with column pivoting.
// `ambiguous` reports a pivot decision made inside the gray zone
// [tol/10, 10*tol]; exact mode never sets it.
template <class K>
struct Echelon {
    Matrix<K> r;                 // reduced matrix
    std::vector<int> pivot_cols; // in elimination order
    std::vector<int> row_of_pivot;
    int rank{0};
    bool ambiguous{false};
    double gray_value{0.0};
};

template <class K>
Echelon<K> echelon(Matrix<K> m, double tol) {
    Echelon<K> e;
    int r = 0;
    std::vector<char> used_col(m.cols, 0);
    while (r < m.rows) {
        // Best remaining pivot among unused columns.
        int pi = -1, pj = -1;
        double best = 0.0;
        for (int j = 0; j < m.cols; ++j) {
            if (used_col[j]) continue;
            for (int i = r; i < m.rows; ++i) {
                double v = ScalarOps<K>::abs(m.at(i, j));
                if (v > best) { best = v; pi = i; pj = j; }
            }
        }
        const double lo = ScalarOps<K>::exact ? 0.0 : tol;
        if (pi < 0 || best <= lo) {
            if (!ScalarOps<K>::exact && pi >= 0 && best > tol / 10.0) {
                e.ambiguous = true;
                e.gray_value = best;
            }
            break;
        }
        if (!ScalarOps<K>::exact && best < tol * 10.0) {
            e.ambiguous = true;
            e.gray_value = best;
        }
        if (pi != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pi, j), m.at(r, j));
        K inv = ScalarOps<K>::inv(m.at(r, pj));
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = inv * m.at(r, j);
        m.at(r, pj) = ScalarOps<K>::one();
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            K f = m.at(i, pj);
            if (ScalarOps<K>::abs(f) == 0.0) continue;
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
            m.at(i, pj) = ScalarOps<K>::zero();
        }
        used_col[pj] = 1;
        e.pivot_cols.push_back(pj);
        e.row_of_pivot.push_back(r);
        ++r;
    }
    e.rank = r;
    e.r = std::move(m);
    return e;
}

template <class K>
int rank_of(const Matrix<K>& m, double tol) {
    return echelon(m, tol).rank;
}

// Columns form a basis of the null space of m. Deterministic: free columns in
// increasing order, pivot entries back-substituted.
template <class K>
Matrix<K> null_space(const Matrix<K>& m, double tol) {
    Echelon<K> e = echelon(m, tol);
    std::vector<char> is_pivot(m.cols, 0);
    for (int c : e.pivot_cols) is_pivot[c] = 1;
    std::vector<int> free_cols;
    for (int j = 0; j < m.cols; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    Matrix<K> n(m.cols, int(free_cols.size()));
    for (int k = 0; k < int(free_cols.size()); ++k) {
        int fc = free_cols[k];
        n.at(fc, k) = ScalarOps<K>::one();
        for (int p = 0; p < e.rank; ++p)
            n.at(e.pivot_cols[p], k) = -e.r.at(e.row_of_pivot[p], fc);
    }
    return n;
}

// Columns of the result are the pivot columns of m (a deterministic basis of
// the column space, drawn from the original matrix).
template <class K>
Matrix<K> column_space(const Matrix<K>& m, double tol) {
    Echelon<K> e = echelon(m, tol);
    std::vector<int> cols = e.pivot_cols;
    std::sort(cols.begin(), cols.end());
    Matrix<K> c(m.rows, int(cols.size()));
    for (int k = 0; k < int(cols.size()); ++k)
        for (int i = 0; i < m.rows; ++i) c.at(i, k) = m.at(i, cols[k]);
    return c;
}

// Rows annihilate the column space of m: a basis of the left null space.
template <class K>
Matrix<K> left_null_space(const Matrix<K>& m, double tol) {
    return null_space(m.transposed(), tol).transposed();
}

template <class K>
struct LinearSolution {
    Matrix<K> x;
    int nullity{0};
    double residual{0.0};
};

// Solve A X = B by elimination; least-squares is not attempted, instead the
// residual of the particular solution is reported and the caller compares it
// with its tolerance. nullity is the solution-space dimension per column.
template <class K>
LinearSolution<K> solve_right(const Matrix<K>& A, const Matrix<K>& B, double tol) {
    if (A.rows != B.rows) throw Error("solve: row mismatch");
    Matrix<K> aug(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) aug.at(i, A.cols + j) = B.at(i, j);
    }
    // Eliminate with pivots restricted to A's columns; B's columns ride along.
    Matrix<K> x(A.cols, B.cols);
    Matrix<K> m = aug;
    std::vector<int> pivot_cols, row_of_pivot;
    int r = 0;
    std::vector<char> used_col(A.cols, 0);
    while (r < m.rows) {
        int pi = -1, pj = -1;
        double best = 0.0;
        for (int j = 0; j < A.cols; ++j) {
            if (used_col[j]) continue;
            for (int i = r; i < m.rows; ++i) {
                double v = ScalarOps<K>::abs(m.at(i, j));
                if (v > best) { best = v; pi = i; pj = j; }
            }
        }
        const double lo = ScalarOps<K>::exact ? 0.0 : tol;
        if (pi < 0 || best <= lo) break;
        if (pi != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pi, j), m.at(r, j));
        K inv = ScalarOps<K>::inv(m.at(r, pj));
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = inv * m.at(r, j);
        m.at(r, pj) = ScalarOps<K>::one();
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            K f = m.at(i, pj);
            if (ScalarOps<K>::abs(f) == 0.0) continue;
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
            m.at(i, pj) = ScalarOps<K>::zero();
        }
        used_col[pj] = 1;
        pivot_cols.push_back(pj);
        row_of_pivot.push_back(r);
        ++r;
    }
    for (int p = 0; p < r; ++p)
        for (int j = 0; j < B.cols; ++j)
            x.at(pivot_cols[p], j) = m.at(row_of_pivot[p], A.cols + j);
    LinearSolution<K> sol;
    sol.x = std::move(x);
    sol.nullity = A.cols - r;
    sol.residual = distance(A * sol.x, B);
    return sol;
}

// Solve X A = B via the transposed system.
template <class K>
LinearSolution<K> solve_left(const Matrix<K>& A, const Matrix<K>& B, double tol) {
    LinearSolution<K> t = solve_right(A.transposed(), B.transposed(), tol);
    t.x = t.x.transposed();
    return t;
}

template <class K>
Matrix<K> inverse(const Matrix<K>& m, double tol) {
    if (m.rows != m.cols) throw Error("inverse of non-square matrix");
    LinearSolution<K> s = solve_right(m, Matrix<K>::identity(m.rows), tol);
    if (s.nullity != 0 || s.residual > (ScalarOps<K>::exact ? 0.0 : tol))
        throw Error("matrix is not invertible");
    return s.x;
}

} // namespace orbcat

#endif
