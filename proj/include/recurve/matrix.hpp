#ifndef RECURVE_MATRIX_HPP
#define RECURVE_MATRIX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "recurve/errors.hpp"
#include "recurve/field.hpp"

namespace recurve {

// Dense row-major matrix over a field-like type.
template <class F>
class Matrix {
  public:
    Matrix(int nrows, int ncols, const F& fill)
        : nr_(nrows), nc_(ncols), e_(static_cast<size_t>(nrows) * static_cast<size_t>(ncols), fill) {
        if (nrows < 0 || ncols < 0) throw Error("Matrix: negative dimensions");
    }

    static Matrix zero(int nrows, int ncols, const F& ex) { return Matrix(nrows, ncols, zero_like(ex)); }
    static Matrix identity(int n, const F& ex) {
        Matrix m(n, n, zero_like(ex));
        for (int i = 0; i < n; ++i) m.at(i, i) = one_like(ex);
        return m;
    }

    int nrows() const { return nr_; }
    int ncols() const { return nc_; }

    F& at(int i, int j) { return e_[static_cast<size_t>(i) * static_cast<size_t>(nc_) + static_cast<size_t>(j)]; }
    const F& at(int i, int j) const {
        return e_[static_cast<size_t>(i) * static_cast<size_t>(nc_) + static_cast<size_t>(j)];
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < nc_; ++c) std::swap(at(i, c), at(j, c));
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.nc_ != b.nr_) throw Error("Matrix: shape mismatch in product");
        const F ex = a.e_.empty() ? b.e_.front() : a.e_.front();
        Matrix r = Matrix::zero(a.nr_, b.nc_, ex);
        for (int i = 0; i < a.nr_; ++i)
            for (int k = 0; k < a.nc_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.nc_; ++j)
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.nr_ != b.nr_ || a.nc_ != b.nc_) return false;
        for (size_t i = 0; i < a.e_.size(); ++i)
            if (!(a.e_[i] == b.e_[i])) return false;
        return true;
    }

  private:
    int nr_, nc_;
    std::vector<F> e_;
};

// In-place reduced row echelon form with exact field division.
// Returns the pivot columns in order.
template <class F>
std::vector<int> rref(Matrix<F>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.ncols() && row < m.nrows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.nrows(); ++r)
            if (!m.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        m.swap_rows(piv, row);
        const F inv = m.at(row, col).inverse();
        for (int c = col; c < m.ncols(); ++c) m.at(row, c) = m.at(row, c) * inv;
        for (int r = 0; r < m.nrows(); ++r) {
            if (r == row) continue;
            const F f = m.at(r, col);
            if (f.is_zero()) continue;
            for (int c = col; c < m.ncols(); ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
int rank(Matrix<F> m) {
    return static_cast<int>(rref(m).size());
}

// Kernel basis in reduced echelon form: one vector per free column,
// with a 1 in that column.  Empty when the kernel is trivial.
template <class F>
std::vector<std::vector<F>> kernel_from_rref(const Matrix<F>& r, const std::vector<int>& pivots,
                                             const F& ex) {
    std::vector<bool> is_pivot(static_cast<size_t>(r.ncols()), false);
    for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
    std::vector<std::vector<F>> basis;
    for (int f = 0; f < r.ncols(); ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        std::vector<F> v(static_cast<size_t>(r.ncols()), zero_like(ex));
        v[static_cast<size_t>(f)] = one_like(ex);
        for (size_t pr = 0; pr < pivots.size(); ++pr)
            v[static_cast<size_t>(pivots[pr])] = -r.at(static_cast<int>(pr), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class F>
std::vector<std::vector<F>> kernel(Matrix<F> m, const F& ex) {
    auto pivots = rref(m);
    return kernel_from_rref(m, pivots, ex);
}

// Any solution of M x = b (free variables set to zero), or nullopt.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& m, const std::vector<F>& b, const F& ex) {
    if (static_cast<int>(b.size()) != m.nrows()) throw Error("solve: rhs length mismatch");
    Matrix<F> aug = Matrix<F>::zero(m.nrows(), m.ncols() + 1, ex);
    for (int i = 0; i < m.nrows(); ++i) {
        for (int j = 0; j < m.ncols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.ncols()) = b[static_cast<size_t>(i)];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.ncols()) return std::nullopt;
    std::vector<F> x(static_cast<size_t>(m.ncols()), zero_like(ex));
    for (size_t pr = 0; pr < pivots.size(); ++pr)
        x[static_cast<size_t>(pivots[pr])] = aug.at(static_cast<int>(pr), m.ncols());
    return x;
}

// Inverse via augmented elimination; throws SingularMatrix.
template <class F>
Matrix<F> inverse(const Matrix<F>& m, const F& ex) {
    if (m.nrows() != m.ncols()) throw Error("inverse: matrix not square");
    const int n = m.nrows();
    Matrix<F> aug = Matrix<F>::zero(n, 2 * n, ex);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = one_like(ex);
    }
    auto pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        throw SingularMatrix("inverse: singular matrix");
    Matrix<F> out = Matrix<F>::zero(n, n, ex);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

template <class F>
F det(Matrix<F> m, const F& ex) {
    if (m.nrows() != m.ncols()) throw Error("det: matrix not square");
    F d = one_like(ex);
    for (int col = 0; col < m.ncols(); ++col) {
        int piv = -1;
        for (int r = col; r < m.nrows(); ++r)
            if (!m.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) return zero_like(ex);
        if (piv != col) { m.swap_rows(piv, col); d = -d; }
        const F pv = m.at(col, col);
        d = d * pv;
        const F pv_inv = pv.inverse();
        for (int r = col + 1; r < m.nrows(); ++r) {
            F f = m.at(r, col);
            if (f.is_zero()) continue;
            f = f * pv_inv;
            for (int c = col; c < m.ncols(); ++c)
                m.at(r, c) = m.at(r, c) - f * m.at(col, c);
        }
    }
    return d;
}

// ---------------------------------------------------------------------
// Fraction-free path for rational matrices.  Rows are cleared to
// primitive integer vectors, eliminated with the Bareiss one-step
// rule (entries stay minors of the original, controlling growth), and
// the compact echelon is then back-substituted over Q.

struct IntEchelon {
    // Echelon rows (as exact integers), their pivot columns, and the rank.
    std::vector<std::vector<mpz_class>> rows;
    std::vector<int> pivot_cols;
};

IntEchelon bareiss_echelon(const Matrix<Rational>& m);

std::vector<std::vector<Rational>> kernel(const Matrix<Rational>& m);
std::optional<std::vector<Rational>> solve(const Matrix<Rational>& m, const std::vector<Rational>& b);
int rank(const Matrix<Rational>& m);

} // namespace recurve

#endif
