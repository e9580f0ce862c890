#include "recurve/matrix.hpp"

namespace recurve {

namespace {

// Primitive integer content-cleared copy of a rational row; empty if zero.
std::vector<mpz_class> primitive_int_row(const Matrix<Rational>& m, int i) {
    mpz_class den_lcm = 1;
    bool any = false;
    for (int j = 0; j < m.ncols(); ++j) {
        const Rational& r = m.at(i, j);
        if (!r.is_zero()) {
            any = true;
            den_lcm = int_lcm(den_lcm, r.den());
        }
    }
    if (!any) return {};
    std::vector<mpz_class> row(static_cast<size_t>(m.ncols()));
    mpz_class content = 0;
    for (int j = 0; j < m.ncols(); ++j) {
        const Rational& r = m.at(i, j);
        row[static_cast<size_t>(j)] = r.num() * (den_lcm / r.den());
        content = int_gcd(content, row[static_cast<size_t>(j)]);
    }
    if (content > 1)
        for (auto& x : row) x /= content;
    return row;
}

size_t entry_size(const mpz_class& x) { return mpz_sizeinbase(x.get_mpz_t(), 2); }

} // namespace

IntEchelon bareiss_echelon(const Matrix<Rational>& m) {
    std::vector<std::vector<mpz_class>> rows;
    rows.reserve(static_cast<size_t>(m.nrows()));
    for (int i = 0; i < m.nrows(); ++i) {
        auto r = primitive_int_row(m, i);
        if (!r.empty()) rows.push_back(std::move(r));
    }
    IntEchelon out;
    const int nc = m.ncols();
    mpz_class prev = 1;
    size_t top = 0;
    for (int col = 0; col < nc && top < rows.size(); ++col) {
        // Smallest nonzero pivot keeps the minors short; ties to lowest index.
        size_t piv = rows.size();
        size_t best = 0;
        for (size_t r = top; r < rows.size(); ++r) {
            const mpz_class& e = rows[r][static_cast<size_t>(col)];
            if (sgn(e) == 0) continue;
            size_t sz = entry_size(e);
            if (piv == rows.size() || sz < best) { piv = r; best = sz; }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[top], rows[piv]);
        const std::vector<mpz_class>& p = rows[top];
        const mpz_class pv = p[static_cast<size_t>(col)];
        for (size_t r = top + 1; r < rows.size(); ++r) {
            std::vector<mpz_class>& w = rows[r];
            const mpz_class f = w[static_cast<size_t>(col)];
            for (int j = col; j < nc; ++j) {
                mpz_class t = pv * w[static_cast<size_t>(j)] - f * p[static_cast<size_t>(j)];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w[static_cast<size_t>(j)] = std::move(t);
            }
            w[static_cast<size_t>(col)] = 0;
        }
        // Drop rows that became zero so later passes skip them.
        size_t keep = top + 1;
        for (size_t r = top + 1; r < rows.size(); ++r) {
            bool z = true;
            for (int j = col + 1; j < nc; ++j)
                if (sgn(rows[r][static_cast<size_t>(j)]) != 0) { z = false; break; }
            if (!z) {
                if (keep != r) std::swap(rows[keep], rows[r]);
                ++keep;
            }
        }
        rows.resize(keep);
        out.pivot_cols.push_back(col);
        prev = pv;
        ++top;
    }
    rows.resize(top);
    out.rows = std::move(rows);
    return out;
}

namespace {

// Back-substitute an integer echelon into a rational RREF matrix.
Matrix<Rational> rref_of_echelon(const IntEchelon& e, int ncols) {
    const int r = static_cast<int>(e.rows.size());
    Matrix<Rational> m = Matrix<Rational>::zero(r, ncols, Rational(0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < ncols; ++j)
            m.at(i, j) = Rational(mpq_class(e.rows[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    for (int i = r - 1; i >= 0; --i) {
        const int pc = e.pivot_cols[static_cast<size_t>(i)];
        const Rational inv = m.at(i, pc).inverse();
        for (int j = pc; j < ncols; ++j) m.at(i, j) *= inv;
        for (int k = 0; k < i; ++k) {
            const Rational f = m.at(k, pc);
            if (f.is_zero()) continue;
            for (int j = pc; j < ncols; ++j)
                m.at(k, j) -= f * m.at(i, j);
        }
    }
    return m;
}

} // namespace

std::vector<std::vector<Rational>> kernel(const Matrix<Rational>& m) {
    IntEchelon e = bareiss_echelon(m);
    Matrix<Rational> r = rref_of_echelon(e, m.ncols());
    return kernel_from_rref(r, e.pivot_cols, Rational(0));
}

int rank(const Matrix<Rational>& m) {
    return static_cast<int>(bareiss_echelon(m).pivot_cols.size());
}

std::optional<std::vector<Rational>> solve(const Matrix<Rational>& m, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.nrows()) throw Error("solve: rhs length mismatch");
    Matrix<Rational> aug = Matrix<Rational>::zero(m.nrows(), m.ncols() + 1, Rational(0));
    for (int i = 0; i < m.nrows(); ++i) {
        for (int j = 0; j < m.ncols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.ncols()) = b[static_cast<size_t>(i)];
    }
    IntEchelon e = bareiss_echelon(aug);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.ncols()) return std::nullopt;
    Matrix<Rational> r = rref_of_echelon(e, aug.ncols());
    std::vector<Rational> x(static_cast<size_t>(m.ncols()), Rational(0));
    for (size_t pr = 0; pr < e.pivot_cols.size(); ++pr)
        x[static_cast<size_t>(e.pivot_cols[pr])] = r.at(static_cast<int>(pr), m.ncols());
    return x;
}

} // namespace recurve
