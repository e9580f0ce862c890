#ifndef RECURVE_POLY_HPP
#define RECURVE_POLY_HPP

#include <utility>
#include <vector>

#include "recurve/errors.hpp"
#include "recurve/rational.hpp"

namespace recurve {

// Customization points so generic code can mint constants in the same
// coefficient ring as an existing element.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline Rational int_like(const Rational&, long k) { return Rational(k); }
inline int field_degree_over_q(const Rational&) { return 1; }

// Dense univariate polynomial over a field-like coefficient type F.
// Coefficients ascending by degree; the zero polynomial has no
// coefficients, so every stored polynomial has a nonzero leading term.
template <class F>
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static UniPoly zero() { return UniPoly(); }
    static UniPoly constant(F a) {
        std::vector<F> v;
        if (!a.is_zero()) v.push_back(std::move(a));
        return UniPoly(std::move(v));
    }
    // The monomial x, with coefficients minted like `ex`.
    static UniPoly x(const F& ex) {
        std::vector<F> v{zero_like(ex), one_like(ex)};
        return UniPoly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    const F& leading() const { return c_.back(); }
    const F& operator[](int i) const { return c_[static_cast<size_t>(i)]; }

    // Coefficient of x^i, with `ex` providing the ring for out-of-range zeros.
    F coeff_or_zero(int i, const F& ex) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return zero_like(ex);
        return c_[static_cast<size_t>(i)];
    }

    void normalize() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        std::vector<F> r;
        size_t n = std::max(a.c_.size(), b.c_.size());
        r.reserve(n);
        const F& ex = a.c_[0];
        for (size_t i = 0; i < n; ++i) {
            F s = (i < a.c_.size()) ? a.c_[i] : zero_like(ex);
            if (i < b.c_.size()) s = s + b.c_[i];
            r.push_back(std::move(s));
        }
        return UniPoly(std::move(r));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    UniPoly operator-() const {
        std::vector<F> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(-a);
        return UniPoly(std::move(r));
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        const F& ex = a.c_[0];
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, zero_like(ex));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return UniPoly(std::move(r));
    }

    UniPoly scaled(const F& s) const {
        if (s.is_zero()) return UniPoly();
        std::vector<F> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(a * s);
        return UniPoly(std::move(r));
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<F> r;
        r.reserve(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i)
            r.push_back(c_[i] * int_like(c_[i], static_cast<long>(i)));
        return UniPoly(std::move(r));
    }

    UniPoly monic() const {
        if (is_zero()) throw Error("UniPoly: monic of zero");
        return scaled(leading().inverse());
    }

    F eval(const F& x) const {
        if (is_zero()) return zero_like(x);
        F acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // p(q(x)) by Horner.
    UniPoly compose(const UniPoly& q) const {
        if (is_zero()) return UniPoly();
        UniPoly acc = UniPoly::constant(c_.back());
        for (size_t i = c_.size() - 1; i-- > 0;)
            acc = acc * q + UniPoly::constant(c_[i]);
        return acc;
    }

    // x^n * p(1/x) for n = degree; coefficient reversal.
    UniPoly reversed() const {
        std::vector<F> r(c_.rbegin(), c_.rend());
        return UniPoly(std::move(r));
    }

  private:
    std::vector<F> c_;
};

template <class F>
UniPoly<F> poly_pow(const UniPoly<F>& p, int n) {
    if (n < 0) throw Error("poly_pow: negative exponent");
    if (p.is_zero()) return n == 0 ? p : p; // 0^0 treated as 0 by callers' convention
    UniPoly<F> acc = UniPoly<F>::constant(one_like(p.leading()));
    for (int i = 0; i < n; ++i) acc = acc * p;
    return acc;
}

// Quotient and remainder; the divisor's leading coefficient must be a unit.
template <class F>
std::pair<UniPoly<F>, UniPoly<F>> divrem(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (b.is_zero()) throw Error("UniPoly: division by zero polynomial");
    if (a.is_zero() || a.degree() < b.degree()) return {UniPoly<F>(), a};
    const F lead_inv = b.leading().inverse();
    std::vector<F> rem(a.coeffs());
    const F& ex = rem[0];
    std::vector<F> quo(static_cast<size_t>(a.degree() - b.degree() + 1), zero_like(ex));
    for (int i = a.degree(); i >= b.degree(); --i) {
        F c = rem[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        F q = c * lead_inv;
        quo[static_cast<size_t>(i - b.degree())] = q;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<size_t>(i - b.degree() + j)] =
                rem[static_cast<size_t>(i - b.degree() + j)] - q * b[j];
    }
    return {UniPoly<F>(std::move(quo)), UniPoly<F>(std::move(rem))};
}

template <class F>
UniPoly<F> exact_div(const UniPoly<F>& a, const UniPoly<F>& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw Error("UniPoly: exact_div has nonzero remainder");
    return q;
}

// Monic gcd via the Euclidean algorithm.  Errors if both inputs are zero.
template <class F>
UniPoly<F> poly_gcd(UniPoly<F> a, UniPoly<F> b) {
    if (a.is_zero() && b.is_zero()) throw Error("poly_gcd: both polynomials zero");
    while (!b.is_zero()) {
        b = b.monic();
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Extended gcd: returns monic g plus u, v with u*a + v*b = g.
template <class F>
struct ExtGcd {
    UniPoly<F> g, u, v;
};

template <class F>
ExtGcd<F> poly_ext_gcd(const UniPoly<F>& a, const UniPoly<F>& b) {
    if (a.is_zero() && b.is_zero()) throw Error("poly_ext_gcd: both polynomials zero");
    const F ex = a.is_zero() ? b.leading() : a.leading();
    UniPoly<F> r0 = a, r1 = b;
    UniPoly<F> u0 = UniPoly<F>::constant(one_like(ex)), u1;
    UniPoly<F> v0, v1 = UniPoly<F>::constant(one_like(ex));
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        UniPoly<F> u2 = u0 - q * u1;
        UniPoly<F> v2 = v0 - q * v1;
        r0 = std::move(r1); r1 = std::move(r2);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    F s = r0.leading().inverse();
    return {r0.scaled(s), u0.scaled(s), v0.scaled(s)};
}

// Yun's square-free decomposition.  Returns pairwise-coprime monic
// square-free factors with multiplicities, ascending by multiplicity;
// the product of factor^multiplicity equals the input up to a scalar.
template <class F>
std::vector<std::pair<UniPoly<F>, int>> squarefree_decompose(const UniPoly<F>& f) {
    if (f.is_zero()) throw Error("squarefree_decompose: zero polynomial");
    std::vector<std::pair<UniPoly<F>, int>> out;
    if (f.degree() == 0) return out;
    UniPoly<F> fm = f.monic();
    UniPoly<F> fp = fm.derivative();
    UniPoly<F> g = poly_gcd(fm, fp);
    UniPoly<F> b = exact_div(fm, g);
    UniPoly<F> c = exact_div(fp, g);
    UniPoly<F> d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        UniPoly<F> a = poly_gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

// Product of the square-free factors (each taken once).
template <class F>
UniPoly<F> squarefree_part(const UniPoly<F>& f) {
    auto dec = squarefree_decompose(f);
    UniPoly<F> out = UniPoly<F>::constant(one_like(f.leading()));
    for (const auto& [p, m] : dec) { (void)m; out = out * p; }
    return out;
}

// Standard Sylvester-matrix resultant, computed by elimination over the
// coefficient field.  Zero iff p and q share a root in the closure.
template <class F>
F resultant(const UniPoly<F>& p, const UniPoly<F>& q) {
    if (p.is_zero() || q.is_zero()) throw Error("resultant: zero polynomial input");
    const F ex = p.leading();
    const int m = p.degree(), n = q.degree();
    if (m == 0) {
        // Res(c, q) = c^deg q
        F r = one_like(ex);
        for (int i = 0; i < n; ++i) r = r * p.leading();
        return r;
    }
    if (n == 0) {
        F r = one_like(ex);
        for (int i = 0; i < m; ++i) r = r * q.leading();
        return r;
    }
    const int n_total = m + n;
    std::vector<std::vector<F>> a(static_cast<size_t>(n_total),
                                  std::vector<F>(static_cast<size_t>(n_total), zero_like(ex)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j)
            a[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = p[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            a[static_cast<size_t>(n + i)][static_cast<size_t>(i + j)] = q[n - j];
    // Gaussian elimination tracking the determinant.
    F det = one_like(ex);
    for (int col = 0; col < n_total; ++col) {
        int piv = -1;
        for (int r = col; r < n_total; ++r)
            if (!a[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) { piv = r; break; }
        if (piv < 0) return zero_like(ex);
        if (piv != col) {
            std::swap(a[static_cast<size_t>(piv)], a[static_cast<size_t>(col)]);
            det = -det;
        }
        const F pv = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        det = det * pv;
        const F pv_inv = pv.inverse();
        for (int r = col + 1; r < n_total; ++r) {
            F factor = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (factor.is_zero()) continue;
            factor = factor * pv_inv;
            for (int cc = col; cc < n_total; ++cc)
                a[static_cast<size_t>(r)][static_cast<size_t>(cc)] =
                    a[static_cast<size_t>(r)][static_cast<size_t>(cc)] -
                    factor * a[static_cast<size_t>(col)][static_cast<size_t>(cc)];
        }
    }
    return det;
}

} // namespace recurve

#endif
