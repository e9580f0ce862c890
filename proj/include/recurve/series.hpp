#ifndef RECURVE_SERIES_HPP
#define RECURVE_SERIES_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "recurve/errors.hpp"
#include "recurve/matrix.hpp"
#include "recurve/poly.hpp"

namespace recurve {

// Truncated Laurent series in the uniformizer q over a coefficient
// ring F, with explicit absolute precision (value known up to +O(q^N))
// and an integer twist n recording a dq^n (n>0) or (d/dq)^{-n} (n<0)
// factor.  Stored coefficients run from val_offset to abs_prec-1 and
// the leading stored coefficient is nonzero; an empty coefficient list
// (val_offset == abs_prec) means indistinguishable from 0 to precision.
template <class F>
class Series {
  public:
    Series(int val_offset, int abs_prec, int twist, std::vector<F> coeffs, F exemplar)
        : off_(val_offset), abs_(abs_prec), twist_(twist), c_(std::move(coeffs)),
          ex_(zero_like(exemplar)) {
        if (static_cast<int>(c_.size()) != abs_ - off_)
            throw Error("Series: coefficient count does not match precision window");
        normalize();
    }

    static Series zero_to_prec(int abs_prec, int twist, const F& ex) {
        return Series(abs_prec, abs_prec, twist, {}, ex);
    }

    static Series constant(const F& a, int abs_prec, int twist = 0) {
        if (abs_prec <= 0 || a.is_zero()) return zero_to_prec(abs_prec, twist, a);
        std::vector<F> c(static_cast<size_t>(abs_prec), zero_like(a));
        c[0] = a;
        return Series(0, abs_prec, twist, std::move(c), a);
    }

    int val_offset() const { return off_; }
    int abs_prec() const { return abs_; }
    int twist() const { return twist_; }
    const F& exemplar() const { return ex_; }
    const std::vector<F>& coeffs() const { return c_; }

    bool is_zero_to_precision() const { return c_.empty(); }

    // Index of the first nonzero stored coefficient; nullopt when the
    // series is indistinguishable from zero to precision.
    std::optional<int> valuation() const {
        if (c_.empty()) return std::nullopt;
        return off_;
    }

    // Lower bound on the true valuation (= abs_prec for a zero series);
    // this is what the precision propagation rules consume.
    int val_lower() const { return c_.empty() ? abs_ : off_; }

    int rel_prec() const { return abs_ - val_lower(); }

    F coeff(int k) const {
        if (k >= abs_) throw Error("Series: coefficient requested beyond precision");
        if (k < off_ || c_.empty()) return ex_;
        return c_[static_cast<size_t>(k - off_)];
    }

    Series with_twist(int t) const {
        Series s = *this;
        s.twist_ = t;
        return s;
    }

    // Keep only coefficients below new_abs.
    Series truncated(int new_abs) const {
        if (new_abs >= abs_) return *this;
        std::vector<F> c;
        int start = off_;
        if (new_abs > off_ && !c_.empty())
            c.assign(c_.begin(), c_.begin() + (new_abs - off_));
        else
            start = new_abs;
        return Series(start, new_abs, twist_, std::move(c), ex_);
    }

    // Demand at least `required_abs` of window, then truncate to it.
    Series certified(int required_abs) const {
        if (abs_ < required_abs)
            throw PrecisionExhausted("Series: certification requires more precision than computed");
        return truncated(required_abs);
    }

    // Multiplication by q^n.
    Series shifted(int n) const {
        return Series(off_ + n, abs_ + n, twist_, c_, ex_);
    }

    Series scaled(const F& a) const {
        if (a.is_zero()) return zero_to_prec(abs_, twist_, ex_);
        std::vector<F> c;
        c.reserve(c_.size());
        for (const auto& x : c_) c.push_back(x * a);
        return Series(off_, abs_, twist_, std::move(c), ex_);
    }

    Series operator-() const {
        std::vector<F> c;
        c.reserve(c_.size());
        for (const auto& x : c_) c.push_back(-x);
        return Series(off_, abs_, twist_, std::move(c), ex_);
    }

    friend Series operator+(const Series& a, const Series& b) {
        if (a.twist_ != b.twist_) throw Error("Series: twist mismatch in addition");
        const int abs = std::min(a.abs_, b.abs_);
        const int off = std::min(a.val_lower(), b.val_lower());
        if (off >= abs) return zero_to_prec(abs, a.twist_, a.ex_);
        std::vector<F> c(static_cast<size_t>(abs - off), zero_like(a.ex_));
        for (int k = off; k < abs; ++k) {
            F s = (k >= a.off_ && k < a.abs_ && !a.c_.empty() && k - a.off_ < static_cast<int>(a.c_.size()))
                      ? a.c_[static_cast<size_t>(k - a.off_)]
                      : zero_like(a.ex_);
            if (k >= b.off_ && k < b.abs_ && !b.c_.empty() && k - b.off_ < static_cast<int>(b.c_.size()))
                s = s + b.c_[static_cast<size_t>(k - b.off_)];
            c[static_cast<size_t>(k - off)] = std::move(s);
        }
        return Series(off, abs, a.twist_, std::move(c), a.ex_);
    }

    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

    friend Series operator*(const Series& a, const Series& b) {
        const int twist = a.twist_ + b.twist_;
        const int abs = std::min(a.abs_ + b.val_lower(), b.abs_ + a.val_lower());
        if (a.c_.empty() || b.c_.empty())
            return zero_to_prec(abs, twist, a.ex_);
        const int off = a.off_ + b.off_;
        if (off >= abs) return zero_to_prec(abs, twist, a.ex_);
        const size_t window = static_cast<size_t>(abs - off);
        std::vector<F> c(window, zero_like(a.ex_));
        for (size_t i = 0; i < a.c_.size() && i < window; ++i) {
            if (a.c_[i].is_zero()) continue;
            const size_t jmax = std::min(b.c_.size(), window - i);
            for (size_t j = 0; j < jmax; ++j) {
                if (b.c_[j].is_zero()) continue;
                c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return Series(off, abs, twist, std::move(c), a.ex_);
    }

    // Series inverse; the leading stored coefficient must be a unit.
    // Relative precision is preserved, so abs_prec becomes abs - 2*val.
    Series inverted() const {
        if (c_.empty())
            throw NonUnitLeadingCoefficient("Series: cannot invert a series that is zero to precision");
        F lead_inv = [&] {
            try {
                return c_[0].inverse();
            } catch (const ReducibleExtension& e) {
                throw NonUnitLeadingCoefficient(std::string("Series: leading coefficient not a unit: ") + e.what());
            }
        }();
        const int n = rel_prec();
        // Coefficients of (sum c_k q^k)^{-1} with c re-indexed from 0.
        std::vector<F> r(static_cast<size_t>(n), zero_like(ex_));
        r[0] = lead_inv;
        for (int k = 1; k < n; ++k) {
            F acc = zero_like(ex_);
            for (int j = 1; j <= k && j < static_cast<int>(c_.size()); ++j) {
                if (c_[static_cast<size_t>(j)].is_zero()) continue;
                acc = acc + c_[static_cast<size_t>(j)] * r[static_cast<size_t>(k - j)];
            }
            r[static_cast<size_t>(k)] = -(acc * lead_inv);
        }
        return Series(-off_, -off_ + n, -twist_, std::move(r), ex_);
    }

    friend Series operator/(const Series& a, const Series& b) { return a * b.inverted(); }

    // d/dq; defined for plain function series, producing a dq-series.
    Series derivative() const {
        if (twist_ != 0) throw Error("Series: derivative requires twist 0");
        const int abs = abs_ - 1;
        if (c_.empty()) return zero_to_prec(abs, 1, ex_);
        // Output exponent e picks up (e+1) * a_{e+1}; the k = 0 term of
        // the input dies through the zero factor.
        const int off = off_ - 1;
        std::vector<F> c;
        c.reserve(static_cast<size_t>(abs - off));
        for (int e = off; e < abs; ++e)
            c.push_back(coeff(e + 1) * int_like(ex_, static_cast<long>(e) + 1));
        return Series(off, abs, 1, std::move(c), ex_);
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.off_ == b.off_ && a.abs_ == b.abs_ && a.twist_ == b.twist_ && a.c_ == b.c_;
    }

  private:
    void normalize() {
        size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            off_ += static_cast<int>(lead);
        }
        if (c_.empty()) off_ = abs_;
    }

    int off_, abs_, twist_;
    std::vector<F> c_;
    F ex_;
};

// Exact-zero certificate via the vanishing bound: if all coefficients
// at exponents <= degree_bound / [K:Q] vanish, the corresponding global
// section is exactly zero.  Requires enough precision to see past the
// threshold.
template <class F>
bool is_zero_as_section(const Series<F>& a, long degree_bound) {
    const long fdeg = field_degree_over_q(a.exemplar());
    const long threshold = degree_bound / fdeg + 1; // first exponent strictly beyond the bound
    if (static_cast<long>(a.abs_prec()) < threshold)
        throw InsufficientPrecision("is_zero_as_section: precision below the vanishing threshold");
    if (a.is_zero_to_precision()) return true;
    if (a.val_offset() >= threshold) return true;
    for (int k = a.val_offset(); k < std::min<long>(a.abs_prec(), threshold); ++k)
        if (!a.coeff(k).is_zero()) return false;
    return true;
}

// Evaluate a polynomial at a series (Horner).
template <class F>
Series<F> eval_poly_at_series(const UniPoly<F>& p, const Series<F>& x) {
    const int abs = x.abs_prec();
    if (p.is_zero()) return Series<F>::zero_to_prec(abs, 0, x.exemplar());
    Series<F> acc = Series<F>::constant(p.leading(), abs, 0);
    for (int i = p.degree() - 1; i >= 0; --i) {
        acc = acc * x;
        acc = acc + Series<F>::constant(p[i], acc.abs_prec(), 0);
    }
    return acc;
}

template <class F>
Series<F> series_pow(const Series<F>& a, int n) {
    if (n < 0) return series_pow(a.inverted(), -n);
    Series<F> acc = Series<F>::constant(one_like(a.exemplar()), a.abs_prec(), 0);
    for (int i = 0; i < n; ++i) acc = acc * a;
    return acc;
}

// Gaussian elimination over the coefficient field producing a new basis
// of the row span with strictly increasing valuations, together with
// the invertible change of basis M (ordered = M * input).
template <class F>
struct Staircase {
    std::vector<Series<F>> ordered;
    Matrix<F> change;
};

template <class F>
Staircase<F> valuation_staircase(const std::vector<Series<F>>& rows_in) {
    if (rows_in.empty()) throw Error("valuation_staircase: no rows");
    const F ex = rows_in[0].exemplar();
    const int n = static_cast<int>(rows_in.size());
    std::vector<Series<F>> rows = rows_in;
    Matrix<F> m = Matrix<F>::identity(n, ex);
    std::vector<int> order; // indices in pivot order
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (int step = 0; step < n; ++step) {
        // Lowest current valuation, ties to lowest index.
        int best = -1;
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<size_t>(i)]) continue;
            if (rows[static_cast<size_t>(i)].is_zero_to_precision())
                throw RankDeficient("valuation_staircase: rows dependent within precision");
            if (best < 0 || rows[static_cast<size_t>(i)].val_offset() < rows[static_cast<size_t>(best)].val_offset())
                best = i;
        }
        const int v = rows[static_cast<size_t>(best)].val_offset();
        used[static_cast<size_t>(best)] = true;
        order.push_back(best);
        const F lead = rows[static_cast<size_t>(best)].coeff(v);
        const F lead_inv = lead.inverse();
        for (int i = 0; i < n; ++i) {
            if (used[static_cast<size_t>(i)]) continue;
            if (rows[static_cast<size_t>(i)].val_offset() != v) continue;
            const F f = rows[static_cast<size_t>(i)].coeff(v) * lead_inv;
            rows[static_cast<size_t>(i)] = rows[static_cast<size_t>(i)] - rows[static_cast<size_t>(best)].scaled(f);
            for (int j = 0; j < n; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(best, j);
            if (rows[static_cast<size_t>(i)].is_zero_to_precision()) {
                if (rows[static_cast<size_t>(i)].abs_prec() <= v + 1)
                    throw PrecisionExhausted("valuation_staircase: cannot separate valuations within precision");
                throw RankDeficient("valuation_staircase: rows dependent within precision");
            }
        }
    }
    Staircase<F> out{ {}, Matrix<F>::zero(n, n, ex) };
    out.ordered.reserve(static_cast<size_t>(n));
    for (int s = 0; s < n; ++s) {
        out.ordered.push_back(rows[static_cast<size_t>(order[static_cast<size_t>(s)])]);
        for (int j = 0; j < n; ++j)
            out.change.at(s, j) = m.at(order[static_cast<size_t>(s)], j);
    }
    // Valuations must now strictly increase.
    for (size_t s = 1; s < out.ordered.size(); ++s)
        if (out.ordered[s].val_offset() <= out.ordered[s - 1].val_offset())
            throw PrecisionExhausted("valuation_staircase: could not order valuations");
    return out;
}

} // namespace recurve

#endif
