#include "recurve/form.hpp"

#include <numeric>
#include <sstream>

#include "recurve/errors.hpp"

namespace recurve {

void HomForm::add_term(const Exps& e, const Rational& c) {
    if (static_cast<int>(e.size()) != nv_) throw Error("HomForm: exponent vector length mismatch");
    int total = std::accumulate(e.begin(), e.end(), 0);
    if (total != deg_) throw Error("HomForm: exponent vector degree mismatch");
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Rational HomForm::coeff(const Exps& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Rational(0) : it->second;
}

HomForm HomForm::operator-() const {
    HomForm r(nv_, deg_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
}

HomForm operator+(const HomForm& a, const HomForm& b) {
    if (a.nv_ != b.nv_ || a.deg_ != b.deg_) throw Error("HomForm: shape mismatch in sum");
    HomForm r = a;
    for (const auto& [e, c] : b.t_) r.add_term(e, c);
    return r;
}

HomForm operator-(const HomForm& a, const HomForm& b) { return a + (-b); }

HomForm operator*(const HomForm& a, const HomForm& b) {
    if (a.nv_ != b.nv_) throw Error("HomForm: variable count mismatch in product");
    HomForm r(a.nv_, a.deg_ + b.deg_);
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) {
            HomForm::Exps e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

HomForm HomForm::scaled(const Rational& s) const {
    HomForm r(nv_, deg_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : t_) r.t_.emplace(e, c * s);
    return r;
}

bool operator==(const HomForm& a, const HomForm& b) {
    return a.nv_ == b.nv_ && a.deg_ == b.deg_ && a.t_ == b.t_;
}

HomForm HomForm::primitive_normalized() const {
    if (t_.empty()) return *this;
    mpz_class den_lcm = 1;
    for (const auto& [e, c] : t_) den_lcm = int_lcm(den_lcm, c.den());
    mpz_class content = 0;
    for (const auto& [e, c] : t_) content = int_gcd(content, c.num() * (den_lcm / c.den()));
    Rational scale(mpq_class(den_lcm) / mpq_class(content));
    if (t_.begin()->second.sign() < 0) scale = -scale;
    return scaled(scale);
}

HomForm HomForm::substituted(const Matrix<Rational>& m) const {
    if (m.nrows() != nv_ || m.ncols() != nv_) throw Error("HomForm: substitution matrix shape");
    // x_i -> sum_j m(i,j) y_j
    std::vector<HomForm> lin;
    lin.reserve(static_cast<size_t>(nv_));
    for (int i = 0; i < nv_; ++i) {
        HomForm l(nv_, 1);
        for (int j = 0; j < nv_; ++j) {
            Exps e(static_cast<size_t>(nv_), 0);
            e[static_cast<size_t>(j)] = 1;
            l.add_term(e, m.at(i, j));
        }
        lin.push_back(std::move(l));
    }
    HomForm r(nv_, deg_);
    for (const auto& [e, c] : t_) {
        HomForm term(nv_, 0);
        term.add_term(Exps(static_cast<size_t>(nv_), 0), c);
        for (int i = 0; i < nv_; ++i)
            for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) term = term * lin[static_cast<size_t>(i)];
        r = r + term;
    }
    return r;
}

HomForm HomForm::partial(int var) const {
    if (var < 0 || var >= nv_) throw Error("HomForm: partial variable out of range");
    HomForm r(nv_, deg_ - 1);
    for (const auto& [e, c] : t_) {
        const int k = e[static_cast<size_t>(var)];
        if (k == 0) continue;
        Exps e2(e);
        e2[static_cast<size_t>(var)] -= 1;
        r.add_term(e2, c * Rational(k));
    }
    return r;
}

std::string HomForm::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) {
                os << "*x" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
    }
    return os.str();
}

std::vector<HomForm::Exps> HomForm::monomials(int num_vars, int degree) {
    std::vector<Exps> out;
    Exps cur(static_cast<size_t>(num_vars), 0);
    // Descending lex enumeration by recursion on the first variable.
    std::function<void(int, int)> rec = [&](int var, int rem) {
        if (var == num_vars - 1) {
            cur[static_cast<size_t>(var)] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[static_cast<size_t>(var)] = e;
            rec(var + 1, rem - e);
        }
        cur[static_cast<size_t>(var)] = 0;
    };
    rec(0, degree);
    return out;
}

HomForm reduce_mod(const HomForm& a, const HomForm& q) {
    if (q.is_zero()) throw Error("reduce_mod: zero divisor form");
    if (a.num_vars() != q.num_vars()) throw Error("reduce_mod: variable count mismatch");
    const auto& lead = *q.terms().begin();
    HomForm r = a;
    for (;;) {
        const HomForm::Exps* hit = nullptr;
        Rational hit_coeff;
        for (const auto& [e, c] : r.terms()) {
            bool div = true;
            for (size_t i = 0; i < e.size(); ++i)
                if (e[i] < lead.first[i]) { div = false; break; }
            if (div) { hit = &e; hit_coeff = c; break; }
        }
        if (!hit) return r;
        HomForm::Exps shift(*hit);
        for (size_t i = 0; i < shift.size(); ++i) shift[i] -= lead.first[i];
        HomForm mono(q.num_vars(), r.degree() - q.degree());
        mono.add_term(shift, hit_coeff / lead.second);
        r = r - mono * q;
    }
}

} // namespace recurve
