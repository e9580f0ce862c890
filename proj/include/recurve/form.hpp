#ifndef RECURVE_FORM_HPP
#define RECURVE_FORM_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "recurve/field.hpp"
#include "recurve/matrix.hpp"
#include "recurve/series.hpp"

namespace recurve {

inline Rational rational_like(const Rational&, const Rational& r) { return r; }
inline FieldElement rational_like(const FieldElement& ex, const Rational& r) {
    return FieldElement::from_rational(ex.parent(), r);
}

// Homogeneous form over Q in num_vars variables with a fixed total
// degree; sparse, keyed by exponent vector.  Terms iterate in graded-lex
// order with x1 > x2 > ... (leading term first).
class HomForm {
  public:
    using Exps = std::vector<int>;
    using TermMap = std::map<Exps, Rational, std::greater<Exps>>;

    HomForm(int num_vars, int degree) : nv_(num_vars), deg_(degree) {}

    int num_vars() const { return nv_; }
    int degree() const { return deg_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Exps& e, const Rational& c);
    Rational coeff(const Exps& e) const;

    HomForm operator-() const;
    friend HomForm operator+(const HomForm& a, const HomForm& b);
    friend HomForm operator-(const HomForm& a, const HomForm& b);
    friend HomForm operator*(const HomForm& a, const HomForm& b);
    HomForm scaled(const Rational& s) const;
    friend bool operator==(const HomForm& a, const HomForm& b);

    // Clear denominators, divide by integer content, make the graded-lex
    // leading coefficient positive.
    HomForm primitive_normalized() const;

    // x_i -> sum_j m(i,j) y_j.
    HomForm substituted(const Matrix<Rational>& m) const;

    // Formal partial derivative with respect to variable i.
    HomForm partial(int var) const;

    std::string str() const;

    // All exponent vectors of the given degree, descending graded-lex.
    static std::vector<Exps> monomials(int num_vars, int degree);

    // Evaluate the form on coordinate series.
    template <class F>
    Series<F> evaluate(const std::vector<Series<F>>& vars) const {
        if (static_cast<int>(vars.size()) != nv_)
            throw Error("HomForm: wrong number of coordinate series");
        int abs = vars[0].abs_prec();
        const F ex = vars[0].exemplar();
        Series<F> acc = Series<F>::zero_to_prec(abs, deg_ * vars[0].twist(), ex);
        bool first = true;
        for (const auto& [e, c] : t_) {
            Series<F> term = Series<F>::constant(rational_like(ex, c), abs, 0);
            for (int i = 0; i < nv_; ++i)
                for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) term = term * vars[static_cast<size_t>(i)];
            if (first && term.twist() != acc.twist())
                acc = Series<F>::zero_to_prec(abs, term.twist(), ex);
            first = false;
            acc = acc + term;
        }
        return acc;
    }

  private:
    int nv_, deg_;
    TermMap t_;
};

// Remainder of a modulo the single divisor q (graded-lex leading term);
// zero remainder is equivalent to membership in the principal ideal (q).
HomForm reduce_mod(const HomForm& a, const HomForm& q);

// Homogeneous binary form of a fixed formal degree over F, stored as its
// dehomogenization p(x) = f(x, 1); the multiplicity of the place at
// infinity is formal_degree - deg p.
template <class F>
struct BinaryForm {
    UniPoly<F> affine;
    int formal_degree = 0;

    bool is_zero() const { return affine.is_zero(); }
    int infinity_mult() const { return formal_degree - affine.degree(); }

    friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
        return {a.affine * b.affine, a.formal_degree + b.formal_degree};
    }
    friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
        return a.affine == b.affine && a.formal_degree == b.formal_degree;
    }

    F coefficient(int k, const F& ex) const { return affine.coeff_or_zero(k, ex); }
};

// Square-free decomposition of a binary form, infinity place included.
// Returns the leading unit and monic factors with multiplicities; the
// infinity factor is encoded as {affine = 1, formal_degree = 1}.
template <class F>
struct BinaryDecomposition {
    F unit;
    std::vector<std::pair<BinaryForm<F>, int>> factors;
};

template <class F>
BinaryDecomposition<F> binary_squarefree(const BinaryForm<F>& f) {
    if (f.is_zero()) throw Error("binary_squarefree: zero form");
    BinaryDecomposition<F> out{f.affine.leading(), {}};
    if (f.affine.degree() > 0) {
        for (auto& [p, m] : squarefree_decompose(f.affine))
            out.factors.emplace_back(BinaryForm<F>{p, p.degree()}, m);
    }
    const int inf = f.infinity_mult();
    if (inf > 0) {
        UniPoly<F> one = UniPoly<F>::constant(one_like(f.affine.leading()));
        out.factors.emplace_back(BinaryForm<F>{one, 1}, inf);
    }
    return out;
}

// Compose a rational ternary form with three binary forms of equal
// formal degree.
template <class F>
BinaryForm<F> compose_ternary(const HomForm& h, const std::vector<BinaryForm<F>>& phi, const F& ex) {
    if (h.num_vars() != 3 || phi.size() != 3) throw Error("compose_ternary: expects ternary data");
    const int d = phi[0].formal_degree;
    BinaryForm<F> acc{UniPoly<F>(), h.degree() * d};
    for (const auto& [e, c] : h.terms()) {
        BinaryForm<F> term{UniPoly<F>::constant(rational_like(ex, c)), 0};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) term = term * phi[static_cast<size_t>(i)];
        if (term.formal_degree != acc.formal_degree && !term.affine.is_zero())
            throw Error("compose_ternary: formal degree mismatch");
        acc.affine = acc.affine + term.affine;
    }
    return acc;
}

} // namespace recurve

#endif
