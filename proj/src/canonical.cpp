#include "recurve/canonical.hpp"

#include "recurve/errors.hpp"

namespace recurve {

long binom2(long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

void validate_problem_input(const ProblemInput& input) {
    if (input.genus < 2) throw InconsistentInput("input: genus must be at least 2");
    if (!input.field) throw InconsistentInput("input: missing number field");
    if (static_cast<int>(input.forms.size()) != input.genus)
        throw InconsistentInput("input: expected exactly g form expansions");
    for (const auto& w : input.forms) {
        if (w.twist() != 1) throw InconsistentInput("input: form expansions must carry twist +1");
        if (w.abs_prec() != input.precision)
            throw InconsistentInput("input: form precision does not match the stated budget");
        if (!w.is_zero_to_precision() && w.val_offset() < 0)
            throw InconsistentInput("input: form expansions must be regular at the point");
        if (w.is_zero_to_precision())
            throw InconsistentInput("input: a form expansion is zero to precision");
    }
    // Q-linear independence of the g series.
    const int deg = input.field->degree();
    const int B = input.precision;
    Matrix<Rational> m = Matrix<Rational>::zero(input.genus, B * deg, Rational(0));
    for (int i = 0; i < input.genus; ++i)
        for (int k = 0; k < B; ++k) {
            const FieldElement c = input.forms[static_cast<size_t>(i)].coeff(k);
            for (int j = 0; j < deg; ++j)
                m.at(i, k * deg + j) = c.coords()[static_cast<size_t>(j)];
        }
    if (rank(m) != input.genus)
        throw RankDeficient("input: form expansions are Q-linearly dependent");
}

std::vector<Series<FieldElement>> monomial_series(const std::vector<Series<FieldElement>>& vars,
                                                  int d, int cap_abs) {
    const auto monos = HomForm::monomials(static_cast<int>(vars.size()), d);
    // Power cache per variable.
    const FieldElement ex = vars[0].exemplar();
    std::vector<std::vector<Series<FieldElement>>> pows(vars.size());
    for (size_t i = 0; i < vars.size(); ++i)
        pows[i].push_back(Series<FieldElement>::constant(one_like(ex), cap_abs, 0));
    auto var_pow = [&](size_t i, int e) -> const Series<FieldElement>& {
        while (static_cast<int>(pows[i].size()) <= e)
            pows[i].push_back((pows[i].back() * vars[i]).truncated(cap_abs));
        return pows[i][static_cast<size_t>(e)];
    };
    std::vector<Series<FieldElement>> out;
    out.reserve(monos.size());
    for (const auto& e : monos) {
        Series<FieldElement> prod = Series<FieldElement>::constant(one_like(ex), cap_abs, 0);
        for (size_t i = 0; i < vars.size(); ++i)
            if (e[i] > 0) prod = (prod * var_pow(i, e[i])).truncated(cap_abs);
        out.push_back(prod);
    }
    return out;
}

Matrix<Rational> monomial_evaluation_matrix(const ProblemInput& input, int d) {
    const int B = input.precision;
    const int deg = input.field->degree();
    auto monos = monomial_series(input.forms, d, B);
    const int ncols = static_cast<int>(monos.size());
    Matrix<Rational> m = Matrix<Rational>::zero(B * deg, ncols, Rational(0));
    for (int c = 0; c < ncols; ++c) {
        const auto& s = monos[static_cast<size_t>(c)];
        for (int k = std::max(0, s.val_offset()); k < std::min(B, s.abs_prec()); ++k) {
            const FieldElement fc = s.coeff(k);
            for (int j = 0; j < deg; ++j)
                m.at(k * deg + j, c) = fc.coords()[static_cast<size_t>(j)];
        }
    }
    return m;
}

CanonicalIdealComponent canonical_ideal_component(const ProblemInput& input, int d) {
    const long g = input.genus;
    const long fdeg = input.field->degree();
    if (static_cast<long>(input.precision) * fdeg <= d * (2 * g - 2))
        throw InsufficientPrecision("canonical_ideal_component: B <= d(2g-2)/[K:Q]");
    Matrix<Rational> m = monomial_evaluation_matrix(input, d);
    auto ker = kernel(m);
    const auto monos = HomForm::monomials(input.genus, d);
    CanonicalIdealComponent out;
    out.degree = d;
    for (const auto& v : ker) {
        HomForm f(input.genus, d);
        for (size_t c = 0; c < monos.size(); ++c) f.add_term(monos[c], v[c]);
        out.basis.push_back(f.primitive_normalized());
    }
    return out;
}

CurveClass detect_hyperelliptic(int g, int dim_i2) {
    if (g < 2) throw InconsistentInput("detect_hyperelliptic: genus below 2");
    if (g == 2) return CurveClass::Hyperelliptic;
    if (dim_i2 == binom2(g - 1)) return CurveClass::Hyperelliptic;
    if (dim_i2 == binom2(g - 2)) return CurveClass::Nonhyperelliptic;
    throw InconsistentInput("detect_hyperelliptic: dim I_2 matches neither class");
}

CanonicalModel nonhyperelliptic_model(const ProblemInput& input) {
    const long g = input.genus;
    const long fdeg = input.field->degree();
    if (static_cast<long>(input.precision) * fdeg <= 4 * (2 * g - 2))
        throw InsufficientPrecision("nonhyperelliptic_model: B <= 4(2g-2)/[K:Q]");
    CanonicalIdealComponent i2 = canonical_ideal_component(input, 2);
    if (detect_hyperelliptic(input.genus, static_cast<int>(i2.basis.size())) !=
        CurveClass::Nonhyperelliptic)
        throw InconsistentInput("nonhyperelliptic_model: input is hyperelliptic");
    CanonicalModel out;
    for (auto& f : i2.basis) out.generators.push_back(std::move(f));
    for (int d : {3, 4}) {
        CanonicalIdealComponent c = canonical_ideal_component(input, d);
        for (auto& f : c.basis) out.generators.push_back(std::move(f));
    }
    return out;
}

} // namespace recurve
