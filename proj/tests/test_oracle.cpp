#include "doctest.h"
#include "helpers.hpp"

#include "recurve/canonical.hpp"
#include "recurve/errors.hpp"
#include "recurve/oracle.hpp"

using namespace recurve;
using namespace rt;

TEST_CASE("newton square root series") {
    // c = 1+q+O(q^4), y0 = 1 -> 1 + q/2 - q^2/8 + q^3/16 + O(q^4)
    auto c = qseries(0, 4, 0, {1, 1, 0, 0});
    auto s = newton_sqrt_series(c, Rational(1));
    CHECK(s.coeff(0) == Rational(1));
    CHECK(s.coeff(1) == Rational(1, 2));
    CHECK(s.coeff(2) == Rational(-1, 8));
    CHECK(s.coeff(3) == Rational(1, 16));

    // constants
    auto c2 = qseries(0, 3, 0, {4, 0, 0});
    auto s2 = newton_sqrt_series(c2, Rational(-2));
    CHECK(s2.coeff(0) == Rational(-2));
    CHECK(s2.coeff(1).is_zero());

    // c(0) = 0 rejected
    auto c3 = qseries(1, 4, 0, {1, 0, 0});
    CHECK_THROWS_AS(newton_sqrt_series(c3, Rational(0)), BadInitialRoot);
    // wrong initial root rejected
    CHECK_THROWS_AS(newton_sqrt_series(c, Rational(2)), BadInitialRoot);
}

namespace {

OracleSpec hyp_spec_x6_minus_2(int B) {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::HyperellipticPoly;
    spec.f = qpoly({-2, 0, 0, 0, 0, 0, 1}); // x^6 - 2
    spec.x0_field = make_number_field(qpoly({-2, 0, 0, 1})); // Q(2^{1/3})
    spec.x0_coords = {Rational(0), Rational(1), Rational(0)};
    spec.precision = B;
    return spec;
}

} // namespace

TEST_CASE("hyperelliptic oracle: y^2 = x^6 - 2 at x0 = 2^(1/3)") {
    const int B = 40;
    ProblemInput in = expand_hyperelliptic(hyp_spec_x6_minus_2(B));
    CHECK(in.genus == 2);
    CHECK(in.field->degree() == 6);
    CHECK(in.forms.size() == 2);
    for (const auto& w : in.forms) {
        CHECK(w.abs_prec() == B);
        CHECK(w.twist() == 1);
    }
    // w2/w1 = x0 + q exactly, so w2 - x0 w1 has valuation 1
    const auto& w1 = in.forms[0];
    const auto& w2 = in.forms[1];
    Series<FieldElement> xser = w2 * w1.inverted();
    CHECK(xser.valuation().value() == 0);
    FieldElement x0k = xser.coeff(0);
    CHECK(xser.coeff(1).is_one());
    Series<FieldElement> diff = w2 - w1.scaled(x0k);
    CHECK(diff.valuation().value() == 1);

    // the defining relation: w1^{-2} = f(x0 + q) to precision
    Series<FieldElement> y2 = series_pow(w1.with_twist(0), -2);
    UniPoly<FieldElement> fk;
    {
        std::vector<FieldElement> c;
        for (int i = 0; i <= 6; ++i)
            c.push_back(FieldElement::from_rational(in.field, qpoly({-2, 0, 0, 0, 0, 0, 1})[i]));
        fk = UniPoly<FieldElement>(std::move(c));
    }
    Series<FieldElement> fx = eval_poly_at_series(fk, xser);
    int cap = std::min(y2.abs_prec(), fx.abs_prec());
    CHECK((y2.truncated(cap) - fx.truncated(cap)).is_zero_to_precision());

    // w1(0) is the reciprocal of the square root of f(x0): check w1(0)^{-2} = f(x0)
    FieldElement lead = w1.coeff(0);
    CHECK((lead * lead).inverse() == fk.eval(x0k));

    // x0 generates the cubic subfield: x0^3 = 2
    CHECK(x0k * x0k * x0k == FieldElement::from_rational(in.field, Rational(2)));
}

TEST_CASE("hyperelliptic oracle with extension of a quadratic base") {
    // f = x^5 + x + 3 at x0 = sqrt(2): K has degree 4
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::HyperellipticPoly;
    spec.f = qpoly({3, 1, 0, 0, 0, 1});
    spec.x0_field = make_number_field(qpoly({-2, 0, 1}));
    spec.x0_coords = {Rational(0), Rational(1)};
    spec.precision = 30;
    ProblemInput in = expand_hyperelliptic(spec);
    CHECK(in.genus == 2);
    CHECK(in.field->degree() == 4);
}

TEST_CASE("scramble basis") {
    ProblemInput in = expand_hyperelliptic(hyp_spec_x6_minus_2(20));
    Matrix<Rational> id = Matrix<Rational>::identity(2, Rational(0));
    ProblemInput same = scramble_basis(in, id);
    CHECK(same.forms[0] == in.forms[0]);
    CHECK(same.forms[1] == in.forms[1]);

    Matrix<Rational> perm = Matrix<Rational>::zero(2, 2, Rational(0));
    perm.at(0, 1) = Rational(1);
    perm.at(1, 0) = Rational(1);
    ProblemInput swapped = scramble_basis(in, perm);
    CHECK(swapped.forms[0] == in.forms[1]);
    CHECK(swapped.forms[1] == in.forms[0]);

    Matrix<Rational> sing = Matrix<Rational>::zero(2, 2, Rational(0));
    sing.at(0, 0) = Rational(1);
    sing.at(1, 0) = Rational(1);
    CHECK_THROWS_AS(scramble_basis(in, sing), SingularMatrix);
}

TEST_CASE("plane quartic oracle: Klein quartic at a cubic point") {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::PlaneQuartic;
    spec.quartic = HomForm(3, 4);
    spec.quartic.add_term({3, 1, 0}, Rational(1));
    spec.quartic.add_term({0, 3, 1}, Rational(1));
    spec.quartic.add_term({1, 0, 3}, Rational(1));
    spec.point_field = make_number_field(qpoly({1, 1, 0, 1})); // t^3 + t + 1
    spec.px = {Rational(1), Rational(0), Rational(0)};
    spec.py = {Rational(0), Rational(1), Rational(0)};
    spec.precision = 24;
    ProblemInput in = expand_plane_quartic(spec);
    CHECK(in.genus == 3);
    CHECK(in.forms.size() == 3);
    CHECK(in.field->degree() == 3);
    // valuation pattern: first form has valuation 0 and the rank is 3
    CHECK(in.forms[0].valuation().value() == 0);
}

TEST_CASE("conic-weighted oracle with a pointless conic descends to g independent forms") {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::ConicWeighted;
    spec.conic_q = HomForm(3, 2);
    spec.conic_q.add_term({2, 0, 0}, Rational(1));
    spec.conic_q.add_term({0, 2, 0}, Rational(1));
    spec.conic_q.add_term({0, 0, 2}, Rational(1));
    spec.conic_h = HomForm(3, 4);
    spec.conic_h.add_term({4, 0, 0}, Rational(1));
    spec.conic_h.add_term({0, 4, 0}, Rational(2));
    spec.conic_h.add_term({0, 0, 4}, Rational(3));
    spec.conic_h.add_term({1, 1, 2}, Rational(1));
    spec.param_coords = {Rational(1), Rational(1)};
    spec.precision = 30;
    ProblemInput in = expand_conic_model(spec);
    CHECK(in.genus == 3);
    CHECK(in.forms.size() == 3);
    // K contains Q(i) and the square root of a generic value: degree 4
    CHECK(in.field->degree() == 4);
    for (const auto& w : in.forms) {
        CHECK(w.abs_prec() == 30);
        CHECK(w.twist() == 1);
        CHECK(w.val_offset() >= 0);
    }
}

TEST_CASE("conic-weighted oracle with a rational conic point skips descent") {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::ConicWeighted;
    // b^2 - ac has rational points
    spec.conic_q = HomForm(3, 2);
    spec.conic_q.add_term({0, 2, 0}, Rational(1));
    spec.conic_q.add_term({1, 0, 1}, Rational(-1));
    spec.conic_h = HomForm(3, 4);
    spec.conic_h.add_term({4, 0, 0}, Rational(1));
    spec.conic_h.add_term({0, 0, 4}, Rational(-2));
    spec.conic_h.add_term({0, 2, 2}, Rational(1));
    spec.param_coords = {Rational(2), Rational(0)};
    spec.precision = 24;
    ProblemInput in = expand_conic_model(spec);
    CHECK(in.genus == 3);
    CHECK(in.forms.size() == 3);
}
