#include "doctest.h"
#include "helpers.hpp"

#include "recurve/canonical.hpp"
#include "recurve/errors.hpp"
#include "recurve/oracle.hpp"

using namespace recurve;
using namespace rt;

namespace {

OracleSpec hyp_spec(std::initializer_list<long> fc, int B) {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::HyperellipticPoly;
    spec.f = qpoly(fc);
    spec.x0_field = make_number_field(qpoly({-2, 0, 0, 1}));
    spec.x0_coords = {Rational(0), Rational(1), Rational(0)};
    spec.precision = B;
    return spec;
}

OracleSpec klein_spec(int B) {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::PlaneQuartic;
    spec.quartic = HomForm(3, 4);
    spec.quartic.add_term({3, 1, 0}, Rational(1));
    spec.quartic.add_term({0, 3, 1}, Rational(1));
    spec.quartic.add_term({1, 0, 3}, Rational(1));
    spec.point_field = make_number_field(qpoly({1, 1, 0, 1}));
    spec.px = {Rational(1), Rational(0), Rational(0)};
    spec.py = {Rational(0), Rational(1), Rational(0)};
    spec.precision = B;
    return spec;
}

} // namespace

TEST_CASE("binomial helper") {
    CHECK(binom2(1) == 0);
    CHECK(binom2(2) == 1);
    CHECK(binom2(4) == 6);
    CHECK(binom2(-3) == 0);
}

TEST_CASE("detect_hyperelliptic on the lemma dimensions") {
    CHECK(detect_hyperelliptic(3, 1) == CurveClass::Hyperelliptic);
    CHECK(detect_hyperelliptic(3, 0) == CurveClass::Nonhyperelliptic);
    CHECK(detect_hyperelliptic(2, 0) == CurveClass::Hyperelliptic);
    CHECK(detect_hyperelliptic(5, 6) == CurveClass::Hyperelliptic);
    CHECK(detect_hyperelliptic(5, 3) == CurveClass::Nonhyperelliptic);
    CHECK_THROWS_AS(detect_hyperelliptic(3, 2), InconsistentInput);
}

TEST_CASE("evaluation matrix shape") {
    ProblemInput in = expand_hyperelliptic(hyp_spec({-2, 0, 0, 0, 0, 0, 1}, 16));
    Matrix<Rational> m = monomial_evaluation_matrix(in, 1);
    CHECK(m.ncols() == 2);
    CHECK(m.nrows() == 16 * 6);
    // d = 2 with g = 3 would give C(4,2) = 6 columns
    ProblemInput in3 = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 1}, 16));
    CHECK(in3.genus == 3);
    CHECK(monomial_evaluation_matrix(in3, 2).ncols() == 6);
}

TEST_CASE("canonical ideal of the g=3 hyperelliptic oracle y^2 = x^8 - 1") {
    ProblemInput in = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 1}, 24));
    REQUIRE(in.genus == 3);
    // rank 5 at degree 2, so a one-dimensional kernel
    Matrix<Rational> m = monomial_evaluation_matrix(in, 2);
    CHECK(rank(m) == 5);
    CanonicalIdealComponent i2 = canonical_ideal_component(in, 2);
    REQUIRE(i2.basis.size() == 1);
    // spanned by x1 x3 - x2^2
    HomForm expected(3, 2);
    expected.add_term({1, 0, 1}, Rational(1));
    expected.add_term({0, 2, 0}, Rational(-1));
    CHECK(i2.basis[0] == expected);
    // the relation evaluates to zero on the series
    CHECK(i2.basis[0].evaluate(in.forms).is_zero_to_precision());
    CHECK(detect_hyperelliptic(3, 1) == CurveClass::Hyperelliptic);
}

TEST_CASE("canonical ideal dimensions for hyperelliptic genus 4 and 5") {
    ProblemInput g4 = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 28));
    REQUIRE(g4.genus == 4);
    CHECK(canonical_ideal_component(g4, 2).basis.size() == 3);

    ProblemInput g5 = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}, 34));
    REQUIRE(g5.genus == 5);
    CHECK(canonical_ideal_component(g5, 2).basis.size() == 6);
}

TEST_CASE("plane quartic: I2 = I3 = 0 and I4 recovers the Klein quartic") {
    ProblemInput in = expand_plane_quartic(klein_spec(40));
    CanonicalIdealComponent i2 = canonical_ideal_component(in, 2);
    CHECK(i2.basis.empty());
    CHECK(detect_hyperelliptic(3, 0) == CurveClass::Nonhyperelliptic);

    CanonicalModel model = nonhyperelliptic_model(in);
    // I2 and I3 are empty, I4 is one-dimensional
    REQUIRE(model.generators.size() == 1);
    const HomForm& quartic = model.generators[0];
    CHECK(quartic.degree() == 4);
    // proportional to the homogenized Klein relation x2^3 x3 + x1 x3^3 + x1^3 x2
    HomForm expected(3, 4);
    expected.add_term({0, 3, 1}, Rational(1));
    expected.add_term({1, 0, 3}, Rational(1));
    expected.add_term({3, 1, 0}, Rational(1));
    CHECK(quartic == expected.primitive_normalized());
    // and it vanishes on the input series
    CHECK(quartic.evaluate(in.forms).is_zero_to_precision());
}

TEST_CASE("nonhyperelliptic_model refuses hyperelliptic input") {
    ProblemInput in = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 1}, 24));
    CHECK_THROWS_AS(nonhyperelliptic_model(in), InconsistentInput);
}

TEST_CASE("insufficient precision is detected") {
    ProblemInput in = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 1}, 24));
    ProblemInput weak = in;
    weak.precision = 1;
    for (auto& w : weak.forms) w = w.truncated(1);
    // B [K:Q] = 6 <= d(2g-2) = 8 for d = 2
    CHECK_THROWS_AS(canonical_ideal_component(weak, 2), InsufficientPrecision);
}

TEST_CASE("basis scrambling equivariance of I_2") {
    ProblemInput in = expand_hyperelliptic(hyp_spec({-1, 0, 0, 0, 0, 0, 0, 0, 1}, 24));
    Matrix<Rational> m = qmatrix({{1, 2, 0}, {1, 1, 1}, {0, 3, 1}});
    REQUIRE(rank(m) == 3);
    ProblemInput scr = scramble_basis(in, m);
    CanonicalIdealComponent before = canonical_ideal_component(in, 2);
    CanonicalIdealComponent after = canonical_ideal_component(scr, 2);
    REQUIRE(before.basis.size() == after.basis.size());
    // substituted forms evaluate to zero on the scrambled series
    for (const auto& f : after.basis)
        CHECK(f.evaluate(scr.forms).is_zero_to_precision());
    // the pullback of the scrambled relation under M kills the original series:
    // F(M x) vanishes on originals iff F vanishes on scrambled
    for (const auto& f : after.basis)
        CHECK(f.substituted(m).evaluate(in.forms).is_zero_to_precision());
}
