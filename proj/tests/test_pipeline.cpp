#include "doctest.h"
#include "helpers.hpp"

#include "recurve/errors.hpp"
#include "recurve/oracle.hpp"
#include "recurve/pipeline.hpp"

using namespace recurve;
using namespace rt;

TEST_CASE("genus-2 round trip: y^2 = x^5 + x + 3 at sqrt(2)") {
    OracleSpec spec;
    spec.kind = OracleSpec::Kind::HyperellipticPoly;
    spec.f = qpoly({3, 1, 0, 0, 0, 1});
    spec.x0_field = make_number_field(qpoly({-2, 0, 1}));
    spec.x0_coords = {Rational(0), Rational(1)};
    spec.precision = 86;
    ProblemInput in = expand_hyperelliptic(spec);
    REQUIRE(in.genus == 2);
    REQUIRE(in.field->degree() == 4);

    RunReport rep = reconstruct(in);
    CHECK(rep.model.branch == CurveModel::Branch::HyperellipticPoly);
    REQUIRE(rep.model.weierstrass.has_value());
    const auto& f = rep.model.weierstrass->f;
    CHECK((f.degree() == 5 || f.degree() == 6));
    CHECK(poly_gcd(f, f.derivative()).degree() == 0);
    for (const auto& c : rep.conformance) CHECK(c.pass);

    VerifyOutcome v = verify_model(in, rep.model);
    CHECK(v.pass);
}

TEST_CASE("genus-3 pointless-conic round trip") {
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
    spec.precision = 105;
    ProblemInput in = expand_conic_model(spec);
    REQUIRE(in.genus == 3);

    RunReport rep = reconstruct(in);
    CHECK(rep.model.branch == CurveModel::Branch::HyperellipticConic);
    REQUIRE(rep.model.conic.has_value());
    CHECK(conic_is_smooth(rep.model.conic->q));
    for (const auto& c : rep.conformance) {
        CHECK(c.pass);
        if (!c.pass)
            MESSAGE(c.label, ": ", c.detail);
    }
    VerifyOutcome v = verify_model(in, rep.model);
    for (const auto& w : v.failures) MESSAGE(w);
    CHECK(v.pass);
    // point image satisfies the recovered conic
    {
        const auto& pc = rep.point_image.coords;
        REQUIRE(pc.size() == 3);
        FieldElement acc = FieldElement::zero(in.field);
        Matrix<Rational> gq = gram_matrix(rep.model.conic->q);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                acc = acc + pc[static_cast<size_t>(i)] * pc[static_cast<size_t>(j)] *
                          FieldElement::from_rational(in.field, gq.at(i, j));
        CHECK(acc.is_zero());
    }
}
