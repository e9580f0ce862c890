#include "doctest.h"
#include "helpers.hpp"

#include "recurve/errors.hpp"

using namespace recurve;
using namespace rt;

TEST_CASE("series multiplication and precision composition") {
    // (1+q+O(q^3)) * (1-q+O(q^3)) = 1 - q^2 + O(q^3)
    auto a = qseries(0, 3, 0, {1, 1, 0});
    auto b = qseries(0, 3, 0, {1, -1, 0});
    auto p = a * b;
    CHECK(p.abs_prec() == 3);
    CHECK(p.coeff(0).is_one());
    CHECK(p.coeff(1).is_zero());
    CHECK(p.coeff(2) == Rational(-1));

    // (q^-1 + O(q^2)) * (q + O(q^4)): precision min(2+1, 4-1) = 3
    auto c = qseries(-1, 2, 0, {1, 0, 0});
    auto d = qseries(1, 4, 0, {1, 0, 0});
    auto e = c * d;
    CHECK(e.abs_prec() == 3);
    CHECK(e.valuation().value() == 0);
    CHECK(e.coeff(0).is_one());

    // twist bookkeeping: dq-series times d/dq-series has twist 0
    auto f = qseries(0, 5, 1, {2, 1, 0, 0, 0});
    auto g = qseries(0, 5, -1, {3, 0, 0, 0, 0});
    CHECK((f * g).twist() == 0);
}

TEST_CASE("series inversion") {
    // 1+q+O(q^4) -> 1-q+q^2-q^3+O(q^4)
    auto a = qseries(0, 4, 0, {1, 1, 0, 0});
    auto ai = a.inverted();
    CHECK(ai.abs_prec() == 4);
    CHECK(ai.coeff(0) == Rational(1));
    CHECK(ai.coeff(1) == Rational(-1));
    CHECK(ai.coeff(2) == Rational(1));
    CHECK(ai.coeff(3) == Rational(-1));

    // 2q+O(q^5) -> (1/2) q^-1 + O(q^3): relative precision 4 preserved
    auto b = qseries(1, 5, 0, {2, 0, 0, 0});
    auto bi = b.inverted();
    CHECK(bi.val_offset() == -1);
    CHECK(bi.abs_prec() == 3);
    CHECK(bi.coeff(-1) == Rational(1, 2));

    // twist negation: q + O(q^3) with twist +1 inverts to twist -1
    auto c = qseries(1, 3, 1, {1, 0});
    auto ci = c.inverted();
    CHECK(ci.twist() == -1);
    CHECK(ci.val_offset() == -1);
    CHECK(ci.abs_prec() == 1);

    CHECK_THROWS_AS(Series<Rational>::zero_to_prec(5, 0, Rational(0)).inverted(),
                    NonUnitLeadingCoefficient);
}

TEST_CASE("series derivative") {
    // 1+q^2+O(q^5) -> 2q+O(q^4) as dq-series
    auto a = qseries(0, 5, 0, {1, 0, 1, 0, 0});
    auto da = a.derivative();
    CHECK(da.twist() == 1);
    CHECK(da.abs_prec() == 4);
    CHECK(da.valuation().value() == 1);
    CHECK(da.coeff(1) == Rational(2));

    // q^-1+O(q^3) -> -q^-2+O(q^2)
    auto b = qseries(-1, 3, 0, {1, 0, 0, 0});
    auto db = b.derivative();
    CHECK(db.valuation().value() == -2);
    CHECK(db.abs_prec() == 2);
    CHECK(db.coeff(-2) == Rational(-1));

    // constant 1+O(q^5) -> 0+O(q^4)
    auto c = qseries(0, 5, 0, {1, 0, 0, 0, 0});
    auto dc = c.derivative();
    CHECK(dc.is_zero_to_precision());
    CHECK(dc.abs_prec() == 4);

    CHECK_THROWS_AS(qseries(0, 3, 1, {1, 0, 0}).derivative(), Error);
}

TEST_CASE("series valuation") {
    auto a = qseries(3, 9, 0, {1, 1, 0, 0, 0, 0});
    CHECK(a.valuation().value() == 3);
    auto z = Series<Rational>::zero_to_prec(7, 0, Rational(0));
    CHECK_FALSE(z.valuation().has_value());
}

TEST_CASE("is_zero_as_section") {
    auto z = Series<Rational>::zero_to_prec(20, 0, Rational(0));
    CHECK(is_zero_as_section(z, 19));
    auto nz = qseries(10, 20, 0, {1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    CHECK_FALSE(is_zero_as_section(nz, 19));
    CHECK_THROWS_AS(is_zero_as_section(Series<Rational>::zero_to_prec(5, 0, Rational(0)), 19),
                    InsufficientPrecision);
}

TEST_CASE("ring axioms to precision (randomized)") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 1000; ++i) {
        auto a = rand_qseries(rng), b = rand_qseries(rng), c = rand_qseries(rng);
        auto lhs = (a * b) * c;
        auto rhs = a * (b * c);
        int prec = std::min(lhs.abs_prec(), rhs.abs_prec());
        CHECK(lhs.truncated(prec) == rhs.truncated(prec));
        auto l2 = a * (b + c);
        auto r2 = a * b + a * c;
        int p2 = std::min(l2.abs_prec(), r2.abs_prec());
        CHECK(l2.truncated(p2) == r2.truncated(p2));
    }
}

TEST_CASE("Leibniz rule (randomized)") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 1000; ++i) {
        auto a = rand_qseries(rng), b = rand_qseries(rng);
        auto lhs = (a * b).derivative();
        auto rhs = a.derivative() * b + a * b.derivative();
        int prec = std::min(lhs.abs_prec(), rhs.abs_prec());
        CHECK(lhs.truncated(prec) == rhs.truncated(prec));
    }
}

TEST_CASE("inversion round trip and residual (randomized)") {
    std::mt19937_64 rng(9);
    int done = 0;
    while (done < 500) {
        auto a = rand_qseries(rng);
        if (a.is_zero_to_precision() || a.coeff(a.val_offset()).is_zero()) continue;
        auto ai = a.inverted();
        auto back = ai.inverted();
        int prec = std::min(a.abs_prec(), back.abs_prec());
        CHECK(a.truncated(prec) == back.truncated(prec));
        // a * a^{-1} - 1 vanishes to relative precision
        auto prod = a * ai;
        auto one = Series<Rational>::constant(Rational(1), prod.abs_prec());
        CHECK((prod - one).is_zero_to_precision());
        ++done;
    }
}

TEST_CASE("precision monotonicity under harder truncation (fuzz)") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 500; ++i) {
        auto a = rand_qseries(rng), b = rand_qseries(rng);
        auto full = a * b;
        auto harder = a.truncated(a.abs_prec() - 1) * b;
        CHECK(harder.abs_prec() <= full.abs_prec());
        int prec = std::min(harder.abs_prec(), full.abs_prec());
        CHECK(harder.truncated(prec) == full.truncated(prec));
    }
}

TEST_CASE("valuation staircase basic examples") {
    // already staircase
    std::vector<Series<Rational>> rows{qseries(0, 5, 1, {1, 0, 0, 0, 0}),
                                       qseries(1, 5, 1, {1, 0, 0, 0})};
    auto st = valuation_staircase(rows);
    CHECK(st.ordered[0].val_offset() == 0);
    CHECK(st.ordered[1].val_offset() == 1);
    CHECK(st.change == Matrix<Rational>::identity(2, Rational(0)));

    // rows (1+q+O(q^5), 1+2q+O(q^5)) -> valuations (0,1), M = [[1,0],[-1,1]]
    std::vector<Series<Rational>> rows2{qseries(0, 5, 1, {1, 1, 0, 0, 0}),
                                        qseries(0, 5, 1, {1, 2, 0, 0, 0})};
    auto st2 = valuation_staircase(rows2);
    CHECK(st2.ordered[0].val_offset() == 0);
    CHECK(st2.ordered[1].val_offset() == 1);
    // verify ordered = M * input, coefficient for coefficient
    for (int i = 0; i < 2; ++i) {
        auto lin = rows2[0].scaled(st2.change.at(i, 0)) + rows2[1].scaled(st2.change.at(i, 1));
        CHECK(lin == st2.ordered[static_cast<size_t>(i)]);
    }
    CHECK(st2.change.at(1, 0) == Rational(-1));
    CHECK(st2.change.at(1, 1) == Rational(1));

    // dependent rows
    std::vector<Series<Rational>> rows3{qseries(0, 5, 1, {1, 1, 0, 0, 0}),
                                        qseries(0, 5, 1, {2, 2, 0, 0, 0})};
    CHECK_THROWS_AS(valuation_staircase(rows3), RankDeficient);
}

TEST_CASE("staircase change of basis is invertible and exact (randomized)") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 200) {
        // build 3 independent series of window 8
        std::vector<Series<Rational>> rows;
        for (int i = 0; i < 3; ++i) {
            std::vector<Rational> v;
            for (int k = 0; k < 8; ++k) v.push_back(rand_rational(rng, 5));
            rows.emplace_back(0, 8, 1, std::move(v), Rational(0));
        }
        try {
            auto st = valuation_staircase(rows);
            for (int i = 0; i < 3; ++i) {
                Series<Rational> lin = Series<Rational>::zero_to_prec(8, 1, Rational(0));
                for (int j = 0; j < 3; ++j) lin = lin + rows[static_cast<size_t>(j)].scaled(st.change.at(i, j));
                CHECK(lin == st.ordered[static_cast<size_t>(i)]);
            }
            for (size_t i = 1; i < st.ordered.size(); ++i)
                CHECK(st.ordered[i].val_offset() > st.ordered[i - 1].val_offset());
            // invertibility
            CHECK(rank(st.change) == 3);
            ++done;
        } catch (const RankDeficient&) {
            // randomly dependent rows are fine to skip
        }
    }
}

TEST_CASE("project_coefficients over the etale algebra") {
    NumberField q = rational_field();
    std::vector<FieldElement> cpoly{FieldElement::from_rational(q, Rational(-2)),
                                    FieldElement::zero(q), FieldElement::one(q)};
    EtaleAlgebra a = make_etale_algebra(q, UniPoly<FieldElement>(std::move(cpoly)));
    AlgebraElement s = AlgebraElement::second_generator(a);
    AlgebraElement zero = AlgebraElement::zero(a);

    // a = s*q + O(q^2) -> components (0+O(q^2), q+O(q^2))
    std::vector<AlgebraElement> coeffs{zero, s};
    Series<AlgebraElement> ser(0, 2, 0, std::move(coeffs), zero);
    auto comps = project_coefficients(ser);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].is_zero_to_precision());
    CHECK(comps[0].abs_prec() == 2);
    CHECK(comps[1].valuation().value() == 1);
    CHECK(comps[1].coeff(1).is_one());
}
