#include "doctest.h"
#include "helpers.hpp"

#include "recurve/errors.hpp"
#include "recurve/tower.hpp"

using namespace recurve;
using namespace rt;

TEST_CASE("rational basics and serialization") {
    Rational a(3, 6);
    CHECK(a.str() == "1/2");
    CHECK(Rational::parse("-4/2").str() == "-2");
    CHECK(Rational::parse("7").str() == "7");
    CHECK((Rational(1, 3) + Rational(1, 6)).str() == "1/2");
    CHECK((Rational(2, 3) * Rational(3, 2)).is_one());
    CHECK(Rational(5, -1).str() == "-5");
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    Rational s;
    CHECK(rational_sqrt(Rational(49, 4), s));
    CHECK(s == Rational(7, 2));
    CHECK_FALSE(rational_sqrt(Rational(2), s));
}

TEST_CASE("poly gcd examples") {
    // (x^2-1, x-1) -> x-1
    CHECK(poly_gcd(qpoly({-1, 0, 1}), qpoly({-1, 1})) == qpoly({-1, 1}));
    // coprime
    CHECK(poly_gcd(qpoly({1, 0, 1}), qpoly({-1, 0, 1})) == qpoly({1}));
    // ((x-1)^2(x+3), (x-1)(x+3)^2) -> (x-1)(x+3)
    UniPoly<Rational> a = qpoly({-1, 1}) * qpoly({-1, 1}) * qpoly({3, 1});
    UniPoly<Rational> b = qpoly({-1, 1}) * qpoly({3, 1}) * qpoly({3, 1});
    UniPoly<Rational> g = poly_gcd(a, b);
    CHECK(g == qpoly({-1, 1}) * qpoly({3, 1}));
    // gcd divides both exactly
    CHECK(exact_div(a, g) * g == a);
    CHECK(exact_div(b, g) * g == b);
}

TEST_CASE("squarefree decomposition examples") {
    // x^2 - 1 already square-free
    auto d1 = squarefree_decompose(qpoly({-1, 0, 1}));
    REQUIRE(d1.size() == 1);
    CHECK(d1[0].first == qpoly({-1, 0, 1}));
    CHECK(d1[0].second == 1);

    // (x-1)^2 (x+2) -> [(x+2,1), (x-1,2)]
    UniPoly<Rational> p = qpoly({-1, 1}) * qpoly({-1, 1}) * qpoly({2, 1});
    auto d2 = squarefree_decompose(p);
    REQUIRE(d2.size() == 2);
    CHECK(d2[0].first == qpoly({2, 1}));
    CHECK(d2[0].second == 1);
    CHECK(d2[1].first == qpoly({-1, 1}));
    CHECK(d2[1].second == 2);

    // x^3 -> [(x,3)]
    auto d3 = squarefree_decompose(qpoly({0, 0, 0, 1}));
    REQUIRE(d3.size() == 1);
    CHECK(d3[0].first == qpoly({0, 1}));
    CHECK(d3[0].second == 3);

    CHECK_THROWS_AS(squarefree_decompose(UniPoly<Rational>()), Error);
}

TEST_CASE("squarefree reassembly and pairwise coprimality (randomized)") {
    std::mt19937_64 rng(42);
    int done = 0;
    while (done < 1000) {
        UniPoly<Rational> f = rand_qpoly(rng, 4, 3);
        if (f.is_zero() || f.degree() < 1) continue;
        // Sprinkle in forced square factors.
        UniPoly<Rational> g = rand_qpoly(rng, 2, 2);
        if (!g.is_zero() && g.degree() >= 1) f = f * g * g;
        auto dec = squarefree_decompose(f);
        UniPoly<Rational> prod = UniPoly<Rational>::constant(Rational(1));
        for (const auto& [p, m] : dec) {
            for (int i = 0; i < m; ++i) prod = prod * p;
            CHECK(poly_gcd(p, p.derivative()).degree() == 0);
        }
        // product equals input up to the leading scalar
        CHECK(prod.monic() == f.monic());
        for (size_t i = 0; i < dec.size(); ++i)
            for (size_t j = i + 1; j < dec.size(); ++j)
                CHECK(poly_gcd(dec[i].first, dec[j].first).degree() == 0);
        ++done;
    }
}

TEST_CASE("poly gcd divisibility (randomized)") {
    std::mt19937_64 rng(43);
    int done = 0;
    while (done < 1000) {
        UniPoly<Rational> a = rand_qpoly(rng, 5, 4);
        UniPoly<Rational> b = rand_qpoly(rng, 5, 4);
        if (a.is_zero() && b.is_zero()) continue;
        UniPoly<Rational> g = poly_gcd(a, b);
        if (!a.is_zero()) CHECK(divrem(a, g).second.is_zero());
        if (!b.is_zero()) CHECK(divrem(b, g).second.is_zero());
        ++done;
    }
}

TEST_CASE("resultant examples") {
    Rational r1 = resultant(qpoly({-1, 1}), qpoly({-2, 1}));
    CHECK((r1 == Rational(1) || r1 == Rational(-1)));
    CHECK(resultant(qpoly({-1, 0, 1}), qpoly({-1, 1})).is_zero());
    CHECK(resultant(qpoly({1, 0, 1}), qpoly({-2, 0, 1})) == Rational(9));
}

TEST_CASE("kernel examples") {
    CHECK(kernel(qmatrix({{1, 0}, {0, 1}})).empty());
    auto k1 = kernel(qmatrix({{1, 1}}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0][0] * Rational(-1) == k1[0][1]);
    // kernel vectors satisfy Mv = 0 and count = ncols - rank (randomized)
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 1000; ++iter) {
        std::uniform_int_distribution<int> dim(1, 6);
        int nr = dim(rng), nc = dim(rng);
        Matrix<Rational> m = Matrix<Rational>::zero(nr, nc, Rational(0));
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m.at(i, j) = rand_rational(rng, 4);
        auto ker = kernel(m);
        CHECK(static_cast<int>(ker.size()) == nc - rank(m));
        for (const auto& v : ker) {
            for (int i = 0; i < nr; ++i) {
                Rational acc(0);
                for (int j = 0; j < nc; ++j) acc += m.at(i, j) * v[static_cast<size_t>(j)];
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("solve examples") {
    auto s1 = solve(qmatrix({{1, 0}, {0, 1}}), {Rational(4), Rational(-5)});
    REQUIRE(s1.has_value());
    CHECK((*s1)[0] == Rational(4));
    CHECK((*s1)[1] == Rational(-5));

    auto s2 = solve(qmatrix({{1, 1}, {2, 2}}), {Rational(1), Rational(3)});
    CHECK_FALSE(s2.has_value());

    auto s3 = solve(qmatrix({{1, 1}, {0, 1}}), {Rational(3), Rational(1)});
    REQUIRE(s3.has_value());
    CHECK((*s3)[0] == Rational(2));
    CHECK((*s3)[1] == Rational(1));
}

TEST_CASE("number field arithmetic and inverses") {
    NumberField f = make_number_field(qpoly({-2, 0, 1})); // Q(sqrt 2)
    FieldElement r2 = FieldElement::generator(f);
    CHECK((r2 * r2) == FieldElement::from_rational(f, Rational(2)));
    FieldElement x = r2 + FieldElement::one(f);
    FieldElement xi = x.inverse();
    CHECK((x * xi).is_one());
    // (1+sqrt2)^{-1} = sqrt2 - 1
    CHECK(xi == r2 - FieldElement::one(f));

    std::mt19937_64 rng(45);
    NumberField g = make_number_field(qpoly({-2, 0, 0, 0, 0, 0, 1})); // x^6-2
    for (int i = 0; i < 200; ++i) {
        FieldElement a = rand_elem(rng, g), b = rand_elem(rng, g), c = rand_elem(rng, g);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
}

TEST_CASE("min_poly square-freeness is checked") {
    CHECK_THROWS_AS(make_number_field(qpoly({1, 2, 1})), ReducibleExtension); // (x+1)^2
}

TEST_CASE("trace over etale algebra") {
    // ell = 6: trace of 1 is the rank
    NumberField k = make_number_field(qpoly({-2, 0, 0, 0, 0, 0, 1}));
    EtaleAlgebra a6 = tensor_with_self(k);
    CHECK(trace_to_base(AlgebraElement::one(a6)) == FieldElement::from_rational(k, Rational(6)));

    // ext s^2 - 2 over Q: trace(s) = 0, trace(s^2) = 4
    NumberField q = rational_field();
    std::vector<FieldElement> c{FieldElement::from_rational(q, Rational(-2)),
                                FieldElement::zero(q), FieldElement::one(q)};
    EtaleAlgebra a2 = make_etale_algebra(q, UniPoly<FieldElement>(std::move(c)));
    AlgebraElement s = AlgebraElement::second_generator(a2);
    CHECK(trace_to_base(s).is_zero());
    CHECK(trace_to_base(s * s) == FieldElement::from_rational(q, Rational(4)));
}

TEST_CASE("trace linearity (randomized)") {
    std::mt19937_64 rng(46);
    NumberField k = make_number_field(qpoly({-2, 0, 0, 1})); // Q(2^{1/3})
    EtaleAlgebra a = tensor_with_self(k);
    auto rand_alg = [&](std::mt19937_64& r) {
        std::vector<FieldElement> c;
        for (int i = 0; i < a->rank(); ++i) c.push_back(rand_elem(r, k, 4));
        return AlgebraElement(a, UniPoly<FieldElement>(std::move(c)));
    };
    for (int i = 0; i < 1000; ++i) {
        AlgebraElement x = rand_alg(rng), y = rand_alg(rng);
        FieldElement ca = rand_elem(rng, k, 3), cb = rand_elem(rng, k, 3);
        AlgebraElement lhs = AlgebraElement::from_base(a, ca) * x + AlgebraElement::from_base(a, cb) * y;
        CHECK(trace_to_base(lhs) == ca * trace_to_base(x) + cb * trace_to_base(y));
    }
}

TEST_CASE("flatten_tower: quadratic over cubic gives degree six") {
    NumberField base = make_number_field(qpoly({-2, 0, 0, 1})); // Q(2^{1/3})
    // ext: y^2 - 2
    std::vector<FieldElement> c{FieldElement::from_rational(base, Rational(-2)),
                                FieldElement::zero(base), FieldElement::one(base)};
    auto res = flatten_tower(base, UniPoly<FieldElement>(std::move(c)));
    CHECK(res.field->degree() == 6);
    // the images satisfy both minimal polynomials
    FieldElement u = res.base_gen_image, v = res.root_image;
    CHECK((u * u * u) == FieldElement::from_rational(res.field, Rational(2)));
    CHECK((v * v) == FieldElement::from_rational(res.field, Rational(2)));
}

TEST_CASE("flatten_tower: quadratic over Q") {
    NumberField q = rational_field();
    std::vector<FieldElement> c{FieldElement::from_rational(q, Rational(-2)),
                                FieldElement::zero(q), FieldElement::one(q)};
    auto res = flatten_tower(q, UniPoly<FieldElement>(std::move(c)));
    CHECK(res.field->degree() == 2);
    CHECK((res.root_image * res.root_image) == FieldElement::from_rational(res.field, Rational(2)));
}

TEST_CASE("flatten_tower: split quadratic is rejected") {
    NumberField base = make_number_field(qpoly({-2, 0, 1})); // Q(sqrt 2)
    std::vector<FieldElement> c{FieldElement::from_rational(base, Rational(-2)),
                                FieldElement::zero(base), FieldElement::one(base)};
    CHECK_THROWS_AS(flatten_tower(base, UniPoly<FieldElement>(std::move(c))), ReducibleExtension);
}

TEST_CASE("field matrix elimination") {
    NumberField f = make_number_field(qpoly({-2, 0, 1}));
    FieldElement r2 = FieldElement::generator(f);
    FieldElement one = FieldElement::one(f);
    Matrix<FieldElement> m = Matrix<FieldElement>::zero(2, 3, one);
    m.at(0, 0) = one; m.at(0, 1) = r2; m.at(0, 2) = one + r2;
    m.at(1, 0) = r2;  m.at(1, 1) = one + one; m.at(1, 2) = r2 + one + one;
    // row2 = sqrt2 * row1, so rank 1 and a 2-dim kernel
    CHECK(rank(m) == 1);
    auto ker = kernel(m, one);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        for (int i = 0; i < 2; ++i) {
            FieldElement acc = FieldElement::zero(f);
            for (int j = 0; j < 3; ++j) acc = acc + m.at(i, j) * v[static_cast<size_t>(j)];
            CHECK(acc.is_zero());
        }
    }
}
