#include "doctest.h"
#include "helpers.hpp"

#include "recurve/conic.hpp"
#include "recurve/errors.hpp"

using namespace recurve;
using namespace rt;

namespace {

HomForm ternary(std::initializer_list<std::pair<HomForm::Exps, long>> terms, int deg) {
    HomForm f(3, deg);
    for (const auto& [e, c] : terms) f.add_term(e, Rational(c));
    return f;
}

HomForm sum_of_squares() {
    return ternary({{{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{0, 0, 2}, 1}}, 2);
}

HomForm veronese_conic() { // b^2 - ac
    return ternary({{{0, 2, 0}, 1}, {{1, 0, 1}, -1}}, 2);
}

} // namespace

TEST_CASE("gram matrix and smoothness") {
    CHECK(conic_is_smooth(sum_of_squares()));
    CHECK(conic_is_smooth(veronese_conic()));
    HomForm rank1 = ternary({{{2, 0, 0}, 1}}, 2);
    CHECK_FALSE(conic_is_smooth(rank1));
    Matrix<Rational> g = gram_matrix(veronese_conic());
    CHECK(g.at(0, 2) == Rational(-1, 2));
    CHECK(g.at(1, 1) == Rational(1));
}

TEST_CASE("field_sqrt in quadratic fields") {
    NumberField f = make_number_field(qpoly({-2, 0, 1})); // Q(sqrt2)
    FieldElement r2 = FieldElement::generator(f);
    // sqrt(2) itself
    auto s = field_sqrt(FieldElement::from_rational(f, Rational(2)));
    REQUIRE(s.has_value());
    CHECK((*s) * (*s) == FieldElement::from_rational(f, Rational(2)));
    // 3 + 2 sqrt2 = (1 + sqrt2)^2
    auto t = field_sqrt(FieldElement(f, {Rational(3), Rational(2)}));
    REQUIRE(t.has_value());
    CHECK((*t) * (*t) == FieldElement(f, {Rational(3), Rational(2)}));
    // 1 + sqrt2 is not a square
    auto u = field_sqrt(r2 + FieldElement::one(f));
    CHECK_FALSE(u.has_value());
    // rationals
    auto v = field_sqrt(FieldElement::from_rational(rational_field(), Rational(49, 9)));
    REQUIRE(v.has_value());
    Rational vr;
    v->as_rational(vr);
    CHECK(vr == Rational(7, 3));
}

TEST_CASE("conjugation of quadratic fields") {
    NumberField f = make_number_field(qpoly({-2, 0, 1}));
    FieldElement x(f, {Rational(3), Rational(5)});
    FieldElement xc = conjugate_quadratic(x);
    CHECK(xc == FieldElement(f, {Rational(3), Rational(-5)}));
    // trace and norm are rational
    CHECK((x + xc) == FieldElement::from_rational(f, Rational(6)));
    Rational n;
    CHECK((x * xc).as_rational(n));
    CHECK(n == Rational(9 - 50));
}

TEST_CASE("squarefree part of integers") {
    CHECK(squarefree_part(mpz_class(4)) == 1);
    CHECK(squarefree_part(mpz_class(-4)) == -1);
    CHECK(squarefree_part(mpz_class(12)) == 3);
    CHECK(squarefree_part(mpz_class(49)) == 1);
    CHECK(squarefree_part(mpz_class(30)) == 30);
}

TEST_CASE("points on conics via line intersections") {
    // pointless over Q: lands in Q(i)
    ConicPoint p1 = find_point_via_lines(sum_of_squares());
    CHECK(p1.d == -1);
    CHECK(p1.e->degree() == 2);
    // b^2 - ac has the rational point (1:0:0)
    ConicPoint p2 = find_point_via_lines(veronese_conic());
    CHECK(p2.d == 1);
    CHECK(p2.e->degree() == 1);
    // on-conic check for p2
    Rational a, b, c;
    p2.coords[0].as_rational(a);
    p2.coords[1].as_rational(b);
    p2.coords[2].as_rational(c);
    CHECK((b * b - a * c).is_zero());
}

TEST_CASE("conic parametrization hits the conic and inverts") {
    for (const HomForm& q : {sum_of_squares(), veronese_conic(),
                             ternary({{{1, 1, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}}, 2)}) {
        ConicPoint pt = find_point_via_lines(q);
        ConicParam par = parametrize_conic(q, pt);
        const NumberField& e = par.e;
        // evaluate phi at a few parameter values and check Q(phi) = 0
        for (long sval : {0L, 1L, 2L, -3L}) {
            FieldElement s = FieldElement::from_rational(e, Rational(sval));
            std::vector<FieldElement> p;
            for (int i = 0; i < 3; ++i) p.push_back(par.phi[static_cast<size_t>(i)].affine.eval(s));
            FieldElement acc = FieldElement::zero(e);
            Matrix<Rational> gq = gram_matrix(q);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    acc = acc + p[static_cast<size_t>(i)] * p[static_cast<size_t>(j)] *
                              FieldElement::from_rational(e, gq.at(i, j));
            CHECK(acc.is_zero());
            // projection inverts: proj0(p)/proj1(p) = s
            FieldElement n = FieldElement::zero(e), d = FieldElement::zero(e);
            for (int i = 0; i < 3; ++i) {
                n = n + par.proj[0][static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
                d = d + par.proj[1][static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
            }
            if (!d.is_zero()) CHECK(n == s * d);
        }
    }
}

TEST_CASE("rational function square root") {
    NumberField q = rational_field();
    auto P = [&](std::initializer_list<long> cs) {
        std::vector<FieldElement> v;
        for (long c : cs) v.push_back(FieldElement::from_rational(q, Rational(c)));
        return UniPoly<FieldElement>(std::move(v));
    };
    // (x^2 (x+1)^2) / 1
    UniPoly<FieldElement> num = P({0, 0, 1}) * P({1, 2, 1});
    auto r = rational_function_sqrt(num, P({1}));
    REQUIRE(r.has_value());
    CHECK(r->num * r->num == num * r->den * r->den);
    // x / 1 is not a square
    CHECK_FALSE(rational_function_sqrt(P({0, 1}), P({1})).has_value());
    // 4 x^2 / 9: sqrt with unit handling
    auto r2 = rational_function_sqrt(P({0, 0, 4}), P({9}));
    REQUIRE(r2.has_value());
}

TEST_CASE("conic diagonalization examples") {
    // a^2+b^2+c^2 is already diagonal with unit entries
    auto d1 = diagonalize_conic(sum_of_squares());
    CHECK(d1.q_diag == sum_of_squares());
    CHECK(d1.change == Matrix<Rational>::identity(3, Rational(0)));

    // b^2 - ac diagonalizes with square-free integer entries, signature (+,+,-)
    auto d2 = diagonalize_conic(veronese_conic());
    int pos = 0, neg = 0;
    for (const auto& [e, c] : d2.q_diag.terms()) {
        bool is_square = false;
        for (int i = 0; i < 3; ++i) is_square |= (e[static_cast<size_t>(i)] == 2);
        CHECK(is_square);
        CHECK(c.is_integer());
        CHECK(squarefree_part(c.num()) == c.num());
        (c.sign() > 0 ? pos : neg)++;
    }
    CHECK(pos == 2);
    CHECK(neg == 1);
    CHECK(veronese_conic().substituted(d2.change) == d2.q_diag);

    // ab+bc+ca: indefinite with mixed signs
    HomForm m = ternary({{{1, 1, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}}, 2);
    auto d3 = diagonalize_conic(m);
    int negs = 0;
    for (const auto& [e, c] : d3.q_diag.terms()) negs += (c.sign() < 0);
    CHECK(negs >= 1);
    CHECK(m.substituted(d3.change) == d3.q_diag);

    CHECK_THROWS_AS(diagonalize_conic(ternary({{{2, 0, 0}, 1}}, 2)), SingularConic);
}
