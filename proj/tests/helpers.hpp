#ifndef RECURVE_TEST_HELPERS_HPP
#define RECURVE_TEST_HELPERS_HPP

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "recurve/algebra.hpp"
#include "recurve/field.hpp"
#include "recurve/matrix.hpp"
#include "recurve/poly.hpp"
#include "recurve/rational.hpp"
#include "recurve/series.hpp"

namespace rt {

using namespace recurve;

inline UniPoly<Rational> qpoly(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return UniPoly<Rational>(std::move(v));
}

inline UniPoly<Rational> qpoly_str(std::initializer_list<const char*> cs) {
    std::vector<Rational> v;
    for (const char* c : cs) v.push_back(Rational::parse(c));
    return UniPoly<Rational>(std::move(v));
}

inline Series<Rational> qseries(int off, int abs, int twist, std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return Series<Rational>(off, abs, twist, std::move(v), Rational(0));
}

inline Matrix<Rational> qmatrix(std::initializer_list<std::initializer_list<long>> rows) {
    int nr = static_cast<int>(rows.size());
    int nc = nr ? static_cast<int>(rows.begin()->size()) : 0;
    Matrix<Rational> m = Matrix<Rational>::zero(nr, nc, Rational(0));
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (long e : r) m.at(i, j++) = Rational(e);
        ++i;
    }
    return m;
}

inline Rational rand_rational(std::mt19937_64& rng, long max_abs = 10) {
    std::uniform_int_distribution<long> num(-max_abs, max_abs);
    std::uniform_int_distribution<long> den(1, max_abs);
    return Rational(num(rng), den(rng));
}

inline UniPoly<Rational> rand_qpoly(std::mt19937_64& rng, int max_deg, long max_abs = 5) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    int d = dd(rng);
    std::vector<Rational> v;
    for (int i = 0; i <= d; ++i) v.push_back(rand_rational(rng, max_abs));
    return UniPoly<Rational>(std::move(v));
}

inline FieldElement rand_elem(std::mt19937_64& rng, const NumberField& f, long max_abs = 5) {
    std::vector<Rational> v;
    for (int i = 0; i < f->degree(); ++i) v.push_back(rand_rational(rng, max_abs));
    return FieldElement(f, std::move(v));
}

inline Series<Rational> rand_qseries(std::mt19937_64& rng, int twist = 0) {
    std::uniform_int_distribution<int> offd(-3, 3), lend(1, 8);
    int off = offd(rng);
    int len = lend(rng);
    std::vector<Rational> v;
    for (int i = 0; i < len; ++i) v.push_back(rand_rational(rng, 6));
    return Series<Rational>(off, off + len, twist, std::move(v), Rational(0));
}

} // namespace rt

#endif
