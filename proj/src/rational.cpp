#include "recurve/rational.hpp"

#include <ostream>

#include "recurve/errors.hpp"

namespace recurve {

Rational::Rational(long n, long d) : v_(static_cast<signed long>(n), static_cast<signed long>(d)) {
    if (d == 0) throw Error("Rational: zero denominator");
    v_.canonicalize();
}

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational literal: '" + s + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in rational literal: '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const {
    return v_.get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw Error("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.v_.get_str();
}

mpz_class int_gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

mpz_class int_lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bool rational_sqrt(const Rational& x, Rational& out) {
    if (x.sign() < 0) return false;
    mpz_class n = x.num(), d = x.den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rational(mpq_class(rn, rd));
    return true;
}

} // namespace recurve
