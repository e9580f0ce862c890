#include "recurve/field.hpp"

#include <sstream>

#include "recurve/errors.hpp"

namespace recurve {

NumberFieldData::NumberFieldData(UniPoly<Rational> min_poly) : min_poly_(std::move(min_poly)) {
    if (min_poly_.degree() < 1) throw Error("NumberField: min_poly must have degree >= 1");
    if (!min_poly_.leading().is_one()) throw Error("NumberField: min_poly must be monic");
    if (min_poly_.degree() > 1) {
        UniPoly<Rational> g = poly_gcd(min_poly_, min_poly_.derivative());
        if (g.degree() != 0)
            throw ReducibleExtension("NumberField: min_poly is not square-free");
    }
}

NumberField make_number_field(UniPoly<Rational> min_poly) {
    return std::make_shared<const NumberFieldData>(std::move(min_poly));
}

NumberField rational_field() {
    static const NumberField q = make_number_field(
        UniPoly<Rational>(std::vector<Rational>{Rational(0), Rational(1)}));
    return q;
}

bool same_field(const NumberField& a, const NumberField& b) {
    if (a == b) return true;
    return a->min_poly() == b->min_poly();
}

FieldElement::FieldElement(NumberField parent, std::vector<Rational> coords)
    : parent_(std::move(parent)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != parent_->degree())
        throw Error("FieldElement: coordinate length does not match field degree");
}

FieldElement FieldElement::zero(const NumberField& f) {
    return FieldElement(f, std::vector<Rational>(static_cast<size_t>(f->degree()), Rational(0)));
}

FieldElement FieldElement::one(const NumberField& f) {
    return from_rational(f, Rational(1));
}

FieldElement FieldElement::from_rational(const NumberField& f, const Rational& r) {
    std::vector<Rational> c(static_cast<size_t>(f->degree()), Rational(0));
    c[0] = r;
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::generator(const NumberField& f) {
    if (f->degree() == 1) {
        // theta is the rational root of the degree-1 min_poly x + c0.
        return from_rational(f, -f->min_poly()[0]);
    }
    std::vector<Rational> c(static_cast<size_t>(f->degree()), Rational(0));
    c[1] = Rational(1);
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_poly(const NumberField& f, const UniPoly<Rational>& p) {
    auto [q, r] = divrem(p, f->min_poly());
    (void)q;
    std::vector<Rational> c(static_cast<size_t>(f->degree()), Rational(0));
    for (int i = 0; i <= r.degree(); ++i) c[static_cast<size_t>(i)] = r[i];
    return FieldElement(f, std::move(c));
}

bool FieldElement::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

bool FieldElement::is_one() const {
    if (!coords_[0].is_one()) return false;
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    return true;
}

bool FieldElement::as_rational(Rational& out) const {
    for (size_t i = 1; i < coords_.size(); ++i)
        if (!coords_[i].is_zero()) return false;
    out = coords_[0];
    return true;
}

FieldElement FieldElement::operator-() const {
    std::vector<Rational> c;
    c.reserve(coords_.size());
    for (const auto& a : coords_) c.push_back(-a);
    return FieldElement(parent_, std::move(c));
}

static void check_same_parent(const FieldElement& a, const FieldElement& b) {
    if (!same_field(a.parent(), b.parent()))
        throw Error("FieldElement: mixed parents in arithmetic");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check_same_parent(a, b);
    std::vector<Rational> c(a.coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
    return FieldElement(a.parent_, std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check_same_parent(a, b);
    std::vector<Rational> c(a.coords_);
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
    return FieldElement(a.parent_, std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check_same_parent(a, b);
    const int n = a.parent_->degree();
    if (n == 1) {
        return FieldElement(a.parent_, {a.coords_[0] * b.coords_[0]});
    }
    // Schoolbook product followed by reduction mod min_poly (monic).
    std::vector<Rational> prod(static_cast<size_t>(2 * n - 1), Rational(0));
    for (int i = 0; i < n; ++i) {
        if (a.coords_[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b.coords_[static_cast<size_t>(j)].is_zero()) continue;
            prod[static_cast<size_t>(i + j)] +=
                a.coords_[static_cast<size_t>(i)] * b.coords_[static_cast<size_t>(j)];
        }
    }
    const UniPoly<Rational>& m = a.parent_->min_poly();
    for (int i = 2 * n - 2; i >= n; --i) {
        Rational top = prod[static_cast<size_t>(i)];
        if (top.is_zero()) continue;
        prod[static_cast<size_t>(i)] = Rational(0);
        for (int j = 0; j < n; ++j)
            prod[static_cast<size_t>(i - n + j)] -= top * m[j];
    }
    prod.resize(static_cast<size_t>(n));
    return FieldElement(a.parent_, std::move(prod));
}

FieldElement operator*(const FieldElement& a, const Rational& r) {
    std::vector<Rational> c(a.coords_);
    for (auto& x : c) x *= r;
    return FieldElement(a.parent_, std::move(c));
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!same_field(a.parent(), b.parent())) return false;
    return a.coords_ == b.coords_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error("FieldElement: inverse of zero");
    if (parent_->degree() == 1)
        return FieldElement(parent_, {coords_[0].inverse()});
    // Extended gcd with the defining polynomial; gcd != 1 exposes a
    // zero divisor of a reducible presentation.
    UniPoly<Rational> a = as_poly();
    auto eg = poly_ext_gcd(a, parent_->min_poly());
    if (eg.g.degree() != 0)
        throw ReducibleExtension("FieldElement: zero divisor met during inversion");
    return from_poly(parent_, eg.u);
}

std::string FieldElement::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ",";
        os << coords_[i];
    }
    os << "]";
    return os.str();
}

} // namespace recurve
