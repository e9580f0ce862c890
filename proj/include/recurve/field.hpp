#ifndef RECURVE_FIELD_HPP
#define RECURVE_FIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include "recurve/poly.hpp"
#include "recurve/rational.hpp"

namespace recurve {

// A number field Q[theta]/(min_poly), presented by a single monic
// generator polynomial with exact rational coefficients.  Degree 1
// encodes Q itself.  Square-freeness of min_poly is checked at
// construction; irreducibility is the caller's obligation, with zero
// divisors surfacing lazily as ReducibleExtension during inversion.
class NumberFieldData;
using NumberField = std::shared_ptr<const NumberFieldData>;

class NumberFieldData {
  public:
    explicit NumberFieldData(UniPoly<Rational> min_poly);

    const UniPoly<Rational>& min_poly() const { return min_poly_; }
    int degree() const { return min_poly_.degree(); }
    bool is_rational() const { return degree() == 1; }

  private:
    UniPoly<Rational> min_poly_;
};

NumberField make_number_field(UniPoly<Rational> min_poly);
// The degree-1 field encoding Q (min_poly = x).
NumberField rational_field();

bool same_field(const NumberField& a, const NumberField& b);

// Element of a number field in the power basis of theta.
class FieldElement {
  public:
    FieldElement(NumberField parent, std::vector<Rational> coords);

    static FieldElement zero(const NumberField& f);
    static FieldElement one(const NumberField& f);
    static FieldElement from_rational(const NumberField& f, const Rational& r);
    static FieldElement generator(const NumberField& f);
    // Image of a polynomial expression in the generator.
    static FieldElement from_poly(const NumberField& f, const UniPoly<Rational>& p);

    const NumberField& parent() const { return parent_; }
    const std::vector<Rational>& coords() const { return coords_; }
    UniPoly<Rational> as_poly() const { return UniPoly<Rational>(coords_); }

    bool is_zero() const;
    bool is_one() const;
    // The rational part if the element lies in Q, else nullopt semantics
    // via the bool return.
    bool as_rational(Rational& out) const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const Rational& r);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement inverse() const;

    std::string str() const;

  private:
    NumberField parent_;
    std::vector<Rational> coords_;
};

inline FieldElement zero_like(const FieldElement& a) { return FieldElement::zero(a.parent()); }
inline FieldElement one_like(const FieldElement& a) { return FieldElement::one(a.parent()); }
inline FieldElement int_like(const FieldElement& a, long k) {
    return FieldElement::from_rational(a.parent(), Rational(k));
}
inline int field_degree_over_q(const FieldElement& a) { return a.parent()->degree(); }

} // namespace recurve

#endif
