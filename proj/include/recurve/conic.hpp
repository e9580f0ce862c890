#ifndef RECURVE_CONIC_HPP
#define RECURVE_CONIC_HPP

#include <array>
#include <optional>

#include "recurve/form.hpp"

namespace recurve {

// 3x3 Gram matrix of a ternary quadratic form (symmetric, halved
// off-diagonal coefficients).
Matrix<Rational> gram_matrix(const HomForm& q);

bool conic_is_smooth(const HomForm& q);

// Square root in a field of degree at most 2 over Q, when one exists.
std::optional<FieldElement> field_sqrt(const FieldElement& x);

// Conjugation of the degree-2 field (the nontrivial automorphism);
// identity on degree-1 fields.
FieldElement conjugate_quadratic(const FieldElement& x);

// Positive generator of the square class of n (trial division up to a
// fixed bound, then a perfect-square check on the cofactor).
mpz_class squarefree_part(const mpz_class& n);

// A point of the conic over Q or a quadratic field Q(sqrt d), found by
// intersecting with the lines a=0, b=0, c=0, a-b=0 in order.
struct ConicPoint {
    NumberField e;                    // Q or Q(sqrt d)
    mpz_class d = 1;                  // square-free; 1 means rational
    std::vector<FieldElement> coords; // 3 projective coordinates over e
};

ConicPoint find_point_via_lines(const HomForm& q);

// Degree-2 parametrization of the conic through a given point, and the
// inverse projection (two linear forms whose ratio is the parameter).
struct ConicParam {
    NumberField e;
    mpz_class d = 1;
    std::vector<BinaryForm<FieldElement>> phi;    // three binary quadratics over e
    std::vector<std::vector<FieldElement>> proj;  // two linear forms: parameter = proj0/proj1
};

ConicParam parametrize_conic(const HomForm& q, const ConicPoint& pt);

// Square root of num/den in e(s) when it exists (e of degree <= 2).
struct FunctionSqrt {
    UniPoly<FieldElement> num, den;
};
std::optional<FunctionSqrt> rational_function_sqrt(const UniPoly<FieldElement>& num,
                                                   const UniPoly<FieldElement>& den);

struct DiagonalizedConic {
    HomForm q_diag;              // diagonal with square-free integer entries
    Matrix<Rational> change;     // q_diag(y) = q(change * y)
};

DiagonalizedConic diagonalize_conic(const HomForm& q);

} // namespace recurve

#endif
