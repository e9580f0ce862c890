#ifndef RECURVE_CANONICAL_HPP
#define RECURVE_CANONICAL_HPP

#include <vector>

#include "recurve/form.hpp"
#include "recurve/precision.hpp"
#include "recurve/series.hpp"

namespace recurve {

// Input to the reconstruction: genus, the field of the expansion point,
// the precision budget, and the truncated 1-form expansions (each a
// dq-series with val_offset >= 0 and abs_prec = B).
struct ProblemInput {
    int genus = 0;
    NumberField field;
    int precision = 0;
    std::vector<Series<FieldElement>> forms;
};

// Structural validation; budget enforcement is separate so callers can
// opt into low-precision runs for the cheap canonical-ideal branch.
void validate_problem_input(const ProblemInput& input);

struct CanonicalIdealComponent {
    int degree = 0;
    std::vector<HomForm> basis;
};

// Rows indexed by (q-power, K-coordinate) pairs up to precision, columns
// by the degree-d monomials in graded-lex order; entry = that rational
// coordinate of the monomial series coefficient.
Matrix<Rational> monomial_evaluation_matrix(const ProblemInput& input, int d);

// Kernel of the evaluation matrix as forms; exact by the vanishing
// lemma provided B > d(2g-2)/[K:Q].
CanonicalIdealComponent canonical_ideal_component(const ProblemInput& input, int d);

enum class CurveClass { Hyperelliptic, Nonhyperelliptic };

// dim I_2 is C(g-1,2) for hyperelliptic curves and C(g-2,2) otherwise;
// genus 2 is always hyperelliptic.
CurveClass detect_hyperelliptic(int g, int dim_i2);

struct CanonicalModel {
    std::vector<HomForm> generators; // bases of I_2, I_3, I_4 concatenated
};

CanonicalModel nonhyperelliptic_model(const ProblemInput& input);

// Convenience: all degree-d monomial series of the input forms,
// truncated to B, in graded-lex monomial order.
std::vector<Series<FieldElement>> monomial_series(const std::vector<Series<FieldElement>>& vars,
                                                  int d, int cap_abs);

long binom2(long n); // C(n,2) with negative n clamped to 0

} // namespace recurve

#endif
