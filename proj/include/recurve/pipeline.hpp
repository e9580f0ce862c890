#ifndef RECURVE_PIPELINE_HPP
#define RECURVE_PIPELINE_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recurve/algebra.hpp"
#include "recurve/canonical.hpp"
#include "recurve/conic.hpp"
#include "recurve/precision.hpp"

namespace recurve {

struct WeierstrassModel {
    UniPoly<Rational> f; // separable, degree 2g+1 or 2g+2
};

struct ConicModel {
    HomForm q{3, 2};     // smooth conic
    HomForm h{3, 0};     // degree g+1, with FG = h J^2 mod q after rescaling
};

struct CurveModel {
    enum class Branch { Nonhyperelliptic, HyperellipticPoly, HyperellipticConic };
    Branch branch = Branch::Nonhyperelliptic;
    std::vector<HomForm> generators; // canonical ideal generators (nonhyperelliptic)
    std::optional<WeierstrassModel> weierstrass;
    std::optional<ConicModel> conic;
};

std::string branch_name(CurveModel::Branch b);

// Everything the hyperelliptic steps accumulate.  Steps run in order;
// optional members fill in as stages complete.
struct PipelineState {
    ProblemInput input;
    Budget budget;

    // step 1
    std::vector<Series<FieldElement>> staircase; // w' over K, strictly increasing valuations
    std::optional<Matrix<FieldElement>> change;  // ordered = change * input
    std::optional<Series<AlgebraElement>> t;     // degree-1 coordinate, twist 0

    // step 2
    std::vector<Series<FieldElement>> partials;  // three K-series, twist -1

    // step 3
    std::optional<HomForm> conic;

    // step 4
    std::optional<Series<FieldElement>> f_series;
    std::optional<Series<FieldElement>> df_series;
    std::optional<Series<FieldElement>> y_series;
    std::optional<Series<FieldElement>> h_series;

    // step 5 (odd genus)
    std::optional<HomForm> big_f, big_g;

    // step 7 (odd genus)
    std::optional<HomForm> split_h, split_j;     // H before rescaling, J
    std::optional<Rational> alpha;

    // step 6 / reduce_to_P1 byproducts for verification and point images
    std::optional<Series<FieldElement>> x_series;
    std::optional<Series<FieldElement>> yf_series; // y D(x)/c(x) with yf^2 = f(x)

    std::vector<ConformanceResult> conformance;
    std::vector<std::pair<std::string, double>> timings_ms;
};

// Steps of the hyperelliptic reconstruction.  step1 also performs the
// step-2 trace computation internally (they share the etale block
// decomposition and restart together when a block splits).
void steps12_ordered_basis_and_traces(PipelineState& st);
void step3_find_conic(PipelineState& st);
void step4_h_series(PipelineState& st);
void step5_express_h(PipelineState& st);
WeierstrassModel step6_even_genus(PipelineState& st);

struct ParityDecomposition {
    HomForm h{3, 0};   // degree g+1, Z_C(h) = U (before the alpha rescale)
    HomForm j{3, 0};   // degree (g+5)/2, Z_C(j) = V
    Rational alpha;    // FG = alpha H J^2 mod Q
    ConicModel model;  // (Q, alpha H)
};

ParityDecomposition step7_parity_split(PipelineState& st);

WeierstrassModel reduce_to_p1(PipelineState& st, const ConicModel& model,
                              const std::vector<Rational>& point);

struct PointImage {
    // Projective coordinates over K: (a:b:c) for the conic branch, the
    // canonical coordinates for the nonhyperelliptic branch.
    std::vector<FieldElement> coords;
    // Affine (x, y) for the Weierstrass branch when P is finite there.
    std::optional<std::pair<FieldElement, FieldElement>> xy;
    bool at_infinity = false;
};

struct ReconstructOptions {
    bool allow_low_precision = false;
    std::optional<std::vector<Rational>> rational_point;
    bool diagonalize = false;
};

struct RunReport {
    CurveModel model;
    PointImage point_image;
    std::vector<ConformanceResult> conformance;
    std::vector<std::pair<std::string, double>> timings_ms;
    std::optional<WeierstrassModel> reduced;
    std::optional<std::vector<Rational>> reduced_point;
    std::optional<HomForm> q_diagonal;
    std::optional<HomForm> h_diagonal;
    std::optional<Matrix<Rational>> diag_change;
};

RunReport reconstruct(const ProblemInput& input, const ReconstructOptions& opts = {});

struct VerifyOutcome {
    bool pass = false;
    std::vector<std::string> failures;
};

// Recompute the coordinate series from the input and check every
// defining identity of the model to its certified degree bound.
VerifyOutcome verify_model(const ProblemInput& input, const CurveModel& model,
                           const std::optional<std::vector<Rational>>& reduced_point = std::nullopt,
                           const std::optional<WeierstrassModel>& reduced = std::nullopt);

// Optional cross-check of the parity split: push the divisor of FG to
// P^1 by projection from a coordinate point off the conic and test that
// the reduced odd part has degree 2g+2.  nullopt when no admissible
// projection center is available.
std::optional<bool> nu_projection_degree_check(const HomForm& q, const HomForm& fg, int g);

} // namespace recurve

#endif
