#ifndef RECURVE_PRECISION_HPP
#define RECURVE_PRECISION_HPP

#include <optional>
#include <string>
#include <vector>

#include "recurve/rational.hpp"

namespace recurve {

// Identifiers for the tracked pipeline intermediates, one per row of
// the precision table.
enum class ObjectId {
    omega,
    omega_prime,
    t,
    dt,
    t_i_ddt,
    partial_i,
    m_partials,
    f,
    df,
    y,
    h,
    hG,
    f_minus_hg,
    step6_bilinear,
};

std::string object_name(ObjectId id);
std::optional<ObjectId> object_from_name(const std::string& name);

// Expected valuation range and error exponents for one object, already
// evaluated at concrete (B, g, d).
struct PrecisionRow {
    ObjectId id;
    bool has_ord = true;
    long ord_min = 0;
    long ord_max = 0;
    long abs_exponent = 0;
    bool has_rel = true;
    long rel_exponent = 0;
    long twist = 0;
};

// The row formulas are stored as affine functions of (B, g, d) so tests
// can diff the implementation against a literal transcription of the
// published table.
struct AffineExpr {
    Rational cB, cg, cd, c0;
    Rational eval_rational(long B, long g, long d) const;
    long eval(long B, long g, long d) const; // asserts integrality
};

struct PrecisionRowSpec {
    ObjectId id;
    bool has_ord;
    AffineExpr ord_min, ord_max;
    AffineExpr abs_exponent;
    bool has_rel;
    AffineExpr rel_exponent;
    AffineExpr twist;
};

const std::vector<PrecisionRowSpec>& precision_table();

PrecisionRow expected_row(ObjectId id, long g, long B, long d = 0);

// B = 19g + 48.
long minimum_B(long g);

struct Budget {
    long g = 0;
    long B = 0;
    long conic_threshold = 7;
    long f_hg_threshold = 0;  // 8g + 25
    long step6_threshold = 0; // 4g - 1
};

// Validates B >= 19g+48 and the step-5 admissibility identity
// B - 11g - 23 >= 8g + 25 (equality exactly at the minimum budget).
Budget make_budget(long g, long B, bool allow_low_precision = false);

struct PrecisionReport {
    std::optional<long> valuation; // nullopt: identically zero to precision
    long abs_prec = 0;
    long rel_prec = 0; // abs - valuation when the valuation is known
};

struct ConformanceResult {
    std::string label;
    ObjectId id;
    PrecisionReport actual;
    PrecisionRow expected;
    bool pass = false;
    std::string detail;
};

ConformanceResult check_conformance(const PrecisionReport& actual, const PrecisionRow& expected,
                                    const std::string& label = "");

} // namespace recurve

#endif
