#include "recurve/precision.hpp"

#include <sstream>

#include "recurve/errors.hpp"

namespace recurve {

std::string object_name(ObjectId id) {
    switch (id) {
        case ObjectId::omega: return "omega";
        case ObjectId::omega_prime: return "omega_prime";
        case ObjectId::t: return "t";
        case ObjectId::dt: return "dt";
        case ObjectId::t_i_ddt: return "t_i_ddt";
        case ObjectId::partial_i: return "partial_i";
        case ObjectId::m_partials: return "m_partials";
        case ObjectId::f: return "f";
        case ObjectId::df: return "df";
        case ObjectId::y: return "y";
        case ObjectId::h: return "h";
        case ObjectId::hG: return "hG";
        case ObjectId::f_minus_hg: return "f_minus_hg";
        case ObjectId::step6_bilinear: return "step6_bilinear";
    }
    throw UnknownObject("object_name: bad id");
}

std::optional<ObjectId> object_from_name(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(ObjectId::step6_bilinear); ++i) {
        ObjectId id = static_cast<ObjectId>(i);
        if (object_name(id) == name) return id;
    }
    return std::nullopt;
}

Rational AffineExpr::eval_rational(long B, long g, long d) const {
    return cB * Rational(B) + cg * Rational(g) + cd * Rational(d) + c0;
}

long AffineExpr::eval(long B, long g, long d) const {
    Rational v = eval_rational(B, g, d);
    if (!v.is_integer()) throw Error("AffineExpr: non-integer row value at these parameters");
    return static_cast<long>(v.num().get_si());
}

namespace {

AffineExpr aff(long cB, long cg, long c0, long cd = 0) {
    return AffineExpr{Rational(cB), Rational(cg), Rational(cd), Rational(c0)};
}

AffineExpr aff_q(Rational cB, Rational cg, Rational c0, Rational cd = Rational(0)) {
    return AffineExpr{cB, cg, cd, c0};
}

std::vector<PrecisionRowSpec> build_table() {
    std::vector<PrecisionRowSpec> t;
    // id, has_ord, ord_min, ord_max, abs, has_rel, rel, twist
    t.push_back({ObjectId::omega, true, aff(0, 0, 0), aff(0, 2, -2), aff(1, 0, 0), true,
                 aff(1, -2, 2), aff(0, 0, 1)});
    t.push_back({ObjectId::omega_prime, true, aff(0, 0, 0), aff(0, 2, -2), aff(1, 0, 0), true,
                 aff(1, -2, 2), aff(0, 0, 1)});
    t.push_back({ObjectId::t, true, aff(0, 0, -2), aff(0, 0, 2), aff(1, -2, 0), true,
                 aff(1, -2, 2), aff(0, 0, 0)});
    t.push_back({ObjectId::dt, true, aff(0, 0, -3), aff(0, 0, 1), aff(1, -2, -1), true,
                 aff(1, -2, -2), aff(0, 0, 1)});
    t.push_back({ObjectId::t_i_ddt, true, aff(0, 0, -1), aff(0, 0, 3), aff(1, -2, -3), true,
                 aff(1, -2, -2), aff(0, 0, -1)});
    t.push_back({ObjectId::partial_i, true, aff(0, 0, -1), aff(0, 0, 3), aff(1, -2, -3), true,
                 aff(1, -2, -6), aff(0, 0, -1)});
    t.push_back({ObjectId::m_partials, true, aff(0, 0, 0, -1), aff(0, 0, 0, 3), aff(1, -2, -2, -1),
                 true, aff(1, -2, -2, -4), aff(0, 0, 0, -1)});
    t.push_back({ObjectId::f, true, aff(0, 0, -4), aff(0, 0, 4), aff(1, -2, -10), true,
                 aff(1, -2, -6), aff(0, 0, 0)});
    t.push_back({ObjectId::df, true, aff(0, 0, -5), aff(0, 0, 5), aff(1, -2, -11), true,
                 aff(1, -2, -16), aff(0, 0, 1)});
    t.push_back({ObjectId::y, true, aff(0, -2, -3), aff(0, 0, 5), aff(1, -4, -19), true,
                 aff(1, -2, -16), aff(0, 0, 0)});
    t.push_back({ObjectId::h, true, aff(0, -4, -6), aff(0, 0, 10), aff(1, -6, -22), true,
                 aff(1, -2, -16), aff(0, 0, 0)});
    t.push_back({ObjectId::hG, true, aff(0, -5, -9), aff(0, 3, 19), aff(1, -11, -23), true,
                 aff(1, -6, -14), aff(0, -1, -3)});
    t.push_back({ObjectId::f_minus_hg, false, aff(0, 0, 0), aff(0, 0, 0), aff(1, -11, -23), false,
                 aff(0, 0, 0), aff(0, -1, -3)});
    t.push_back({ObjectId::step6_bilinear, true, aff_q(Rational(0), Rational(-1, 2), Rational(0)),
                 aff_q(Rational(0), Rational(7, 2), Rational(-2)),
                 aff_q(Rational(1), Rational(-9, 2), Rational(-2)), true, aff(1, -4, -2),
                 aff_q(Rational(0), Rational(-1, 2), Rational(1))});
    return t;
}

} // namespace

const std::vector<PrecisionRowSpec>& precision_table() {
    static const std::vector<PrecisionRowSpec> t = build_table();
    return t;
}

PrecisionRow expected_row(ObjectId id, long g, long B, long d) {
    for (const auto& spec : precision_table()) {
        if (spec.id != id) continue;
        PrecisionRow row;
        row.id = id;
        row.has_ord = spec.has_ord;
        if (spec.has_ord) {
            row.ord_min = spec.ord_min.eval(B, g, d);
            row.ord_max = spec.ord_max.eval(B, g, d);
        }
        row.abs_exponent = spec.abs_exponent.eval(B, g, d);
        row.has_rel = spec.has_rel;
        if (spec.has_rel) row.rel_exponent = spec.rel_exponent.eval(B, g, d);
        row.twist = spec.twist.eval(B, g, d);
        return row;
    }
    throw UnknownObject("expected_row: unknown object id");
}

long minimum_B(long g) {
    if (g < 2) throw Error("minimum_B: genus must be at least 2");
    return 19 * g + 48;
}

Budget make_budget(long g, long B, bool allow_low_precision) {
    if (g < 2) throw Error("make_budget: genus must be at least 2");
    Budget b;
    b.g = g;
    b.B = B;
    b.f_hg_threshold = 8 * g + 25;
    b.step6_threshold = 4 * g - 1;
    if (!allow_low_precision) {
        if (B < minimum_B(g))
            throw InsufficientPrecision("budget: B below 19g+48");
        // Step-5 admissibility: B - 11g - 23 >= 8g + 25, equality at 19g+48.
        if (B - 11 * g - 23 < b.f_hg_threshold)
            throw InsufficientPrecision("budget: step-5 admissibility identity violated");
    }
    return b;
}

ConformanceResult check_conformance(const PrecisionReport& actual, const PrecisionRow& expected,
                                    const std::string& label) {
    ConformanceResult r;
    r.label = label.empty() ? object_name(expected.id) : label;
    r.id = expected.id;
    r.actual = actual;
    r.expected = expected;
    std::ostringstream why;
    bool ok = true;
    if (expected.has_ord && actual.valuation.has_value()) {
        if (*actual.valuation < expected.ord_min || *actual.valuation > expected.ord_max) {
            ok = false;
            why << "valuation " << *actual.valuation << " outside [" << expected.ord_min << ","
                << expected.ord_max << "]; ";
        }
    }
    if (actual.abs_prec < expected.abs_exponent) {
        ok = false;
        why << "abs precision " << actual.abs_prec << " below required " << expected.abs_exponent
            << "; ";
    }
    r.pass = ok;
    r.detail = why.str();
    return r;
}

} // namespace recurve
