#ifndef RECURVE_ORACLE_HPP
#define RECURVE_ORACLE_HPP

#include <optional>

#include "recurve/canonical.hpp"
#include "recurve/conic.hpp"
#include "recurve/tower.hpp"

namespace recurve {

// Forward generator: truncated 1-form expansions of explicit curves at
// an explicitly constructed nonrational point.  Test-data engine for
// the reconstruction pipeline.

// Newton square root: s with s^2 = c to precision and s(0) = y0.
template <class F>
Series<F> newton_sqrt_series(const Series<F>& c, const F& y0) {
    if (c.is_zero_to_precision() || c.val_offset() != 0)
        throw BadInitialRoot("newton_sqrt_series: constant term vanishes");
    if (!(y0 * y0 == c.coeff(0)))
        throw BadInitialRoot("newton_sqrt_series: y0^2 differs from the constant term");
    const int target = c.abs_prec();
    const F half = rational_like(y0, Rational(1, 2));
    Series<F> s = Series<F>::constant(y0, 1);
    int w = 1;
    while (w < target) {
        w = std::min(2 * w, target);
        // re-seat the current approximation in the wider window
        std::vector<F> cs;
        cs.reserve(static_cast<size_t>(w));
        for (int k = 0; k < w; ++k)
            cs.push_back(k < s.abs_prec() ? s.coeff(k) : zero_like(y0));
        Series<F> cur(0, w, 0, std::move(cs), y0);
        Series<F> cw = c.truncated(w);
        s = (cur + cw * cur.inverted()).scaled(half);
    }
    Series<F> check = s * s - c;
    if (!check.is_zero_to_precision())
        throw Error("newton_sqrt_series: iteration failed to converge");
    return s;
}

struct OracleSpec {
    enum class Kind { HyperellipticPoly, ConicWeighted, PlaneQuartic };
    Kind kind = Kind::HyperellipticPoly;

    // y^2 = f(x) at x0 in a chosen base field.
    UniPoly<Rational> f;
    NumberField x0_field;
    std::vector<Rational> x0_coords;

    // Conic-weighted (Q, H) at a parameter value s0 = a + b sqrt(d) on
    // the parametrization found for Q.
    HomForm conic_q{3, 2};
    HomForm conic_h{3, 0};
    std::vector<Rational> param_coords; // (a, b)

    // Smooth plane quartic F(x,y,z) at an affine point over K.
    HomForm quartic{3, 4};
    NumberField point_field;
    std::vector<Rational> px, py;

    int branch = +1; // sign of the chosen y-root
    int precision = 0;
    std::optional<Matrix<Rational>> scramble;
};

ProblemInput expand_hyperelliptic(const OracleSpec& spec);
ProblemInput expand_conic_model(const OracleSpec& spec);
ProblemInput expand_plane_quartic(const OracleSpec& spec);
ProblemInput generate(const OracleSpec& spec);

ProblemInput scramble_basis(const ProblemInput& input, const Matrix<Rational>& m);

} // namespace recurve

#endif
