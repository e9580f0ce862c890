#include "recurve/oracle.hpp"

#include "recurve/errors.hpp"

namespace recurve {

namespace {

UniPoly<FieldElement> promote_poly(const UniPoly<Rational>& p, const NumberField& k) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c.push_back(FieldElement::from_rational(k, p[i]));
    return UniPoly<FieldElement>(c);
}

UniPoly<FieldElement> map_poly(const UniPoly<FieldElement>& p, const FieldElement& gen_image) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c.push_back(embed_via(p[i], gen_image));
    return UniPoly<FieldElement>(c);
}

Series<FieldElement> linear_series(const FieldElement& c0, int abs) {
    // c0 + q to the given window
    std::vector<FieldElement> c(static_cast<size_t>(abs), zero_like(c0));
    c[0] = c0;
    if (abs > 1) c[1] = one_like(c0);
    return Series<FieldElement>(0, abs, 0, std::move(c), c0);
}

} // namespace

ProblemInput scramble_basis(const ProblemInput& input, const Matrix<Rational>& m) {
    const int g = input.genus;
    if (m.nrows() != g || m.ncols() != g) throw SingularMatrix("scramble_basis: matrix shape mismatch");
    if (rank(m) != g) throw SingularMatrix("scramble_basis: scramble matrix is singular");
    ProblemInput out = input;
    out.forms.clear();
    for (int i = 0; i < g; ++i) {
        Series<FieldElement> acc =
            Series<FieldElement>::zero_to_prec(input.precision, 1, input.forms[0].exemplar());
        for (int j = 0; j < g; ++j) {
            const Rational& c = m.at(i, j);
            if (c.is_zero()) continue;
            acc = acc + input.forms[static_cast<size_t>(j)].scaled(
                            FieldElement::from_rational(input.field, c));
        }
        out.forms.push_back(std::move(acc));
    }
    return out;
}

ProblemInput expand_hyperelliptic(const OracleSpec& spec) {
    const UniPoly<Rational>& f = spec.f;
    if (f.degree() < 5) throw Error("expand_hyperelliptic: degree must be at least 5");
    const int g = (f.degree() - 1) / 2;
    if (poly_gcd(f, f.derivative()).degree() != 0)
        throw Error("expand_hyperelliptic: f is not separable");
    const int B = spec.precision;
    if (B < 2) throw Error("expand_hyperelliptic: precision too small");

    const NumberField& k0 = spec.x0_field;
    FieldElement x0(k0, spec.x0_coords);
    FieldElement c = promote_poly(f, k0).eval(x0);
    if (c.is_zero()) throw BadInitialRoot("expand_hyperelliptic: x0 is a branch point");

    // K = k0(sqrt c), or k0 itself when c is a square there (only
    // decidable here for degree <= 2 base fields).
    NumberField k;
    FieldElement x0k = x0, y0 = c;
    bool solved = false;
    if (k0->degree() <= 2) {
        if (auto root = field_sqrt(c)) {
            k = k0;
            x0k = x0;
            y0 = *root;
            solved = true;
        }
    }
    if (!solved) {
        std::vector<FieldElement> ext{-c, FieldElement::zero(k0), FieldElement::one(k0)};
        auto flat = flatten_tower(k0, UniPoly<FieldElement>(std::move(ext)));
        k = flat.field;
        x0k = embed_via(x0, flat.base_gen_image);
        y0 = flat.root_image;
    }
    if (spec.branch < 0) y0 = -y0;

    Series<FieldElement> x_series = linear_series(x0k, B);
    Series<FieldElement> fx = eval_poly_at_series(promote_poly(f, k), x_series);
    Series<FieldElement> y = newton_sqrt_series(fx, y0);
    // (y-series)^2 - f(x0+q) vanishes to full precision by construction.
    if (!(y * y - fx).is_zero_to_precision())
        throw Error("expand_hyperelliptic: square-root series check failed");

    ProblemInput out;
    out.genus = g;
    out.field = k;
    out.precision = B;
    Series<FieldElement> yinv = y.inverted().truncated(B);
    Series<FieldElement> w = yinv;
    for (int i = 1; i <= g; ++i) {
        out.forms.push_back(w.truncated(B).with_twist(1));
        if (i < g) w = (w * x_series).truncated(B);
    }
    validate_problem_input(out);
    if (spec.scramble) return scramble_basis(out, *spec.scramble);
    return out;
}

ProblemInput expand_plane_quartic(const OracleSpec& spec) {
    const HomForm& f = spec.quartic;
    if (f.num_vars() != 3 || f.degree() != 4) throw Error("expand_plane_quartic: expects a ternary quartic");
    const int B = spec.precision;
    const NumberField& k = spec.point_field;
    FieldElement x0(k, spec.px), y0(k, spec.py);
    const FieldElement onek = FieldElement::one(k);

    auto eval_form_at = [&](const HomForm& h, const FieldElement& xv, const FieldElement& yv) {
        FieldElement acc = FieldElement::zero(k);
        for (const auto& [e, c] : h.terms()) {
            FieldElement term = FieldElement::from_rational(k, c);
            for (int i = 0; i < e[0]; ++i) term = term * xv;
            for (int i = 0; i < e[1]; ++i) term = term * yv;
            acc = acc + term;
        }
        return acc;
    };

    HomForm fx = f.partial(0), fy = f.partial(1);
    if (!eval_form_at(f, x0, y0).is_zero())
        throw Error("expand_plane_quartic: the point is not on the curve");
    FieldElement fy_p = eval_form_at(fy, x0, y0);
    if (fy_p.is_zero()) {
        if (eval_form_at(fx, x0, y0).is_zero())
            throw SingularAtPoint("expand_plane_quartic: both partials vanish at the point");
        throw InconsistentInput("expand_plane_quartic: dF/dy vanishes at the point; swap coordinates");
    }

    // Newton solve F(x0+q, y(q), 1) = 0 starting from y0.
    Series<FieldElement> x_series = linear_series(x0, B);
    Series<FieldElement> ones = Series<FieldElement>::constant(onek, B);
    Series<FieldElement> y = Series<FieldElement>::constant(y0, 1);
    int w = 1;
    while (w < B) {
        w = std::min(2 * w, B);
        std::vector<FieldElement> cs;
        for (int kk = 0; kk < w; ++kk)
            cs.push_back(kk < y.abs_prec() ? y.coeff(kk) : FieldElement::zero(k));
        Series<FieldElement> cur(0, w, 0, std::move(cs), y0);
        std::vector<Series<FieldElement>> vars{x_series.truncated(w), cur, ones.truncated(w)};
        Series<FieldElement> val = f.evaluate(vars);
        Series<FieldElement> der = fy.evaluate(vars);
        y = cur - val * der.inverted();
        y = y.truncated(w);
    }
    {
        std::vector<Series<FieldElement>> vars{x_series, y, ones};
        if (!f.evaluate(vars).is_zero_to_precision())
            throw Error("expand_plane_quartic: Newton solve failed");
    }

    ProblemInput out;
    out.genus = 3;
    out.field = k;
    out.precision = B;
    std::vector<Series<FieldElement>> vars{x_series, y, ones};
    Series<FieldElement> denom_inv = fy.evaluate(vars).inverted();
    out.forms.push_back((ones * denom_inv).truncated(B).with_twist(1));
    out.forms.push_back((x_series * denom_inv).truncated(B).with_twist(1));
    out.forms.push_back((y * denom_inv).truncated(B).with_twist(1));
    validate_problem_input(out);
    if (spec.scramble) return scramble_basis(out, *spec.scramble);
    return out;
}

ProblemInput expand_conic_model(const OracleSpec& spec) {
    const HomForm& q = spec.conic_q;
    const HomForm& h = spec.conic_h;
    if (q.num_vars() != 3 || q.degree() != 2) throw Error("expand_conic_model: Q must be a ternary quadratic");
    const int g = h.degree() - 1;
    if (g < 3 || g % 2 == 0) throw Error("expand_conic_model: H must have odd degree g+1 with g >= 3");
    if (!conic_is_smooth(q)) throw SingularConic("expand_conic_model: Q is singular");
    const int B = spec.precision;

    ConicPoint pt = find_point_via_lines(q);
    ConicParam par = parametrize_conic(q, pt);
    const NumberField& e = par.e;
    const FieldElement ze = FieldElement::zero(e);

    // Pull H back to a binary form; the curve becomes y^2 = htilde(s).
    BinaryForm<FieldElement> ht = compose_ternary(h, par.phi, ze);
    if (ht.affine.is_zero()) throw Error("expand_conic_model: H vanishes on the conic");
    {
        auto dec = binary_squarefree(ht);
        for (const auto& [p, m] : dec.factors)
            if (m > 1) throw Error("expand_conic_model: H restricted to the conic is not square-free");
    }

    if (spec.param_coords.size() != 2) throw Error("expand_conic_model: parameter needs two coordinates");
    FieldElement s0 = e->degree() == 2
                          ? FieldElement(e, {spec.param_coords[0], spec.param_coords[1]})
                          : FieldElement::from_rational(e, spec.param_coords[0]);
    FieldElement c0 = ht.affine.eval(s0);
    if (c0.is_zero()) throw BadInitialRoot("expand_conic_model: parameter hits a branch point");

    NumberField k;
    FieldElement s0k = s0, y0 = c0, e_gen_image = FieldElement::generator(e);
    bool solved = false;
    if (auto root = field_sqrt(c0)) {
        k = e;
        y0 = *root;
        solved = true;
    }
    if (!solved) {
        std::vector<FieldElement> ext{-c0, ze, FieldElement::one(e)};
        auto flat = flatten_tower(e, UniPoly<FieldElement>(std::move(ext)));
        k = flat.field;
        s0k = embed_via(s0, flat.base_gen_image);
        e_gen_image = flat.base_gen_image;
        y0 = flat.root_image;
    }
    if (spec.branch < 0) y0 = -y0;

    auto promote_e_poly = [&](const UniPoly<FieldElement>& p) {
        std::vector<FieldElement> c;
        for (int i = 0; i <= p.degree(); ++i) c.push_back(embed_via(p[i], e_gen_image));
        return UniPoly<FieldElement>(c);
    };

    // All inputs here are exact closed forms, so work in a padded
    // window; the derivative and divisions below cost a few mechanical
    // coefficients that the padding absorbs before the final cut to B.
    const int W = B + 8;
    Series<FieldElement> s_series = linear_series(s0k, W);
    Series<FieldElement> hs = eval_poly_at_series(promote_e_poly(ht.affine), s_series);
    Series<FieldElement> y = newton_sqrt_series(hs, y0);
    Series<FieldElement> yinv = y.inverted().truncated(W);

    std::vector<Series<FieldElement>> omegas; // s^i ds / y, i < g
    {
        Series<FieldElement> w = yinv;
        for (int i = 0; i < g; ++i) {
            omegas.push_back(w.truncated(W).with_twist(1));
            if (i + 1 < g) w = (w * s_series).truncated(W);
        }
    }

    ProblemInput out;
    out.genus = g;
    out.field = k;
    out.precision = B;

    if (e->degree() == 1) {
        // d = 1: the straight basis is already rational.
        for (const auto& w : omegas) out.forms.push_back(w.truncated(B));
    } else {
        // Galois descent through sigma: sqrt(d) -> -sqrt(d), acting on
        // coefficients and on the parametrization.
        auto conj_poly = [&](const UniPoly<FieldElement>& p) {
            std::vector<FieldElement> c;
            for (int i = 0; i <= p.degree(); ++i) c.push_back(conjugate_quadratic(p[i]));
            return UniPoly<FieldElement>(c);
        };
        // sigma(s) as a Mobius function of s: conjugate projection
        // composed with the parametrization, common factor removed.
        UniPoly<FieldElement> num2, den2;
        {
            std::vector<UniPoly<FieldElement>> rows;
            for (int rix = 0; rix < 2; ++rix) {
                UniPoly<FieldElement> acc;
                for (int cix = 0; cix < 3; ++cix) {
                    FieldElement coeff = conjugate_quadratic(par.proj[static_cast<size_t>(rix)][static_cast<size_t>(cix)]);
                    acc = acc + par.phi[static_cast<size_t>(cix)].affine.scaled(coeff);
                }
                rows.push_back(acc);
            }
            UniPoly<FieldElement> gg = poly_gcd(rows[0], rows[1]);
            num2 = exact_div(rows[0], gg);
            den2 = exact_div(rows[1], gg);
            if (std::max(num2.degree(), den2.degree()) != 1)
                throw Error("expand_conic_model: conjugate parameter is not a Mobius map");
        }
        // rho^2 = sigma(htilde)(mu(s)) / htilde(s)
        UniPoly<FieldElement> hconj = conj_poly(ht.affine);
        UniPoly<FieldElement> numR;
        {
            // compose hconj with mu = num2/den2, clearing den2^(2g+2)
            const int dh = 2 * g + 2;
            UniPoly<FieldElement> acc;
            UniPoly<FieldElement> npow = UniPoly<FieldElement>::constant(FieldElement::one(e));
            std::vector<UniPoly<FieldElement>> dpows;
            dpows.push_back(UniPoly<FieldElement>::constant(FieldElement::one(e)));
            for (int i = 1; i <= dh; ++i) dpows.push_back(dpows.back() * den2);
            for (int i = 0; i <= dh; ++i) {
                FieldElement ci = ht.affine.coeff_or_zero(i, ze);
                ci = conjugate_quadratic(ci);
                if (!ci.is_zero()) acc = acc + (npow * dpows[static_cast<size_t>(dh - i)]).scaled(ci);
                if (i < dh) npow = npow * num2;
            }
            numR = std::move(acc);
        }
        auto rho = rational_function_sqrt(numR, ht.affine * poly_pow(den2, 2 * g + 2));
        if (!rho) throw Error("expand_conic_model: descent square root does not exist");

        // series of sigma(s), sigma(y) = rho(s) y, and the descended basis
        Series<FieldElement> mu_num = eval_poly_at_series(promote_e_poly(num2), s_series);
        Series<FieldElement> mu_den = eval_poly_at_series(promote_e_poly(den2), s_series);
        Series<FieldElement> sigma_s = mu_num * mu_den.inverted();
        Series<FieldElement> rho_series =
            eval_poly_at_series(promote_e_poly(rho->num), s_series) *
            eval_poly_at_series(promote_e_poly(rho->den), s_series).inverted();
        Series<FieldElement> sigma_y = rho_series * y;
        Series<FieldElement> dsigma_s = sigma_s.derivative(); // twist +1

        // sqrt(d) inside E: with min poly z^2 - d, the generator itself.
        FieldElement sqrt_d_k = embed_via(FieldElement::generator(e), e_gen_image);

        std::vector<Series<FieldElement>> candidates;
        Series<FieldElement> sig_pow = Series<FieldElement>::constant(one_like(y0), W);
        Series<FieldElement> sigma_y_inv = sigma_y.inverted();
        for (int i = 0; i < g; ++i) {
            Series<FieldElement> sigma_omega = sig_pow * dsigma_s * sigma_y_inv;
            const Series<FieldElement>& omega = omegas[static_cast<size_t>(i)];
            int cap = std::min({omega.abs_prec(), sigma_omega.abs_prec(), W});
            Series<FieldElement> eta = omega.truncated(cap) + sigma_omega.truncated(cap);
            Series<FieldElement> etap =
                (omega.truncated(cap) - sigma_omega.truncated(cap)).scaled(sqrt_d_k);
            candidates.push_back(eta);
            candidates.push_back(etap);
            if (i + 1 < g) sig_pow = (sig_pow * sigma_s).truncated(W);
        }
        // Expansions of regular differentials start at exponent >= 0;
        // row-reduce over Q and keep the first g independent candidates.
        const int fdeg = k->degree();
        int win = B;
        for (const auto& c : candidates) win = std::min(win, c.abs_prec());
        if (win <= 0) throw PrecisionExhausted("expand_conic_model: descent exhausted the window");
        std::vector<size_t> chosen;
        std::vector<std::vector<Rational>> accum;
        for (size_t ci = 0; ci < candidates.size() && static_cast<int>(chosen.size()) < g; ++ci) {
            const auto& cand = candidates[ci];
            if (cand.is_zero_to_precision()) continue;
            if (cand.val_offset() < 0)
                throw Error("expand_conic_model: descended form has a pole");
            std::vector<Rational> row(static_cast<size_t>(win) * static_cast<size_t>(fdeg), Rational(0));
            for (int kk = cand.val_offset(); kk < win; ++kk) {
                const FieldElement ce = cand.coeff(kk);
                for (int j = 0; j < fdeg; ++j)
                    row[static_cast<size_t>(kk * fdeg + j)] = ce.coords()[static_cast<size_t>(j)];
            }
            Matrix<Rational> trial =
                Matrix<Rational>::zero(static_cast<int>(accum.size()) + 1, win * fdeg, Rational(0));
            for (size_t r = 0; r < accum.size(); ++r)
                for (int cc = 0; cc < win * fdeg; ++cc) trial.at(static_cast<int>(r), cc) = accum[r][static_cast<size_t>(cc)];
            for (int cc = 0; cc < win * fdeg; ++cc) trial.at(static_cast<int>(accum.size()), cc) = row[static_cast<size_t>(cc)];
            if (rank(trial) == static_cast<int>(accum.size()) + 1) {
                accum.push_back(std::move(row));
                chosen.push_back(ci);
            }
        }
        if (static_cast<int>(chosen.size()) < g)
            throw RankDeficient("expand_conic_model: descent produced fewer than g independent forms");
        for (size_t ci : chosen) out.forms.push_back(candidates[ci].truncated(B));
    }

    for (auto& w : out.forms) {
        if (w.abs_prec() < B)
            throw PrecisionExhausted("expand_conic_model: descended form lost precision");
        w = w.truncated(B);
    }
    validate_problem_input(out);
    if (spec.scramble) return scramble_basis(out, *spec.scramble);
    return out;
}

ProblemInput generate(const OracleSpec& spec) {
    switch (spec.kind) {
        case OracleSpec::Kind::HyperellipticPoly: return expand_hyperelliptic(spec);
        case OracleSpec::Kind::ConicWeighted: return expand_conic_model(spec);
        case OracleSpec::Kind::PlaneQuartic: return expand_plane_quartic(spec);
    }
    throw Error("generate: unknown oracle kind");
}

} // namespace recurve
