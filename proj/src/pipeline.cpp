#include "recurve/pipeline.hpp"

#include <chrono>

#include "recurve/errors.hpp"

namespace recurve {

std::string branch_name(CurveModel::Branch b) {
    switch (b) {
        case CurveModel::Branch::Nonhyperelliptic: return "nonhyperelliptic";
        case CurveModel::Branch::HyperellipticPoly: return "hyperelliptic_poly";
        case CurveModel::Branch::HyperellipticConic: return "hyperelliptic_conic";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

template <class F>
PrecisionReport report_of(const Series<F>& s) {
    PrecisionReport r;
    if (s.valuation().has_value()) r.valuation = *s.valuation();
    r.abs_prec = s.abs_prec();
    r.rel_prec = s.rel_prec();
    return r;
}

void record(PipelineState& st, ObjectId id, const PrecisionReport& rep, const std::string& label,
            long d = 0) {
    PrecisionRow row = expected_row(id, st.budget.g, st.budget.B, d);
    st.conformance.push_back(check_conformance(rep, row, label));
}

// ------------------------- etale stage -------------------------------

BlockElem block_scalar(const Block& b, const FieldElement& c) {
    return BlockElem(b, UniPoly<FieldElement>::constant(c));
}

// Image of a K-element through the L tensor factor: its rational
// coordinates become coefficients of powers of s.
BlockElem block_second_factor(const Block& b, const FieldElement& c) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(c.coords().size());
    for (const Rational& r : c.coords())
        coeffs.push_back(FieldElement::from_rational(b->base(), r));
    return BlockElem(b, UniPoly<FieldElement>(std::move(coeffs)));
}

Series<BlockElem> to_block_series(const Series<FieldElement>& s, const Block& b) {
    std::vector<BlockElem> c;
    c.reserve(s.coeffs().size());
    for (const FieldElement& x : s.coeffs()) c.push_back(block_scalar(b, x));
    return Series<BlockElem>(s.val_offset(), s.abs_prec(), s.twist(), std::move(c),
                             BlockElem::zero(b));
}

// Coefficientwise trace over all blocks.
Series<FieldElement> trace_series(const std::vector<Series<BlockElem>>& parts,
                                  const NumberField& k) {
    int abs = parts[0].abs_prec();
    int lo = parts[0].val_offset();
    int twist = parts[0].twist();
    for (const auto& p : parts) {
        abs = std::min(abs, p.abs_prec());
        lo = std::min(lo, p.val_offset());
        if (p.twist() != twist) throw Error("trace_series: twist mismatch across blocks");
    }
    const FieldElement z = FieldElement::zero(k);
    std::vector<FieldElement> c;
    c.reserve(static_cast<size_t>(std::max(0, abs - lo)));
    for (int e = lo; e < abs; ++e) {
        FieldElement acc = z;
        for (const auto& p : parts)
            if (e >= p.val_offset() && e < p.abs_prec()) acc = acc + p.coeff(e).trace();
        c.push_back(std::move(acc));
    }
    return Series<FieldElement>(lo, abs, twist, std::move(c), z);
}

Series<AlgebraElement> crt_series(const BlockDecomposition& dec,
                                  const std::vector<Series<BlockElem>>& parts) {
    int abs = parts[0].abs_prec();
    int lo = parts[0].val_offset();
    int twist = parts[0].twist();
    for (const auto& p : parts) {
        abs = std::min(abs, p.abs_prec());
        lo = std::min(lo, p.val_offset());
    }
    const AlgebraElement z = AlgebraElement::zero(dec.algebra());
    std::vector<AlgebraElement> c;
    c.reserve(static_cast<size_t>(std::max(0, abs - lo)));
    for (int e = lo; e < abs; ++e) {
        std::vector<BlockElem> coeffs;
        coeffs.reserve(parts.size());
        for (size_t t = 0; t < parts.size(); ++t) {
            const auto& p = parts[t];
            if (e >= p.val_offset() && e < p.abs_prec())
                coeffs.push_back(p.coeff(e));
            else
                coeffs.push_back(BlockElem::zero(dec.blocks()[t]));
        }
        c.push_back(dec.recombine(coeffs));
    }
    return Series<AlgebraElement>(lo, abs, twist, std::move(c), z);
}

} // namespace

void steps12_ordered_basis_and_traces(PipelineState& st) {
    const auto t0 = Clock::now();
    const ProblemInput& in = st.input;
    const int g = in.genus;
    const NumberField& k = in.field;
    const int ell = k->degree();

    for (const auto& w : in.forms) record(st, ObjectId::omega, report_of(w), "omega");

    auto stair = valuation_staircase(in.forms);
    st.staircase = stair.ordered;
    st.change = stair.change;
    for (const auto& w : st.staircase)
        record(st, ObjectId::omega_prime, report_of(w), "omega_prime");

    EtaleAlgebra a = tensor_with_self(k);
    BlockDecomposition dec(a);

    bool done = false;
    for (int attempt = 0; attempt <= ell + 2 && !done; ++attempt) {
        try {
            std::vector<Series<BlockElem>> t_blocks, dt_blocks;
            std::vector<std::vector<Series<BlockElem>>> cand_blocks(
                static_cast<size_t>(3 * ell));
            for (const Block& b : dec.blocks()) {
                // w''_{g-1} and w''_g in this block
                Series<BlockElem> n =
                    Series<BlockElem>::zero_to_prec(in.precision, 1, BlockElem::zero(b));
                Series<BlockElem> u = n;
                for (int j = 0; j < g; ++j) {
                    Series<BlockElem> wj = to_block_series(in.forms[static_cast<size_t>(j)], b);
                    n = n + wj.scaled(block_second_factor(b, st.change->at(g - 2, j)));
                    u = u + wj.scaled(block_second_factor(b, st.change->at(g - 1, j)));
                }
                if (n.is_zero_to_precision() || u.is_zero_to_precision())
                    throw PrecisionExhausted("steps12: a transformed basis series vanished");
                Series<BlockElem> tb = (n * u.inverted()).with_twist(0);
                Series<BlockElem> dtb = tb.derivative();
                if (dtb.is_zero_to_precision())
                    throw PrecisionExhausted("steps12: dt vanished to precision in a block");
                Series<BlockElem> dtinv = dtb.inverted();
                t_blocks.push_back(tb);
                dt_blocks.push_back(dtb);
                // lambda_j t^i (dt/dq)^{-1}
                Series<BlockElem> tpow =
                    Series<BlockElem>::constant(BlockElem::one(b), tb.abs_prec());
                for (int i = 0; i < 3; ++i) {
                    Series<BlockElem> base = tpow * dtinv;
                    UniPoly<FieldElement> spow =
                        UniPoly<FieldElement>::constant(FieldElement::one(k));
                    for (int j = 0; j < ell; ++j) {
                        cand_blocks[static_cast<size_t>(i * ell + j)].push_back(
                            base.scaled(BlockElem::from_poly(b, spow)));
                        if (j + 1 < ell)
                            spow = spow * UniPoly<FieldElement>::x(FieldElement::zero(k));
                    }
                    if (i < 2) tpow = tpow * tb;
                }
            }

            st.t = crt_series(dec, t_blocks);
            record(st, ObjectId::t, report_of(*st.t), "t");
            Series<AlgebraElement> dt_pub = crt_series(dec, dt_blocks);
            record(st, ObjectId::dt, report_of(dt_pub), "dt");

            std::vector<Series<FieldElement>> candidates;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < ell; ++j) {
                    candidates.push_back(
                        trace_series(cand_blocks[static_cast<size_t>(i * ell + j)], k));
                    record(st, ObjectId::t_i_ddt, report_of(candidates.back()),
                           "t_i_ddt(i=" + std::to_string(i) + ",j=" + std::to_string(j) + ")");
                }

            // greedy selection of three K-independent traces, (i, j) order
            const int rank_window = 3 * ell * (2 * g + 10);
            st.partials.clear();
            std::vector<const Series<FieldElement>*> chosen;
            for (const auto& cand : candidates) {
                if (static_cast<int>(chosen.size()) == 3) break;
                if (cand.is_zero_to_precision()) continue;
                int lo = cand.val_offset();
                int hi = cand.abs_prec();
                for (const auto* c : chosen) {
                    lo = std::min(lo, c->val_offset());
                    hi = std::min(hi, c->abs_prec());
                }
                hi = std::min(hi, lo + rank_window);
                Matrix<FieldElement> m = Matrix<FieldElement>::zero(
                    static_cast<int>(chosen.size()) + 1, hi - lo, FieldElement::zero(k));
                for (size_t r = 0; r < chosen.size(); ++r)
                    for (int e = std::max(lo, chosen[r]->val_offset()); e < hi; ++e)
                        m.at(static_cast<int>(r), e - lo) = chosen[r]->coeff(e);
                for (int e = std::max(lo, cand.val_offset()); e < hi; ++e)
                    m.at(static_cast<int>(chosen.size()), e - lo) = cand.coeff(e);
                if (rank(m) == static_cast<int>(chosen.size()) + 1) chosen.push_back(&cand);
            }
            if (chosen.size() < 3)
                throw RankDeficient("steps12: no K-independent triple among the traces");
            for (const auto* c : chosen) st.partials.push_back(*c);
            for (const auto& p : st.partials)
                record(st, ObjectId::partial_i, report_of(p), "partial_i");
            done = true;
        } catch (const SplitRequest& req) {
            dec.refine(req);
        }
    }
    if (!done) throw Error("steps12: block refinement failed to converge");
    st.timings_ms.emplace_back("steps12", ms_since(t0));
}

namespace {

// Rational row matrix from coefficient windows of K-series columns.
Matrix<Rational> columns_to_rows(const std::vector<Series<FieldElement>>& cols, int lo, int hi,
                                 const NumberField& k) {
    const int deg = k->degree();
    Matrix<Rational> m =
        Matrix<Rational>::zero((hi - lo) * deg, static_cast<int>(cols.size()), Rational(0));
    for (size_t c = 0; c < cols.size(); ++c) {
        const auto& s = cols[c];
        if (s.abs_prec() < hi)
            throw PrecisionExhausted("linear system column has too little precision");
        for (int e = std::max(lo, s.val_offset()); e < hi; ++e) {
            const FieldElement fc = s.coeff(e);
            for (int j = 0; j < deg; ++j)
                m.at((e - lo) * deg + j, static_cast<int>(c)) = fc.coords()[static_cast<size_t>(j)];
        }
    }
    return m;
}

HomForm form_from_coeffs(int nv, int d, const std::vector<HomForm::Exps>& monos,
                         const std::vector<Rational>& coeffs, size_t offset) {
    HomForm f(nv, d);
    for (size_t i = 0; i < monos.size(); ++i) f.add_term(monos[i], coeffs[offset + i]);
    return f;
}

UniPoly<FieldElement> promote_to(const UniPoly<Rational>& p, const NumberField& k) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) c.push_back(FieldElement::from_rational(k, p[i]));
    return UniPoly<FieldElement>(std::move(c));
}

} // namespace

void step3_find_conic(PipelineState& st) {
    const auto t0 = Clock::now();
    const long g = st.budget.g, B = st.budget.B;
    auto monos = monomial_series(st.partials, 2, static_cast<int>(B));
    for (const auto& s : monos)
        record(st, ObjectId::m_partials, report_of(s), "monomial_deg2", 2);

    int lo = 0;
    for (const auto& s : monos) lo = std::min(lo, s.val_offset());
    const int hi = static_cast<int>(st.budget.conic_threshold); // Q is pinned mod q^7
    Matrix<Rational> m = columns_to_rows(monos, lo, hi, st.input.field);
    auto ker = kernel(m);
    if (ker.size() != 1)
        throw KernelDimensionError("step3: conic kernel dimension is " +
                                   std::to_string(ker.size()) + ", expected 1");
    auto exps = HomForm::monomials(3, 2);
    HomForm q = form_from_coeffs(3, 2, exps, ker[0], 0).primitive_normalized();
    if (!conic_is_smooth(q)) throw SingularConic("step3: recovered conic is singular");

    // Nonzero sections of T^2 vanish at P to order at most 6, so
    // vanishing through the whole certified window forces exact zero.
    Series<FieldElement> qval = q.evaluate(st.partials);
    if (!qval.is_zero_to_precision())
        throw InconsistentInput("step3: Q(partials) does not vanish to precision");
    if (qval.abs_prec() < B - 2 * g - 4)
        throw PrecisionExhausted("step3: Q(partials) window below the table row");
    st.conic = q;
    st.timings_ms.emplace_back("step3", ms_since(t0));
}

void step4_h_series(PipelineState& st) {
    const auto t0 = Clock::now();
    const auto& p = st.partials;
    if (p[1].is_zero_to_precision())
        throw NonUnitLeadingCoefficient("step4: partial_1 vanishes to precision");
    Series<FieldElement> f = (p[0] * p[1].inverted()).with_twist(0);
    Series<FieldElement> df = f.derivative();
    Series<FieldElement> y = df * st.input.forms[0].inverted();
    Series<FieldElement> h = y * y;
    record(st, ObjectId::f, report_of(f), "f");
    record(st, ObjectId::df, report_of(df), "df");
    record(st, ObjectId::y, report_of(y), "y");
    record(st, ObjectId::h, report_of(h), "h");
    st.f_series = f;
    st.df_series = df;
    st.y_series = y;
    st.h_series = h;
    st.timings_ms.emplace_back("step4", ms_since(t0));
}

void step5_express_h(PipelineState& st) {
    const auto t0 = Clock::now();
    const long g = st.budget.g, B = st.budget.B;
    const int d = static_cast<int>(g) + 3;
    auto monos = monomial_series(st.partials, d, static_cast<int>(B));
    const size_t n = monos.size();
    std::vector<Series<FieldElement>> cols;
    cols.reserve(2 * n);
    for (const auto& s : monos) cols.push_back(s);
    for (const auto& s : monos) cols.push_back(-(*st.h_series * s));

    int lo = 0;
    const int hi = static_cast<int>(st.budget.f_hg_threshold); // vanish mod q^{8g+25}
    for (const auto& s : cols) lo = std::min(lo, s.val_offset());
    Matrix<Rational> m = columns_to_rows(cols, lo, hi, st.input.field);
    auto ker = kernel(m);
    auto exps = HomForm::monomials(3, d);

    for (const auto& v : ker) {
        HomForm big_g = form_from_coeffs(3, d, exps, v, n);
        if (big_g.is_zero()) continue;
        if (reduce_mod(big_g, *st.conic).is_zero()) continue;
        HomForm big_f = form_from_coeffs(3, d, exps, v, 0);

        // the residual must vanish through the whole window
        Series<FieldElement> hg = *st.h_series * big_g.evaluate(st.partials);
        Series<FieldElement> residual = big_f.evaluate(st.partials) - hg;
        if (!residual.is_zero_to_precision())
            throw InconsistentInput("step5: F - hG fails to vanish through the window");
        record(st, ObjectId::hG, report_of(hg), "hG");
        record(st, ObjectId::f_minus_hg, report_of(residual), "f_minus_hg");
        st.big_f = big_f;
        st.big_g = big_g;
        st.timings_ms.emplace_back("step5", ms_since(t0));
        return;
    }
    throw NoValidSolution("step5: every kernel vector has G in the conic ideal");
}

namespace {

struct WeierstrassFit {
    UniPoly<Rational> f;
    Series<FieldElement> x, yf;
};

// Shared tail of step 6 and reduce_to_p1: fit h = N(x)/D(x) with
// deg N, deg D <= 2g+6, strip square factors of N D, and build the
// series y_f with y_f^2 = f(x).
WeierstrassFit fit_weierstrass(PipelineState& st, const Series<FieldElement>& x) {
    const long g = st.budget.g, B = st.budget.B;
    const int dmax = static_cast<int>(2 * g) + 6;
    const NumberField& k = st.input.field;

    std::vector<Series<FieldElement>> xpow;
    xpow.push_back(Series<FieldElement>::constant(FieldElement::one(k), static_cast<int>(B)));
    for (int i = 1; i <= dmax; ++i) xpow.push_back(xpow.back() * x);

    std::vector<Series<FieldElement>> cols;
    for (int i = 0; i <= dmax; ++i) cols.push_back(xpow[static_cast<size_t>(i)]);
    for (int i = 0; i <= dmax; ++i) cols.push_back(-(*st.h_series * xpow[static_cast<size_t>(i)]));

    int lo = 0;
    const int hi = static_cast<int>(st.budget.f_hg_threshold);
    for (const auto& s : cols) lo = std::min(lo, s.val_offset());
    Matrix<Rational> m = columns_to_rows(cols, lo, hi, k);
    auto ker = kernel(m);
    for (const auto& v : ker) {
        UniPoly<Rational> nn, dd;
        {
            std::vector<Rational> nc(v.begin(), v.begin() + (dmax + 1));
            std::vector<Rational> dc(v.begin() + (dmax + 1), v.end());
            nn = UniPoly<Rational>(std::move(nc));
            dd = UniPoly<Rational>(std::move(dc));
        }
        if (nn.is_zero() || dd.is_zero()) continue;

        Series<FieldElement> nx = eval_poly_at_series(promote_to(nn, k), x);
        Series<FieldElement> dx = eval_poly_at_series(promote_to(dd, k), x);
        Series<FieldElement> res = nx - *st.h_series * dx;
        if (!res.is_zero_to_precision())
            throw InconsistentInput("weierstrass fit: N - h D fails to vanish through the window");

        UniPoly<Rational> nd = nn * dd;
        auto dec = squarefree_decompose(nd);
        UniPoly<Rational> f_raw = UniPoly<Rational>::constant(nd.leading());
        UniPoly<Rational> csq = UniPoly<Rational>::constant(Rational(1));
        for (const auto& [pfac, mult] : dec) {
            if (mult % 2 == 1) f_raw = f_raw * pfac;
            for (int t = 0; t < mult / 2; ++t) csq = csq * pfac;
        }
        if (!(f_raw * csq * csq == nd))
            throw Error("weierstrass fit: square-free split inconsistent");
        if (f_raw.degree() != 2 * g + 1 && f_raw.degree() != 2 * g + 2)
            throw InconsistentInput("weierstrass fit: stripped degree is " +
                                    std::to_string(f_raw.degree()));

        // normalize by squares only, preserving the curve: clear the
        // denominators, then strip the square part of the content
        mpz_class den = 1;
        for (int i = 0; i <= f_raw.degree(); ++i) den = int_lcm(den, f_raw[i].den());
        UniPoly<Rational> f1 = f_raw.scaled(Rational(mpq_class(den * den)));
        mpz_class content = 0;
        for (int i = 0; i <= f1.degree(); ++i) content = int_gcd(content, f1[i].num());
        mpz_class sq = 1;
        {
            mpz_class d0 = squarefree_part(content);
            mpz_class ratio = content / d0;
            mpz_sqrt(sq.get_mpz_t(), ratio.get_mpz_t());
            if (sq * sq != ratio) throw Error("weierstrass fit: content square part failed");
        }
        Rational lam(mpq_class(den, sq));
        UniPoly<Rational> f_out = f_raw.scaled(lam * lam);

        // y_f = lam y D(x)/c(x), so y_f^2 = f_out(x)
        Series<FieldElement> cx = eval_poly_at_series(promote_to(csq, k), x);
        Series<FieldElement> yf =
            (*st.y_series * dx * cx.inverted()).scaled(FieldElement::from_rational(k, lam));
        Series<FieldElement> check = yf * yf - eval_poly_at_series(promote_to(f_out, k), x);
        if (!check.is_zero_to_precision())
            throw Error("weierstrass fit: y_f^2 - f(x) fails to vanish");
        if (poly_gcd(f_out, f_out.derivative()).degree() != 0)
            throw Error("weierstrass fit: output is not separable");
        return WeierstrassFit{f_out, x, yf};
    }
    throw NoValidSolution("weierstrass fit: no kernel vector with nonzero N and D");
}

} // namespace

WeierstrassModel step6_even_genus(PipelineState& st) {
    const auto t0 = Clock::now();
    const long g = st.budget.g, B = st.budget.B;
    if (g % 2 != 0) throw Error("step6: requires even genus");
    const int half = static_cast<int>(g) / 2;
    const NumberField& k = st.input.field;

    auto monos = monomial_series(st.partials, half, static_cast<int>(B));
    const size_t m0 = monos.size();
    const int neq = static_cast<int>(g) - 1; // j = 2..g

    std::vector<Series<FieldElement>> w1cols, wjneg;
    for (const auto& s : monos) w1cols.push_back(st.input.forms[0] * s);

    const int hi = static_cast<int>(st.budget.step6_threshold); // vanish mod q^{4g-1}
    int lo = 0;
    for (const auto& s : w1cols) lo = std::min(lo, s.val_offset());
    std::vector<std::vector<Series<FieldElement>>> eq_scols;
    for (int j = 1; j <= neq; ++j) {
        std::vector<Series<FieldElement>> sc;
        for (const auto& s : monos) {
            sc.push_back(-(st.input.forms[static_cast<size_t>(j)] * s));
            lo = std::min(lo, sc.back().val_offset());
        }
        eq_scols.push_back(std::move(sc));
    }
    const int deg = k->degree();
    const int rows_per_eq = (hi - lo) * deg;
    const int ncols = static_cast<int>(m0) * (neq + 1);
    Matrix<Rational> m = Matrix<Rational>::zero(rows_per_eq * neq, ncols, Rational(0));
    for (int j = 0; j < neq; ++j) {
        Matrix<Rational> mr = columns_to_rows(w1cols, lo, hi, k);
        Matrix<Rational> ms = columns_to_rows(eq_scols[static_cast<size_t>(j)], lo, hi, k);
        for (int r = 0; r < rows_per_eq; ++r) {
            for (size_t c = 0; c < m0; ++c)
                m.at(j * rows_per_eq + r, j * static_cast<int>(m0) + static_cast<int>(c)) =
                    mr.at(r, static_cast<int>(c));
            for (size_t c = 0; c < m0; ++c)
                m.at(j * rows_per_eq + r, neq * static_cast<int>(m0) + static_cast<int>(c)) =
                    ms.at(r, static_cast<int>(c));
        }
    }
    auto ker = kernel(m);
    if (ker.empty()) throw DimensionError("step6: empty solution space");

    Matrix<Rational> sproj = Matrix<Rational>::zero(static_cast<int>(ker.size()),
                                                    static_cast<int>(m0), Rational(0));
    for (size_t r = 0; r < ker.size(); ++r)
        for (size_t c = 0; c < m0; ++c)
            sproj.at(static_cast<int>(r), static_cast<int>(c)) =
                ker[r][static_cast<size_t>(neq) * m0 + c];
    const int sdim = rank(sproj);
    if (sdim != 2)
        throw DimensionError("step6: dim of the S space is " + std::to_string(sdim) +
                             ", expected 2");

    auto exps = HomForm::monomials(3, half);
    std::vector<size_t> picks;
    {
        std::vector<std::vector<Rational>> rows;
        for (size_t r = 0; r < ker.size() && picks.size() < 2; ++r) {
            std::vector<Rational> srow(ker[r].begin() + static_cast<long>(neq * m0), ker[r].end());
            bool nonzero = false;
            for (const auto& x : srow) nonzero |= !x.is_zero();
            if (!nonzero) continue;
            Matrix<Rational> trial = Matrix<Rational>::zero(static_cast<int>(rows.size()) + 1,
                                                            static_cast<int>(m0), Rational(0));
            for (size_t rr = 0; rr < rows.size(); ++rr)
                for (size_t c = 0; c < m0; ++c)
                    trial.at(static_cast<int>(rr), static_cast<int>(c)) = rows[rr][c];
            for (size_t c = 0; c < m0; ++c)
                trial.at(static_cast<int>(rows.size()), static_cast<int>(c)) = srow[c];
            if (rank(trial) == static_cast<int>(rows.size()) + 1) {
                rows.push_back(srow);
                picks.push_back(r);
            }
        }
        if (picks.size() < 2) throw DimensionError("step6: fewer than two independent S forms");
    }

    // exactness of the bilinear identities for the first chosen solution
    {
        const auto& v = ker[picks[0]];
        HomForm s_form = form_from_coeffs(3, half, exps, v, static_cast<size_t>(neq) * m0);
        Series<FieldElement> sval = s_form.evaluate(st.partials);
        for (int j = 0; j < neq; ++j) {
            HomForm rj = form_from_coeffs(3, half, exps, v, static_cast<size_t>(j) * m0);
            Series<FieldElement> lhs = st.input.forms[0] * rj.evaluate(st.partials);
            Series<FieldElement> rhs = sval * st.input.forms[static_cast<size_t>(j + 1)];
            record(st, ObjectId::step6_bilinear, report_of(lhs), "w1*R_" + std::to_string(j + 2));
            record(st, ObjectId::step6_bilinear, report_of(rhs), "S*w_" + std::to_string(j + 2));
            if (!(lhs - rhs).is_zero_to_precision())
                throw InconsistentInput("step6: bilinear identity fails through the window");
        }
    }

    HomForm s1 = form_from_coeffs(3, half, exps, ker[picks[0]], static_cast<size_t>(neq) * m0);
    HomForm s2 = form_from_coeffs(3, half, exps, ker[picks[1]], static_cast<size_t>(neq) * m0);
    Series<FieldElement> s2val = s2.evaluate(st.partials);
    if (s2val.is_zero_to_precision())
        throw NonUnitLeadingCoefficient("step6: S2 vanishes on the curve to precision");
    Series<FieldElement> x = (s1.evaluate(st.partials) * s2val.inverted()).with_twist(0);

    WeierstrassFit fit = fit_weierstrass(st, x);
    st.x_series = fit.x;
    st.yf_series = fit.yf;
    st.timings_ms.emplace_back("step6", ms_since(t0));
    return WeierstrassModel{fit.f};
}

namespace {

// Binary-form column over E flattened into rational rows.
void append_binary_column(Matrix<Rational>& m, int col, const BinaryForm<FieldElement>& b,
                          const NumberField& e, int formal_degree) {
    const int edeg = e->degree();
    const FieldElement z = FieldElement::zero(e);
    for (int kk = 0; kk <= formal_degree; ++kk) {
        FieldElement c = b.coefficient(kk, z);
        for (int j = 0; j < edeg; ++j)
            m.at(kk * edeg + j, col) = c.coords()[static_cast<size_t>(j)];
    }
}

} // namespace

ParityDecomposition step7_parity_split(PipelineState& st) {
    const auto t0 = Clock::now();
    const long g = st.budget.g;
    if (g % 2 == 0) throw Error("step7: requires odd genus");
    const HomForm& q = *st.conic;
    const HomForm fg = *st.big_f * *st.big_g;

    ConicPoint pt = find_point_via_lines(q);
    ConicParam par = parametrize_conic(q, pt);
    const NumberField& e = par.e;
    const FieldElement ze = FieldElement::zero(e);
    const int edeg = e->degree();

    BinaryForm<FieldElement> pull = compose_ternary(fg, par.phi, ze);
    if (pull.affine.is_zero()) throw ParityFailure("step7: FG vanishes on the conic");
    auto dec = binary_squarefree(pull);
    BinaryForm<FieldElement> u{UniPoly<FieldElement>::constant(FieldElement::one(e)), 0};
    BinaryForm<FieldElement> v = u;
    for (const auto& [p, mult] : dec.factors) {
        if (mult % 2 == 1) u = u * p;
        for (int i = 0; i < mult / 2; ++i) v = v * p;
    }
    if (u.formal_degree != 2 * g + 2)
        throw ParityFailure("step7: odd part has degree " + std::to_string(u.formal_degree) +
                            ", expected 2g+2");
    if (v.formal_degree != g + 5)
        throw ParityFailure("step7: half part has degree " + std::to_string(v.formal_degree));

    // Solve M(phi) = lambda * target over Q for a ternary form of degree dm.
    auto solve_descends = [&](int dm, const BinaryForm<FieldElement>& target) {
        auto exps = HomForm::monomials(3, dm);
        const int nh = static_cast<int>(exps.size());
        const int formal = 2 * dm;
        Matrix<Rational> m =
            Matrix<Rational>::zero((formal + 1) * edeg, nh + edeg, Rational(0));
        for (int c = 0; c < nh; ++c) {
            HomForm mono(3, dm);
            mono.add_term(exps[static_cast<size_t>(c)], Rational(1));
            BinaryForm<FieldElement> comp = compose_ternary(mono, par.phi, ze);
            append_binary_column(m, c, comp, e, formal);
        }
        for (int tbi = 0; tbi < edeg; ++tbi) {
            FieldElement basis = tbi == 0 ? FieldElement::one(e) : FieldElement::generator(e);
            BinaryForm<FieldElement> scaled_target{target.affine.scaled(-basis), formal};
            append_binary_column(m, nh + tbi, scaled_target, e, formal);
        }
        auto ker = kernel(m);
        for (const auto& kv : ker) {
            std::vector<Rational> lam(kv.begin() + nh, kv.end());
            bool lam_zero = true;
            for (const auto& x : lam) lam_zero &= x.is_zero();
            if (lam_zero) continue;
            HomForm out(3, dm);
            for (size_t i = 0; i < exps.size(); ++i) out.add_term(exps[i], kv[i]);
            FieldElement lambda = edeg == 2 ? FieldElement(e, {lam[0], lam[1]})
                                            : FieldElement::from_rational(e, lam[0]);
            return std::make_pair(out, lambda);
        }
        throw NoValidSolution("step7: no rational form descends to the target divisor");
    };

    auto [h_form, lambda] = solve_descends(static_cast<int>(g) + 1, u);
    auto [j_form, mu] = solve_descends((static_cast<int>(g) + 5) / 2, v);

    // FG o phi = unit u v^2, H o phi = lambda u, (J o phi)^2 = mu^2 v^2,
    // so FG = (unit / (lambda mu^2)) H J^2 on the conic.
    FieldElement alpha_e = dec.unit * (lambda * mu * mu).inverse();
    Rational alpha;
    if (!alpha_e.as_rational(alpha)) throw Error("step7: alpha is not rational");

    HomForm h_final = h_form.scaled(alpha);
    // exact congruence, no precision involved
    HomForm resid = reduce_mod(fg - h_final * j_form * j_form, q);
    if (!resid.is_zero()) throw ParityFailure("step7: FG - alpha H J^2 is nonzero modulo Q");

    if (auto nu_ok = nu_projection_degree_check(q, fg, static_cast<int>(g)); nu_ok && !*nu_ok)
        throw ParityFailure("step7: nu-projection parity check failed");

    st.split_h = h_form;
    st.split_j = j_form;
    st.alpha = alpha;
    st.timings_ms.emplace_back("step7", ms_since(t0));
    ParityDecomposition out;
    out.h = h_form;
    out.j = j_form;
    out.alpha = alpha;
    out.model = ConicModel{q, h_final};
    return out;
}

std::optional<bool> nu_projection_degree_check(const HomForm& q, const HomForm& fg, int g) {
    for (int var = 0; var < 3; ++var) {
        HomForm::Exps sq(3, 0);
        sq[static_cast<size_t>(var)] = 2;
        Rational c0 = q.coeff(sq);
        if (c0.is_zero()) continue;
        int vj = -1, vk = -1;
        for (int i = 0; i < 3; ++i)
            if (i != var) (vj < 0 ? vj : vk) = i;
        // write a ternary form as a polynomial in x_var whose coefficients
        // are affine polynomials in x_vj (at x_vk = 1)
        auto slice = [&](const HomForm& f, int dtot) {
            std::vector<std::vector<Rational>> cs(
                static_cast<size_t>(dtot + 1),
                std::vector<Rational>(static_cast<size_t>(dtot + 1), Rational(0)));
            for (const auto& [e2, cc] : f.terms()) {
                int t = e2[static_cast<size_t>(var)];
                int aj = e2[static_cast<size_t>(vj)];
                cs[static_cast<size_t>(t)][static_cast<size_t>(aj)] = cc;
            }
            std::vector<UniPoly<Rational>> polys;
            for (int t = 0; t <= dtot; ++t) polys.push_back(UniPoly<Rational>(cs[static_cast<size_t>(t)]));
            return polys;
        };
        auto qs = slice(q, 2);
        auto fgs = slice(fg, fg.degree());
        UniPoly<Rational> q1 = qs[1].scaled(c0.inverse());
        UniPoly<Rational> q0 = qs[0].scaled(c0.inverse());
        // reduce FG modulo x^2 = -q1 x - q0: value = A x + B
        UniPoly<Rational> a, b;
        bool first = true;
        for (int t = fg.degree(); t >= 0; --t) {
            if (first) {
                b = fgs[static_cast<size_t>(t)];
                first = false;
                continue;
            }
            UniPoly<Rational> a2 = b - a * q1;
            UniPoly<Rational> b2 = fgs[static_cast<size_t>(t)] - a * q0;
            a = std::move(a2);
            b = std::move(b2);
        }
        // norm of A x + B in the rank-2 algebra: B^2 - A B q1 + A^2 q0
        UniPoly<Rational> norm = b * b - a * b * q1 + a * a * q0;
        if (norm.is_zero()) continue;
        BinaryForm<Rational> nu{norm, 2 * fg.degree()};
        auto dec = binary_squarefree(nu);
        int odd = 0;
        for (const auto& [p, mult] : dec.factors)
            if (mult % 2 == 1) odd += p.formal_degree;
        return odd == 2 * g + 2;
    }
    return std::nullopt;
}

WeierstrassModel reduce_to_p1(PipelineState& st, const ConicModel& model,
                              const std::vector<Rational>& point) {
    const auto t0 = Clock::now();
    if (point.size() != 3) throw PointNotOnConic("reduce_to_p1: point needs three coordinates");
    {
        Rational acc(0);
        Matrix<Rational> gq = gram_matrix(model.q);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                acc += gq.at(i, j) * point[static_cast<size_t>(i)] * point[static_cast<size_t>(j)];
        if (!acc.is_zero()) throw PointNotOnConic("reduce_to_p1: point is not on the conic");
    }
    ConicPoint pt;
    pt.e = rational_field();
    pt.d = 1;
    for (const auto& c : point) pt.coords.push_back(FieldElement::from_rational(pt.e, c));
    ConicParam par = parametrize_conic(model.q, pt);

    const NumberField& k = st.input.field;
    auto lin = [&](int row) {
        Series<FieldElement> acc = Series<FieldElement>::zero_to_prec(
            st.partials[0].abs_prec(), st.partials[0].twist(), st.partials[0].exemplar());
        for (int i = 0; i < 3; ++i) {
            Rational c;
            par.proj[static_cast<size_t>(row)][static_cast<size_t>(i)].as_rational(c);
            if (c.is_zero()) continue;
            acc = acc + st.partials[static_cast<size_t>(i)].scaled(FieldElement::from_rational(k, c));
        }
        return acc;
    };
    Series<FieldElement> den = lin(1);
    if (den.is_zero_to_precision())
        throw NonUnitLeadingCoefficient("reduce_to_p1: projection denominator vanishes");
    Series<FieldElement> x = (lin(0) * den.inverted()).with_twist(0);
    WeierstrassFit fit = fit_weierstrass(st, x);
    st.x_series = fit.x;
    st.yf_series = fit.yf;
    st.timings_ms.emplace_back("reduce_to_p1", ms_since(t0));
    return WeierstrassModel{fit.f};
}

namespace {

PointImage image_from_series(const std::vector<Series<FieldElement>>& coords) {
    PointImage out;
    bool all_zero = true;
    int v = 0;
    for (const auto& s : coords) {
        if (s.is_zero_to_precision()) continue;
        v = all_zero ? s.val_offset() : std::min(v, s.val_offset());
        all_zero = false;
    }
    if (all_zero) throw Error("image_of_point: all coordinates vanish");
    for (const auto& s : coords) {
        if (s.is_zero_to_precision() || s.val_offset() > v)
            out.coords.push_back(zero_like(s.exemplar()));
        else
            out.coords.push_back(s.coeff(v));
    }
    return out;
}

} // namespace

RunReport reconstruct(const ProblemInput& input, const ReconstructOptions& opts) {
    validate_problem_input(input);
    Budget budget = make_budget(input.genus, input.precision, opts.allow_low_precision);

    RunReport report;
    const auto t0 = Clock::now();

    CurveClass cls;
    if (input.genus == 2) {
        cls = CurveClass::Hyperelliptic;
    } else {
        CanonicalIdealComponent i2 = canonical_ideal_component(input, 2);
        cls = detect_hyperelliptic(input.genus, static_cast<int>(i2.basis.size()));
    }
    std::vector<std::pair<std::string, double>> timings;
    timings.emplace_back("detect", ms_since(t0));

    if (cls == CurveClass::Nonhyperelliptic) {
        CanonicalModel cm = nonhyperelliptic_model(input);
        report.model.branch = CurveModel::Branch::Nonhyperelliptic;
        report.model.generators = cm.generators;
        report.point_image = image_from_series(input.forms);
        report.timings_ms = timings;
        return report;
    }

    PipelineState st;
    st.input = input;
    st.budget = budget;
    steps12_ordered_basis_and_traces(st);
    step3_find_conic(st);
    step4_h_series(st);

    if (input.genus % 2 == 0) {
        WeierstrassModel wm = step6_even_genus(st);
        report.model.branch = CurveModel::Branch::HyperellipticPoly;
        report.model.weierstrass = wm;
        if (st.x_series->val_offset() < 0 || st.yf_series->val_offset() < 0) {
            report.point_image.at_infinity = true;
        } else {
            report.point_image.xy = {st.x_series->coeff(0), st.yf_series->coeff(0)};
        }
    } else {
        step5_express_h(st);
        ParityDecomposition pd = step7_parity_split(st);
        report.model.branch = CurveModel::Branch::HyperellipticConic;
        report.model.conic = pd.model;
        report.point_image = image_from_series(st.partials);
        if (opts.rational_point) {
            WeierstrassModel red = reduce_to_p1(st, pd.model, *opts.rational_point);
            report.reduced = red;
            report.reduced_point = opts.rational_point;
        }
        if (opts.diagonalize) {
            DiagonalizedConic dg = diagonalize_conic(pd.model.q);
            report.q_diagonal = dg.q_diag;
            report.h_diagonal = pd.model.h.substituted(dg.change);
            report.diag_change = dg.change;
        }
    }
    for (auto& t : st.timings_ms) timings.push_back(t);
    report.conformance = st.conformance;
    report.timings_ms = timings;
    return report;
}

VerifyOutcome verify_model(const ProblemInput& input, const CurveModel& model,
                           const std::optional<std::vector<Rational>>& reduced_point,
                           const std::optional<WeierstrassModel>& reduced) {
    VerifyOutcome out;
    out.pass = true;
    auto fail = [&](const std::string& why) {
        out.pass = false;
        out.failures.push_back(why);
    };
    try {
        validate_problem_input(input);
        const long g = input.genus;
        if (model.branch == CurveModel::Branch::Nonhyperelliptic) {
            if (model.generators.empty()) fail("no generators in the model");
            for (const auto& f : model.generators) {
                if (f.num_vars() != input.genus) {
                    fail("generator variable count mismatch");
                    continue;
                }
                Series<FieldElement> v = f.evaluate(input.forms);
                if (!is_zero_as_section(v, f.degree() * (2 * g - 2)))
                    fail("generator fails to vanish as a section: " + f.str());
            }
            return out;
        }

        Budget budget = make_budget(input.genus, input.precision, true);
        PipelineState st;
        st.input = input;
        st.budget = budget;
        steps12_ordered_basis_and_traces(st);
        step3_find_conic(st);
        step4_h_series(st);

        if (model.branch == CurveModel::Branch::HyperellipticPoly) {
            if (g % 2 != 0) {
                fail("a Weierstrass model for odd genus cannot be re-derived without the point");
                return out;
            }
            if (!model.weierstrass) {
                fail("missing polynomial in the model");
                return out;
            }
            step6_even_genus(st);
            const UniPoly<Rational>& f = model.weierstrass->f;
            if (f.degree() != 2 * g + 1 && f.degree() != 2 * g + 2)
                fail("model degree out of range");
            else if (poly_gcd(f, f.derivative()).degree() != 0)
                fail("model polynomial is not separable");
            const NumberField& k = input.field;
            Series<FieldElement> fx = eval_poly_at_series(promote_to(f, k), *st.x_series);
            Series<FieldElement> res = *st.yf_series * *st.yf_series - fx;
            if (!res.is_zero_to_precision()) fail("y^2 - f(x) does not vanish through the window");
            return out;
        }

        if (!model.conic) {
            fail("missing conic data in the model");
            return out;
        }
        step5_express_h(st);
        ParityDecomposition pd = step7_parity_split(st);
        if (!(pd.model.q == model.conic->q)) fail("recomputed conic differs from the model");
        if (!conic_is_smooth(model.conic->q)) fail("model conic is singular");
        HomForm resid = reduce_mod(*st.big_f * *st.big_g - model.conic->h * *st.split_j * *st.split_j,
                                   model.conic->q);
        if (!resid.is_zero()) fail("FG - H J^2 nonzero modulo Q for the model's H");
        {
            Series<FieldElement> gd = st.big_g->evaluate(st.partials);
            Series<FieldElement> jd = st.split_j->evaluate(st.partials);
            if (jd.is_zero_to_precision()) {
                fail("J vanishes on the curve to precision");
                return out;
            }
            Series<FieldElement> yw = *st.y_series * gd * jd.inverted();
            Series<FieldElement> rhs = model.conic->h.evaluate(st.partials);
            Series<FieldElement> res = yw * yw - rhs;
            if (!res.is_zero_to_precision()) fail("y_w^2 - H fails to vanish through the window");
        }
        if (reduced && reduced_point) {
            reduce_to_p1(st, *model.conic, *reduced_point);
            const UniPoly<Rational>& f = reduced->f;
            const NumberField& k = input.field;
            Series<FieldElement> fx = eval_poly_at_series(promote_to(f, k), *st.x_series);
            Series<FieldElement> res = *st.yf_series * *st.yf_series - fx;
            if (!res.is_zero_to_precision()) fail("reduced model identity fails");
        }
        return out;
    } catch (const Error& e) {
        fail(std::string("verification raised: ") + e.what());
        return out;
    }
}

} // namespace recurve
