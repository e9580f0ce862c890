#include "recurve/conic.hpp"

#include "recurve/errors.hpp"

namespace recurve {

Matrix<Rational> gram_matrix(const HomForm& q) {
    if (q.num_vars() != 3 || q.degree() != 2) throw Error("gram_matrix: expects a ternary quadratic");
    Matrix<Rational> g = Matrix<Rational>::zero(3, 3, Rational(0));
    for (const auto& [e, c] : q.terms()) {
        int i = -1, j = -1;
        for (int k = 0; k < 3; ++k) {
            if (e[static_cast<size_t>(k)] == 2) { i = j = k; }
            if (e[static_cast<size_t>(k)] == 1) { (i < 0 ? i : j) = k; }
        }
        if (i == j) {
            g.at(i, i) = c;
        } else {
            g.at(i, j) = c * Rational(1, 2);
            g.at(j, i) = c * Rational(1, 2);
        }
    }
    return g;
}

bool conic_is_smooth(const HomForm& q) {
    return !det(gram_matrix(q), Rational(0)).is_zero();
}

std::optional<FieldElement> field_sqrt(const FieldElement& x) {
    const NumberField& f = x.parent();
    if (f->degree() == 1) {
        Rational r;
        x.as_rational(r);
        Rational s;
        if (!rational_sqrt(r, s)) return std::nullopt;
        return FieldElement::from_rational(f, s);
    }
    if (f->degree() != 2) throw Error("field_sqrt: only degree <= 2 fields supported");
    // theta^2 = -p theta - r for min poly z^2 + p z + r; x = a + b theta.
    const Rational p = f->min_poly()[1], r = f->min_poly()[0];
    const Rational a = x.coords()[0], b = x.coords()[1];
    auto mk = [&](const Rational& al, const Rational& be) {
        return FieldElement(f, {al, be});
    };
    auto verify = [&](const FieldElement& c) -> std::optional<FieldElement> {
        if (c * c == x) return c;
        return std::nullopt;
    };
    if (b.is_zero()) {
        Rational s;
        if (rational_sqrt(a, s)) return mk(s, Rational(0));
        // x = (beta theta)^2 = beta^2 theta^2: solve beta^2 (theta^2) = a
        // theta^2 = -p theta - r is rational only when p = 0.
        if (p.is_zero()) {
            if (rational_sqrt(a / (-r), s)) {
                auto c = verify(mk(Rational(0), s));
                if (c) return c;
            }
        } else {
            // alpha = p beta / 2 branch of the general system below.
            Rational denom = p * p * Rational(1, 4) - r;
            if (!denom.is_zero() && rational_sqrt(a / denom, s)) {
                auto c = verify(mk(p * s * Rational(1, 2), s));
                if (c) return c;
            }
        }
        return std::nullopt;
    }
    // beta != 0: z := beta^2 solves (p^2-4r) z^2 + (2bp-4a) z + b^2 = 0.
    const Rational A2 = p * p - Rational(4) * r;
    const Rational B2 = Rational(2) * b * p - Rational(4) * a;
    const Rational C2 = b * b;
    std::vector<Rational> zroots;
    if (A2.is_zero()) {
        if (!B2.is_zero()) zroots.push_back(-C2 / B2);
    } else {
        Rational disc = B2 * B2 - Rational(4) * A2 * C2;
        Rational sd;
        if (!rational_sqrt(disc, sd)) return std::nullopt;
        zroots.push_back((-B2 + sd) / (Rational(2) * A2));
        zroots.push_back((-B2 - sd) / (Rational(2) * A2));
    }
    for (const Rational& z : zroots) {
        Rational beta;
        if (z.sign() <= 0 || !rational_sqrt(z, beta)) continue;
        for (const Rational& bb : {beta, -beta}) {
            Rational alpha = (b + p * bb * bb) / (Rational(2) * bb);
            auto c = verify(mk(alpha, bb));
            if (c) return c;
        }
    }
    return std::nullopt;
}

FieldElement conjugate_quadratic(const FieldElement& x) {
    const NumberField& f = x.parent();
    if (f->degree() == 1) return x;
    if (f->degree() != 2) throw Error("conjugate_quadratic: only degree <= 2 fields supported");
    // theta -> -p - theta for min poly z^2 + p z + r.
    const Rational p = f->min_poly()[1];
    const Rational a = x.coords()[0], b = x.coords()[1];
    return FieldElement(f, {a - b * p, -b});
}

mpz_class squarefree_part(const mpz_class& n) {
    if (n == 0) throw Error("squarefree_part: zero");
    mpz_class m = abs(n);
    mpz_class out = (n < 0) ? mpz_class(-1) : mpz_class(1);
    for (mpz_class d = 2; d * d <= m && d <= 100000; ++d) {
        mpz_class dd = d * d;
        while (m % dd == 0) m /= dd;
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), m.get_mpz_t());
        m = 1;
    }
    return out * m;
}

namespace {

Rational bilinear(const Matrix<Rational>& g, const std::array<Rational, 3>& x,
                  const std::array<Rational, 3>& y) {
    Rational acc(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += g.at(i, j) * x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
    return acc;
}

} // namespace

ConicPoint find_point_via_lines(const HomForm& q) {
    if (!conic_is_smooth(q)) throw SingularConic("find_point_via_lines: Gram determinant vanishes");
    Matrix<Rational> g = gram_matrix(q);
    const std::array<std::array<std::array<Rational, 3>, 2>, 4> lines = {{
        {{{Rational(0), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)}}}, // a=0
        {{{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(0), Rational(1)}}}, // b=0
        {{{Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(1), Rational(0)}}}, // c=0
        {{{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)}}}, // a-b=0
    }};
    for (const auto& line : lines) {
        const auto& v1 = line[0];
        const auto& v2 = line[1];
        // Q(u v1 + v v2) = al u^2 + be uv + ga v^2
        Rational al = bilinear(g, v1, v1);
        Rational be = Rational(2) * bilinear(g, v1, v2);
        Rational ga = bilinear(g, v2, v2);
        Rational disc = be * be - Rational(4) * al * ga;
        if (disc.is_zero()) continue; // degenerate restriction
        ConicPoint pt;
        Rational u, v; // root over E
        Rational sd;
        if (rational_sqrt(disc, sd)) {
            pt.e = rational_field();
            pt.d = 1;
            if (al.is_zero()) { u = Rational(1); v = Rational(0); }
            else { u = (-be + sd) / (Rational(2) * al); v = Rational(1); }
            pt.coords.reserve(3);
            for (int i = 0; i < 3; ++i)
                pt.coords.push_back(FieldElement::from_rational(
                    pt.e, u * v1[static_cast<size_t>(i)] + v * v2[static_cast<size_t>(i)]));
            return pt;
        }
        // disc = (s/m)^2 d0 with d0 square-free
        mpz_class nm = disc.num() * disc.den();
        mpz_class d0 = squarefree_part(nm);
        pt.d = d0;
        pt.e = make_number_field(
            UniPoly<Rational>(std::vector<Rational>{Rational(mpq_class(-d0)), Rational(0), Rational(1)}));
        const FieldElement theta = FieldElement::generator(pt.e);
        // sqrt(disc) = (s0/den) theta where s0^2 d0 = num*den
        mpz_class s0;
        {
            mpz_class ratio = nm / d0;
            mpz_sqrt(s0.get_mpz_t(), ratio.get_mpz_t());
            if (s0 * s0 != ratio) throw Error("find_point_via_lines: square part extraction failed");
        }
        FieldElement sqrt_disc = theta * Rational(mpq_class(s0, disc.den().get_mpz_t() ? disc.den() : 1));
        if (al.is_zero()) throw Error("find_point_via_lines: unexpected degenerate branch");
        FieldElement uu = (FieldElement::from_rational(pt.e, -be) + sqrt_disc) *
                          FieldElement::from_rational(pt.e, (Rational(2) * al).inverse());
        pt.coords.reserve(3);
        for (int i = 0; i < 3; ++i)
            pt.coords.push_back(uu * v1[static_cast<size_t>(i)] +
                                FieldElement::from_rational(pt.e, v2[static_cast<size_t>(i)]));
        // verify Q(pt) = 0 over E
        {
            FieldElement acc = FieldElement::zero(pt.e);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    acc = acc + pt.coords[static_cast<size_t>(i)] * pt.coords[static_cast<size_t>(j)] *
                              g.at(i, j);
            if (!acc.is_zero()) throw Error("find_point_via_lines: point fails the conic equation");
        }
        return pt;
    }
    throw Error("find_point_via_lines: all four lines gave degenerate restrictions");
}

ConicParam parametrize_conic(const HomForm& q, const ConicPoint& pt) {
    const NumberField& e = pt.e;
    Matrix<Rational> gq = gram_matrix(q);
    Matrix<FieldElement> g = Matrix<FieldElement>::zero(3, 3, FieldElement::zero(e));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g.at(i, j) = FieldElement::from_rational(e, gq.at(i, j));

    auto bil = [&](const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) {
        FieldElement acc = FieldElement::zero(e);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc = acc + g.at(i, j) * x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
        return acc;
    };

    // Directions: the two standard basis vectors other than the first
    // coordinate in which the point is nonzero.
    int j0 = -1;
    for (int i = 0; i < 3; ++i)
        if (!pt.coords[static_cast<size_t>(i)].is_zero()) { j0 = i; break; }
    if (j0 < 0) throw Error("parametrize_conic: zero point");
    std::vector<std::vector<FieldElement>> dirs;
    for (int i = 0; i < 3; ++i) {
        if (i == j0) continue;
        std::vector<FieldElement> ei(3, FieldElement::zero(e));
        ei[static_cast<size_t>(i)] = FieldElement::one(e);
        dirs.push_back(std::move(ei));
    }

    // phi(u,v) = Q(m) p0 - Bil(p0, m) m for m = u dir0 + v dir1:
    // per coordinate a binary quadratic over E.
    const FieldElement quu = bil(dirs[0], dirs[0]);
    const FieldElement quv = FieldElement::from_rational(e, Rational(2)) * bil(dirs[0], dirs[1]);
    const FieldElement qvv = bil(dirs[1], dirs[1]);
    const FieldElement bu = FieldElement::from_rational(e, Rational(2)) * bil(pt.coords, dirs[0]);
    const FieldElement bv = FieldElement::from_rational(e, Rational(2)) * bil(pt.coords, dirs[1]);

    ConicParam par;
    par.e = e;
    par.d = pt.d;
    for (int i = 0; i < 3; ++i) {
        const FieldElement p0i = pt.coords[static_cast<size_t>(i)];
        const FieldElement d0i = dirs[0][static_cast<size_t>(i)];
        const FieldElement d1i = dirs[1][static_cast<size_t>(i)];
        // coefficient of u^2, uv, v^2 in phi_i(u, v)
        FieldElement c2 = quu * p0i - bu * d0i;
        FieldElement c1 = quv * p0i - bu * d1i - bv * d0i;
        FieldElement c0 = qvv * p0i - bv * d1i;
        // affine in s = u/v: c2 s^2 + c1 s + c0
        par.phi.push_back(BinaryForm<FieldElement>{
            UniPoly<FieldElement>(std::vector<FieldElement>{c0, c1, c2}), 2});
    }
    {
        // no common factor allowed
        UniPoly<FieldElement> gpoly = par.phi[0].affine;
        int min_inf = par.phi[0].infinity_mult();
        for (int i = 1; i < 3; ++i) {
            if (gpoly.is_zero()) gpoly = par.phi[static_cast<size_t>(i)].affine;
            else if (!par.phi[static_cast<size_t>(i)].affine.is_zero())
                gpoly = poly_gcd(gpoly, par.phi[static_cast<size_t>(i)].affine);
            min_inf = std::min(min_inf, par.phi[static_cast<size_t>(i)].infinity_mult());
        }
        if (gpoly.is_zero() || gpoly.degree() > 0 || min_inf > 0)
            throw DegenerateParametrization("parametrize_conic: parametrization has a common factor");
    }

    // Projection: dual functionals of {p0, dir0, dir1}: rows 2 and 3 of
    // the inverse of the basis matrix give (u : v).
    Matrix<FieldElement> basis = Matrix<FieldElement>::zero(3, 3, FieldElement::zero(e));
    for (int i = 0; i < 3; ++i) {
        basis.at(i, 0) = pt.coords[static_cast<size_t>(i)];
        basis.at(i, 1) = dirs[0][static_cast<size_t>(i)];
        basis.at(i, 2) = dirs[1][static_cast<size_t>(i)];
    }
    Matrix<FieldElement> inv = inverse(basis, FieldElement::zero(e));
    for (int r = 0; r < 2; ++r) {
        std::vector<FieldElement> row;
        for (int c = 0; c < 3; ++c) row.push_back(inv.at(r + 1, c));
        par.proj.push_back(std::move(row));
    }

    // Sanity: Q(phi(u,v)) must vanish identically.
    {
        HomForm qf = q;
        auto z = compose_ternary(qf, par.phi, FieldElement::zero(e));
        if (!z.affine.is_zero()) throw Error("parametrize_conic: image not on the conic");
    }
    return par;
}

std::optional<FunctionSqrt> rational_function_sqrt(const UniPoly<FieldElement>& num,
                                                   const UniPoly<FieldElement>& den) {
    if (num.is_zero() || den.is_zero()) throw Error("rational_function_sqrt: zero input");
    UniPoly<FieldElement> w = num * den;
    auto dec = squarefree_decompose(w);
    UniPoly<FieldElement> half = UniPoly<FieldElement>::constant(one_like(w.leading()));
    for (const auto& [p, mult] : dec) {
        if (mult % 2 != 0) return std::nullopt;
        for (int i = 0; i < mult / 2; ++i) half = half * p;
    }
    auto lc = field_sqrt(w.leading());
    if (!lc) return std::nullopt;
    return FunctionSqrt{half.scaled(*lc), den};
}

DiagonalizedConic diagonalize_conic(const HomForm& q) {
    if (!conic_is_smooth(q)) throw SingularConic("diagonalize_conic: singular conic");
    Matrix<Rational> g = gram_matrix(q);
    Matrix<Rational> p = Matrix<Rational>::identity(3, Rational(0));
    // Symmetric congruence reduction: P^T G P diagonal.
    for (int i = 0; i < 3; ++i) {
        if (g.at(i, i).is_zero()) {
            int swap = -1;
            for (int j = i + 1; j < 3; ++j)
                if (!g.at(j, j).is_zero()) { swap = j; break; }
            if (swap >= 0) {
                // exchange variables i and swap (columns of P)
                for (int r = 0; r < 3; ++r) std::swap(p.at(r, i), p.at(r, swap));
                for (int r = 0; r < 3; ++r) std::swap(g.at(r, i), g.at(r, swap));
                for (int c = 0; c < 3; ++c) std::swap(g.at(i, c), g.at(swap, c));
            } else {
                int j = -1;
                for (int jj = i + 1; jj < 3; ++jj)
                    if (!g.at(i, jj).is_zero()) { j = jj; break; }
                if (j < 0) throw SingularConic("diagonalize_conic: degenerate block");
                // x_i -> x_i + x_j puts 2 g[i][j] on the diagonal
                for (int r = 0; r < 3; ++r) p.at(r, i) += p.at(r, j);
                for (int c = 0; c < 3; ++c) g.at(i, c) += g.at(j, c);
                for (int r = 0; r < 3; ++r) g.at(r, i) += g.at(r, j);
            }
        }
        const Rational piv = g.at(i, i);
        for (int j = i + 1; j < 3; ++j) {
            const Rational f = g.at(i, j) / piv;
            if (f.is_zero()) continue;
            // x_j -> x_j - f x_i
            for (int r = 0; r < 3; ++r) p.at(r, j) -= f * p.at(r, i);
            for (int c = 0; c < 3; ++c) g.at(j, c) -= f * g.at(i, c);
            for (int r = 0; r < 3; ++r) g.at(r, j) -= f * g.at(r, i);
        }
    }
    // Scale columns: d_i x^2 with d_i = n/m becomes square-free after
    // multiplying the variable by m and stripping the square part.
    for (int i = 0; i < 3; ++i) {
        Rational di = g.at(i, i);
        mpz_class nm = di.num() * di.den();
        mpz_class d0 = squarefree_part(nm);
        // (s/k)^2 d0 = di for suitable rational s/k; scale column by k/s... -> di scale^2 = d0
        mpz_class ratio_num = abs(nm / d0);
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), ratio_num.get_mpz_t());
        if (s * s != ratio_num) throw Error("diagonalize_conic: square part extraction failed");
        // di * (den/s)^2 = d0 since di = nm/den^2 = d0 s^2/den^2
        Rational scale(mpq_class(di.den(), s));
        for (int r = 0; r < 3; ++r) p.at(r, i) *= scale;
        g.at(i, i) = di * scale * scale;
    }
    HomForm qd(3, 2);
    for (int i = 0; i < 3; ++i) {
        HomForm::Exps e(3, 0);
        e[static_cast<size_t>(i)] = 2;
        qd.add_term(e, g.at(i, i));
    }
    // cross-check: q(change y) == q_diag(y)
    if (!(q.substituted(p) == qd)) throw Error("diagonalize_conic: congruence verification failed");
    return {qd, p};
}

} // namespace recurve
