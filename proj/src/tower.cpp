#include "recurve/tower.hpp"

#include "recurve/errors.hpp"
#include "recurve/matrix.hpp"

namespace recurve {

namespace {

// Multiplication matrix of x on the power basis of its field.
Matrix<Rational> mult_matrix(const FieldElement& x) {
    const NumberField& k = x.parent();
    const int n = k->degree();
    Matrix<Rational> m = Matrix<Rational>::zero(n, n, Rational(0));
    FieldElement cur = x;
    const FieldElement gen = FieldElement::generator(k);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) m.at(i, j) = cur.coords()[static_cast<size_t>(i)];
        if (j + 1 < n) cur = cur * gen;
    }
    return m;
}

UniPoly<Rational> lagrange_interpolate(const std::vector<Rational>& xs,
                                       const std::vector<Rational>& ys) {
    UniPoly<Rational> acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        UniPoly<Rational> num = UniPoly<Rational>::constant(Rational(1));
        Rational den(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (i == j) continue;
            num = num * UniPoly<Rational>(std::vector<Rational>{-xs[j], Rational(1)});
            den *= xs[i] - xs[j];
        }
        acc = acc + num.scaled(ys[i] / den);
    }
    return acc;
}

} // namespace

FieldElement embed_via(const FieldElement& x, const FieldElement& gen_image) {
    const NumberField& target = gen_image.parent();
    FieldElement acc = FieldElement::zero(target);
    const auto& c = x.coords();
    for (size_t i = c.size(); i-- > 0;)
        acc = acc * gen_image + FieldElement::from_rational(target, c[i]);
    return acc;
}

FlattenResult flatten_tower(const NumberField& base, const UniPoly<FieldElement>& ext) {
    if (ext.degree() < 1) throw Error("flatten_tower: ext_min_poly must have degree >= 1");
    if (!ext.leading().is_one()) throw Error("flatten_tower: ext_min_poly must be monic");

    const int m = base->degree();
    const int k = ext.degree();

    if (k == 1)
        return {base, FieldElement::generator(base), -ext[0]};

    // Square-freeness over the base is a precondition we can check.
    {
        UniPoly<FieldElement> g = poly_gcd(ext, ext.derivative());
        if (g.degree() != 0) throw Error("flatten_tower: ext_min_poly not square-free over base");
    }

    if (m == 1) {
        // Base is Q; the extension polynomial has rational entries.
        std::vector<Rational> c;
        c.reserve(static_cast<size_t>(k + 1));
        for (int i = 0; i <= k; ++i) {
            Rational r;
            if (!ext[i].as_rational(r)) throw Error("flatten_tower: non-rational coefficient over Q");
            c.push_back(r);
        }
        NumberField f = make_number_field(UniPoly<Rational>(std::move(c)));
        Rational base_val;
        FieldElement::generator(base).as_rational(base_val);
        return {f, FieldElement::from_rational(f, base_val), FieldElement::generator(f)};
    }

    // chi(T) = Norm_{K/Q} (ext evaluated at v = T - u), the characteristic
    // polynomial of w = v + u.  Substituting v = T - u gives an element of
    // K[T]; its norm is det of sum_j multmat(c_j) T^j, found by
    // interpolation at mk+1 rational points.
    const FieldElement u = FieldElement::generator(base);
    const FieldElement one = FieldElement::one(base);
    UniPoly<FieldElement> t_minus_u(std::vector<FieldElement>{-u, one});
    UniPoly<FieldElement> g_of_t;
    {
        UniPoly<FieldElement> acc = UniPoly<FieldElement>::constant(ext.leading());
        for (int i = ext.degree() - 1; i >= 0; --i)
            acc = acc * t_minus_u + UniPoly<FieldElement>::constant(ext[i]);
        g_of_t = std::move(acc);
    }
    std::vector<Matrix<Rational>> coeff_mats;
    coeff_mats.reserve(static_cast<size_t>(g_of_t.degree() + 1));
    for (int j = 0; j <= g_of_t.degree(); ++j) coeff_mats.push_back(mult_matrix(g_of_t[j]));

    const int chi_deg = m * k;
    std::vector<Rational> xs, ys;
    xs.reserve(static_cast<size_t>(chi_deg + 1));
    ys.reserve(static_cast<size_t>(chi_deg + 1));
    for (int p = 0; p <= chi_deg; ++p) {
        // points 0, 1, -1, 2, -2, ...
        long x = (p % 2 == 1) ? (p + 1) / 2 : -(p / 2);
        Rational xv(x);
        Matrix<Rational> mt = Matrix<Rational>::zero(m, m, Rational(0));
        Rational power(1);
        for (size_t j = 0; j < coeff_mats.size(); ++j) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    mt.at(a, b) += coeff_mats[j].at(a, b) * power;
            power *= xv;
        }
        xs.push_back(xv);
        ys.push_back(det(mt, Rational(0)));
    }
    UniPoly<Rational> chi = lagrange_interpolate(xs, ys);
    if (chi.degree() != chi_deg || !chi.leading().is_one())
        throw Error("flatten_tower: characteristic polynomial malformed");

    {
        UniPoly<Rational> g = poly_gcd(chi, chi.derivative());
        if (g.degree() != 0)
            throw ReducibleExtension(
                "flatten_tower: primitive element w = root + generator has colliding conjugates");
    }

    NumberField f = make_number_field(chi);
    const FieldElement w = FieldElement::generator(f);

    // Recover the base generator as the unique common root of p(U) and
    // ext(U; w - U): gcd over the new field.  Zero divisors met during
    // the Euclidean algorithm expose a reducible presentation.
    const FieldElement zf = FieldElement::zero(f);
    const FieldElement onef = FieldElement::one(f);
    UniPoly<FieldElement> p_of_u;
    {
        std::vector<FieldElement> c;
        for (int i = 0; i <= base->min_poly().degree(); ++i)
            c.push_back(FieldElement::from_rational(f, base->min_poly()[i]));
        p_of_u = UniPoly<FieldElement>(std::move(c));
    }
    UniPoly<FieldElement> e_of_u;
    {
        // ext's coefficients are polynomials in the base generator; both
        // they and v = w - U must be rewritten in U over the new field.
        UniPoly<FieldElement> w_minus_u(std::vector<FieldElement>{w, -onef});
        UniPoly<FieldElement> acc;
        for (int j = ext.degree(); j >= 0; --j) {
            UniPoly<FieldElement> aj;
            {
                const auto& cj = ext[j].coords();
                std::vector<FieldElement> c;
                c.reserve(cj.size());
                for (const auto& r : cj) c.push_back(FieldElement::from_rational(f, r));
                aj = UniPoly<FieldElement>(std::move(c));
            }
            if (j == ext.degree())
                acc = aj;
            else
                acc = acc * w_minus_u + aj;
        }
        e_of_u = std::move(acc);
    }
    UniPoly<FieldElement> g = poly_gcd(p_of_u, e_of_u);
    if (g.degree() != 1)
        throw ReducibleExtension("flatten_tower: base generator image not unique");
    FieldElement u_im = -(g[0] / g[1]);
    FieldElement v_im = w - u_im;

    if (!p_of_u.eval(u_im).is_zero())
        throw Error("flatten_tower: internal check failed (base relation)");
    {
        FieldElement acc = zf;
        for (int j = ext.degree(); j >= 0; --j) {
            FieldElement aj = embed_via(ext[j], u_im);
            acc = acc * v_im + aj;
        }
        if (!acc.is_zero()) throw Error("flatten_tower: internal check failed (ext relation)");
    }
    return {f, u_im, v_im};
}

} // namespace recurve
