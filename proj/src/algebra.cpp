#include "recurve/algebra.hpp"

#include "recurve/errors.hpp"

namespace recurve {

EtaleAlgebraData::EtaleAlgebraData(NumberField base, UniPoly<FieldElement> ext_poly)
    : base_(std::move(base)), ext_poly_(std::move(ext_poly)) {
    if (ext_poly_.degree() < 1) throw Error("EtaleAlgebra: ext_poly must have degree >= 1");
    if (!ext_poly_.leading().is_one()) throw Error("EtaleAlgebra: ext_poly must be monic");
}

EtaleAlgebra make_etale_algebra(NumberField base, UniPoly<FieldElement> ext_poly) {
    return std::make_shared<const EtaleAlgebraData>(std::move(base), std::move(ext_poly));
}

EtaleAlgebra tensor_with_self(const NumberField& k) {
    std::vector<FieldElement> c;
    c.reserve(static_cast<size_t>(k->degree() + 1));
    for (int i = 0; i <= k->degree(); ++i)
        c.push_back(FieldElement::from_rational(k, k->min_poly()[i]));
    return make_etale_algebra(k, UniPoly<FieldElement>(std::move(c)));
}

AlgebraElement::AlgebraElement(EtaleAlgebra parent, UniPoly<FieldElement> rep)
    : parent_(std::move(parent)), rep_(std::move(rep)) {
    if (rep_.degree() >= parent_->rank()) {
        auto [q, r] = divrem(rep_, parent_->ext_poly());
        (void)q;
        rep_ = std::move(r);
    }
}

AlgebraElement AlgebraElement::zero(const EtaleAlgebra& a) {
    return AlgebraElement(a, UniPoly<FieldElement>());
}

AlgebraElement AlgebraElement::one(const EtaleAlgebra& a) {
    return from_base(a, FieldElement::one(a->base()));
}

AlgebraElement AlgebraElement::from_base(const EtaleAlgebra& a, const FieldElement& x) {
    return AlgebraElement(a, UniPoly<FieldElement>::constant(x));
}

AlgebraElement AlgebraElement::second_generator(const EtaleAlgebra& a) {
    if (a->rank() == 1) {
        // s is the root of the degree-1 ext_poly.
        return AlgebraElement(a, UniPoly<FieldElement>::constant(-a->ext_poly()[0]));
    }
    return AlgebraElement(a, UniPoly<FieldElement>::x(FieldElement::zero(a->base())));
}

std::vector<FieldElement> AlgebraElement::coords() const {
    std::vector<FieldElement> out;
    const int l = parent_->rank();
    out.reserve(static_cast<size_t>(l));
    const FieldElement z = FieldElement::zero(parent_->base());
    for (int i = 0; i < l; ++i) out.push_back(rep_.coeff_or_zero(i, z));
    return out;
}

AlgebraElement AlgebraElement::operator-() const { return AlgebraElement(parent_, -rep_); }

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.parent_, a.rep_ + b.rep_);
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.parent_, a.rep_ - b.rep_);
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    return AlgebraElement(a.parent_, a.rep_ * b.rep_);
}

bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.rep_ == b.rep_;
}

AlgebraElement AlgebraElement::inverse() const {
    if (is_zero()) throw Error("AlgebraElement: inverse of zero");
    auto eg = poly_ext_gcd(rep_, parent_->ext_poly());
    if (eg.g.degree() != 0)
        throw ReducibleExtension("AlgebraElement: zero divisor met during inversion");
    return AlgebraElement(parent_, eg.u);
}

AlgebraElement int_like(const AlgebraElement& a, long k) {
    return AlgebraElement::from_base(a.parent(), FieldElement::from_rational(a.parent()->base(), Rational(k)));
}

FieldElement trace_to_base(const AlgebraElement& x) {
    const EtaleAlgebra& a = x.parent();
    const int l = a->rank();
    const FieldElement z = FieldElement::zero(a->base());
    FieldElement tr = z;
    // Sum of diagonal entries of the multiply-by-x matrix on 1, s, ...
    UniPoly<FieldElement> cur = x.rep();
    for (int i = 0; i < l; ++i) {
        tr = tr + cur.coeff_or_zero(i, z);
        if (i + 1 < l) {
            // cur <- cur * s mod ext_poly
            std::vector<FieldElement> shifted;
            shifted.reserve(static_cast<size_t>(cur.degree() + 2));
            shifted.push_back(z);
            for (int j = 0; j <= cur.degree(); ++j) shifted.push_back(cur[j]);
            UniPoly<FieldElement> next(std::move(shifted));
            auto [q, r] = divrem(next, a->ext_poly());
            (void)q;
            cur = std::move(r);
        }
    }
    return tr;
}

std::vector<Series<FieldElement>> project_coefficients(const Series<AlgebraElement>& a) {
    const EtaleAlgebra& alg = a.exemplar().parent();
    const int l = alg->rank();
    const FieldElement z = FieldElement::zero(alg->base());
    std::vector<std::vector<FieldElement>> comps(
        static_cast<size_t>(l),
        std::vector<FieldElement>());
    const int n = a.abs_prec() - a.val_offset();
    for (auto& v : comps) v.reserve(static_cast<size_t>(n));
    for (int k = a.val_offset(); k < a.abs_prec(); ++k) {
        auto coords = a.coeff(k).coords();
        for (int i = 0; i < l; ++i) comps[static_cast<size_t>(i)].push_back(coords[static_cast<size_t>(i)]);
    }
    std::vector<Series<FieldElement>> out;
    out.reserve(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i)
        out.emplace_back(a.val_offset(), a.abs_prec(), a.twist(), std::move(comps[static_cast<size_t>(i)]), z);
    return out;
}

// --------------------------- blocks ----------------------------------

BlockElem::BlockElem(Block blk, UniPoly<FieldElement> rep) : blk_(std::move(blk)), rep_(std::move(rep)) {
    if (rep_.degree() >= blk_->rank()) {
        auto [q, r] = divrem(rep_, blk_->modulus());
        (void)q;
        rep_ = std::move(r);
    }
}

BlockElem BlockElem::zero(const Block& b) { return BlockElem(b, UniPoly<FieldElement>()); }

BlockElem BlockElem::one(const Block& b) {
    return BlockElem(b, UniPoly<FieldElement>::constant(FieldElement::one(b->base())));
}

BlockElem BlockElem::from_poly(const Block& b, const UniPoly<FieldElement>& p) {
    return BlockElem(b, p);
}

BlockElem operator+(const BlockElem& a, const BlockElem& b) {
    return BlockElem(a.block(), a.rep() + b.rep());
}

BlockElem operator-(const BlockElem& a, const BlockElem& b) {
    return BlockElem(a.block(), a.rep() - b.rep());
}

BlockElem operator*(const BlockElem& a, const BlockElem& b) {
    return BlockElem(a.block(), a.rep() * b.rep());
}

bool operator==(const BlockElem& a, const BlockElem& b) { return a.rep() == b.rep(); }

BlockElem BlockElem::inverse() const {
    if (is_zero()) throw Error("BlockElem: inverse of zero");
    auto eg = poly_ext_gcd(rep_, blk_->modulus());
    if (eg.g.degree() != 0) throw SplitRequest{blk_, eg.g};
    return BlockElem(blk_, eg.u);
}

FieldElement BlockElem::trace() const {
    const FieldElement z = FieldElement::zero(blk_->base());
    FieldElement tr = z;
    UniPoly<FieldElement> cur = rep_;
    const int l = blk_->rank();
    for (int i = 0; i < l; ++i) {
        tr = tr + cur.coeff_or_zero(i, z);
        if (i + 1 < l) {
            std::vector<FieldElement> shifted;
            shifted.reserve(static_cast<size_t>(cur.degree() + 2));
            shifted.push_back(z);
            for (int j = 0; j <= cur.degree(); ++j) shifted.push_back(cur[j]);
            auto [q, r] = divrem(UniPoly<FieldElement>(std::move(shifted)), blk_->modulus());
            (void)q;
            cur = std::move(r);
        }
    }
    return tr;
}

BlockElem int_like(const BlockElem& a, long k) {
    return BlockElem(a.block(), UniPoly<FieldElement>::constant(
        FieldElement::from_rational(a.block()->base(), Rational(k))));
}

BlockDecomposition::BlockDecomposition(EtaleAlgebra a) : alg_(std::move(a)) {
    const NumberField& k = alg_->base();
    const UniPoly<FieldElement>& m = alg_->ext_poly();
    if (m.degree() == 1) {
        blocks_.push_back(std::make_shared<const BlockData>(k, m));
        return;
    }
    // s - theta divides m over K; split it eagerly.
    const FieldElement theta = FieldElement::generator(k);
    std::vector<FieldElement> lin{-theta, FieldElement::one(k)};
    UniPoly<FieldElement> diag(std::move(lin));
    UniPoly<FieldElement> rest = exact_div(m, diag);
    blocks_.push_back(std::make_shared<const BlockData>(k, diag));
    blocks_.push_back(std::make_shared<const BlockData>(k, rest));
}

void BlockDecomposition::refine(const SplitRequest& req) {
    for (size_t i = 0; i < blocks_.size(); ++i) {
        if (blocks_[i] == req.block) {
            UniPoly<FieldElement> d = req.factor.monic();
            if (d.degree() <= 0 || d.degree() >= blocks_[i]->modulus().degree())
                throw Error("BlockDecomposition: refinement factor not proper");
            UniPoly<FieldElement> co = exact_div(blocks_[i]->modulus(), d);
            const NumberField& k = blocks_[i]->base();
            blocks_[i] = std::make_shared<const BlockData>(k, d);
            blocks_.insert(blocks_.begin() + static_cast<long>(i) + 1,
                           std::make_shared<const BlockData>(k, co));
            return;
        }
    }
    throw Error("BlockDecomposition: refinement block not found");
}

std::vector<BlockElem> BlockDecomposition::reduce(const AlgebraElement& x) const {
    return reduce_poly(x.rep());
}

std::vector<BlockElem> BlockDecomposition::reduce_poly(const UniPoly<FieldElement>& p) const {
    std::vector<BlockElem> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.emplace_back(b, p);
    return out;
}

AlgebraElement BlockDecomposition::recombine(const std::vector<BlockElem>& parts) const {
    if (parts.size() != blocks_.size()) throw Error("BlockDecomposition: part count mismatch");
    const NumberField& k = alg_->base();
    const FieldElement one = FieldElement::one(k);
    UniPoly<FieldElement> acc;
    for (size_t t = 0; t < blocks_.size(); ++t) {
        // e_t = M_t * (M_t^{-1} mod m_t), M_t the product of the other moduli.
        UniPoly<FieldElement> mt = UniPoly<FieldElement>::constant(one);
        for (size_t s = 0; s < blocks_.size(); ++s)
            if (s != t) mt = mt * blocks_[s]->modulus();
        auto [q, mt_red] = divrem(mt, blocks_[t]->modulus());
        (void)q;
        auto eg = poly_ext_gcd(mt_red, blocks_[t]->modulus());
        if (eg.g.degree() != 0)
            throw Error("BlockDecomposition: blocks not coprime");
        auto [q2, lift] = divrem(eg.u * parts[t].rep(), blocks_[t]->modulus());
        (void)q2;
        acc = acc + mt * lift;
    }
    auto [q3, r3] = divrem(acc, alg_->ext_poly());
    (void)q3;
    return AlgebraElement(alg_, r3);
}

FieldElement trace_of_blocks(const std::vector<BlockElem>& parts) {
    if (parts.empty()) throw Error("trace_of_blocks: empty decomposition");
    FieldElement tr = FieldElement::zero(parts[0].block()->base());
    for (const auto& p : parts) tr = tr + p.trace();
    return tr;
}

} // namespace recurve
