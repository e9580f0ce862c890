#ifndef RECURVE_ALGEBRA_HPP
#define RECURVE_ALGEBRA_HPP

#include <memory>
#include <vector>

#include "recurve/field.hpp"
#include "recurve/series.hpp"

namespace recurve {

// The etale algebra A = L (x) K = K[s]/(m(s)), where m is the defining
// polynomial of K re-read over K.  A is a product of fields but is
// handled uniformly; traces go through multiplication matrices.
class EtaleAlgebraData;
using EtaleAlgebra = std::shared_ptr<const EtaleAlgebraData>;

class EtaleAlgebraData {
  public:
    EtaleAlgebraData(NumberField base, UniPoly<FieldElement> ext_poly);

    const NumberField& base() const { return base_; }
    const UniPoly<FieldElement>& ext_poly() const { return ext_poly_; }
    int rank() const { return ext_poly_.degree(); }

  private:
    NumberField base_;
    UniPoly<FieldElement> ext_poly_;
};

EtaleAlgebra make_etale_algebra(NumberField base, UniPoly<FieldElement> ext_poly);
// A = L (x) K with L an isomorphic copy of K.
EtaleAlgebra tensor_with_self(const NumberField& k);

class AlgebraElement {
  public:
    AlgebraElement(EtaleAlgebra parent, UniPoly<FieldElement> rep);

    static AlgebraElement zero(const EtaleAlgebra& a);
    static AlgebraElement one(const EtaleAlgebra& a);
    static AlgebraElement from_base(const EtaleAlgebra& a, const FieldElement& x);
    // The class of s (the generator of the L tensor factor).
    static AlgebraElement second_generator(const EtaleAlgebra& a);

    const EtaleAlgebra& parent() const { return parent_; }
    const UniPoly<FieldElement>& rep() const { return rep_; }
    // Coordinates in the power basis 1, s, ..., s^{l-1}.
    std::vector<FieldElement> coords() const;

    bool is_zero() const { return rep_.is_zero(); }
    bool is_one() const { return rep_.degree() == 0 && rep_.leading().is_one(); }

    AlgebraElement operator-() const;
    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement inverse() const;

  private:
    EtaleAlgebra parent_;
    UniPoly<FieldElement> rep_;
};

inline AlgebraElement zero_like(const AlgebraElement& a) { return AlgebraElement::zero(a.parent()); }
inline AlgebraElement one_like(const AlgebraElement& a) { return AlgebraElement::one(a.parent()); }
AlgebraElement int_like(const AlgebraElement& a, long k);

// Trace of the multiply-by-x endomorphism of A as a free K-module.
FieldElement trace_to_base(const AlgebraElement& x);

// Power-basis component projection of a series over A.
std::vector<Series<FieldElement>> project_coefficients(const Series<AlgebraElement>& a);

// ---------------------------------------------------------------------
// Dynamic block decomposition.  A is held as a product of quotients
// K[s]/(m_t) with the m_t pairwise coprime; arithmetic proceeds per
// block, and a failed inversion inside a block surfaces the discovered
// factor so the caller can refine the decomposition and rerun.

class BlockData {
  public:
    BlockData(NumberField base, UniPoly<FieldElement> modulus)
        : base_(std::move(base)), modulus_(std::move(modulus)) {}
    const NumberField& base() const { return base_; }
    const UniPoly<FieldElement>& modulus() const { return modulus_; }
    int rank() const { return modulus_.degree(); }

  private:
    NumberField base_;
    UniPoly<FieldElement> modulus_;
};
using Block = std::shared_ptr<const BlockData>;

// Raised when a zero divisor is met inside a block; carries the proper
// factor of the block modulus that witnesses it.
struct SplitRequest {
    Block block;
    UniPoly<FieldElement> factor;
};

class BlockElem {
  public:
    BlockElem(Block blk, UniPoly<FieldElement> rep);

    static BlockElem zero(const Block& b);
    static BlockElem one(const Block& b);
    static BlockElem from_poly(const Block& b, const UniPoly<FieldElement>& p);

    const Block& block() const { return blk_; }
    const UniPoly<FieldElement>& rep() const { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }

    BlockElem operator-() const { return BlockElem(blk_, -rep_); }
    friend BlockElem operator+(const BlockElem& a, const BlockElem& b);
    friend BlockElem operator-(const BlockElem& a, const BlockElem& b);
    friend BlockElem operator*(const BlockElem& a, const BlockElem& b);
    friend bool operator==(const BlockElem& a, const BlockElem& b);
    BlockElem inverse() const; // throws SplitRequest on zero divisors

    FieldElement trace() const;

  private:
    Block blk_;
    UniPoly<FieldElement> rep_;
};

inline BlockElem zero_like(const BlockElem& a) { return BlockElem::zero(a.block()); }
inline BlockElem one_like(const BlockElem& a) { return BlockElem::one(a.block()); }
BlockElem int_like(const BlockElem& a, long k);

class BlockDecomposition {
  public:
    // Starts from the split m = (s - theta) * (m / (s - theta)): the
    // diagonal factor, where L acts as K itself, always splits off.
    explicit BlockDecomposition(EtaleAlgebra a);

    const EtaleAlgebra& algebra() const { return alg_; }
    const std::vector<Block>& blocks() const { return blocks_; }

    // Replace the named block by the discovered factor and its cofactor.
    void refine(const SplitRequest& req);

    std::vector<BlockElem> reduce(const AlgebraElement& x) const;
    std::vector<BlockElem> reduce_poly(const UniPoly<FieldElement>& p) const;
    AlgebraElement recombine(const std::vector<BlockElem>& parts) const;

  private:
    EtaleAlgebra alg_;
    std::vector<Block> blocks_;
};

// Trace of an element presented per block: sum of the block traces.
FieldElement trace_of_blocks(const std::vector<BlockElem>& parts);

} // namespace recurve

#endif
