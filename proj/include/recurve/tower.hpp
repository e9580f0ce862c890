#ifndef RECURVE_TOWER_HPP
#define RECURVE_TOWER_HPP

#include "recurve/field.hpp"

namespace recurve {

struct FlattenResult {
    NumberField field;           // the flattened field over Q
    FieldElement base_gen_image; // image of the base generator
    FieldElement root_image;     // image of the adjoined root
};

// Collapse base(root of ext_min_poly) to a single primitive extension
// of Q.  ext_min_poly is monic over the base and must be square-free
// there.  The primitive element is root + base generator; a collision
// in its characteristic polynomial, or a zero divisor met while
// extracting the generator images, raises ReducibleExtension.
FlattenResult flatten_tower(const NumberField& base, const UniPoly<FieldElement>& ext_min_poly);

// Evaluate x's polynomial representation at gen_image (the image of
// x's field generator inside another field).
FieldElement embed_via(const FieldElement& x, const FieldElement& gen_image);

} // namespace recurve

#endif
