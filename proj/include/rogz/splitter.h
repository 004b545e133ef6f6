#pragma once

#include <string>
#include <vector>

#include "rogz/abelian.h"
#include "rogz/enumerators.h"
#include "rogz/reps.h"

namespace rogz {

/* One p-local layer of a homotopy group: the value computed on the Sylow
 * tower model, cut down to normalizer invariants where the Weyl group is
 * nontrivial.  Every invariant factor is a power of the prime.  Witnesses
 * name generators; they come from the graded presentation when one covers
 * the layer (accepted only if both routes agree), otherwise from chain
 * cells, re-checked against the invariance constraint at construction. */
struct LocalizedResult {
    long prime = 0;
    FGAbelianGroup group;
    std::vector<MonomialLabel> witnesses;
};

/* p-local part of the homotopy group graded by v.  For p dividing the group
 * order this runs the tower computation; otherwise only the free rank
 * survives.  Throws std::invalid_argument on a non-prime p or a grading
 * outside the symmetric range of the models, and std::runtime_error on
 * groups without a tower decomposition. */
LocalizedResult localized_homotopy(const VirtualRep& v, long p);

/* Combine local layers of one grading.  Hard errors, never warnings: the
 * primes must be distinct, each layer's torsion must be primary at its own
 * prime, and the free ranks must all agree. */
FGAbelianGroup glue(const std::vector<LocalizedResult>& parts);

// Glued value over all primes dividing the group order.
FGAbelianGroup compute_homotopy(const VirtualRep& v);

}  // namespace rogz
