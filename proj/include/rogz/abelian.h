#pragma once

#include <string>
#include <vector>

#include "rogz/intmat.h"

namespace rogz {

/* Isomorphism type Z^rank + Z/d1 + Z/d2 + ...  with 2 <= d1 | d2 | ... */
struct FGAbelianGroup {
    int rank = 0;
    std::vector<Int> invariant_factors;

    bool is_trivial() const { return rank == 0 && invariant_factors.empty(); }
    bool operator==(const FGAbelianGroup& o) const = default;

    FGAbelianGroup p_part(const Int& p) const;   // Z^rank + p-primary torsion
    FGAbelianGroup torsion() const;              // rank dropped
    std::string to_string() const;               // e.g. "Z + Z/2 + Z/4", "0"
};

// Merge of local pieces that all share the same rank: torsion parts combined
// back into one divisibility chain.
FGAbelianGroup merge_local_parts(const std::vector<FGAbelianGroup>& parts);

// Z^n modulo the column span of rel (rel.rows == n).
FGAbelianGroup cokernel_group(const IntMat& rel, int n);

/* Subquotient H = span(cycles) / span(cycles*rel) of an ambient Z^N.
 *
 * cycles: N x k, columns a basis of a saturated subgroup of Z^N.
 * rel:    k x m, relation columns written in cycle coordinates.
 *
 * Canonical generators come from the Smith form of rel: column j of
 * cycles*u_inv represents a generator of order diag[j] (0 beyond the rank,
 * i.e. free); order-1 columns are dropped.  gen_order/gen_chain expose them.
 */
struct SubQuot {
    IntMat cycles;
    IntMat rel;

    FGAbelianGroup group() const;

    // canonical presentation (computed once on demand)
    struct Canon {
        std::vector<Int> orders;  // 0 = free, else >= 2
        IntMat chains;            // ambient N x (#gens), column per generator
        IntMat coords;            // k x (#gens), same generators in cycle coords
        SmithForm rel_snf;
    };
    const Canon& canon() const;

    /* Coordinates of an ambient vector in the canonical generators, reduced
     * mod orders.  Fails (returns false) if the vector is not in span(cycles)
     * modulo relations. */
    bool express(const IntMat& ambient_vec, std::vector<Int>& coeffs) const;

  private:
    mutable bool have_canon_ = false;
    mutable Canon canon_;
};

// H cut down to { x : f_i(x) = 0 } for maps given on ambient chains.
// Each constraint is (matrix F on ambient coords, target SubQuot it maps to).
struct Constraint {
    IntMat map;             // ambient_target_dim x N
    const SubQuot* target;  // vanishing is measured in this subquotient
};

SubQuot kernel_subgroup(const SubQuot& h, const std::vector<Constraint>& cs);

// H modulo extra ambient relation vectors (columns).
SubQuot quotient_by(const SubQuot& h, const IntMat& extra);

/* Matrix of an induced map between subquotients, in canonical generators.
 * f acts on ambient chains (N' x N).  Fails if f does not carry cycles to
 * cycles modulo relations (witnesses a non-well-defined map). */
bool induced_map(const SubQuot& src, const SubQuot& dst, const IntMat& f, IntMat& out);

}  // namespace rogz
