#pragma once

#include <string>
#include <vector>

#include "rogz/abelian.h"
#include "rogz/intmat.h"
#include "rogz/perm.h"

namespace rogz {

/* A cell of one of the equivariant sphere models, after passing to orbit
 * classes.  idx holds the per-tower degrees: one entry for the C2 and Cp
 * towers, three for the triple tower.  Free triple-tower cells come in two
 * orbit classes distinguished by sheet parity; lam marks the odd one. */
struct CellLabel {
    std::vector<int> idx;
    bool lam = false;

    bool operator==(const CellLabel& o) const = default;
    std::string to_string() const;
};

/* Chain complex with integer (p == 0) or prime-field (p > 0) coefficients.
 * bnd[t] maps degree t to degree t-1 (columns indexed by cells[t]); bnd[0]
 * has zero rows.  All complexes are reduced: the fixed bottom cell is the
 * only 0-cell and there is no augmentation. */
struct ChainComplex {
    long p = 0;
    std::vector<std::vector<CellLabel>> cells;
    std::vector<IntMat> bnd;

    int top() const { return int(cells.size()) - 1; }
    long dim(int t) const;
    int label_index(int t, const CellLabel& l) const;  // -1 if absent
};

/* Supported model ids: "C2" (sigma tower), "C3", "C5", ... (odd-prime
 * rotation towers), "K4" (smash of the three sign towers). */

// Chains of invariant orbit sums; computes the sphere's integral homology
// with constant coefficients.
ChainComplex sphere_complex(const std::string& catalog, int n);

// Cellular chains of the quotient space: one generator per orbit class.
ChainComplex orbit_complex(const std::string& catalog, int n);

// Cochains of the quotient, stored as a chain complex in reversed degrees:
// index t' carries cohomological degree top - t'.
ChainComplex cochain_complex(const std::string& catalog, int n);

// Degree-reversed transpose (the functional dual as a chain complex).
ChainComplex transpose_complex(const ChainComplex& c);

// Same complex with entries reduced mod p.
ChainComplex reduce_mod(const ChainComplex& c, long p);

// Homology in each degree 0..top; requires integer coefficients.
std::vector<FGAbelianGroup> homology(const ChainComplex& c);

// F_p homology dimensions in each degree (ranks taken mod p).
std::vector<long> homology_dims(const ChainComplex& c, long p);

// Degree-t homology as an explicit subquotient of the chain group.
SubQuot homology_subquot(const ChainComplex& c, int t);

struct ChainMap {
    std::vector<IntMat> mat;  // mat[t]: target dim x source dim in degree t
};

enum class Flavor { Invariant, Orbit, Cochain };

/* Chain-level action of a normalizer generator on the chosen complex:
 * "tau"  - the reflection on a rotation tower (catalog C3, C5, ...),
 * "rho3" - the 3-cycle permuting the triple-tower factors (catalog K4),
 * "id"   - identity on any catalog.
 * Each commutes with the boundary and has the generator's order. */
ChainMap conj_chain_map(const std::string& catalog, int n, const std::string& gen,
                        Flavor flavor);

/* Chains of (fixed points of K) / L.  K and L are permutation subgroups of
 * the model's translation group: degree 2 for C2, degree p for Cp, degree 4
 * (the even involutions) for K4.  L must preserve the K-fixed cells. */
ChainComplex fixed_orbit_complex(const std::string& catalog, int n, const PermGroup& K,
                                 const PermGroup& L);

// The model's translation group: degree 2 for C2, degree p for Cp, the even
// involutions in degree 4 for K4.
PermGroup model_translations(const std::string& catalog);

/* Chains attached to the L-orbit classes of the full cell structure, for any
 * subgroup L of the model translations.  Invariant gives orbit-sum chains
 * (integral homology of the L-fixed level), Orbit the quotient-space chains,
 * Cochain the quotient cochains in reversed degrees.  Cells are labelled by
 * the full key of the orbit representative. */
ChainComplex level_complex(const std::string& catalog, int n, const PermGroup& L,
                           Flavor flavor);

/* Chain maps between the level complexes of nested translation subgroups
 * L1 <= L2, in Invariant or Cochain flavor.  Restriction goes from the
 * L2 level to the L1 level (orbit-sum expansion, resp. cochain pullback);
 * transfer goes from the L1 level to the L2 level (stabilizer-weighted
 * coset summation, resp. its dual).  Both commute with the boundaries. */
ChainMap level_restriction_map(const std::string& catalog, int n, const PermGroup& L1,
                               const PermGroup& L2, Flavor flavor);
ChainMap level_transfer_map(const std::string& catalog, int n, const PermGroup& L1,
                            const PermGroup& L2, Flavor flavor);

/* The model symmetry gen^power followed by a translation, as a chain map
 * from the Lsrc level to the Ldst level.  The composite must carry Lsrc to
 * Ldst by conjugation on cells; otherwise this throws.  gen is "tau",
 * "rho3", or "id" as in conj_chain_map. */
ChainMap level_symmetry_map(const std::string& catalog, int n, const std::string& gen,
                            int power, const Perm& translation, const PermGroup& Lsrc,
                            const PermGroup& Ldst, Flavor flavor);

/* Universal-coefficient bookkeeping at the prime q: in each degree the F_q
 * dimension must equal the free rank plus the q-torsion counts of this and
 * the previous degree.  detail names the first degree that fails. */
struct BocksteinReport {
    bool ok = true;
    std::string detail;
};

BocksteinReport bockstein_consistency(const std::string& catalog, int n, long q);

std::string complex_json(const ChainComplex& c);

}  // namespace rogz
