#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rogz/abelian.h"
#include "rogz/cellhom.h"
#include "rogz/perm.h"
#include "rogz/reps.h"

namespace rogz {

/* Restriction and transfer across one comparable pair of subgroup classes,
 * as matrices acting on coordinate columns of the stored level bases. */
struct MackeyMaps {
    IntMat res;
    IntMat tr;
};

// One lattice-class level at one prime.
struct LocalLevelInfo {
    bool on_model = false;     // the level has a chain presentation at this prime
    int rank = 0;              // free rank (never above 1 here)
    Int index = 1;             // p-part of the restriction index to the bottom level
    std::vector<Int> torsion;  // canonical prime-power orders, ascending
};

// One subgroup of the chosen Sylow representative, realized on the model.
struct MackeySub {
    PermGroup grp;    // subgroup of the ambient group
    PermGroup cells;  // its translation image on the sphere model
    SubQuot value;    // chain-level homology at the tracked degree
};

/* Everything the functor knows at one prime: the sphere model of the Sylow
 * subgroup, every level realized on that one model, and the local maps in
 * [free | torsion] bases. */
struct MackeyLayer {
    long p = 0;
    std::string model;  // sublevel catalog id driving the chain machinery
    int n = 0;          // sphere parameter
    Flavor flavor = Flavor::Invariant;
    int t = -1;         // tracked chain degree; -1 when the window is empty
    int twist = 1;      // reflection orientation on the summand the model cannot see
    PermGroup sylow;
    std::map<Perm, Perm> kappa;  // Sylow elements -> model translations
    std::string outer_gen;       // "rho3", "tau", or "" when none is available
    Perm outer_elt;              // group element the outer generator realizes
    int outer_ord = 1;
    std::vector<MackeySub> sub;        // all subgroups of the Sylow representative
    std::vector<int> level_sub;        // lattice class -> sub index; -1 off model
    std::vector<PermGroup> level_rep;  // aligned representative per class
    std::vector<SubQuot> level_value;  // normalizer-invariant cut per on-model class
    std::vector<int> free_coord;       // canonical coordinate of the free generator
    std::vector<int> free_sign;
    std::vector<LocalLevelInfo> info;
    std::map<std::pair<int, int>, MackeyMaps> edge;
};

/* Mackey functor on the subgroup-class lattice, with explicit level bases:
 * generator orders list the free generator (order 0) first, then torsion
 * generators grouped by ascending prime.  edge holds every comparable class
 * pair keyed (smaller, larger); conj holds matrices of chosen Weyl-group
 * generators acting on each level. */
struct MackeyFunctor {
    std::string group;
    VirtualRep grading;
    const SubgroupLattice* lat = nullptr;
    std::vector<std::string> level_name;
    std::vector<FGAbelianGroup> level;
    std::vector<std::vector<Int>> basis;
    std::map<std::pair<int, int>, MackeyMaps> edge;
    std::vector<std::vector<Perm>> conj_rep;  // Weyl generator elements per class
    std::vector<std::vector<IntMat>> conj;
    std::shared_ptr<const std::vector<MackeyLayer>> layers;
};

/* Build the graded-homotopy Mackey functor of the grading: per prime every
 * level is a normalizer-invariant cut of a subgroup level on the single
 * Sylow sphere model, restrictions are chain inclusions, transfers come from
 * the double-coset formula with stabilizer-weighted coset sums, conjugations
 * from the model symmetries.  Every level is cross-checked against the
 * independent localized computation before the layers are glued. */
MackeyFunctor assemble(const PermGroup& g, const VirtualRep& v);

struct CohomologicalReport {
    bool ok = true;
    std::string detail;
};

/* tr . res must be multiplication by the subgroup index on every comparable
 * pair, modulo each generator's order.  Judged from the stored matrices
 * alone, so hand-built functors can be screened as well. */
CohomologicalReport check_cohomological(const MackeyFunctor& m);

/* p-part of the top level rebuilt from proper-subgroup data alone: the
 * Sylow level modulo the coset-fusion relations between transfers.  Throws
 * a runtime error when the quotient disagrees with the assembled top level,
 * which would falsify one of the two routes. */
FGAbelianGroup top_level_via_transfers(const MackeyFunctor& m, long p);

// The level-and-maps diagram, as aligned text and as JSON.
std::string lewis_text(const MackeyFunctor& m);
std::string lewis_json(const MackeyFunctor& m);

}  // namespace rogz
