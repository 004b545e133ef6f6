#pragma once

#include <map>
#include <set>
#include <vector>

#include "rogz/burnside.h"
#include "rogz/perm.h"

namespace rogz {

// Family of subgroups, stored over conjugacy classes of a fixed lattice.
struct Family {
    std::vector<bool> member;

    bool operator==(const Family& o) const = default;
};

bool family_closed(const SubgroupLattice& lat, const Family& f);

// Subgroups whose conjugates never contain a conjugate of k.
Family family_not_containing(const SubgroupLattice& lat, const PermGroup& k);

// Every subconjugacy-closed class set; lattice must have at most 12 classes.
std::vector<Family> all_families(const SubgroupLattice& lat);

/* Primes p admitting a normal pair H ◁ J with H in the family, J outside,
 * and p-power index.  Scans all member pairs, not just representatives. */
std::set<long> required_inverted_primes(const SubgroupLattice& lat, const Family& f);

struct CHSolution {
    std::map<int, SRational> c;  // class index -> coefficient, F-classes only
    std::set<long> needed;       // primes actually appearing in denominators
};

/* Top-down solve of sum_{[H] in F} c_H s_(K,H) = 1 over [K] in F.
 * Throws (naming the first violating prime) if a denominator needs a prime
 * outside s. */
CHSolution solve_ch(const BurnsideRing& ring, const Family& f, const std::set<long>& s);

/* Levelwise generating data of the free summand attached to a family:
 * at level [L], the basis elements {L/K} with [K] in the family. */
struct MFunctor0 {
    Family family;
    std::vector<BurnsideRing> level_rings;      // one per class of the big lattice
    std::vector<std::vector<int>> gens;         // per level: level-lattice class indices
    std::vector<std::vector<int>> level_to_big; // per level: level class -> big class
};

MFunctor0 mf_functor(const BurnsideRing& ring, const Family& f);

// res/tr/conj of every generator stays inside the generating span.
bool mf_closure_check(const BurnsideRing& ring, const MFunctor0& mf);

/* Complement spans via idempotents: at each level the e_K with [K] outside
 * the family.  Verifies M_F + N_F spans the level ring after inverting s.
 * Requires s to contain every prime dividing |G|. */
bool nf_complement_check(const BurnsideRing& ring, const MFunctor0& mf, const std::set<long>& s);

}  // namespace rogz
