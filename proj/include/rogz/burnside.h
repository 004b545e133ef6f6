#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rogz/intmat.h"
#include "rogz/perm.h"

namespace rogz {

/* Rational number allowed to have denominator primes only from the inverted
 * set S.  Every construction re-validates, so an integrality claim that fails
 * surfaces immediately at the offending operation. */
struct SRational {
    Int num = 0;
    Int den = 1;
    std::set<long> inverted;

    SRational() = default;
    SRational(Int n, Int d = 1, std::set<long> s = {});

    bool is_integer() const { return den == 1; }
    bool is_zero() const { return num == 0; }
    std::string to_string() const;

    friend SRational operator+(const SRational& a, const SRational& b);
    friend SRational operator-(const SRational& a, const SRational& b);
    friend SRational operator*(const SRational& a, const SRational& b);
    friend SRational operator/(const SRational& a, const SRational& b);
    bool operator==(const SRational& o) const { return num == o.num && den == o.den; }
};

// Element of A(G)[S^-1] in the {G/H} basis, one coefficient per lattice class.
struct BurnsideElt {
    std::vector<SRational> c;

    bool is_zero() const;
    bool operator==(const BurnsideElt& o) const { return c == o.c; }
    std::string to_string(const SubgroupLattice& lat) const;
};

struct BurnsideRing {
    SubgroupLattice lat;
    IntMat marks;  // marks.at(k, h) = |(G/H_h)^{K_k}|

    static BurnsideRing make(const PermGroup& g);

    int n() const { return int(lat.classes.size()); }
    BurnsideElt zero() const;
    BurnsideElt basis(int h, std::set<long> s = {}) const;
    BurnsideElt unit(std::set<long> s = {}) const;

    std::vector<SRational> mark_hom(const BurnsideElt& x) const;
    // Inverse of the mark embedding: triangular back-substitution.
    BurnsideElt from_marks(const std::vector<SRational>& chi) const;
    BurnsideElt mul(const BurnsideElt& a, const BurnsideElt& b) const;
    BurnsideElt add(const BurnsideElt& a, const BurnsideElt& b) const;
    BurnsideElt scale(const SRational& s, const BurnsideElt& a) const;

    /* Independent oracle: multiply two nonnegative-integer elements by
     * decomposing the Cartesian product of the underlying G-sets into orbits.
     * Used by tests to guard the mark-embedding route. */
    BurnsideElt mul_oracle(const BurnsideElt& a, const BurnsideElt& b) const;

    // e_H per class index; requires S to contain every prime factor of |G|.
    std::map<int, BurnsideElt> idempotents(const std::set<long>& s) const;
};

/* Structure maps.  Levels are rings over actual nested subgroups:
 * sub.lat.group must be a subgroup of big.lat.group (element containment). */
BurnsideElt burnside_res(const BurnsideRing& big, const BurnsideRing& sub, const BurnsideElt& x);
BurnsideElt burnside_tr(const BurnsideRing& sub, const BurnsideRing& big, const BurnsideElt& x);
BurnsideElt burnside_conj(const BurnsideRing& from, const BurnsideRing& to, const Perm& g,
                          const BurnsideElt& x);

std::string marks_table_text(const BurnsideRing& ring);
std::string marks_table_json(const BurnsideRing& ring);

}  // namespace rogz
