#pragma once

#include <string>
#include <vector>

#include "rogz/perm.h"

namespace rogz {

struct Irrep {
    std::string name;
    int dim = 0;
    bool doubled = false;    // one symbol standing for two irreps of equal dimension
    std::vector<int> fixed;  // fixed-subspace dimension per lattice class
};

// Restriction to one subgroup class: rows = target irreps, cols = source irreps.
struct RestrictionEntry {
    std::string target;
    std::vector<std::vector<long>> m;
};

struct IrrepCatalog {
    std::string group;
    SubgroupLattice lat;
    std::vector<Irrep> irreps;
    std::vector<RestrictionEntry> restr;  // indexed by lattice class

    int irrep_index(const std::string& name) const;
    std::vector<int> all_dims() const;  // sorted, doubled symbols listed twice
};

// Cached immutable catalog per group id.
const IrrepCatalog& catalog(const std::string& id);

struct VirtualRep {
    const IrrepCatalog* cat = nullptr;
    std::vector<long> coeff;
};

VirtualRep rep_zero(const IrrepCatalog& cat);
VirtualRep rep_basis(const IrrepCatalog& cat, const std::string& name, long mult = 1);
VirtualRep rep_add(const VirtualRep& a, const VirtualRep& b);
VirtualRep rep_scale(long s, const VirtualRep& a);
long rep_dim(const VirtualRep& v);
std::string rep_to_string(const VirtualRep& v);

VirtualRep restrict_rep(const VirtualRep& v, int class_idx);
long fixed_dim(const VirtualRep& v, int class_idx);

struct D2pGrading {
    long k = 0, m = 0, n = 0;  // k + m*s + n*g
};

struct A5Grading {
    long n1 = 0, n3 = 0, n4 = 0, n5 = 0;  // n1 + n3*V3 + n4*V4 + n5*V5
};

D2pGrading parse_d2p_grading(const std::string& text);
A5Grading parse_a5_grading(const std::string& text);

enum class D2pSide { C2, Cp };

struct TransportedGrade {
    long a = 0, b = 0;      // a + b*(sign rep or rotation rep)
    bool vanishes = false;  // meaningful on the odd-prime side only
};

TransportedGrade d2p_grade_transport(long k, long m, long n, D2pSide side);

}  // namespace rogz
