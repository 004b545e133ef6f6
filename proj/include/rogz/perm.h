#pragma once

#include <string>
#include <vector>

namespace rogz {

// Permutation in one-line image notation: p[i] is the image of point i.
using Perm = std::vector<int>;

Perm perm_identity(int degree);
Perm perm_mul(const Perm& a, const Perm& b);  // (a*b)(i) = a(b(i))
Perm perm_inv(const Perm& a);
int perm_order(const Perm& a);
std::string perm_to_string(const Perm& a);

struct PermGroup {
    int degree = 0;
    std::vector<Perm> generators;
    std::vector<Perm> elements;  // full list, sorted

    static PermGroup generated(int degree, std::vector<Perm> gens);
    static PermGroup from_elements(int degree, std::vector<Perm> elems);

    int order() const { return int(elements.size()); }
    bool contains(const Perm& p) const;
    bool contains_group(const PermGroup& h) const;  // h's elements all lie here
    bool same_elements(const PermGroup& h) const;
};

PermGroup conjugate_subgroup(const PermGroup& h, const Perm& g);  // g h g^-1
PermGroup intersect(const PermGroup& a, const PermGroup& b);
PermGroup normalizer(const PermGroup& g, const PermGroup& h);
PermGroup centralizer(const PermGroup& g, const std::vector<Perm>& elems);
bool is_normal_in(const PermGroup& h, const PermGroup& g);

struct SubgroupClass {
    PermGroup representative;
    std::vector<PermGroup> members;
    std::vector<Perm> witnesses;  // witnesses[i] * rep * witnesses[i]^-1 = members[i]
    PermGroup normalizer;
    int weyl_order = 1;
};

struct SubgroupLattice {
    PermGroup group;
    std::vector<SubgroupClass> classes;
    std::vector<std::vector<bool>> subconj;      // [i][j] : [H_i] <= [H_j]
    std::vector<std::vector<Perm>> subconj_wit;  // g with g H_i g^-1 subset of H_j

    int class_of(const PermGroup& h) const;  // index of the class containing h
    int class_of_order(int n) const;         // unique class of that order, -1 if not unique
};

PermGroup make_group(const std::string& catalog_id);
SubgroupLattice subgroup_lattice(const PermGroup& g);
SubgroupClass sylow(const SubgroupLattice& lat, long p);
PermGroup omega_p(const PermGroup& g, long p);

struct DoubleCosetOrbit {
    PermGroup stabilizer;  // Q_i = Stab_P(g_i H)
    Perm rep;              // g_i
    int orbit_size = 0;    // |P / Q_i|
};

std::vector<DoubleCosetOrbit> double_coset_orbits(const PermGroup& g, const PermGroup& p,
                                                  const PermGroup& h);

std::string group_json(const PermGroup& g);
std::string lattice_json(const SubgroupLattice& lat);

}  // namespace rogz
