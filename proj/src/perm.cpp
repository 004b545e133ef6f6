#include "rogz/perm.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rogz {

Perm perm_identity(int degree) {
    Perm p(degree);
    for (int i = 0; i < degree; ++i) p[i] = i;
    return p;
}

Perm perm_mul(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

Perm perm_inv(const Perm& a) {
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[a[i]] = int(i);
    return c;
}

int perm_order(const Perm& a) {
    Perm p = a;
    Perm id = perm_identity(int(a.size()));
    int n = 1;
    while (p != id) { p = perm_mul(p, a); ++n; }
    return n;
}

std::string perm_to_string(const Perm& a) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < a.size(); ++i) os << (i ? " " : "") << a[i];
    os << "]";
    return os.str();
}

PermGroup PermGroup::generated(int degree, std::vector<Perm> gens) {
    std::set<Perm> seen;
    seen.insert(perm_identity(degree));
    std::vector<Perm> queue(seen.begin(), seen.end());
    for (size_t i = 0; i < queue.size(); ++i)
        for (const Perm& g : gens) {
            Perm n = perm_mul(g, queue[i]);
            if (seen.insert(n).second) queue.push_back(n);
        }
    PermGroup out;
    out.degree = degree;
    out.generators = std::move(gens);
    out.elements.assign(seen.begin(), seen.end());
    return out;
}

PermGroup PermGroup::from_elements(int degree, std::vector<Perm> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    PermGroup out;
    out.degree = degree;
    out.generators = elems;  // harmless over-generation; closure assumed
    out.elements = std::move(elems);
    return out;
}

bool PermGroup::contains(const Perm& p) const {
    return std::binary_search(elements.begin(), elements.end(), p);
}

bool PermGroup::contains_group(const PermGroup& h) const {
    for (const Perm& p : h.elements)
        if (!contains(p)) return false;
    return true;
}

bool PermGroup::same_elements(const PermGroup& h) const { return elements == h.elements; }

PermGroup conjugate_subgroup(const PermGroup& h, const Perm& g) {
    Perm gi = perm_inv(g);
    std::vector<Perm> elems;
    elems.reserve(h.elements.size());
    for (const Perm& x : h.elements) elems.push_back(perm_mul(g, perm_mul(x, gi)));
    return PermGroup::from_elements(h.degree, std::move(elems));
}

PermGroup intersect(const PermGroup& a, const PermGroup& b) {
    std::vector<Perm> elems;
    for (const Perm& x : a.elements)
        if (b.contains(x)) elems.push_back(x);
    return PermGroup::from_elements(a.degree, std::move(elems));
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
    std::vector<Perm> elems;
    for (const Perm& x : g.elements)
        if (conjugate_subgroup(h, x).same_elements(h)) elems.push_back(x);
    return PermGroup::from_elements(g.degree, std::move(elems));
}

PermGroup centralizer(const PermGroup& g, const std::vector<Perm>& elems) {
    std::vector<Perm> out;
    for (const Perm& x : g.elements) {
        bool ok = true;
        for (const Perm& y : elems)
            if (perm_mul(x, y) != perm_mul(y, x)) { ok = false; break; }
        if (ok) out.push_back(x);
    }
    return PermGroup::from_elements(g.degree, std::move(out));
}

bool is_normal_in(const PermGroup& h, const PermGroup& g) {
    for (const Perm& x : g.elements)
        if (!conjugate_subgroup(h, x).same_elements(h)) return false;
    return true;
}

namespace {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Perm cycle_perm(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p = perm_identity(degree);
    for (const auto& c : cycles)
        for (size_t i = 0; i < c.size(); ++i) p[c[i]] = c[(i + 1) % c.size()];
    return p;
}

}  // namespace

PermGroup make_group(const std::string& id) {
    if (id == "e" || id == "C1") return PermGroup::generated(1, {});
    if (id == "K4")
        return PermGroup::generated(4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})});
    if (id == "A4")
        return PermGroup::generated(4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 1, 2}})});
    if (id == "A5")
        return PermGroup::generated(5, {cycle_perm(5, {{0, 1, 2, 3, 4}}), cycle_perm(5, {{0, 1, 2}})});
    if (id.size() >= 2 && id[0] == 'C') {
        int n = std::stoi(id.substr(1));
        if (n < 1) throw std::invalid_argument("make_group: bad cyclic order");
        std::vector<int> cyc(n);
        for (int i = 0; i < n; ++i) cyc[i] = i;
        return PermGroup::generated(n, n == 1 ? std::vector<Perm>{} : std::vector<Perm>{cycle_perm(n, {cyc})});
    }
    if (id.size() >= 2 && id[0] == 'D') {
        int m = std::stoi(id.substr(1));
        if (m % 2 != 0) throw std::invalid_argument("make_group: dihedral order must be even");
        int p = m / 2;
        if (!is_prime(p) || p == 2)
            throw std::invalid_argument("make_group: dihedral catalog needs an odd prime rotation order");
        std::vector<int> cyc(p);
        for (int i = 0; i < p; ++i) cyc[i] = i;
        Perm rot = cycle_perm(p, {cyc});
        Perm refl(p);
        for (int i = 0; i < p; ++i) refl[i] = (p - i) % p;
        return PermGroup::generated(p, {rot, refl});
    }
    throw std::invalid_argument("make_group: unknown catalog id '" + id + "'");
}

SubgroupLattice subgroup_lattice(const PermGroup& g) {
    if (g.order() > 10000) throw std::invalid_argument("subgroup_lattice: group too large");

    // cyclic subgroups, then join closure
    std::set<std::vector<Perm>> subs;
    for (const Perm& x : g.elements) {
        std::vector<Perm> cyc;
        Perm p = perm_identity(g.degree);
        do { cyc.push_back(p); p = perm_mul(p, x); } while (p != cyc[0]);
        std::sort(cyc.begin(), cyc.end());
        subs.insert(cyc);
    }
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::vector<Perm>> cur(subs.begin(), subs.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<Perm> gens = cur[i];
                gens.insert(gens.end(), cur[j].begin(), cur[j].end());
                PermGroup join = PermGroup::generated(g.degree, gens);
                if (subs.insert(join.elements).second) grew = true;
            }
    }

    // conjugacy classes
    std::vector<std::vector<Perm>> all(subs.begin(), subs.end());
    std::map<std::vector<Perm>, int> index;
    for (size_t i = 0; i < all.size(); ++i) index[all[i]] = int(i);
    std::vector<bool> taken(all.size(), false);
    std::vector<SubgroupClass> classes;
    for (size_t i = 0; i < all.size(); ++i) {
        if (taken[i]) continue;
        // orbit of subgroup i under conjugation, tracking witnesses
        std::map<std::vector<Perm>, Perm> orbit;
        orbit[all[i]] = perm_identity(g.degree);
        for (const Perm& x : g.elements) {
            PermGroup c = conjugate_subgroup(PermGroup::from_elements(g.degree, all[i]), x);
            orbit.emplace(c.elements, x);
        }
        // canonical representative: lexicographically least element list
        auto rep_it = orbit.begin();
        PermGroup rep = PermGroup::from_elements(g.degree, rep_it->first);
        Perm to_rep = rep_it->second;  // to_rep * base * to_rep^-1 = rep
        SubgroupClass cls;
        cls.representative = rep;
        for (auto& [elems, wit] : orbit) {
            taken[index[elems]] = true;
            cls.members.push_back(PermGroup::from_elements(g.degree, elems));
            // wit * base * wit^-1 = member and rep = to_rep * base * to_rep^-1
            cls.witnesses.push_back(perm_mul(wit, perm_inv(to_rep)));
        }
        cls.normalizer = normalizer(g, rep);
        cls.weyl_order = cls.normalizer.order() / rep.order();
        classes.push_back(std::move(cls));
    }

    std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
        if (a.representative.order() != b.representative.order())
            return a.representative.order() < b.representative.order();
        return a.representative.elements < b.representative.elements;
    });

    SubgroupLattice lat;
    lat.group = g;
    lat.classes = std::move(classes);
    int n = int(lat.classes.size());
    lat.subconj.assign(n, std::vector<bool>(n, false));
    lat.subconj_wit.assign(n, std::vector<Perm>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const PermGroup& hj = lat.classes[j].representative;
            for (size_t m = 0; m < lat.classes[i].members.size(); ++m) {
                if (hj.contains_group(lat.classes[i].members[m])) {
                    lat.subconj[i][j] = true;
                    // member = w * rep * w^-1 subset H_j, so witness is w
                    lat.subconj_wit[i][j] = lat.classes[i].witnesses[m];
                    break;
                }
            }
        }
    return lat;
}

int SubgroupLattice::class_of(const PermGroup& h) const {
    for (size_t i = 0; i < classes.size(); ++i)
        for (const PermGroup& m : classes[i].members)
            if (m.same_elements(h)) return int(i);
    return -1;
}

int SubgroupLattice::class_of_order(int n) const {
    int found = -1;
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].representative.order() == n) {
            if (found >= 0) return -1;
            found = int(i);
        }
    return found;
}

SubgroupClass sylow(const SubgroupLattice& lat, long p) {
    int best = 0;  // trivial class: order 1 = p^0
    int best_order = 1;
    for (size_t i = 0; i < lat.classes.size(); ++i) {
        int n = lat.classes[i].representative.order();
        int m = n;
        while (m % p == 0) m /= long(p);
        if (m == 1 && n > best_order) { best = int(i); best_order = n; }
    }
    return lat.classes[best];
}

PermGroup omega_p(const PermGroup& g, long p) {
    std::vector<Perm> gens;
    for (const Perm& x : g.elements)
        if (perm_order(x) % p != 0) gens.push_back(x);
    return PermGroup::generated(g.degree, gens);
}

std::vector<DoubleCosetOrbit> double_coset_orbits(const PermGroup& g, const PermGroup& p,
                                                  const PermGroup& h) {
    // cosets of H in G keyed by sorted element list
    std::map<std::vector<Perm>, Perm> cosets;  // key -> least representative
    for (const Perm& x : g.elements) {
        std::vector<Perm> key;
        key.reserve(h.elements.size());
        for (const Perm& y : h.elements) key.push_back(perm_mul(x, y));
        std::sort(key.begin(), key.end());
        auto it = cosets.find(key);
        if (it == cosets.end()) cosets[key] = x;
    }
    std::set<std::vector<Perm>> unvisited;
    for (auto& [k, v] : cosets) unvisited.insert(k);

    std::vector<DoubleCosetOrbit> out;
    while (!unvisited.empty()) {
        std::vector<Perm> start = *unvisited.begin();
        // P-orbit of this coset
        std::set<std::vector<Perm>> orbit;
        orbit.insert(start);
        std::vector<std::vector<Perm>> queue{start};
        for (size_t qi = 0; qi < queue.size(); ++qi)
            for (const Perm& x : p.elements) {
                std::vector<Perm> next;
                next.reserve(queue[qi].size());
                for (const Perm& y : queue[qi]) next.push_back(perm_mul(x, y));
                std::sort(next.begin(), next.end());
                if (orbit.insert(next).second) queue.push_back(next);
            }
        DoubleCosetOrbit o;
        o.rep = cosets[start];
        o.orbit_size = int(orbit.size());
        // stabilizer of the starting coset in P
        std::vector<Perm> stab;
        for (const Perm& x : p.elements) {
            std::vector<Perm> moved;
            moved.reserve(start.size());
            for (const Perm& y : start) moved.push_back(perm_mul(x, y));
            std::sort(moved.begin(), moved.end());
            if (moved == start) stab.push_back(x);
        }
        o.stabilizer = PermGroup::from_elements(g.degree, std::move(stab));
        for (const auto& k : orbit) unvisited.erase(k);
        out.push_back(std::move(o));
    }
    std::sort(out.begin(), out.end(), [](const DoubleCosetOrbit& a, const DoubleCosetOrbit& b) {
        if (a.orbit_size != b.orbit_size) return a.orbit_size < b.orbit_size;
        return a.rep < b.rep;
    });
    return out;
}

std::string group_json(const PermGroup& g) {
    nlohmann::json j;
    j["degree"] = g.degree;
    j["order"] = g.order();
    std::vector<std::string> gens;
    for (const Perm& p : g.generators) gens.push_back(perm_to_string(p));
    j["generators"] = gens;
    return j.dump(2);
}

std::string lattice_json(const SubgroupLattice& lat) {
    nlohmann::json j;
    j["group"] = nlohmann::json::parse(group_json(lat.group));
    nlohmann::json cls = nlohmann::json::array();
    for (const SubgroupClass& c : lat.classes) {
        nlohmann::json e;
        e["order"] = c.representative.order();
        e["members"] = int(c.members.size());
        e["weyl_order"] = c.weyl_order;
        std::vector<std::string> reps;
        for (const Perm& p : c.representative.elements) reps.push_back(perm_to_string(p));
        e["representative_elements"] = reps;
        cls.push_back(e);
    }
    j["classes"] = cls;
    std::vector<std::vector<int>> sc;
    for (const auto& row : lat.subconj) sc.emplace_back(row.begin(), row.end());
    j["subconjugacy"] = sc;
    return j.dump(2);
}

}  // namespace rogz
