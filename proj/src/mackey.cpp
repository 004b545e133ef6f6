#include "rogz/mackey.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "rogz/splitter.h"

namespace rogz {

namespace {

void need(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("mackey: " + what);
}

std::vector<long> dividing_primes(long order) {
    std::vector<long> out;
    for (long q = 2; order > 1; ++q)
        if (order % q == 0) {
            out.push_back(q);
            while (order % q == 0) order /= q;
        }
    return out;
}

long p_part_of(long m, long p) {
    long out = 1;
    while (m % p == 0) {
        m /= p;
        out *= p;
    }
    return out;
}

std::string class_display_name(const std::string& gid, const SubgroupLattice& lat, int i) {
    int n = lat.classes[size_t(i)].representative.order();
    if (n == 1) return "e";
    if (n == lat.group.order()) return gid;
    if (gid == "K4") {
        int k = 0;
        for (int j = 1; j < i; ++j)
            if (lat.classes[size_t(j)].representative.order() == 2) ++k;
        return std::string("C2") + char('a' + k);
    }
    switch (n) {
        case 2: return "C2";
        case 3: return "C3";
        case 4: return "K4";
        case 5: return "C5";
        case 6: return "D6";
        case 10: return "D10";
        case 12: return "A4";
    }
    return "H" + std::to_string(n);
}

/* Determinant sign of a group element acting on the graded virtual
 * representation; the only sources of -1 among the supported groups are
 * sign characters of C2 quotients. */
int chi_of(const VirtualRep& v, const Perm& g) {
    const std::string& id = v.cat->group;
    const std::vector<long>& c = v.coeff;
    if (perm_order(g) != 2) return 1;
    if (id == "C2") return c[1] % 2 != 0 ? -1 : 1;
    if (id == "K4") {
        PermGroup h = PermGroup::generated(int(g.size()), {g});
        int cls = v.cat->lat.class_of(h);
        long e = 0;
        for (int j = 1; j <= 3; ++j)
            if (j != cls) e += c[size_t(j)];
        return e % 2 != 0 ? -1 : 1;
    }
    if (id == "D6" || id == "D10") return (c[1] + c[2]) % 2 != 0 ? -1 : 1;
    return 1;  // odd-order elements were dismissed above; A4, A5 have no signs
}

Perm first_of_order(const PermGroup& g, int k) {
    for (const Perm& e : g.elements)
        if (perm_order(e) == k) return e;
    throw std::logic_error("mackey: no element of order " + std::to_string(k));
}

// Elements extending q to a generating set of n, greedily in sorted order.
std::vector<Perm> gens_over(const PermGroup& n, const PermGroup& q) {
    std::vector<Perm> out;
    std::vector<Perm> pool = q.elements;
    PermGroup cur = PermGroup::generated(n.degree, pool);
    for (const Perm& e : n.elements) {
        if (cur.order() == n.order()) break;
        if (cur.contains(e)) continue;
        out.push_back(e);
        pool.push_back(e);
        cur = PermGroup::generated(n.degree, pool);
    }
    return out;
}

/* Representatives aligned with the chosen Sylow subgroup: each class whose
 * order the prime divides gets a member whose intersection with P has full
 * p-part, nested around the smaller choices.  Comparable chain-presented
 * levels then sit literally inside one another. */
std::vector<PermGroup> aligned_reps(const SubgroupLattice& lat, const PermGroup& p_rep,
                                    long p) {
    int nc = int(lat.classes.size());
    std::vector<PermGroup> rep(size_t(nc));
    std::vector<int> order_sorted(size_t(nc));
    for (int i = 0; i < nc; ++i) order_sorted[size_t(i)] = i;
    std::stable_sort(order_sorted.begin(), order_sorted.end(), [&](int a, int b) {
        return lat.classes[size_t(a)].representative.order() <
               lat.classes[size_t(b)].representative.order();
    });
    for (int i : order_sorted) {
        const SubgroupClass& cls = lat.classes[size_t(i)];
        long o = cls.representative.order();
        if (o % p != 0) {
            rep[size_t(i)] = cls.representative;
            continue;
        }
        long want = p_part_of(o, p);
        bool placed = false;
        for (const PermGroup& m : cls.members) {
            if (o == p_rep.order() && !m.same_elements(p_rep)) continue;
            if (intersect(m, p_rep).order() != want) continue;
            bool fits = true;
            for (int j : order_sorted) {
                if (j == i) break;
                long oj = lat.classes[size_t(j)].representative.order();
                if (oj % p != 0 || !lat.subconj[size_t(j)][size_t(i)]) continue;
                if (!m.contains_group(rep[size_t(j)])) {
                    fits = false;
                    break;
                }
            }
            if (!fits) continue;
            rep[size_t(i)] = m;
            placed = true;
            break;
        }
        need(placed, "no aligned representative chain at p=" + std::to_string(p));
    }
    return rep;
}

// Trivial subgroup, every cyclic subgroup, and the whole group: for the
// Sylow subgroups in play this is the complete subgroup list.
std::vector<PermGroup> sylow_subgroups(const PermGroup& p_rep) {
    std::vector<PermGroup> out;
    out.push_back(PermGroup::generated(p_rep.degree, {perm_identity(p_rep.degree)}));
    for (const Perm& e : p_rep.elements) {
        if (perm_order(e) == 1) continue;
        PermGroup c = PermGroup::generated(p_rep.degree, {e});
        bool dup = false;
        for (const PermGroup& s : out) dup = dup || s.same_elements(c);
        if (!dup) out.push_back(c);
    }
    bool have_full = false;
    for (const PermGroup& s : out) have_full = have_full || s.same_elements(p_rep);
    if (!have_full) out.push_back(p_rep);
    std::stable_sort(out.begin(), out.end(), [](const PermGroup& a, const PermGroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.elements < b.elements;
    });
    return out;
}

// ---- model bridge: group elements acting through the sphere model ----

void build_bridge(MackeyLayer& lay, const PermGroup& g) {
    const PermGroup& p_rep = lay.sylow;
    int deg = g.degree;
    if (lay.model == "C2") {
        for (const Perm& e : p_rep.elements)
            lay.kappa[e] = perm_order(e) == 1 ? perm_identity(2) : Perm{1, 0};
        return;
    }
    if (lay.model == "C3" || lay.model == "C5") {
        int p = lay.model == "C3" ? 3 : 5;
        Perm gamma = first_of_order(p_rep, p);
        Perm cur = perm_identity(deg);
        for (int j = 0; j < p; ++j) {
            Perm rot(size_t(p));
            for (int i = 0; i < p; ++i) rot[size_t(i)] = (i + j) % p;
            lay.kappa[cur] = rot;
            cur = perm_mul(gamma, cur);
        }
        PermGroup nrm = normalizer(g, p_rep);
        if (nrm.order() > p_rep.order()) {
            for (const Perm& e : nrm.elements)
                if (perm_order(e) == 2 && !p_rep.contains(e)) {
                    lay.outer_gen = "tau";
                    lay.outer_elt = e;
                    lay.outer_ord = 2;
                    break;
                }
            need(lay.outer_ord == 2, "rotation normalizer without a reflection");
        }
        return;
    }
    need(lay.model == "K4", "unsupported sphere model " + lay.model);
    std::vector<Perm> towers = {Perm{1, 0, 3, 2}, Perm{2, 3, 0, 1}, Perm{3, 2, 1, 0}};
    lay.kappa[perm_identity(deg)] = perm_identity(4);
    PermGroup nrm = normalizer(g, p_rep);
    bool has_rho = false;
    for (const Perm& e : nrm.elements)
        if (perm_order(e) == 3) {
            lay.outer_gen = "rho3";
            lay.outer_elt = e;
            lay.outer_ord = 3;
            has_rho = true;
            break;
        }
    if (has_rho) {
        Perm a = p_rep.elements[1];
        Perm b = perm_mul(lay.outer_elt, perm_mul(a, perm_inv(lay.outer_elt)));
        Perm c = perm_mul(lay.outer_elt, perm_mul(b, perm_inv(lay.outer_elt)));
        need(!(b == a) && !(c == a) && !(c == b), "three-cycle fails to rotate the axes");
        lay.kappa[a] = towers[0];
        lay.kappa[b] = towers[1];
        lay.kappa[c] = towers[2];
    } else {
        int k = 0;
        for (const Perm& e : p_rep.elements)
            if (perm_order(e) == 2) lay.kappa[e] = towers[size_t(k++)];
        need(k == 3, "sign-tower group of the wrong shape");
    }
}

std::pair<int, Perm> decompose(const MackeyLayer& lay, const Perm& w) {
    Perm pw = perm_identity(int(w.size()));
    for (int k = 0; k < lay.outer_ord; ++k) {
        Perm u = perm_mul(perm_inv(pw), w);
        auto it = lay.kappa.find(u);
        if (it != lay.kappa.end()) return {k, it->second};
        pw = perm_mul(lay.outer_elt, pw);
    }
    throw std::logic_error("mackey: conjugation is not realizable on the model");
}

PermGroup cells_of(const MackeyLayer& lay, const PermGroup& q) {
    std::vector<Perm> img;
    img.reserve(q.elements.size());
    for (const Perm& e : q.elements) img.push_back(lay.kappa.at(e));
    int deg = lay.model == "C2" ? 2 : (lay.model == "K4" ? 4 : (lay.model == "C3" ? 3 : 5));
    return PermGroup::from_elements(deg, img);
}

// Chain matrix at the tracked degree of conjugation by w, from the level of
// src cells to the level of dst cells (w src w^-1 = dst).
IntMat symmetry_mat(const MackeyLayer& lay, const Perm& w, const PermGroup& src,
                    const PermGroup& dst) {
    auto [k, tq] = decompose(lay, w);
    ChainMap cm = level_symmetry_map(lay.model, lay.n,
                                     lay.outer_gen.empty() ? "id" : lay.outer_gen, k, tq,
                                     src, dst, lay.flavor);
    IntMat m = cm.mat[size_t(lay.t)];
    bool flip = lay.outer_gen == "tau" && k % 2 == 1 && lay.twist < 0;
    return flip ? m.neg() : m;
}

IntMat res_chain(const MackeyLayer& lay, const PermGroup& small, const PermGroup& big) {
    return level_restriction_map(lay.model, lay.n, small, big, lay.flavor).mat[size_t(lay.t)];
}

IntMat tr_chain(const MackeyLayer& lay, const PermGroup& small, const PermGroup& big) {
    return level_transfer_map(lay.model, lay.n, small, big, lay.flavor).mat[size_t(lay.t)];
}

// ---- level bookkeeping: [free | torsion] local bases over the canon ----

struct LevelLocal {
    int rank = 0;
    std::vector<int> to_canon;  // local slot -> canonical generator index
    std::vector<Int> orders;    // 0 for the free slot, the torsion order otherwise
};

LevelLocal scan_level(const SubQuot& v) {
    LevelLocal out;
    const std::vector<Int>& ord = v.canon().orders;
    int free_at = -1;
    for (int k = 0; k < int(ord.size()); ++k)
        if (ord[size_t(k)] == 0) {
            ++out.rank;
            free_at = k;
        }
    need(out.rank <= 1, "level free rank above one");
    if (out.rank) {
        out.to_canon.push_back(free_at);
        out.orders.push_back(0);
    }
    for (int k = 0; k < int(ord.size()); ++k)
        if (ord[size_t(k)] != 0) {
            out.to_canon.push_back(k);
            out.orders.push_back(ord[size_t(k)]);
        }
    return out;
}

// Canonical-coordinate matrix rewritten in the two local bases, free slot
// sign-fixed and torsion rows reduced into [0, order).
IntMat relocal(const IntMat& m, const LevelLocal& dst, int dsign, const LevelLocal& src,
               int ssign) {
    IntMat out(int(dst.to_canon.size()), int(src.to_canon.size()));
    for (int r = 0; r < out.rows; ++r)
        for (int c = 0; c < out.cols; ++c) {
            Int v = m.at(dst.to_canon[size_t(r)], src.to_canon[size_t(c)]);
            if (dst.orders[size_t(r)] == 0) v *= dsign;
            if (src.orders[size_t(c)] == 0) v *= ssign;
            if (dst.orders[size_t(r)] != 0) {
                v %= dst.orders[size_t(r)];
                if (v < 0) v += dst.orders[size_t(r)];
            }
            out.at(r, c) = v;
        }
    return out;
}

void place_column(IntMat& m, int col, const std::vector<Int>& canon_coeffs,
                  const LevelLocal& dst, int dsign) {
    for (int r = 0; r < int(dst.to_canon.size()); ++r) {
        Int v = canon_coeffs[size_t(dst.to_canon[size_t(r)])];
        if (dst.orders[size_t(r)] == 0) {
            v *= dsign;
        } else {
            v %= dst.orders[size_t(r)];
            if (v < 0) v += dst.orders[size_t(r)];
        }
        m.at(r, col) = v;
    }
}

// Generator chains as ambient columns in local order, free column sign-fixed.
IntMat local_gen_chains(const SubQuot& v, const LevelLocal& ll, int sign) {
    const IntMat& ch = v.canon().chains;
    IntMat out(ch.rows, int(ll.to_canon.size()));
    for (int c = 0; c < out.cols; ++c)
        for (int r = 0; r < out.rows; ++r) {
            Int x = ch.at(r, ll.to_canon[size_t(c)]);
            if (ll.orders[size_t(c)] == 0) x *= sign;
            out.at(r, c) = x;
        }
    return out;
}

struct LayerScratch {
    std::vector<LevelLocal> local;  // per lattice class
    int e_class = -1;
    int e_sub = -1;
};

bool chain_class(const MackeyLayer& lay, int i) { return lay.level_sub[size_t(i)] >= 0; }

// ---- per-prime layer construction ----

void derive_model(MackeyLayer& lay, const IrrepCatalog& cat, const VirtualRep& v,
                  const PermGroup& p_rep) {
    const SubgroupLattice& lat = cat.lat;
    int pcls = lat.class_of(p_rep);
    lay.model = cat.restr[size_t(pcls)].target;
    VirtualRep vp = restrict_rep(v, pcls);
    long a = vp.coeff[0];
    long b;
    if (lay.model == "K4") {
        if (vp.coeff[1] != vp.coeff[2] || vp.coeff[2] != vp.coeff[3])
            throw std::invalid_argument(
                "assemble: grading is not symmetric in the sign towers");
        b = vp.coeff[1];
    } else {
        b = vp.coeff[1];
    }
    lay.n = int(b < 0 ? -b : b);
    lay.flavor = b > 0 ? Flavor::Cochain : Flavor::Invariant;
    lay.twist = 1;
    if (lay.model != "C2" && lay.model != "K4") {
        PermGroup nrm = normalizer(lat.group, p_rep);
        if (nrm.order() > p_rep.order()) {
            VirtualRep vn = restrict_rep(v, lat.class_of(nrm));
            if (((vn.coeff[1] % 2) + 2) % 2 == 1) lay.twist = -1;
        }
    }
    ChainComplex full = level_complex(
        lay.model, lay.n, PermGroup::generated(lay.model == "C2" ? 2 : (lay.model == "K4" ? 4 : (lay.model == "C3" ? 3 : 5)), {}),
        lay.flavor);
    long t = lay.flavor == Flavor::Cochain ? full.top() + a : a;
    lay.t = (t < 0 || t > full.top()) ? -1 : int(t);
}

void build_values(MackeyLayer& lay, LayerScratch& sc, const SubgroupLattice& lat) {
    int nc = int(lat.classes.size());
    for (int s = 0; s < int(lay.sub.size()); ++s) {
        MackeySub& ms = lay.sub[size_t(s)];
        ms.cells = cells_of(lay, ms.grp);
        ms.value = homology_subquot(level_complex(lay.model, lay.n, ms.cells, lay.flavor),
                                    lay.t);
        if (ms.grp.order() == 1) sc.e_sub = s;
    }
    need(sc.e_sub >= 0, "missing trivial subgroup level");
    lay.level_value.resize(size_t(nc));
    for (int i = 0; i < nc; ++i) {
        if (!chain_class(lay, i)) continue;
        const MackeySub& ms = lay.sub[size_t(lay.level_sub[size_t(i)])];
        PermGroup nh = normalizer(lay.level_rep[size_t(i)], ms.grp);
        std::vector<Perm> wg = gens_over(nh, ms.grp);
        std::vector<Constraint> cs;
        std::vector<IntMat> mats;
        mats.reserve(wg.size());
        for (const Perm& w : wg) {
            IntMat f = symmetry_mat(lay, w, ms.cells, ms.cells);
            for (int d = 0; d < f.rows; ++d) f.at(d, d) -= 1;
            mats.push_back(std::move(f));
        }
        for (const IntMat& f : mats) cs.push_back(Constraint{f, &ms.value});
        lay.level_value[size_t(i)] = kernel_subgroup(ms.value, cs);
    }
}

void build_free_data(MackeyLayer& lay, LayerScratch& sc, const SubgroupLattice& lat) {
    int nc = int(lat.classes.size());
    sc.local.resize(size_t(nc));
    lay.free_coord.assign(size_t(nc), -1);
    lay.free_sign.assign(size_t(nc), 1);
    lay.info.resize(size_t(nc));
    const SubQuot& ev = lay.level_value[size_t(sc.e_class)];
    LevelLocal el = scan_level(ev);
    need(el.rank == int(el.to_canon.size()), "bottom level carries torsion");
    for (int i = 0; i < nc; ++i) {
        if (!chain_class(lay, i)) continue;
        const SubQuot& v = lay.level_value[size_t(i)];
        LevelLocal ll = scan_level(v);
        LocalLevelInfo& info = lay.info[size_t(i)];
        info.on_model = true;
        info.rank = ll.rank;
        for (const Int& o : ll.orders)
            if (o != 0) info.torsion.push_back(o);
        if (ll.rank == 1) {
            need(el.rank == 1, "free class over an empty bottom level");
            int fc = ll.to_canon[0];
            IntMat chain = v.canon().chains.col(fc);
            const MackeySub& ms = lay.sub[size_t(lay.level_sub[size_t(i)])];
            IntMat down = res_chain(lay, lay.sub[size_t(sc.e_sub)].cells, ms.cells);
            std::vector<Int> coeffs;
            need(ev.express(down.mul(chain), coeffs), "free class escapes the bottom level");
            Int c = coeffs[0];
            need(c != 0, "free class dies at the bottom level");
            lay.free_coord[size_t(i)] = fc;
            lay.free_sign[size_t(i)] = c < 0 ? -1 : 1;
            info.index = c < 0 ? -c : c;
            Int rem = info.index;
            while (rem % lay.p == 0) rem /= lay.p;
            need(rem == 1, "free index is not a power of its prime");
        }
        sc.local[size_t(i)] = ll;
    }
}

/* Transfer across one comparable pair from the double-coset formula: orbits
 * with nontrivial stabilizer go through the chain composite (transfer after
 * conjugation after restriction), free orbits through the bottom level with
 * the orientation character.  Terms sum in the target chain group before a
 * single read-off in the target level. */
IntMat build_tr_local(const MackeyLayer& lay, const LayerScratch& sc, const VirtualRep& v,
                      int i, int j) {
    const LevelLocal& li = sc.local[size_t(i)];
    const LevelLocal& lj = sc.local[size_t(j)];
    const LocalLevelInfo& fi = lay.info[size_t(i)];
    const LocalLevelInfo& fj = lay.info[size_t(j)];
    const PermGroup& hi = lay.level_rep[size_t(i)];
    const PermGroup& hj = lay.level_rep[size_t(j)];
    long index = hj.order() / hi.order();
    if (!chain_class(lay, j)) {
        IntMat m(int(lj.to_canon.size()), int(li.to_canon.size()));
        if (fi.rank == 1 && fj.rank == 1) {
            Int s = 0;
            std::set<Perm> seen;
            for (const Perm& g : hj.elements) {
                bool hit = false;
                for (const Perm& q : hi.elements) hit = hit || seen.count(perm_mul(g, q));
                if (hit) continue;
                seen.insert(g);
                s += chi_of(v, g);
            }
            Int num = s * fi.index;
            need(num % fj.index == 0, "transfer index fails to divide");
            m.at(0, 0) = num / fj.index;
        }
        return m;
    }
    const SubQuot& vj = lay.level_value[size_t(j)];
    const PermGroup& qj = lay.sub[size_t(lay.level_sub[size_t(j)])].grp;
    const PermGroup& cj = lay.sub[size_t(lay.level_sub[size_t(j)])].cells;
    const SubQuot& ev = lay.level_value[size_t(sc.e_class)];
    IntMat te;
    bool have_te = false;
    const LevelLocal& el = sc.local[size_t(sc.e_class)];
    if (el.rank == 1) {
        IntMat echain = ev.canon().chains.col(el.to_canon[0]);
        te = tr_chain(lay, lay.sub[size_t(sc.e_sub)].cells, cj).mul(echain);
        have_te = true;
    }
    std::vector<DoubleCosetOrbit> dco = double_coset_orbits(hj, qj, hi);
    if (!chain_class(lay, i)) {
        // source without p-torsion: only the free generator transfers, and
        // every coset orbit is free on the model
        IntMat m(int(lj.to_canon.size()), int(li.to_canon.size()));
        if (fi.rank == 0) return m;
        need(fi.index == 1, "coprime level with a nontrivial index");
        Int s = 0;
        for (const DoubleCosetOrbit& o : dco) {
            need(o.stabilizer.order() == 1, "coprime source with a stabilized coset");
            s += chi_of(v, o.rep);
        }
        if (!have_te || s == 0) return m;
        IntMat img(te.rows, 1);
        for (int r = 0; r < te.rows; ++r) img.at(r, 0) = s * te.at(r, 0);
        std::vector<Int> coeffs;
        need(vj.express(img, coeffs), "transfer image escapes the level");
        place_column(m, 0, coeffs, lj, lay.free_sign[size_t(j)]);
        return m;
    }
    const SubQuot& vi = lay.level_value[size_t(i)];
    const PermGroup& qi = lay.sub[size_t(lay.level_sub[size_t(i)])].grp;
    const PermGroup& ci = lay.sub[size_t(lay.level_sub[size_t(i)])].cells;
    IntMat gens = local_gen_chains(vi, li, lay.free_sign[size_t(i)]);
    // bottom-level coefficient of each generator
    std::vector<Int> cvec(size_t(gens.cols), Int(0));
    if (el.rank == 1 && gens.cols > 0) {
        IntMat down = res_chain(lay, lay.sub[size_t(sc.e_sub)].cells, ci).mul(gens);
        for (int c = 0; c < down.cols; ++c) {
            std::vector<Int> coeffs;
            need(ev.express(down.col(c), coeffs), "level escapes the bottom level");
            cvec[size_t(c)] = coeffs[0];
        }
    }
    int dim_j = te.rows;
    if (!have_te) dim_j = tr_chain(lay, ci, cj).rows;
    IntMat acc(dim_j, gens.cols);
    for (const DoubleCosetOrbit& o : dco) {
        if (o.stabilizer.order() == 1) {
            if (!have_te) continue;
            Int s = chi_of(v, o.rep);
            for (int c = 0; c < gens.cols; ++c) {
                if (cvec[size_t(c)] == 0) continue;
                for (int r = 0; r < dim_j; ++r)
                    acc.at(r, c) += s * cvec[size_t(c)] * te.at(r, 0);
            }
            continue;
        }
        Perm g;
        bool adjusted = false;
        for (const Perm& h : hi.elements) {
            Perm cand = perm_mul(o.rep, h);
            if (qi.contains_group(conjugate_subgroup(o.stabilizer, perm_inv(cand)))) {
                g = cand;
                adjusted = true;
                break;
            }
        }
        need(adjusted, "stabilizer fails to land in the source Sylow piece");
        PermGroup qb = conjugate_subgroup(o.stabilizer, perm_inv(g));
        PermGroup cells_b = cells_of(lay, qb);
        PermGroup cells_o = cells_of(lay, o.stabilizer);
        IntMat term = tr_chain(lay, cells_o, cj)
                          .mul(symmetry_mat(lay, g, cells_b, cells_o))
                          .mul(res_chain(lay, cells_b, ci))
                          .mul(gens);
        for (size_t z = 0; z < acc.a.size(); ++z) acc.a[z] += term.a[z];
    }
    IntMat m(int(lj.to_canon.size()), int(li.to_canon.size()));
    for (int c = 0; c < gens.cols; ++c) {
        std::vector<Int> coeffs;
        need(vj.express(acc.col(c), coeffs), "transfer image escapes the level");
        place_column(m, c, coeffs, lj, lay.free_sign[size_t(j)]);
    }
    if (fi.rank == 1 && fj.rank == 1) {
        Int expect = Int(index) * fi.index;
        need(expect % fj.index == 0, "transfer index fails to divide");
        need(m.at(0, 0) == expect / fj.index, "transfer disagrees with the index ledger");
    }
    if (fj.rank == 1)
        for (int c = (fi.rank == 1 ? 1 : 0); c < m.cols; ++c)
            need(m.at(0, c) == 0, "torsion transfers onto the free generator");
    return m;
}

IntMat build_res_local(const MackeyLayer& lay, const LayerScratch& sc, int i, int j) {
    const LevelLocal& li = sc.local[size_t(i)];
    const LevelLocal& lj = sc.local[size_t(j)];
    const LocalLevelInfo& fi = lay.info[size_t(i)];
    const LocalLevelInfo& fj = lay.info[size_t(j)];
    if (!chain_class(lay, i) || !chain_class(lay, j)) {
        IntMat m(int(li.to_canon.size()), int(lj.to_canon.size()));
        if (fi.rank == 1 && fj.rank == 1) {
            need(fj.index % fi.index == 0, "restriction index fails to divide");
            m.at(0, 0) = fj.index / fi.index;
        }
        return m;
    }
    const PermGroup& ci = lay.sub[size_t(lay.level_sub[size_t(i)])].cells;
    const PermGroup& cj = lay.sub[size_t(lay.level_sub[size_t(j)])].cells;
    IntMat f = res_chain(lay, ci, cj);
    IntMat out;
    need(induced_map(lay.level_value[size_t(j)], lay.level_value[size_t(i)], f, out),
         "restriction fails to carry the level");
    IntMat m = relocal(out, li, lay.free_sign[size_t(i)], lj, lay.free_sign[size_t(j)]);
    if (fi.rank == 1 && fj.rank == 1) {
        need(fj.index % fi.index == 0, "restriction index fails to divide");
        need(m.at(0, 0) == fj.index / fi.index,
             "restriction disagrees with the index ledger");
    }
    if (fi.rank == 1)
        for (int c = (fj.rank == 1 ? 1 : 0); c < m.cols; ++c)
            need(m.at(0, c) == 0, "torsion restricts onto the free generator");
    return m;
}

MackeyLayer build_layer(const IrrepCatalog& cat, const VirtualRep& v, long p,
                        LayerScratch& sc) {
    const SubgroupLattice& lat = cat.lat;
    MackeyLayer lay;
    lay.p = p;
    lay.sylow = sylow(lat, p).representative;
    derive_model(lay, cat, v, lay.sylow);
    build_bridge(lay, lat.group);
    int nc = int(lat.classes.size());
    lay.level_rep = aligned_reps(lat, lay.sylow, p);
    lay.level_sub.assign(size_t(nc), -1);
    lay.info.resize(size_t(nc));
    for (int i = 0; i < nc; ++i)
        if (lat.classes[size_t(i)].representative.order() == 1) sc.e_class = i;
    need(sc.e_class >= 0, "lattice without a trivial class");
    if (lay.t < 0) return lay;  // empty degree window: every level vanishes
    std::vector<PermGroup> subs = sylow_subgroups(lay.sylow);
    lay.sub.resize(subs.size());
    for (size_t s = 0; s < subs.size(); ++s) lay.sub[s].grp = subs[s];
    for (int i = 0; i < nc; ++i) {
        long o = lat.classes[size_t(i)].representative.order();
        if (o != 1 && o % p != 0) continue;
        PermGroup q = intersect(lay.level_rep[size_t(i)], lay.sylow);
        int hit = -1;
        for (int s = 0; s < int(lay.sub.size()); ++s)
            if (lay.sub[size_t(s)].grp.same_elements(q)) hit = s;
        need(hit >= 0, "Sylow piece missing from the subgroup list");
        lay.level_sub[size_t(i)] = hit;
    }
    build_values(lay, sc, lat);
    build_free_data(lay, sc, lat);
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < nc; ++i) {
            if (i == j || !lat.subconj[size_t(i)][size_t(j)]) continue;
            MackeyMaps mm;
            mm.res = build_res_local(lay, sc, i, j);
            mm.tr = build_tr_local(lay, sc, v, i, j);
            lay.edge[{i, j}] = std::move(mm);
        }
    return lay;
}

// Independent per-class check: the chain-level value must agree with the
// localized tower computation, which never sees the level machinery.
void cross_check_layer(const MackeyLayer& lay, const IrrepCatalog& cat,
                       const VirtualRep& v) {
    const SubgroupLattice& lat = cat.lat;
    for (int i = 0; i < int(lat.classes.size()); ++i) {
        LocalizedResult lr = localized_homotopy(restrict_rep(v, i), lay.p);
        FGAbelianGroup mine;
        if (lay.t >= 0 && chain_class(lay, i)) {
            mine = lay.level_value[size_t(i)].group();
        } else {
            mine.rank = lay.info[size_t(i)].rank;
        }
        if (!(mine == lr.group))
            throw std::logic_error("mackey: level " + class_display_name(cat.group, lat, i) +
                                   " at p=" + std::to_string(lay.p) + " came out " +
                                   mine.to_string() + " against " + lr.group.to_string());
    }
}

// Off-model classes only know their free rank; take it from the localized
// route so that the glue sees a complete row of local parts.
void fill_off_model_ranks(MackeyLayer& lay, const IrrepCatalog& cat, const VirtualRep& v) {
    for (int i = 0; i < int(cat.lat.classes.size()); ++i) {
        if (lay.t >= 0 && chain_class(lay, i)) continue;
        LocalizedResult lr = localized_homotopy(restrict_rep(v, i), lay.p);
        need(lr.group.invariant_factors.empty(), "off-model level with local torsion");
        lay.info[size_t(i)].rank = lr.group.rank;
        lay.info[size_t(i)].on_model = false;
        lay.info[size_t(i)].index = 1;
    }
}

// ---- integral glue across the layers ----

FGAbelianGroup layer_group(const MackeyLayer& lay, int i) {
    FGAbelianGroup g;
    g.rank = lay.info[size_t(i)].rank;
    g.invariant_factors = lay.info[size_t(i)].torsion;
    return g;
}

struct GlueIndex {
    std::vector<int> rank;                  // per class
    std::vector<Int> index;                 // integral free index per class
    std::vector<std::vector<int>> offset;   // [layer][class] torsion block start
    std::vector<int> total;                 // basis length per class
};

GlueIndex glue_shape(const std::vector<MackeyLayer>& layers, int nc) {
    GlueIndex gi;
    gi.rank.assign(size_t(nc), 0);
    gi.index.assign(size_t(nc), Int(1));
    gi.total.assign(size_t(nc), 0);
    gi.offset.assign(layers.size(), std::vector<int>(size_t(nc), 0));
    for (int i = 0; i < nc; ++i) {
        gi.rank[size_t(i)] = layers.front().info[size_t(i)].rank;
        int at = gi.rank[size_t(i)];
        for (size_t l = 0; l < layers.size(); ++l) {
            need(layers[l].info[size_t(i)].rank == gi.rank[size_t(i)],
                 "free ranks disagree between primes");
            gi.index[size_t(i)] *= layers[l].info[size_t(i)].index;
            gi.offset[l][size_t(i)] = at;
            at += int(layers[l].info[size_t(i)].torsion.size());
        }
        gi.total[size_t(i)] = at;
    }
    return gi;
}

/* One integral matrix from the per-prime blocks.  The integral free
 * generator restricts, prime by prime, to the layer generator scaled by the
 * complementary part of its index; free-to-torsion entries pick up exactly
 * that factor. */
IntMat glue_edge(const std::vector<MackeyLayer>& layers, const GlueIndex& gi,
                 bool transfer, long index, int dst, int src,
                 const std::vector<const IntMat*>& blocks) {
    IntMat m(gi.total[size_t(dst)], gi.total[size_t(src)]);
    if (gi.rank[size_t(dst)] == 1 && gi.rank[size_t(src)] == 1) {
        Int num = transfer ? Int(index) * gi.index[size_t(src)] : gi.index[size_t(src)];
        Int den = transfer ? gi.index[size_t(dst)] : gi.index[size_t(dst)];
        if (!transfer) {
            num = gi.index[size_t(src)];
            den = gi.index[size_t(dst)];
        }
        need(num % den == 0, "integral free entry fails to divide");
        m.at(0, 0) = num / den;
    }
    for (size_t l = 0; l < layers.size(); ++l) {
        const MackeyLayer& lay = layers[l];
        const IntMat& b = *blocks[l];
        int nt_d = int(lay.info[size_t(dst)].torsion.size());
        int nt_s = int(lay.info[size_t(src)].torsion.size());
        int rd = lay.info[size_t(dst)].rank;
        int rs = lay.info[size_t(src)].rank;
        Int scale = gi.index[size_t(src)] / lay.info[size_t(src)].index;
        for (int a = 0; a < nt_d; ++a) {
            Int order = lay.info[size_t(dst)].torsion[size_t(a)];
            if (rs == 1) {
                Int vfree = b.at(rd + a, 0) * scale;
                vfree %= order;
                if (vfree < 0) vfree += order;
                m.at(gi.offset[l][size_t(dst)] + a, 0) = vfree;
            }
            for (int c = 0; c < nt_s; ++c)
                m.at(gi.offset[l][size_t(dst)] + a, gi.offset[l][size_t(src)] + c) =
                    b.at(rd + a, rs + c);
        }
    }
    return m;
}

// ---- conjugation by Weyl generators ----

Perm transport_rep(const PermGroup& g, const PermGroup& from, const PermGroup& to) {
    for (const Perm& u : g.elements)
        if (conjugate_subgroup(from, u).same_elements(to)) return u;
    throw std::logic_error("mackey: class members fail to be conjugate");
}

/* Weyl conjugation matrices per class, realized on each layer and glued
 * like the edges.  Only bottom and p-subgroup classes carry a nontrivial
 * Weyl action among the supported groups, so every generator is realizable:
 * through the model on the class's own prime, through the orientation
 * character elsewhere. */
void build_conjugations(MackeyFunctor& m, const std::vector<MackeyLayer>& layers,
                        const std::vector<LayerScratch>& scratch, const GlueIndex& gi) {
    const SubgroupLattice& lat = *m.lat;
    int nc = int(lat.classes.size());
    m.conj_rep.resize(size_t(nc));
    m.conj.resize(size_t(nc));
    for (int i = 0; i < nc; ++i) {
        const SubgroupClass& cls = lat.classes[size_t(i)];
        std::vector<Perm> wg = gens_over(cls.normalizer, cls.representative);
        m.conj_rep[size_t(i)] = wg;
        for (const Perm& w : wg) {
            std::vector<IntMat> blocks;
            std::vector<const IntMat*> ptrs;
            blocks.reserve(layers.size());
            for (size_t l = 0; l < layers.size(); ++l) {
                const MackeyLayer& lay = layers[l];
                const LayerScratch& sc = scratch[l];
                const LevelLocal& ll = sc.local.empty() ? LevelLocal{} : sc.local[size_t(i)];
                int nb = lay.t >= 0 && chain_class(lay, i) ? int(ll.to_canon.size())
                                                           : lay.info[size_t(i)].rank;
                IntMat b(nb, nb);
                bool scalar = true;
                if (lay.t >= 0 && chain_class(lay, i) &&
                    lay.sub[size_t(lay.level_sub[size_t(i)])].grp.order() ==
                        lay.level_rep[size_t(i)].order() &&
                    lay.level_rep[size_t(i)].order() > 1) {
                    // p-subgroup class on its own prime: the model sees w
                    Perm u = transport_rep(lat.group, cls.representative,
                                           lay.level_rep[size_t(i)]);
                    Perm wp = perm_mul(u, perm_mul(w, perm_inv(u)));
                    const PermGroup& cells =
                        lay.sub[size_t(lay.level_sub[size_t(i)])].cells;
                    IntMat f = symmetry_mat(lay, wp, cells, cells);
                    IntMat out;
                    need(induced_map(lay.level_value[size_t(i)], lay.level_value[size_t(i)],
                                     f, out),
                         "conjugation fails to carry the level");
                    b = relocal(out, ll, lay.free_sign[size_t(i)], ll,
                                lay.free_sign[size_t(i)]);
                    scalar = false;
                }
                if (scalar) {
                    need(lay.info[size_t(i)].torsion.empty(),
                         "scalar conjugation on a torsion level");
                    if (nb == 1) b.at(0, 0) = chi_of(m.grading, w);
                }
                blocks.push_back(std::move(b));
            }
            for (const IntMat& b : blocks) ptrs.push_back(&b);
            m.conj[size_t(i)].push_back(
                glue_edge(layers, gi, false, 1, i, i, ptrs));
        }
    }
}

}  // namespace

MackeyFunctor assemble(const PermGroup& g, const VirtualRep& v) {
    if (!v.cat) throw std::invalid_argument("assemble: empty grading");
    const IrrepCatalog& cat = *v.cat;
    if (!g.same_elements(cat.lat.group))
        throw std::invalid_argument("assemble: grading does not live on that group");
    MackeyFunctor out;
    out.group = cat.group;
    out.grading = v;
    out.lat = &cat.lat;
    int nc = int(cat.lat.classes.size());
    out.level_name.reserve(size_t(nc));
    for (int i = 0; i < nc; ++i)
        out.level_name.push_back(class_display_name(cat.group, cat.lat, i));
    if (cat.group == "e") {
        FGAbelianGroup z;
        if (v.coeff[0] == 0) z.rank = 1;
        out.level = {z};
        out.basis = {z.rank ? std::vector<Int>{Int(0)} : std::vector<Int>{}};
        out.conj_rep = {{}};
        out.conj = {{}};
        out.layers = std::make_shared<const std::vector<MackeyLayer>>();
        return out;
    }
    std::vector<long> primes = dividing_primes(cat.lat.group.order());
    std::vector<MackeyLayer> layers;
    std::vector<LayerScratch> scratch(primes.size());
    layers.reserve(primes.size());
    for (size_t l = 0; l < primes.size(); ++l) {
        layers.push_back(build_layer(cat, v, primes[l], scratch[l]));
        fill_off_model_ranks(layers.back(), cat, v);
        cross_check_layer(layers.back(), cat, v);
    }
    GlueIndex gi = glue_shape(layers, nc);
    out.level.resize(size_t(nc));
    out.basis.resize(size_t(nc));
    for (int i = 0; i < nc; ++i) {
        std::vector<LocalizedResult> parts;
        parts.reserve(layers.size());
        for (const MackeyLayer& lay : layers)
            parts.push_back({lay.p, layer_group(lay, i), {}});
        out.level[size_t(i)] = glue(parts);
        std::vector<Int>& basis = out.basis[size_t(i)];
        for (int r = 0; r < gi.rank[size_t(i)]; ++r) basis.push_back(0);
        for (const MackeyLayer& lay : layers)
            for (const Int& o : lay.info[size_t(i)].torsion) basis.push_back(o);
    }
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < nc; ++i) {
            if (i == j || !cat.lat.subconj[size_t(i)][size_t(j)]) continue;
            long index = cat.lat.classes[size_t(j)].representative.order() /
                         cat.lat.classes[size_t(i)].representative.order();
            std::vector<const IntMat*> res_blocks, tr_blocks;
            for (const MackeyLayer& lay : layers) {
                const MackeyMaps& mm = lay.edge.count({i, j})
                                           ? lay.edge.at({i, j})
                                           : lay.edge.emplace({i, j}, MackeyMaps{}).first->second;
                res_blocks.push_back(&mm.res);
                tr_blocks.push_back(&mm.tr);
            }
            MackeyMaps glued;
            glued.res = glue_edge(layers, gi, false, index, i, j, res_blocks);
            glued.tr = glue_edge(layers, gi, true, index, j, i, tr_blocks);
            out.edge[{i, j}] = std::move(glued);
        }
    build_conjugations(out, layers, scratch, gi);
    out.layers = std::make_shared<const std::vector<MackeyLayer>>(std::move(layers));
    return out;
}

CohomologicalReport check_cohomological(const MackeyFunctor& m) {
    CohomologicalReport rep;
    for (const auto& [key, mm] : m.edge) {
        auto [i, j] = key;
        long index = m.lat->classes[size_t(j)].representative.order() /
                     m.lat->classes[size_t(i)].representative.order();
        if (mm.res.rows != mm.tr.cols || mm.res.cols != mm.tr.rows) {
            rep.ok = false;
            rep.detail = "shape mismatch at (" + m.level_name[size_t(i)] + " <= " +
                         m.level_name[size_t(j)] + ")";
            return rep;
        }
        IntMat prod = mm.tr.mul(mm.res);
        const std::vector<Int>& basis = m.basis[size_t(j)];
        for (int r = 0; r < prod.rows; ++r)
            for (int c = 0; c < prod.cols; ++c) {
                Int want = r == c ? Int(index) : Int(0);
                Int diff = prod.at(r, c) - want;
                const Int& order = basis[size_t(r)];
                bool ok = order == 0 ? diff == 0 : diff % order == 0;
                if (!ok) {
                    rep.ok = false;
                    rep.detail = "transfer of restriction misses x" +
                                 std::to_string(index) + " at (" +
                                 m.level_name[size_t(i)] + " <= " +
                                 m.level_name[size_t(j)] + ")";
                    return rep;
                }
            }
    }
    return rep;
}

FGAbelianGroup top_level_via_transfers(const MackeyFunctor& m, long p) {
    if (!m.layers || m.layers->empty())
        throw std::invalid_argument("top_level_via_transfers: no layer data");
    const MackeyLayer* layp = nullptr;
    for (const MackeyLayer& lay : *m.layers)
        if (lay.p == p) layp = &lay;
    if (!layp) throw std::invalid_argument("top_level_via_transfers: no layer at that prime");
    const MackeyLayer& lay = *layp;
    const SubgroupLattice& lat = *m.lat;
    int top = 0;
    for (int i = 0; i < int(lat.classes.size()); ++i)
        if (lat.classes[size_t(i)].representative.order() == lat.group.order()) top = i;
    FGAbelianGroup expect = m.level[size_t(top)].p_part(Int(p));
    if (lay.t < 0) {
        if (!expect.is_trivial())
            throw std::runtime_error("top_level_via_transfers: empty window against " +
                                     expect.to_string());
        return expect;
    }
    int psub = -1;
    for (int s = 0; s < int(lay.sub.size()); ++s)
        if (lay.sub[size_t(s)].grp.same_elements(lay.sylow)) psub = s;
    need(psub >= 0, "Sylow level missing");
    const SubQuot& hp = lay.sub[size_t(psub)].value;
    const PermGroup& pc = lay.sub[size_t(psub)].cells;
    std::vector<IntMat> rels;
    int ambient = hp.cycles.rows;
    for (const MackeySub& ms : lay.sub) {
        const IntMat& chains = ms.value.canon().chains;
        if (chains.cols == 0) continue;
        IntMat ta = tr_chain(lay, ms.cells, pc);
        for (const Perm& g : lat.group.elements) {
            PermGroup qb = conjugate_subgroup(ms.grp, perm_inv(g));
            if (!lay.sylow.contains_group(qb)) continue;
            if (ms.grp.order() == 1) {
                Int s = 1 - chi_of(m.grading, g);
                if (s == 0) continue;
                IntMat col = ta.mul(chains);
                for (int c = 0; c < col.cols; ++c) {
                    IntMat r(ambient, 1);
                    for (int row = 0; row < ambient; ++row)
                        r.at(row, 0) = s * col.at(row, c);
                    rels.push_back(std::move(r));
                }
                continue;
            }
            PermGroup cells_b = cells_of(lay, qb);
            IntMat moved = tr_chain(lay, cells_b, pc)
                               .mul(symmetry_mat(lay, perm_inv(g), ms.cells, cells_b))
                               .mul(chains);
            IntMat straight = ta.mul(chains);
            for (int c = 0; c < straight.cols; ++c) {
                IntMat r(ambient, 1);
                bool nonzero = false;
                for (int row = 0; row < ambient; ++row) {
                    r.at(row, 0) = straight.at(row, c) - moved.at(row, c);
                    nonzero = nonzero || r.at(row, 0) != 0;
                }
                if (nonzero) rels.push_back(std::move(r));
            }
        }
    }
    IntMat extra(ambient, int(rels.size()));
    for (int c = 0; c < extra.cols; ++c)
        for (int r = 0; r < ambient; ++r) extra.at(r, c) = rels[size_t(c)].at(r, 0);
    FGAbelianGroup got = quotient_by(hp, extra).group().p_part(Int(p));
    if (!(got == expect))
        throw std::runtime_error("top_level_via_transfers: relations leave " +
                                 got.to_string() + " against the assembled " +
                                 expect.to_string());
    return got;
}

namespace {

std::string mat_text(const IntMat& m) {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < m.rows; ++r) {
        if (r) os << "; ";
        for (int c = 0; c < m.cols; ++c) {
            if (c) os << " ";
            os << m.at(r, c);
        }
    }
    os << "]";
    return os.str();
}

std::vector<std::pair<int, int>> ordered_edges(const MackeyFunctor& m) {
    std::vector<std::pair<int, int>> keys;
    for (const auto& [key, mm] : m.edge) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first > b.first;
    });
    return keys;
}

}  // namespace

std::string lewis_text(const MackeyFunctor& m) {
    std::ostringstream os;
    os << m.group << " module graded by " << rep_to_string(m.grading) << "\n";
    os << "levels:\n";
    for (int i = int(m.level.size()) - 1; i >= 0; --i)
        os << "  " << m.level_name[size_t(i)] << ": " << m.level[size_t(i)].to_string()
           << "\n";
    os << "maps:\n";
    for (const auto& [i, j] : ordered_edges(m)) {
        const MackeyMaps& mm = m.edge.at({i, j});
        os << "  " << m.level_name[size_t(i)] << " <= " << m.level_name[size_t(j)]
           << "  res " << mat_text(mm.res) << "  tr " << mat_text(mm.tr) << "\n";
    }
    os << "conjugation:\n";
    for (size_t i = 0; i < m.conj_rep.size(); ++i)
        for (size_t k = 0; k < m.conj_rep[i].size(); ++k)
            os << "  " << m.level_name[i] << " by " << perm_to_string(m.conj_rep[i][k])
               << ": " << mat_text(m.conj[i][k]) << "\n";
    return os.str();
}

std::string lewis_json(const MackeyFunctor& m) {
    nlohmann::json root;
    root["group"] = m.group;
    root["grading"] = rep_to_string(m.grading);
    nlohmann::json levels = nlohmann::json::array();
    for (size_t i = 0; i < m.level.size(); ++i) {
        nlohmann::json l;
        l["name"] = m.level_name[i];
        l["value"] = m.level[i].to_string();
        nlohmann::json orders = nlohmann::json::array();
        for (const Int& o : m.basis[i]) orders.push_back(long(o));
        l["orders"] = orders;
        levels.push_back(l);
    }
    root["levels"] = levels;
    auto mat_json = [](const IntMat& mm) {
        nlohmann::json rows = nlohmann::json::array();
        for (int r = 0; r < mm.rows; ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (int c = 0; c < mm.cols; ++c) row.push_back(long(mm.at(r, c)));
            rows.push_back(row);
        }
        return rows;
    };
    nlohmann::json maps = nlohmann::json::array();
    for (const auto& [i, j] : ordered_edges(m)) {
        const MackeyMaps& mm = m.edge.at({i, j});
        nlohmann::json e;
        e["sub"] = m.level_name[size_t(i)];
        e["super"] = m.level_name[size_t(j)];
        e["res"] = mat_json(mm.res);
        e["tr"] = mat_json(mm.tr);
        maps.push_back(e);
    }
    root["maps"] = maps;
    nlohmann::json conj = nlohmann::json::array();
    for (size_t i = 0; i < m.conj_rep.size(); ++i)
        for (size_t k = 0; k < m.conj_rep[i].size(); ++k) {
            nlohmann::json e;
            e["level"] = m.level_name[i];
            e["generator"] = perm_to_string(m.conj_rep[i][k]);
            e["matrix"] = mat_json(m.conj[i][k]);
            conj.push_back(e);
        }
    root["conjugation"] = conj;
    return root.dump(2);
}

}  // namespace rogz
