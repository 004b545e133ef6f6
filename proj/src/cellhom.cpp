#include "rogz/cellhom.h"

#include <algorithm>
#include <array>
#include <cassert>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rogz {

std::string CellLabel::to_string() const {
    std::ostringstream os;
    if (lam) os << "lam";
    os << "(";
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) os << ",";
        os << idx[i];
    }
    os << ")";
    return os.str();
}

long ChainComplex::dim(int t) const {
    if (t < 0 || t >= int(cells.size())) return 0;
    return long(cells[t].size());
}

int ChainComplex::label_index(int t, const CellLabel& l) const {
    if (t < 0 || t >= int(cells.size())) return -1;
    for (size_t i = 0; i < cells[t].size(); ++i)
        if (cells[t][i] == l) return int(i);
    return -1;
}

namespace {

// ----------------------------------------------------------------- catalogs

enum class Kind { C2, Cp, K4 };

struct CatalogInfo {
    Kind kind;
    int p;  // 2 for the sigma tower, the odd prime for rotation towers, 4 for K4
};

CatalogInfo parse_catalog(const std::string& catalog) {
    if (catalog == "C2") return {Kind::C2, 2};
    if (catalog == "K4") return {Kind::K4, 4};
    if (catalog.size() >= 2 && catalog[0] == 'C') {
        int p = 0;
        for (size_t i = 1; i < catalog.size(); ++i) {
            if (!isdigit(catalog[i])) { p = 0; break; }
            p = p * 10 + (catalog[i] - '0');
        }
        bool prime = p >= 3 && p % 2 == 1;
        for (int d = 3; prime && d * d <= p; d += 2)
            if (p % d == 0) prime = false;
        if (prime) return {Kind::Cp, p};
    }
    throw std::invalid_argument("unknown catalog: " + catalog);
}

/* Cell structure of the sphere model before any orbit identification.
 * key per kind:
 *   C2:  {j, s}           sheet s of the degree-j cell; fixed cell {0,0}
 *   Cp:  {t, i}           rotation index i; fixed cell {0,0}
 *   K4:  {j1,s1,j2,s2,j3,s3}  smash of three sheeted towers */
struct ELevel {
    CatalogInfo info;
    int n = 0;
    std::vector<std::vector<int>> key;
    std::vector<int> deg;
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<std::pair<int, Int>>> bnd;  // cell -> boundary chain
    std::vector<std::vector<int>> gens;                 // translation generators on cells
    int topdeg = 0;
};

// boundary of one sheeted-tower cell (j, s), as (j', s', coeff) triples
std::vector<std::array<int, 2>> tower_faces(int j, int s, std::vector<Int>& coeff) {
    coeff.clear();
    if (j == 0) return {};
    if (j == 1) {
        coeff.push_back(1);
        return {{0, 0}};
    }
    coeff.push_back(1);
    coeff.push_back((j - 1) % 2 == 0 ? 1 : -1);
    return {{j - 1, s}, {j - 1, 1 - s}};
}

void finish_cells(ELevel& e, std::vector<std::vector<int>> keys,
                  const std::function<int(const std::vector<int>&)>& degree_of) {
    std::sort(keys.begin(), keys.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
        int da = degree_of(a), db = degree_of(b);
        if (da != db) return da < db;
        return a < b;
    });
    e.key = std::move(keys);
    for (size_t c = 0; c < e.key.size(); ++c) {
        e.deg.push_back(degree_of(e.key[c]));
        e.index[e.key[c]] = int(c);
    }
    e.topdeg = e.deg.empty() ? 0 : e.deg.back();
    e.bnd.resize(e.key.size());
}

ELevel build_elevel(const CatalogInfo& info, int n) {
    if (n < 0) throw std::invalid_argument("sphere model needs n >= 0");
    ELevel e;
    e.info = info;
    e.n = n;

    if (info.kind == Kind::C2) {
        std::vector<std::vector<int>> keys{{0, 0}};
        for (int j = 1; j <= n; ++j)
            for (int s = 0; s < 2; ++s) keys.push_back({j, s});
        finish_cells(e, keys, [](const std::vector<int>& k) { return k[0]; });
        for (size_t c = 0; c < e.key.size(); ++c) {
            auto [j, s] = std::pair(e.key[c][0], e.key[c][1]);
            std::vector<Int> cf;
            auto faces = tower_faces(j, s, cf);
            for (size_t f = 0; f < faces.size(); ++f)
                e.bnd[c].push_back({e.index.at({faces[f][0], faces[f][1]}), cf[f]});
        }
        std::vector<int> swap_sheets(e.key.size());
        for (size_t c = 0; c < e.key.size(); ++c) {
            auto k = e.key[c];
            if (k[0] > 0) k[1] = 1 - k[1];
            swap_sheets[c] = e.index.at(k);
        }
        e.gens.push_back(swap_sheets);
        return e;
    }

    if (info.kind == Kind::Cp) {
        const int p = info.p;
        std::vector<std::vector<int>> keys{{0, 0}};
        for (int t = 1; t <= 2 * n; ++t)
            for (int i = 0; i < p; ++i) keys.push_back({t, i});
        finish_cells(e, keys, [](const std::vector<int>& k) { return k[0]; });
        for (size_t c = 0; c < e.key.size(); ++c) {
            int t = e.key[c][0], i = e.key[c][1];
            if (t == 0) continue;
            if (t == 1) {
                e.bnd[c].push_back({e.index.at({0, 0}), 1});
            } else if (t % 2 == 0) {
                e.bnd[c].push_back({e.index.at({t - 1, (i + 1) % p}), 1});
                e.bnd[c].push_back({e.index.at({t - 1, i}), -1});
            } else {
                for (int r = 0; r < p; ++r) e.bnd[c].push_back({e.index.at({t - 1, r}), 1});
            }
        }
        std::vector<int> rot(e.key.size());
        for (size_t c = 0; c < e.key.size(); ++c) {
            auto k = e.key[c];
            if (k[0] > 0) k[1] = (k[1] + 1) % p;
            rot[c] = e.index.at(k);
        }
        e.gens.push_back(rot);
        return e;
    }

    // K4: smash of three sheeted towers
    std::vector<std::vector<int>> keys;
    std::vector<int> k(6);
    for (k[0] = 0; k[0] <= n; ++k[0])
        for (k[2] = 0; k[2] <= n; ++k[2])
            for (k[4] = 0; k[4] <= n; ++k[4])
                for (k[1] = 0; k[1] <= (k[0] ? 1 : 0); ++k[1])
                    for (k[3] = 0; k[3] <= (k[2] ? 1 : 0); ++k[3])
                        for (k[5] = 0; k[5] <= (k[4] ? 1 : 0); ++k[5]) keys.push_back(k);
    finish_cells(e, keys, [](const std::vector<int>& q) { return q[0] + q[2] + q[4]; });
    for (size_t c = 0; c < e.key.size(); ++c) {
        const auto& q = e.key[c];
        int presign = 0;  // sum of degrees of earlier factors
        for (int f = 0; f < 3; ++f) {
            int j = q[2 * f], s = q[2 * f + 1];
            std::vector<Int> cf;
            auto faces = tower_faces(j, s, cf);
            Int leib = presign % 2 == 0 ? 1 : -1;
            for (size_t u = 0; u < faces.size(); ++u) {
                auto target = q;
                target[2 * f] = faces[u][0];
                target[2 * f + 1] = faces[u][1];
                e.bnd[c].push_back({e.index.at(target), leib * cf[u]});
            }
            presign += j;
        }
    }
    // h_i fixes tower i and swaps the sheets of the other two
    for (int i = 0; i < 2; ++i) {
        std::vector<int> h(e.key.size());
        for (size_t c = 0; c < e.key.size(); ++c) {
            auto q = e.key[c];
            for (int f = 0; f < 3; ++f)
                if (f != i && q[2 * f] > 0) q[2 * f + 1] = 1 - q[2 * f + 1];
            h[c] = e.index.at(q);
        }
        e.gens.push_back(h);
    }
    return e;
}

// ------------------------------------------------------------ orbit classes

struct OrbitPart {
    std::vector<int> cls;                   // per cell; -1 = not alive
    std::vector<std::vector<int>> members;  // ascending cell ids
    std::vector<int> rep;
};

OrbitPart orbits_under(const ELevel& e, const std::vector<char>& alive,
                       const std::vector<std::vector<int>>& perms) {
    const int nc = int(e.key.size());
    std::vector<int> parent(nc);
    for (int c = 0; c < nc; ++c) parent[c] = c;
    std::function<int(int)> find = [&](int c) {
        while (parent[c] != c) c = parent[c] = parent[parent[c]];
        return c;
    };
    for (const auto& p : perms)
        for (int c = 0; c < nc; ++c) {
            if (!alive[c]) continue;
            if (!alive[p[c]])
                throw std::runtime_error("orbit group does not preserve the cell subset");
            int a = find(c), b = find(p[c]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    OrbitPart op;
    op.cls.assign(nc, -1);
    std::map<int, int> root_to_cls;
    for (int c = 0; c < nc; ++c) {
        if (!alive[c]) continue;
        int r = find(c);
        auto it = root_to_cls.find(r);
        if (it == root_to_cls.end()) {
            it = root_to_cls.insert({r, int(op.members.size())}).first;
            op.members.push_back({});
            op.rep.push_back(r);
        }
        op.cls[c] = it->second;
        op.members[it->second].push_back(c);
    }
    return op;
}

struct Layout {
    std::vector<std::pair<int, int>> pos;  // class -> (degree, column)
    std::vector<long> dims;                // per degree
};

Layout layout_classes(const ELevel& e, const OrbitPart& op) {
    Layout l;
    int maxdeg = 0;
    for (int r : op.rep) maxdeg = std::max(maxdeg, e.deg[r]);
    l.dims.assign(maxdeg + 1, 0);
    l.pos.resize(op.rep.size());
    // class ids ascend with (degree, key of representative) already
    for (size_t o = 0; o < op.rep.size(); ++o) {
        int t = e.deg[op.rep[o]];
        l.pos[o] = {t, int(l.dims[t]++)};
    }
    return l;
}

ChainComplex assemble(const ELevel& e, const OrbitPart& op, bool invariant,
                      const std::function<CellLabel(const std::vector<int>&)>& label_of) {
    Layout l = layout_classes(e, op);
    ChainComplex cx;
    cx.cells.resize(l.dims.size());
    cx.bnd.resize(l.dims.size());
    for (size_t o = 0; o < op.rep.size(); ++o)
        cx.cells[l.pos[o].first].push_back(label_of(e.key[op.rep[o]]));
    for (size_t t = 0; t < l.dims.size(); ++t)
        cx.bnd[t] = IntMat(t == 0 ? 0 : int(l.dims[t - 1]), int(l.dims[t]));
    for (size_t o = 0; o < op.rep.size(); ++o) {
        auto [t, col] = l.pos[o];
        if (t == 0) continue;
        std::map<int, Int> acc;  // cell -> coefficient of the projected boundary
        if (invariant) {
            for (int c : op.members[o])
                for (const auto& [c2, v] : e.bnd[c]) acc[c2] += v;
            for (const auto& [c2, v] : acc) {
                int o2 = op.cls[c2];
                if (o2 < 0) throw std::logic_error("boundary leaves the cell subset");
                if (c2 == op.rep[o2] && v != 0) cx.bnd[t].at(l.pos[o2].second, col) = v;
            }
        } else {
            for (const auto& [c2, v] : e.bnd[op.rep[o]]) {
                int o2 = op.cls[c2];
                if (o2 < 0) throw std::logic_error("boundary leaves the cell subset");
                acc[o2] += v;
            }
            for (const auto& [o2, v] : acc)
                if (v != 0) cx.bnd[t].at(l.pos[o2].second, col) = v;
        }
    }
    return cx;
}

CellLabel plain_label(const CatalogInfo& info, const std::vector<int>& key) {
    CellLabel l;
    if (info.kind == Kind::K4) {
        l.idx = {key[0], key[2], key[4]};
        l.lam = (key[1] + key[3] + key[5]) % 2 == 1;
    } else {
        l.idx = {key[0]};
    }
    return l;
}

std::function<CellLabel(const std::vector<int>&)> plain_labeller(const CatalogInfo& info) {
    return [info](const std::vector<int>& key) { return plain_label(info, key); };
}

// ------------------------------------------------- normalizer actions on cells

struct SignedPerm {
    std::vector<int> to;
    std::vector<Int> sg;
};

SignedPerm identity_action(const ELevel& e) {
    SignedPerm s;
    s.to.resize(e.key.size());
    s.sg.assign(e.key.size(), 1);
    for (size_t c = 0; c < e.key.size(); ++c) s.to[c] = int(c);
    return s;
}

/* Reflection on the rotation tower: the degree-t cells are sent to
 * (-floor(t/2) - i) mod p with sign (-1)^floor(t/2).  Squares to the
 * identity and conjugates the rotation to its inverse. */
SignedPerm tau_action(const ELevel& e) {
    const int p = e.info.p;
    SignedPerm s;
    s.to.resize(e.key.size());
    s.sg.resize(e.key.size());
    for (size_t c = 0; c < e.key.size(); ++c) {
        int t = e.key[c][0], i = e.key[c][1];
        if (t == 0) {
            s.to[c] = int(c);
            s.sg[c] = 1;
            continue;
        }
        int half = t / 2;
        int img = ((-half - i) % p + p) % p;
        s.to[c] = e.index.at({t, img});
        s.sg[c] = half % 2 == 0 ? 1 : -1;
    }
    return s;
}

// Cyclic rotation of the three smash factors, with the graded sign.
SignedPerm rho_action(const ELevel& e) {
    SignedPerm s;
    s.to.resize(e.key.size());
    s.sg.resize(e.key.size());
    for (size_t c = 0; c < e.key.size(); ++c) {
        const auto& q = e.key[c];
        std::vector<int> img{q[4], q[5], q[0], q[1], q[2], q[3]};
        s.to[c] = e.index.at(img);
        s.sg[c] = (q[4] * (q[0] + q[2])) % 2 == 0 ? 1 : -1;
    }
    return s;
}

SignedPerm compose_action(const SignedPerm& a, const SignedPerm& b) {
    SignedPerm s;
    s.to.resize(b.to.size());
    s.sg.resize(b.to.size());
    for (size_t c = 0; c < b.to.size(); ++c) {
        s.to[c] = a.to[b.to[c]];
        s.sg[c] = a.sg[b.to[c]] * b.sg[c];
    }
    return s;
}

std::vector<IntMat> action_matrices(const ELevel& e, const OrbitPart& op, const Layout& l,
                                    const SignedPerm& sp, bool invariant) {
    std::vector<IntMat> mats;
    for (size_t t = 0; t < l.dims.size(); ++t) mats.push_back(IntMat(int(l.dims[t]), int(l.dims[t])));
    for (size_t o = 0; o < op.rep.size(); ++o) {
        auto [t, col] = l.pos[o];
        if (invariant) {
            std::map<int, Int> acc;
            for (int c : op.members[o]) acc[sp.to[c]] += sp.sg[c];
            for (const auto& [c2, v] : acc) {
                int o2 = op.cls[c2];
                if (c2 == op.rep[o2] && v != 0) mats[t].at(l.pos[o2].second, col) = v;
            }
        } else {
            int c = op.rep[o];
            mats[t].at(l.pos[op.cls[sp.to[c]]].second, col) = sp.sg[c];
        }
    }
    return mats;
}

// -------------------------------------------- translation elements on cells

std::vector<int> element_cell_perm(const ELevel& e, const Perm& g) {
    const int nc = int(e.key.size());
    std::vector<int> out(nc);
    if (e.info.kind == Kind::C2) {
        if (int(g.size()) != 2) throw std::invalid_argument("expected a degree-2 permutation");
        bool swap = g[0] == 1;
        for (int c = 0; c < nc; ++c) {
            auto k = e.key[c];
            if (swap && k[0] > 0) k[1] = 1 - k[1];
            out[c] = e.index.at(k);
        }
        return out;
    }
    if (e.info.kind == Kind::Cp) {
        const int p = e.info.p;
        if (int(g.size()) != p) throw std::invalid_argument("expected a degree-p permutation");
        int a = g[0];
        for (int i = 0; i < p; ++i)
            if (g[i] != (i + a) % p)
                throw std::invalid_argument("permutation is outside the rotation group");
        for (int c = 0; c < nc; ++c) {
            auto k = e.key[c];
            if (k[0] > 0) k[1] = (k[1] + a) % p;
            out[c] = e.index.at(k);
        }
        return out;
    }
    if (int(g.size()) != 4) throw std::invalid_argument("expected a degree-4 permutation");
    static const std::vector<Perm> elts{{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    int which = -1;
    for (int i = 0; i < 4; ++i)
        if (g == elts[i]) which = i;
    if (which < 0) throw std::invalid_argument("permutation is outside the even involutions");
    for (int c = 0; c < nc; ++c) {
        auto q = e.key[c];
        if (which > 0)
            for (int f = 0; f < 3; ++f)
                if (f != which - 1 && q[2 * f] > 0) q[2 * f + 1] = 1 - q[2 * f + 1];
        out[c] = e.index.at(q);
    }
    return out;
}

}  // namespace

// ------------------------------------------------------------- public front

ChainComplex sphere_complex(const std::string& catalog, int n) {
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);
    std::vector<char> alive(e.key.size(), 1);
    OrbitPart op = orbits_under(e, alive, e.gens);
    return assemble(e, op, true, plain_labeller(info));
}

ChainComplex orbit_complex(const std::string& catalog, int n) {
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);
    std::vector<char> alive(e.key.size(), 1);
    OrbitPart op = orbits_under(e, alive, e.gens);
    return assemble(e, op, false, plain_labeller(info));
}

ChainComplex transpose_complex(const ChainComplex& c) {
    const int d = c.top();
    ChainComplex out;
    out.p = c.p;
    out.cells.resize(d + 1);
    out.bnd.resize(d + 1);
    for (int t = 0; t <= d; ++t) out.cells[t] = c.cells[d - t];
    out.bnd[0] = IntMat(0, int(c.dim(d)));
    for (int t = 1; t <= d; ++t) out.bnd[t] = c.bnd[d - t + 1].transpose();
    return out;
}

ChainComplex cochain_complex(const std::string& catalog, int n) {
    return transpose_complex(orbit_complex(catalog, n));
}

ChainComplex reduce_mod(const ChainComplex& c, long p) {
    if (p < 2) throw std::invalid_argument("reduce_mod: need p >= 2");
    ChainComplex out = c;
    out.p = p;
    for (auto& m : out.bnd)
        for (auto& v : m.a) {
            v %= p;
            if (v < 0) v += p;
        }
    return out;
}

SubQuot homology_subquot(const ChainComplex& c, int t) {
    if (c.p != 0) throw std::invalid_argument("homology_subquot needs integer coefficients");
    if (t < 0 || t > c.top()) throw std::invalid_argument("degree out of range");
    SubQuot h;
    h.cycles = kernel_basis(c.bnd[t]);
    if (t < c.top()) {
        IntMat x;
        if (!solve(h.cycles, c.bnd[t + 1], x))
            throw std::logic_error("boundary columns are not cycles");
        h.rel = x;
    } else {
        h.rel = IntMat(h.cycles.cols, 0);
    }
    return h;
}

std::vector<FGAbelianGroup> homology(const ChainComplex& c) {
    std::vector<FGAbelianGroup> out;
    for (int t = 0; t <= c.top(); ++t) out.push_back(homology_subquot(c, t).group());
    return out;
}

std::vector<long> homology_dims(const ChainComplex& c, long p) {
    if (c.p != 0 && c.p != p) throw std::invalid_argument("coefficient mismatch");
    std::vector<long> out;
    for (int t = 0; t <= c.top(); ++t) {
        long d = c.dim(t) - rank_mod_p(c.bnd[t], p);
        if (t < c.top()) d -= rank_mod_p(c.bnd[t + 1], p);
        out.push_back(d);
    }
    return out;
}

ChainMap conj_chain_map(const std::string& catalog, int n, const std::string& gen,
                        Flavor flavor) {
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);
    std::vector<char> alive(e.key.size(), 1);
    OrbitPart op = orbits_under(e, alive, e.gens);
    Layout l = layout_classes(e, op);

    SignedPerm sp;
    if (gen == "id") {
        sp = identity_action(e);
    } else if (gen == "tau") {
        if (info.kind != Kind::Cp)
            throw std::invalid_argument("tau lives on the rotation towers");
        sp = tau_action(e);
    } else if (gen == "rho3") {
        if (info.kind != Kind::K4)
            throw std::invalid_argument("rho3 lives on the triple tower");
        sp = rho_action(e);
    } else {
        throw std::invalid_argument("unknown generator: " + gen);
    }

    ChainMap out;
    if (flavor == Flavor::Invariant || flavor == Flavor::Orbit) {
        out.mat = action_matrices(e, op, l, sp, flavor == Flavor::Invariant);
        return out;
    }
    // cochain: reversed transpose of the orbit action of the inverse element
    SignedPerm inv = gen == "rho3" ? compose_action(sp, sp) : sp;
    std::vector<IntMat> base = action_matrices(e, op, l, inv, false);
    const int d = int(base.size()) - 1;
    for (int t = 0; t <= d; ++t) out.mat.push_back(base[d - t].transpose());
    return out;
}

ChainComplex fixed_orbit_complex(const std::string& catalog, int n, const PermGroup& K,
                                 const PermGroup& L) {
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);
    std::vector<char> alive(e.key.size(), 1);
    for (const Perm& g : K.elements) {
        auto cp = element_cell_perm(e, g);
        for (size_t c = 0; c < e.key.size(); ++c)
            if (cp[c] != int(c)) alive[c] = 0;
    }
    for (size_t c = 0; c < e.key.size(); ++c)
        if (alive[c])
            for (const auto& [c2, v] : e.bnd[c])
                if (!alive[c2]) throw std::logic_error("fixed cells do not form a subcomplex");
    std::vector<std::vector<int>> perms;
    for (const Perm& g : L.elements) perms.push_back(element_cell_perm(e, g));
    OrbitPart op = orbits_under(e, alive, perms);
    return assemble(e, op, false, [](const std::vector<int>& key) {
        CellLabel l;
        l.idx = key;
        return l;
    });
}

// ----------------------------------------------------------- level machinery

namespace {

CellLabel key_label(const std::vector<int>& key) {
    CellLabel l;
    l.idx = key;
    return l;
}

std::vector<std::vector<int>> cell_perms_of(const ELevel& e, const PermGroup& L) {
    std::vector<std::vector<int>> perms;
    for (const Perm& g : L.elements) perms.push_back(element_cell_perm(e, g));
    return perms;
}

OrbitPart level_orbits(const ELevel& e, const PermGroup& L) {
    std::vector<char> alive(e.key.size(), 1);
    return orbits_under(e, alive, cell_perms_of(e, L));
}

int stab_count(const std::vector<std::vector<int>>& perms, int c) {
    int k = 0;
    for (const auto& p : perms)
        if (p[c] == int(c)) ++k;
    return k;
}

SignedPerm invert_action(const SignedPerm& s) {
    SignedPerm r;
    r.to.resize(s.to.size());
    r.sg.resize(s.to.size());
    for (size_t c = 0; c < s.to.size(); ++c) {
        r.to[s.to[c]] = int(c);
        r.sg[s.to[c]] = s.sg[c];
    }
    return r;
}

void check_chain_map(const ChainComplex& src, const ChainComplex& dst, const ChainMap& f,
                     const char* what) {
    for (int t = 1; t <= src.top(); ++t) {
        IntMat a = dst.bnd[t].mul(f.mat[t]);
        IntMat b = f.mat[size_t(t) - 1].mul(src.bnd[t]);
        if (!(a == b))
            throw std::logic_error(std::string(what) + " fails to commute with the boundary");
    }
}

/* Shared core of restriction and transfer: per orbit degree, the incidence
 * matrix (each L1 orbit lies in exactly one L2 orbit) or the matrix of
 * stabilizer-index multiplicities. */
std::vector<IntMat> level_link_matrices(const ELevel& e, const PermGroup& L1,
                                        const PermGroup& L2, bool transfer) {
    if (!L2.contains_group(L1))
        throw std::invalid_argument("level maps need nested translation subgroups");
    auto p1 = cell_perms_of(e, L1);
    auto p2 = cell_perms_of(e, L2);
    std::vector<char> alive(e.key.size(), 1);
    OrbitPart o1 = orbits_under(e, alive, p1);
    OrbitPart o2 = orbits_under(e, alive, p2);
    Layout l1 = layout_classes(e, o1), l2 = layout_classes(e, o2);
    std::vector<IntMat> out(l1.dims.size());
    for (size_t t = 0; t < out.size(); ++t)
        out[t] = transfer ? IntMat(int(l2.dims[t]), int(l1.dims[t]))
                          : IntMat(int(l1.dims[t]), int(l2.dims[t]));
    for (size_t o = 0; o < o1.rep.size(); ++o) {
        int c = o1.rep[o];
        int q = o2.cls[c];
        auto [t, col1] = l1.pos[o];
        int col2 = l2.pos[q].second;
        if (transfer) {
            int s1 = stab_count(p1, c), s2 = stab_count(p2, c);
            if (s1 == 0 || s2 % s1 != 0)
                throw std::logic_error("stabilizer sizes fail to divide");
            out[t].at(col2, col1) = s2 / s1;
        } else {
            out[t].at(col1, col2) = 1;
        }
    }
    return out;
}

ChainMap level_link(const std::string& catalog, int n, const PermGroup& L1,
                    const PermGroup& L2, Flavor flavor, bool transfer) {
    if (flavor == Flavor::Orbit)
        throw std::invalid_argument("level maps come in Invariant or Cochain flavor");
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);
    std::vector<IntMat> base = level_link_matrices(e, L1, L2, transfer);
    const int d = int(base.size()) - 1;
    ChainMap out;
    if (flavor == Flavor::Invariant) {
        out.mat = std::move(base);
    } else {
        for (int t = 0; t <= d; ++t) out.mat.push_back(base[size_t(d) - t]);
    }
    ChainComplex c1 = level_complex(catalog, n, L1, flavor);
    ChainComplex c2 = level_complex(catalog, n, L2, flavor);
    if (transfer)
        check_chain_map(c1, c2, out, "level transfer");
    else
        check_chain_map(c2, c1, out, "level restriction");
    return out;
}

}  // namespace

PermGroup model_translations(const std::string& catalog) {
    CatalogInfo info = parse_catalog(catalog);
    if (info.kind == Kind::C2) return PermGroup::generated(2, {{1, 0}});
    if (info.kind == Kind::Cp) {
        Perm rot(info.p);
        for (int i = 0; i < info.p; ++i) rot[i] = (i + 1) % info.p;
        return PermGroup::generated(info.p, {rot});
    }
    return PermGroup::generated(4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
}

ChainComplex level_complex(const std::string& catalog, int n, const PermGroup& L,
                           Flavor flavor) {
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);
    OrbitPart op = level_orbits(e, L);
    if (flavor == Flavor::Cochain) return transpose_complex(assemble(e, op, false, key_label));
    return assemble(e, op, flavor == Flavor::Invariant, key_label);
}

ChainMap level_restriction_map(const std::string& catalog, int n, const PermGroup& L1,
                               const PermGroup& L2, Flavor flavor) {
    return level_link(catalog, n, L1, L2, flavor, false);
}

ChainMap level_transfer_map(const std::string& catalog, int n, const PermGroup& L1,
                            const PermGroup& L2, Flavor flavor) {
    return level_link(catalog, n, L1, L2, flavor, true);
}

ChainMap level_symmetry_map(const std::string& catalog, int n, const std::string& gen,
                            int power, const Perm& translation, const PermGroup& Lsrc,
                            const PermGroup& Ldst, Flavor flavor) {
    if (flavor == Flavor::Orbit)
        throw std::invalid_argument("level maps come in Invariant or Cochain flavor");
    if (Lsrc.order() != Ldst.order())
        throw std::invalid_argument("symmetry must relate subgroups of equal order");
    CatalogInfo info = parse_catalog(catalog);
    ELevel e = build_elevel(info, n);

    SignedPerm g0;
    if (gen == "id") {
        g0 = identity_action(e);
    } else if (gen == "tau") {
        if (info.kind != Kind::Cp)
            throw std::invalid_argument("tau lives on the rotation towers");
        g0 = tau_action(e);
    } else if (gen == "rho3") {
        if (info.kind != Kind::K4)
            throw std::invalid_argument("rho3 lives on the triple tower");
        g0 = rho_action(e);
    } else {
        throw std::invalid_argument("unknown generator: " + gen);
    }

    SignedPerm total;
    total.to = element_cell_perm(e, translation);
    total.sg.assign(e.key.size(), 1);
    for (int k = 0; k < power; ++k) total = compose_action(g0, total);
    SignedPerm tinv = invert_action(total);

    // the composite must conjugate the source translations onto the target ones
    auto pdst = cell_perms_of(e, Ldst);
    for (const Perm& g : Lsrc.elements) {
        auto pg = element_cell_perm(e, g);
        std::vector<int> conj(e.key.size());
        bool clean = true;
        for (size_t c = 0; c < e.key.size(); ++c) {
            int x = tinv.to[c];
            int y = pg[x];
            conj[c] = total.to[y];
            if (tinv.sg[c] * total.sg[y] != 1) clean = false;
        }
        if (!clean || std::find(pdst.begin(), pdst.end(), conj) == pdst.end())
            throw std::logic_error("symmetry fails to conjugate the levels");
    }

    OrbitPart os = level_orbits(e, Lsrc), od = level_orbits(e, Ldst);
    Layout ls = layout_classes(e, os), ld = layout_classes(e, od);
    const int d = int(ls.dims.size()) - 1;

    ChainMap out;
    if (flavor == Flavor::Invariant) {
        for (int t = 0; t <= d; ++t) out.mat.push_back(IntMat(int(ld.dims[t]), int(ls.dims[t])));
        for (size_t o = 0; o < os.rep.size(); ++o) {
            auto [t, col] = ls.pos[o];
            std::map<int, Int> acc;
            for (int c : os.members[o]) acc[total.to[c]] += total.sg[c];
            std::map<int, Int> vals;
            for (const auto& [c2, v] : acc) {
                if (v == 0) continue;
                int o2 = od.cls[c2];
                auto it = vals.find(o2);
                if (it == vals.end())
                    vals[o2] = v;
                else if (it->second != v)
                    throw std::logic_error("symmetry image is not an invariant chain");
            }
            for (const auto& [o2, v] : vals) {
                for (int c2 : od.members[o2]) {
                    auto it = acc.find(c2);
                    if (it == acc.end() || it->second != v)
                        throw std::logic_error("symmetry image is not an invariant chain");
                }
                out.mat[t].at(ld.pos[o2].second, col) = v;
            }
        }
    } else {
        // reversed transpose of the orbit-level matrices of the inverse element
        std::vector<IntMat> base;
        for (int t = 0; t <= d; ++t) base.push_back(IntMat(int(ls.dims[t]), int(ld.dims[t])));
        for (size_t o2 = 0; o2 < od.rep.size(); ++o2) {
            auto [t, col] = ld.pos[o2];
            int o1 = -1;
            Int sg = 0;
            for (int c : od.members[o2]) {
                int img = tinv.to[c];
                int cls = os.cls[img];
                if (o1 < 0) {
                    o1 = cls;
                    sg = tinv.sg[c];
                } else if (o1 != cls || sg != tinv.sg[c]) {
                    throw std::logic_error("symmetry does not respect the orbit classes");
                }
            }
            base[t].at(ls.pos[o1].second, col) = sg;
        }
        for (int t = 0; t <= d; ++t) out.mat.push_back(base[size_t(d) - t].transpose());
    }

    ChainComplex cs = level_complex(catalog, n, Lsrc, flavor);
    ChainComplex cd = level_complex(catalog, n, Ldst, flavor);
    check_chain_map(cs, cd, out, "level symmetry");
    return out;
}

BocksteinReport bockstein_consistency(const std::string& catalog, int n, long q) {
    ChainComplex cx = sphere_complex(catalog, n);
    std::vector<FGAbelianGroup> h = homology(cx);
    std::vector<long> f = homology_dims(cx, q);
    BocksteinReport rep;
    long prev = 0;
    for (int t = 0; t <= cx.top(); ++t) {
        long tq = 0;
        for (const Int& d : h[t].invariant_factors)
            if (d % q == 0) ++tq;
        if (f[t] != h[t].rank + tq + prev) {
            std::ostringstream os;
            os << "degree " << t << ": F_" << q << " dimension " << f[t] << " but rank "
               << h[t].rank << " with torsion counts " << tq << " + " << prev;
            rep.ok = false;
            rep.detail = os.str();
            return rep;
        }
        prev = tq;
    }
    return rep;
}

std::string complex_json(const ChainComplex& c) {
    nlohmann::json j;
    j["coefficients"] = c.p == 0 ? std::string("Z") : "F" + std::to_string(c.p);
    nlohmann::json degs = nlohmann::json::array();
    for (int t = 0; t <= c.top(); ++t) {
        nlohmann::json d;
        d["degree"] = t;
        nlohmann::json cl = nlohmann::json::array();
        for (const auto& l : c.cells[t]) cl.push_back(l.to_string());
        d["cells"] = cl;
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < c.bnd[t].rows; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int k = 0; k < c.bnd[t].cols; ++k)
                row.push_back(c.bnd[t].at(i, k).convert_to<long long>());
            rows.push_back(row);
        }
        d["boundary"] = rows;
        degs.push_back(d);
    }
    j["degrees"] = degs;
    return j.dump(2);
}

}  // namespace rogz
