#include "rogz/families.h"

#include <algorithm>
#include <stdexcept>

namespace rogz {

namespace {

std::set<long> primes_of(Int n) {
    std::set<long> out;
    if (n < 0) n = -n;
    for (long d = 2; Int(d) * d <= n; ++d) {
        if (n % d == 0) {
            out.insert(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.insert(long(n));
    return out;
}

bool is_prime_power(long n, long& p) {
    if (n <= 1) return false;
    std::set<long> ps = primes_of(Int(n));
    if (ps.size() != 1) return false;
    p = *ps.begin();
    return true;
}

bool is_identity(const Perm& g) {
    for (int i = 0; i < int(g.size()); ++i)
        if (g[i] != i) return false;
    return true;
}

}  // namespace

bool family_closed(const SubgroupLattice& lat, const Family& f) {
    int n = int(lat.classes.size());
    if (int(f.member.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (lat.subconj[i][j] && f.member[j] && !f.member[i]) return false;
    return true;
}

Family family_not_containing(const SubgroupLattice& lat, const PermGroup& k) {
    int kc = lat.class_of(k);
    if (kc < 0) throw std::runtime_error("family_not_containing: subgroup not in lattice");
    Family f;
    f.member.resize(lat.classes.size());
    for (int h = 0; h < int(lat.classes.size()); ++h) f.member[h] = !lat.subconj[kc][h];
    if (!family_closed(lat, f)) throw std::logic_error("family_not_containing: closure broken");
    return f;
}

std::vector<Family> all_families(const SubgroupLattice& lat) {
    int n = int(lat.classes.size());
    if (n > 12) throw std::runtime_error("all_families: lattice too large for enumeration");
    std::vector<Family> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Family f;
        f.member.resize(n);
        for (int i = 0; i < n; ++i) f.member[i] = (mask >> i) & 1u;
        if (family_closed(lat, f)) out.push_back(f);
    }
    std::sort(out.begin(), out.end(), [](const Family& a, const Family& b) {
        int ca = int(std::count(a.member.begin(), a.member.end(), true));
        int cb = int(std::count(b.member.begin(), b.member.end(), true));
        if (ca != cb) return ca < cb;
        return a.member < b.member;
    });
    return out;
}

std::set<long> required_inverted_primes(const SubgroupLattice& lat, const Family& f) {
    if (!family_closed(lat, f)) throw std::runtime_error("required_inverted_primes: not a family");
    std::set<long> out;
    int n = int(lat.classes.size());
    for (int ih = 0; ih < n; ++ih) {
        if (!f.member[ih]) continue;
        for (int ij = 0; ij < n; ++ij) {
            if (f.member[ij]) continue;
            for (const PermGroup& h : lat.classes[ih].members) {
                for (const PermGroup& j : lat.classes[ij].members) {
                    if (j.order() % h.order() != 0) continue;
                    long p = 0;
                    if (!is_prime_power(j.order() / h.order(), p)) continue;
                    if (!j.contains_group(h) || !is_normal_in(h, j)) continue;
                    out.insert(p);
                }
            }
        }
    }
    return out;
}

CHSolution solve_ch(const BurnsideRing& ring, const Family& f, const std::set<long>& s) {
    const SubgroupLattice& lat = ring.lat;
    if (!family_closed(lat, f)) throw std::runtime_error("solve_ch: not a family");
    int n = ring.n();
    std::set<long> work = primes_of(Int(lat.group.order()));

    /* The marks matrix is triangular along subconjugacy, so solving from the
     * largest class downward meets each unknown exactly once. */
    std::map<int, SRational> c;
    for (int k = n - 1; k >= 0; --k) {
        if (!f.member[k]) continue;
        SRational acc(1, 1, work);
        for (int h = k + 1; h < n; ++h) {
            if (!f.member[h] || !lat.subconj[k][h]) continue;
            acc = acc - c.at(h) * SRational(ring.marks.at(k, h), 1, work);
        }
        c[k] = acc / SRational(ring.marks.at(k, k), 1, work);
    }

    for (int k = 0; k < n; ++k) {
        if (!f.member[k]) continue;
        SRational acc(0, 1, work);
        for (int h = 0; h < n; ++h)
            if (f.member[h] && lat.subconj[k][h])
                acc = acc + c.at(h) * SRational(ring.marks.at(k, h), 1, work);
        if (!(acc == SRational(1, 1, work))) throw std::logic_error("solve_ch: system not satisfied");
    }

    CHSolution sol;
    for (auto& [k, v] : c)
        for (long p : primes_of(v.den)) sol.needed.insert(p);
    for (long p : sol.needed) {
        if (!s.count(p))
            throw std::runtime_error("solve_ch: coefficients need the prime " + std::to_string(p) +
                                     " inverted, which is outside the given set");
    }
    for (auto& [k, v] : c) sol.c[k] = SRational(v.num, v.den, s);
    return sol;
}

MFunctor0 mf_functor(const BurnsideRing& ring, const Family& f) {
    const SubgroupLattice& lat = ring.lat;
    if (!family_closed(lat, f)) throw std::runtime_error("mf_functor: not a family");
    MFunctor0 mf;
    mf.family = f;
    int n = ring.n();
    for (int i = 0; i < n; ++i) {
        BurnsideRing level = BurnsideRing::make(lat.classes[i].representative);
        std::vector<int> to_big, gens;
        for (int j = 0; j < level.n(); ++j) {
            int b = lat.class_of(level.lat.classes[j].representative);
            to_big.push_back(b);
            if (f.member[b]) gens.push_back(j);
        }
        mf.level_rings.push_back(std::move(level));
        mf.level_to_big.push_back(std::move(to_big));
        mf.gens.push_back(std::move(gens));
    }
    return mf;
}

namespace {

// Nonzero coefficients must sit at classes the family contains.
bool supported_in_family(const BurnsideElt& x, const std::vector<int>& to_big, const Family& f) {
    for (int j = 0; j < int(x.c.size()); ++j)
        if (!x.c[j].is_zero() && !f.member[to_big[j]]) return false;
    return true;
}

}  // namespace

bool mf_closure_check(const BurnsideRing& ring, const MFunctor0& mf) {
    const SubgroupLattice& lat = ring.lat;
    int n = ring.n();
    for (int ib = 0; ib < n; ++ib) {
        for (int is = 0; is < n; ++is) {
            if (!lat.subconj[is][ib] || is == ib) continue;
            const Perm& w = lat.subconj_wit[is][ib];
            PermGroup embedded = is_identity(w)
                                     ? lat.classes[is].representative
                                     : conjugate_subgroup(lat.classes[is].representative, w);
            BurnsideRing sub = BurnsideRing::make(embedded);
            std::vector<int> sub_to_big;
            for (int j = 0; j < sub.n(); ++j)
                sub_to_big.push_back(lat.class_of(sub.lat.classes[j].representative));

            for (int j = 0; j < sub.n(); ++j) {
                if (!mf.family.member[sub_to_big[j]]) continue;
                BurnsideElt t = burnside_tr(sub, mf.level_rings[ib], sub.basis(j));
                if (!supported_in_family(t, mf.level_to_big[ib], mf.family)) return false;
            }
            for (int j : mf.gens[ib]) {
                BurnsideElt r = burnside_res(mf.level_rings[ib], sub, mf.level_rings[ib].basis(j));
                if (!supported_in_family(r, sub_to_big, mf.family)) return false;
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        const SubgroupClass& cl = lat.classes[i];
        int limit = std::min<int>(3, int(cl.members.size()));
        for (int mi = 0; mi < limit; ++mi) {
            if (is_identity(cl.witnesses[mi]) && cl.members[mi].same_elements(cl.representative))
                continue;
            BurnsideRing dst = BurnsideRing::make(cl.members[mi]);
            std::vector<int> dst_to_big;
            for (int j = 0; j < dst.n(); ++j)
                dst_to_big.push_back(lat.class_of(dst.lat.classes[j].representative));
            for (int j : mf.gens[i]) {
                BurnsideElt y = burnside_conj(mf.level_rings[i], dst, cl.witnesses[mi],
                                              mf.level_rings[i].basis(j));
                if (!supported_in_family(y, dst_to_big, mf.family)) return false;
            }
        }
    }
    return true;
}

bool nf_complement_check(const BurnsideRing& ring, const MFunctor0& mf, const std::set<long>& s) {
    for (long p : primes_of(Int(ring.lat.group.order())))
        if (!s.count(p)) throw std::runtime_error("nf_complement_check: set must invert the group order");
    int n = ring.n();
    for (int i = 0; i < n; ++i) {
        const BurnsideRing& level = mf.level_rings[i];
        int nl = level.n();
        std::vector<BurnsideElt> cols;
        for (int j : mf.gens[i]) cols.push_back(level.basis(j, s));
        std::map<int, BurnsideElt> idem = level.idempotents(s);
        for (int j = 0; j < nl; ++j)
            if (!mf.family.member[mf.level_to_big[i][j]]) cols.push_back(idem.at(j));
        if (int(cols.size()) != nl) return false;

        IntMat m(nl, nl);
        for (int j = 0; j < nl; ++j) {
            Int lcm = 1;
            for (const SRational& v : cols[j].c) lcm = lcm / gcd(lcm, v.den) * v.den;
            for (int r = 0; r < nl; ++r) m.at(r, j) = cols[j].c[r].num * (lcm / cols[j].c[r].den);
        }
        if (rank_q(m) != nl) return false;
    }
    return true;
}

}  // namespace rogz
