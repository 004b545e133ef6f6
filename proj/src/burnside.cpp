#include "rogz/burnside.h"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rogz {

namespace {

Int int_gcd(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) { Int t = a % b; a = b; b = t; }
    return a;
}

std::set<long> merge_s(const std::set<long>& a, const std::set<long>& b) {
    std::set<long> s = a;
    s.insert(b.begin(), b.end());
    return s;
}

}  // namespace

SRational::SRational(Int n, Int d, std::set<long> s) : num(std::move(n)), den(std::move(d)), inverted(std::move(s)) {
    if (den == 0) throw std::invalid_argument("SRational: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    Int g = int_gcd(num, den);
    if (g > 1) { num /= g; den /= g; }
    Int rest = den;
    for (long p : inverted)
        while (rest % p == 0) rest /= p;
    if (rest != 1) {
        std::ostringstream os;
        os << "SRational: denominator " << den << " has a prime outside the inverted set {";
        bool first = true;
        for (long p : inverted) { os << (first ? "" : ",") << p; first = false; }
        os << "}";
        throw std::runtime_error(os.str());
    }
}

std::string SRational::to_string() const {
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

SRational operator+(const SRational& a, const SRational& b) {
    return SRational(a.num * b.den + b.num * a.den, a.den * b.den, merge_s(a.inverted, b.inverted));
}
SRational operator-(const SRational& a, const SRational& b) {
    return SRational(a.num * b.den - b.num * a.den, a.den * b.den, merge_s(a.inverted, b.inverted));
}
SRational operator*(const SRational& a, const SRational& b) {
    return SRational(a.num * b.num, a.den * b.den, merge_s(a.inverted, b.inverted));
}
SRational operator/(const SRational& a, const SRational& b) {
    if (b.num == 0) throw std::invalid_argument("SRational: division by zero");
    return SRational(a.num * b.den, a.den * b.num, merge_s(a.inverted, b.inverted));
}

bool BurnsideElt::is_zero() const {
    for (const SRational& x : c)
        if (!x.is_zero()) return false;
    return true;
}

std::string BurnsideElt::to_string(const SubgroupLattice& lat) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        if (!first) os << " + ";
        os << c[i].to_string() << "{G/#" << i << ":" << lat.classes[i].representative.order() << "}";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

BurnsideRing BurnsideRing::make(const PermGroup& g) {
    BurnsideRing r;
    r.lat = subgroup_lattice(g);
    int n = int(r.lat.classes.size());
    r.marks = IntMat(n, n);
    for (int h = 0; h < n; ++h) {
        const PermGroup& hh = r.lat.classes[h].representative;
        // enumerate cosets gH once
        std::vector<Perm> coset_reps;
        {
            std::set<std::vector<Perm>> seen;
            for (const Perm& x : g.elements) {
                std::vector<Perm> key;
                key.reserve(hh.elements.size());
                for (const Perm& y : hh.elements) key.push_back(perm_mul(x, y));
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) coset_reps.push_back(x);
            }
        }
        for (int k = 0; k < n; ++k) {
            const PermGroup& kk = r.lat.classes[k].representative;
            Int count = 0;
            for (const Perm& rep : coset_reps) {
                Perm ri = perm_inv(rep);
                bool fixed = true;
                for (const Perm& x : kk.elements)
                    if (!hh.contains(perm_mul(ri, perm_mul(x, rep)))) { fixed = false; break; }
                if (fixed) ++count;
            }
            r.marks.at(k, h) = count;
        }
    }
    return r;
}

BurnsideElt BurnsideRing::zero() const { return BurnsideElt{std::vector<SRational>(n())}; }

BurnsideElt BurnsideRing::basis(int h, std::set<long> s) const {
    BurnsideElt e = zero();
    e.c[h] = SRational(1, 1, std::move(s));
    return e;
}

BurnsideElt BurnsideRing::unit(std::set<long> s) const { return basis(n() - 1, std::move(s)); }

std::vector<SRational> BurnsideRing::mark_hom(const BurnsideElt& x) const {
    std::vector<SRational> chi(n());
    for (int k = 0; k < n(); ++k) {
        SRational acc;
        for (int h = 0; h < n(); ++h) {
            if (x.c[h].is_zero()) continue;
            acc = acc + x.c[h] * SRational(marks.at(k, h));
        }
        chi[k] = acc;
    }
    return chi;
}

BurnsideElt BurnsideRing::from_marks(const std::vector<SRational>& chi) const {
    assert(int(chi.size()) == n());
    BurnsideElt x = zero();
    for (int h = n() - 1; h >= 0; --h) {
        SRational acc = chi[h];
        for (int j = h + 1; j < n(); ++j) {
            if (x.c[j].is_zero()) continue;
            acc = acc - x.c[j] * SRational(marks.at(h, j));
        }
        x.c[h] = acc / SRational(marks.at(h, h));
    }
    return x;
}

BurnsideElt BurnsideRing::mul(const BurnsideElt& a, const BurnsideElt& b) const {
    std::vector<SRational> ca = mark_hom(a), cb = mark_hom(b), cc(n());
    for (int k = 0; k < n(); ++k) cc[k] = ca[k] * cb[k];
    return from_marks(cc);
}

BurnsideElt BurnsideRing::add(const BurnsideElt& a, const BurnsideElt& b) const {
    BurnsideElt r = zero();
    for (int i = 0; i < n(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

BurnsideElt BurnsideRing::scale(const SRational& s, const BurnsideElt& a) const {
    BurnsideElt r = zero();
    for (int i = 0; i < n(); ++i) r.c[i] = s * a.c[i];
    return r;
}

BurnsideElt BurnsideRing::mul_oracle(const BurnsideElt& a, const BurnsideElt& b) const {
    // product of {G/H}*{G/K} by orbit decomposition of the coset-pair action
    const PermGroup& g = lat.group;
    BurnsideElt total = zero();
    for (int h = 0; h < n(); ++h)
        for (int k = 0; k < n(); ++k) {
            if (a.c[h].is_zero() || b.c[k].is_zero()) continue;
            if (!a.c[h].is_integer() || !b.c[k].is_integer())
                throw std::invalid_argument("mul_oracle: integer coefficients only");
            const PermGroup& hh = lat.classes[h].representative;
            const PermGroup& kk = lat.classes[k].representative;
            // double cosets H \ G / K index the orbit decomposition
            auto orbits = double_coset_orbits(g, hh, kk);
            BurnsideElt part = zero();
            for (const auto& o : orbits) {
                // orbit of (eH, gK): stabilizer H ∩ gKg^-1
                PermGroup stab = intersect(hh, conjugate_subgroup(kk, o.rep));
                int cls = lat.class_of(stab);
                if (cls < 0) throw std::runtime_error("mul_oracle: stabilizer not in lattice");
                part.c[cls] = part.c[cls] + SRational(1);
            }
            total = add(total, scale(a.c[h] * b.c[k], part));
        }
    return total;
}

std::map<int, BurnsideElt> BurnsideRing::idempotents(const std::set<long>& s) const {
    Int order = lat.group.order();
    for (long p = 2; p <= order; ++p)
        if (order % p == 0) {
            if (!s.count(p))
                throw std::invalid_argument("idempotents: inverted set must contain all primes of |G|");
            while (order % p == 0) order /= p;
        }
    std::map<int, BurnsideElt> out;
    for (int h = 0; h < n(); ++h) {
        std::vector<SRational> chi(n());
        for (int k = 0; k < n(); ++k) chi[k] = SRational(k == h ? 1 : 0, 1, s);
        out[h] = from_marks(chi);
    }
    return out;
}

BurnsideElt burnside_res(const BurnsideRing& big, const BurnsideRing& sub, const BurnsideElt& x) {
    if (!big.lat.group.contains_group(sub.lat.group))
        throw std::invalid_argument("burnside_res: not a subgroup");
    BurnsideElt out = sub.zero();
    for (int h = 0; h < big.n(); ++h) {
        if (x.c[h].is_zero()) continue;
        auto orbits = double_coset_orbits(big.lat.group, sub.lat.group, big.lat.classes[h].representative);
        for (const auto& o : orbits) {
            int cls = sub.lat.class_of(o.stabilizer);
            if (cls < 0) throw std::runtime_error("burnside_res: stabilizer not found");
            out.c[cls] = out.c[cls] + x.c[h];
        }
    }
    return out;
}

BurnsideElt burnside_tr(const BurnsideRing& sub, const BurnsideRing& big, const BurnsideElt& x) {
    if (!big.lat.group.contains_group(sub.lat.group))
        throw std::invalid_argument("burnside_tr: not a subgroup");
    BurnsideElt out = big.zero();
    for (int k = 0; k < sub.n(); ++k) {
        if (x.c[k].is_zero()) continue;
        int cls = big.lat.class_of(sub.lat.classes[k].representative);
        if (cls < 0) throw std::runtime_error("burnside_tr: class not found upstairs");
        out.c[cls] = out.c[cls] + x.c[k];
    }
    return out;
}

BurnsideElt burnside_conj(const BurnsideRing& from, const BurnsideRing& to, const Perm& g,
                          const BurnsideElt& x) {
    BurnsideElt out = to.zero();
    for (int k = 0; k < from.n(); ++k) {
        if (x.c[k].is_zero()) continue;
        PermGroup moved = conjugate_subgroup(from.lat.classes[k].representative, g);
        int cls = to.lat.class_of(moved);
        if (cls < 0) throw std::invalid_argument("burnside_conj: conjugate leaves the target lattice");
        out.c[cls] = out.c[cls] + x.c[k];
    }
    return out;
}

std::string marks_table_text(const BurnsideRing& ring) {
    int n = ring.n();
    std::vector<std::string> labels;
    size_t w = 1;
    for (int i = 0; i < n; ++i) {
        std::ostringstream os;
        os << "|" << ring.lat.classes[i].representative.order() << "|";
        labels.push_back(os.str());
        w = std::max(w, labels.back().size());
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w = std::max(w, ring.marks.at(i, j).str().size());
    std::ostringstream os;
    os << std::string(w + 1, ' ');
    for (int j = 0; j < n; ++j) os << std::string(w + 1 - labels[j].size(), ' ') << labels[j];
    os << "\n";
    for (int i = 0; i < n; ++i) {
        os << std::string(w + 1 - labels[i].size(), ' ') << labels[i];
        for (int j = 0; j < n; ++j) {
            std::string s = ring.marks.at(i, j).str();
            os << std::string(w + 1 - s.size(), ' ') << s;
        }
        os << "\n";
    }
    return os.str();
}

std::string marks_table_json(const BurnsideRing& ring) {
    nlohmann::json j;
    j["group_order"] = ring.lat.group.order();
    std::vector<int> orders;
    for (const auto& c : ring.lat.classes) orders.push_back(c.representative.order());
    j["class_orders"] = orders;
    std::vector<std::vector<long long>> m;
    for (int i = 0; i < ring.n(); ++i) {
        std::vector<long long> row;
        for (int k = 0; k < ring.n(); ++k) row.push_back(ring.marks.at(i, k).convert_to<long long>());
        m.push_back(row);
    }
    j["marks"] = m;
    return j.dump(2);
}

}  // namespace rogz
