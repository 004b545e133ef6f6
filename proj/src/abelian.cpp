#include "rogz/abelian.h"

#include <algorithm>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rogz {

namespace {

std::map<Int, int> factorize(Int n) {
    std::map<Int, int> f;
    for (Int p = 2; p * p <= n; ++p)
        while (n % p == 0) { ++f[p]; n /= p; }
    if (n > 1) ++f[n];
    return f;
}

}  // namespace

FGAbelianGroup FGAbelianGroup::p_part(const Int& p) const {
    FGAbelianGroup out;
    out.rank = rank;
    for (const Int& d : invariant_factors) {
        Int q = 1, n = d;
        while (n % p == 0) { q *= p; n /= p; }
        if (q > 1) out.invariant_factors.push_back(q);
    }
    return out;
}

FGAbelianGroup FGAbelianGroup::torsion() const { return {0, invariant_factors}; }

std::string FGAbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (rank == 1) { os << "Z"; first = false; }
    else if (rank > 1) { os << "Z^" << rank; first = false; }
    for (const Int& d : invariant_factors) {
        if (!first) os << " + ";
        os << "Z/" << d;
        first = false;
    }
    return os.str();
}

FGAbelianGroup merge_local_parts(const std::vector<FGAbelianGroup>& parts) {
    if (parts.empty()) return {};
    FGAbelianGroup out;
    out.rank = parts[0].rank;
    std::map<Int, std::vector<int>> by_prime;  // prime -> exponents, ascending
    for (const FGAbelianGroup& g : parts) {
        if (g.rank != out.rank)
            throw std::runtime_error("merge_local_parts: rank mismatch between local pieces");
        for (const Int& d : g.invariant_factors)
            for (auto& [p, e] : factorize(d)) by_prime[p].push_back(e);
    }
    size_t chain = 0;
    for (auto& [p, es] : by_prime) {
        std::sort(es.begin(), es.end());
        chain = std::max(chain, es.size());
    }
    std::vector<Int> factors(chain, 1);
    for (auto& [p, es] : by_prime)
        for (size_t i = 0; i < es.size(); ++i) {
            Int pe = 1;
            for (int k = 0; k < es[es.size() - 1 - i]; ++k) pe *= p;
            factors[chain - 1 - i] *= pe;
        }
    out.invariant_factors = factors;
    return out;
}

FGAbelianGroup cokernel_group(const IntMat& rel, int n) {
    if (rel.cols == 0) return {n, {}};
    assert(rel.rows == n);
    SmithForm s = smith(rel);
    FGAbelianGroup g;
    g.rank = n - s.rank();
    for (const Int& d : s.diag)
        if (d > 1) g.invariant_factors.push_back(d);
    return g;
}

FGAbelianGroup SubQuot::group() const { return cokernel_group(rel, cycles.cols); }

const SubQuot::Canon& SubQuot::canon() const {
    if (have_canon_) return canon_;
    int k = cycles.cols;
    IntMat r = rel;
    if (r.rows == 0 && r.cols == 0) r = IntMat(k, 0);
    SmithForm s = smith(r);
    std::vector<int> keep;
    std::vector<Int> orders;
    for (int j = 0; j < k; ++j) {
        Int d = j < int(s.diag.size()) ? s.diag[j] : Int(0);
        if (d == 1) continue;
        keep.push_back(j);
        orders.push_back(d);
    }
    IntMat coords(k, int(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c)
        for (int i = 0; i < k; ++i) coords.at(i, int(c)) = s.u_inv.at(i, keep[c]);
    canon_.orders = std::move(orders);
    canon_.coords = coords;
    canon_.chains = cycles.mul(coords);
    canon_.rel_snf = std::move(s);
    have_canon_ = true;
    return canon_;
}

bool SubQuot::express(const IntMat& ambient_vec, std::vector<Int>& coeffs) const {
    IntMat x;
    if (!solve(cycles, ambient_vec, x)) return false;
    const Canon& c = canon();
    IntMat y = c.rel_snf.u.mul(x);
    coeffs.clear();
    int k = cycles.cols;
    size_t gi = 0;
    for (int j = 0; j < k; ++j) {
        Int d = j < int(c.rel_snf.diag.size()) ? c.rel_snf.diag[j] : Int(0);
        if (d == 1) continue;
        Int v = y.at(j, 0);
        if (d > 1) { v %= d; if (v < 0) v += d; }
        coeffs.push_back(v);
        ++gi;
    }
    return true;
}

SubQuot kernel_subgroup(const SubQuot& h, const std::vector<Constraint>& cs) {
    int k = h.cycles.cols;
    // T_i x must land in im(target rel); stack [T_i | -rel_i] blocks
    std::vector<IntMat> ts;
    std::vector<const IntMat*> rels;
    int aux = 0, rows = 0;
    for (const Constraint& c : cs) {
        IntMat img = c.map.mul(h.cycles);
        IntMat t;
        if (!solve(c.target->cycles, img, t))
            throw std::runtime_error("kernel_subgroup: constraint does not map cycles to cycles");
        ts.push_back(t);
        rels.push_back(&c.target->rel);
        aux += c.target->rel.cols;
        rows += t.rows;
    }
    IntMat big(rows, k + aux);
    int r0 = 0, c0 = k;
    for (size_t i = 0; i < ts.size(); ++i) {
        for (int r = 0; r < ts[i].rows; ++r)
            for (int c = 0; c < k; ++c) big.at(r0 + r, c) = ts[i].at(r, c);
        for (int r = 0; r < rels[i]->rows; ++r)
            for (int c = 0; c < rels[i]->cols; ++c) big.at(r0 + r, c0 + c) = -rels[i]->at(r, c);
        r0 += ts[i].rows;
        c0 += rels[i]->cols;
    }
    IntMat ker = kernel_basis(big);
    IntMat b = ker.rows_slice(0, k);
    IntMat span = image_basis(hstack(b, h.rel));
    IntMat rel2;
    if (!solve(span, h.rel, rel2))
        throw std::runtime_error("kernel_subgroup: relations escaped the cut subgroup");
    SubQuot out;
    out.cycles = h.cycles.mul(span);
    out.rel = rel2;
    return out;
}

SubQuot quotient_by(const SubQuot& h, const IntMat& extra) {
    IntMat e;
    if (!solve(h.cycles, extra, e))
        throw std::runtime_error("quotient_by: extra relation is not a cycle");
    SubQuot out;
    out.cycles = h.cycles;
    out.rel = hstack(h.rel, e);
    return out;
}

bool induced_map(const SubQuot& src, const SubQuot& dst, const IntMat& f, IntMat& out) {
    IntMat a;
    if (!solve(dst.cycles, f.mul(src.cycles), a)) return false;
    if (src.rel.cols > 0) {
        IntMat dummy;
        if (!solve(dst.rel, a.mul(src.rel), dummy)) return false;
    }
    const SubQuot::Canon& sc = src.canon();
    const SubQuot::Canon& dc = dst.canon();
    IntMat imgs = a.mul(sc.coords);          // cycle coords in dst, per src gen
    IntMat y = dc.rel_snf.u.mul(imgs);       // diagonalized dst coords
    int kd = dst.cycles.cols;
    out = IntMat(int(dc.orders.size()), int(sc.orders.size()));
    int row = 0;
    for (int j = 0; j < kd; ++j) {
        Int d = j < int(dc.rel_snf.diag.size()) ? dc.rel_snf.diag[j] : Int(0);
        if (d == 1) continue;
        for (int g = 0; g < out.cols; ++g) {
            Int v = y.at(j, g);
            if (d > 1) { v %= d; if (v < 0) v += d; }
            out.at(row, g) = v;
        }
        ++row;
    }
    // source orders must be respected in the target
    for (int g = 0; g < out.cols; ++g) {
        if (sc.orders[g] == 0) continue;
        for (int i = 0; i < out.rows; ++i) {
            Int v = sc.orders[g] * out.at(i, g);
            if (dc.orders[i] == 0) { if (v != 0) return false; }
            else if (v % dc.orders[i] != 0) return false;
        }
    }
    return true;
}

}  // namespace rogz
