#include "rogz/reps.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>

namespace rogz {

namespace {

Irrep irrep(std::string name, int dim, std::vector<int> fixed, bool doubled = false) {
    Irrep ir;
    ir.name = std::move(name);
    ir.dim = dim;
    ir.doubled = doubled;
    ir.fixed = std::move(fixed);
    return ir;
}

std::vector<std::vector<long>> ident(int n) {
    std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

void validate_catalog(const IrrepCatalog& cat) {
    int n = int(cat.lat.classes.size());
    for (const Irrep& ir : cat.irreps) {
        if (int(ir.fixed.size()) != n) throw std::logic_error("catalog: fixed vector shape");
        if (ir.fixed[0] != ir.dim) throw std::logic_error("catalog: fixed at trivial != dim");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (cat.lat.subconj[i][j] && ir.fixed[j] > ir.fixed[i])
                    throw std::logic_error("catalog: fixed dims not monotone");
    }
    if (int(cat.restr.size()) != n) throw std::logic_error("catalog: restriction table shape");
}

void check_entry_dims(const IrrepCatalog& src, const RestrictionEntry& e,
                      const IrrepCatalog& tgt) {
    if (int(e.m.size()) != int(tgt.irreps.size()))
        throw std::logic_error("restriction entry: row count");
    for (const auto& row : e.m)
        if (int(row.size()) != int(src.irreps.size()))
            throw std::logic_error("restriction entry: column count");
    for (int j = 0; j < int(src.irreps.size()); ++j) {
        long d = 0;
        for (int i = 0; i < int(tgt.irreps.size()); ++i) d += e.m[i][j] * tgt.irreps[i].dim;
        if (d != src.irreps[j].dim) throw std::logic_error("restriction entry: dimension drop");
    }
}

IrrepCatalog build_catalog(const std::string& id) {
    IrrepCatalog cat;
    cat.group = id;
    cat.lat = subgroup_lattice(make_group(id == "e" ? "C1" : id));
    if (id == "e") {
        cat.irreps = {irrep("1", 1, {1})};
        cat.restr = {{"e", ident(1)}};
    } else if (id == "C2") {
        cat.irreps = {irrep("1", 1, {1, 1}), irrep("s", 1, {1, 0})};
        cat.restr = {{"e", {{1, 1}}}, {"C2", ident(2)}};
    } else if (id == "C3" || id == "C5") {
        cat.irreps = {irrep("1", 1, {1, 1}), irrep("l", 2, {2, 0})};
        cat.restr = {{"e", {{1, 2}}}, {id, ident(2)}};
    } else if (id == "K4") {
        cat.irreps = {irrep("1", 1, {1, 1, 1, 1, 1}), irrep("s1", 1, {1, 1, 0, 0, 0}),
                      irrep("s2", 1, {1, 0, 1, 0, 0}), irrep("s3", 1, {1, 0, 0, 1, 0})};
        cat.restr = {{"e", {{1, 1, 1, 1}}},
                     {"C2", {{1, 1, 0, 0}, {0, 0, 1, 1}}},
                     {"C2", {{1, 0, 1, 0}, {0, 1, 0, 1}}},
                     {"C2", {{1, 0, 0, 1}, {0, 1, 1, 0}}},
                     {"K4", ident(4)}};
    } else if (id == "D6" || id == "D10") {
        std::string rot = (id == "D6") ? "C3" : "C5";
        cat.irreps = {irrep("1", 1, {1, 1, 1, 1}), irrep("s", 1, {1, 0, 1, 0}),
                      irrep("g", 2, {2, 1, 0, 0}, id == "D10")};
        cat.restr = {{"e", {{1, 1, 2}}},
                     {"C2", {{1, 0, 1}, {0, 1, 1}}},
                     {rot, {{1, 1, 0}, {0, 0, 1}}},
                     {id, ident(3)}};
    } else if (id == "A4") {
        cat.irreps = {irrep("1", 1, {1, 1, 1, 1, 1}), irrep("V2", 2, {2, 2, 0, 2, 0}),
                      irrep("V3", 3, {3, 1, 1, 0, 0})};
        cat.restr = {{"e", {{1, 2, 3}}},
                     {"C2", {{1, 2, 1}, {0, 0, 2}}},
                     {"C3", {{1, 0, 1}, {0, 1, 1}}},
                     {"K4", {{1, 2, 0}, {0, 0, 1}, {0, 0, 1}, {0, 0, 1}}},
                     {"A4", ident(3)}};
    } else if (id == "A5") {
        cat.irreps = {irrep("1", 1, {1, 1, 1, 1, 1, 1, 1, 1, 1}),
                      irrep("V3", 3, {3, 1, 1, 0, 1, 0, 0, 0, 0}, true),
                      irrep("V4", 4, {4, 2, 2, 1, 0, 1, 0, 1, 0}),
                      irrep("V5", 5, {5, 3, 1, 2, 1, 1, 1, 0, 0})};
        cat.restr = {{"e", {{1, 3, 4, 5}}},
                     {"C2", {{1, 1, 2, 3}, {0, 2, 2, 2}}},
                     {"C3", {{1, 1, 2, 1}, {0, 1, 1, 2}}},
                     {"K4", {{1, 0, 1, 2}, {0, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}}},
                     {"C5", {{1, 1, 0, 1}, {0, 1, 2, 2}}},
                     {"D6", {{1, 0, 1, 1}, {0, 1, 1, 0}, {0, 1, 1, 2}}},
                     {"D10", {{1, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 2, 2}}},
                     {"A4", {{1, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 1, 1}}},
                     {"A5", ident(4)}};
    } else {
        throw std::runtime_error("catalog: unknown group " + id);
    }
    validate_catalog(cat);
    return cat;
}

}  // namespace

int IrrepCatalog::irrep_index(const std::string& name) const {
    for (int i = 0; i < int(irreps.size()); ++i)
        if (irreps[i].name == name) return i;
    throw std::runtime_error("catalog " + group + ": no irrep named " + name);
}

std::vector<int> IrrepCatalog::all_dims() const {
    std::vector<int> out;
    for (const Irrep& ir : irreps) {
        out.push_back(ir.dim);
        if (ir.doubled) out.push_back(ir.dim);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const IrrepCatalog& catalog(const std::string& id) {
    static std::map<std::string, std::unique_ptr<IrrepCatalog>> cache;
    auto it = cache.find(id);
    if (it == cache.end()) {
        auto built = std::make_unique<IrrepCatalog>(build_catalog(id));
        for (const RestrictionEntry& e : built->restr)
            if (e.target != id) check_entry_dims(*built, e, catalog(e.target));
        it = cache.emplace(id, std::move(built)).first;
    }
    return *it->second;
}

VirtualRep rep_zero(const IrrepCatalog& cat) {
    return {&cat, std::vector<long>(cat.irreps.size(), 0)};
}

VirtualRep rep_basis(const IrrepCatalog& cat, const std::string& name, long mult) {
    VirtualRep v = rep_zero(cat);
    v.coeff[cat.irrep_index(name)] = mult;
    return v;
}

VirtualRep rep_add(const VirtualRep& a, const VirtualRep& b) {
    if (a.cat != b.cat) throw std::runtime_error("rep_add: different catalogs");
    VirtualRep out = a;
    for (size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] += b.coeff[i];
    return out;
}

VirtualRep rep_scale(long s, const VirtualRep& a) {
    VirtualRep out = a;
    for (long& c : out.coeff) c *= s;
    return out;
}

long rep_dim(const VirtualRep& v) {
    long d = 0;
    for (size_t i = 0; i < v.coeff.size(); ++i) d += v.coeff[i] * v.cat->irreps[i].dim;
    return d;
}

std::string rep_to_string(const VirtualRep& v) {
    std::string out;
    for (size_t i = 0; i < v.coeff.size(); ++i) {
        long c = v.coeff[i];
        if (c == 0) continue;
        if (!out.empty()) out += (c > 0) ? " + " : " - ";
        else if (c < 0) out += "-";
        long a = std::abs(c);
        const std::string& nm = v.cat->irreps[i].name;
        if (nm == "1") out += std::to_string(a);
        else if (a == 1) out += nm;
        else out += std::to_string(a) + "*" + nm;
    }
    return out.empty() ? "0" : out;
}

VirtualRep restrict_rep(const VirtualRep& v, int class_idx) {
    const IrrepCatalog& src = *v.cat;
    if (class_idx < 0 || class_idx >= int(src.restr.size()))
        throw std::runtime_error("restrict_rep: no table entry for that class");
    const RestrictionEntry& e = src.restr[class_idx];
    const IrrepCatalog& tgt = catalog(e.target);
    VirtualRep out = rep_zero(tgt);
    for (int i = 0; i < int(tgt.irreps.size()); ++i)
        for (int j = 0; j < int(src.irreps.size()); ++j) out.coeff[i] += e.m[i][j] * v.coeff[j];
    return out;
}

long fixed_dim(const VirtualRep& v, int class_idx) {
    long d = 0;
    for (size_t i = 0; i < v.coeff.size(); ++i) d += v.coeff[i] * v.cat->irreps[i].fixed[class_idx];
    return d;
}

namespace {

/* Signed-term grammar shared by both parsers: terms separated by + or -,
 * each one an integer, a symbol, or integer*symbol. */
std::vector<long> parse_grading(const std::string& text, const std::vector<std::string>& symbols) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += char(std::tolower(ch));
    if (s.empty()) throw std::runtime_error("grading parse: empty expression");

    std::vector<long> out(symbols.size() + 1, 0);
    size_t i = 0;
    while (i < s.size()) {
        long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        }
        if (i >= s.size()) throw std::runtime_error("grading parse: dangling sign");
        bool have_num = false;
        long num = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            have_num = true;
            num = num * 10 + (s[i] - '0');
            ++i;
        }
        if (have_num && i < s.size() && s[i] == '*') ++i;
        else if (have_num) {
            out[0] += sign * num;
            if (i < s.size() && s[i] != '+' && s[i] != '-')
                throw std::runtime_error("grading parse: unexpected character after number");
            continue;
        }
        size_t start = i;
        while (i < s.size() && s[i] != '+' && s[i] != '-') ++i;
        std::string sym = s.substr(start, i - start);
        bool found = false;
        for (size_t k = 0; k < symbols.size(); ++k)
            if (sym == symbols[k]) {
                out[k + 1] += sign * (have_num ? num : 1);
                found = true;
            }
        if (!found) throw std::runtime_error("grading parse: unknown symbol '" + sym + "'");
    }
    return out;
}

}  // namespace

D2pGrading parse_d2p_grading(const std::string& text) {
    std::vector<long> v = parse_grading(text, {"s", "g"});
    return {v[0], v[1], v[2]};
}

A5Grading parse_a5_grading(const std::string& text) {
    std::vector<long> v = parse_grading(text, {"v3", "v4", "v5"});
    return {v[0], v[1], v[2], v[3]};
}

TransportedGrade d2p_grade_transport(long k, long m, long n, D2pSide side) {
    if (side == D2pSide::C2) return {k + n, m + n, false};
    long half = std::abs(k + m) / 2;
    return {k + m, n, ((half + m) % 2 + 2) % 2 == 1};
}

}  // namespace rogz
