#include "rogz/enumerators.h"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "rogz/intmat.h"

namespace rogz {

namespace {

bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

void add_factor(std::string& s, const std::string& sym, long e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += sym;
    if (e != 1) s += "^" + std::to_string(e);
}

std::string close_symbol(std::string s) { return s.empty() ? std::string("1") : s; }

/* Accumulates the classes hit at one grading and assembles the group with a
 * canonical divisibility chain at the end. */
struct PieceBuilder {
    long rank = 0;
    std::vector<Int> orders;
    std::vector<MonomialLabel> labels;

    void free_class(std::string sym, long index) {
        ++rank;
        labels.push_back({close_symbol(std::move(sym)), 0, index});
    }
    void torsion_class(std::string sym, long q) {
        orders.push_back(q);
        labels.push_back({close_symbol(std::move(sym)), q, 1});
    }
    GradedPiece finish() const {
        IntMat rel(int(orders.size()), int(orders.size()));
        for (int i = 0; i < rel.rows; ++i) rel.at(i, i) = orders[size_t(i)];
        FGAbelianGroup g = cokernel_group(rel, rel.rows);
        g.rank = int(rank);
        return {g, labels};
    }
};

// ---------------------------------------------------------------------------
// one reflection rep: polynomial part u^i a^j, divided u-powers, divided a*u

GradedPiece two_generator_piece(long a, long b, long q, const std::string& u_sym,
                                const std::string& a_sym, bool sigma_grading) {
    // u grading (2, -2) for sigma, (2, -1) for lambda; a grading (0, -1).
    PieceBuilder pb;
    long ub = sigma_grading ? -2 : -1;
    if (a >= 0 && a % 2 == 0) {
        long i = a / 2;
        long j = -b + ub * i;  // b = -ub*i - j
        if (j == 0) {
            std::string s;
            add_factor(s, u_sym, i);
            pb.free_class(std::move(s), 1);
        } else if (j > 0) {
            std::string s;
            add_factor(s, u_sym, i);
            add_factor(s, a_sym, j);
            pb.torsion_class(std::move(s), q);
        }
    }
    if (a < 0 && a % 2 == 0) {
        long i = -a / 2;  // u^-i, grading (-2i, -ub*i... sign) -> b = -ub * (-i)
        if (b == -ub * i) {
            std::string s;
            add_factor(s, u_sym, -i);
            pb.free_class(std::move(s), q);
        }
    }
    if (a <= -3 && (-a) % 2 == 1) {
        long j = (-1 - a) / 2;
        long k = b + ub * j + 0;  // b = -ub*j + k  ->  k = b + ub*j
        if (j > 0 && k > 0) {
            std::string s;
            add_factor(s, "Sinv", 1);
            add_factor(s, u_sym, -j);
            add_factor(s, a_sym, -k);
            pb.torsion_class(std::move(s), q);
        }
    }
    return pb.finish();
}

// ---------------------------------------------------------------------------
// dihedral answer: eight families over generators
//   ugs = (1,1,-1)  u2s = (2,-2,0)  as = (0,-1,0)  ag = (0,0,-1)  Sinv = (-1,0,0)

GradedPiece dihedral_piece(long k, long m, long n, long p) {
    PieceBuilder pb;

    // polynomial monomials ugs^e1 u2s^e2 as^e3 ag^e4; both torsion letters
    // kill the class since gcd(2, p) = 1
    if (n <= 0) {
        for (long e1 = 0; e1 <= -n; ++e1) {
            long e4 = -n - e1;
            if ((k - e1) % 2 != 0) continue;
            long e2 = (k - e1) / 2;
            if (e2 < 0) continue;
            long e3 = e1 - 2 * e2 - m;
            if (e3 < 0) continue;
            if (e3 > 0 && e4 > 0) continue;
            std::string s;
            add_factor(s, "ugs", e1);
            add_factor(s, "u2s", e2);
            add_factor(s, "as", e3);
            add_factor(s, "ag", e4);
            if (e3 > 0)
                pb.torsion_class(std::move(s), 2);
            else if (e4 > 0)
                pb.torsion_class(std::move(s), p);
            else
                pb.free_class(std::move(s), 1);
        }
    }

    // ugs^e u2s^-i, e >= 0, i > 0: 2Z
    if (n <= 0) {
        long e = -n;
        if ((e - k) % 2 == 0) {
            long i = (e - k) / 2;
            if (i > 0 && e + 2 * i == m) {
                std::string s;
                add_factor(s, "ugs", e);
                add_factor(s, "u2s", -i);
                pb.free_class(std::move(s), 2);
            }
        }
    }

    // u2s^e ugs^-i, e >= 0, i > 0: pZ
    if (n > 0) {
        long i = n;
        if ((k + i) % 2 == 0) {
            long e = (k + i) / 2;
            if (e >= 0 && m == -2 * e - i) {
                std::string s;
                add_factor(s, "u2s", e);
                add_factor(s, "ugs", -i);
                pb.free_class(std::move(s), p);
            }
        }
    }

    // u2s^-j ugs^-kk, j, kk > 0: 2pZ
    if (n > 0) {
        long kk = n;
        if ((k + kk) % 2 == 0) {
            long j = -(k + kk) / 2;
            if (j > 0 && m == 2 * j - kk) {
                std::string s;
                add_factor(s, "u2s", -j);
                add_factor(s, "ugs", -kk);
                pb.free_class(std::move(s), 2 * p);
            }
        }
    }

    // ugs^e ag^j u2s^-kk, e >= 0, j, kk > 0: Z/p
    if ((k + m) % 2 == 0 && (m - k) % 4 == 0) {
        long e = (k + m) / 2;
        long kk = (m - k) / 4;
        long j = -n - e;
        if (e >= 0 && kk > 0 && j > 0) {
            std::string s;
            add_factor(s, "ugs", e);
            add_factor(s, "ag", j);
            add_factor(s, "u2s", -kk);
            pb.torsion_class(std::move(s), p);
        }
    }

    // u2s^e as^j ugs^-kk, e >= 0, j, kk > 0: Z/2
    if (n > 0 && (k + n) % 2 == 0) {
        long kk = n;
        long e = (k + n) / 2;
        long j = -m - 2 * e - kk;
        if (e >= 0 && j > 0) {
            std::string s;
            add_factor(s, "u2s", e);
            add_factor(s, "as", j);
            add_factor(s, "ugs", -kk);
            pb.torsion_class(std::move(s), 2);
        }
    }

    // Sinv ugs^e u2s^-j as^-kk, e in Z, j, kk > 0: Z/2
    {
        long e = -n;
        if ((e - k - 1) % 2 == 0) {
            long j = (e - k - 1) / 2;
            long kk = k + m + 2 * n + 1;
            if (j > 0 && kk > 0) {
                std::string s;
                add_factor(s, "Sinv", 1);
                add_factor(s, "ugs", e);
                add_factor(s, "u2s", -j);
                add_factor(s, "as", -kk);
                pb.torsion_class(std::move(s), 2);
            }
        }
    }

    // Sinv u2s^e ugs^-j ag^-kk, e in Z, j, kk > 0: Z/p
    if ((k + m + 1) % 2 == 0) {
        long j = -(k + m + 1) / 2;
        long kk = n - j;
        if (j > 0 && kk > 0 && (k + j + 1) % 2 == 0) {
            long e = (k + j + 1) / 2;
            std::string s;
            add_factor(s, "Sinv", 1);
            add_factor(s, "u2s", e);
            add_factor(s, "ugs", -j);
            add_factor(s, "ag", -kk);
            pb.torsion_class(std::move(s), p);
        }
    }

    return pb.finish();
}

// ---------------------------------------------------------------------------
// icosahedral local answers: two invertible outer classes tensored with a
// two-generator reflection-style core

struct LocalGenerators {
    long q;                            // 3 or 5
    std::array<long, 4> c1, c2, u, a;  // gradings over (n1, n3, n4, n5)
    std::string c1_sym, c2_sym, u_sym, a_sym;
};

LocalGenerators local_generators(long q) {
    if (q == 3)
        return {3,
                {1, 1, -1, 0},
                {1, -2, 0, 1},
                {3, -1, 0, 0},
                {1, 0, 0, -1},
                "u(V4-V3)",
                "u(2V3-V5)",
                "u(V3)",
                "a(V5-1)"};
    return {5,
            {1, 0, 1, -1},
            {2, -2, 1, 0},
            {3, -1, 0, 0},
            {0, 0, -1, 0},
            "u(V5-V4)",
            "u(2V3-V4)",
            "u(V3)",
            "a(V4)"};
}

bool solve_exps(const std::vector<std::array<long, 4>>& cols, const std::array<long, 4>& target,
                std::vector<long>& out) {
    IntMat m(4, int(cols.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < 4; ++i) m.at(i, j) = cols[size_t(j)][size_t(i)];
    IntMat b(4, 1);
    for (int i = 0; i < 4; ++i) b.at(i, 0) = target[size_t(i)];
    IntMat x;
    if (!solve(m, b, x)) return false;
    out.clear();
    for (int j = 0; j < int(cols.size()); ++j) out.push_back(long(x.at(j, 0)));
    return true;
}

GradedPiece local_piece(const std::array<long, 4>& v, long q) {
    LocalGenerators g = local_generators(q);
    PieceBuilder pb;
    std::vector<long> e;

    // c1^e1 c2^e2 u^i a^j, i, j >= 0
    if (solve_exps({g.c1, g.c2, g.u, g.a}, v, e) && e[2] >= 0 && e[3] >= 0) {
        std::string s;
        add_factor(s, g.c1_sym, e[0]);
        add_factor(s, g.c2_sym, e[1]);
        add_factor(s, g.u_sym, e[2]);
        add_factor(s, g.a_sym, e[3]);
        if (e[3] == 0)
            pb.free_class(std::move(s), 1);
        else
            pb.torsion_class(std::move(s), g.q);
    }

    // c1^e1 c2^e2 u^-i, i > 0: qZ
    if (solve_exps({g.c1, g.c2, g.u}, v, e) && e[2] < 0) {
        std::string s;
        add_factor(s, g.c1_sym, e[0]);
        add_factor(s, g.c2_sym, e[1]);
        add_factor(s, g.u_sym, e[2]);
        pb.free_class(std::move(s), g.q);
    }

    // Sinv c1^e1 c2^e2 u^-j a^-k, j, k > 0: Z/q
    std::array<long, 4> shifted = {v[0] + 1, v[1], v[2], v[3]};
    if (solve_exps({g.c1, g.c2, g.u, g.a}, shifted, e) && e[2] < 0 && e[3] < 0) {
        std::string s;
        add_factor(s, "Sinv", 1);
        add_factor(s, g.c1_sym, e[0]);
        add_factor(s, g.c2_sym, e[1]);
        add_factor(s, g.u_sym, e[2]);
        add_factor(s, g.a_sym, e[3]);
        pb.torsion_class(std::move(s), g.q);
    }

    return pb.finish();
}

// ---------------------------------------------------------------------------
// triple tower positive cone: subring of Z[x_i, y_i] / (2x_i, rho) spanned by
// the listed generating families, graded piece by product saturation

using Mono = std::array<long, 6>;  // (i1, j1, i2, j2, i3, j3), exponent magnitudes

Mono mono_add(const Mono& a, const Mono& b) {
    Mono r;
    for (int t = 0; t < 6; ++t) r[size_t(t)] = a[size_t(t)] + b[size_t(t)];
    return r;
}

std::string mono_string(const Mono& m, bool negative) {
    static const char* syms[6] = {"x1", "y1", "x2", "y2", "x3", "y3"};
    std::string s;
    for (int t = 0; t < 6; ++t) add_factor(s, syms[t], negative ? -m[size_t(t)] : m[size_t(t)]);
    return close_symbol(s);
}

struct MonoBasis {
    std::vector<Mono> list;
    std::map<Mono, int> pos;

    void push(const Mono& m) {
        pos[m] = int(list.size());
        list.push_back(m);
    }
    bool empty() const { return list.empty(); }
};

MonoBasis positive_monomials(long asum, long n) {
    MonoBasis b;
    if (n < 0 || asum < 0 || asum > 3 * n) return b;
    for (long j1 = 0; j1 <= n; ++j1)
        for (long j2 = 0; j2 <= n; ++j2) {
            long j3 = asum - j1 - j2;
            if (j3 < 0 || j3 > n) continue;
            b.push({n - j1, j1, n - j2, j2, n - j3, j3});
        }
    return b;
}

struct PosGen {
    long a = 0, n = 0;
    std::vector<Mono> terms;  // all coefficients +1
};

std::vector<PosGen> positive_generators(long nmax) {
    std::vector<PosGen> gens;
    for (long ng = 1; ng <= nmax; ++ng) {
        // monomials with matching tower degree, matching y-parities, and at
        // least one tower avoiding the mixed pattern
        for (long j1 = 0; j1 <= ng; ++j1)
            for (long j2 = 0; j2 <= ng; ++j2)
                for (long j3 = 0; j3 <= ng; ++j3) {
                    if ((j1 - j2) % 2 != 0 || (j1 - j3) % 2 != 0) continue;
                    if (j1 > 0 && j2 > 0 && ng - j3 > 0) continue;
                    gens.push_back(
                        {j1 + j2 + j3, ng, {{ng - j1, j1, ng - j2, j2, ng - j3, j3}}});
                }
        // binomials with pure-y third tower
        for (long j1 = 0; j1 < ng; ++j1)
            for (long j2 = 0; j2 < ng; ++j2) {
                if ((j1 - j2) % 2 != 0 || (j1 - ng) % 2 != 0) continue;
                long i1 = ng - 1 - j1, i2 = ng - 1 - j2;
                gens.push_back({j1 + j2 + ng + 1,
                                ng,
                                {{i1 + 1, j1, i2, j2 + 1, 0, ng}, {i1, j1 + 1, i2 + 1, j2, 0, ng}}});
            }
        // binomials with pure-x second tower
        for (long j1 = 0; j1 < ng; j1 += 2)
            for (long j3 = 0; j3 < ng; j3 += 2) {
                long i1 = ng - 1 - j1, i3 = ng - 1 - j3;
                gens.push_back({j1 + j3 + 1,
                                ng,
                                {{i1 + 1, j1, ng, 0, i3, j3 + 1}, {i1, j1 + 1, ng, 0, i3 + 1, j3}}});
            }
        // binomials with pure-x first tower
        for (long j2 = 0; j2 < ng; j2 += 2)
            for (long j3 = 0; j3 < ng; j3 += 2) {
                long i2 = ng - 1 - j2, i3 = ng - 1 - j3;
                gens.push_back({j2 + j3 + 1,
                                ng,
                                {{ng, 0, i2 + 1, j2, i3, j3 + 1}, {ng, 0, i2, j2 + 1, i3 + 1, j3}}});
            }
    }
    return gens;
}

IntMat rows_slice(const IntMat& m, int r0, int r1) {
    IntMat out(r1 - r0, m.cols);
    for (int i = r0; i < r1; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(i - r0, j) = m.at(i, j);
    return out;
}

GradedPiece positive_cone_piece(long a, long b) {
    long n = -b;
    MonoBasis basis = positive_monomials(a, n);
    if (basis.empty()) return {{}, {}};

    std::vector<PosGen> gens = positive_generators(n);

    // spans of all products of generators, by (y-degree, tower degree)
    std::map<std::pair<long, long>, MonoBasis> bases;
    std::map<std::pair<long, long>, IntMat> spans;
    for (long np = 0; np <= n; ++np)
        for (long ap = 0; ap <= std::min(a, 3 * np); ++ap) {
            MonoBasis cur = positive_monomials(ap, np);
            std::vector<std::vector<Int>> cols;
            if (ap == 0 && np == 0) cols.push_back({1});
            for (const PosGen& g : gens) {
                if (g.n > np || g.a > ap) continue;
                long pa = ap - g.a, pn = np - g.n;
                if (pa > 3 * pn) continue;
                const MonoBasis& pb = bases.at({pa, pn});
                const IntMat& ps = spans.at({pa, pn});
                for (int c = 0; c < ps.cols; ++c) {
                    std::vector<Int> v(cur.list.size(), 0);
                    for (int r = 0; r < ps.rows; ++r) {
                        if (ps.at(r, c) == 0) continue;
                        for (const Mono& t : g.terms)
                            v[size_t(cur.pos.at(mono_add(t, pb.list[size_t(r)])))] +=
                                ps.at(r, c);
                    }
                    cols.push_back(std::move(v));
                }
            }
            IntMat cand(int(cur.list.size()), int(cols.size()));
            for (int j = 0; j < cand.cols; ++j)
                for (int i = 0; i < cand.rows; ++i) cand.at(i, j) = cols[size_t(j)][size_t(i)];
            spans[{ap, np}] = image_basis(cand);
            bases[{ap, np}] = std::move(cur);
        }

    IntMat span = spans.at({a, n});
    if (span.cols == 0) return {{}, {}};

    // relations restricted to this grading: doubled x-monomials and multiples
    // of the three-term symmetric relation
    std::vector<std::vector<Int>> rel_cols;
    for (int r = 0; r < int(basis.list.size()); ++r) {
        const Mono& m = basis.list[size_t(r)];
        if (m[0] == 0 && m[2] == 0 && m[4] == 0) continue;
        std::vector<Int> v(basis.list.size(), 0);
        v[size_t(r)] = 2;
        rel_cols.push_back(std::move(v));
    }
    static const Mono rho_terms[3] = {
        {1, 0, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1}, {0, 1, 0, 1, 1, 0}};
    MonoBasis below = positive_monomials(a - 2, n - 1);
    for (const Mono& m : below.list) {
        std::vector<Int> v(basis.list.size(), 0);
        for (const Mono& t : rho_terms) v[size_t(basis.pos.at(mono_add(t, m)))] += 1;
        rel_cols.push_back(std::move(v));
    }
    IntMat rel(int(basis.list.size()), int(rel_cols.size()));
    for (int j = 0; j < rel.cols; ++j)
        for (int i = 0; i < rel.rows; ++i) rel.at(i, j) = rel_cols[size_t(j)][size_t(i)];

    // span / (span cap relations), presented on the span's columns
    IntMat ker = kernel_basis(hstack(span, rel));
    SubQuot sq;
    sq.cycles = span;
    sq.rel = rows_slice(ker, 0, span.cols);

    GradedPiece out;
    out.group = sq.group();
    const SubQuot::Canon& cn = sq.canon();
    for (int j = 0; j < int(cn.orders.size()); ++j) {
        std::string sym;
        int support = 0;
        for (int r = 0; r < cn.chains.rows; ++r) {
            if (cn.chains.at(r, j) == 0) continue;
            ++support;
            if (sym.empty()) sym = mono_string(basis.list[size_t(r)], false);
        }
        if (support > 1) sym += "+...";
        if (cn.orders[size_t(j)] == 0)
            out.labels.push_back({close_symbol(std::move(sym)), 0, 1});
        else
            out.labels.push_back({close_symbol(std::move(sym)), cn.orders[size_t(j)], 1});
    }
    return out;
}

// ---------------------------------------------------------------------------
// triple tower negative cone: doubly-divided classes, the three-term relation
// acting by multiply-then-project, trinomial span intersected with its kernel

MonoBasis negative_monomials(long ysum, long n) {
    // classes x^-i y^-j with every tower sum n, every y exponent >= 1, and
    // not all x exponents zero; stored as positive magnitudes
    MonoBasis b;
    if (n < 1) return b;
    for (long j1 = 1; j1 <= n; ++j1)
        for (long j2 = 1; j2 <= n; ++j2) {
            long j3 = ysum - j1 - j2;
            if (j3 < 1 || j3 > n) continue;
            if (j1 == n && j2 == n && j3 == n) continue;
            b.push({n - j1, j1, n - j2, j2, n - j3, j3});
        }
    return b;
}

GradedPiece negative_cone_piece(long a, long b) {
    long n = b;
    PieceBuilder pb;
    if (a == -3 * n) pb.free_class("(y1*y2*y3)^" + std::to_string(-n), 4);

    MonoBasis basis = negative_monomials(-a, n);
    if (basis.empty()) return pb.finish();
    MonoBasis up = negative_monomials(-a - 2, n - 1);

    // multiplication by the symmetric three-term sum; products hitting the
    // pure divided power (y1*y2*y3)^-(n-1) are nonzero and get their own row,
    // while terms whose y exponents vanish die in the answer ring
    bool purey_row = n >= 2 && -(a + 2) == 3 * (n - 1);
    Mono purey = {0, n - 1, 0, n - 1, 0, n - 1};
    IntMat f(int(up.list.size()) + (purey_row ? 1 : 0), int(basis.list.size()));
    for (int c = 0; c < int(basis.list.size()); ++c) {
        const Mono& m = basis.list[size_t(c)];
        for (int w = 0; w < 3; ++w) {
            Mono t = m;
            t[size_t(2 * w)] -= 1;  // x_w exponent magnitude drops
            t[size_t((2 * w + 2) % 6 + 1)] -= 1;
            t[size_t((2 * w + 4) % 6 + 1)] -= 1;
            auto it = up.pos.find(t);
            int row = -1;
            if (it != up.pos.end()) row = it->second;
            else if (purey_row && t == purey) row = int(up.list.size());
            if (row >= 0) f.at(row, c) = (f.at(row, c) + 1) % 2;
        }
    }

    // trinomial spanning set; edge parameters produce partial trinomials whose
    // out-of-range terms drop, exactly one step past the interior range
    std::vector<std::vector<Int>> tcols;
    std::vector<Mono> tlead;
    for (long j1 = 0; j1 <= n; ++j1)
        for (long j2 = 0; j2 <= n; ++j2)
            for (long j3 = 0; j3 <= n; ++j3) {
                if ((j1 - j2) % 2 != 0 || (j1 - j3) % 2 != 0) continue;
                if (j1 + j2 + j3 != -a - 1) continue;
                long i1 = n - 1 - j1, i2 = n - 1 - j2, i3 = n - 1 - j3;
                Mono terms[3] = {{i1, j1 + 1, i2 + 1, j2, i3 + 1, j3},
                                 {i1 + 1, j1, i2, j2 + 1, i3 + 1, j3},
                                 {i1 + 1, j1, i2 + 1, j2, i3, j3 + 1}};
                std::vector<Int> v(basis.list.size(), 0);
                bool any = false;
                Mono lead{};
                for (const Mono& t : terms) {
                    auto it = basis.pos.find(t);
                    if (it == basis.pos.end()) continue;
                    if (!any) lead = t;
                    any = true;
                    v[size_t(it->second)] = (v[size_t(it->second)] + 1) % 2;
                }
                if (!any) continue;
                tcols.push_back(std::move(v));
                tlead.push_back(lead);
            }
    IntMat tmat(int(basis.list.size()), int(tcols.size()));
    for (int j = 0; j < tmat.cols; ++j)
        for (int i = 0; i < tmat.rows; ++i) tmat.at(i, j) = tcols[size_t(j)][size_t(i)];

    int d = rank_mod_p(tmat, 2) - rank_mod_p(f.mul(tmat), 2);
    for (int i = 0; i < d; ++i) {
        std::string sym =
            i < int(tlead.size()) ? mono_string(tlead[size_t(i)], true) + "+..." : "trinomial";
        pb.torsion_class(std::move(sym), 2);
    }
    return pb.finish();
}

void expect_size(const std::vector<long>& grading, size_t len, const std::string& id) {
    if (grading.size() != len)
        throw std::invalid_argument("presentation " + id + " expects a grading vector of length " +
                                    std::to_string(len));
}

}  // namespace

GradedPiece graded_piece_of_presentation(const std::string& id, const std::vector<long>& grading,
                                         long p) {
    if (id == "c2-sigma") {
        expect_size(grading, 2, id);
        return two_generator_piece(grading[0], grading[1], 2, "u2s", "as", true);
    }
    if (id == "cp-lambda") {
        expect_size(grading, 2, id);
        if (!is_odd_prime(p)) throw std::invalid_argument("cp-lambda needs an odd prime");
        return two_generator_piece(grading[0], grading[1], p, "ul", "al", false);
    }
    if (id == "d2p") {
        expect_size(grading, 3, id);
        if (!is_odd_prime(p)) throw std::invalid_argument("d2p needs an odd prime");
        return dihedral_piece(grading[0], grading[1], grading[2], p);
    }
    if (id == "a5-p3" || id == "a5-p5") {
        expect_size(grading, 4, id);
        return local_piece({grading[0], grading[1], grading[2], grading[3]},
                           id == "a5-p3" ? 3 : 5);
    }
    if (id == "k4-pos") {
        expect_size(grading, 2, id);
        if (grading[1] > 0) throw std::invalid_argument("k4-pos needs b <= 0");
        return positive_cone_piece(grading[0], grading[1]);
    }
    if (id == "k4-neg") {
        expect_size(grading, 2, id);
        if (grading[1] <= 0) throw std::invalid_argument("k4-neg needs b > 0");
        return negative_cone_piece(grading[0], grading[1]);
    }
    throw std::invalid_argument("unknown presentation id: " + id);
}

}  // namespace rogz
