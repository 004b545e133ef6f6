#include "rogz/intmat.h"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace rogz {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool IntMat::is_zero() const {
    for (const Int& x : a)
        if (x != 0) return false;
    return true;
}

IntMat IntMat::transpose() const {
    IntMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntMat IntMat::mul(const IntMat& o) const {
    assert(cols == o.rows);
    IntMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Int& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

IntMat IntMat::col(int j) const { return cols_slice(j, j + 1); }

IntMat IntMat::cols_slice(int j0, int j1) const {
    IntMat r(rows, j1 - j0);
    for (int i = 0; i < rows; ++i)
        for (int j = j0; j < j1; ++j) r.at(i, j - j0) = at(i, j);
    return r;
}

IntMat IntMat::rows_slice(int i0, int i1) const {
    IntMat r(i1 - i0, cols);
    for (int i = i0; i < i1; ++i)
        for (int j = 0; j < cols; ++j) r.at(i - i0, j) = at(i, j);
    return r;
}

IntMat IntMat::neg() const {
    IntMat r = *this;
    for (Int& x : r.a) x = -x;
    return r;
}

std::string IntMat::to_string() const {
    std::ostringstream os;
    for (int i = 0; i < rows; ++i) {
        os << (i ? "\n[" : "[");
        for (int j = 0; j < cols; ++j) os << (j ? " " : "") << at(i, j);
        os << "]";
    }
    return os.str();
}

IntMat hstack(const IntMat& l, const IntMat& r) {
    if (l.cols == 0 && l.rows == 0) return r;
    if (r.cols == 0 && r.rows == 0) return l;
    assert(l.rows == r.rows);
    IntMat m(l.rows, l.cols + r.cols);
    for (int i = 0; i < l.rows; ++i) {
        for (int j = 0; j < l.cols; ++j) m.at(i, j) = l.at(i, j);
        for (int j = 0; j < r.cols; ++j) m.at(i, l.cols + j) = r.at(i, j);
    }
    return m;
}

IntMat vstack(const IntMat& t, const IntMat& b) {
    if (t.cols == 0 && t.rows == 0) return b;
    if (b.cols == 0 && b.rows == 0) return t;
    assert(t.cols == b.cols);
    IntMat m(t.rows + b.rows, t.cols);
    for (int i = 0; i < t.rows; ++i)
        for (int j = 0; j < t.cols; ++j) m.at(i, j) = t.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) m.at(t.rows + i, j) = b.at(i, j);
    return m;
}

namespace {

/* Elementary operations applied to the working matrix and mirrored into the
 * transform pairs.  A row operation on m is a row operation on u and the
 * inverse column operation on u_inv, so u*m*v and u*u_inv stay invariant. */
struct SmithWork {
    IntMat m, u, u_inv, v, v_inv;

    void row_swap(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
        for (int r = 0; r < u_inv.rows; ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
    }
    void col_swap(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
        for (int c = 0; c < v_inv.cols; ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
    }
    // row i += q * row j
    void row_add(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int c = 0; c < m.cols; ++c) m.at(i, c) += q * m.at(j, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) += q * u.at(j, c);
        for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, j) -= q * u_inv.at(r, i);
    }
    // col i += q * col j
    void col_add(int i, int j, const Int& q) {
        if (q == 0) return;
        for (int r = 0; r < m.rows; ++r) m.at(r, i) += q * m.at(r, j);
        for (int r = 0; r < v.rows; ++r) v.at(r, i) += q * v.at(r, j);
        for (int c = 0; c < v_inv.cols; ++c) v_inv.at(j, c) -= q * v_inv.at(i, c);
    }
    void row_negate(int i) {
        for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
        for (int r = 0; r < u_inv.rows; ++r) u_inv.at(r, i) = -u_inv.at(r, i);
    }
};

Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithForm smith(const IntMat& m0) {
    SmithWork w{m0, IntMat::identity(m0.rows), IntMat::identity(m0.rows),
                IntMat::identity(m0.cols), IntMat::identity(m0.cols)};
    IntMat& m = w.m;
    const int n = std::min(m.rows, m.cols);

    int k = 0;
    for (; k < n; ++k) {
        // locate smallest nonzero entry in the remaining block
        int pi = -1, pj = -1;
        Int best = 0;
        for (int i = k; i < m.rows; ++i)
            for (int j = k; j < m.cols; ++j) {
                if (m.at(i, j) == 0) continue;
                Int v = int_abs(m.at(i, j));
                if (pi < 0 || v < best) { best = v; pi = i; pj = j; }
            }
        if (pi < 0) break;  // rest is zero
        w.row_swap(k, pi);
        w.col_swap(k, pj);

        for (;;) {
            bool dirty = false;
            for (int i = k + 1; i < m.rows; ++i) {
                if (m.at(i, k) == 0) continue;
                Int q = m.at(i, k) / m.at(k, k);
                w.row_add(i, k, -q);
                if (m.at(i, k) != 0) {  // remainder became the smaller pivot
                    w.row_swap(k, i);
                    dirty = true;
                }
            }
            for (int j = k + 1; j < m.cols; ++j) {
                if (m.at(k, j) == 0) continue;
                Int q = m.at(k, j) / m.at(k, k);
                w.col_add(j, k, -q);
                if (m.at(k, j) != 0) {
                    w.col_swap(k, j);
                    dirty = true;
                }
            }
            if (!dirty) {
                bool clear = true;
                for (int i = k + 1; i < m.rows && clear; ++i)
                    if (m.at(i, k) != 0) clear = false;
                for (int j = k + 1; j < m.cols && clear; ++j)
                    if (m.at(k, j) != 0) clear = false;
                if (clear) break;
            }
        }
        if (m.at(k, k) < 0) w.row_negate(k);
    }

    // enforce the divisibility chain d_i | d_{i+1}
    for (bool fixed = false; !fixed;) {
        fixed = true;
        for (int i = 0; i + 1 < k; ++i) {
            if (m.at(i + 1, i + 1) % m.at(i, i) == 0) continue;
            fixed = false;
            // fold entry (i+1, i+1) into column i, then re-clear the 2x2 block
            w.col_add(i, i + 1, 1);
            for (;;) {
                Int a = m.at(i, i), b = m.at(i + 1, i);
                if (b == 0) break;
                Int q = a / b;
                w.row_add(i, i + 1, -q);
                w.row_swap(i, i + 1);
            }
            Int q = m.at(i, i + 1) / m.at(i, i);
            w.col_add(i + 1, i, -q);
            if (m.at(i, i) < 0) w.row_negate(i);
            if (m.at(i + 1, i + 1) < 0) w.row_negate(i + 1);
        }
    }

    SmithForm out;
    out.d = m;
    out.u = w.u;
    out.u_inv = w.u_inv;
    out.v = w.v;
    out.v_inv = w.v_inv;
    for (int i = 0; i < k; ++i) out.diag.push_back(m.at(i, i));
    return out;
}

int rank_q(IntMat m) {
    // Bareiss fraction-free elimination
    int rank = 0;
    Int prev = 1;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows; ++i)
            if (m.at(i, col) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        for (int i = rank + 1; i < m.rows; ++i) {
            for (int j = col + 1; j < m.cols; ++j) {
                m.at(i, j) = (m.at(rank, col) * m.at(i, j) - m.at(i, col) * m.at(rank, j)) / prev;
            }
            m.at(i, col) = 0;
        }
        prev = m.at(rank, col);
        ++rank;
    }
    return rank;
}

int rank_mod_p(const IntMat& m, long p) {
    if (p <= 1) throw std::invalid_argument("rank_mod_p: p must be prime");
    std::vector<std::vector<long>> a(m.rows, std::vector<long>(m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            Int r = m.at(i, j) % p;
            if (r < 0) r += p;
            a[i][j] = long(r);
        }
    auto inv = [p](long x) {
        long r = 1, b = x % p, e = p - 2;  // Fermat; p prime
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < m.rows; ++i)
            if (a[i][col] != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        long pi = inv(a[rank][col]);
        for (int j = col; j < m.cols; ++j) a[rank][j] = a[rank][j] * pi % p;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rank || a[i][col] == 0) continue;
            long f = a[i][col];
            for (int j = col; j < m.cols; ++j)
                a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

IntMat kernel_basis(const IntMat& m) {
    SmithForm s = smith(m);
    int r = s.rank();
    return s.v.cols_slice(r, m.cols);
}

bool solve(const IntMat& m, const IntMat& b, IntMat& x) {
    assert(m.rows == b.rows);
    SmithForm s = smith(m);
    int r = s.rank();
    IntMat ub = s.u.mul(b);
    IntMat y(m.cols, b.cols);
    for (int c = 0; c < b.cols; ++c) {
        for (int i = 0; i < m.rows; ++i) {
            if (i < r) {
                if (ub.at(i, c) % s.diag[i] != 0) return false;
                y.at(i, c) = ub.at(i, c) / s.diag[i];
            } else if (ub.at(i, c) != 0) {
                return false;
            }
        }
    }
    x = s.v.mul(y);
    return true;
}

IntMat image_basis(const IntMat& m) {
    SmithForm s = smith(m);
    int r = s.rank();
    IntMat b(m.rows, r);
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < m.rows; ++i) b.at(i, j) = s.u_inv.at(i, j) * s.diag[j];
    return b;
}

}  // namespace rogz
