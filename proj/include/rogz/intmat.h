#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace rogz {

using Int = boost::multiprecision::cpp_int;

/* Dense integer matrix, row major.  Sizes stay small (a few hundred rows)
 * so no attempt at sparsity; exactness is the whole point. */
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), a(size_t(r) * size_t(c)) {}

    static IntMat identity(int n);

    Int& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    bool is_zero() const;
    bool operator==(const IntMat& o) const = default;

    IntMat transpose() const;
    IntMat mul(const IntMat& o) const;
    IntMat col(int j) const;
    IntMat cols_slice(int j0, int j1) const;  // columns [j0, j1)
    IntMat rows_slice(int i0, int i1) const;
    IntMat neg() const;
    std::string to_string() const;
};

IntMat hstack(const IntMat& l, const IntMat& r);
IntMat vstack(const IntMat& t, const IntMat& b);

/* d = u * m * v with u, v unimodular; u_inv, v_inv their inverses.
 * diag holds the nonzero invariant factors d1 | d2 | ..., all positive. */
struct SmithForm {
    IntMat d;
    IntMat u, u_inv;
    IntMat v, v_inv;
    std::vector<Int> diag;

    int rank() const { return int(diag.size()); }
};

SmithForm smith(const IntMat& m);

// Rank over Q by fraction-free elimination; independent of smith().
int rank_q(IntMat m);

// Rank over F_p by plain modular elimination; independent of both above.
int rank_mod_p(const IntMat& m, long p);

/* Basis of the integer kernel as matrix columns.  The span is saturated:
 * any integer vector with m*x = 0 is an integer combination of the basis. */
IntMat kernel_basis(const IntMat& m);

/* Solve m*x = b exactly over Z (b may have several columns).  Returns false
 * if some column has no integral solution. */
bool solve(const IntMat& m, const IntMat& b, IntMat& x);

// Basis of the column span (image) of m, as matrix columns.
IntMat image_basis(const IntMat& m);

}  // namespace rogz
