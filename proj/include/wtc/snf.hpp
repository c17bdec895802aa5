#pragma once

// Smith normal form over Z with unimodular transforms, and the integer
// kernel basis derived from it.  This is the homology workhorse; boundary
// matrices here stay small (a few thousand rows at most), so a dense
// elimination with smallest-pivot selection is enough.

#include "wtc/matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace wtc {

struct SNFResult {
    IntMat d;  // diagonal, d(i,i) | d(i+1,i+1), entries >= 0
    IntMat u;  // unimodular, u * a * v == d
    IntMat v;  // unimodular

    int diag_rank() const {
        int r = 0, n = std::min(d.rows(), d.cols());
        for (int i = 0; i < n; ++i)
            if (d(i, i) != 0) ++r;
        return r;
    }
};

namespace detail {

inline void row_addmul(IntMat& m, int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int j = 0; j < m.cols(); ++j) m(dst, j) += c * m(src, j);
}
inline void col_addmul(IntMat& m, int dst, int src, const Int& c) {
    if (c == 0) return;
    for (int i = 0; i < m.rows(); ++i) m(i, dst) += c * m(i, src);
}
inline void row_negate(IntMat& m, int i) {
    for (int j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace detail

inline SNFResult smith_normal_form(const IntMat& a) {
    using detail::col_addmul;
    using detail::row_addmul;
    int mr = a.rows(), nc = a.cols();
    SNFResult res{a, IntMat::identity(mr), IntMat::identity(nc)};
    IntMat& d = res.d;
    IntMat& u = res.u;
    IntMat& v = res.v;

    int n = std::min(mr, nc);
    for (int k = 0; k < n; ++k) {
        for (;;) {
            // Smallest-magnitude nonzero pivot in the trailing block keeps
            // coefficient growth under control.
            int pi = -1, pj = -1;
            Int best;
            for (int i = k; i < mr; ++i)
                for (int j = k; j < nc; ++j) {
                    if (d(i, j) == 0) continue;
                    Int m = abs(d(i, j));
                    if (pi < 0 || m < best) { best = m; pi = i; pj = j; }
                }
            if (pi < 0) goto done;  // trailing block zero
            if (pi != k) { d.swap_rows(pi, k); u.swap_rows(pi, k); }
            if (pj != k) { d.swap_cols(pj, k); v.swap_cols(pj, k); }

            bool clean = true;
            for (int i = k + 1; i < mr; ++i) {
                if (d(i, k) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d(i, k).get_mpz_t(), d(k, k).get_mpz_t());
                row_addmul(d, i, k, -q);
                row_addmul(u, i, k, -q);
                if (d(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < nc; ++j) {
                if (d(k, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), d(k, j).get_mpz_t(), d(k, k).get_mpz_t());
                col_addmul(d, j, k, -q);
                col_addmul(v, j, k, -q);
                if (d(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // Pivot must divide the rest of the block for the chain to hold.
            bool divides = true;
            for (int i = k + 1; i < mr && divides; ++i)
                for (int j = k + 1; j < nc && divides; ++j)
                    if (d(i, j) % d(k, k) != 0) {
                        row_addmul(d, k, i, Int(1));
                        row_addmul(u, k, i, Int(1));
                        divides = false;
                    }
            if (divides) break;
        }
        if (d(k, k) < 0) {
            detail::row_negate(d, k);
            detail::row_negate(u, k);
        }
    }
done:
    return res;
}

// Rows generate ker(a) (x a^t = 0 ... here the kernel of x |-> a x^t with x a
// column; we return column-kernel vectors as rows).  Vectors are sign
// canonicalized (first nonzero positive) and sorted.
inline std::vector<std::vector<Int>> integer_kernel(const IntMat& a) {
    SNFResult s = smith_normal_form(a);
    int r = s.diag_rank();
    std::vector<std::vector<Int>> basis;
    for (int j = r; j < a.cols(); ++j) {
        std::vector<Int> col(a.cols());
        for (int i = 0; i < a.cols(); ++i) col[i] = s.v(i, j);
        int firstnz = -1;
        for (size_t i = 0; i < col.size(); ++i)
            if (col[i] != 0) { firstnz = static_cast<int>(i); break; }
        if (firstnz >= 0 && col[firstnz] < 0)
            for (auto& c : col) c = -c;
        basis.push_back(std::move(col));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

}  // namespace wtc
