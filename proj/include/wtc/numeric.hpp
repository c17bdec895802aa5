#pragma once

// Exact integer/rational scalars used everywhere in the library.
// No floating point participates in any mathematical decision; doubles
// appear only in SVG emission and in heuristic root guessing, both of
// which are re-verified exactly.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wtc {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat to_rat(const Int& n) { return Rat(n); }

// Floor of a rational as an integer.
inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Integer square root, rounded down.  n must be nonnegative.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Largest integer k with k*k <= q (q >= 0).
inline Int sqrt_floor(const Rat& q) {
    Int k = isqrt(rat_floor(q));
    while (Rat((k + 1) * (k + 1)) <= q) ++k;
    while (k > 0 && Rat(k * k) > q) --k;
    return k;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_parse(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t hash_int(const Int& n) {
    // Hash the limb representation; sign folded in.
    std::size_t h = n < 0 ? 0x5851f42d4c957f2dULL : 0;
    const mpz_srcptr z = n.get_mpz_t();
    for (int i = 0; i < std::abs(z->_mp_size); ++i)
        h = hash_combine(h, static_cast<std::size_t>(z->_mp_d[i]));
    return h;
}

inline std::size_t hash_rat(const Rat& q) {
    return hash_combine(hash_int(q.get_num()), hash_int(q.get_den()));
}

}  // namespace wtc
