#pragma once

// Quadratic forms, weight families and weighted minimal-vector enumeration.
//
// Vectors are rows of Z^n with n in {2,3,4}; x and -x name the same line, so
// every vector is kept in canonical sign form (first nonzero coordinate
// positive).  The weighted arithmetic minimum of a positive definite form A
// under a weight family w is min over nonzero sign classes of w(x) * A[x];
// enumeration is complete: a recursive Lagrange-decomposition bound in exact
// rational arithmetic lists every candidate below the proven cutoff.

#include "wtc/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wtc {

class SignVector {
  public:
    SignVector() = default;
    explicit SignVector(std::vector<long> v) : v_(std::move(v)) {
        if (v_.size() < 2 || v_.size() > 4)
            throw std::invalid_argument("SignVector: rank must be 2..4");
        canonicalize();
    }
    SignVector(std::initializer_list<long> v) : SignVector(std::vector<long>(v)) {}

    int n() const { return static_cast<int>(v_.size()); }
    long operator[](int i) const { return v_[i]; }
    const std::vector<long>& coords() const { return v_; }
    bool is_zero() const {
        for (long c : v_)
            if (c) return false;
        return true;
    }

    bool operator<(const SignVector& o) const { return v_ < o.v_; }
    bool operator==(const SignVector& o) const { return v_ == o.v_; }
    bool operator!=(const SignVector& o) const { return v_ != o.v_; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < v_.size(); ++i)
            s += (i ? "," : "") + std::to_string(v_[i]);
        return s + ")";
    }

    // Image under right multiplication by g, recanonicalized.
    SignVector acted(const IntMat& g) const {
        if (g.rows() != n() || g.cols() != n())
            throw std::invalid_argument("SignVector::acted: dimension mismatch");
        std::vector<long> r(v_.size(), 0);
        for (int j = 0; j < g.cols(); ++j) {
            Int s(0);
            for (int i = 0; i < g.rows(); ++i) s += Int(v_[i]) * g(i, j);
            if (!s.fits_slong_p())
                throw std::overflow_error("SignVector::acted: entry overflow");
            r[j] = s.get_si();
        }
        return SignVector(std::move(r));
    }

  private:
    void canonicalize() {
        for (long c : v_) {
            if (c > 0) return;
            if (c < 0) {
                for (auto& x : v_) x = -x;
                return;
            }
        }
        throw std::invalid_argument("SignVector: zero vector");
    }
    std::vector<long> v_;
};

inline std::size_t hash_sign_vector(const SignVector& v) {
    std::size_t h = 0x243f6a8885a308d3ULL;
    for (int i = 0; i < v.n(); ++i)
        h = hash_combine(h, static_cast<std::size_t>(v[i]) * 0x9e3779b1u);
    return h;
}

class QuadraticForm {
  public:
    QuadraticForm(int n, RatMat a) : n_(n), a_(std::move(a)) {
        if (a_.rows() != n_ || a_.cols() != n_)
            throw std::invalid_argument("QuadraticForm: shape mismatch");
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (a_(i, j) != a_(j, i))
                    throw std::invalid_argument("QuadraticForm: not symmetric");
        if (!positive_definite(a_))
            throw std::invalid_argument("QuadraticForm: not positive definite");
    }

    static QuadraticForm identity(int n) {
        return QuadraticForm(n, RatMat::identity(n));
    }

    static bool positive_definite(const RatMat& a) {
        // Exact leading-principal-minor test.
        for (int k = 1; k <= a.rows(); ++k) {
            RatMat sub(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub(i, j) = a(i, j);
            if (det(sub) <= 0) return false;
        }
        return true;
    }

    int n() const { return n_; }
    const RatMat& matrix() const { return a_; }

    Rat operator()(const SignVector& x) const {
        Rat v(0);
        for (int i = 0; i < n_; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < n_; ++j)
                if (x[j] != 0) v += Rat(x[i]) * a_(i, j) * Rat(x[j]);
        }
        return v;
    }

    Rat trace() const {
        Rat t(0);
        for (int i = 0; i < n_; ++i) t += a_(i, i);
        return t;
    }

  private:
    int n_;
    RatMat a_;
};

inline Rat evaluate(const QuadraticForm& a, const SignVector& x) {
    if (a.n() != x.n())
        throw std::invalid_argument("evaluate: dimension mismatch");
    return a(x);
}

// Gamma-invariant weights on lines: a default value plus finitely many
// exceptional sign classes.
class WeightFunction {
  public:
    explicit WeightFunction(Rat def = Rat(1)) : default_(std::move(def)) {
        if (default_ <= 0) throw std::invalid_argument("weights must be positive");
    }
    void set_exception(const SignVector& x, Rat w) {
        if (w <= 0) throw std::invalid_argument("weights must be positive");
        exceptions_[x] = std::move(w);
    }
    const Rat& operator()(const SignVector& x) const {
        auto it = exceptions_.find(x);
        return it == exceptions_.end() ? default_ : it->second;
    }
    Rat min_value() const {
        Rat m = default_;
        for (const auto& [_, w] : exceptions_) m = std::min(m, w);
        return m;
    }

  private:
    Rat default_;
    std::map<SignVector, Rat> exceptions_;
};

// The datum (a, ell, k) of a Hecke correspondence: a is an integral diagonal
// matrix, M0 = L0 a is the sublattice it stabilizes, and tau0 the terminal
// temperament of the associated tempered family.
class HeckeDatum {
  public:
    HeckeDatum(int n, std::vector<Int> diag, Int ell, int k, Rat tau0_sq)
        : n_(n), diag_(std::move(diag)), ell_(std::move(ell)), k_(k),
          tau0_sq_(std::move(tau0_sq)) {
        if (static_cast<int>(diag_.size()) != n_)
            throw std::invalid_argument("HeckeDatum: diagonal size");
        for (const Int& d : diag_)
            if (d <= 0) throw std::invalid_argument("HeckeDatum: diagonal must be positive");
        if (tau0_sq_ < 1) throw std::invalid_argument("HeckeDatum: tau0 >= 1 required");
    }

    // T_{ell,k} for GL_n / SL_n: a = diag(1,..,1,ell,..,ell), tau0 = ell.
    static HeckeDatum gl(int n, const Int& ell, int k) {
        std::vector<Int> d(n, Int(1));
        for (int i = n - k; i < n; ++i) d[i] = ell;
        return HeckeDatum(n, std::move(d), ell, k, Rat(ell * ell));
    }
    static HeckeDatum identity(int n) {
        return HeckeDatum(n, std::vector<Int>(n, Int(1)), Int(1), 0, Rat(1));
    }
    // The two generators of the Sp4 Hecke algebra at a prime ell, with their
    // terminal temperaments tau0 = ell and ell^2.
    static HeckeDatum sp4_siegel(const Int& ell) {
        return HeckeDatum(4, {Int(1), Int(1), ell, ell}, ell, 2, Rat(ell * ell));
    }
    static HeckeDatum sp4_klingen(const Int& ell) {
        Int e2 = ell * ell;
        return HeckeDatum(4, {Int(1), ell, ell, e2}, ell, 2, Rat(e2 * e2));
    }

    int n() const { return n_; }
    const std::vector<Int>& diag() const { return diag_; }
    const Int& ell() const { return ell_; }
    int k() const { return k_; }
    const Rat& tau0_sq() const { return tau0_sq_; }
    bool is_identity() const {
        for (const Int& d : diag_)
            if (d != 1) return false;
        return true;
    }

    IntMat matrix() const {
        IntMat a(n_, n_);
        for (int i = 0; i < n_; ++i) a(i, i) = diag_[i];
        return a;
    }

    // x in M0 = {y a : y integral} iff diag_[i] divides x_i for all i.
    bool in_sublattice(const SignVector& x) const {
        for (int i = 0; i < n_; ++i)
            if (Int(x[i]) % diag_[i] != 0) return false;
        return true;
    }

  private:
    int n_;
    std::vector<Int> diag_;
    Int ell_;
    int k_;
    Rat tau0_sq_;
};

// phi_tau: the base weight on M0, scaled by tau^2 off M0.  tau is carried as
// tau^2 so everything stays rational.
class TemperedWeight {
  public:
    TemperedWeight(WeightFunction base, HeckeDatum datum, Rat tau_sq)
        : base_(std::move(base)), datum_(std::move(datum)), tau_sq_(std::move(tau_sq)) {
        if (tau_sq_ < 1)
            throw std::invalid_argument("TemperedWeight: tau^2 >= 1 required");
    }

    static TemperedWeight trivial(int n) {
        return TemperedWeight(WeightFunction(), HeckeDatum::identity(n), Rat(1));
    }
    static TemperedWeight tempered(const HeckeDatum& d, Rat tau_sq) {
        return TemperedWeight(WeightFunction(), d, std::move(tau_sq));
    }

    Rat operator()(const SignVector& x) const {
        Rat w = base_(x);
        if (!datum_.in_sublattice(x)) w *= tau_sq_;
        return w;
    }

    const HeckeDatum& datum() const { return datum_; }
    const Rat& tau_sq() const { return tau_sq_; }
    const WeightFunction& base() const { return base_; }
    Rat min_base_value() const { return base_.min_value(); }

    TemperedWeight at(Rat tau_sq) const {
        return TemperedWeight(base_, datum_, std::move(tau_sq));
    }

  private:
    WeightFunction base_;
    HeckeDatum datum_;
    Rat tau_sq_;
};

inline Rat weight_at(const HeckeDatum& datum, const SignVector& x, const Rat& tau_sq) {
    return TemperedWeight::tempered(datum, tau_sq)(x);
}

struct MinResult {
    Rat minimum;
    std::vector<SignVector> vectors;  // sorted, canonical, complete

    bool operator==(const MinResult& o) const {
        return minimum == o.minimum && vectors == o.vectors;
    }
};

struct InconclusiveBoxError : std::runtime_error {
    explicit InconclusiveBoxError(const std::string& what) : std::runtime_error(what) {}
};

namespace lattice_detail {

// A = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2 with all q_i > 0.
struct Lagrange {
    std::vector<Rat> q;
    RatMat mu;
};

inline Lagrange lagrange_decompose(const RatMat& a) {
    int n = a.rows();
    RatMat c = a;
    Lagrange l{std::vector<Rat>(n), RatMat(n, n)};
    for (int i = 0; i < n; ++i) {
        l.q[i] = c(i, i);
        if (l.q[i] <= 0)
            throw std::invalid_argument("lagrange: form is not positive definite");
        for (int j = i + 1; j < n; ++j) l.mu(i, j) = c(i, j) / l.q[i];
        for (int j = i + 1; j < n; ++j)
            for (int k = j; k < n; ++k)
                c(j, k) -= c(i, j) * c(i, k) / l.q[i];
    }
    return l;
}

// All x != 0 with A[x] <= bound, as canonical sign classes.
inline std::vector<std::vector<long>> enumerate_below(const RatMat& a, const Rat& bound) {
    int n = a.rows();
    Lagrange lag = lagrange_decompose(a);
    std::set<std::vector<long>> out;
    std::vector<long> x(n, 0);

    // Chooses x[i] for i = n-1 down to 0; used budget tracked exactly.
    auto rec = [&](auto&& self, int i, const Rat& used) -> void {
        if (i < 0) {
            std::vector<long> c = x;
            for (long v : c) {
                if (v > 0) break;
                if (v < 0) {
                    for (auto& w : c) w = -w;
                    break;
                }
            }
            bool zero = true;
            for (long v : c)
                if (v) { zero = false; break; }
            if (!zero) out.insert(std::move(c));
            return;
        }
        Rat center(0);
        for (int j = i + 1; j < n; ++j)
            if (x[j] != 0) center += lag.mu(i, j) * Rat(x[j]);
        Rat budget = (bound - used) / lag.q[i];
        if (budget < 0) return;
        Int s = sqrt_floor(budget) + 1;
        Int lo = rat_ceil(-center - Rat(s));
        Int hi = rat_floor(-center + Rat(s));
        for (Int v = lo; v <= hi; ++v) {
            if (!v.fits_slong_p()) throw std::overflow_error("enumeration overflow");
            Rat t = Rat(v) + center;
            Rat term = lag.q[i] * t * t;
            if (used + term > bound) continue;
            x[i] = v.get_si();
            self(self, i - 1, used + term);
        }
        x[i] = 0;
    };
    rec(rec, n - 1, Rat(0));
    return {out.begin(), out.end()};
}

}  // namespace lattice_detail

// Complete weighted minimal-vector enumeration.  The cutoff argument: any x
// attaining the minimum m satisfies A[x] <= m / w_min where w_min is the
// least base weight value, and m is at most the best value seen on the unit
// vectors.
inline MinResult weighted_minimum(const QuadraticForm& a, const TemperedWeight& w) {
    int n = a.n();
    Rat ub;
    for (int i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        SignVector ei(e);
        Rat v = w(ei) * a(ei);
        if (i == 0 || v < ub) ub = v;
    }
    Rat wmin = w.min_base_value();
    auto cands = lattice_detail::enumerate_below(a.matrix(), ub / wmin);
    MinResult res;
    bool first = true;
    std::vector<SignVector> attain;
    for (const auto& c : cands) {
        SignVector x(c);
        Rat v = w(x) * a(x);
        if (first || v < res.minimum) {
            res.minimum = v;
            attain.clear();
            first = false;
        }
        if (v == res.minimum) attain.push_back(x);
    }
    std::sort(attain.begin(), attain.end());
    res.vectors = std::move(attain);
    return res;
}

// Independent oracle: exhaustive scan of the coordinate box |x_i| <= box.
// Conclusiveness is certified through the Gershgorin eigenvalue lower bound.
inline MinResult brute_force_minimum(const QuadraticForm& a, const TemperedWeight& w,
                                     long box) {
    int n = a.n();
    if (box < 1) throw InconclusiveBoxError("brute_force_minimum: empty box");
    MinResult res;
    bool first = true;
    std::vector<SignVector> attain;
    std::vector<long> x(n, -box);
    for (;;) {
        bool zero = true;
        for (long v : x)
            if (v) { zero = false; break; }
        if (!zero) {
            SignVector sv(x);
            Rat v = w(sv) * a(sv);
            if (first || v < res.minimum) {
                res.minimum = v;
                attain.clear();
                first = false;
            }
            if (v == res.minimum &&
                std::find(attain.begin(), attain.end(), sv) == attain.end())
                attain.push_back(sv);
        }
        int i = 0;
        while (i < n && x[i] == box) x[i++] = -box;
        if (i == n) break;
        ++x[i];
    }

    Rat gersh;
    for (int i = 0; i < n; ++i) {
        Rat row = a.matrix()(i, i);
        for (int j = 0; j < n; ++j)
            if (j != i) row -= abs(a.matrix()(i, j));
        if (i == 0 || row < gersh) gersh = row;
    }
    if (gersh <= 0) {
        // Gershgorin can fail on a positive definite form; 1/trace(A^{-1})
        // is a valid lower bound for the least eigenvalue and always positive.
        RatMat inv = inverse(a.matrix());
        Rat tr(0);
        for (int i = 0; i < n; ++i) tr += inv(i, i);
        gersh = Rat(1) / tr;
    }
    if (res.minimum / (gersh * w.min_base_value()) > Rat(box) * Rat(box))
        throw InconclusiveBoxError("brute_force_minimum: box radius not certifiably large enough");

    std::sort(attain.begin(), attain.end());
    res.vectors = std::move(attain);
    return res;
}

inline int span_rank(const std::vector<SignVector>& vs, int n) {
    if (vs.empty()) return 0;
    RatMat m(static_cast<int>(vs.size()), n);
    for (size_t i = 0; i < vs.size(); ++i)
        for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = Rat(vs[i][j]);
    return rank(m);
}

inline bool is_well_rounded(const QuadraticForm& a, const TemperedWeight& w) {
    return span_rank(weighted_minimum(a, w).vectors, a.n()) == a.n();
}

// Coordinates of the linear functional A |-> A[x] on symmetric matrices,
// listed (a_00, a_01, .., a_0{n-1}, a_11, ..) i <= j: x_i^2 on the diagonal
// and 2 x_i x_j off it.
inline std::vector<Rat> form_coords(const SignVector& x) {
    int n = x.n();
    std::vector<Rat> c;
    c.reserve(n * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            c.push_back(i == j ? Rat(Int(x[i]) * Int(x[i]))
                               : Rat(2 * Int(x[i]) * Int(x[j])));
    return c;
}

inline int sym_dim(int n) { return n * (n + 1) / 2; }

inline RatMat sym_from_coords(int n, const std::vector<Rat>& c) {
    RatMat a(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            a(i, j) = c[k];
            a(j, i) = c[k];
            ++k;
        }
    return a;
}

inline std::vector<Rat> coords_from_sym(const RatMat& a) {
    std::vector<Rat> c;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = i; j < a.cols(); ++j) c.push_back(a(i, j));
    return c;
}

}  // namespace wtc
