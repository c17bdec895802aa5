#pragma once

// Cells of the well-rounded retract, indexed by minimal-vector sets.
//
// realizability: a set M indexes a nonempty open cell iff some positive
// definite form takes weighted value exactly 1 on M and strictly more on
// every other sign class.  This is decided by constraint generation: an
// exact LP maximizes the off-M margin over a growing cut set, the complete
// enumeration of weighted minimal vectors serves as separation oracle, and
// positive definiteness of LP witnesses is certified (or refuted with an
// explicit short vector) by an exact Lagrange decomposition.
//
// faces_of_sigma: the closed top cell for n = 4 sits in the affine slice
// diag(A) = 1; its vertex forms are computed by the same cut loop applied to
// an exact vertex enumeration, and the face lattice is read off the
// vertex/minimal-vector incidence.

#include "wtc/lattice.hpp"
#include "wtc/lp.hpp"
#include "wtc/polytope.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>

namespace wtc {

class MinVectorSet {
  public:
    MinVectorSet() = default;
    MinVectorSet(int n, std::vector<SignVector> vs) : n_(n), vs_(std::move(vs)) {
        for (const auto& v : vs_)
            if (v.n() != n_) throw std::invalid_argument("MinVectorSet: mixed ranks");
        std::sort(vs_.begin(), vs_.end());
        vs_.erase(std::unique(vs_.begin(), vs_.end()), vs_.end());
    }

    static MinVectorSet standard_basis(int n) {
        std::vector<SignVector> vs;
        for (int i = 0; i < n; ++i) {
            std::vector<long> e(n, 0);
            e[i] = 1;
            vs.emplace_back(e);
        }
        return MinVectorSet(n, std::move(vs));
    }

    int n() const { return n_; }
    int size() const { return static_cast<int>(vs_.size()); }
    const std::vector<SignVector>& vectors() const { return vs_; }
    bool contains(const SignVector& x) const {
        return std::binary_search(vs_.begin(), vs_.end(), x);
    }
    bool subset_of(const MinVectorSet& o) const {
        for (const auto& v : vs_)
            if (!o.contains(v)) return false;
        return true;
    }
    MinVectorSet unioned(const MinVectorSet& o) const {
        std::vector<SignVector> vs = vs_;
        vs.insert(vs.end(), o.vs_.begin(), o.vs_.end());
        return MinVectorSet(n_, std::move(vs));
    }
    MinVectorSet with(const SignVector& x) const {
        std::vector<SignVector> vs = vs_;
        vs.push_back(x);
        return MinVectorSet(n_, std::move(vs));
    }

    bool spans() const { return span_rank(vs_, n_) == n_; }
    // rank of {x x^t : x in M} inside symmetric matrices
    int gram_rank() const {
        if (vs_.empty()) return 0;
        RatMat m(size(), sym_dim(n_));
        for (int i = 0; i < size(); ++i) {
            auto c = form_coords(vs_[i]);
            for (int j = 0; j < sym_dim(n_); ++j) m(i, j) = c[j];
        }
        return rank(m);
    }

    bool operator==(const MinVectorSet& o) const { return n_ == o.n_ && vs_ == o.vs_; }
    bool operator!=(const MinVectorSet& o) const { return !(*this == o); }
    bool operator<(const MinVectorSet& o) const { return vs_ < o.vs_; }

    std::string key() const {
        std::string s;
        for (const auto& v : vs_) s += v.str();
        return s;
    }

  private:
    int n_ = 0;
    std::vector<SignVector> vs_;
};

inline std::size_t hash_min_vector_set(const MinVectorSet& m) {
    std::size_t h = 0xb7e151628aed2a6bULL;
    for (const auto& v : m.vectors()) h = hash_combine(h, hash_sign_vector(v));
    return h;
}

struct RetractCell {
    MinVectorSet index;
    RatMat witness;  // positive definite, weighted minimum exactly `index` at value 1
    int dim = 0;     // sym_dim(n) - gram_rank(index)
};

struct NotSpanningError : std::invalid_argument {
    NotSpanningError() : std::invalid_argument("index set does not span") {}
};

// nullopt when positive definite; otherwise an integer sign class y with
// A[y] <= 0, found where the Lagrange decomposition breaks down.
inline std::optional<SignVector> pd_violator(const RatMat& a) {
    int n = a.rows();
    RatMat c = a;
    RatMat mu(n, n);
    for (int i = 0; i < n; ++i) {
        Rat q = c(i, i);
        if (q <= 0) {
            std::vector<Rat> x(n, Rat(0));
            x[i] = 1;
            for (int r = i - 1; r >= 0; --r) {
                Rat s(0);
                for (int j = r + 1; j <= i; ++j)
                    if (x[j] != 0) s += mu(r, j) * x[j];
                x[r] = -s;
            }
            Int denom(1);
            for (const Rat& v : x) denom = lcm(denom, v.get_den());
            std::vector<Int> iv(n);
            Int content(0);
            for (int j = 0; j < n; ++j) {
                iv[j] = x[j].get_num() * (denom / x[j].get_den());
                content = gcd(content, iv[j]);
            }
            std::vector<long> ix(n);
            for (int j = 0; j < n; ++j) {
                Int e = iv[j] / content;
                if (!e.fits_slong_p()) throw std::overflow_error("pd_violator overflow");
                ix[j] = e.get_si();
            }
            return SignVector(ix);
        }
        for (int j = i + 1; j < n; ++j) mu(i, j) = c(i, j) / q;
        for (int j = i + 1; j < n; ++j)
            for (int k = j; k < n; ++k) c(j, k) -= c(i, j) * c(i, k) / q;
    }
    return std::nullopt;
}

// Sign classes with all coordinates in {-1,0,1}: the standard seed cut set.
inline std::vector<SignVector> unit_box_classes(int n) {
    std::vector<SignVector> out;
    std::vector<long> x(n, -1);
    for (;;) {
        bool zero = true;
        for (long v : x)
            if (v) { zero = false; break; }
        if (!zero) {
            SignVector s(x);
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        }
        int i = 0;
        while (i < n && x[i] == 1) x[i++] = -1;
        if (i == n) break;
        ++x[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Small sign classes (coordinate box of radius r) whose weighted value under
// a falls below the threshold.  Used to cut indefinite LP witnesses with
// informative short vectors instead of the extreme Lagrange direction, which
// can otherwise grow without bound along a near-singular boundary.
inline std::vector<SignVector> scan_violations(const RatMat& a, const TemperedWeight& w,
                                               long radius, const Rat& threshold) {
    int n = a.rows();
    std::vector<SignVector> out;
    std::vector<long> x(n, -radius);
    for (;;) {
        bool zero = true;
        for (long v : x)
            if (v) { zero = false; break; }
        if (!zero) {
            Rat val(0);
            for (int i = 0; i < n; ++i) {
                if (x[i] == 0) continue;
                for (int j = 0; j < n; ++j)
                    if (x[j] != 0) val += Rat(x[i]) * a(i, j) * Rat(x[j]);
            }
            SignVector s(x);
            if (w(s) * val < threshold &&
                std::find(out.begin(), out.end(), s) == out.end())
                out.push_back(s);
        }
        int i = 0;
        while (i < n && x[i] == radius) x[i++] = -radius;
        if (i == n) break;
        ++x[i];
    }
    return out;
}

// Cuts for a witness that failed the positive definiteness check: small
// violated classes when they exist, the Lagrange direction otherwise.
inline std::vector<SignVector> indefinite_cuts(const RatMat& a, const TemperedWeight& w,
                                               const MinVectorSet& mset,
                                               const SignVector& ldl_violator) {
    long maxcoord = 2;
    for (const auto& v : mset.vectors())
        for (int i = 0; i < v.n(); ++i) maxcoord = std::max(maxcoord, std::abs(v[i]));
    for (long r : {2L, std::min(20L, 2 * maxcoord)}) {
        std::vector<SignVector> found;
        for (const auto& y : scan_violations(a, w, r, Rat(1)))
            if (!mset.contains(y)) found.push_back(y);
        if (!found.empty()) return found;
    }
    return {ldl_violator};
}

enum class CellStatus { Interior, Degenerate, Empty };

struct ClosedCell {
    MinVectorSet index;  // common tight classes over the whole closed cell
    RatMat witness;      // relative-interior point of the closed cell
    int dim = 0;
};

struct CellQuery {
    CellStatus status = CellStatus::Empty;
    std::optional<RetractCell> cell;      // Interior
    std::optional<ClosedCell> closure;    // Degenerate
};

namespace retract_detail {

struct CellLp {
    int n, m;
    std::vector<LinearConstraint> eqs;

    CellLp(const MinVectorSet& mset, const TemperedWeight& w)
        : n(mset.n()), m(sym_dim(mset.n())) {
        for (const auto& x : mset.vectors()) {
            LinearConstraint c;
            c.coeffs = form_coords(x);
            Rat wx = w(x);
            for (auto& v : c.coeffs) v *= wx;
            c.rhs = 1;
            eqs.push_back(std::move(c));
        }
    }

    LinearConstraint cut(const SignVector& y, const TemperedWeight& w, const Rat& rhs,
                         int extra_vars = 0) const {
        LinearConstraint c;
        c.coeffs = form_coords(y);
        Rat wy = w(y);
        for (auto& v : c.coeffs) v *= wy;
        c.coeffs.resize(m + extra_vars, Rat(0));
        c.rhs = rhs;
        return c;
    }

    std::vector<Rat> trace_objective(int extra_vars = 0) const {
        std::vector<Rat> obj(m + extra_vars, Rat(0));
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                if (i == j) obj[k] = Rat(-1);
                ++k;
            }
        return obj;
    }
};

}  // namespace retract_detail

// Closed-cell feasibility: is there a form with weighted minimum 1 attained
// on (at least) all of M?  Returns the closure data: the common tight set
// over the closed cell and a relative-interior witness.
inline std::optional<ClosedCell> closed_cell(const MinVectorSet& mset,
                                             const TemperedWeight& w,
                                             int max_rounds = 500) {
    if (!mset.spans()) throw NotSpanningError();
    retract_detail::CellLp lp(mset, w);
    std::vector<SignVector> cuts;
    for (const auto& y : unit_box_classes(lp.n))
        if (!mset.contains(y)) cuts.push_back(y);

    for (int round = 0; round < max_rounds; ++round) {
        std::vector<LinearConstraint> ineqs;
        for (const auto& y : cuts) ineqs.push_back(lp.cut(y, w, Rat(1)));
        LpResult r = lp_optimize(lp.m, lp.eqs, ineqs, lp.trace_objective());
        if (r.status == LpResult::Status::Infeasible) return std::nullopt;
        if (r.status == LpResult::Status::Unbounded)
            throw std::logic_error("closed_cell: trace objective unbounded");
        RatMat a = sym_from_coords(lp.n, r.x);
        if (auto viol = pd_violator(a)) {
            cuts.push_back(*viol);
            continue;
        }
        QuadraticForm qa(lp.n, a);
        MinResult mr = weighted_minimum(qa, w);
        if (mr.minimum < 1) {
            for (const auto& v : mr.vectors)
                if (!mset.contains(v)) cuts.push_back(v);
            continue;
        }
        // Feasible point found; separate the tight classes that are tight on
        // the whole closed cell from those that admit slack.
        std::vector<SignVector> common = mset.vectors();
        std::vector<std::vector<Rat>> interior_pts{r.x};
        bool restart = false;
        for (const auto& z : mr.vectors) {
            if (mset.contains(z)) continue;
            std::vector<LinearConstraint> zineqs = ineqs;
            LinearConstraint capz = lp.cut(z, w, Rat(-2));
            for (auto& c : capz.coeffs) c = -c;
            zineqs.push_back(capz);  // w(z) A[z] <= 2
            std::vector<Rat> obj = lp.cut(z, w, Rat(0)).coeffs;
            LpResult rz = lp_optimize(lp.m, lp.eqs, zineqs, obj);
            if (rz.status != LpResult::Status::Optimal)
                throw std::logic_error("closed_cell: slack probe failed");
            if (rz.value > 1)
                interior_pts.push_back(rz.x);
            else
                common.push_back(z);
        }
        std::vector<Rat> avg(lp.m, Rat(0));
        for (const auto& p : interior_pts)
            for (int i = 0; i < lp.m; ++i) avg[i] += p[i];
        for (auto& v : avg) v /= Rat(static_cast<long>(interior_pts.size()));
        RatMat aw = sym_from_coords(lp.n, avg);
        if (auto viol = pd_violator(aw)) {
            cuts.push_back(*viol);
            continue;
        }
        MinResult mw = weighted_minimum(QuadraticForm(lp.n, aw), w);
        if (mw.minimum < 1) {
            for (const auto& v : mw.vectors)
                if (!mset.contains(v)) cuts.push_back(v);
            restart = true;
        }
        if (restart) continue;
        MinVectorSet closure(lp.n, common);
        if (!(MinVectorSet(lp.n, mw.vectors) == closure))
            throw std::logic_error("closed_cell: relint witness disagrees with tight set");
        return ClosedCell{closure, aw, sym_dim(lp.n) - closure.gram_rank()};
    }
    throw std::logic_error("closed_cell: separation did not converge");
}

// Full cell analysis.  Interior: a relative-interior witness exists with
// weighted minimal set exactly M.  Degenerate: the closed cell is nonempty
// but every point carries extra minimal vectors (the cell belongs to the
// larger index).  Empty: no form attains minimum 1 on all of M.
inline CellQuery analyze_cell(const MinVectorSet& mset, const TemperedWeight& w,
                              int max_rounds = 500) {
    if (!mset.spans()) throw NotSpanningError();
    retract_detail::CellLp lp(mset, w);
    std::vector<SignVector> cuts;
    for (const auto& y : unit_box_classes(lp.n))
        if (!mset.contains(y)) cuts.push_back(y);

    auto degenerate_or_empty = [&]() {
        CellQuery q;
        auto cc = closed_cell(mset, w, max_rounds);
        if (cc) {
            q.status = CellStatus::Degenerate;
            q.closure = std::move(cc);
        } else {
            q.status = CellStatus::Empty;
        }
        return q;
    };

    for (int round = 0; round < max_rounds; ++round) {
        // vars: the m symmetric coordinates plus the margin s
        std::vector<LinearConstraint> eqs;
        for (auto e : lp.eqs) {
            e.coeffs.resize(lp.m + 1, Rat(0));
            eqs.push_back(std::move(e));
        }
        std::vector<LinearConstraint> ineqs;
        for (const auto& y : cuts) {
            LinearConstraint c = lp.cut(y, w, Rat(1), 1);
            c.coeffs[lp.m] = Rat(-1);  // w(y) A[y] - s >= 1
            ineqs.push_back(std::move(c));
        }
        LinearConstraint scap;
        scap.coeffs.assign(lp.m + 1, Rat(0));
        scap.coeffs[lp.m] = Rat(-1);
        scap.rhs = Rat(-1);  // s <= 1
        ineqs.push_back(scap);
        std::vector<Rat> sobj(lp.m + 1, Rat(0));
        sobj[lp.m] = 1;
        LpResult r1 = lp_optimize(lp.m + 1, eqs, ineqs, sobj);
        if (r1.status == LpResult::Status::Infeasible) {
            CellQuery q;
            q.status = CellStatus::Empty;
            return q;
        }
        if (r1.status != LpResult::Status::Optimal)
            throw std::logic_error("analyze_cell: margin LP unbounded");
        Rat s = r1.value;
        if (s <= 0) return degenerate_or_empty();

        // Second stage: minimum trace at the optimal margin, for a small and
        // deterministic witness.
        std::vector<LinearConstraint> ineqs2;
        for (const auto& y : cuts) ineqs2.push_back(lp.cut(y, w, Rat(1) + s));
        LpResult r2 = lp_optimize(lp.m, lp.eqs, ineqs2, lp.trace_objective());
        if (r2.status != LpResult::Status::Optimal)
            throw std::logic_error("analyze_cell: trace stage failed");
        RatMat a = sym_from_coords(lp.n, r2.x);
        if (auto viol = pd_violator(a)) {
            cuts.push_back(*viol);
            continue;
        }
        MinResult mr = weighted_minimum(QuadraticForm(lp.n, a), w);
        if (mr.minimum < 1) {
            for (const auto& v : mr.vectors)
                if (!mset.contains(v)) cuts.push_back(v);
            continue;
        }
        MinVectorSet attained(lp.n, mr.vectors);
        if (attained == mset) {
            CellQuery q;
            q.status = CellStatus::Interior;
            q.cell = RetractCell{mset, a, sym_dim(lp.n) - mset.gram_rank()};
            return q;
        }
        for (const auto& v : mr.vectors)
            if (!mset.contains(v)) cuts.push_back(v);
    }
    throw std::logic_error("analyze_cell: separation did not converge");
}

inline std::optional<RetractCell> realizable(const MinVectorSet& mset,
                                             const TemperedWeight& w) {
    CellQuery q = analyze_cell(mset, w);
    if (q.status == CellStatus::Interior) return q.cell;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Group elements mapping one index set onto another

struct GroupSpec {
    enum class Flavor { GL, SL, Sp };
    int n = 2;
    Flavor flavor = Flavor::GL;
    Int level = 1;           // n=2: lower-left entry = 0 mod level
    std::vector<Int> conj;   // nonempty: require (a g a^{-1}) integral, a = diag(conj)

    static GroupSpec gl(int n) { return {n, Flavor::GL, Int(1), {}}; }
    static GroupSpec sl(int n) { return {n, Flavor::SL, Int(1), {}}; }
    static GroupSpec sp4() { return {4, Flavor::Sp, Int(1), {}}; }

    GroupSpec conjugated_by(const std::vector<Int>& a) const {
        GroupSpec g = *this;
        g.conj = a;
        return g;
    }
    GroupSpec with_level(const Int& N) const {
        GroupSpec g = *this;
        g.level = N;
        return g;
    }

    static IntMat omega4() {
        IntMat w(4, 4);
        w(0, 3) = 1;
        w(1, 2) = 1;
        w(2, 1) = -1;
        w(3, 0) = -1;
        return w;
    }

    bool member(const IntMat& g) const {
        if (g.rows() != n || g.cols() != n) return false;
        Int d = det(g);
        switch (flavor) {
            case Flavor::GL:
                if (d != 1 && d != -1) return false;
                break;
            case Flavor::SL:
                if (d != 1) return false;
                break;
            case Flavor::Sp: {
                if (n != 4) return false;
                IntMat w = omega4();
                if (g * w * g.transposed() != w) return false;
                break;
            }
        }
        if (level != 1) {
            // lower-left block (all entries (i,j) with i >= n/2 > j) = 0 mod level
            for (int i = n / 2; i < n; ++i)
                for (int j = 0; j < n / 2; ++j)
                    if (g(i, j) % level != 0) return false;
        }
        if (!conj.empty()) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if ((conj[i] * g(i, j)) % conj[j] != 0) return false;
        }
        return true;
    }
};

inline MinVectorSet act(const IntMat& g, const MinVectorSet& m) {
    if (det(g) == 0) throw std::invalid_argument("act: singular matrix");
    std::vector<SignVector> vs;
    for (const auto& x : m.vectors()) vs.push_back(x.acted(g));
    return MinVectorSet(m.n(), std::move(vs));
}

// All group elements g with (m1 . g) == m2, in deterministic order; bounded
// by `limit` if positive.  Backtracks over images of a spanning subset.
inline std::vector<IntMat> all_equivalences(const MinVectorSet& m1, const MinVectorSet& m2,
                                            const GroupSpec& group, int limit = 0) {
    std::vector<IntMat> out;
    if (m1.n() != m2.n() || m1.size() != m2.size()) return out;
    if (!m1.spans() || !m2.spans()) throw NotSpanningError();
    int n = m1.n();

    // spanning subset of m1, in canonical order
    std::vector<SignVector> basis;
    {
        std::vector<SignVector> sofar;
        for (const auto& v : m1.vectors()) {
            sofar.push_back(v);
            if (span_rank(sofar, n) == static_cast<int>(sofar.size()))
                basis.push_back(v);
            else
                sofar.pop_back();
            if (static_cast<int>(basis.size()) == n) break;
        }
    }
    RatMat b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b(i, j) = Rat(basis[i][j]);
    RatMat binv = inverse(b);

    std::vector<int> pick(n, 0);
    std::vector<int> sign(n, 1);
    auto try_assignment = [&]() {
        RatMat t(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t(i, j) = Rat(sign[i]) * Rat(m2.vectors()[pick[i]][j]);
        RatMat g = binv * t;
        IntMat gi(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (g(i, j).get_den() != 1) return;
                gi(i, j) = g(i, j).get_num();
            }
        if (!group.member(gi)) return;
        if (act(gi, m1) != m2) return;
        out.push_back(gi);
    };
    auto rec = [&](auto&& self, int i) -> void {
        if (limit > 0 && static_cast<int>(out.size()) >= limit) return;
        if (i == n) {
            try_assignment();
            return;
        }
        for (int p = 0; p < m2.size(); ++p) {
            pick[i] = p;
            for (int s : {1, -1}) {
                sign[i] = s;
                self(self, i + 1);
                if (limit > 0 && static_cast<int>(out.size()) >= limit) return;
            }
        }
    };
    rec(rec, 0);
    return out;
}

inline std::optional<IntMat> gamma_equivalent(const MinVectorSet& m1, const MinVectorSet& m2,
                                              const GroupSpec& group) {
    auto all = all_equivalences(m1, m2, group, 1);
    if (all.empty()) return std::nullopt;
    return all[0];
}

inline std::vector<IntMat> stabilizer(const MinVectorSet& m, const GroupSpec& group) {
    return all_equivalences(m, m, group);
}

// ---------------------------------------------------------------------------
// Faces of the distinguished top cell (n = 4, trivial weights)

struct FacePoset {
    struct Face {
        MinVectorSet index;
        RatMat witness;               // relative-interior form, diag = 1
        int dim = 0;                  // sym_dim(4) - gram rank = 10 - rank
        std::vector<int> vertex_ids;  // indices into `vertex_forms`
    };
    std::vector<Face> faces;                        // includes the top cell
    std::vector<RatMat> vertex_forms;               // perfect forms at the corners
    std::vector<MinVectorSet> vertex_indices;       // their minimal-vector sets
    std::vector<std::pair<int, int>> relation;      // (i,j): face i <= face j

    int top() const {
        for (size_t i = 0; i < faces.size(); ++i)
            if (faces[i].dim == sym_dim(4) - 4) return static_cast<int>(i);
        throw std::logic_error("face poset: missing top cell");
    }
    const Face* find(const MinVectorSet& m) const {
        for (const auto& f : faces)
            if (f.index == m) return &f;
        return nullptr;
    }

    std::string to_text() const;
    static FacePoset from_text(const std::string&);
};

namespace retract_detail {

inline int offdiag_index(int i, int j, int n) {
    // pairs (i,j), i<j, lexicographic
    int k = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (a == i && b == j) return k;
            ++k;
        }
    throw std::logic_error("offdiag_index");
}

inline RatMat form_from_offdiag(const std::vector<Rat>& x, int n) {
    RatMat a = RatMat::identity(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) a(i, j) = a(j, i) = x[k++];
    return a;
}

// A[y] >= 1 as a halfspace in the off-diagonal coordinates of a diag-1 form.
inline Halfspace class_halfspace(const SignVector& y, int n) {
    Halfspace h;
    h.normal.assign(n * (n - 1) / 2, Rat(0));
    Rat c(0);
    for (int i = 0; i < n; ++i) c += Rat(Int(y[i]) * Int(y[i]));
    int k = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) h.normal[k++] = Rat(2 * Int(y[i]) * Int(y[j]));
    h.offset = Rat(1) - c;
    return h;
}

inline FacePoset build_faces_of_sigma() {
    const int n = 4;
    const TemperedWeight w = TemperedWeight::trivial(n);

    // Box |a_ij| <= 1/2 from the classes e_i +- e_j; remaining unit-box
    // classes enter as cuts.
    std::vector<std::pair<Rat, Rat>> bounds(6, {make_rat(-1, 2), make_rat(1, 2)});
    VertexPolytope poly(bounds);
    std::set<SignVector> inserted;
    auto is_box_class = [&](const SignVector& y) {
        int nz = 0, sum = 0;
        for (int i = 0; i < n; ++i) {
            if (std::abs(y[i]) > 1) return false;
            if (y[i] != 0) ++nz;
        }
        (void)sum;
        return nz <= 2;  // e_i and e_i +- e_j are already equalities/box facets
    };
    for (const auto& y : unit_box_classes(n)) {
        if (is_box_class(y)) continue;
        poly.cut(class_halfspace(y, n));
        inserted.insert(y);
    }

    for (int round = 0;; ++round) {
        if (round > 200) throw std::logic_error("faces_of_sigma: cut loop did not converge");
        std::set<SignVector> newcuts;
        for (const auto& v : poly.vertices()) {
            RatMat a = form_from_offdiag(v, n);
            if (auto viol = pd_violator(a)) {
                newcuts.insert(*viol);
                continue;
            }
            MinResult mr = weighted_minimum(QuadraticForm(n, a), w);
            if (mr.minimum < 1)
                for (const auto& y : mr.vectors) newcuts.insert(y);
        }
        std::vector<SignVector> fresh;
        for (const auto& y : newcuts)
            if (!inserted.count(y) && !is_box_class(y)) fresh.push_back(y);
        if (fresh.empty()) break;
        for (const auto& y : fresh) {
            poly.cut(class_halfspace(y, n));
            inserted.insert(y);
        }
    }

    FacePoset fp;
    std::vector<MinVectorSet>& vidx = fp.vertex_indices;
    for (const auto& v : poly.vertices()) {
        RatMat a = form_from_offdiag(v, n);
        MinResult mr = weighted_minimum(QuadraticForm(n, a), w);
        if (mr.minimum != 1)
            throw std::logic_error("faces_of_sigma: vertex with minimum != 1 survived");
        fp.vertex_forms.push_back(a);
        vidx.emplace_back(n, mr.vectors);
    }
    int nv = static_cast<int>(vidx.size());

    auto intersect_indices = [&](const std::vector<int>& s) {
        std::vector<SignVector> common = vidx[s[0]].vectors();
        for (size_t i = 1; i < s.size(); ++i) {
            std::vector<SignVector> next;
            for (const auto& x : common)
                if (vidx[s[i]].contains(x)) next.push_back(x);
            common = std::move(next);
        }
        return MinVectorSet(n, common);
    };
    auto closure = [&](const MinVectorSet& m) {
        std::vector<int> s;
        for (int v = 0; v < nv; ++v)
            if (m.subset_of(vidx[v])) s.push_back(v);
        return s;
    };

    // Universe of tight classes, and the face lattice by breadth-first
    // refinement from the top.
    std::set<SignVector> universe;
    for (const auto& m : vidx)
        for (const auto& x : m.vectors()) universe.insert(x);

    std::map<std::vector<int>, int> seen;
    std::vector<std::vector<int>> faces_by_vertexset;
    std::vector<int> all(nv);
    for (int i = 0; i < nv; ++i) all[i] = i;
    std::vector<std::vector<int>> queue{all};
    seen[all] = 0;
    faces_by_vertexset.push_back(all);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> s = queue[qi];
        MinVectorSet ms = intersect_indices(s);
        for (const auto& y : universe) {
            if (ms.contains(y)) continue;
            std::vector<int> sub;
            for (int v : s)
                if (vidx[v].contains(y)) sub.push_back(v);
            if (sub.empty()) continue;
            std::vector<int> cl = closure(intersect_indices(sub));
            if (!seen.count(cl)) {
                seen[cl] = static_cast<int>(faces_by_vertexset.size());
                faces_by_vertexset.push_back(cl);
                queue.push_back(cl);
            }
        }
    }

    for (const auto& s : faces_by_vertexset) {
        FacePoset::Face f;
        f.vertex_ids = s;
        f.index = intersect_indices(s);
        std::vector<Rat> avg(sym_dim(n), Rat(0));
        for (int v : s) {
            auto c = coords_from_sym(fp.vertex_forms[v]);
            for (int i = 0; i < sym_dim(n); ++i) avg[i] += c[i];
        }
        for (auto& t : avg) t /= Rat(static_cast<long>(s.size()));
        f.witness = sym_from_coords(n, avg);
        f.dim = sym_dim(n) - f.index.gram_rank();
        // Witness validity: the average of the face's vertex forms lies in its
        // relative interior, so its minimal set must be the face index.
        MinResult mr = weighted_minimum(QuadraticForm(n, f.witness), w);
        if (mr.minimum != 1 || MinVectorSet(n, mr.vectors) != f.index)
            throw std::logic_error("faces_of_sigma: witness validity failed");
        fp.faces.push_back(std::move(f));
    }

    for (size_t i = 0; i < fp.faces.size(); ++i)
        for (size_t j = 0; j < fp.faces.size(); ++j) {
            if (i == j) continue;
            bool sub = std::includes(fp.faces[j].vertex_ids.begin(), fp.faces[j].vertex_ids.end(),
                                     fp.faces[i].vertex_ids.begin(), fp.faces[i].vertex_ids.end());
            bool idx = fp.faces[j].index.subset_of(fp.faces[i].index);
            if (sub != idx) throw std::logic_error("faces_of_sigma: face duality violated");
            if (sub) fp.relation.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    return fp;
}

}  // namespace retract_detail

// Cached: the face poset of the top cell indexed by the standard basis.
inline const FacePoset& faces_of_sigma() {
    static const FacePoset fp = retract_detail::build_faces_of_sigma();
    return fp;
}

// ---------------------------------------------------------------------------
// Poset text export (version-tagged, cache format)

inline std::string FacePoset::to_text() const {
    std::ostringstream os;
    os << "wtc-face-poset v1\n";
    os << "vertices " << vertex_forms.size() << "\n";
    for (size_t i = 0; i < vertex_forms.size(); ++i) {
        os << "vertex";
        for (const auto& c : coords_from_sym(vertex_forms[i])) os << " " << rat_str(c);
        os << "\n";
    }
    os << "faces " << faces.size() << "\n";
    for (const auto& f : faces) {
        os << "face " << f.dim << " " << f.index.size() << " ";
        for (const auto& v : f.index.vectors()) os << f.index.n() << ":" << v.str() << " ";
        os << "| ";
        for (int v : f.vertex_ids) os << v << " ";
        os << "| ";
        for (const auto& c : coords_from_sym(f.witness)) os << rat_str(c) << " ";
        os << "\n";
    }
    os << "relations " << relation.size() << "\n";
    for (const auto& [i, j] : relation) os << i << " " << j << "\n";
    return os.str();
}

inline FacePoset FacePoset::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    is >> tok;
    std::string ver;
    is >> ver;
    if (tok != "wtc-face-poset" || ver != "v1")
        throw std::runtime_error("face poset cache: bad header");
    FacePoset fp;
    size_t nvert, nfaces, nrel;
    is >> tok >> nvert;
    const int n = 4, m = sym_dim(4);
    for (size_t i = 0; i < nvert; ++i) {
        is >> tok;
        std::vector<Rat> c(m);
        for (auto& v : c) {
            std::string s;
            is >> s;
            v = rat_parse(s);
        }
        fp.vertex_forms.push_back(sym_from_coords(n, c));
        fp.vertex_indices.emplace_back(
            n, weighted_minimum(QuadraticForm(n, fp.vertex_forms.back()),
                                TemperedWeight::trivial(n))
                   .vectors);
    }
    is >> tok >> nfaces;
    for (size_t i = 0; i < nfaces; ++i) {
        Face f;
        int sz;
        is >> tok >> f.dim >> sz;
        std::vector<SignVector> vs;
        for (int k = 0; k < sz; ++k) {
            std::string s;
            is >> s;
            // format "4:(a,b,c,d)"
            auto colon = s.find(':');
            std::string body = s.substr(colon + 2, s.size() - colon - 3);
            std::vector<long> coords;
            std::istringstream cs(body);
            std::string piece;
            while (std::getline(cs, piece, ',')) coords.push_back(std::stol(piece));
            vs.emplace_back(coords);
        }
        f.index = MinVectorSet(n, vs);
        is >> tok;  // "|"
        for (;;) {
            is >> tok;
            if (tok == "|") break;
            f.vertex_ids.push_back(std::stoi(tok));
        }
        std::vector<Rat> c(m);
        for (auto& v : c) {
            std::string s;
            is >> s;
            v = rat_parse(s);
        }
        f.witness = sym_from_coords(n, c);
        fp.faces.push_back(std::move(f));
    }
    is >> tok >> nrel;
    for (size_t i = 0; i < nrel; ++i) {
        int a, b;
        is >> a >> b;
        fp.relation.push_back({a, b});
    }
    return fp;
}

}  // namespace wtc
