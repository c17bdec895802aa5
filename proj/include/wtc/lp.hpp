#pragma once

// Exact rational linear programming.
//
// Two-phase primal simplex on a dense tableau, Bland's rule throughout, so
// termination is unconditional.  Every answer carries its own proof: a
// feasible point is returned as exact rationals that satisfy each constraint,
// an infeasible system is returned with Farkas multipliers (checked here
// before they are handed out) combining the constraints into 0 >= positive.

#include "wtc/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace wtc {

struct LinearConstraint {
    std::vector<Rat> coeffs;
    Rat rhs;
};

// Multipliers proving {E x = f, G x >= h} empty:
//   eq_mult^T E + ineq_mult^T G = 0,  ineq_mult >= 0,
//   eq_mult^T f + ineq_mult^T h > 0.
struct FarkasCertificate {
    std::vector<Rat> eq_mult;
    std::vector<Rat> ineq_mult;
};

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    std::vector<Rat> x;
    Rat value;
    FarkasCertificate farkas;
};

namespace lp_detail {

class Simplex {
  public:
    Simplex(int nvars, const std::vector<LinearConstraint>& eqs,
            const std::vector<LinearConstraint>& ineqs)
        : nvars_(nvars), neq_(static_cast<int>(eqs.size())),
          nineq_(static_cast<int>(ineqs.size())) {
        m_ = neq_ + nineq_;
        nstruct_ = 2 * nvars_ + nineq_;
        ncols_ = nstruct_ + m_;  // artificials last
        tab_.assign(m_, std::vector<Rat>(ncols_ + 1, Rat(0)));
        basis_.resize(m_);
        row_sign_.resize(m_);

        for (int i = 0; i < m_; ++i) {
            const LinearConstraint& c = i < neq_ ? eqs[i] : ineqs[i - neq_];
            if (static_cast<int>(c.coeffs.size()) != nvars_)
                throw std::invalid_argument("lp: constraint dimension mismatch");
            int s = c.rhs < 0 ? -1 : 1;
            row_sign_[i] = s;
            for (int j = 0; j < nvars_; ++j) {
                tab_[i][j] = Rat(s) * c.coeffs[j];
                tab_[i][nvars_ + j] = Rat(-s) * c.coeffs[j];
            }
            if (i >= neq_) tab_[i][2 * nvars_ + (i - neq_)] = Rat(-s);
            tab_[i][nstruct_ + i] = 1;
            tab_[i][ncols_] = Rat(s) * c.rhs;
            basis_[i] = nstruct_ + i;
        }
    }

    LpResult run(const std::vector<Rat>& objective) {
        LpResult res;
        // Phase 1: maximize -(sum of artificials).
        std::vector<Rat> c1(ncols_, Rat(0));
        for (int i = 0; i < m_; ++i) c1[nstruct_ + i] = Rat(-1);
        optimize(c1, /*allow_artificial=*/true);
        Rat p1 = objective_value(c1);
        if (p1 < 0) {
            res.status = LpResult::Status::Infeasible;
            res.farkas = extract_farkas(c1);
            return res;
        }
        drive_out_artificials();

        std::vector<Rat> c2(ncols_, Rat(0));
        for (int j = 0; j < nvars_ && j < static_cast<int>(objective.size()); ++j) {
            c2[j] = objective[j];
            c2[nvars_ + j] = -objective[j];
        }
        if (!optimize(c2, /*allow_artificial=*/false)) {
            res.status = LpResult::Status::Unbounded;
            res.x = current_x();
            return res;
        }
        res.status = LpResult::Status::Optimal;
        res.x = current_x();
        res.value = Rat(0);
        for (int j = 0; j < nvars_ && j < static_cast<int>(objective.size()); ++j)
            res.value += objective[j] * res.x[j];
        return res;
    }

  private:
    // Reduced costs r_j = c_j - c_B . T_j; Bland: enter least j with r_j > 0.
    bool optimize(const std::vector<Rat>& c, bool allow_artificial) {
        for (;;) {
            std::vector<Rat> cb(m_);
            for (int i = 0; i < m_; ++i) cb[i] = c[basis_[i]];
            int enter = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (!allow_artificial && j >= nstruct_) break;
                if (is_basic(j)) continue;
                Rat r = c[j];
                for (int i = 0; i < m_; ++i)
                    if (cb[i] != 0 && tab_[i][j] != 0) r -= cb[i] * tab_[i][j];
                if (r > 0) { enter = j; break; }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rat best;
            for (int i = 0; i < m_; ++i) {
                if (tab_[i][enter] <= 0) continue;
                Rat ratio = tab_[i][ncols_] / tab_[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
    }

    void pivot(int r, int j) {
        Rat p = tab_[r][j];
        for (int k = 0; k <= ncols_; ++k)
            if (tab_[r][k] != 0) tab_[r][k] /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == r || tab_[i][j] == 0) continue;
            Rat f = tab_[i][j];
            for (int k = 0; k <= ncols_; ++k)
                if (tab_[r][k] != 0) tab_[i][k] -= f * tab_[r][k];
        }
        basis_[r] = j;
    }

    bool is_basic(int j) const {
        for (int i = 0; i < m_; ++i)
            if (basis_[i] == j) return true;
        return false;
    }

    Rat objective_value(const std::vector<Rat>& c) const {
        Rat v(0);
        for (int i = 0; i < m_; ++i)
            if (c[basis_[i]] != 0) v += c[basis_[i]] * tab_[i][ncols_];
        return v;
    }

    // A basic artificial at value zero either leaves through any nonzero
    // structural entry in its row, or the row is redundant and may be wiped.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < nstruct_) continue;
            int enter = -1;
            for (int j = 0; j < nstruct_; ++j)
                if (tab_[i][j] != 0 && !is_basic(j)) { enter = j; break; }
            if (enter >= 0)
                pivot(i, enter);
            else
                for (int k = 0; k < ncols_; ++k)
                    if (k != basis_[i]) tab_[i][k] = 0;
        }
    }

    std::vector<Rat> current_x() const {
        std::vector<Rat> x(nvars_, Rat(0));
        for (int i = 0; i < m_; ++i) {
            int b = basis_[i];
            if (b < nvars_)
                x[b] += tab_[i][ncols_];
            else if (b < 2 * nvars_)
                x[b - nvars_] -= tab_[i][ncols_];
        }
        return x;
    }

    FarkasCertificate extract_farkas(const std::vector<Rat>& c1) const {
        // y_i = c_B . (column of artificial i); y' = -y gives the multipliers
        // after undoing the row sign scaling.
        FarkasCertificate f;
        f.eq_mult.assign(neq_, Rat(0));
        f.ineq_mult.assign(nineq_, Rat(0));
        for (int i = 0; i < m_; ++i) {
            Rat y(0);
            for (int r = 0; r < m_; ++r) {
                const Rat& cb = c1[basis_[r]];
                if (cb != 0 && tab_[r][nstruct_ + i] != 0)
                    y += cb * tab_[r][nstruct_ + i];
            }
            Rat mult = Rat(-row_sign_[i]) * y;
            if (i < neq_)
                f.eq_mult[i] = mult;
            else
                f.ineq_mult[i - neq_] = mult;
        }
        return f;
    }

    int nvars_, neq_, nineq_, m_, nstruct_, ncols_;
    std::vector<std::vector<Rat>> tab_;
    std::vector<int> basis_;
    std::vector<int> row_sign_;
};

}  // namespace lp_detail

inline bool farkas_verifies(const FarkasCertificate& f, int nvars,
                            const std::vector<LinearConstraint>& eqs,
                            const std::vector<LinearConstraint>& ineqs) {
    if (f.eq_mult.size() != eqs.size() || f.ineq_mult.size() != ineqs.size())
        return false;
    for (const Rat& m : f.ineq_mult)
        if (m < 0) return false;
    std::vector<Rat> combo(nvars, Rat(0));
    Rat rhs(0);
    for (size_t i = 0; i < eqs.size(); ++i) {
        for (int j = 0; j < nvars; ++j) combo[j] += f.eq_mult[i] * eqs[i].coeffs[j];
        rhs += f.eq_mult[i] * eqs[i].rhs;
    }
    for (size_t i = 0; i < ineqs.size(); ++i) {
        for (int j = 0; j < nvars; ++j) combo[j] += f.ineq_mult[i] * ineqs[i].coeffs[j];
        rhs += f.ineq_mult[i] * ineqs[i].rhs;
    }
    for (const Rat& c : combo)
        if (c != 0) return false;
    return rhs > 0;
}

inline bool point_satisfies(const std::vector<Rat>& x,
                            const std::vector<LinearConstraint>& eqs,
                            const std::vector<LinearConstraint>& ineqs) {
    auto dot = [&x](const LinearConstraint& c) {
        Rat v(0);
        for (size_t j = 0; j < c.coeffs.size(); ++j) v += c.coeffs[j] * x[j];
        return v;
    };
    for (const auto& e : eqs)
        if (dot(e) != e.rhs) return false;
    for (const auto& g : ineqs)
        if (dot(g) < g.rhs) return false;
    return true;
}

// Maximize objective . x subject to {eqs hold, ineqs as >=}.  An empty
// objective solves the pure feasibility problem.
inline LpResult lp_optimize(int nvars, const std::vector<LinearConstraint>& eqs,
                            const std::vector<LinearConstraint>& ineqs,
                            const std::vector<Rat>& objective = {}) {
    lp_detail::Simplex s(nvars, eqs, ineqs);
    LpResult res = s.run(objective);
    if (res.status == LpResult::Status::Optimal &&
        !point_satisfies(res.x, eqs, ineqs))
        throw std::logic_error("lp: optimal witness failed verification");
    if (res.status == LpResult::Status::Infeasible &&
        !farkas_verifies(res.farkas, nvars, eqs, ineqs))
        throw std::logic_error("lp: farkas certificate failed verification");
    return res;
}

struct FeasibilityResult {
    bool feasible;
    std::vector<Rat> witness;
    FarkasCertificate certificate;
};

inline FeasibilityResult lp_feasible(int nvars,
                                     const std::vector<LinearConstraint>& eqs,
                                     const std::vector<LinearConstraint>& ineqs) {
    LpResult r = lp_optimize(nvars, eqs, ineqs);
    FeasibilityResult f;
    f.feasible = r.status != LpResult::Status::Infeasible;
    if (f.feasible)
        f.witness = r.x;
    else
        f.certificate = r.farkas;
    return f;
}

}  // namespace wtc
