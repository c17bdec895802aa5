#include <catch2/catch_amalgamated.hpp>

#include "wtc/lp.hpp"
#include "wtc/matrix.hpp"
#include "wtc/snf.hpp"

#include <random>

using namespace wtc;

namespace {

IntMat random_matrix(std::mt19937_64& rng, int maxdim, int maxabs) {
    std::uniform_int_distribution<int> dim(1, maxdim), entry(-maxabs, maxabs);
    IntMat a(dim(rng), dim(rng));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    return a;
}

void check_snf_contract(const IntMat& a) {
    SNFResult s = smith_normal_form(a);
    REQUIRE(s.u * a * s.v == s.d);
    REQUIRE(abs(det(s.u)) == 1);
    REQUIRE(abs(det(s.v)) == 1);
    int n = std::min(s.d.rows(), s.d.cols());
    for (int i = 0; i < s.d.rows(); ++i)
        for (int j = 0; j < s.d.cols(); ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
    for (int i = 0; i + 1 < n; ++i) {
        REQUIRE(s.d(i, i) >= 0);
        if (s.d(i + 1, i + 1) != 0) {
            REQUIRE(s.d(i, i) != 0);
            REQUIRE(s.d(i + 1, i + 1) % s.d(i, i) == 0);
        }
    }
    REQUIRE(s.diag_rank() == rank(a));
}

}  // namespace

TEST_CASE("smith normal form on pinned instances") {
    SECTION("identity") {
        SNFResult s = smith_normal_form(IntMat::identity(3));
        REQUIRE(s.d == IntMat::identity(3));
    }
    SECTION("zero matrix") {
        IntMat z(2, 3);
        SNFResult s = smith_normal_form(z);
        REQUIRE(s.d == z);
        REQUIRE(s.u * z * s.v == s.d);
    }
    SECTION("elementary reduction oracle: d1 = gcd, d1*d2 = |det|") {
        // [[2,4],[6,8]]: gcd of entries 2, |det| = 8, so D = diag(2,4).
        IntMat a{{Int(2), Int(4)}, {Int(6), Int(8)}};
        SNFResult s = smith_normal_form(a);
        REQUIRE(s.d(0, 0) == 2);
        REQUIRE(s.d(1, 1) == 4);
        check_snf_contract(a);
    }
}

TEST_CASE("smith normal form randomized contract") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 80; ++trial) check_snf_contract(random_matrix(rng, 8, 20));
}

TEST_CASE("integer kernel") {
    SECTION("identity has trivial kernel") {
        REQUIRE(integer_kernel(IntMat::identity(4)).empty());
    }
    SECTION("row vector") {
        IntMat a(1, 2);
        a(0, 0) = 1;
        a(0, 1) = 1;
        auto k = integer_kernel(a);
        REQUIRE(k.size() == 1);
        REQUIRE(k[0] == std::vector<Int>{Int(1), Int(-1)});
    }
    SECTION("rank-one 2x2 via SNF oracle") {
        IntMat a{{Int(2), Int(4)}, {Int(1), Int(2)}};
        auto k = integer_kernel(a);
        REQUIRE(k.size() == 1);
        REQUIRE(k[0] == std::vector<Int>{Int(2), Int(-1)});
    }
    SECTION("kernel vectors annihilate and generate over Z") {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 40; ++trial) {
            IntMat a = random_matrix(rng, 6, 10);
            auto k = integer_kernel(a);
            for (const auto& v : k)
                for (int i = 0; i < a.rows(); ++i) {
                    Int s(0);
                    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
                    REQUIRE(s == 0);
                }
            REQUIRE(static_cast<int>(k.size()) == a.cols() - rank(a));
            if (!k.empty()) {
                // Saturation: the SNF of the basis matrix has unit invariants,
                // so the vectors generate the full integer kernel.
                IntMat b(static_cast<int>(k.size()), a.cols());
                for (size_t i = 0; i < k.size(); ++i)
                    for (int j = 0; j < a.cols(); ++j) b(static_cast<int>(i), j) = k[i][j];
                SNFResult s = smith_normal_form(b);
                for (int i = 0; i < s.diag_rank(); ++i) REQUIRE(s.d(i, i) == 1);
            }
        }
    }
}

TEST_CASE("exact LP feasibility with certificates") {
    SECTION("x >= 0 and x <= -1 is infeasible with verifying Farkas certificate") {
        std::vector<LinearConstraint> ineqs{{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(1)}};
        auto r = lp_feasible(1, {}, ineqs);
        REQUIRE_FALSE(r.feasible);
        REQUIRE(farkas_verifies(r.certificate, 1, {}, ineqs));
    }
    SECTION("x = 1 is feasible with witness x = 1") {
        auto r = lp_feasible(1, {{{Rat(1)}, Rat(1)}}, {});
        REQUIRE(r.feasible);
        REQUIRE(r.witness == std::vector<Rat>{Rat(1)});
    }
    SECTION("symmetric 2x2 coordinates: the hexagonal form is the blocked corner") {
        // Vars (a00, a01, a11); A[e1] = A[e2] = 1, a01 >= 0, 2*a01 <= 1.
        std::vector<LinearConstraint> eqs{{{Rat(1), Rat(0), Rat(0)}, Rat(1)},
                                          {{Rat(0), Rat(0), Rat(1)}, Rat(1)}};
        std::vector<LinearConstraint> ineqs{{{Rat(0), Rat(1), Rat(0)}, Rat(0)},
                                            {{Rat(0), Rat(-2), Rat(0)}, Rat(-1)}};
        auto r = lp_feasible(3, eqs, ineqs);
        REQUIRE(r.feasible);
        REQUIRE(point_satisfies(r.witness, eqs, ineqs));
        auto opt = lp_optimize(3, eqs, ineqs, {Rat(0), Rat(1), Rat(0)});
        REQUIRE(opt.status == LpResult::Status::Optimal);
        REQUIRE(opt.x == std::vector<Rat>{Rat(1), make_rat(1, 2), Rat(1)});
    }
    SECTION("unbounded direction is reported") {
        auto r = lp_optimize(1, {}, {{{Rat(1)}, Rat(0)}}, {Rat(1)});
        REQUIRE(r.status == LpResult::Status::Unbounded);
    }
    SECTION("randomized: exactly one of witness/certificate, and it verifies") {
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> entry(-5, 5), nc(1, 6), nv(1, 4);
        for (int trial = 0; trial < 120; ++trial) {
            int vars = nv(rng);
            std::vector<LinearConstraint> eqs, ineqs;
            int m = nc(rng);
            for (int i = 0; i < m; ++i) {
                LinearConstraint c;
                for (int j = 0; j < vars; ++j) c.coeffs.push_back(Rat(entry(rng)));
                c.rhs = Rat(entry(rng));
                if (entry(rng) > 2)
                    eqs.push_back(c);
                else
                    ineqs.push_back(c);
            }
            auto r = lp_feasible(vars, eqs, ineqs);
            if (r.feasible)
                REQUIRE(point_satisfies(r.witness, eqs, ineqs));
            else
                REQUIRE(farkas_verifies(r.certificate, vars, eqs, ineqs));
        }
    }
}

TEST_CASE("rational matrix utilities") {
    RatMat a{{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
    REQUIRE(det(a) == 3);
    REQUIRE(rank(a) == 2);
    RatMat inv = inverse(a);
    REQUIRE(a * inv == RatMat::identity(2));
    auto x = solve(a, {Rat(1), Rat(0)});
    REQUIRE(x == std::vector<Rat>{make_rat(2, 3), make_rat(-1, 3)});
    auto ns = nullspace(RatMat{{Rat(1), Rat(2), Rat(3)}});
    REQUIRE(ns.size() == 2);
}
