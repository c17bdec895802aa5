#include <catch2/catch_amalgamated.hpp>

#include "wtc/retract.hpp"

using namespace wtc;

TEST_CASE("realizable: the distinguished top cell") {
    auto cell = realizable(MinVectorSet::standard_basis(4), TemperedWeight::trivial(4));
    REQUIRE(cell.has_value());
    REQUIRE(cell->dim == 6);
    // dimension formula: rank{x x^t} over the standard basis is 4, 10 - 4 = 6
    REQUIRE(MinVectorSet::standard_basis(4).gram_rank() == 4);
    auto mr = weighted_minimum(QuadraticForm(4, cell->witness), TemperedWeight::trivial(4));
    REQUIRE(mr.minimum == 1);
    REQUIRE(MinVectorSet(4, mr.vectors) == MinVectorSet::standard_basis(4));
}

TEST_CASE("realizable: hexagonal vertex in rank 2") {
    MinVectorSet hex(2, {SignVector{1, 0}, SignVector{0, 1}, SignVector{1, -1}});
    auto cell = realizable(hex, TemperedWeight::trivial(2));
    REQUIRE(cell.has_value());
    REQUIRE(cell->dim == 0);
    REQUIRE(cell->witness == RatMat{{Rat(1), make_rat(1, 2)}, {make_rat(1, 2), Rat(1)}});
}

TEST_CASE("realizable: separation oracle rejects a non-unimodular pair") {
    // {(1,0),(1,2)} spans a sublattice of index 2; (1,1) is always shorter.
    MinVectorSet m(2, {SignVector{1, 0}, SignVector{1, 2}});
    auto q = analyze_cell(m, TemperedWeight::trivial(2));
    REQUIRE(q.status == CellStatus::Empty);
    REQUIRE_FALSE(realizable(m, TemperedWeight::trivial(2)).has_value());
}

TEST_CASE("realizable: inconsistent equalities are empty") {
    // x and 2x cannot both attain weighted value 1.
    MinVectorSet m(2, {SignVector{1, 0}, SignVector{2, 0}, SignVector{0, 1}});
    auto q = analyze_cell(m, TemperedWeight::trivial(2));
    REQUIRE(q.status == CellStatus::Empty);
}

TEST_CASE("realizable: non-spanning input is rejected") {
    MinVectorSet m(2, {SignVector{1, 0}});
    REQUIRE_THROWS_AS(realizable(m, TemperedWeight::trivial(2)), NotSpanningError);
}

TEST_CASE("degenerate boundary cell classifies as the larger index") {
    // At tau^2 = 2 for the diag(1,2) datum, the hexagonal vertex acquires a
    // fourth minimal class (1,2); the index {e1,e2,(1,1)} is then degenerate.
    HeckeDatum d = HeckeDatum::gl(2, Int(2), 1);
    TemperedWeight w = TemperedWeight::tempered(d, Rat(2));
    MinVectorSet hex(2, {SignVector{1, 0}, SignVector{0, 1}, SignVector{1, 1}});
    auto q = analyze_cell(hex, w);
    REQUIRE(q.status == CellStatus::Degenerate);
    REQUIRE(q.closure.has_value());
    MinVectorSet expect(2, {SignVector{1, 0}, SignVector{0, 1}, SignVector{1, 1}, SignVector{1, 2}});
    REQUIRE(q.closure->index == expect);
    // Just below the transition the same index is an honest vertex.
    auto q2 = analyze_cell(hex, w.at(make_rat(15, 8)));
    REQUIRE(q2.status == CellStatus::Interior);
}

TEST_CASE("act on index sets") {
    MinVectorSet m(2, {SignVector{1, 0}, SignVector{0, 1}});
    REQUIRE(act(IntMat::identity(2), m) == m);
    IntMat neg = IntMat::identity(2);
    neg(0, 0) = -1;
    neg(1, 1) = -1;
    REQUIRE(act(neg, m) == m);
    IntMat a{{Int(1), Int(0)}, {Int(0), Int(2)}};
    MinVectorSet expect(2, {SignVector{1, 0}, SignVector{0, 2}});
    REQUIRE(act(a, m) == expect);
    IntMat sing(2, 2);
    REQUIRE_THROWS_AS(act(sing, m), std::invalid_argument);
}

TEST_CASE("gamma equivalence") {
    auto msigma = MinVectorSet::standard_basis(4);
    SECTION("identity is found for equal sets") {
        auto g = gamma_equivalent(msigma, msigma, GroupSpec::gl(4));
        REQUIRE(g.has_value());
        REQUIRE(*g == IntMat::identity(4));
    }
    SECTION("the symplectic rotation stabilizes the top index set") {
        IntMat omega = GroupSpec::omega4();
        REQUIRE(omega * omega == IntMat::identity(4) * Int(-1));
        REQUIRE(GroupSpec::sp4().member(omega));
        REQUIRE(act(omega, msigma) == msigma);
        auto g = gamma_equivalent(msigma, act(omega, msigma), GroupSpec::sp4());
        REQUIRE(g.has_value());
    }
    SECTION("rank-2 unipotent pattern") {
        MinVectorSet m1(2, {SignVector{1, 0}, SignVector{0, 1}});
        MinVectorSet m2(2, {SignVector{1, 0}, SignVector{1, 1}});
        auto g = gamma_equivalent(m1, m2, GroupSpec::gl(2));
        REQUIRE(g.has_value());
        REQUIRE(act(*g, m1) == m2);
        REQUIRE(GroupSpec::gl(2).member(*g));
    }
    SECTION("equivalence respects realizability (equivariance)") {
        IntMat g{{Int(1), Int(0)}, {Int(3), Int(1)}};
        MinVectorSet m(2, {SignVector{1, 0}, SignVector{0, 1}});
        MinVectorSet mg = act(g, m);
        REQUIRE(realizable(m, TemperedWeight::trivial(2)).has_value());
        REQUIRE(realizable(mg, TemperedWeight::trivial(2)).has_value());
        MinVectorSet bad(2, {SignVector{1, 0}, SignVector{1, 2}});
        REQUIRE_FALSE(realizable(act(g, bad), TemperedWeight::trivial(2)).has_value());
    }
}

TEST_CASE("faces of sigma") {
    const FacePoset& fp = faces_of_sigma();
    SECTION("top face") {
        int t = fp.top();
        REQUIRE(fp.faces[t].index == MinVectorSet::standard_basis(4));
        REQUIRE(fp.faces[t].dim == 6);
    }
    SECTION("index cardinalities lie in [4,12]") {
        for (const auto& f : fp.faces) {
            REQUIRE(f.index.size() >= 4);
            REQUIRE(f.index.size() <= 12);
        }
    }
    SECTION("vertices have full gram rank") {
        for (const auto& f : fp.faces)
            if (f.dim == 0) REQUIRE(f.index.gram_rank() == 10);
    }
    SECTION("dimension formula matches the affine hull of the vertex set") {
        // dim = 10 - rank{x x^t} must equal the affine dimension of the
        // face's vertex hull, computed independently from the vertex forms.
        for (size_t i = 0; i < fp.faces.size(); i += 97) {
            const auto& f = fp.faces[i];
            REQUIRE(f.dim == 10 - f.index.gram_rank());
            if (f.vertex_ids.size() == 1) {
                REQUIRE(f.dim == 0);
                continue;
            }
            RatMat diff(static_cast<int>(f.vertex_ids.size()) - 1, sym_dim(4));
            auto c0 = coords_from_sym(fp.vertex_forms[f.vertex_ids[0]]);
            for (size_t r = 1; r < f.vertex_ids.size(); ++r) {
                auto cr = coords_from_sym(fp.vertex_forms[f.vertex_ids[r]]);
                for (int k = 0; k < sym_dim(4); ++k)
                    diff(static_cast<int>(r) - 1, k) = cr[k] - c0[k];
            }
            REQUIRE(rank(diff) == f.dim);
        }
    }
    SECTION("face duality holds in both directions") {
        // verified exhaustively at construction; spot check the recorded pairs
        for (size_t k = 0; k < fp.relation.size(); k += 503) {
            auto [i, j] = fp.relation[k];
            REQUIRE(fp.faces[j].index.subset_of(fp.faces[i].index));
        }
    }
    SECTION("euler characteristic of the closed cell is 1") {
        long chi = 0;
        for (const auto& f : fp.faces) chi += (f.dim % 2 == 0) ? 1 : -1;
        REQUIRE(chi == 1);
    }
    SECTION("text export round trips") {
        std::string text = fp.to_text();
        FacePoset fp2 = FacePoset::from_text(text);
        REQUIRE(fp2.faces.size() == fp.faces.size());
        REQUIRE(fp2.relation.size() == fp.relation.size());
        int t = fp2.top();
        REQUIRE(fp2.faces[t].index == MinVectorSet::standard_basis(4));
        REQUIRE(fp2.faces[5].index == fp.faces[5].index);
        REQUIRE(fp2.faces[5].witness == fp.faces[5].witness);
    }
}

TEST_CASE("closed cells") {
    SECTION("a facet of sigma") {
        MinVectorSet m = MinVectorSet::standard_basis(4).with(SignVector{1, 1, 0, 0});
        auto cc = closed_cell(m, TemperedWeight::trivial(4));
        REQUIRE(cc.has_value());
        REQUIRE(cc->index == m);
        REQUIRE(cc->dim == 5);
    }
    SECTION("infeasible unions are empty") {
        MinVectorSet m =
            MinVectorSet::standard_basis(2).with(SignVector{1, 1}).with(SignVector{1, -1});
        REQUIRE_FALSE(closed_cell(m, TemperedWeight::trivial(2)).has_value());
    }
}
