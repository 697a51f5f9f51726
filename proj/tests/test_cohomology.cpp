#include <catch2/catch_amalgamated.hpp>

#include "lya/cohomology.hpp"
#include "lya/selftest.hpp"
#include "support.hpp"

using namespace lya;

namespace {

struct LevelDims {
    std::size_t z, b, h;
};

LevelDims dims_of(const CohomologyReport& r) { return {r.dimZ, r.dimB, r.dimH}; }

bool operator==(const LevelDims& a, const LevelDims& b) {
    return a.z == b.z && a.b == b.b && a.h == b.h;
}

std::ostream& operator<<(std::ostream& os, const LevelDims& d) {
    return os << "(Z " << d.z << ", B " << d.b << ", H " << d.h << ")";
}

}  // namespace

TEST_CASE("derivation space dimensions on the corpus") {
    auto h1_dim = [](const LYAStructure& s) {
        return h1(s, regular_representation(s)).dimH;
    };
    CHECK(h1_dim(example_abelian(2)) == 4);
    CHECK(h1_dim(example_abelian(3)) == 9);
    CHECK(h1_dim(example_solvable_b()) == 2);
    CHECK(h1_dim(example_triple2()) == 2);
    CHECK(h1_dim(example_mixed2()) == 2);
    CHECK(h1_dim(example_so3()) == 3);
    CHECK(h1_dim(example_sl2(false)) == 3);
    CHECK(h1_dim(example_sl2(true)) == 3);
}

TEST_CASE("the solvable example has the expected derivation basis") {
    LYAStructure s = example_solvable_b();
    CohomologyReport rep = h1(s, regular_representation(s));
    REQUIRE(rep.derivations.size() == 2);
    // every derivation maps into the span of e0: e0 -> e0 and e1 -> e0
    OneCochain d0(2, 2), d1(2, 2);
    d0.m.at(0, 0) = 1;
    d1.m.at(0, 1) = 1;
    CHECK(rep.derivations[0] == d0);
    CHECK(rep.derivations[1] == d1);
    CHECK(rep.dimZ == 2);
    CHECK(rep.dimB == 0);
    CHECK(rep.p == 0);
}

TEST_CASE("left multiplications are derivations of the sl2 examples") {
    for (bool induced : {false, true}) {
        LYAStructure s = example_sl2(induced);
        Representation r = regular_representation(s);
        RationalMatrix a = delta1_matrix(s, r);
        for (std::size_t i = 0; i < 3; ++i) {
            OneCochain ad;
            ad.m = r.rh(i);
            CHECK(is_zero(a * one_cochain_coordinates(ad)));
        }
    }
}

TEST_CASE("derivations satisfy both defining identities pointwise") {
    for (const auto& named : corpus_n23()) {
        INFO(named.name);
        const LYAStructure& s = named.s;
        Representation r = regular_representation(s);
        const std::size_t n = s.dim;
        auto e = [&](std::size_t i) { return unit_vector(n, i); };
        for (const OneCochain& f : h1(s, r).derivations)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    CHECK(f.apply(binary_product(s, e(a), e(b))) ==
                          r.rh(a) * f.apply_basis(b) - r.rh(b) * f.apply_basis(a));
                    for (std::size_t c = 0; c < n; ++c) {
                        Vector rhs = r.th(b, c) * f.apply_basis(a) -
                                     r.th(a, c) * f.apply_basis(b);
                        add_to(rhs, r.D(a, b) * f.apply_basis(c));
                        CHECK(f.apply(ternary_product(s, e(a), e(b), e(c))) == rhs);
                    }
                }
    }
}

TEST_CASE("level-(2,3) dimensions on the corpus") {
    auto dims = [](const LYAStructure& s) {
        return dims_of(h23(s, regular_representation(s)));
    };
    CHECK(dims(example_abelian(2)) == LevelDims{6, 0, 6});
    CHECK(dims(example_abelian(3)) == LevelDims{33, 0, 33});
    CHECK(dims(example_solvable_b()) == LevelDims{4, 2, 2});
    CHECK(dims(example_so3()) == LevelDims{15, 6, 9});
    CHECK(dims(example_sl2(true)) == LevelDims{7, 6, 1});
}

TEST_CASE("level-(2,3) projection dimensions") {
    auto proj = [](const LYAStructure& s) {
        CohomologyReport r = h23(s, regular_representation(s));
        return std::pair<std::size_t, std::size_t>(r.dimZ_even, r.dimZ_odd);
    };
    CHECK(proj(example_abelian(2)) == std::pair<std::size_t, std::size_t>(2, 4));
    CHECK(proj(example_abelian(3)) == std::pair<std::size_t, std::size_t>(9, 24));
    CHECK(proj(example_solvable_b()) == std::pair<std::size_t, std::size_t>(2, 2));
    CHECK(proj(example_so3()) == std::pair<std::size_t, std::size_t>(9, 9));
    CHECK(proj(example_sl2(true)) == std::pair<std::size_t, std::size_t>(6, 6));
}

TEST_CASE("level-(4,5) dimensions on the corpus") {
    auto dims = [](const LYAStructure& s) {
        return dims_of(h2p(s, regular_representation(s), 2));
    };
    CHECK(dims(example_abelian(2)) == LevelDims{6, 0, 6});
    CHECK(dims(example_abelian(3)) == LevelDims{108, 0, 108});
    CHECK(dims(example_solvable_b()) == LevelDims{4, 2, 2});
    CHECK(dims(example_so3()) == LevelDims{54, 18, 36});
    CHECK(dims(example_sl2(true)) == LevelDims{29, 29, 0});
}

TEST_CASE("h2p rejects low levels and bad representations") {
    LYAStructure s = example_solvable_b();
    Representation r = regular_representation(s);
    CHECK_THROWS_AS(h2p(s, r, 1), LevelError);
    r.rho[1] = RationalMatrix(2, 2);
    CHECK_THROWS_AS(h1(s, r), InvalidRepresentation);
    CHECK_THROWS_AS(h23(s, r), InvalidRepresentation);
    CHECK_THROWS_AS(h2p(s, r, 2), InvalidRepresentation);
}

TEST_CASE("representatives are non-bounding cocycles") {
    for (const LYAStructure& s : {example_solvable_b(), example_so3()}) {
        Representation r = regular_representation(s);
        CohomologyReport rep = h23(s, r);
        REQUIRE(rep.representatives.size() == rep.dimH);
        for (const CochainPair& z : rep.representatives) {
            PairClassification cls = classify_pair(s, r, z);
            CHECK(cls.is_cocycle);
            CHECK_FALSE(cls.is_coboundary);
        }
    }
}

TEST_CASE("coboundary columns lie inside every cocycle kernel") {
    for (const auto& named : corpus_n23()) {
        INFO(named.name);
        const LYAStructure& s = named.s;
        Representation r = regular_representation(s);
        RationalMatrix zmat = detail::vstack(delta_matrix(s, r, 1), delta_star_matrix(s, r));
        RationalMatrix bgen = delta1_matrix(s, r);
        for (std::size_t c = 0; c < bgen.cols; ++c) {
            Vector col(bgen.rows);
            for (std::size_t rr = 0; rr < bgen.rows; ++rr) col[rr] = bgen.at(rr, c);
            CHECK(is_zero(zmat * col));
        }
    }
}

TEST_CASE("classify_pair separates cocycles, coboundaries and the rest") {
    SeededRng rng(83);
    LYAStructure s = example_solvable_b();
    Representation r = regular_representation(s);

    CochainPair zero = zero_pair(1, 2, 2);
    PairClassification cz = classify_pair(s, r, zero);
    CHECK(cz.is_cocycle);
    CHECK(cz.is_coboundary);
    REQUIRE(cz.preimage.has_value());
    CHECK(cz.preimage->m.is_zero());

    OneCochain f = rng.one_cochain(2, 2);
    CochainPair cb = delta1(s, r, f);
    PairClassification cc = classify_pair(s, r, cb);
    CHECK(cc.is_cocycle);
    CHECK(cc.is_coboundary);
    REQUIRE(cc.preimage.has_value());
    CHECK(delta1(s, r, *cc.preimage) == cb);

    // abelian n=2: everything is a cocycle, nothing nonzero bounds
    LYAStructure a2 = example_abelian(2);
    Representation ra = regular_representation(a2);
    CochainPair p = rng.pair(1, 2, 2);
    while (p.is_zero()) p = rng.pair(1, 2, 2);
    PairClassification ca = classify_pair(a2, ra, p);
    CHECK(ca.is_cocycle);
    CHECK_FALSE(ca.is_coboundary);
    CHECK_FALSE(ca.preimage.has_value());

    CHECK_THROWS_AS(classify_pair(s, r, zero_pair(2, 2, 2)), DimensionMismatch);
}

TEST_CASE("class coordinates vanish exactly on coboundaries") {
    SeededRng rng(89);
    LYAStructure s = example_solvable_b();
    Representation r = regular_representation(s);
    CohomologyReport rep = h23(s, r);

    OneCochain f = rng.one_cochain(2, 2);
    Vector on_boundary = h_class_coordinates(s, r, delta1(s, r, f));
    CHECK(is_zero(on_boundary));

    for (std::size_t k = 0; k < rep.representatives.size(); ++k) {
        Vector coords = h_class_coordinates(s, r, rep.representatives[k]);
        REQUIRE(coords.size() == rep.dimH);
        for (std::size_t i = 0; i < coords.size(); ++i)
            CHECK(coords[i] == (i == k ? Scalar(1) : Scalar(0)));
    }
}

TEST_CASE("cohomology dimensions are invariant under change of basis") {
    SeededRng rng(97);
    std::vector<NamedStructure> cases = selftest_corpus(2);
    cases.push_back({"so3", example_so3()});
    for (const auto& named : cases) {
        INFO(named.name);
        LYAStructure moved = change_basis(named.s, rng.invertible(named.s.dim));
        Representation r0 = regular_representation(named.s);
        Representation r1 = regular_representation(moved);
        CHECK(h1(named.s, r0).dimH == h1(moved, r1).dimH);
        CohomologyReport a = h23(named.s, r0), b = h23(moved, r1);
        CHECK(a.dimZ == b.dimZ);
        CHECK(a.dimB == b.dimB);
        CHECK(a.dimH == b.dimH);
    }
}
