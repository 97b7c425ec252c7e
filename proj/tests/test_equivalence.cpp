#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rce/equivalence.hpp"
#include "rce/harness.hpp"

using namespace rce;

TEST_CASE("identity input yields identity inverse and zero homotopies") {
    auto v = ChainComplex::make({{0, {"a", "b"}}, {1, {"c"}}},
                                {{1, QMat::from_triplets(2, 1, {{0, 0, Rational(3)}})}});
    EquivalenceData e = build_equivalence(GradedMap::identity(v));
    CHECK((e.f_inv - GradedMap::identity(v)).is_zero());
    CHECK(e.lambda.is_zero());
    CHECK(e.gamma.is_zero());
    CHECK(e.xi.is_zero());
    CHECK(verify_equivalence(e));
}

TEST_CASE("contractible target: inverse of 0 -> cone(id)") {
    auto z = ChainComplex::zero();
    auto cone = mapping_cone_complex(GradedMap::identity(ChainComplex::ground_field(0)));
    ChainMap f = GradedMap::zero(z, cone, 0);
    EquivalenceData e = build_equivalence(f);
    CHECK(verify_equivalence(e));
    CHECK(e.f_inv.is_zero());
    // -id = d(lambda) on the acyclic cone: lambda is forced nonzero
    CHECK(!e.lambda.is_zero());
}

TEST_CASE("non-quasi-isomorphisms are rejected") {
    auto k = ChainComplex::ground_field(0);
    ChainMap z = GradedMap::zero(k, k, 0);
    CHECK_THROWS_AS(build_equivalence(z), NotQuasiIso);
}

TEST_CASE("seeded quasi-isomorphisms carry exact coherence data") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        ChainMap f = generate_quasi_iso(seed, GeneratorDims{-2, 3, 2});
        EquivalenceData e = build_equivalence(f);
        // the three identities, re-evaluated by direct matrix arithmetic
        GradedMap a = compose(e.f, e.f_inv) - GradedMap::identity(e.f.tgt);
        CHECK((a - hom_boundary(e.lambda)).is_zero());
        GradedMap b = compose(e.f_inv, e.f) - GradedMap::identity(e.f.src);
        CHECK((b - hom_boundary(e.gamma)).is_zero());
        GradedMap c = compose(e.f, e.gamma) - compose(e.lambda, e.f);
        CHECK((c - hom_boundary(e.xi)).is_zero());
        CHECK(verify_equivalence(e));
        CHECK(is_quasi_iso(e.f_inv));
    }
}

TEST_CASE("verification rejects perturbed data") {
    ChainMap f = generate_quasi_iso(11, GeneratorDims{-1, 2, 2});
    EquivalenceData e = build_equivalence(f);
    REQUIRE(verify_equivalence(e));
    // corrupt lambda in some populated degree
    for (int m : e.f.tgt->degrees()) {
        if (e.f.tgt->dim(m + 1) == 0) continue;
        QMat q = e.lambda.component(m);
        std::vector<Triplet<Rational>> t(q.triplets().begin(), q.triplets().end());
        t.push_back({0, 0, Rational(1, 7)});
        e.lambda.set_component(m, QMat::from_triplets(q.rows(), q.cols(), std::move(t)));
        break;
    }
    CHECK(!verify_equivalence(e));
}

TEST_CASE("harness suite") {
    Scenario sc;
    sc.num_seeds = 3;
    CheckResult r = chk_equivalence(sc);
    CHECK_MESSAGE(r.pass, r.detail);
}
