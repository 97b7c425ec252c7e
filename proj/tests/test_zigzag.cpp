#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rce/harness.hpp"
#include "rce/zigzag.hpp"

using namespace rce;

namespace {

ZigzagContext seeded_ctx(unsigned seed) {
    PoissonRceDiagram pd = generate_diagram(seed, GeneratorDims{-1, 2, 2});
    return ZigzagContext::build(pd.d);
}

}  // namespace

TEST_CASE("Z to itself is the identity") {
    ZigzagContext ctx = seeded_ctx(2);
    for (Obj o : kObjects) {
        const ChainMap& z = ctx.z_map({1, o}, {1, o});
        CHECK((z - GradedMap::identity(ctx.diagram().at(o))).is_zero());
    }
}

TEST_CASE("the displayed three-step zig-zag composite") {
    ZigzagContext ctx = seeded_ctx(3);
    const RceDiagram& d = ctx.diagram();
    // Z from (n,M-) to (n,M) is L(i+) L(j+)^{-1} L(j-)
    ChainMap expect = compose(d.map_of(Mor::iplus),
                              compose(ctx.data(Mor::jplus).f_inv, d.map_of(Mor::jminus)));
    CHECK((ctx.z_map({2, Obj::Mminus}, {2, Obj::M}) - expect).is_zero());
    // Z from (n+1,M-) to (n,Mh) is L(j+) L(i+)^{-1} L(i-)
    ChainMap expect2 = compose(d.map_of(Mor::jplus),
                               compose(ctx.data(Mor::iplus).f_inv, d.map_of(Mor::iminus)));
    CHECK((ctx.z_map({1, Obj::Mminus}, {0, Obj::Mh}) - expect2).is_zero());
    // the relative-Cauchy-evolution zig-zag L(i-) L(j-)^{-1} L(j+) L(i+)^{-1}
    ChainMap expect3 =
        compose(d.map_of(Mor::iminus),
                compose(ctx.data(Mor::jminus).f_inv,
                        compose(d.map_of(Mor::jplus), ctx.data(Mor::iplus).f_inv)));
    CHECK((ctx.z_map({1, Obj::M}, {0, Obj::M}) - expect3).is_zero());
}

TEST_CASE("alignment case classification") {
    ZigzagContext ctx = seeded_ctx(4);
    // (n',N') = source of the edge falls under the first case
    SpiralEdge e{0, Mor::jminus};
    CHECK(ctx.classify_edge_node(e, edge_source(e)) == AlignmentCase::A1);
    CHECK(ctx.classify_edge_node(e, edge_target(e)) == AlignmentCase::A2);
    // node far to the right of a right-pointing edge: the edge points along
    CHECK(ctx.classify_edge_node({0, Mor::jminus}, {2, Obj::M}) == AlignmentCase::A2);
    CHECK(ctx.classify_edge_node({0, Mor::jminus}, {-2, Obj::M}) == AlignmentCase::A1);
    CHECK(ctx.classify_node_edge({2, Obj::M}, {0, Mor::jminus}) == AlignmentCase::B1);
    CHECK(ctx.classify_node_edge({-2, Obj::M}, {0, Mor::jminus}) == AlignmentCase::B2);
    // same edge twice
    CHECK(ctx.classify_edge_edge({0, Mor::iplus}, {0, Mor::iplus}) == AlignmentCase::C5);
    // C4: f' points away from the connecting zig-zag, f points into it
    CHECK(ctx.classify_edge_edge({2, Mor::jplus}, {0, Mor::jplus}) == AlignmentCase::C4);
    // C2: both point away; C1: both point in; C3: f' in, f away
    CHECK(ctx.classify_edge_edge({2, Mor::jminus}, {0, Mor::jplus}) == AlignmentCase::C2);
    CHECK(ctx.classify_edge_edge({2, Mor::jplus}, {0, Mor::jminus}) == AlignmentCase::C1);
    CHECK(ctx.classify_edge_edge({2, Mor::jminus}, {0, Mor::jminus}) == AlignmentCase::C3);
}

TEST_CASE("A1 instances give the zero homotopy, identities give zero data") {
    ZigzagContext ctx = seeded_ctx(5);
    SpiralEdge e{0, Mor::jminus};
    CHECK(ctx.lambda_left(e.level, e.mor, edge_source(e)).is_zero());
    CHECK(ctx.lambda_left(0, Mor::id_Mh, {1, Obj::M}).is_zero());
    CHECK(ctx.gamma_right({2, Obj::M}, 0, Mor::id_Mminus).is_zero());
    CHECK(ctx.xi_two(0, Mor::iplus, 0, Mor::id_M).is_zero());
    // C5 returns the chosen 2-homotopy itself
    CHECK((ctx.xi_two(1, Mor::iplus, 1, Mor::iplus) - ctx.data(Mor::iplus).xi).is_zero());
}

TEST_CASE("full coherence identity sweep") {
    Scenario sc;
    sc.num_seeds = 2;
    CheckResult r = chk_zigzag(sc);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("transport homotopy for the rce square") {
    Scenario sc;
    sc.num_seeds = 2;
    CheckResult r = chk_theta(sc);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("theta telescopes on the identity diagram") {
    auto x = ChainComplex::make({{0, {"u"}}, {1, {"w"}}},
                                {{1, QMat::from_triplets(1, 1, {{0, 0, Rational(5)}})}});
    std::array<ComplexPtr, 4> objs{x, x, x, x};
    std::array<ChainMap, 4> arrows;
    for (int i = 0; i < 4; ++i) arrows[i] = GradedMap::identity(x);
    RceDiagram d(objs, arrows);
    ZigzagContext ctx = ZigzagContext::build(d);
    for (int deg : x->degrees())
        for (int i = 0; i < x->dim(deg); ++i) {
            DerivedElement lhs = add(rce_lin(iota_basis(deg, i), 1),
                                     scale(iota_basis(deg, i), Rational(-1)));
            DerivedElement rhs = tilde_differential(d, ctx.theta_homotopy(deg, i));
            for (const auto& t : x->diff(deg).triplets())
                if (t.c == i) rhs = add(rhs, scale(ctx.theta_homotopy(deg - 1, t.r), t.v));
            CHECK(add(lhs, scale(rhs, Rational(-1))).empty());
        }
}
