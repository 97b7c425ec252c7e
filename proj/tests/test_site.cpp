#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rce/harness.hpp"
#include "rce/site.hpp"

using namespace rce;

TEST_CASE("localization values") {
    CHECK(localize(Mor::iminus) == 1);
    CHECK(localize(Mor::jplus) == 0);
    CHECK(localize(Mor::jminus) == 0);
    CHECK(localize(Mor::iplus) == 0);
    CHECK(localize(Mor::id_M) == 0);
    // functoriality: the only composites are with identities
    for (Mor f : kArrows) {
        CHECK(localize(identity_of(target(f))) + localize(f) == localize(f));
        CHECK(localize(f) + localize(identity_of(source(f))) == localize(f));
    }
}

TEST_CASE("edge endpoints") {
    SpiralEdge im{0, Mor::iminus};
    CHECK(edge_source(im) == SpiralNode{1, Obj::Mminus});
    CHECK(edge_target(im) == SpiralNode{0, Obj::M});
    SpiralEdge jp{2, Mor::jplus};
    CHECK(edge_source(jp) == SpiralNode{2, Obj::Mplus});
    CHECK(edge_target(jp) == SpiralNode{2, Obj::Mh});
}

TEST_CASE("linear coordinate walks the spiral") {
    for (int c = -9; c <= 9; ++c) {
        SpiralEdge e = edge_between(c);
        int cs = spiral_coord(edge_source(e));
        int ct = spiral_coord(edge_target(e));
        CHECK(std::min(cs, ct) == c);
        CHECK(std::max(cs, ct) == c + 1);
        CHECK(node_at_coord(spiral_coord(node_at_coord(c))) == node_at_coord(c));
    }
}

TEST_CASE("trivial path") { CHECK(spiral_path({0, Obj::M}, {0, Obj::M}).empty()); }

TEST_CASE("the three-edge zig-zag from M- to M") {
    // realizes L(i+) L(j+)^{-1} L(j-)
    auto p = spiral_path({4, Obj::Mminus}, {4, Obj::M});
    REQUIRE(p.size() == 3);
    CHECK(p[0].edge.mor == Mor::jminus);
    CHECK(p[0].along);
    CHECK(p[1].edge.mor == Mor::jplus);
    CHECK(!p[1].along);
    CHECK(p[2].edge.mor == Mor::iplus);
    CHECK(p[2].along);
    for (const auto& st : p) CHECK(st.edge.level == 4);
}

TEST_CASE("the zig-zag from level n+1 M- down to level n Mh") {
    // realizes L(j+) L(i+)^{-1} L(i-)
    auto p = spiral_path({3, Obj::Mminus}, {2, Obj::Mh});
    REQUIRE(p.size() == 3);
    CHECK(p[0].edge.mor == Mor::iminus);
    CHECK(p[0].along);
    CHECK(p[0].edge.level == 2);
    CHECK(p[1].edge.mor == Mor::iplus);
    CHECK(!p[1].along);
    CHECK(p[2].edge.mor == Mor::jplus);
    CHECK(p[2].along);
}

TEST_CASE("the level-1 zig-zag realizing the relative Cauchy evolution") {
    // L(i-) L(j-)^{-1} L(j+) L(i+)^{-1}
    auto p = spiral_path({1, Obj::M}, {0, Obj::M});
    REQUIRE(p.size() == 4);
    CHECK(p[0].edge.mor == Mor::iplus);
    CHECK(!p[0].along);
    CHECK(p[1].edge.mor == Mor::jplus);
    CHECK(p[1].along);
    CHECK(p[2].edge.mor == Mor::jminus);
    CHECK(!p[2].along);
    CHECK(p[3].edge.mor == Mor::iminus);
    CHECK(p[3].along);
    CHECK(p[3].edge.level == 0);
}

TEST_CASE("path reversal flips directions") {
    for (int a = -5; a <= 5; ++a)
        for (int b = -5; b <= 5; ++b) {
            auto fwd = spiral_path(node_at_coord(a), node_at_coord(b));
            auto bwd = spiral_path(node_at_coord(b), node_at_coord(a));
            REQUIRE(fwd.size() == bwd.size());
            for (size_t i = 0; i < fwd.size(); ++i) {
                CHECK(fwd[i].edge == bwd[bwd.size() - 1 - i].edge);
                CHECK(fwd[i].along != bwd[bwd.size() - 1 - i].along);
            }
        }
}

TEST_CASE("level-shift equivariance of paths") {
    for (int a = -4; a <= 4; ++a)
        for (int b = -4; b <= 4; ++b)
            for (int k : {-2, 1, 3}) {
                auto p = spiral_path(node_at_coord(a), node_at_coord(b));
                auto q = spiral_path(node_at_coord(a + 4 * k), node_at_coord(b + 4 * k));
                REQUIRE(p.size() == q.size());
                for (size_t i = 0; i < p.size(); ++i) {
                    CHECK(p[i].edge.mor == q[i].edge.mor);
                    CHECK(p[i].edge.level + k == q[i].edge.level);
                    CHECK(p[i].along == q[i].along);
                }
            }
}

TEST_CASE("diagram construction validates endpoints and chain maps") {
    PoissonRceDiagram pd = generate_diagram(17);
    CHECK(pd.d.check_homotopy_time_slice());
    // all-identity diagram on the ground field
    auto k = ChainComplex::ground_field(0);
    std::array<ComplexPtr, 4> objs{k, k, k, k};
    std::array<ChainMap, 4> arrows;
    for (int i = 0; i < 4; ++i) arrows[i] = GradedMap::identity(k);
    RceDiagram ident(objs, arrows);
    CHECK(ident.check_homotopy_time_slice());
    // a zero arrow between complexes with homology breaks the axiom
    arrows[0] = GradedMap::zero(k, k, 0);
    RceDiagram broken(objs, arrows);
    CHECK(!broken.check_homotopy_time_slice());
}

TEST_CASE("seeded diagrams satisfy the time-slice axiom") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        PoissonRceDiagram pd = generate_diagram(seed, GeneratorDims{-1, 1, 2});
        CHECK(pd.d.check_homotopy_time_slice());
    }
}
