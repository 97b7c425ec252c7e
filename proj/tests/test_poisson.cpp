#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rce/harness.hpp"
#include "rce/poisson.hpp"

using namespace rce;

TEST_CASE("pairing validation") {
    auto v = ChainComplex::make({{-1, {"a"}}, {1, {"b"}}}, {});
    // graded antisymmetry across the degree pair (1,-1): tau(b,a) = tau(a,b)
    std::map<int, QMat> good{{1, QMat::from_triplets(1, 1, {{0, 0, Rational(2)}})},
                             {-1, QMat::from_triplets(1, 1, {{0, 0, Rational(2)}})}};
    CHECK_NOTHROW(PoissonStructure(v, good));
    std::map<int, QMat> bad{{1, QMat::from_triplets(1, 1, {{0, 0, Rational(2)}})},
                            {-1, QMat::from_triplets(1, 1, {{0, 0, Rational(-2)}})}};
    CHECK_THROWS(PoissonStructure(v, bad));
    // chain condition: pairing along a nonzero differential must cancel
    auto w = ChainComplex::make({{0, {"x"}}, {1, {"y"}}},
                                {{1, QMat::from_triplets(1, 1, {{0, 0, Rational(1)}})}});
    std::map<int, QMat> skew{{0, QMat::from_triplets(1, 1, {})}};
    CHECK_NOTHROW(PoissonStructure(w, skew));
}

TEST_CASE("pullback along the identity and the zero map") {
    PoissonRceDiagram pd = generate_diagram(6);
    const PoissonStructure& tau = pd.at(Obj::M);
    PoissonStructure back = pullback_poisson(GradedMap::identity(pd.d.at(Obj::M)), tau);
    const ComplexPtr& v = pd.d.at(Obj::M);
    for (int k = v->lo(); k <= v->hi(); ++k)
        for (int i = 0; i < v->dim(k); ++i)
            for (int j = 0; j < v->dim(-k); ++j)
                CHECK(back.eval_basis(k, i, -k, j) == tau.eval_basis(k, i, -k, j));
    PoissonStructure zero =
        pullback_poisson(GradedMap::zero(pd.d.at(Obj::M), pd.d.at(Obj::M), 0), tau);
    CHECK(zero.pairs().empty());
}

TEST_CASE("seeded diagrams preserve tau along all four arrows") {
    for (unsigned seed = 1; seed <= 50; ++seed) {
        PoissonRceDiagram pd = generate_diagram(seed, GeneratorDims{-1, 1, 2});
        CHECK_NOTHROW(pd.validate());
    }
}

TEST_CASE("derived structure reduces to tau at coincident nodes") {
    PoissonRceDiagram pd = generate_diagram(9);
    ZigzagContext ctx = ZigzagContext::build(pd.d);
    const ComplexPtr& xm = pd.d.at(Obj::M);
    for (int k = xm->lo(); k <= xm->hi(); ++k)
        for (int i = 0; i < xm->dim(k); ++i)
            for (int j = 0; j < xm->dim(-k); ++j) {
                Rational direct = pd.at(Obj::M).eval_basis(k, i, -k, j);
                Rational derived = tau_L_eval(ctx, pd, node_symbol(0, Obj::M, k, i),
                                              node_symbol(0, Obj::M, -k, j));
                CHECK(direct == derived);  // Z = id collapses the half factors
            }
}

TEST_CASE("derived chain conditions and invariance") {
    Scenario sc;
    sc.num_seeds = 2;
    sc.window = 3;
    CheckResult r = chk_tau_derived(sc);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("negative control: corrupted 2-homotopy is caught with a witness") {
    Scenario sc;
    CheckResult r = chk_tau_negative(sc);
    CHECK_MESSAGE(r.pass, r.detail);
}

TEST_CASE("rho components vanish off vertical degrees 0 and 1") {
    PoissonRceDiagram pd = generate_diagram(13);
    ZigzagContext ctx = ZigzagContext::build(pd.d);
    QRes r = q_resolution(pd.d, Obj::M);
    for (const auto& [ma, sa] : r.table)
        for (const auto& [mb, sb] : r.table)
            for (const QSymbol& a : sa)
                for (const QSymbol& b : sb)
                    if (a.edge && b.edge)
                        CHECK(rho_N_eval(ctx, pd, Obj::M, a, b).is_zero());
}

TEST_CASE("identity diagram: rho vanishes and both pullback structures agree") {
    auto x = ChainComplex::make({{-1, {"a"}}, {1, {"b"}}}, {});
    std::array<ComplexPtr, 4> objs{x, x, x, x};
    std::array<ChainMap, 4> arrows;
    for (int i = 0; i < 4; ++i) arrows[i] = GradedMap::identity(x);
    PoissonRceDiagram pd;
    pd.d = RceDiagram(objs, arrows);
    std::map<int, QMat> pair{{1, QMat::from_triplets(1, 1, {{0, 0, Rational(1)}})},
                             {-1, QMat::from_triplets(1, 1, {{0, 0, Rational(1)}})}};
    for (int i = 0; i < 4; ++i) pd.tau[i] = PoissonStructure(x, pair);
    pd.validate();
    ZigzagContext ctx = ZigzagContext::build(pd.d);
    QRes r = q_resolution(pd.d, Obj::M);
    for (const auto& [ma, sa] : r.table)
        for (const auto& [mb, sb] : r.table)
            for (const QSymbol& a : sa)
                for (const QSymbol& b : sb) {
                    CHECK(rho_N_eval(ctx, pd, Obj::M, a, b).is_zero());
                    // both pullbacks coincide pairwise
                    Rational via_eta = tau_L_eval(ctx, pd, derived_unit(a), derived_unit(b));
                    Rational via_q = pd.at(Obj::M).eval(
                        gv_apply(r.q, GradedVec{{a.total_degree(), [&] {
                                                     QVec v(r.cx->dim(a.total_degree()),
                                                            Rational(0));
                                                     v[r.pos.at(a)] = Rational(1);
                                                     return v;
                                                 }()}}),
                        gv_apply(r.q, GradedVec{{b.total_degree(), [&] {
                                                     QVec v(r.cx->dim(b.total_degree()),
                                                            Rational(0));
                                                     v[r.pos.at(b)] = Rational(1);
                                                     return v;
                                                 }()}}));
                    CHECK(via_eta == via_q);
                }
}

TEST_CASE("rho relations and naturality on seeded diagrams") {
    Scenario sc;
    sc.num_seeds = 2;
    CheckResult r = chk_rho(sc);
    CHECK_MESSAGE(r.pass, r.detail);
    CheckResult neg = chk_rho_negative(sc);
    CHECK_MESSAGE(neg.pass, neg.detail);
}
