#include <chrono>
#include <future>

#include "rce/harness.hpp"
#include "rce/serialize.hpp"

namespace rce {

namespace {

CheckResult pass(const std::string& name) { return {name, true, ""}; }
CheckResult fail(const std::string& name, const std::string& w) { return {name, false, w}; }

std::vector<DerivedSymbol> window_symbols_of(const RceDiagram& d, int window) {
    std::vector<DerivedSymbol> out;
    for (int n = -window; n <= window; ++n) {
        for (Obj o : kObjects) {
            const ComplexPtr& c = d.at(o);
            for (int deg : c->degrees())
                for (int i = 0; i < c->dim(deg); ++i) out.push_back(node_symbol(n, o, deg, i));
        }
        for (Mor f : kArrows) {
            const ComplexPtr& c = d.at(source(f));
            for (int deg : c->degrees())
                for (int i = 0; i < c->dim(deg); ++i) out.push_back(edge_symbol(n, f, deg, i));
        }
    }
    return out;
}

DerivedElement rho_elem(const ZAction& z, const DerivedElement& e) {
    DerivedElement out;
    for (const auto& [s, c] : e) out = add(out, scale(counit_rho(z, s), c));
    return out;
}

unsigned seed_at(const Scenario& sc, int k) { return sc.seed + static_cast<unsigned>(k); }

}  // namespace

CheckResult chk_structural(const Scenario& sc) {
    const std::string name = "structural d^2 = 0";
    for (int k = 0; k < sc.num_seeds; ++k) {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, k), sc.dims);
        for (const DerivedSymbol& s : window_symbols_of(pd.d, sc.counit_window)) {
            DerivedElement e;
            add_term(e, s, Rational(1));
            if (!element_is_zero(tilde_differential(pd.d, tilde_differential(pd.d, e))))
                return fail(name, "derived bicomplex, seed " + std::to_string(seed_at(sc, k)));
        }
        for (Obj n : kObjects)
            q_resolution(pd.d, n);  // construction validates d^2 = 0 exactly
    }
    return pass(name);
}

CheckResult chk_counit(const Scenario& sc) {
    const std::string name = "derived counit identities";
    for (int k = 0; k < sc.num_seeds; ++k) {
        ZAction z = generate_z_action(seed_at(sc, k), sc.dims);
        RceDiagram d = z.pullback();
        // epsilon . kappa = id on Y
        for (int deg : z.y->degrees())
            for (int i = 0; i < z.y->dim(deg); ++i) {
                QVec v(z.y->dim(deg), Rational(0));
                v[i] = Rational(1);
                GradedVec y{{deg, v}};
                GradedVec back = counit_epsilon(z, counit_kappa(y));
                if (!gv_is_zero(gv_add(back, gv_scale(y, Rational(-1)))))
                    return fail(name, "eps.kappa != id");
            }
        // kappa . epsilon - id = d rho + rho d on every window symbol
        for (const DerivedSymbol& s : window_symbols_of(d, sc.counit_window)) {
            DerivedElement e;
            add_term(e, s, Rational(1));
            DerivedElement lhs = add(counit_kappa(counit_epsilon(z, e)), scale(e, Rational(-1)));
            DerivedElement rhs = add(tilde_differential(d, counit_rho(z, s)),
                                     rho_elem(z, tilde_differential(d, e)));
            if (!element_is_zero(add(lhs, scale(rhs, Rational(-1)))))
                return fail(name, "counit homotopy at " + symbol_name(d, s));
            if (s.edge && !element_is_zero(counit_rho(z, s)))
                return fail(name, "rho nonzero on an edge symbol");
        }
    }
    return pass(name);
}

CheckResult chk_unit_coker(const Scenario& sc) {
    const std::string name = "windowed cokernel acyclicity";
    for (int k = 0; k < sc.num_seeds; ++k) {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, k), sc.dims);
        if (!coker_acyclicity_check(pd.d, sc.coker_depth))
            return fail(name, "stage not acyclic, seed " + std::to_string(seed_at(sc, k)));
    }
    // negative control: one arrow replaced by zero is not a quasi-isomorphism
    {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, 0), sc.dims);
        std::array<ComplexPtr, 4> objs;
        std::array<ChainMap, 4> arrows;
        for (Obj n : kObjects) objs[static_cast<int>(n)] = pd.d.at(n);
        for (int i = 0; i < 4; ++i) arrows[i] = pd.d.map_of(kArrows[i]);
        arrows[0] = GradedMap::zero(arrows[0].src, arrows[0].tgt, 0);
        RceDiagram broken(objs, arrows);
        bool threw = false;
        try {
            coker_acyclicity_check(broken, sc.coker_depth);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        if (!threw) return fail(name, "negative control accepted a non-quasi-iso diagram");
    }
    return pass(name);
}

CheckResult chk_equivalence(const Scenario& sc) {
    const std::string name = "quasi-inverse coherence data";
    for (int k = 0; k < 2 * sc.num_seeds; ++k) {
        ChainMap f = generate_quasi_iso(seed_at(sc, k), sc.dims);
        EquivalenceData e = build_equivalence(f);
        if (!verify_equivalence(e)) return fail(name, "seed " + std::to_string(seed_at(sc, k)));
        if (!is_quasi_iso(e.f_inv)) return fail(name, "inverse is not a quasi-iso");
        // determinism: identical inputs give identical data
        EquivalenceData e2 = build_equivalence(f);
        if (equivalence_to_json(e).dump() != equivalence_to_json(e2).dump())
            return fail(name, "construction not deterministic");
    }
    // identity morphisms carry all-zero data
    PoissonRceDiagram pd = generate_diagram(sc.seed, sc.dims);
    EquivalenceData id = build_equivalence(GradedMap::identity(pd.d.at(Obj::M)));
    if (!id.lambda.is_zero() || !id.gamma.is_zero() || !id.xi.is_zero())
        return fail(name, "identity data not pinned to zero");
    return pass(name);
}

CheckResult chk_zigzag(const Scenario& sc) {
    const std::string name = "zig-zag coherence identities";
    const int W = 3;
    for (int k = 0; k < sc.num_seeds; ++k) {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, k), sc.dims);
        ZigzagContext ctx = ZigzagContext::build(pd.d);
        const RceDiagram& d = ctx.diagram();

        std::vector<SpiralNode> nodes;
        std::vector<SpiralEdge> edges;
        for (int n = -W; n <= W; ++n) {
            for (Obj o : kObjects) nodes.push_back({n, o});
            for (Mor f : kArrows) edges.push_back({n, f});
        }
        for (const SpiralNode& a : nodes)
            for (const SpiralNode& b : nodes) {
                // Z to itself is the identity; shift invariance as matrices
                const ChainMap& z = ctx.z_map(a, b);
                const ChainMap& zs = ctx.z_map({a.level + 1, a.obj}, {b.level + 1, b.obj});
                if (!(z - zs).is_zero()) return fail(name, "Z not shift invariant");
            }
        for (const SpiralEdge& e : edges) {
            const ChainMap lf = d.map_of(e.mor);
            for (const SpiralNode& v : nodes) {
                GradedMap lam = ctx.lambda_left(e.level, e.mor, v);
                GradedMap lhs =
                    compose(lf, ctx.z_map(v, edge_source(e))) - ctx.z_map(v, edge_target(e));
                if (!(lhs - hom_boundary(lam)).is_zero())
                    return fail(name, "left homotopy at level " + std::to_string(e.level));
                GradedMap lam_s = ctx.lambda_left(e.level + 1, e.mor, {v.level + 1, v.obj});
                if (!(lam - lam_s).is_zero()) return fail(name, "Lambda not shift invariant");

                GradedMap gam = ctx.gamma_right(v, e.level, e.mor);
                GradedMap lhs2 =
                    compose(ctx.z_map(edge_target(e), v), lf) - ctx.z_map(edge_source(e), v);
                if (!(lhs2 - hom_boundary(gam)).is_zero()) return fail(name, "right homotopy");
                GradedMap gam_s = ctx.gamma_right({v.level + 1, v.obj}, e.level + 1, e.mor);
                if (!(gam - gam_s).is_zero()) return fail(name, "Gamma not shift invariant");
            }
            for (const SpiralEdge& ep : edges) {
                GradedMap xi = ctx.xi_two(e.level, e.mor, ep.level, ep.mor);
                GradedMap lhs = compose(d.map_of(e.mor),
                                        ctx.gamma_right(edge_source(e), ep.level, ep.mor)) -
                                ctx.gamma_right(edge_target(e), ep.level, ep.mor) +
                                ctx.lambda_left(e.level, e.mor, edge_source(ep)) -
                                compose(ctx.lambda_left(e.level, e.mor, edge_target(ep)),
                                        d.map_of(ep.mor));
                if (!(lhs - hom_boundary(xi)).is_zero()) return fail(name, "2-homotopy");
                GradedMap xi_s = ctx.xi_two(e.level + 1, e.mor, ep.level + 1, ep.mor);
                if (!(xi - xi_s).is_zero()) return fail(name, "Xi not shift invariant");
            }
        }
        // identity morphisms give zero coherence data
        for (const SpiralNode& v : nodes)
            if (!ctx.lambda_left(0, Mor::id_M, v).is_zero() ||
                !ctx.gamma_right(v, 0, Mor::id_Mh).is_zero() ||
                !ctx.xi_two(0, Mor::id_M, 0, Mor::iplus).is_zero())
                return fail(name, "identity data not zero");
    }
    return pass(name);
}

CheckResult chk_theta(const Scenario& sc) {
    const std::string name = "rce homotopy square on the derived object";
    for (int k = 0; k < sc.num_seeds; ++k) {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, k), sc.dims);
        ZigzagContext ctx = ZigzagContext::build(pd.d);
        const RceDiagram& d = ctx.diagram();
        const ComplexPtr& xm = d.at(Obj::M);
        const ChainMap& z = ctx.z_map({1, Obj::M}, {0, Obj::M});
        for (int deg : xm->degrees())
            for (int i = 0; i < xm->dim(deg); ++i) {
                DerivedElement lhs = rce_lin(iota_basis(deg, i), 1);
                QVec zi(xm->dim(deg), Rational(0));
                zi[i] = Rational(1);
                lhs = add(lhs, scale(iota(d, deg, z.component(deg).apply(zi)), Rational(-1)));
                DerivedElement rhs = tilde_differential(d, ctx.theta_homotopy(deg, i));
                for (const auto& t : xm->diff(deg).triplets())
                    if (t.c == i) rhs = add(rhs, scale(ctx.theta_homotopy(deg - 1, t.r), t.v));
                if (!element_is_zero(add(lhs, scale(rhs, Rational(-1)))))
                    return fail(name, "at " + xm->label(deg, i));
            }
    }
    return pass(name);
}

CheckResult chk_tau_derived(const Scenario& sc) {
    const std::string name = "derived Poisson structure conditions";
    for (int k = 0; k < sc.num_seeds; ++k) {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, k), sc.dims);
        ZigzagContext ctx = ZigzagContext::build(pd.d);
        if (auto w = verify_tau_L(ctx, pd, sc.window))
            return fail(name, w->what + ": " + w->detail);
        // antisymmetrized one-term rule agrees with the two-term components
        auto syms = window_symbols_of(pd.d, 1);
        for (const auto& a : syms)
            for (const auto& b : syms)
                if (tau_L_eval(ctx, pd, a, b) != tau_L_eval_one_term_antisym(ctx, pd, a, b))
                    return fail(name, "one-term antisymmetrization mismatch");
        // rce invariance of tau_L (level shift of both arguments)
        for (const auto& a : syms)
            for (const auto& b : syms) {
                DerivedSymbol sa = a, sb = b;
                sa.level += 1;
                sb.level += 1;
                if (tau_L_eval(ctx, pd, a, b) != tau_L_eval(ctx, pd, sa, sb))
                    return fail(name, "tau_L not rce-invariant");
            }
    }
    return pass(name);
}

namespace {

ZigzagContext corrupted_context(const PoissonRceDiagram& pd) {
    std::map<Mor, EquivalenceData> eq;
    for (Mor f : kArrows) eq.emplace(f, build_equivalence(pd.d.map_of(f)));
    // corrupt the 2-homotopy of i+: add a nonzero entry in some degree
    EquivalenceData& e = eq.at(Mor::iplus);
    const ComplexPtr& src = e.f.src;
    const ComplexPtr& tgt = e.f.tgt;
    for (int m : src->degrees()) {
        if (tgt->dim(m + 2) == 0) continue;
        QMat q = e.xi.component(m);
        std::vector<Triplet<Rational>> t(q.triplets().begin(), q.triplets().end());
        t.push_back({0, 0, Rational(7, 3)});
        e.xi.set_component(m, QMat::from_triplets(q.rows(), q.cols(), std::move(t)));
        break;
    }
    return ZigzagContext::unchecked(pd.d, std::move(eq));
}

}  // namespace

CheckResult chk_tau_negative(const Scenario& sc) {
    const std::string name = "corrupted 2-homotopy is detected";
    PoissonRceDiagram pd = generate_diagram(sc.seed, sc.dims);
    ZigzagContext bad = corrupted_context(pd);
    auto w = verify_tau_L(bad, pd, 2);
    if (!w) return fail(name, "corrupted Xi passed the chain conditions");
    if (w->detail.empty()) return fail(name, "no witness reported");
    return pass(name);
}

CheckResult chk_rho(const Scenario& sc) {
    const std::string name = "pullback compatibility homotopy rho";
    for (int k = 0; k < sc.num_seeds; ++k) {
        PoissonRceDiagram pd = generate_diagram(seed_at(sc, k), sc.dims);
        ZigzagContext ctx = ZigzagContext::build(pd.d);
        for (Obj n : kObjects) {
            QRes res = q_resolution(pd.d, n);
            if (auto w = verify_rho_relations(ctx, pd, n, res))
                return fail(name, w->what + ": " + w->detail);
        }
        if (auto w = naturality_check_rho(ctx, pd)) return fail(name, w->what + ": " + w->detail);
    }
    return pass(name);
}

CheckResult chk_rho_negative(const Scenario& sc) {
    const std::string name = "corrupted data breaks the rho relations";
    PoissonRceDiagram pd = generate_diagram(sc.seed, sc.dims);
    ZigzagContext bad = corrupted_context(pd);
    for (Obj n : {Obj::M, Obj::Mh}) {
        QRes res = q_resolution(pd.d, n);
        if (verify_rho_relations(bad, pd, n, res)) return pass(name);
    }
    return fail(name, "corrupted Xi passed the rho relations");
}

CheckResult chk_ccr(const Scenario& sc) {
    const std::string name = "CCR algebra laws";
    DerivedCcr dc = build_derived_ccr(sc.seed, 2, sc.ccr_cap, sc.dims);
    const CcrConfig& cfg = dc.cfg;
    Rng rng(sc.seed * 77 + 5);
    int ngen = static_cast<int>(cfg.gens.size());
    auto random_word_elem = [&](int len) {
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(rng.below(ngen));
        return ccr_normalize(cfg, w, Rational(1));
    };
    // associativity on random triples
    for (int rep = 0; rep < 200; ++rep) {
        CcrElement a = random_word_elem(rng.range(0, 2));
        CcrElement b = random_word_elem(rng.range(0, 2));
        CcrElement c = random_word_elem(rng.range(0, 2));
        CcrElement l = ccr_mul(cfg, ccr_mul(cfg, a, b), c);
        CcrElement r = ccr_mul(cfg, a, ccr_mul(cfg, b, c));
        if (ccr_add(l, ccr_scale(r, Rational(-1))) != CcrElement{})
            return fail(name, "associativity");
    }
    // graded commutators on all generator pairs
    for (int a = 0; a < ngen; ++a)
        for (int b = 0; b < ngen; ++b) {
            CcrElement ab = ccr_mul(cfg, ccr_gen(a), ccr_gen(b));
            CcrElement ba = ccr_mul(cfg, ccr_gen(b), ccr_gen(a));
            Rational k((cfg.gens[a].degree % 2 != 0 && cfg.gens[b].degree % 2 != 0) ? -1 : 1);
            CcrElement comm = ccr_add(ab, ccr_scale(ba, -k));
            CcrElement expect = ccr_scale(ccr_unit(), cfg.lambda_q * cfg.tau(a, b));
            if (ccr_add(comm, ccr_scale(expect, Rational(-1))) != CcrElement{})
                return fail(name, "commutator of " + cfg.gens[a].label + ", " + cfg.gens[b].label);
        }
    // d^2 = 0 and the Leibniz rule on random words
    for (int rep = 0; rep < 200; ++rep) {
        CcrElement a = random_word_elem(rng.range(0, 3));
        if (!ccr_is_zero(ccr_differential(cfg, ccr_differential(cfg, a))))
            return fail(name, "d^2 != 0");
        CcrElement b = random_word_elem(rng.range(0, 2));
        CcrElement lhs = ccr_differential(cfg, ccr_mul(cfg, a, b));
        CcrElement rhs = ccr_mul(cfg, ccr_differential(cfg, a), b);
        // the words of `a` are homogeneous only if every generator is; compute
        // the sign per word
        CcrElement rhs2;
        for (const auto& [w, c] : a) {
            int deg = 0;
            for (int g : w) deg += cfg.gens[g].degree;
            CcrElement part = ccr_mul(cfg, CcrElement{{w, c}}, ccr_differential(cfg, b));
            rhs2 = ccr_add(rhs2, ccr_scale(part, Rational(deg % 2 == 0 ? 1 : -1)));
        }
        if (ccr_add(lhs, ccr_scale(ccr_add(rhs, rhs2), Rational(-1))) != CcrElement{})
            return fail(name, "Leibniz");
    }
    return pass(name);
}

CheckResult chk_rce_ccr(const Scenario& sc) {
    const std::string name = "rce is a strict dg-algebra automorphism";
    DerivedCcr dc = build_derived_ccr(sc.seed, 2, sc.ccr_cap, sc.dims);
    const CcrConfig& cfg = dc.cfg;
    CcrMorphism fwd = rce_ccr_morphism(dc, 1);
    CcrMorphism back = rce_ccr_morphism(dc, -1);
    // tau preservation on all interior generator pairs
    for (int a = 0; a < static_cast<int>(cfg.gens.size()); ++a) {
        if (std::abs(dc.symbol_of[a].level) > 1) continue;
        for (int b = 0; b < static_cast<int>(cfg.gens.size()); ++b) {
            if (std::abs(dc.symbol_of[b].level) > 1) continue;
            Rational lhs = cfg.tau(fwd.on_gen(a).begin()->first, fwd.on_gen(b).begin()->first);
            if (lhs != cfg.tau(a, b)) return fail(name, "tau not preserved by the level shift");
        }
    }
    Rng rng(sc.seed * 31 + 9);
    std::vector<int> interior;
    for (int g = 0; g < static_cast<int>(cfg.gens.size()); ++g)
        if (std::abs(dc.symbol_of[g].level) <= 1 &&
            !(dc.symbol_of[g].edge == false && dc.symbol_of[g].level > 1))
            interior.push_back(g);
    auto random_word = [&](int len) {
        Word w;
        for (int i = 0; i < len; ++i) w.push_back(interior[rng.below(interior.size())]);
        return ccr_normalize(cfg, w, Rational(1));
    };
    for (int rep = 0; rep < 100; ++rep) {
        CcrElement a = random_word(rng.range(0, 3));
        CcrElement round = ccr_apply(back, ccr_apply(fwd, a));
        if (ccr_add(round, ccr_scale(a, Rational(-1))) != CcrElement{})
            return fail(name, "automorphism . inverse != id");
        // commutes with the differential
        CcrElement l = ccr_differential(cfg, ccr_apply(fwd, a));
        CcrElement r = ccr_apply(fwd, ccr_differential(cfg, a));
        if (ccr_add(l, ccr_scale(r, Rational(-1))) != CcrElement{})
            return fail(name, "does not commute with d");
        // multiplicative on random pairs
        CcrElement b = random_word(rng.range(0, 2));
        CcrElement lm = ccr_apply(fwd, ccr_mul(cfg, a, b));
        CcrElement rm = ccr_mul(cfg, ccr_apply(fwd, a), ccr_apply(fwd, b));
        if (ccr_add(lm, ccr_scale(rm, Rational(-1))) != CcrElement{})
            return fail(name, "not multiplicative");
    }
    return pass(name);
}

// ---------------------------------------------------------------------------

std::vector<std::string> available_checks() {
    return {"structural",   "counit",       "unit-coker",   "equivalence",  "zigzag",
            "theta",        "tau-derived",  "tau-negative", "rho",          "rho-negative",
            "ccr",          "rce-ccr",      "lat-d2",       "lat-stokes",   "lat-green",
            "lat-commute",  "lat-causal",   "lat-tau",      "lat-preserve", "lat-inverse",
            "lat-simplify", "lat-antifield", "lat-square",  "lat-witness",  "lat-stress",
            "lat-psi",      "lat-polarized"};
}

Report run_scenario(const Scenario& sc) {
    struct Item {
        std::string name;
        std::string anchor;
        bool lattice;
        std::function<CheckResult()> fn;
    };
    std::vector<Item> items;
    auto add = [&](const std::string& n, const std::string& anchor, bool lattice,
                   std::function<CheckResult()> fn) {
        items.push_back({n, anchor, lattice, std::move(fn)});
    };
    std::shared_ptr<YmSystem> sys;
    if (sc.mode != "abstract") sys = std::make_shared<YmSystem>(sc.lattice);

    add("structural", "derived-bicomplex-square-zero", false, [&sc] { return chk_structural(sc); });
    add("counit", "derived-counit-homotopy", false, [&sc] { return chk_counit(sc); });
    add("unit-coker", "unit-cokernel-acyclicity", false, [&sc] { return chk_unit_coker(sc); });
    add("equivalence", "adjoint-equivalence-data", false, [&sc] { return chk_equivalence(sc); });
    add("zigzag", "zigzag-coherence", false, [&sc] { return chk_zigzag(sc); });
    add("theta", "rce-homotopy-square", false, [&sc] { return chk_theta(sc); });
    add("tau-derived", "derived-poisson-chain-conditions", false,
        [&sc] { return chk_tau_derived(sc); });
    add("tau-negative", "derived-poisson-negative-control", false,
        [&sc] { return chk_tau_negative(sc); });
    add("rho", "pullback-poisson-homotopy", false, [&sc] { return chk_rho(sc); });
    add("rho-negative", "pullback-poisson-negative-control", false,
        [&sc] { return chk_rho_negative(sc); });
    add("ccr", "normal-ordered-algebra-laws", false, [&sc] { return chk_ccr(sc); });
    add("rce-ccr", "rce-strict-automorphism", false, [&sc] { return chk_rce_ccr(sc); });

    if (sys) {
        add("lat-d2", "lattice-square-zero", true, [sys] { return check_lattice_d2(*sys); });
        add("lat-stokes", "discrete-integration-by-parts", true,
            [sys, &sc] { return check_stokes_adjointness(*sys, sc.seed); });
        add("lat-green", "green-homotopy-trivialization", true, [sys] {
            for (Obj n : kObjects) {
                CheckResult r = check_green_identities(*sys, n);
                if (!r.pass) return r;
            }
            return CheckResult{"j = d(G^+-) on all regions", true, ""};
        });
        add("lat-commute", "green-operator-naturality", true, [sys] {
            for (Obj n : kObjects) {
                CheckResult r = check_green_commutation(*sys, n);
                if (!r.pass) return r;
            }
            return CheckResult{"Green commutation on all regions", true, ""};
        });
        add("lat-causal", "causal-support", true, [sys] { return check_causal_support(*sys); });
        add("lat-tau", "lattice-poisson-structure", true,
            [sys, &sc] { return check_tau_properties(*sys, sc.seed); });
        add("lat-preserve", "arrows-preserve-poisson", true,
            [sys] { return check_region_tau_preserved(*sys); });
        add("lat-inverse", "geometric-quasi-inverses", true, [sys] {
            for (Mor f : kArrows) {
                CheckResult r = check_prop63(*sys, f);
                if (!r.pass) return r;
            }
            return CheckResult{"quasi-inverse identities for all arrows", true, ""};
        });
        add("lat-simplify", "rce-support-simplification", true,
            [sys] { return check_prop64(*sys); });
        add("lat-antifield", "rce-fixes-antifields", true, [sys] { return check_remark65(*sys); });
        add("lat-square", "lattice-rce-homotopy-square", true,
            [sys] { return check_prop61_lattice(*sys); });
        add("lat-witness", "poisson-nonpreservation-witness", true,
            [sys] { return check_poisson_nonpreservation(*sys); });
        add("lat-stress", "stress-derivative-structure", true,
            [sys] { return check_stress_properties(*sys); });
        add("lat-psi", "stress-compatibility-correction", true,
            [sys] { return check_psi_compatibility(*sys); });
        add("lat-polarized", "polarized-stress-values", true,
            [sys] { return check_polarized_stress(*sys); });
    }

    auto wanted = [&](const Item& it) {
        if (sc.mode == "abstract" && it.lattice) return false;
        if (sc.mode == "lattice" && !it.lattice) return false;
        if (sc.only.empty()) return true;
        for (const auto& o : sc.only)
            if (o == it.name) return true;
        return false;
    };

    Report rep;
    std::vector<const Item*> run;
    for (const auto& it : items)
        if (wanted(it)) run.push_back(&it);

    std::vector<std::future<std::pair<CheckResult, double>>> futures;
    auto task = [](const Item* it) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r = it->fn();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::make_pair(r, secs);
    };
    int jobs = std::max(1, sc.jobs);
    for (size_t i = 0; i < run.size();) {
        size_t batch = std::min(run.size() - i, static_cast<size_t>(jobs));
        futures.clear();
        for (size_t k = 0; k < batch; ++k)
            futures.push_back(std::async(std::launch::async, task, run[i + k]));
        for (size_t k = 0; k < batch; ++k) {
            auto [r, secs] = futures[k].get();
            rep.entries.push_back({run[i + k]->name, run[i + k]->anchor, r.pass, r.detail, secs});
            rep.all_pass = rep.all_pass && r.pass;
        }
        i += batch;
    }
    return rep;
}

}  // namespace rce
