#include <stdexcept>

#include "rce/harness.hpp"

namespace rce {

namespace {

ComplexPtr zero_diff_complex(Rng& rng, const GeneratorDims& dims, const std::string& tag,
                             bool force_nonempty) {
    std::map<int, std::vector<std::string>> basis;
    for (int d = dims.deg_lo; d <= dims.deg_hi; ++d) {
        int n = rng.below(dims.max_dim + 1);
        for (int i = 0; i < n; ++i) basis[d].push_back(tag + std::to_string(d) + "." + std::to_string(i));
    }
    if (force_nonempty) {
        bool any = false;
        for (auto& [d, b] : basis) any = any || !b.empty();
        if (!any) basis[0].push_back(tag + "0.0");
    }
    return ChainComplex::make(std::move(basis), {});
}

// cone of the identity on a zero-differential graded space: acyclic. The
// underlying space is kept sparse so object dimensions stay at desk scale.
ComplexPtr acyclic_cone(Rng& rng, const GeneratorDims& dims, const std::string& tag) {
    std::map<int, std::vector<std::string>> basis;
    std::map<int, QMat> diffs;
    std::map<int, int> rdim;
    for (int d = dims.deg_lo; d <= dims.deg_hi; ++d) rdim[d] = rng.below(5) < 2 ? 1 : 0;
    for (int d = dims.deg_lo; d <= dims.deg_hi + 1; ++d) {
        int n = (rdim.count(d) ? rdim[d] : 0) + (rdim.count(d - 1) ? rdim[d - 1] : 0);
        for (int i = 0; i < n; ++i)
            basis[d].push_back(tag + std::to_string(d) + "." + std::to_string(i));
    }
    for (int d = dims.deg_lo; d <= dims.deg_hi + 1; ++d) {
        int top = rdim.count(d) ? rdim[d] : 0;        // R_d summand
        int bot = rdim.count(d - 1) ? rdim[d - 1] : 0;  // R_{d-1}[1] summand
        int rows = (rdim.count(d - 1) ? rdim[d - 1] : 0) + (rdim.count(d - 2) ? rdim[d - 2] : 0);
        std::vector<Triplet<Rational>> t;
        // d(w, v) = (v, 0): the shifted copy maps identically onto R_{d-1}
        for (int i = 0; i < bot; ++i) t.push_back({i, top + i, Rational(1)});
        if (rows > 0 || top + bot > 0) diffs[d] = QMat::from_triplets(rows, top + bot, std::move(t));
    }
    for (auto it = basis.begin(); it != basis.end();) {
        if (it->second.empty())
            it = basis.erase(it);
        else
            ++it;
    }
    return ChainComplex::make(std::move(basis), std::move(diffs));
}

struct BasisChange {
    ChainMap fwd, back;  // conjugation iso and its inverse
};

// P = L U with unit-triangular seeded factors, inverted exactly.
BasisChange invertible_change(Rng& rng, const ComplexPtr& from) {
    std::map<int, std::vector<std::string>> basis;
    for (int d : from->degrees()) {
        for (int i = 0; i < from->dim(d); ++i)
            basis[d].push_back("c" + std::to_string(d) + "." + std::to_string(i));
    }
    std::map<int, QMat> p, pinv;
    for (int d : from->degrees()) {
        int n = from->dim(d);
        std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n, Rational(0)));
        std::vector<std::vector<Rational>> u = l;
        for (int i = 0; i < n; ++i) {
            l[i][i] = Rational(1);
            u[i][i] = Rational(1);
            for (int j = 0; j < i; ++j) l[i][j] = rng.small_rational(2, 2);
            for (int j = i + 1; j < n; ++j) u[i][j] = rng.small_rational(2, 2);
        }
        auto tri_inv = [&](const std::vector<std::vector<Rational>>& m, bool lower) {
            std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
            for (int i = 0; i < n; ++i) inv[i][i] = Rational(1);
            // forward substitution column by column
            for (int col = 0; col < n; ++col) {
                if (lower) {
                    for (int i = 0; i < n; ++i) {
                        Rational s = inv[i][col];
                        for (int k = 0; k < i; ++k) s -= m[i][k] * inv[k][col];
                        inv[i][col] = s;
                    }
                } else {
                    for (int i = n - 1; i >= 0; --i) {
                        Rational s = inv[i][col];
                        for (int k = i + 1; k < n; ++k) s -= m[i][k] * inv[k][col];
                        inv[i][col] = s;
                    }
                }
            }
            return inv;
        };
        auto mul = [&](const std::vector<std::vector<Rational>>& a,
                       const std::vector<std::vector<Rational>>& b) {
            std::vector<std::vector<Rational>> c(n, std::vector<Rational>(n, Rational(0)));
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
            return c;
        };
        auto to_mat = [&](const std::vector<std::vector<Rational>>& m) {
            std::vector<Triplet<Rational>> t;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (!m[i][j].is_zero()) t.push_back({i, j, m[i][j]});
            return QMat::from_triplets(n, n, std::move(t));
        };
        auto pm = mul(l, u);
        auto pim = mul(tri_inv(u, false), tri_inv(l, true));
        p[d] = to_mat(pm);
        pinv[d] = to_mat(pim);
    }
    // conjugated differential d' = P d P^{-1}
    std::map<int, QMat> diffs;
    for (int d = from->lo(); d <= from->hi() + 1; ++d) {
        QMat pl = p.count(d - 1) ? p[d - 1] : QMat(from->dim(d - 1), from->dim(d - 1));
        QMat pr = pinv.count(d) ? pinv[d] : QMat(from->dim(d), from->dim(d));
        QMat m = pl * from->diff(d) * pr;
        if (!m.is_zero()) diffs[d] = m;
    }
    ComplexPtr to = ChainComplex::make(std::move(basis), std::move(diffs));
    BasisChange bc;
    bc.fwd = GradedMap::zero(from, to, 0);
    bc.back = GradedMap::zero(to, from, 0);
    for (auto& [d, m] : p) bc.fwd.set_component(d, std::move(m));
    for (auto& [d, m] : pinv) bc.back.set_component(d, std::move(m));
    return bc;
}

// degreewise invertible chain endomorphism of a zero-differential complex,
// with its exact inverse
std::pair<ChainMap, ChainMap> seeded_automorphism(Rng& rng, const ComplexPtr& h) {
    ChainMap fwd = GradedMap::zero(h, h, 0);
    ChainMap back = GradedMap::zero(h, h, 0);
    for (int d : h->degrees()) {
        int n = h->dim(d);
        std::vector<std::vector<Rational>> l(n, std::vector<Rational>(n, Rational(0)));
        std::vector<std::vector<Rational>> u = l;
        for (int i = 0; i < n; ++i) {
            l[i][i] = Rational(1);
            u[i][i] = Rational(1);
            for (int j = 0; j < i; ++j) l[i][j] = rng.small_rational(2, 2);
            for (int j = i + 1; j < n; ++j) u[i][j] = rng.small_rational(2, 2);
        }
        std::vector<Triplet<Rational>> tf, tb;
        std::vector<std::vector<Rational>> li(n, std::vector<Rational>(n, Rational(0)));
        std::vector<std::vector<Rational>> ui = li;
        for (int i = 0; i < n; ++i) {
            li[i][i] = Rational(1);
            ui[i][i] = Rational(1);
        }
        for (int col = 0; col < n; ++col) {
            for (int i = 0; i < n; ++i) {
                Rational s = li[i][col];
                for (int k = 0; k < i; ++k) s -= l[i][k] * li[k][col];
                li[i][col] = s;
            }
            for (int i = n - 1; i >= 0; --i) {
                Rational s = ui[i][col];
                for (int k = i + 1; k < n; ++k) s -= u[i][k] * ui[k][col];
                ui[i][col] = s;
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational pf(0), pb(0);
                for (int k = 0; k < n; ++k) {
                    pf += l[i][k] * u[k][j];
                    pb += ui[i][k] * li[k][j];
                }
                if (!pf.is_zero()) tf.push_back({i, j, pf});
                if (!pb.is_zero()) tb.push_back({i, j, pb});
            }
        fwd.set_component(d, QMat::from_triplets(n, n, std::move(tf)));
        back.set_component(d, QMat::from_triplets(n, n, std::move(tb)));
    }
    return {fwd, back};
}

// seeded graded-antisymmetric degree-0 pairing on a zero-differential complex
PoissonStructure seeded_core_pairing(Rng& rng, const ComplexPtr& h) {
    std::map<int, QMat> pairs;
    for (int k = std::max(0, h->lo()); k <= h->hi(); ++k) {
        int rows = h->dim(k), cols = h->dim(-k);
        if (rows == 0 || cols == 0) continue;
        std::vector<Triplet<Rational>> t;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                if (k == 0 && j <= i) continue;  // strict upper part, then skew-extend
                Rational v = rng.small_rational(3, 2);
                if (!v.is_zero()) t.push_back({i, j, v});
            }
        QMat m = QMat::from_triplets(rows, cols, std::move(t));
        if (k == 0) {
            pairs[0] = m - m.transpose();
        } else {
            pairs[k] = m;
            pairs[-k] = m.transpose() * Rational(k % 2 == 0 ? -1 : 1);
        }
    }
    return PoissonStructure(h, std::move(pairs));
}

}  // namespace

PoissonRceDiagram generate_diagram(unsigned seed, const GeneratorDims& dims) {
    Rng rng(0x9e3779b97f4a7c15ULL ^ seed);
    ComplexPtr h = zero_diff_complex(rng, dims, "h", true);
    SumComplex b = direct_sum(h, acyclic_cone(rng, dims, "k"));
    ComplexPtr ap = acyclic_cone(rng, dims, "a+");
    ComplexPtr am = acyclic_cone(rng, dims, "a-");
    ComplexPtr cm = acyclic_cone(rng, dims, "cm");
    ComplexPtr ch = acyclic_cone(rng, dims, "ch");

    SumComplex sp = direct_sum(b.cx, ap);  // V(M+)
    SumComplex sm = direct_sum(b.cx, am);  // V(M-)
    SumComplex tm = direct_sum(sp.cx, am);
    SumComplex vm = direct_sum(tm.cx, cm);  // V(M)
    SumComplex th = direct_sum(sp.cx, am);
    SumComplex vh = direct_sum(th.cx, ch);  // V(M_h)

    ChainMap iplus = compose(vm.incl_left, tm.incl_left);
    ChainMap jplus = compose(vh.incl_left, th.incl_left);
    ChainMap iminus = compose(compose(vm.incl_left, tm.incl_left),
                              compose(sp.incl_left, sm.proj_left)) +
                      compose(compose(vm.incl_left, tm.incl_right), sm.proj_right);
    ChainMap jminus = compose(compose(vh.incl_left, th.incl_left),
                              compose(sp.incl_left, sm.proj_left)) +
                      compose(compose(vh.incl_left, th.incl_right), sm.proj_right);

    // tau through the projection onto the homology core
    PoissonStructure theta = seeded_core_pairing(rng, h);
    ChainMap pr_b = b.proj_left;  // B -> H
    auto tau_of = [&](const ChainMap& proj_to_b) {
        return pullback_poisson(compose(pr_b, proj_to_b), theta);
    };
    ChainMap prb_sp = sp.proj_left;
    ChainMap prb_sm = sm.proj_left;
    ChainMap prb_vm = compose(compose(sp.proj_left, tm.proj_left), vm.proj_left);
    ChainMap prb_vh = compose(compose(sp.proj_left, th.proj_left), vh.proj_left);

    std::array<ComplexPtr, 4> objs;
    objs[static_cast<int>(Obj::Mplus)] = sp.cx;
    objs[static_cast<int>(Obj::Mminus)] = sm.cx;
    objs[static_cast<int>(Obj::M)] = vm.cx;
    objs[static_cast<int>(Obj::Mh)] = vh.cx;
    std::array<ChainMap, 4> arrows;
    for (int i = 0; i < 4; ++i) {
        Mor f = kArrows[i];
        if (f == Mor::iplus) arrows[i] = iplus;
        if (f == Mor::jplus) arrows[i] = jplus;
        if (f == Mor::iminus) arrows[i] = iminus;
        if (f == Mor::jminus) arrows[i] = jminus;
    }
    std::array<PoissonStructure, 4> taus;
    taus[static_cast<int>(Obj::Mplus)] = tau_of(prb_sp);
    taus[static_cast<int>(Obj::Mminus)] = tau_of(prb_sm);
    taus[static_cast<int>(Obj::M)] = tau_of(prb_vm);
    taus[static_cast<int>(Obj::Mh)] = tau_of(prb_vh);

    // conjugate everything by seeded invertible changes of basis
    std::array<BasisChange, 4> bc;
    for (int i = 0; i < 4; ++i) bc[i] = invertible_change(rng, objs[i]);
    std::array<ComplexPtr, 4> cobjs;
    std::array<ChainMap, 4> carrows;
    std::array<PoissonStructure, 4> ctaus;
    for (int i = 0; i < 4; ++i) {
        cobjs[i] = bc[i].fwd.tgt;
        ctaus[i] = pullback_poisson(bc[i].back, taus[i]);
    }
    for (int i = 0; i < 4; ++i) {
        Mor f = kArrows[i];
        int si = static_cast<int>(source(f)), ti = static_cast<int>(target(f));
        carrows[i] = compose(bc[ti].fwd, compose(arrows[i], bc[si].back));
    }
    PoissonRceDiagram pd;
    pd.d = RceDiagram(std::move(cobjs), std::move(carrows));
    pd.tau = std::move(ctaus);
    pd.validate();
    return pd;
}

ChainMap generate_quasi_iso(unsigned seed, const GeneratorDims& dims) {
    Rng rng(0xc2b2ae3d27d4eb4fULL ^ seed);
    ComplexPtr h = zero_diff_complex(rng, dims, "h", true);
    SumComplex v = direct_sum(h, acyclic_cone(rng, dims, "av"));
    SumComplex w = direct_sum(h, acyclic_cone(rng, dims, "aw"));
    ChainMap raw = compose(w.incl_left, v.proj_left);
    BasisChange pv = invertible_change(rng, v.cx);
    BasisChange pw = invertible_change(rng, w.cx);
    return compose(pw.fwd, compose(raw, pv.back));
}

ZAction generate_z_action(unsigned seed, const GeneratorDims& dims) {
    Rng rng(0x165667b19e3779f9ULL ^ seed);
    ComplexPtr h = zero_diff_complex(rng, dims, "h", true);
    SumComplex y0 = direct_sum(h, acyclic_cone(rng, dims, "ay"));

    // automorphism: seeded invertible on the zero-differential core, identity
    // on the acyclic part
    auto [core_fwd, core_back] = seeded_automorphism(rng, h);
    ChainMap auto_fwd = compose(y0.incl_left, compose(core_fwd, y0.proj_left)) +
                        compose(y0.incl_right, y0.proj_right);
    ChainMap auto_back = compose(y0.incl_left, compose(core_back, y0.proj_left)) +
                         compose(y0.incl_right, y0.proj_right);

    BasisChange p = invertible_change(rng, y0.cx);
    ZAction z;
    z.y = p.fwd.tgt;
    z.gen = compose(p.fwd, compose(auto_fwd, p.back));
    z.gen_inv = compose(p.fwd, compose(auto_back, p.back));
    require_chain_map(z.gen, "generate_z_action");
    GradedMap resid = compose(z.gen, z.gen_inv) - GradedMap::identity(z.y);
    if (!resid.is_zero()) throw std::logic_error("generate_z_action: inverse failed");
    return z;
}

DerivedCcr build_derived_ccr(unsigned seed, int level_window, int cap,
                             const GeneratorDims& dims) {
    DerivedCcr dc;
    dc.pd = std::make_shared<PoissonRceDiagram>(generate_diagram(seed, dims));
    dc.ctx = std::make_shared<ZigzagContext>(ZigzagContext::build(dc.pd->d));
    const RceDiagram& d = dc.pd->d;

    auto add_sym = [&](const DerivedSymbol& s) {
        int id = static_cast<int>(dc.symbol_of.size());
        dc.symbol_of.push_back(s);
        dc.id_of[s] = id;
        dc.cfg.gens.push_back(
            {s.total_degree(), s.level, symbol_name(d, s)});
    };
    for (int n = -level_window; n <= level_window + 1; ++n)
        for (Obj o : kObjects) {
            const ComplexPtr& c = d.at(o);
            for (int deg : c->degrees())
                for (int i = 0; i < c->dim(deg); ++i) add_sym(node_symbol(n, o, deg, i));
        }
    for (int n = -level_window; n <= level_window; ++n)
        for (Mor f : kArrows) {
            const ComplexPtr& c = d.at(source(f));
            for (int deg : c->degrees())
                for (int i = 0; i < c->dim(deg); ++i) add_sym(edge_symbol(n, f, deg, i));
        }

    auto ctx = dc.ctx;
    auto pd = dc.pd;
    auto symbol_of = std::make_shared<std::vector<DerivedSymbol>>(dc.symbol_of);
    auto id_of = std::make_shared<std::map<DerivedSymbol, int>>(dc.id_of);
    auto diagram = std::make_shared<RceDiagram>(d);
    dc.cfg.tau = [ctx, pd, symbol_of](int a, int b) {
        return tau_L_eval(*ctx, *pd, (*symbol_of)[a], (*symbol_of)[b]);
    };
    dc.cfg.diff = [diagram, symbol_of, id_of](int g) {
        DerivedElement e;
        add_term(e, (*symbol_of)[g], Rational(1));
        std::map<int, Rational> out;
        for (const auto& [s, c] : tilde_differential(*diagram, e)) out[id_of->at(s)] = c;
        return out;
    };
    dc.cfg.cap = cap;
    return dc;
}

CcrMorphism rce_ccr_morphism(const DerivedCcr& dc, int direction) {
    auto symbol_of = std::make_shared<std::vector<DerivedSymbol>>(dc.symbol_of);
    auto id_of = std::make_shared<std::map<DerivedSymbol, int>>(dc.id_of);
    CcrMorphism f;
    f.src = &dc.cfg;
    f.tgt = &dc.cfg;
    f.on_gen = [symbol_of, id_of, direction](int g) {
        DerivedSymbol s = (*symbol_of)[g];
        s.level += direction;
        auto it = id_of->find(s);
        if (it == id_of->end())
            throw std::out_of_range("rce_ccr: shifted generator leaves the window");
        return std::map<int, Rational>{{it->second, Rational(1)}};
    };
    return f;
}

}  // namespace rce
