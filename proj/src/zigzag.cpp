#include "rce/zigzag.hpp"

#include <stdexcept>

namespace rce {

ZigzagContext::ZigzagContext(RceDiagram d, std::map<Mor, EquivalenceData> eq)
    : d_(std::move(d)), eq_(std::move(eq)) {
    for (Mor f : kArrows) {
        auto it = eq_.find(f);
        if (it == eq_.end()) throw std::invalid_argument("ZigzagContext: missing data for " + name(f));
        if (!verify_equivalence(it->second))
            throw std::invalid_argument("ZigzagContext: invalid equivalence data for " + name(f));
    }
}

ZigzagContext ZigzagContext::build(RceDiagram d) {
    std::map<Mor, EquivalenceData> eq;
    for (Mor f : kArrows) eq.emplace(f, build_equivalence(d.map_of(f)));
    return ZigzagContext(std::move(d), std::move(eq));
}

ZigzagContext ZigzagContext::unchecked(RceDiagram d, std::map<Mor, EquivalenceData> eq) {
    ZigzagContext ctx;
    ctx.d_ = std::move(d);
    ctx.eq_ = std::move(eq);
    return ctx;
}

const EquivalenceData& ZigzagContext::data(Mor f) const { return eq_.at(f); }

const ChainMap& ZigzagContext::z_map(const SpiralNode& src, const SpiralNode& dst) const {
    auto key = std::pair<int, int>(spiral_coord(src), spiral_coord(dst));
    auto it = zmemo_.find(key);
    if (it != zmemo_.end()) return it->second;
    ChainMap z = GradedMap::identity(d_.at(src.obj));
    for (const PathStep& st : spiral_path(src, dst)) {
        const ChainMap& step = st.along ? d_.map_of(st.edge.mor) : eq_.at(st.edge.mor).f_inv;
        z = compose(step, z);
    }
    return zmemo_.emplace(key, std::move(z)).first->second;
}

AlignmentCase ZigzagContext::classify_edge_node(const SpiralEdge& e, const SpiralNode& v) const {
    int cs = spiral_coord(edge_source(e)), ct = spiral_coord(edge_target(e));
    int cv = spiral_coord(v);
    // A2 iff the target end of e faces v (f points against the zig-zag from v)
    return std::abs(cv - ct) < std::abs(cv - cs) ? AlignmentCase::A2 : AlignmentCase::A1;
}

AlignmentCase ZigzagContext::classify_node_edge(const SpiralNode& v, const SpiralEdge& e) const {
    int cs = spiral_coord(edge_source(e)), ct = spiral_coord(edge_target(e));
    int cv = spiral_coord(v);
    // B2 iff the source end of e faces v
    return std::abs(cv - cs) < std::abs(cv - ct) ? AlignmentCase::B2 : AlignmentCase::B1;
}

AlignmentCase ZigzagContext::classify_edge_edge(const SpiralEdge& e, const SpiralEdge& ep) const {
    if (e == ep) return AlignmentCase::C5;
    int cs = spiral_coord(edge_source(e)), ct = spiral_coord(edge_target(e));
    int csp = spiral_coord(edge_source(ep)), ctp = spiral_coord(edge_target(ep));
    int dir = (cs + ct) > (csp + ctp) ? 1 : -1;  // direction from e' towards e
    bool ep_towards_e = (ctp - csp) * dir > 0;
    bool e_towards_ep = (ct - cs) * dir < 0;
    if (ep_towards_e && e_towards_ep) return AlignmentCase::C1;
    if (!ep_towards_e && !e_towards_ep) return AlignmentCase::C2;
    if (ep_towards_e) return AlignmentCase::C3;
    return AlignmentCase::C4;
}

GradedMap ZigzagContext::lambda_left(int level, Mor f, const SpiralNode& v) const {
    if (is_identity(f)) {
        const ComplexPtr& src = d_.at(v.obj);
        return GradedMap::zero(src, d_.at(target(f)), 1);
    }
    auto key = std::tuple<int, int, int>(level, static_cast<int>(f), spiral_coord(v));
    auto it = lmemo_.find(key);
    if (it != lmemo_.end()) return it->second;
    SpiralEdge e{level, f};
    GradedMap r = classify_edge_node(e, v) == AlignmentCase::A1
                      ? GradedMap::zero(d_.at(v.obj), d_.at(target(f)), 1)
                      : compose(eq_.at(f).lambda, z_map(v, edge_target(e)));
    return lmemo_.emplace(key, std::move(r)).first->second;
}

GradedMap ZigzagContext::gamma_right(const SpiralNode& v, int level, Mor fp) const {
    if (is_identity(fp)) return GradedMap::zero(d_.at(source(fp)), d_.at(v.obj), 1);
    auto key = std::tuple<int, int, int>(level, static_cast<int>(fp), spiral_coord(v));
    auto it = gmemo_.find(key);
    if (it != gmemo_.end()) return it->second;
    SpiralEdge e{level, fp};
    GradedMap r = classify_node_edge(v, e) == AlignmentCase::B1
                      ? GradedMap::zero(d_.at(source(fp)), d_.at(v.obj), 1)
                      : compose(z_map(edge_source(e), v), eq_.at(fp).gamma);
    return gmemo_.emplace(key, std::move(r)).first->second;
}

GradedMap ZigzagContext::xi_two(int level, Mor f, int level_p, Mor fp) const {
    ComplexPtr src = d_.at(source(fp));
    ComplexPtr tgt = d_.at(target(f));
    if (is_identity(f) || is_identity(fp)) return GradedMap::zero(src, tgt, 2);
    auto key = std::tuple<int, int, int, int>(level, static_cast<int>(f), level_p,
                                              static_cast<int>(fp));
    auto it = xmemo_.find(key);
    if (it != xmemo_.end()) return it->second;
    SpiralEdge e{level, f}, ep{level_p, fp};
    GradedMap r = GradedMap::zero(src, tgt, 2);
    switch (classify_edge_edge(e, ep)) {
        case AlignmentCase::C5: r = eq_.at(f).xi; break;
        case AlignmentCase::C4:
            r = compose(eq_.at(f).lambda,
                        compose(z_map(edge_source(ep), edge_target(e)), eq_.at(fp).gamma));
            break;
        default: break;
    }
    return xmemo_.emplace(key, std::move(r)).first->second;
}

DerivedElement ZigzagContext::theta_homotopy(int deg, int idx) const {
    // level-1 zig-zag: (0,M) <-i- (1,M-) -j-> (1,Mh) <-j+ (1,M+) -i+> (1,M);
    // transport (1,M,x) right to left. Steps traversed against an arrow use
    //   theta(x) = -(-1)^{|x|} (n, f, L(f)^{-1} x) - (n, target f, lambda_f x),
    // steps along use theta(x) = (-1)^{|x|} (n, f, x).
    DerivedElement out;
    GradedVec cur;  // current transported element, in the complex at the walk position
    {
        QVec x(d_.at(Obj::M)->dim(deg), Rational(0));
        x[idx] = Rational(1);
        cur[deg] = std::move(x);
    }
    for (const PathStep& st : spiral_path({1, Obj::M}, {0, Obj::M})) {
        const SpiralEdge& e = st.edge;
        if (!st.along) {
            // walking target -> source: f points forward along the spiral
            const EquivalenceData& ed = eq_.at(e.mor);
            GradedVec pre = gv_apply(ed.f_inv, cur);
            GradedVec lam = gv_apply(ed.lambda, cur);
            for (const auto& [dg, vec] : pre) {
                Rational sgn(dg % 2 == 0 ? -1 : 1);  // -(-1)^{|x|}
                for (int i = 0; i < static_cast<int>(vec.size()); ++i)
                    add_term(out, edge_symbol(e.level, e.mor, dg, i), sgn * vec[i]);
            }
            Obj tf = target(e.mor);
            for (const auto& [dg, vec] : lam)
                for (int i = 0; i < static_cast<int>(vec.size()); ++i)
                    add_term(out, node_symbol(e.level, tf, dg, i), -vec[i]);
            cur = std::move(pre);
        } else {
            // walking source -> target
            for (const auto& [dg, vec] : cur) {
                Rational sgn(dg % 2 == 0 ? 1 : -1);
                for (int i = 0; i < static_cast<int>(vec.size()); ++i)
                    add_term(out, edge_symbol(e.level, e.mor, dg, i), sgn * vec[i]);
            }
            cur = gv_apply(d_.map_of(e.mor), cur);
        }
    }
    return out;
}

}  // namespace rce
