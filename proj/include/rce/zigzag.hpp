#pragma once

#include <map>
#include <memory>

#include "rce/bar_kan.hpp"
#include "rce/equivalence.hpp"
#include "rce/site.hpp"

namespace rce {

enum class AlignmentCase { A1, A2, B1, B2, C1, C2, C3, C4, C5 };

// Diagram plus chosen equivalence data per arrow; identity morphisms always
// carry the pinned all-zero data. Z maps are memoized; the context is
// immutable after construction so cached reads are safe to share.
class ZigzagContext {
  public:
    ZigzagContext(RceDiagram d, std::map<Mor, EquivalenceData> eq);

    // Context with solver-built equivalence data for all four arrows.
    static ZigzagContext build(RceDiagram d);

    // Skips the validity check of the supplied data; used by the
    // negative-control suites to inject corrupted coherence data.
    static ZigzagContext unchecked(RceDiagram d, std::map<Mor, EquivalenceData> eq);

    const RceDiagram& diagram() const { return d_; }
    const EquivalenceData& data(Mor f) const;

    // Composite of L(f) along and L(f)^{-1} against the shortest path.
    const ChainMap& z_map(const SpiralNode& src, const SpiralNode& dst) const;

    // Case analysis for (edge, node), (node, edge) and (edge, edge) alignment.
    AlignmentCase classify_edge_node(const SpiralEdge& e, const SpiralNode& v) const;
    AlignmentCase classify_node_edge(const SpiralNode& v, const SpiralEdge& e) const;
    AlignmentCase classify_edge_edge(const SpiralEdge& e, const SpiralEdge& ep) const;

    // Zig-zagging homotopy for left composition: satisfies
    //   L(f) Z^{source e}_{v} - Z^{target e}_{v} = d(Lambda).
    // Identity morphisms give the zero map.
    GradedMap lambda_left(int level, Mor f, const SpiralNode& v) const;

    // Zig-zagging homotopy for right composition: satisfies
    //   Z^{v}_{target e'} L(f') - Z^{v}_{source e'} = d(Gamma).
    GradedMap gamma_right(const SpiralNode& v, int level, Mor fp) const;

    // Zig-zagging 2-homotopy: satisfies
    //   L(f) Gamma^{source e} - Gamma^{target e} + Lambda_{source e'} -
    //   Lambda_{target e'} L(f') = d(Xi).
    GradedMap xi_two(int level, Mor f, int level_p, Mor fp) const;

    // Homotopy of the Prop 6.1 square: rce_lin . iota - iota . Z^{(0,M)}_{(1,M)}
    // = d(theta), built from the four step homotopies along the level-1 zig-zag.
    DerivedElement theta_homotopy(int deg, int idx) const;

  private:
    ZigzagContext() = default;

    RceDiagram d_;
    std::map<Mor, EquivalenceData> eq_;
    mutable std::map<std::pair<int, int>, ChainMap> zmemo_;
    mutable std::map<std::tuple<int, int, int>, GradedMap> lmemo_, gmemo_;
    mutable std::map<std::tuple<int, int, int, int>, GradedMap> xmemo_;
};

}  // namespace rce
