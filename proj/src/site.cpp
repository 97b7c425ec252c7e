#include "rce/site.hpp"

#include <cmath>
#include <stdexcept>

namespace rce {

bool is_identity(Mor f) { return static_cast<int>(f) < 4; }

Obj source(Mor f) {
    switch (f) {
        case Mor::iplus:
        case Mor::jplus: return Obj::Mplus;
        case Mor::jminus:
        case Mor::iminus: return Obj::Mminus;
        default: return static_cast<Obj>(static_cast<int>(f));
    }
}

Obj target(Mor f) {
    switch (f) {
        case Mor::iplus:
        case Mor::iminus: return Obj::M;
        case Mor::jplus:
        case Mor::jminus: return Obj::Mh;
        default: return static_cast<Obj>(static_cast<int>(f));
    }
}

Mor identity_of(Obj n) { return static_cast<Mor>(static_cast<int>(n)); }

std::string name(Obj n) {
    switch (n) {
        case Obj::M: return "M";
        case Obj::Mminus: return "M-";
        case Obj::Mh: return "Mh";
        case Obj::Mplus: return "M+";
    }
    return "?";
}

std::string name(Mor f) {
    switch (f) {
        case Mor::iplus: return "i+";
        case Mor::jplus: return "j+";
        case Mor::jminus: return "j-";
        case Mor::iminus: return "i-";
        default: return "id_" + name(static_cast<Obj>(static_cast<int>(f)));
    }
}

std::optional<Obj> obj_by_name(const std::string& s) {
    for (Obj n : kObjects)
        if (name(n) == s) return n;
    return std::nullopt;
}

std::optional<Mor> arrow_by_name(const std::string& s) {
    for (Mor f : kArrows)
        if (name(f) == s) return f;
    return std::nullopt;
}

int localize(Mor f) { return f == Mor::iminus ? 1 : 0; }

SpiralNode edge_source(const SpiralEdge& e) { return {e.level + localize(e.mor), source(e.mor)}; }
SpiralNode edge_target(const SpiralEdge& e) { return {e.level, target(e.mor)}; }

// Straightened spiral, left to right:
//   ... (n-1,M) -- (n,M-) -- (n,Mh) -- (n,M+) -- (n,M) -- (n+1,M-) ...
// with edges i- : (n,M-) -> (n-1,M), j- : (n,M-) -> (n,Mh),
// j+ : (n,M+) -> (n,Mh), i+ : (n,M+) -> (n,M).
int spiral_coord(const SpiralNode& n) { return 4 * n.level + static_cast<int>(n.obj); }

SpiralNode node_at_coord(int c) {
    int p = ((c % 4) + 4) % 4;
    return {(c - p) / 4, static_cast<Obj>(p)};
}

SpiralEdge edge_between(int c) {
    SpiralNode a = node_at_coord(c);
    switch (a.obj) {
        case Obj::Mminus: return {a.level, Mor::jminus};
        case Obj::Mh: return {a.level, Mor::jplus};
        case Obj::Mplus: return {a.level, Mor::iplus};
        case Obj::M: return {a.level, Mor::iminus};
    }
    throw std::logic_error("edge_between");
}

std::vector<PathStep> spiral_path(const SpiralNode& src, const SpiralNode& dst) {
    int a = spiral_coord(src), b = spiral_coord(dst);
    std::vector<PathStep> steps;
    int dir = (b > a) ? 1 : -1;
    for (int c = a; c != b; c += dir) {
        int lo = (dir > 0) ? c : c - 1;
        SpiralEdge e = edge_between(lo);
        int cs = spiral_coord(edge_source(e));
        // walking lo -> lo+1 when dir>0, else lo+1 -> lo
        int from = (dir > 0) ? lo : lo + 1;
        steps.push_back({e, cs == from});
    }
    return steps;
}

RceDiagram::RceDiagram(std::array<ComplexPtr, 4> objects, std::array<ChainMap, 4> arrows)
    : objects_(std::move(objects)), arrows_(std::move(arrows)) {
    for (int i = 0; i < 4; ++i) {
        Mor f = kArrows[i];
        const ChainMap& m = arrows_[i];
        if (m.src != at(source(f)) || m.tgt != at(target(f)))
            throw std::invalid_argument("RceDiagram: endpoints of " + name(f) + " do not match");
        require_chain_map(m, "RceDiagram");
    }
}

ChainMap RceDiagram::map_of(Mor f) const {
    if (is_identity(f)) return GradedMap::identity(at(static_cast<Obj>(static_cast<int>(f))));
    for (int i = 0; i < 4; ++i)
        if (kArrows[i] == f) return arrows_[i];
    throw std::logic_error("map_of");
}

bool RceDiagram::check_homotopy_time_slice() const {
    for (Mor f : kArrows)
        if (!is_quasi_iso(map_of(f))) return false;
    return true;
}

}  // namespace rce
