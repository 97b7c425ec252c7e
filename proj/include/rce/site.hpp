#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rce/complex.hpp"

namespace rce {

// The four-object category controlling relative Cauchy evolution: objects
// M, M-, M_h, M+ with inclusions i+ : M+ -> M, j+ : M+ -> M_h,
// j- : M- -> M_h, i- : M- -> M, and no other composites besides identities.
enum class Obj : int { Mminus = 0, Mh = 1, Mplus = 2, M = 3 };
enum class Mor : int {
    id_Mminus = 0,
    id_Mh = 1,
    id_Mplus = 2,
    id_M = 3,
    iplus = 4,
    jplus = 5,
    jminus = 6,
    iminus = 7,
};

constexpr std::array<Obj, 4> kObjects{Obj::Mminus, Obj::Mh, Obj::Mplus, Obj::M};
constexpr std::array<Mor, 4> kArrows{Mor::iplus, Mor::jplus, Mor::jminus, Mor::iminus};

bool is_identity(Mor f);
Obj source(Mor f);
Obj target(Mor f);
Mor identity_of(Obj n);
std::string name(Obj n);
std::string name(Mor f);
std::optional<Obj> obj_by_name(const std::string& s);
std::optional<Mor> arrow_by_name(const std::string& s);

// Localization L : C -> BZ. Sends i- to 1 and everything else to 0.
int localize(Mor f);

// Node (n, N) of the comma-category spiral, and edge (n, f) with source node
// (n + L(f), source f) and target node (n, target f).
struct SpiralNode {
    int level = 0;
    Obj obj = Obj::M;
    friend bool operator==(const SpiralNode&, const SpiralNode&) = default;
};
struct SpiralEdge {
    int level = 0;
    Mor mor = Mor::iplus;  // never an identity
    friend bool operator==(const SpiralEdge&, const SpiralEdge&) = default;
};

SpiralNode edge_source(const SpiralEdge& e);
SpiralNode edge_target(const SpiralEdge& e);

// Linear coordinate of the spiral, straightened to a line; consecutive
// coordinates are joined by exactly one edge.
int spiral_coord(const SpiralNode& n);
SpiralNode node_at_coord(int c);
// The unique edge joining coordinates c and c+1.
SpiralEdge edge_between(int c);

struct PathStep {
    SpiralEdge edge;
    bool along = true;  // true: traversed source -> target
};

// Unique shortest undirected path in the spiral from src to dst; empty iff
// src == dst. Steps are listed in walking order starting at src.
std::vector<PathStep> spiral_path(const SpiralNode& src, const SpiralNode& dst);

// A functor C -> Ch: four complexes plus four chain maps with matching
// endpoints (validated).
class RceDiagram {
  public:
    RceDiagram() = default;
    RceDiagram(std::array<ComplexPtr, 4> objects, std::array<ChainMap, 4> arrows);

    const ComplexPtr& at(Obj n) const { return objects_[static_cast<int>(n)]; }
    // Chain map of any morphism; identities give identity maps.
    ChainMap map_of(Mor f) const;

    bool check_homotopy_time_slice() const;

  private:
    std::array<ComplexPtr, 4> objects_{};
    std::array<ChainMap, 4> arrows_{};  // indexed by arrow order in kArrows
};

}  // namespace rce
