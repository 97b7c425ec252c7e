#pragma once

#include <compare>
#include <functional>
#include <map>
#include <vector>

#include "rce/bicomplex.hpp"
#include "rce/site.hpp"

namespace rce {

// Basis symbol of the two-row bicomplex computing the derived left Kan
// extension along the localization: node symbols (n, N, x) in vertical degree
// 0 and edge symbols (n, f, x) in vertical degree 1, with x a basis element of
// X(N) resp. X(source f).
struct DerivedSymbol {
    int level = 0;
    bool edge = false;
    Mor mor = Mor::id_M;  // identity_of(N) for node symbols
    int deg = 0;
    int idx = 0;

    Obj carrier() const { return edge ? source(mor) : target(mor); }
    int total_degree() const { return deg + (edge ? 1 : 0); }
    auto operator<=>(const DerivedSymbol&) const = default;
};

DerivedSymbol node_symbol(int level, Obj n, int deg, int idx);
DerivedSymbol edge_symbol(int level, Mor f, int deg, int idx);
std::string symbol_name(const RceDiagram& d, const DerivedSymbol& s);

using DerivedElement = std::map<DerivedSymbol, Rational>;

void add_term(DerivedElement& e, const DerivedSymbol& s, const Rational& c);
DerivedElement add(const DerivedElement& a, const DerivedElement& b);
DerivedElement scale(DerivedElement a, const Rational& s);
bool element_is_zero(const DerivedElement& e);

// Total differential (vertical + horizontal) of the derived bicomplex.
DerivedElement tilde_differential(const RceDiagram& d, const DerivedElement& e);

// Z-action: level shift by k; k = 1 is the RCE automorphism for linear
// observables, k = -1 its inverse.
DerivedElement rce_lin(const DerivedElement& e, int k = 1);

// x in X(M) embedded at level 0.
DerivedElement iota(const RceDiagram& d, int deg, const QVec& x);
DerivedElement iota_basis(int deg, int idx);

// Element of a single complex, graded by degree.
using GradedVec = std::map<int, QVec>;
GradedVec gv_add(const GradedVec& a, const GradedVec& b);
GradedVec gv_scale(GradedVec a, const Rational& s);
bool gv_is_zero(const GradedVec& e);
GradedVec gv_apply(const GradedMap& f, const GradedVec& v);

// A complex with a Z-action (functor BZ -> Ch).
struct ZAction {
    ComplexPtr y;
    ChainMap gen;      // action of 1
    ChainMap gen_inv;  // action of -1

    ChainMap power(int k) const;
    // Pullback along the localization: the diagram with every object y and
    // every morphism acting through Y(L(f)).
    RceDiagram pullback() const;
};

// Derived counit data for the pullback diagram of a Z-action.
GradedVec counit_epsilon(const ZAction& z, const DerivedElement& e);
DerivedElement counit_kappa(const GradedVec& v);
DerivedElement counit_rho(const ZAction& z, const DerivedSymbol& s);

// The resolution Q(X)(N): totalization of the bar bicomplex for id : C -> C,
// materialized as a finite chain complex with a symbol table.
struct QSymbol {
    bool edge = false;  // vertical degree 1 symbols (id_N, f, x)
    Mor mor = Mor::id_M;
    int deg = 0;
    int idx = 0;

    int total_degree() const { return deg + (edge ? 1 : 0); }
    auto operator<=>(const QSymbol&) const = default;
};

struct QRes {
    Obj obj = Obj::M;
    ComplexPtr cx;
    std::map<int, std::vector<QSymbol>> table;  // per total degree, basis order
    std::map<QSymbol, int> pos;                 // symbol -> index within its degree
    ChainMap q;  // Q(X)(N) -> X(N): (g,x) -> X(g)x, (g,f,x) -> 0
    ChainMap s;  // X(N) -> Q(X)(N): x -> (id_N, x)
};

QRes q_resolution(const RceDiagram& d, Obj n);

// Post-composition functor map Q(X)(N) -> Q(X)(N') for h : N -> N'.
ChainMap q_functor_map(const RceDiagram& d, const QRes& from, const QRes& to, Mor h);

// Derived unit on a Q-symbol: (g,x) -> (L(g), source g, x), (id,f,x) -> (0,f,x).
DerivedElement derived_unit(const QSymbol& s);

// Certified homotopy witness H with s.q - id = dH + Hd; throws if the solve
// fails (which would mean q is not a quasi-isomorphism).
GradedMap sq_homotopy_witness(const QRes& r);

// Finite filtration stages of coker(phi) on either side of (0,M); acyclic for
// time-slice diagrams.
ComplexPtr coker_stage(const RceDiagram& d, bool right_side, int p);
// True iff all stages up to p_max on both sides are acyclic. Throws
// std::invalid_argument if the diagram fails the homotopy time-slice axiom.
bool coker_acyclicity_check(const RceDiagram& d, int p_max);

// --- general bar construction (arbitrary finite category) ---

// Small category given by explicit morphism data and a composition table.
struct FinCat {
    struct MorData {
        int src = 0, tgt = 0;
        bool is_id = false;
    };
    int n_obj = 0;
    std::vector<MorData> mors;
    std::vector<int> id_of;                 // object -> identity morphism index
    std::vector<std::vector<int>> comp;     // comp[g][f] = g.f, -1 if not composable
    int compose(int g, int f) const { return comp[g][f]; }
};

struct FinDiagram {
    std::vector<ComplexPtr> at;      // per object
    std::vector<ChainMap> map_of;    // per morphism
};

// Reduced bar bicomplex bar(C,C,X)(d) with rows m <= m_max: row m has symbols
// (g, f_1, ..., f_m, x) with target g = d, the f_i non-identity composable, and
// the alternating-sum vertical differential. Returned as a validated
// Bicomplex, so the square-zero and anticommutation axioms are checked on
// construction.
BicomplexPtr general_bar_bicomplex(const FinCat& cat, const FinDiagram& x, int d, int m_max);

// The RCE category as a FinCat, with morphism order id_-, id_h, id_+, id_M,
// i+, j+, j-, i-.
FinCat rce_fincat();
FinDiagram rce_findiagram(const RceDiagram& d);

}  // namespace rce
