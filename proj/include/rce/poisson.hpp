#pragma once

#include <optional>
#include <string>

#include "rce/zigzag.hpp"

namespace rce {

// Graded-antisymmetric chain pairing tau : V ^ V -> Q (Q in degree 0),
// stored as one matrix per degree pair (k, -k).
class PoissonStructure {
  public:
    PoissonStructure() = default;
    PoissonStructure(ComplexPtr v, std::map<int, QMat> pair);

    static PoissonStructure zero(ComplexPtr v) { return PoissonStructure(std::move(v), {}); }

    const ComplexPtr& complex() const { return v_; }
    Rational eval_basis(int deg_a, int idx_a, int deg_b, int idx_b) const;
    Rational eval(const GradedVec& a, const GradedVec& b) const;
    const std::map<int, QMat>& pairs() const { return pair_; }

  private:
    ComplexPtr v_;
    std::map<int, QMat> pair_;  // pair_[k](i,j) = tau(e^k_i (x) e^{-k}_j)
};

// tau o (f ^ f) for a chain map f into the carrier of tau.
PoissonStructure pullback_poisson(const ChainMap& f, const PoissonStructure& tau);

// Diagram whose objects carry Poisson structures preserved exactly by the
// four arrows (validated on all basis pairs).
struct PoissonRceDiagram {
    RceDiagram d;
    std::array<PoissonStructure, 4> tau;  // indexed by Obj

    const PoissonStructure& at(Obj n) const { return tau[static_cast<int>(n)]; }
    void validate() const;
};

// Symbol-pair combination used while differentiating tensor arguments.
struct SymbolPairTerm {
    DerivedSymbol a, b;
    Rational c;
};

// The derived Poisson structure on Tot of the bar bicomplex, as an evaluation
// rule on pairs of basis symbols (all four displayed components).
Rational tau_L_eval(const ZigzagContext& ctx, const PoissonRceDiagram& pd, const DerivedSymbol& a,
                    const DerivedSymbol& b);
Rational tau_L_eval(const ZigzagContext& ctx, const PoissonRceDiagram& pd, const DerivedElement& a,
                    const DerivedElement& b);

// One-sided variant: antisymmetrization of the first displayed term only;
// equals tau_L_eval by the braiding-invariance of the components.
Rational tau_L_eval_one_term_antisym(const ZigzagContext& ctx, const PoissonRceDiagram& pd,
                                     const DerivedSymbol& a, const DerivedSymbol& b);

struct TauWitness {
    std::string what;
    std::string detail;
};

// Chain-map conditions of the derived Poisson structure plus Z-invariance,
// on all symbol pairs within |level| <= window. Returns the first violation.
std::optional<TauWitness> verify_tau_L(const ZigzagContext& ctx, const PoissonRceDiagram& pd,
                                       int window);

// Compatibility homotopy rho_N on Q(L)(N) symbol pairs (nonzero components in
// vertical degrees 0 and 1 only).
Rational rho_N_eval(const ZigzagContext& ctx, const PoissonRceDiagram& pd, Obj n, const QSymbol& a,
                    const QSymbol& b);

// tau_L o (eta ^ eta) - tau_N o (q ^ q) = rho_N o d_tot, on all basis pairs of
// Q(L)(N). Returns the first violation.
std::optional<TauWitness> verify_rho_relations(const ZigzagContext& ctx,
                                               const PoissonRceDiagram& pd, Obj n,
                                               const QRes& res);

// rho_{N'} o (Q(h) ^ Q(h)) = rho_N for every morphism h.
std::optional<TauWitness> naturality_check_rho(const ZigzagContext& ctx,
                                               const PoissonRceDiagram& pd);

}  // namespace rce
