#pragma once

#include <functional>
#include <random>

#include "rce/ccr.hpp"
#include "rce/poisson.hpp"
#include "rce/ym.hpp"

namespace rce {

// Deterministic generator: explicit draws from a fixed engine so results are
// identical across platforms and runs for the same seed.
class Rng {
  public:
    explicit Rng(unsigned long long seed) : e_(seed) {}
    int below(int n) { return static_cast<int>(e_() % static_cast<unsigned long long>(n)); }
    int range(int lo, int hi) { return lo + below(hi - lo + 1); }
    Rational small_rational(int max_num = 4, int max_den = 3) {
        long num = range(-max_num, max_num);
        long den = range(1, max_den);
        return Rational(num, den);
    }
    Rational small_nonzero(int max_num = 4, int max_den = 3) {
        Rational r = small_rational(max_num, max_den);
        return r.is_zero() ? Rational(1) : r;
    }

  private:
    std::mt19937_64 e_;
};

struct GeneratorDims {
    int deg_lo = -2;
    int deg_hi = 3;
    int max_dim = 2;  // per-degree dimension bound of the homology core
};

// Seeded Poisson diagram satisfying the homotopy time-slice axiom by
// construction: a common core with homology plus acyclic cones, extended by
// acyclic summands per object, block inclusions as arrows, and everything
// conjugated by seeded invertible changes of basis. tau lives on the homology
// core and is extended by zero, so all four arrows preserve it exactly.
PoissonRceDiagram generate_diagram(unsigned seed, const GeneratorDims& dims = {});

// Seeded quasi-isomorphism between conjugated core-plus-acyclic complexes.
ChainMap generate_quasi_iso(unsigned seed, const GeneratorDims& dims = {});

// Seeded complex with a chain automorphism (functor BZ -> Ch).
ZAction generate_z_action(unsigned seed, const GeneratorDims& dims = {});

// CCR configuration over the derived window basis of a diagram, with tau_L as
// the commutation pairing. Generator levels run through [-level_window,
// level_window]; the differential is closed on the window by one extra level
// of node symbols.
struct DerivedCcr {
    CcrConfig cfg;
    std::vector<DerivedSymbol> symbol_of;  // generator id -> derived symbol
    std::map<DerivedSymbol, int> id_of;
    std::shared_ptr<ZigzagContext> ctx;
    std::shared_ptr<PoissonRceDiagram> pd;
};
DerivedCcr build_derived_ccr(unsigned seed, int level_window, int cap,
                             const GeneratorDims& dims = {});

// level shift by +1/-1 as a CCR morphism on the window (defined on words whose
// generators stay inside after the shift)
CcrMorphism rce_ccr_morphism(const DerivedCcr& dc, int direction);

// --- scenario-driven runs ---

struct Scenario {
    std::string mode = "both";  // abstract | lattice | both
    unsigned seed = 1;
    int num_seeds = 5;
    GeneratorDims dims;
    int window = 3;         // level window for tau_L checks
    int counit_window = 4;  // level window for the counit identities
    int coker_depth = 6;
    int ccr_cap = 6;
    int jobs = 1;
    LatticeScenario lattice = LatticeScenario::standard();
    std::vector<std::string> only;  // run only these checks when nonempty
};

struct ReportEntry {
    std::string name;
    std::string anchor;  // stable identifier of the verified statement
    bool pass = false;
    std::string witness;
    double seconds = 0.0;
};

struct Report {
    std::vector<ReportEntry> entries;
    bool all_pass = true;
};

// Named checks available to `verify`; each runs a full seeded sweep.
std::vector<std::string> available_checks();
Report run_scenario(const Scenario& sc);

// --- individual abstract check suites (exact, seeded) ---

CheckResult chk_structural(const Scenario& sc);
CheckResult chk_counit(const Scenario& sc);
CheckResult chk_unit_coker(const Scenario& sc);
CheckResult chk_equivalence(const Scenario& sc);
CheckResult chk_zigzag(const Scenario& sc);
CheckResult chk_theta(const Scenario& sc);
CheckResult chk_tau_derived(const Scenario& sc);
CheckResult chk_tau_negative(const Scenario& sc);
CheckResult chk_rho(const Scenario& sc);
CheckResult chk_rho_negative(const Scenario& sc);
CheckResult chk_ccr(const Scenario& sc);
CheckResult chk_rce_ccr(const Scenario& sc);

}  // namespace rce
