#pragma once

#include "rce/complex.hpp"

namespace rce {

// Quasi-inverse with homotopy coherence data:
//   f f_inv - id = d(lambda),  f_inv f - id = d(gamma),
//   f gamma - lambda f = d(xi).
struct EquivalenceData {
    ChainMap f;
    ChainMap f_inv;
    GradedMap lambda;  // shift 1 endomorphism data on the target
    GradedMap gamma;   // shift 1 endomorphism data on the source
    GradedMap xi;      // shift 2 from source to target
    bool second_stage_refit = false;  // true if (lambda,gamma,xi) were re-solved jointly
};

struct NotQuasiIso : std::invalid_argument {
    NotQuasiIso() : std::invalid_argument("build_equivalence: not a quasi-isomorphism") {}
};

// Identity input gives identity inverse and all-zero homotopies. Construction
// is deterministic (lowest-index pivoting in the exact solves).
EquivalenceData build_equivalence(const ChainMap& f);

EquivalenceData identity_equivalence(const ComplexPtr& c);

bool verify_equivalence(const EquivalenceData& e);

}  // namespace rce
