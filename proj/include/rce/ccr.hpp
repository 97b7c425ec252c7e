#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rce/rational.hpp"

namespace rce {

// Normal-ordered dg-algebra with relations
//   v w - (-1)^{|v||w|} w v = lambda_q tau(v,w) 1.
// Generators are drawn from a finite window basis; words are kept in canonical
// normal order (non-decreasing in the (degree, level, label) order; a repeated
// generator is allowed only in even degree, odd squares reduce to scalars).
struct CcrConfig {
    struct Gen {
        int degree = 0;
        int level = 0;
        std::string label;
    };
    std::vector<Gen> gens;
    std::function<Rational(int, int)> tau;                    // on generator ids
    std::function<std::map<int, Rational>(int)> diff;         // d(gen) as combo of gens
    Rational lambda_q = Rational(1);
    int cap = 6;

    bool less(int a, int b) const {
        const Gen& x = gens[a];
        const Gen& y = gens[b];
        return std::tie(x.degree, x.level, x.label) < std::tie(y.degree, y.level, y.label);
    }
    bool equal_key(int a, int b) const {
        const Gen& x = gens[a];
        const Gen& y = gens[b];
        return std::tie(x.degree, x.level, x.label) == std::tie(y.degree, y.level, y.label);
    }
};

using Word = std::vector<int>;
using CcrElement = std::map<Word, Rational>;

struct CapOverflow : std::length_error {
    CapOverflow() : std::length_error("ccr: word cap overflow") {}
};

CcrElement ccr_unit();
CcrElement ccr_gen(int id);
CcrElement ccr_add(const CcrElement& a, const CcrElement& b);
CcrElement ccr_scale(CcrElement a, const Rational& s);
bool ccr_is_zero(const CcrElement& a);

// Rewrites a raw word to normal order, emitting tau terms.
CcrElement ccr_normalize(const CcrConfig& cfg, const Word& w, const Rational& coeff);

CcrElement ccr_mul(const CcrConfig& cfg, const CcrElement& a, const CcrElement& b);

// Graded derivation extending the generator differential.
CcrElement ccr_differential(const CcrConfig& cfg, const CcrElement& a);

// Algebra morphism induced by a tau-preserving chain map on generators.
struct CcrMorphism {
    const CcrConfig* src = nullptr;
    const CcrConfig* tgt = nullptr;
    std::function<std::map<int, Rational>(int)> on_gen;
};

struct TauNotPreserved : std::invalid_argument {
    explicit TauNotPreserved(const std::string& w) : std::invalid_argument(w) {}
};

// Checks tau-preservation and d-compatibility on all generator pairs; throws
// TauNotPreserved with a witness pair otherwise.
CcrMorphism ccr_map(const CcrConfig& src, const CcrConfig& tgt,
                    std::function<std::map<int, Rational>(int)> on_gen);

CcrElement ccr_apply(const CcrMorphism& f, const CcrElement& a);

// "coeff * [gen1, gen2, ...]" lines, one per word, in word order.
std::string ccr_to_string(const CcrConfig& cfg, const CcrElement& a);

}  // namespace rce
