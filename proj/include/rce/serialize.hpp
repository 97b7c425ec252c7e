#pragma once

#include "rce/equivalence.hpp"
#include "rce/poisson.hpp"
#include "rce/site.hpp"
#include "rce/ym.hpp"

// vendored single-header json
#include <json.hpp>

namespace rce {

using Json = nlohmann::json;

Json complex_to_json(const ChainComplex& c);
ComplexPtr complex_from_json(const Json& j);

Json graded_map_to_json(const GradedMap& f);
GradedMap graded_map_from_json(const Json& j, ComplexPtr src, ComplexPtr tgt);

Json diagram_to_json(const RceDiagram& d);
RceDiagram diagram_from_json(const Json& j);

Json poisson_diagram_to_json(const PoissonRceDiagram& d);
PoissonRceDiagram poisson_diagram_from_json(const Json& j);

Json equivalence_to_json(const EquivalenceData& e);

Json lattice_scenario_to_json(const LatticeScenario& s);
LatticeScenario lattice_scenario_from_json(const Json& j);

// stable content hash (FNV-1a over the canonical dump)
std::string json_hash(const Json& j);

}  // namespace rce
