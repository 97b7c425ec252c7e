#include "rce/serialize.hpp"

namespace rce {

namespace {

Json qmat_to_json(const QMat& m) {
    Json t = Json::array();
    for (const auto& e : m.triplets()) t.push_back({e.r, e.c, e.v.str()});
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", t}};
}

QMat qmat_from_json(const Json& j) {
    std::vector<Triplet<Rational>> t;
    for (const auto& e : j.at("entries"))
        t.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                     Rational::parse(e.at(2).get<std::string>())});
    return QMat::from_triplets(j.at("rows").get<int>(), j.at("cols").get<int>(), std::move(t));
}

}  // namespace

Json complex_to_json(const ChainComplex& c) {
    Json degrees = Json::array();
    for (int d : c.degrees()) {
        Json diff = qmat_to_json(c.diff(d));
        degrees.push_back({{"degree", d}, {"labels", c.labels(d)}, {"diff", diff}});
    }
    return Json{{"degrees", degrees}};
}

ComplexPtr complex_from_json(const Json& j) {
    std::map<int, std::vector<std::string>> basis;
    std::map<int, QMat> diffs;
    for (const auto& d : j.at("degrees")) {
        int deg = d.at("degree").get<int>();
        basis[deg] = d.at("labels").get<std::vector<std::string>>();
        diffs[deg] = qmat_from_json(d.at("diff"));
    }
    return ChainComplex::make(std::move(basis), std::move(diffs));
}

Json graded_map_to_json(const GradedMap& f) {
    Json comps = Json::array();
    for (const auto& [m, q] : f.comp) comps.push_back({{"degree", m}, {"matrix", qmat_to_json(q)}});
    return Json{{"shift", f.shift}, {"components", comps}};
}

GradedMap graded_map_from_json(const Json& j, ComplexPtr src, ComplexPtr tgt) {
    GradedMap f = GradedMap::zero(std::move(src), std::move(tgt), j.at("shift").get<int>());
    for (const auto& c : j.at("components"))
        f.set_component(c.at("degree").get<int>(), qmat_from_json(c.at("matrix")));
    return f;
}

Json diagram_to_json(const RceDiagram& d) {
    Json objs = Json::object();
    for (Obj n : kObjects) objs[name(n)] = complex_to_json(*d.at(n));
    Json arrows = Json::object();
    for (Mor f : kArrows) arrows[name(f)] = graded_map_to_json(d.map_of(f));
    return Json{{"objects", objs}, {"arrows", arrows}};
}

RceDiagram diagram_from_json(const Json& j) {
    std::array<ComplexPtr, 4> objs;
    for (Obj n : kObjects)
        objs[static_cast<int>(n)] = complex_from_json(j.at("objects").at(name(n)));
    std::array<ChainMap, 4> arrows;
    for (int i = 0; i < 4; ++i) {
        Mor f = kArrows[i];
        arrows[i] = graded_map_from_json(j.at("arrows").at(name(f)),
                                         objs[static_cast<int>(source(f))],
                                         objs[static_cast<int>(target(f))]);
    }
    return RceDiagram(std::move(objs), std::move(arrows));
}

Json poisson_diagram_to_json(const PoissonRceDiagram& d) {
    Json taus = Json::object();
    for (Obj n : kObjects) {
        Json pairs = Json::array();
        for (const auto& [k, m] : d.at(n).pairs())
            pairs.push_back({{"degree", k}, {"matrix", qmat_to_json(m)}});
        taus[name(n)] = pairs;
    }
    return Json{{"diagram", diagram_to_json(d.d)}, {"tau", taus}};
}

PoissonRceDiagram poisson_diagram_from_json(const Json& j) {
    PoissonRceDiagram pd;
    pd.d = diagram_from_json(j.at("diagram"));
    for (Obj n : kObjects) {
        std::map<int, QMat> pairs;
        for (const auto& p : j.at("tau").at(name(n)))
            pairs[p.at("degree").get<int>()] = qmat_from_json(p.at("matrix"));
        pd.tau[static_cast<int>(n)] = PoissonStructure(pd.d.at(n), std::move(pairs));
    }
    pd.validate();
    return pd;
}

Json equivalence_to_json(const EquivalenceData& e) {
    return Json{{"f", graded_map_to_json(e.f)},
                {"f_inv", graded_map_to_json(e.f_inv)},
                {"lambda", graded_map_to_json(e.lambda)},
                {"gamma", graded_map_to_json(e.gamma)},
                {"xi", graded_map_to_json(e.xi)},
                {"second_stage_refit", e.second_stage_refit}};
}

Json lattice_scenario_to_json(const LatticeScenario& s) {
    Json h = Json::array();
    for (const auto& [v, e] : s.h)
        h.push_back({{"t", v.first},
                     {"x", v.second},
                     {"tt", e.tt.str()},
                     {"tx", e.tx.str()},
                     {"xx", e.xx.str()}});
    return Json{{"T", s.T}, {"X", s.X}, {"margin", s.margin}, {"gap", s.gap}, {"h", h}};
}

LatticeScenario lattice_scenario_from_json(const Json& j) {
    LatticeScenario s;
    s.T = j.at("T").get<int>();
    s.X = j.at("X").get<int>();
    if (j.count("margin")) s.margin = j.at("margin").get<int>();
    if (j.count("gap")) s.gap = j.at("gap").get<int>();
    for (const auto& e : j.at("h")) {
        Sym2Q m{Rational::parse(e.at("tt").get<std::string>()),
                Rational::parse(e.at("tx").get<std::string>()),
                Rational::parse(e.at("xx").get<std::string>())};
        s.h[{e.at("t").get<int>(), e.at("x").get<int>()}] = m;
    }
    s.validate();
    return s;
}

std::string json_hash(const Json& j) {
    std::string s = j.dump();
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[32];
    snprintf(buf, sizeof(buf), "%016llx", h);
    return buf;
}

}  // namespace rce
