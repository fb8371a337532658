#pragma once

#include "gsd/linf.hpp"
#include "gsd/quantize.hpp"
#include "gsd/zk.hpp"

#include <string>

// vendor single-header nlohmann/json; ordered_json keeps key order stable so
// identical configs produce byte-identical reports.
#include <json.hpp>

namespace gsd {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Diagram config: algebras (id, variables, cone), morphisms (substitutions
// as poly literals), multiplications default to commutative multiply-images
// unless overridden by cochain literals; morphism cochains can likewise be
// overridden (that is how a non-multiplicative "morphism" is modelled).
SpanDiagram diagram_from_json(const Json& j);
SpanDiagram load_diagram(const std::string& path);

// Cochain literal: { "sources": [...], "target": ..., "terms": [ { "coeff":
// "<poly>", "slots": [ { "pullback": "<morphism id|identity>", "derivs":
// {"var": order} } ] } ] }.
Cochain cochain_from_json(const Json& j, const std::map<std::string, AlgebraPtr>& algebras,
                          const std::map<std::string, MorphismPtr>& morphisms);

// Bivector config: { "dim": d, "vars": [...], "coeffs": { "1,2": "<poly>" } }
// with 1-based coordinate indices.
Bivector bivector_from_json(const Json& j, const AlgebraPtr& chart);
Bivector load_bivector(const std::string& path, const AlgebraPtr& chart);

Json report_json(const DiagramReport& rep);
Json report_json(const ZkGeometry& g, const VerdictReport& rep);

struct McOrderRow {
    int n;
    bool g_zero;
    bool a_zero;
    std::string counterexample;
};
Json mc_report_json(const std::vector<McOrderRow>& rows);

} // namespace gsd
