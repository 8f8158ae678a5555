#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "graph_sections/graph.hpp"
#include "graph_sections/maxprinciple.hpp"
#include "graph_sections/operator.hpp"
#include "graph_sections/scalar.hpp"
#include "graph_sections/solver.hpp"

namespace graph_sections {

using ordered_json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;

/// Rationals always serialize as "p/q" strings ("p" for integers).
ordered_json to_json(const Scalar& s);
/// Table {"<vertexkey>": "p/q", ...} in ascending key order.
ordered_json to_json(const FunctionOnV& f);
ordered_json to_json(const std::vector<Scalar>& v);
ordered_json to_json(const Enumeration& e);
ordered_json to_json(const MaxPrincipleCertificate& c);
ordered_json to_json(const PropagationCertificate& c, const Enumeration& e);
ordered_json to_json(const std::vector<Residual>& residuals);
ordered_json to_json(const SectionSolution& s);
ordered_json to_json(const StabilizationReport& r, const Enumeration& e);

} // namespace graph_sections
