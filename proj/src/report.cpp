#include "graph_sections/report.hpp"

namespace graph_sections {

ordered_json to_json(const Scalar& s) { return s.to_string(); }

ordered_json to_json(const FunctionOnV& f)
{
    ordered_json out = ordered_json::object();
    for (const auto& [k, v] : f.support())
        out[k.to_string()] = v.to_string();
    return out;
}

ordered_json to_json(const std::vector<Scalar>& v)
{
    ordered_json out = ordered_json::array();
    for (const auto& x : v)
        out.push_back(x.to_string());
    return out;
}

ordered_json to_json(const Enumeration& e)
{
    ordered_json entries = ordered_json::array();
    for (std::size_t i = 0; i < e.size(); ++i)
        entries.push_back({{"position", i + 1}, {"vertex", e.at(i).to_string()}, {"layer", e.layer[i]}});
    return entries;
}

ordered_json to_json(const MaxPrincipleCertificate& c)
{
    ordered_json out{{"vertex", c.vertex.to_string()}, {"status", to_string(c.status)}, {"radius_used", c.radius_used}};
    if (c.witness)
        out["witness"] = to_json(*c.witness);
    return out;
}

ordered_json to_json(const PropagationCertificate& c, const Enumeration& e)
{
    ordered_json out{{"certified", c.certified}, {"window_only", c.window_only}};
    ordered_json traces = ordered_json::array();
    for (std::size_t j = 0; j < c.traces.size(); ++j) {
        ordered_json t{{"position", j + 1}, {"vertex", e.at(j).to_string()}, {"status", to_string(c.statuses[j])}};
        if (const auto& trace = c.traces[j]) {
            ordered_json path = ordered_json::array();
            for (auto p : trace->path)
                path.push_back(e.at(p).to_string());
            t["path"] = path;
            if (trace->exit)
                t["escape"] = trace->exit->to_string();
            else
                t["escape"] = "strict";
        } else {
            t["path"] = nullptr;
        }
        traces.push_back(std::move(t));
    }
    out["traces"] = std::move(traces);
    return out;
}

ordered_json to_json(const std::vector<Residual>& residuals)
{
    ordered_json table = ordered_json::object();
    bool zero = true;
    for (const auto& r : residuals) {
        table[r.vertex.to_string()] = r.value.to_string();
        zero = zero && r.value.is_zero();
    }
    return {{"positions", residuals.size()}, {"all_zero", zero}, {"residuals", std::move(table)}};
}

ordered_json to_json(const SectionSolution& s)
{
    return {{"k", s.k},
            {"determinant", to_json(s.determinant)},
            {"residual_checked", s.residual_checked},
            {"solution", to_json(s.f)}};
}

ordered_json to_json(const StabilizationReport& r, const Enumeration& e)
{
    ordered_json positions = ordered_json::array();
    for (std::size_t j = 0; j < r.traces.size(); ++j) {
        ordered_json trace = ordered_json::array();
        for (const auto& [k, value] : r.traces[j])
            trace.push_back({{"k", k}, {"value", value.to_string()}});
        positions.push_back(
            {{"position", j + 1}, {"vertex", e.at(j).to_string()}, {"stable", static_cast<bool>(r.stable[j])},
             {"trace", std::move(trace)}});
    }
    return {{"ladder", r.ladder}, {"window", r.window}, {"positions", std::move(positions)}};
}

} // namespace graph_sections
