#include "graph_sections/operator.hpp"

#include <algorithm>
#include <stdexcept>

#include "graph_sections/errors.hpp"

namespace graph_sections {

FunctionOnV::FunctionOnV(std::initializer_list<std::pair<const VertexKey, Scalar>> values)
{
    for (const auto& [k, v] : values)
        set(k, v);
}

Scalar FunctionOnV::operator()(const VertexKey& v) const
{
    auto it = values_.find(v);
    return it == values_.end() ? Scalar() : it->second;
}

void FunctionOnV::set(const VertexKey& v, Scalar value)
{
    if (value.is_zero())
        values_.erase(v);
    else
        values_[v] = std::move(value);
}

void FunctionOnV::add(const VertexKey& v, const Scalar& value) { set(v, (*this)(v) + value); }

FunctionOnV FunctionOnV::scaled(const Scalar& c) const
{
    FunctionOnV out;
    for (const auto& [k, v] : values_)
        out.set(k, v * c);
    return out;
}

FunctionOnV FunctionOnV::to_mode(ScalarMode mode) const
{
    FunctionOnV out;
    for (const auto& [k, v] : values_)
        out.set(k, v.to_mode(mode));
    return out;
}

FunctionOnV operator+(const FunctionOnV& a, const FunctionOnV& b)
{
    FunctionOnV out = a;
    for (const auto& [k, v] : b.values_)
        out.add(k, v);
    return out;
}

bool operator==(const FunctionOnV& a, const FunctionOnV& b)
{
    if (a.values_.size() != b.values_.size())
        return false;
    return std::equal(a.values_.begin(), a.values_.end(), b.values_.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

Scalar StencilRow::coefficient(const VertexKey& w) const
{
    auto it = std::lower_bound(coeffs.begin(), coeffs.end(), w,
                               [](const auto& entry, const VertexKey& key) { return entry.first < key; });
    if (it != coeffs.end() && it->first == w)
        return it->second;
    return Scalar();
}

StencilRow make_row(VertexKey vertex, std::size_t radius, std::vector<std::pair<VertexKey, Scalar>> coeffs)
{
    std::map<VertexKey, Scalar> merged;
    for (auto& [k, c] : coeffs) {
        auto [it, fresh] = merged.emplace(k, c);
        if (!fresh)
            it->second += c;
    }
    StencilRow row{std::move(vertex), radius, {}};
    for (auto& [k, c] : merged)
        if (!c.is_zero())
            row.coeffs.emplace_back(k, std::move(c));
    return row;
}

Rational Potential::at(const VertexKey& v) const
{
    auto it = table.support().find(v);
    if (it == table.support().end())
        return background;
    if (!it->second.is_real() || it->second.mode() == ScalarMode::floating)
        throw NegativeLambda("lambda at \"" + v.to_string() + "\" must be a nonnegative rational");
    return it->second.to_mode(ScalarMode::rational).rational();
}

Operator::Operator(std::string name, Graph graph, RowFn row, ScalarMode mode,
                   std::optional<std::size_t> uniform_radius, std::size_t principle_radius)
    : name_(std::move(name)),
      graph_(std::move(graph)),
      row_(std::move(row)),
      mode_(mode),
      uniform_radius_(uniform_radius),
      principle_radius_(principle_radius)
{
}

StencilRow Operator::row(const VertexKey& v) const
{
    StencilRow r = row_(v);
    if (uniform_radius_ && r.radius > *uniform_radius_)
        throw std::logic_error("row radius exceeds the declared uniform radius of " + name_);
    for (auto& [k, c] : r.coeffs)
        c = c.to_mode(mode_);
    return r;
}

Operator Operator::with_principle_radius(std::size_t radius) const
{
    Operator copy = *this;
    copy.principle_radius_ = radius;
    return copy;
}

StencilRow laplacian_row(const Graph& g, const VertexKey& v)
{
    if (!g.simplicial())
        throw ContractError("laplacian requires a simplicial graph; " + g.describe() + " has loops");
    auto d = degree(g, v);
    if (d == 0)
        throw ZeroDegree("vertex \"" + v.to_string() + "\" has degree 0");
    std::vector<std::pair<VertexKey, Scalar>> coeffs;
    coeffs.emplace_back(v, Scalar(1));
    Scalar off = Scalar::fraction(-1, static_cast<long>(d));
    for (const auto& w : g.neighbors(v).out)
        coeffs.emplace_back(w, off);
    return make_row(v, 1, std::move(coeffs));
}

StencilRow laplacian_plus_lambda_row(const Graph& g, const Potential& lambda, const VertexKey& v)
{
    Rational lam = lambda.at(v);
    if (lam < 0)
        throw NegativeLambda("lambda(\"" + v.to_string() + "\") = " + lam.get_str() + " is negative");
    StencilRow row = laplacian_row(g, v);
    std::vector<std::pair<VertexKey, Scalar>> coeffs = std::move(row.coeffs);
    coeffs.emplace_back(v, Scalar(lam));
    return make_row(v, 1, std::move(coeffs));
}

StencilRow adjacency_row(const Graph& g, const VertexKey& v)
{
    std::vector<std::pair<VertexKey, Scalar>> coeffs;
    for (const auto& w : g.neighbors(v).out)
        coeffs.emplace_back(w, Scalar(1));
    return make_row(v, 1, std::move(coeffs));
}

Operator laplacian(const Graph& g, ScalarMode mode)
{
    return Operator("laplacian", g, [g](const VertexKey& v) { return laplacian_row(g, v); }, mode, 1);
}

Operator laplacian_plus_lambda(const Graph& g, Potential lambda, ScalarMode mode)
{
    if (lambda.background < 0)
        throw NegativeLambda("constant lambda " + lambda.background.get_str() + " is negative");
    for (const auto& [v, value] : lambda.table.support())
        if (lambda.at(v) < 0)
            throw NegativeLambda("lambda(\"" + v.to_string() + "\") = " + value.to_string() + " is negative");
    return Operator(
        "laplacian_plus_lambda", g,
        [g, lambda = std::move(lambda)](const VertexKey& v) { return laplacian_plus_lambda_row(g, lambda, v); }, mode,
        1);
}

Operator adjacency(const Graph& g, ScalarMode mode)
{
    return Operator("adjacency", g, [g](const VertexKey& v) { return adjacency_row(g, v); }, mode, 1);
}

Operator custom_operator(const Graph& g, const RowTable& rows, std::size_t radius, std::optional<Operator> fallback,
                         ScalarMode mode)
{
    std::map<VertexKey, StencilRow> table;
    for (const auto& [v, coeffs] : rows) {
        auto reach = ball(g, v, radius);
        for (const auto& [w, c] : coeffs) {
            if (!c.is_zero() && !reach.count(w))
                throw SupportOutsideBall("row \"" + v.to_string() + "\" has coefficient " + c.to_string() +
                                         " on \"" + w.to_string() + "\" outside its radius-" + std::to_string(radius) +
                                         " ball");
        }
        table.emplace(v, make_row(v, radius, coeffs));
    }
    std::optional<std::size_t> uniform;
    if (!fallback || fallback->uniform_radius())
        uniform = std::max(radius, fallback ? *fallback->uniform_radius() : std::size_t{0});
    std::string name = fallback ? "custom+" + fallback->name() : "custom";
    return Operator(
        std::move(name), g,
        [table = std::move(table), fallback = std::move(fallback)](const VertexKey& v) {
            auto it = table.find(v);
            if (it != table.end())
                return it->second;
            if (fallback)
                return fallback->row(v);
            return StencilRow{v, 0, {}};
        },
        mode, uniform);
}

Scalar apply(const Operator& op, const FunctionOnV& f, const VertexKey& v)
{
    StencilRow row = op.row(v);
    Scalar sum = Scalar::zero(op.mode());
    for (const auto& [w, c] : row.coeffs)
        sum += c * f(w);
    return sum;
}

RowSupport row_support_indices(const Operator& op, const Enumeration& e, std::size_t j,
                               std::optional<std::size_t> window, std::size_t min_radius)
{
    std::size_t limit = std::min(window.value_or(e.size()), e.size());
    if (j >= limit)
        throw std::out_of_range("position " + std::to_string(j) + " outside the window of size " +
                                std::to_string(limit));
    const VertexKey& v = e.at(j);
    StencilRow row = op.row(v);
    RowSupport out;
    for (const auto& w : ball(op.graph(), v, std::max(row.radius, min_radius))) {
        auto pos = e.position(w);
        if (pos && *pos < limit)
            out.positions.push_back(*pos);
    }
    std::sort(out.positions.begin(), out.positions.end());
    for (const auto& [w, c] : row.coeffs) {
        auto pos = e.position(w);
        if (!pos || *pos >= limit)
            out.outside.push_back(w);
    }
    return out;
}

} // namespace graph_sections
