#include "graph_sections/sections.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "graph_sections/errors.hpp"

namespace graph_sections {

namespace {

void require_length(const Enumeration& e, std::size_t k)
{
    if (k == 0)
        throw std::invalid_argument("section size must be positive");
    if (e.size() < k)
        throw EnumerationTooShort("enumeration has " + std::to_string(e.size()) + " entries, section needs " +
                                  std::to_string(k));
}

} // namespace

SectionMatrix build_section(const Operator& op, const Enumeration& e, std::size_t k)
{
    require_length(e, k);
    SectionMatrix s{k, e, Matrix(k, k, op.mode())};
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& [w, c] : op.row(e.at(i)).coeffs) {
            auto j = e.position(w);
            if (j && *j < k)
                s.entries(i, *j) = c;
        }
    }
    return s;
}

RowsMatrix build_rows_matrix(const Operator& op, const Enumeration& e, std::size_t k)
{
    require_length(e, k);
    std::vector<StencilRow> rows;
    rows.reserve(k);
    std::set<VertexKey> extra;
    for (std::size_t i = 0; i < k; ++i) {
        rows.push_back(op.row(e.at(i)));
        for (const auto& [w, c] : rows.back().coeffs) {
            auto j = e.position(w);
            if (!j || *j >= k)
                extra.insert(w);
        }
    }

    RowsMatrix m;
    m.k = k;
    m.columns.assign(e.order.begin(), e.order.begin() + static_cast<std::ptrdiff_t>(k));
    m.columns.insert(m.columns.end(), extra.begin(), extra.end());
    std::map<VertexKey, std::size_t> column_of;
    for (std::size_t j = 0; j < m.columns.size(); ++j)
        column_of.emplace(m.columns[j], j);

    m.entries = Matrix(k, m.columns.size(), op.mode());
    for (std::size_t i = 0; i < k; ++i)
        for (const auto& [w, c] : rows[i].coeffs)
            m.entries(i, column_of.at(w)) = c;
    return m;
}

Scalar determinant(const SectionMatrix& m) { return fraction_free::determinant(m.entries); }

std::size_t rank(const SectionMatrix& m) { return fraction_free::rank(m.entries); }

std::size_t rank(const RowsMatrix& m) { return fraction_free::rank(m.entries); }

bool is_injective(const SectionMatrix& m)
{
    if (!is_exact(m.mode()))
        return std::fabs(float_determinant(m.entries)) > Scalar::epsilon();
    return rank(m) == m.k;
}

std::vector<std::vector<Scalar>> kernel_basis(const SectionMatrix& m) { return kernel_basis(m.entries); }

bool rows_independent(const Operator& op, const Enumeration& e, std::size_t k)
{
    if (!is_exact(op.mode()))
        throw FloatModeUnsupported("rows_independent requires an exact scalar mode");
    return rank(build_rows_matrix(op, e, k)) == k;
}

Scalar seminorm(const FunctionOnV& f, const Enumeration& e, std::size_t k)
{
    if (k == 0)
        throw std::invalid_argument("seminorm index must be positive");
    Scalar sum;
    bool floating = false;
    for (std::size_t j = 0; j < std::min(k, e.size()); ++j) {
        Scalar v = f(e.at(j));
        switch (v.mode()) {
        case ScalarMode::rational:
            sum += v.abs();
            break;
        case ScalarMode::gaussian:
            sum += Scalar(v.exact_magnitude_key());
            break;
        case ScalarMode::floating:
            floating = true;
            sum += v.abs();
            break;
        }
    }
    return floating ? sum.to_mode(ScalarMode::floating) : sum;
}

std::string to_triplets(const Matrix& m)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero())
                out << "(" << i + 1 << ", " << j + 1 << ", \"" << m(i, j).to_string() << "\")\n";
    return out.str();
}

} // namespace graph_sections
