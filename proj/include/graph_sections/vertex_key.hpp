#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace graph_sections {

/// Canonical vertex label: an integer tuple (lattice coordinates, tree root
/// paths, ray positions) or a text label (explicit graphs), optionally scoped
/// by the name of a disjoint-union component.
///
/// Ordering: scope, then integer tuples before text labels, tuples by
/// (length, lexicographic), labels lexicographically. On a lattice every key
/// has the same length, so this is plain lexicographic order there; on a tree
/// it is the (depth, path) order.
///
/// Text form: `[scope:]body` where body is `n` for 1-tuples, `(a,b,...)` for
/// other tuples (`()` is the empty tuple), anything else a label. Nested union
/// scopes are joined by '/'.
class VertexKey {
public:
    using Coords = std::vector<std::int64_t>;

    VertexKey() = default;
    VertexKey(std::int64_t x) : body_(Coords{x}) {}
    VertexKey(Coords coords) : body_(std::move(coords)) {}
    VertexKey(std::initializer_list<std::int64_t> coords) : body_(Coords(coords)) {}
    static VertexKey label(std::string text);

    static VertexKey parse(std::string_view text);

    bool is_label() const { return std::holds_alternative<std::string>(body_); }
    const Coords& coords() const;
    const std::string& text_label() const;
    const std::string& scope() const { return scope_; }

    /// Prepends a union component name to the scope ("" leaves the key unchanged).
    VertexKey scoped(const std::string& name) const;
    /// Drops the leading scope segment; returns the key as seen inside the component.
    VertexKey unscoped() const;
    /// Leading scope segment, "" when unscoped.
    std::string leading_scope() const;

    std::string to_string() const;

    friend bool operator==(const VertexKey&, const VertexKey&) = default;
    friend std::strong_ordering operator<=>(const VertexKey& a, const VertexKey& b);

private:
    std::string scope_;
    std::variant<Coords, std::string> body_;
};

std::ostream& operator<<(std::ostream& os, const VertexKey& k);

} // namespace graph_sections
