#include "graph_sections/vertex_key.hpp"

#include <cctype>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace graph_sections {

namespace {

bool parse_int(std::string_view s, std::int64_t& out)
{
    if (s.empty())
        return false;
    if (s.front() == '+')
        s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

} // namespace

VertexKey VertexKey::label(std::string text)
{
    if (text.find(':') != std::string::npos)
        throw std::invalid_argument("vertex label \"" + text + "\" must not contain ':'");
    VertexKey k;
    k.body_ = std::move(text);
    return k;
}

VertexKey VertexKey::parse(std::string_view text)
{
    text = trim(text);
    VertexKey k;
    auto colon = text.rfind(':');
    if (colon != std::string_view::npos) {
        k.scope_ = std::string(trim(text.substr(0, colon)));
        text = trim(text.substr(colon + 1));
        if (k.scope_.empty())
            throw std::invalid_argument("empty scope in vertex key");
    }
    if (text.empty())
        throw std::invalid_argument("empty vertex key");

    std::int64_t x = 0;
    if (parse_int(text, x)) {
        k.body_ = Coords{x};
        return k;
    }
    if (text.front() == '(' && text.back() == ')') {
        Coords c;
        auto inner = trim(text.substr(1, text.size() - 2));
        if (!inner.empty()) {
            std::size_t start = 0;
            while (true) {
                auto comma = inner.find(',', start);
                auto part = trim(inner.substr(start, comma == std::string_view::npos ? inner.npos : comma - start));
                if (!parse_int(part, x))
                    throw std::invalid_argument("malformed tuple key \"" + std::string(text) + "\"");
                c.push_back(x);
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
        }
        k.body_ = std::move(c);
        return k;
    }
    k.body_ = std::string(text);
    return k;
}

const VertexKey::Coords& VertexKey::coords() const
{
    if (const auto* c = std::get_if<Coords>(&body_))
        return *c;
    throw std::logic_error("vertex key " + to_string() + " is a label, not a tuple");
}

const std::string& VertexKey::text_label() const
{
    if (const auto* s = std::get_if<std::string>(&body_))
        return *s;
    throw std::logic_error("vertex key " + to_string() + " is a tuple, not a label");
}

VertexKey VertexKey::scoped(const std::string& name) const
{
    if (name.empty())
        return *this;
    VertexKey k = *this;
    k.scope_ = scope_.empty() ? name : name + "/" + scope_;
    return k;
}

VertexKey VertexKey::unscoped() const
{
    VertexKey k = *this;
    auto slash = scope_.find('/');
    k.scope_ = slash == std::string::npos ? std::string() : scope_.substr(slash + 1);
    return k;
}

std::string VertexKey::leading_scope() const { return scope_.substr(0, scope_.find('/')); }

std::string VertexKey::to_string() const
{
    std::string body;
    if (const auto* c = std::get_if<Coords>(&body_)) {
        if (c->size() == 1) {
            body = std::to_string(c->front());
        } else {
            body = "(";
            for (std::size_t i = 0; i < c->size(); ++i) {
                if (i)
                    body += ",";
                body += std::to_string((*c)[i]);
            }
            body += ")";
        }
    } else {
        body = std::get<std::string>(body_);
    }
    return scope_.empty() ? body : scope_ + ":" + body;
}

std::strong_ordering operator<=>(const VertexKey& a, const VertexKey& b)
{
    if (auto c = a.scope_ <=> b.scope_; c != 0)
        return c;
    if (auto c = a.body_.index() <=> b.body_.index(); c != 0)
        return c;
    if (const auto* ca = std::get_if<VertexKey::Coords>(&a.body_)) {
        const auto& cb = std::get<VertexKey::Coords>(b.body_);
        if (auto c = ca->size() <=> cb.size(); c != 0)
            return c;
        return *ca <=> cb;
    }
    return std::get<std::string>(a.body_) <=> std::get<std::string>(b.body_);
}

std::ostream& operator<<(std::ostream& os, const VertexKey& k) { return os << k.to_string(); }

} // namespace graph_sections
