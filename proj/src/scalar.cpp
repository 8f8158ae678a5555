#include "graph_sections/scalar.hpp"

#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "graph_sections/errors.hpp"

namespace graph_sections {

namespace {

std::atomic<double> g_epsilon{1e-9};

// Rank of a representation in the promotion lattice.
int rank_of(const std::variant<Rational, GaussianRational, double>& v) { return static_cast<int>(v.index()); }

GaussianRational as_gaussian(const std::variant<Rational, GaussianRational, double>& v)
{
    if (const auto* r = std::get_if<Rational>(&v))
        return {*r, Rational(0)};
    return std::get<GaussianRational>(v);
}

double as_double(const std::variant<Rational, GaussianRational, double>& v)
{
    if (const auto* r = std::get_if<Rational>(&v))
        return r->get_d();
    if (const auto* g = std::get_if<GaussianRational>(&v)) {
        if (g->im != 0)
            throw FloatModeUnsupported("cannot convert a non-real gaussian rational to a float");
        return g->re.get_d();
    }
    return std::get<double>(v);
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational");
    if (s.front() == '+')
        s.erase(0, 1);
    auto slash = s.find('/');
    auto check_int = [&](const std::string& part) {
        std::size_t i = (!part.empty() && part[0] == '-') ? 1 : 0;
        if (i == part.size())
            throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i])))
                throw std::invalid_argument("malformed rational \"" + std::string(text) + "\"");
    };
    if (slash == std::string::npos) {
        check_int(s);
        return Rational(Integer(s));
    }
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    Integer d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

bool looks_floating(std::string_view s)
{
    return s.find_first_of(".eE") != std::string_view::npos && s.find('/') == std::string_view::npos;
}

std::string rational_string(const Rational& q) { return q.get_str(); }

} // namespace

std::string to_string(ScalarMode mode)
{
    switch (mode) {
    case ScalarMode::rational:
        return "rational";
    case ScalarMode::gaussian:
        return "gaussian";
    case ScalarMode::floating:
        return "float";
    }
    return "?";
}

ScalarMode parse_scalar_mode(std::string_view text)
{
    if (text == "rational")
        return ScalarMode::rational;
    if (text == "gaussian")
        return ScalarMode::gaussian;
    if (text == "float")
        return ScalarMode::floating;
    throw std::invalid_argument("unknown scalar mode \"" + std::string(text) + "\"");
}

Scalar::Scalar(GaussianRational v) : value_(std::move(v))
{
    auto& g = std::get<GaussianRational>(value_);
    g.re.canonicalize();
    g.im.canonicalize();
}

Scalar Scalar::fraction(long num, long den)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    return Scalar(std::move(q));
}

Scalar Scalar::gaussian(Rational re, Rational im) { return Scalar(GaussianRational{std::move(re), std::move(im)}); }

Scalar Scalar::zero(ScalarMode mode) { return Scalar(0).to_mode(mode); }

Scalar Scalar::one(ScalarMode mode) { return Scalar(1).to_mode(mode); }

Scalar Scalar::parse(std::string_view text, ScalarMode mode)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty scalar");

    if (s.back() == 'i') {
        // Split "a+bi" / "a-bi" at the last sign that is not a leading sign.
        std::string body = s.substr(0, s.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;)
            if (body[i] == '+' || body[i] == '-') {
                split = i;
                break;
            }
        std::string re = split == std::string::npos ? "0" : body.substr(0, split);
        std::string im = split == std::string::npos ? body : body.substr(split);
        if (im.empty() || im == "+")
            im = "1";
        else if (im == "-")
            im = "-1";
        Scalar g = Scalar::gaussian(parse_rational(re), parse_rational(im));
        if (mode == ScalarMode::rational) {
            if (!g.is_real())
                throw std::invalid_argument("non-real value \"" + s + "\" in rational mode");
            return Scalar(g.gaussian_value().re);
        }
        return g.to_mode(mode);
    }

    if (looks_floating(s)) {
        if (mode != ScalarMode::floating)
            throw std::invalid_argument("decimal value \"" + s + "\" requires float mode; write rationals as p/q");
        std::size_t used = 0;
        double d = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("malformed float \"" + s + "\"");
        return Scalar(d);
    }
    return Scalar(parse_rational(s)).to_mode(mode);
}

ScalarMode Scalar::mode() const { return static_cast<ScalarMode>(value_.index()); }

bool Scalar::is_zero() const
{
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>)
                return v == 0;
            else if constexpr (std::is_same_v<T, GaussianRational>)
                return v.re == 0 && v.im == 0;
            else
                return std::fabs(v) <= g_epsilon.load();
        },
        value_);
}

bool Scalar::is_real() const
{
    if (const auto* g = std::get_if<GaussianRational>(&value_))
        return g->im == 0;
    return true;
}

Scalar Scalar::to_mode(ScalarMode target) const
{
    if (mode() == target)
        return *this;
    switch (target) {
    case ScalarMode::rational:
        if (mode() == ScalarMode::gaussian && is_real())
            return Scalar(std::get<GaussianRational>(value_).re);
        break;
    case ScalarMode::gaussian:
        if (mode() == ScalarMode::rational)
            return Scalar(as_gaussian(value_));
        break;
    case ScalarMode::floating:
        return Scalar(as_double(value_));
    }
    throw FloatModeUnsupported("cannot convert " + to_string() + " from " + graph_sections::to_string(mode()) +
                               " to " + graph_sections::to_string(target) + " mode");
}

const Rational& Scalar::rational() const
{
    if (const auto* r = std::get_if<Rational>(&value_))
        return *r;
    throw std::logic_error("scalar is not in rational mode");
}

GaussianRational Scalar::gaussian_value() const
{
    if (mode() == ScalarMode::floating)
        throw FloatModeUnsupported("float scalar has no exact gaussian value");
    return as_gaussian(value_);
}

double Scalar::to_double() const { return as_double(value_); }

Rational Scalar::exact_magnitude_key() const
{
    if (const auto* r = std::get_if<Rational>(&value_))
        return ::abs(*r);
    if (const auto* g = std::get_if<GaussianRational>(&value_))
        return g->norm();
    throw FloatModeUnsupported("exact magnitude requested for a float scalar");
}

Scalar Scalar::abs() const
{
    if (const auto* r = std::get_if<Rational>(&value_))
        return Scalar(Rational(::abs(*r)));
    if (const auto* d = std::get_if<double>(&value_))
        return Scalar(std::fabs(*d));
    const auto& g = std::get<GaussianRational>(value_);
    if (g.im == 0)
        return Scalar(GaussianRational{Rational(::abs(g.re)), Rational(0)});
    if (g.re == 0)
        return Scalar(GaussianRational{Rational(::abs(g.im)), Rational(0)});
    throw std::domain_error("modulus of " + to_string() + " is not rational");
}

Integer Scalar::denominator_lcm() const
{
    if (const auto* r = std::get_if<Rational>(&value_))
        return r->get_den();
    if (const auto* g = std::get_if<GaussianRational>(&value_)) {
        Integer out;
        mpz_lcm(out.get_mpz_t(), g->re.get_den_mpz_t(), g->im.get_den_mpz_t());
        return out;
    }
    throw FloatModeUnsupported("denominators are undefined for float scalars");
}

std::string Scalar::to_string() const
{
    if (const auto* r = std::get_if<Rational>(&value_))
        return rational_string(*r);
    if (const auto* d = std::get_if<double>(&value_)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    const auto& g = std::get<GaussianRational>(value_);
    if (g.im == 0)
        return rational_string(g.re);
    std::string im = rational_string(::abs(g.im)) + "i";
    if (g.re == 0)
        return (g.im < 0 ? "-" : "") + im;
    return rational_string(g.re) + (g.im < 0 ? "-" : "+") + im;
}

template <typename Op>
Scalar::Storage Scalar::combine(const Storage& a, const Storage& b, Op op)
{
    int r = std::max(rank_of(a), rank_of(b));
    if (r == 0)
        return op(std::get<Rational>(a), std::get<Rational>(b));
    if (r == 1)
        return op(as_gaussian(a), as_gaussian(b));
    return op(as_double(a), as_double(b));
}

namespace {

struct Add {
    Rational operator()(const Rational& a, const Rational& b) const { return a + b; }
    GaussianRational operator()(const GaussianRational& a, const GaussianRational& b) const
    {
        return {a.re + b.re, a.im + b.im};
    }
    double operator()(double a, double b) const { return a + b; }
};

struct Sub {
    Rational operator()(const Rational& a, const Rational& b) const { return a - b; }
    GaussianRational operator()(const GaussianRational& a, const GaussianRational& b) const
    {
        return {a.re - b.re, a.im - b.im};
    }
    double operator()(double a, double b) const { return a - b; }
};

struct Mul {
    Rational operator()(const Rational& a, const Rational& b) const { return a * b; }
    GaussianRational operator()(const GaussianRational& a, const GaussianRational& b) const
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    double operator()(double a, double b) const { return a * b; }
};

struct Div {
    Rational operator()(const Rational& a, const Rational& b) const
    {
        if (b == 0)
            throw std::domain_error("division by zero");
        return a / b;
    }
    GaussianRational operator()(const GaussianRational& a, const GaussianRational& b) const
    {
        Rational n = b.norm();
        if (n == 0)
            throw std::domain_error("division by zero");
        GaussianRational p = Mul{}(a, b.conj());
        return {p.re / n, p.im / n};
    }
    double operator()(double a, double b) const { return a / b; }
};

} // namespace

Scalar Scalar::operator-() const
{
    return Scalar(std::visit(
        [](const auto& v) -> Storage {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GaussianRational>)
                return GaussianRational{-v.re, -v.im};
            else
                return T(-v);
        },
        value_));
}

Scalar& Scalar::operator+=(const Scalar& other)
{
    value_ = combine(value_, other.value_, Add{});
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other)
{
    value_ = combine(value_, other.value_, Sub{});
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& other)
{
    value_ = combine(value_, other.value_, Mul{});
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other)
{
    value_ = combine(value_, other.value_, Div{});
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    int r = std::max(rank_of(a.value_), rank_of(b.value_));
    if (r == 0)
        return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
    if (r == 1)
        return as_gaussian(a.value_) == as_gaussian(b.value_);
    return std::fabs(as_double(a.value_) - as_double(b.value_)) <= g_epsilon.load();
}

bool Scalar::identical(const Scalar& other) const
{
    if (value_.index() != other.value_.index())
        return false;
    if (const auto* d = std::get_if<double>(&value_))
        return std::memcmp(d, &std::get<double>(other.value_), sizeof(double)) == 0;
    return *this == other;
}

double Scalar::epsilon() { return g_epsilon.load(); }

void Scalar::set_epsilon(double eps)
{
    if (!(eps >= 0))
        throw std::invalid_argument("epsilon must be nonnegative");
    g_epsilon.store(eps);
}

std::weak_ordering compare_magnitude(const Scalar& a, const Scalar& b)
{
    if (a.mode() == ScalarMode::floating || b.mode() == ScalarMode::floating) {
        double x = std::fabs(a.to_double());
        double y = std::fabs(b.to_double());
        if (std::fabs(x - y) <= Scalar::epsilon())
            return std::weak_ordering::equivalent;
        return x < y ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    // Squared moduli keep both modes comparable on one exact scale.
    Rational x = a.gaussian_value().norm();
    Rational y = b.gaussian_value().norm();
    int c = cmp(x, y);
    if (c == 0)
        return std::weak_ordering::equivalent;
    return c < 0 ? std::weak_ordering::less : std::weak_ordering::greater;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

} // namespace graph_sections
