#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace graph_sections {

using Rational = mpq_class;
using Integer = mpz_class;

enum class ScalarMode { rational, gaussian, floating };

std::string to_string(ScalarMode mode);
ScalarMode parse_scalar_mode(std::string_view text);

inline bool is_exact(ScalarMode mode) { return mode != ScalarMode::floating; }

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
    Rational re;
    Rational im;

    Rational norm() const { return re * re + im * im; }
    GaussianRational conj() const { return {re, -im}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re == b.re && a.im == b.im;
    }
};

/// Element of the field K. Holds one of three representations; mixed
/// arithmetic promotes rational -> gaussian and exact -> floating.
///
/// Rationals are kept canonical (lowest terms, positive denominator) after
/// every operation. Floating values compare equal within a global tolerance.
class Scalar {
public:
    Scalar() : value_(Rational(0)) {}
    Scalar(int v) : value_(Rational(v)) {}
    Scalar(long v) : value_(Rational(v)) {}
    Scalar(long long v) : value_(Rational(static_cast<long>(v))) {}
    Scalar(Rational v) : value_(std::move(v)) { std::get<Rational>(value_).canonicalize(); }
    Scalar(GaussianRational v);
    explicit Scalar(double v) : value_(v) {}

    static Scalar fraction(long num, long den);
    static Scalar gaussian(Rational re, Rational im);
    static Scalar zero(ScalarMode mode);
    static Scalar one(ScalarMode mode);

    /// Parses "p", "p/q", gaussian forms "a+bi", "a-bi", "bi", and decimal
    /// floats; the result is converted to `mode`.
    static Scalar parse(std::string_view text, ScalarMode mode = ScalarMode::rational);

    ScalarMode mode() const;
    bool is_zero() const;
    bool is_real() const;

    /// Conversion into another mode. Floating -> exact is rejected.
    Scalar to_mode(ScalarMode mode) const;

    const Rational& rational() const;
    GaussianRational gaussian_value() const;
    double to_double() const;

    /// |x| for rationals, |x|^2 for gaussian rationals (exact).
    Rational exact_magnitude_key() const;
    /// Absolute value; defined for rational and floating values.
    Scalar abs() const;

    /// Least common multiple of the denominators of all rational components.
    Integer denominator_lcm() const;

    std::string to_string() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    /// Exact equality in exact modes, |a - b| <= epsilon once floating.
    friend bool operator==(const Scalar& a, const Scalar& b);

    /// Identity of representation and value; floats compared bitwise.
    bool identical(const Scalar& other) const;

    static double epsilon();
    static void set_epsilon(double eps);

private:
    using Storage = std::variant<Rational, GaussianRational, double>;
    explicit Scalar(Storage s) : value_(std::move(s)) {}

    template <typename Op>
    static Storage combine(const Storage& a, const Storage& b, Op op);

    Storage value_;
};

/// Orders |a| against |b|. Exact modes compare exactly (gaussian via squared
/// modulus); floats treat differences within epsilon as equal.
std::weak_ordering compare_magnitude(const Scalar& a, const Scalar& b);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace graph_sections
