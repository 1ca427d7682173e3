#pragma once

// Exact arithmetic on the group of points of an elliptic curve, modelled by
// its full torsion subgroup (Q/Z)^2 with the marked point as identity, and on
// the cotangent bundle T*X = X x C with an exact complex-rational fibre
// coordinate.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ellhiggs {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "p/q" with q omitted when 1 and the sign carried by p.
std::string to_string(const Rational& r);
/// Inverse of to_string; also accepts integers and "-p/q". Throws ParseError.
Rational parse_rational(const std::string& s);

std::size_t hash_value(const Rational& r);

/// Canonical representative in [0, 1) of an element of Q/Z.
class TorusCoord {
public:
    TorusCoord() = default;
    explicit TorusCoord(Rational value);

    const Rational& value() const noexcept { return value_; }

    TorusCoord operator+(const TorusCoord& o) const;
    TorusCoord operator-() const;

    bool operator==(const TorusCoord& o) const = default;
    std::strong_ordering operator<=>(const TorusCoord& o) const;

private:
    Rational value_{0};
};

/// A point of X. The identity (0,0) is the marked point x0.
struct CurvePoint {
    TorusCoord a;
    TorusCoord b;

    CurvePoint() = default;
    CurvePoint(TorusCoord a_, TorusCoord b_) : a(std::move(a_)), b(std::move(b_)) {}
    CurvePoint(const Rational& a_, const Rational& b_) : a(a_), b(b_) {}

    static CurvePoint identity() { return {}; }
    /// The point (i/n, j/n).
    static CurvePoint torsion(std::int64_t i, std::int64_t j, std::int64_t n);

    CurvePoint operator+(const CurvePoint& o) const { return {a + o.a, b + o.b}; }
    CurvePoint operator-() const { return {-a, -b}; }
    CurvePoint operator-(const CurvePoint& o) const { return *this + (-o); }

    bool is_identity() const { return a.value() == 0 && b.value() == 0; }

    bool operator==(const CurvePoint& o) const = default;
    std::strong_ordering operator<=>(const CurvePoint& o) const;
};

struct ComplexRational {
    Rational re{0};
    Rational im{0};

    ComplexRational() = default;
    ComplexRational(Rational re_, Rational im_ = 0) : re(std::move(re_)), im(std::move(im_)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
    ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
    ComplexRational operator-() const { return {-re, -im}; }
    ComplexRational operator*(const ComplexRational& o) const;
    ComplexRational operator/(const Rational& q) const { return {re / q, im / q}; }
    ComplexRational& operator+=(const ComplexRational& o);

    bool operator==(const ComplexRational& o) const = default;
    /// Lexicographic on (re, im).
    std::strong_ordering operator<=>(const ComplexRational& o) const;
};

/// A point (x, t) of T*X.
struct CotangentPoint {
    CurvePoint x;
    ComplexRational t;

    CotangentPoint operator+(const CotangentPoint& o) const { return {x + o.x, t + o.t}; }
    CotangentPoint operator-() const { return {-x, -t}; }

    bool operator==(const CotangentPoint& o) const = default;
    std::strong_ordering operator<=>(const CotangentPoint& o) const;
};

CotangentPoint add(const CotangentPoint& p, const CotangentPoint& q);
CotangentPoint neg(const CotangentPoint& p);
CotangentPoint scalar_mul(std::int64_t k, const CotangentPoint& p);
CurvePoint scalar_mul(std::int64_t k, const CurvePoint& p);
ComplexRational scalar_mul(std::int64_t k, const ComplexRational& t);

/// Total order: lexicographic on (x.a, x.b, t.re, t.im).
std::strong_ordering compare(const CotangentPoint& p, const CotangentPoint& q);

/// Fixed by negation: x in X[2] and t = 0.
bool is_self_negative(const CotangentPoint& p);
bool is_self_negative(const CurvePoint& p);
bool is_self_negative(const ComplexRational& t);

/// The N^2 points of X[N], sorted. Throws DomainError for N <= 0.
std::vector<CurvePoint> torsion_subgroup(std::int64_t n);

/// Least k >= 1 with k.p = 0 (lcm of the coordinate denominators).
std::int64_t point_order(const CurvePoint& p);

CurvePoint sum(std::span<const CurvePoint> points);
CotangentPoint sum(std::span<const CotangentPoint> points);

std::string to_string(const CurvePoint& p);
std::string to_string(const ComplexRational& t);
std::string to_string(const CotangentPoint& p);

std::size_t hash_value(const CurvePoint& p);
std::size_t hash_value(const ComplexRational& t);
std::size_t hash_value(const CotangentPoint& p);

/// Integer model of X[N]: the point (i/N, j/N) is stored as the index i*N + j.
/// Used by the enumeration kernels where rational arithmetic would dominate.
class TorsionLattice {
public:
    explicit TorsionLattice(std::int64_t n);

    std::int64_t level() const noexcept { return n_; }
    std::int64_t size() const noexcept { return n_ * n_; }

    std::int64_t add(std::int64_t p, std::int64_t q) const;
    std::int64_t neg(std::int64_t p) const;
    std::int64_t mul(std::int64_t k, std::int64_t p) const;
    std::int64_t index(std::int64_t i, std::int64_t j) const;

    CurvePoint to_point(std::int64_t p) const;
    /// Throws DomainError if the point is not N-torsion.
    std::int64_t from_point(const CurvePoint& p) const;

    /// Index of the subgroup X[k] inside X[N] (k | N): all points (N/k) * X[k].
    std::vector<std::int64_t> subgroup(std::int64_t k) const;

private:
    static std::int64_t mod(std::int64_t v, std::int64_t n) {
        const std::int64_t r = v % n;
        return r < 0 ? r + n : r;
    }
    std::int64_t n_;
};

}  // namespace ellhiggs

template <>
struct std::hash<ellhiggs::CotangentPoint> {
    std::size_t operator()(const ellhiggs::CotangentPoint& p) const { return ellhiggs::hash_value(p); }
};
template <>
struct std::hash<ellhiggs::CurvePoint> {
    std::size_t operator()(const ellhiggs::CurvePoint& p) const { return ellhiggs::hash_value(p); }
};
template <>
struct std::hash<ellhiggs::ComplexRational> {
    std::size_t operator()(const ellhiggs::ComplexRational& t) const { return ellhiggs::hash_value(t); }
};
