#include "ellhiggs/torus.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ellhiggs/errors.hpp"

namespace ellhiggs {

namespace {

Integer floor_div(const Integer& p, const Integer& q) {
    // q > 0
    if (p >= 0) return p / q;
    return -((-p + q - 1) / q);
}

Rational reduce_mod_one(const Rational& v) {
    const Integer& p = numerator(v);
    const Integer& q = denominator(v);
    return v - Rational(floor_div(p, q));
}

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("zero denominator");
    return Rational(num) / Rational(den);
}

std::string to_string(const Rational& r) {
    const Integer& p = numerator(r);
    const Integer& q = denominator(r);
    if (q == 1) return p.str();
    return p.str() + "/" + q.str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part, bool allow_sign) -> Integer {
        std::size_t start = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) start = 1;
        if (start == part.size()) throw ParseError("malformed rational \"" + s + "\"");
        for (std::size_t i = start; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') throw ParseError("malformed rational \"" + s + "\"");
        }
        return Integer(part);
    };
    if (slash == std::string::npos) return Rational(parse_int(s, true));
    Integer p = parse_int(s.substr(0, slash), true);
    Integer q = parse_int(s.substr(slash + 1), false);
    if (q == 0) throw ParseError("zero denominator in \"" + s + "\"");
    return Rational(p, q);
}

std::size_t hash_value(const Rational& r) {
    const Integer& p = numerator(r);
    const Integer& q = denominator(r);
    std::size_t h = 0;
    auto absorb = [&h](const Integer& v) {
        if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
            h = mix(h, std::hash<std::int64_t>{}(static_cast<std::int64_t>(v)));
        } else {
            h = mix(h, std::hash<std::string>{}(v.str()));
        }
    };
    absorb(p);
    absorb(q);
    return h;
}

TorusCoord::TorusCoord(Rational value) : value_(reduce_mod_one(value)) {}

TorusCoord TorusCoord::operator+(const TorusCoord& o) const {
    Rational s = value_ + o.value_;
    if (s >= 1) s -= 1;
    TorusCoord r;
    r.value_ = std::move(s);
    return r;
}

TorusCoord TorusCoord::operator-() const {
    TorusCoord r;
    r.value_ = value_ == 0 ? Rational(0) : Rational(1 - value_);
    return r;
}

std::strong_ordering TorusCoord::operator<=>(const TorusCoord& o) const {
    if (value_ < o.value_) return std::strong_ordering::less;
    if (o.value_ < value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

CurvePoint CurvePoint::torsion(std::int64_t i, std::int64_t j, std::int64_t n) {
    if (n <= 0) throw DomainError("torsion level must be positive");
    return {make_rational(i, n), make_rational(j, n)};
}

std::strong_ordering CurvePoint::operator<=>(const CurvePoint& o) const {
    if (auto c = a <=> o.a; c != 0) return c;
    return b <=> o.b;
}

ComplexRational ComplexRational::operator*(const ComplexRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

std::strong_ordering ComplexRational::operator<=>(const ComplexRational& o) const {
    if (re < o.re) return std::strong_ordering::less;
    if (o.re < re) return std::strong_ordering::greater;
    if (im < o.im) return std::strong_ordering::less;
    if (o.im < im) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::strong_ordering CotangentPoint::operator<=>(const CotangentPoint& o) const {
    if (auto c = x <=> o.x; c != 0) return c;
    return t <=> o.t;
}

CotangentPoint add(const CotangentPoint& p, const CotangentPoint& q) { return p + q; }

CotangentPoint neg(const CotangentPoint& p) { return -p; }

CurvePoint scalar_mul(std::int64_t k, const CurvePoint& p) {
    const Rational kk(k);
    return {kk * p.a.value(), kk * p.b.value()};
}

ComplexRational scalar_mul(std::int64_t k, const ComplexRational& t) {
    const Rational kk(k);
    return {kk * t.re, kk * t.im};
}

CotangentPoint scalar_mul(std::int64_t k, const CotangentPoint& p) {
    return {scalar_mul(k, p.x), scalar_mul(k, p.t)};
}

std::strong_ordering compare(const CotangentPoint& p, const CotangentPoint& q) { return p <=> q; }

bool is_self_negative(const CurvePoint& p) { return p == -p; }

bool is_self_negative(const ComplexRational& t) { return t.is_zero(); }

bool is_self_negative(const CotangentPoint& p) { return p.t.is_zero() && is_self_negative(p.x); }

std::vector<CurvePoint> torsion_subgroup(std::int64_t n) {
    if (n <= 0) throw DomainError("torsion_subgroup: N must be positive, got " + std::to_string(n));
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(n * n));
    // (i/n, j/n) in lexicographic order is already sorted by value.
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < n; ++j) out.push_back(CurvePoint::torsion(i, j, n));
    }
    return out;
}

std::int64_t point_order(const CurvePoint& p) {
    const Integer qa = denominator(p.a.value());
    const Integer qb = denominator(p.b.value());
    const Integer l = boost::multiprecision::lcm(qa, qb);
    if (l > std::numeric_limits<std::int64_t>::max()) throw SizeError("point order exceeds 64 bits");
    return static_cast<std::int64_t>(l);
}

CurvePoint sum(std::span<const CurvePoint> points) {
    CurvePoint acc;
    for (const auto& p : points) acc = acc + p;
    return acc;
}

CotangentPoint sum(std::span<const CotangentPoint> points) {
    CotangentPoint acc;
    for (const auto& p : points) acc = acc + p;
    return acc;
}

std::string to_string(const CurvePoint& p) {
    return "(" + to_string(p.a.value()) + "," + to_string(p.b.value()) + ")";
}

std::string to_string(const ComplexRational& t) {
    if (t.im == 0) return to_string(t.re);
    return "(" + to_string(t.re) + (t.im < 0 ? "" : "+") + to_string(t.im) + "i)";
}

std::string to_string(const CotangentPoint& p) { return "(" + to_string(p.x) + "," + to_string(p.t) + ")"; }

std::size_t hash_value(const CurvePoint& p) {
    return mix(hash_value(p.a.value()), hash_value(p.b.value()));
}

std::size_t hash_value(const ComplexRational& t) { return mix(hash_value(t.re), hash_value(t.im)); }

std::size_t hash_value(const CotangentPoint& p) { return mix(hash_value(p.x), hash_value(p.t)); }

TorsionLattice::TorsionLattice(std::int64_t n) : n_(n) {
    if (n <= 0) throw DomainError("TorsionLattice: N must be positive");
}

std::int64_t TorsionLattice::add(std::int64_t p, std::int64_t q) const {
    const std::int64_t i = (p / n_ + q / n_) % n_;
    const std::int64_t j = (p % n_ + q % n_) % n_;
    return i * n_ + j;
}

std::int64_t TorsionLattice::neg(std::int64_t p) const {
    return mod(-(p / n_), n_) * n_ + mod(-(p % n_), n_);
}

std::int64_t TorsionLattice::mul(std::int64_t k, std::int64_t p) const {
    const std::int64_t kk = mod(k, n_);
    return ((kk * (p / n_)) % n_) * n_ + (kk * (p % n_)) % n_;
}

std::int64_t TorsionLattice::index(std::int64_t i, std::int64_t j) const {
    return mod(i, n_) * n_ + mod(j, n_);
}

CurvePoint TorsionLattice::to_point(std::int64_t p) const { return CurvePoint::torsion(p / n_, p % n_, n_); }

std::int64_t TorsionLattice::from_point(const CurvePoint& p) const {
    const Rational ia = p.a.value() * n_;
    const Rational ib = p.b.value() * n_;
    if (denominator(ia) != 1 || denominator(ib) != 1) {
        throw DomainError("point is not " + std::to_string(n_) + "-torsion");
    }
    return index(static_cast<std::int64_t>(numerator(ia)), static_cast<std::int64_t>(numerator(ib)));
}

std::vector<std::int64_t> TorsionLattice::subgroup(std::int64_t k) const {
    if (k <= 0 || n_ % k != 0) {
        throw DomainError("X[" + std::to_string(k) + "] is not contained in X[" + std::to_string(n_) + "]");
    }
    const std::int64_t step = n_ / k;
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(k * k));
    for (std::int64_t i = 0; i < k; ++i) {
        for (std::int64_t j = 0; j < k; ++j) out.push_back(index(i * step, j * step));
    }
    return out;
}

}  // namespace ellhiggs
