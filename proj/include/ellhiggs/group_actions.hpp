#pragma once

// The finite groups acting on tuples of cotangent points: symmetric groups,
// the hyperoctahedral group (Z2)^m x| S_m, its even-sign subgroup, and
// S_m x X[h] acting by permutation and simultaneous torsion translation.
//
// Convention: an element (c, sigma) of the hyperoctahedral group first applies
// the signs and then moves coordinate i to position sigma(i):
//     (g.z)[sigma(i)] = c_i * z_i.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ellhiggs/errors.hpp"
#include "ellhiggs/torus.hpp"

namespace ellhiggs {

using Tuple = std::vector<CotangentPoint>;

class Permutation {
public:
    Permutation() = default;
    /// Throws DomainError unless `images` is a bijection of {0..m-1}.
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int m);

    int size() const noexcept { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const noexcept { return images_; }

    /// (*this * o)(i) = (*this)(o(i)).
    Permutation operator*(const Permutation& o) const;
    Permutation inverse() const;
    bool is_identity() const;
    /// Cycles, each starting at its smallest element, ordered by that element.
    std::vector<std::vector<int>> cycles() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

class SignVector {
public:
    SignVector() = default;
    /// Throws DomainError on entries other than +1, -1.
    explicit SignVector(std::vector<int> signs);

    static SignVector identity(int m) { return SignVector(std::vector<int>(static_cast<std::size_t>(m), 1)); }

    int size() const noexcept { return static_cast<int>(signs_.size()); }
    int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& signs() const noexcept { return signs_; }
    int flips() const;

    bool operator==(const SignVector&) const = default;

private:
    std::vector<int> signs_;
};

struct HyperoctahedralElement {
    SignVector signs;
    Permutation perm;

    static HyperoctahedralElement identity(int m) { return {SignVector::identity(m), Permutation::identity(m)}; }
    static HyperoctahedralElement from_perm(Permutation p) {
        const int m = p.size();
        return {SignVector::identity(m), std::move(p)};
    }

    int size() const noexcept { return perm.size(); }
    bool is_even() const { return signs.flips() % 2 == 0; }

    /// Composition: (g * h).z = g.(h.z).
    HyperoctahedralElement operator*(const HyperoctahedralElement& o) const;
    HyperoctahedralElement inverse() const;

    bool operator==(const HyperoctahedralElement&) const = default;
};

/// A permutation followed by translation of every coordinate by (shift, 0).
struct TranslatedPermutation {
    Permutation perm;
    CurvePoint shift;

    static TranslatedPermutation identity(int m) { return {Permutation::identity(m), CurvePoint{}}; }

    int size() const noexcept { return perm.size(); }
    TranslatedPermutation operator*(const TranslatedPermutation& o) const;

    bool operator==(const TranslatedPermutation&) const = default;
};

using GroupElement = std::variant<HyperoctahedralElement, TranslatedPermutation>;

enum class ActionKind { sym, hyperoct, even_sign, sym_and_translate };

std::string to_string(ActionKind k);
/// Inverse of to_string ("sym", "hyperoct", "evensign", "translate"). Throws ParseError.
ActionKind parse_action_kind(const std::string& s);

struct ActionSpec {
    ActionKind kind = ActionKind::sym;
    int m = 0;
    int h = 1;

    static ActionSpec sym(int m) { return {ActionKind::sym, m, 1}; }
    static ActionSpec hyperoct(int m) { return {ActionKind::hyperoct, m, 1}; }
    static ActionSpec even_sign(int m) { return {ActionKind::even_sign, m, 1}; }
    static ActionSpec sym_and_translate(int h, int m) { return {ActionKind::sym_and_translate, m, h}; }

    /// Throws DomainError for m < 0 or h < 1.
    void validate() const;
    /// Group order; SizeError if it does not fit in 64 bits.
    std::int64_t order() const;

    bool operator==(const ActionSpec&) const = default;
};

enum class CountMethod { burnside, enumeration };

struct OrbitReport {
    std::int64_t orbit_count = 0;
    std::optional<std::int64_t> stabilizer_order;
    CountMethod method = CountMethod::enumeration;
};

struct OrbitPartition {
    OrbitReport report;
    /// Orbit minima, sorted.
    std::vector<Tuple> representatives;
    /// orbit_of[i] indexes `representatives` for domain element i.
    std::vector<std::size_t> orbit_of;
};

/// Enumeration cap used by stabilizer_order and the enumeration kernels.
inline constexpr std::int64_t kEnumerationCap = 1'000'000;

// ---------------------------------------------------------------------------
// Application

namespace detail {

inline void check_length(int m, std::size_t n) {
    if (static_cast<std::size_t>(m) != n) {
        throw DomainError("length mismatch: group element acts on " + std::to_string(m) + " coordinates, tuple has " +
                          std::to_string(n));
    }
}

inline CotangentPoint shifted(const CotangentPoint& p, const CurvePoint& w) { return {p.x + w, p.t}; }
inline CurvePoint shifted(const CurvePoint& p, const CurvePoint& w) { return p + w; }
inline ComplexRational shifted(const ComplexRational& t, const CurvePoint&) { return t; }

}  // namespace detail

template <class E>
std::vector<E> act(const Permutation& g, const std::vector<E>& z) {
    detail::check_length(g.size(), z.size());
    std::vector<E> out(z.size());
    for (int i = 0; i < g.size(); ++i) out[static_cast<std::size_t>(g(i))] = z[static_cast<std::size_t>(i)];
    return out;
}

template <class E>
std::vector<E> act(const HyperoctahedralElement& g, const std::vector<E>& z) {
    detail::check_length(g.size(), z.size());
    std::vector<E> out(z.size());
    for (int i = 0; i < g.size(); ++i) {
        const E& zi = z[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(g.perm(i))] = g.signs[i] < 0 ? -zi : zi;
    }
    return out;
}

template <class E>
std::vector<E> act(const TranslatedPermutation& g, const std::vector<E>& z) {
    std::vector<E> out = act(g.perm, z);
    for (auto& e : out) e = detail::shifted(e, g.shift);
    return out;
}

template <class E>
std::vector<E> act(const GroupElement& g, const std::vector<E>& z) {
    return std::visit([&](const auto& e) { return act(e, z); }, g);
}

template <class E>
std::vector<E> translate_all(const std::vector<E>& z, const CurvePoint& w) {
    std::vector<E> out(z.begin(), z.end());
    for (auto& e : out) e = detail::shifted(e, w);
    return out;
}

GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement identity_element(const ActionSpec& spec);
bool belongs_to(const GroupElement& g, const ActionSpec& spec);

// ---------------------------------------------------------------------------
// Canonical forms

template <class E>
std::vector<E> canonical_sym(const std::vector<E>& z) {
    std::vector<E> out(z.begin(), z.end());
    std::sort(out.begin(), out.end());
    return out;
}

template <class E>
std::vector<E> canonical_hyperoct(const std::vector<E>& z) {
    std::vector<E> out;
    out.reserve(z.size());
    for (const auto& e : z) {
        E n = -e;
        out.push_back(n < e ? std::move(n) : e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <class E>
std::vector<E> canonical_delta(const std::vector<E>& z) {
    std::vector<E> a;
    a.reserve(z.size());
    int flips = 0;
    bool self_negative = false;
    for (const auto& e : z) {
        E n = -e;
        if (n < e) {
            a.push_back(std::move(n));
            ++flips;
        } else {
            a.push_back(e);
        }
        self_negative = self_negative || is_self_negative(e);
    }
    if (flips % 2 == 0 || self_negative) {
        std::sort(a.begin(), a.end());
        return a;
    }
    std::optional<std::vector<E>> best;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<E> b = a;
        b[i] = -b[i];
        std::sort(b.begin(), b.end());
        if (!best || b < *best) best = std::move(b);
    }
    return *best;
}

template <class E>
std::vector<E> canonical_translate(const std::vector<E>& z, int h) {
    if (h < 1) throw DomainError("translation level must be positive, got " + std::to_string(h));
    std::optional<std::vector<E>> best;
    for (const auto& w : torsion_subgroup(h)) {
        std::vector<E> shifted = translate_all(z, w);
        std::sort(shifted.begin(), shifted.end());
        if (!best || shifted < *best) best = std::move(shifted);
    }
    return *best;
}

template <class E>
std::vector<E> canonical(const ActionSpec& spec, const std::vector<E>& z) {
    switch (spec.kind) {
        case ActionKind::sym: return canonical_sym(z);
        case ActionKind::hyperoct: return canonical_hyperoct(z);
        case ActionKind::even_sign: return canonical_delta(z);
        case ActionKind::sym_and_translate: return canonical_translate(z, spec.h);
    }
    return {};
}

// ---------------------------------------------------------------------------
// Group enumeration

/// Calls `fn` on every element of the group, in a fixed order. Throws
/// SizeError if the order exceeds `cap`.
void for_each_element(const ActionSpec& spec, const std::function<void(const GroupElement&)>& fn,
                      std::int64_t cap = kEnumerationCap);

std::vector<GroupElement> group_elements(const ActionSpec& spec, std::int64_t cap = kEnumerationCap);

/// A generating set: adjacent transpositions, plus a single sign flip
/// (hyperoctahedral), a double flip (even-sign), or the two basic
/// translations by X[h].
std::vector<GroupElement> generators(const ActionSpec& spec);

// ---------------------------------------------------------------------------
// Stabilizers

enum class StabilizerMethod { automatic, enumeration, formula };

namespace detail {

std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t factorial(int n);

/// Product of factorials of the multiplicities of equal entries.
template <class E>
std::int64_t multiplicity_product(std::vector<E> z) {
    std::sort(z.begin(), z.end());
    std::int64_t out = 1;
    for (std::size_t i = 0; i < z.size();) {
        std::size_t j = i;
        while (j < z.size() && z[j] == z[i]) ++j;
        out = checked_mul(out, factorial(static_cast<int>(j - i)));
        i = j;
    }
    return out;
}

template <class E>
std::int64_t hyperoct_stabilizer_formula(const std::vector<E>& z) {
    std::vector<E> keys = canonical_hyperoct(z);
    std::int64_t out = 1;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        const int c = static_cast<int>(j - i);
        out = checked_mul(out, factorial(c));
        if (is_self_negative(keys[i])) out = checked_mul(out, std::int64_t{1} << c);
        i = j;
    }
    return out;
}

}  // namespace detail

template <class E>
std::int64_t stabilizer_order_formula(const ActionSpec& spec, const std::vector<E>& z) {
    spec.validate();
    detail::check_length(spec.m, z.size());
    switch (spec.kind) {
        case ActionKind::sym: return detail::multiplicity_product(std::vector<E>(z.begin(), z.end()));
        case ActionKind::hyperoct: return detail::hyperoct_stabilizer_formula(z);
        case ActionKind::even_sign: {
            const std::int64_t full = detail::hyperoct_stabilizer_formula(z);
            const bool has_self_negative =
                std::any_of(z.begin(), z.end(), [](const E& e) { return is_self_negative(e); });
            return has_self_negative ? full / 2 : full;
        }
        case ActionKind::sym_and_translate: {
            const std::vector<E> base = canonical_sym(z);
            const std::int64_t per_shift = detail::multiplicity_product(base);
            std::int64_t shifts = 0;
            for (const auto& w : torsion_subgroup(spec.h)) {
                std::vector<E> moved = translate_all(z, w);
                std::sort(moved.begin(), moved.end());
                if (moved == base) ++shifts;
            }
            return detail::checked_mul(per_shift, shifts);
        }
    }
    return 0;
}

template <class E>
std::int64_t stabilizer_order_enumerated(const ActionSpec& spec, const std::vector<E>& z) {
    spec.validate();
    detail::check_length(spec.m, z.size());
    std::int64_t count = 0;
    for_each_element(spec, [&](const GroupElement& g) {
        if (std::ranges::equal(act(g, z), z)) ++count;
    });
    return count;
}

template <class E>
std::int64_t stabilizer_order(const ActionSpec& spec, const std::vector<E>& z,
                              StabilizerMethod method = StabilizerMethod::automatic) {
    switch (method) {
        case StabilizerMethod::enumeration: return stabilizer_order_enumerated(spec, z);
        case StabilizerMethod::formula: return stabilizer_order_formula(spec, z);
        case StabilizerMethod::automatic: break;
    }
    if (spec.order() <= kEnumerationCap) {
        const std::int64_t enumerated = stabilizer_order_enumerated(spec, z);
        const std::int64_t formula = stabilizer_order_formula(spec, z);
        if (enumerated != formula) {
            throw std::logic_error("stabilizer methods disagree: enumeration " + std::to_string(enumerated) +
                                   ", formula " + std::to_string(formula));
        }
        return enumerated;
    }
    return stabilizer_order_formula(spec, z);
}

template <class E>
std::vector<GroupElement> stabilizer(const ActionSpec& spec, const std::vector<E>& z) {
    spec.validate();
    detail::check_length(spec.m, z.size());
    std::vector<GroupElement> out;
    for_each_element(spec, [&](const GroupElement& g) {
        if (std::ranges::equal(act(g, z), z)) out.push_back(g);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Orbits

/// Union-find orbit partition of `domain` under the group generated by
/// `gens`. Throws DomainError naming the first element whose image leaves
/// the domain.
OrbitPartition orbit_partition(const std::vector<GroupElement>& gens, std::span<const Tuple> domain);

OrbitPartition orbit_enumerate(const ActionSpec& spec, std::span<const Tuple> domain);

/// Number of orbits of the stabilizer of the t-pattern `t` (all zero when
/// absent) on X[N]-valued x-assignments, by Burnside's lemma with fixed-point
/// counts from the cycle structure of each element.
std::int64_t burnside_count(const ActionSpec& spec, std::int64_t n,
                            const std::optional<std::vector<ComplexRational>>& t = std::nullopt);

/// All tuples ((x_1,t_1),...,(x_m,t_m)) with x_i in X[N].
std::vector<Tuple> torsion_tuples(std::int64_t n, std::span<const ComplexRational> t);

std::string to_string(std::span<const CotangentPoint> z);
std::string to_string(const GroupElement& g);

}  // namespace ellhiggs
