#pragma once

// The Hitchin map, its base in canonical t-coordinates, spectral
// multiplicity patterns, fiber descriptors, and finite-model fiber counts.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellhiggs/moduli.hpp"

namespace ellhiggs {

struct HitchinBasePoint {
    GroupLabel label;
    /// Canonical under the label's group acting on t-coordinates alone.
    std::vector<ComplexRational> t;

    bool operator==(const HitchinBasePoint&) const = default;
};

/// Validates and canonicalizes a raw t-tuple for the label.
HitchinBasePoint make_base_point(const GroupLabel& label, const std::vector<ComplexRational>& t);

HitchinBasePoint hitchin_map(const HiggsClass& c);

/// Eigenvalues of the Higgs field, with multiplicity (n of them).
std::vector<ComplexRational> eigenvalues(const HitchinBasePoint& b);

/// e_1..e_n of the given values.
std::vector<ComplexRational> elementary_symmetric(const std::vector<ComplexRational>& values);

/// Coefficients of the monic characteristic polynomial from degree n-1 down
/// to 0: the coefficient of T^(n-k) is (-1)^k e_k.
std::vector<ComplexRational> char_poly(const HitchinBasePoint& b);

/// prod t_i for SO(2m) with w2 = 0 (and SO(2)); separates the two
/// Delta_m-orbits inside a Gamma_m-orbit.
std::optional<ComplexRational> pfaffian(const HitchinBasePoint& b);

/// For SO(2m) with w2 = 0: generic, s1 (no zero entries, repeated values,
/// odd number of sign flips relative to the sign-canonical form) or s2
/// (everything else that is not generic).
enum class DeltaKind { generic, s1, s2 };

std::string to_string(DeltaKind k);

struct SpectralPattern {
    int m0 = 0;
    /// Distinct values (sign-canonical for the orthosymplectic families) and
    /// their multiplicities, in increasing order of value.
    std::vector<std::pair<ComplexRational, int>> groups;
    bool generic = true;
    std::optional<DeltaKind> delta_kind;

    std::vector<int> multiplicities() const;
};

SpectralPattern spectral_pattern(const HitchinBasePoint& b);

struct FiberFactor {
    enum class Kind {
        projective,           // P^dims[0]
        projective_quotient,  // (P^dims[0] x ... ) / X[r]
        delta_quotient,       // X^dims[0] / Delta_dims[0]
    };
    Kind kind = Kind::projective;
    std::vector<int> dims;
    int r = 1;

    int dimension() const;
    bool operator==(const FiberFactor&) const = default;
};

/// A factor of the full preimage of the pattern stratum, used for counting.
struct StratumFactor {
    enum class Kind {
        sym,     // Sym^m X
        sym_z2,  // Sym^m (X/Z2)
        delta,   // X^m / Delta_m
    };
    Kind kind = Kind::sym;
    int m = 0;

    bool operator==(const StratumFactor&) const = default;
};

struct FiberDescriptor {
    /// The fiber is a fibration over X^base_dim ...
    int base_dim = 0;
    /// ... with fiber the product of these factors (empty: a point).
    std::vector<FiberFactor> fiber;
    /// gcd(h, m_1, ..., m_l) for PGL.
    std::optional<int> r;
    /// Set for PGL patterns with r = h, outside the cases the fiber
    /// proposition was stated for.
    bool needs_review = false;
    /// Product decomposition of the preimage of the stratum before the base
    /// map; for SL and PGL it is cut by sum = 0.
    std::vector<StratumFactor> stratum;
    bool sum_zero_slice = false;

    int dimension() const;
};

FiberDescriptor fiber_descriptor(const GroupLabel& label, const HitchinBasePoint& b);

struct FiberCount {
    std::int64_t n = 0;
    std::int64_t enumerated = 0;
    std::int64_t predicted = 0;
};

/// Cap on the number of x-assignments enumerated by fiber_count_model.
inline constexpr std::int64_t kFiberModelCap = 2'000'000;

/// Orbits of the stabilizer of b on X[N]-valued x-assignments, counted by
/// union-find enumeration and predicted independently from the stratum
/// factors by Burnside's lemma.
FiberCount fiber_count_model(const GroupLabel& label, const HitchinBasePoint& b, std::int64_t n,
                             std::int64_t cap = kFiberModelCap);

/// Number of multisets of size m in X[N] summing to y = (i/N, j/N), by
/// Burnside's lemma over S_m on the sum-y slice of X[N]^m.
Integer sym_slice_count(int m, std::int64_t n, std::int64_t i, std::int64_t j);

}  // namespace ellhiggs
