#pragma once

// Checkers for the weighted-translation lemmas on torsion points and for the
// commuting diagrams relating determinant, trace, tensorization and the
// Hitchin map. Every checker compares against an independent brute force.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace ellhiggs {

struct LemmaReport {
    std::string statement;
    nlohmann::json parameters = nlohmann::json::object();
    bool confirmed = true;
    /// Present on refuted reports, and on confirmed ones when a natural
    /// witness exists (e.g. a fixed point of a non-free action).
    std::optional<std::string> witness;
    /// (orbits, expected)
    std::optional<std::pair<std::int64_t, std::int64_t>> counts;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> failures;
    std::vector<LemmaReport> parts;
};

/// Weighted action of X[h] on X^l, a -> (m_1 a, ..., m_l a): tests whether
/// some nonzero a fixes the identity tuple and compares with gcd(h, m) = 1.
LemmaReport check_freeness(int h, const std::vector<int>& weights);

/// check_freeness for every h in 1..h_max, l in 1..l_max, weights in [0, w_max]^l.
std::vector<LemmaReport> freeness_sweep(int h_max, int l_max, int w_max);

/// Orbit count of the weighted X[h]-action on X[N]^l against r^2 N^(2l) / h^2,
/// plus the explicit Bezout orbit map when gcd(m_1, h) = 1, or the
/// factorization through X[gcd(m_1, h)] otherwise.
LemmaReport check_quotient_iso(int h, const std::vector<int>& weights, std::int64_t n);

/// Seeded randomized diagram checks, one report per group family.
std::vector<LemmaReport> check_diagrams(std::uint64_t seed, int samples);

/// Modular inverse of a mod h (h >= 1, gcd(a, h) = 1), in [0, h).
std::int64_t inverse_mod(std::int64_t a, std::int64_t h);

}  // namespace ellhiggs
