#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "ellhiggs/errors.hpp"
#include "ellhiggs/verify.hpp"

using namespace ellhiggs;

namespace {

// Nonzero a in X[h] (as integer pairs mod h) with m_k a = 0 for every weight.
bool brute_free(int h, const std::vector<int>& w) {
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < h; ++j) {
            if (i == 0 && j == 0) continue;
            bool fixed = true;
            for (int m : w) fixed = fixed && (m * i) % h == 0 && (m * j) % h == 0;
            if (fixed) return false;
        }
    }
    return true;
}

// Orbits of a -> (x_k + m_k a) on X[N]^l, with X[h] inside X[N] as multiples of N/h.
std::int64_t brute_orbits(int h, const std::vector<int>& w, int n) {
    const int l = static_cast<int>(w.size());
    const int step = n / h;
    std::set<std::vector<int>> minima;
    std::vector<int> cur(static_cast<std::size_t>(2 * l));
    std::function<void(int)> rec = [&](int pos) {
        if (pos == 2 * l) {
            std::vector<int> best = cur;
            for (int i = 0; i < h; ++i) {
                for (int j = 0; j < h; ++j) {
                    std::vector<int> moved(cur.size());
                    for (int k = 0; k < l; ++k) {
                        const auto uk = static_cast<std::size_t>(k);
                        moved[2 * uk] = (cur[2 * uk] + w[uk] * i * step) % n;
                        moved[2 * uk + 1] = (cur[2 * uk + 1] + w[uk] * j * step) % n;
                    }
                    best = std::min(best, moved);
                }
            }
            minima.insert(best);
            return;
        }
        for (int v = 0; v < n; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return static_cast<std::int64_t>(minima.size());
}

}  // namespace

TEST_CASE("freeness examples") {
    const auto a = check_freeness(4, {2, 2});
    CHECK(a.confirmed);
    CHECK(a.parameters["free"] == false);
    CHECK(a.parameters["r"] == 2);
    REQUIRE(a.witness.has_value());
    const auto b = check_freeness(3, {2, 3});
    CHECK(b.confirmed);
    CHECK(b.parameters["free"] == true);
    CHECK(check_freeness(1, {0}).parameters["free"] == true);
}

TEST_CASE("freeness sweep matches the gcd criterion and a brute-force search") {
    const auto reports = freeness_sweep(6, 2, 6);
    std::size_t expected = 0;
    for (int h = 1; h <= 6; ++h) expected += 7 + 49;
    CHECK(reports.size() == expected);
    for (const auto& r : reports) {
        const int h = r.parameters["h"];
        const auto w = r.parameters["weights"].get<std::vector<int>>();
        int g = h;
        for (int m : w) g = std::gcd(g, m);
        CHECK(r.confirmed);
        CHECK(r.parameters["free"].get<bool>() == (g == 1));
        CHECK(r.parameters["free"].get<bool>() == brute_free(h, w));
    }
}

TEST_CASE("quotient isomorphism examples") {
    const auto a = check_quotient_iso(2, {1, 3}, 4);
    CHECK(a.confirmed);
    REQUIRE(a.counts.has_value());
    CHECK(a.counts->first == 64);
    CHECK(a.counts->second == 64);
    REQUIRE(a.parts.size() == 1);
    CHECK(a.parts[0].statement == "bezout-orbit-map");
    CHECK(a.parts[0].confirmed);

    const auto b = check_quotient_iso(2, {2, 2}, 4);
    CHECK(b.confirmed);
    CHECK(b.parameters["r"] == 2);
    CHECK(b.counts->first == 256);

    const auto c = check_quotient_iso(1, {5, 7}, 3);
    CHECK(c.counts->first == 81);
    CHECK_THROWS_AS(check_quotient_iso(3, {1}, 4), DomainError);
}

TEST_CASE("quotient orbit counts match an independent brute force") {
    for (int h : {2, 3}) {
        for (const auto& w : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}, {2, 4}, {3, 1}}) {
            const int n = 2 * h;
            const auto r = check_quotient_iso(h, w, n);
            CAPTURE(h);
            CHECK(r.confirmed);
            CHECK(r.counts->first == brute_orbits(h, w, n));
        }
    }
}

TEST_CASE("diagram suite is confirmed and deterministic") {
    const auto a = check_diagrams(42, 40);
    const auto b = check_diagrams(42, 40);
    REQUIRE(a.size() == 6);
    std::set<std::string> families;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].confirmed);
        CHECK(a[i].failures.empty());
        CHECK(a[i].seed == std::optional<std::uint64_t>(42));
        CHECK(a[i].parameters == b[i].parameters);
        CHECK(a[i].counts == b[i].counts);
        families.insert(a[i].statement);
    }
    CHECK(families == std::set<std::string>{"diagrams/GL", "diagrams/SL", "diagrams/PGL", "diagrams/Sp",
                                            "diagrams/O", "diagrams/SO"});
    CHECK_THROWS_AS(check_diagrams(1, 0), DomainError);
}

TEST_CASE("modular inverse") {
    for (int h = 1; h <= 12; ++h) {
        for (int a = 0; a < 3 * h; ++a) {
            if (std::gcd(a, h) != 1) continue;
            const auto inv = inverse_mod(a, h);
            CHECK(inv >= 0);
            CHECK(inv < h);
            CHECK((a * inv) % h == 1 % h);
        }
    }
}
