#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "ellhiggs/errors.hpp"
#include "ellhiggs/moduli.hpp"

using namespace ellhiggs;

namespace {

CurvePoint pt(std::int64_t i, std::int64_t j, std::int64_t n) {
    return CurvePoint(make_rational(i, n), make_rational(j, n));
}

CotangentPoint cp(std::int64_t i, std::int64_t j, std::int64_t n, std::int64_t t) {
    return {pt(i, j, n), ComplexRational(make_rational(t))};
}

// Stable summands of the underlying polystable Higgs bundle, written out
// from the label alone: one entry per rank-n' piece for the linear groups;
// the pair (z, -z) per coordinate plus the block lines with t = 0 otherwise.
std::vector<CotangentPoint> expand_summands(const GroupLabel& g, const Tuple& raw) {
    std::vector<CotangentPoint> out;
    const bool signed_family = g.family == Family::Sp || g.family == Family::O || g.family == Family::SO;
    for (const auto& z : raw) {
        out.push_back(z);
        if (signed_family) out.push_back(CotangentPoint{-z.x, -z.t});
    }
    if (g.family == Family::O) {
        const std::vector<std::vector<int>> pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        const auto& j = two_torsion_catalog();
        std::vector<int> idx;
        if (g.k == 1) idx = {g.a};
        if (g.k == 2) idx = pairs[static_cast<std::size_t>(g.a)];
        if (g.k == 3) {
            for (int b = 0; b < 4; ++b) {
                if (b != g.a) idx.push_back(b);
            }
        }
        if (g.k == 4) idx = {0, 1, 2, 3};
        for (int b : idx) out.push_back({j[static_cast<std::size_t>(b)], {}});
    }
    if (g.family == Family::SO && !g.is_so2() && g.w2 == 1) {
        const auto& j = two_torsion_catalog();
        const int k = g.n % 2 == 1 ? 3 : 4;
        for (int b = 0; b < 4; ++b) {
            if (k == 4 || b != 0) out.push_back({j[static_cast<std::size_t>(b)], {}});
        }
    }
    return out;
}

bool has_duplicate(const std::vector<CotangentPoint>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (v[i] == v[j]) return true;
        }
    }
    return false;
}

std::vector<Tuple> all_two_torsion_tuples(int m) {
    std::vector<CotangentPoint> pool;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int t = -1; t <= 1; ++t) pool.push_back(cp(i, j, 2, t));
        }
    }
    std::vector<Tuple> out;
    Tuple cur;
    std::function<void()> rec = [&] {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (const auto& p : pool) {
            cur.push_back(p);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

bool satisfies_sums(const GroupLabel& g, const Tuple& raw) {
    if (g.family != Family::SL && g.family != Family::PGL) return true;
    CotangentPoint s;
    for (const auto& z : raw) s = s + z;
    return s == CotangentPoint{};
}

std::vector<GroupLabel> small_labels() {
    std::vector<GroupLabel> out{GroupLabel::gl(1, 0), GroupLabel::gl(2, 0), GroupLabel::gl(3, 0),
                                GroupLabel::gl(4, 2), GroupLabel::gl(6, 3), GroupLabel::gl(5, 1),
                                GroupLabel::sl(2),    GroupLabel::sl(3),    GroupLabel::pgl(2, 0),
                                GroupLabel::pgl(3, 0), GroupLabel::pgl(4, 2), GroupLabel::sp(1),
                                GroupLabel::sp(2),    GroupLabel::sp(3),    GroupLabel::so(4, 0),
                                GroupLabel::so(5, 0), GroupLabel::so(6, 0), GroupLabel::so(7, 0),
                                GroupLabel::so(5, 1), GroupLabel::so(7, 1), GroupLabel::so(6, 1),
                                GroupLabel::so(8, 1), GroupLabel::so(3, 0)};
    for (int n = 1; n <= 7; ++n) {
        for (const auto& g : list_components(Family::O, n)) {
            if (descriptor(g).copies <= 3) out.push_back(g);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("labels validate") {
    CHECK_NOTHROW(GroupLabel::gl(4, -2).validate());
    CHECK_THROWS_AS(GroupLabel::gl(0, 0).validate(), DomainError);
    CHECK_THROWS_AS(GroupLabel::o(5, 2, 0).validate(), DomainError);
    CHECK_THROWS_AS(GroupLabel::o(6, 2, 6).validate(), DomainError);
    CHECK_THROWS_AS(GroupLabel::so(2, 1).validate(), DomainError);
    CHECK_NOTHROW(GroupLabel::so(3, 1).validate());
    CHECK(descriptor(GroupLabel::so(3, 1)).copies == 0);
    CHECK_THROWS_AS(GroupLabel::so(4, 2).validate(), DomainError);
    CHECK_NOTHROW(GroupLabel::so(4, 1).validate());
    CHECK(parse_family(to_string(Family::PGL)) == Family::PGL);
    CHECK_THROWS_AS(parse_family("E8"), ParseError);
}

TEST_CASE("two-torsion catalog and stable blocks") {
    const auto& j = two_torsion_catalog();
    CHECK(j[1] == pt(1, 0, 2));
    CHECK(j[2] == pt(0, 1, 2));
    CHECK(block_count(0) == 1);
    CHECK(block_count(1) == 4);
    CHECK(block_count(2) == 6);
    CHECK(block_count(3) == 4);
    CHECK(block_count(4) == 1);
    CHECK(StableBlock{2, 5}.lines() == std::vector<CurvePoint>{j[2], j[3]});
    CHECK(StableBlock{3, 0}.lines() == std::vector<CurvePoint>{j[1], j[2], j[3]});
}

TEST_CASE("descriptor examples") {
    const auto gl = descriptor(GroupLabel::gl(4, 2));
    CHECK(gl.copies == 2);
    CHECK(gl.action == ActionSpec::sym(2));
    CHECK(gl.dimension == 4);
    CHECK(gl.presentation == "Sym^2(T*X)");
    const auto sp = descriptor(GroupLabel::sp(3));
    CHECK(sp.copies == 3);
    CHECK(sp.action == ActionSpec::hyperoct(3));
    CHECK(sp.dimension == 6);
    CHECK(descriptor(GroupLabel::so(8, 1)).copies == 2);
    CHECK(descriptor(GroupLabel::so(8, 0)).action == ActionSpec::even_sign(4));
    CHECK(descriptor(GroupLabel::so(7, 1)).action == ActionSpec::hyperoct(2));
    const auto sl = descriptor(GroupLabel::sl(3));
    CHECK(sl.constraints == 1);
    CHECK(sl.dimension == 4);
    const auto pgl = descriptor(GroupLabel::pgl(6, 2), Level::bundle);
    CHECK(pgl.copies == 2);
    CHECK(pgl.action == ActionSpec::sym_and_translate(2, 2));
    CHECK(pgl.dimension == 1);
    CHECK(descriptor(GroupLabel::gl(3, 0), Level::bundle).dimension == 3);
}

TEST_CASE("SO copies follow the parity and w2 table") {
    for (int m = 1; m <= 5; ++m) {
        CHECK(descriptor(GroupLabel::so(2 * m + 1, 0)).copies == m);
        CHECK(descriptor(GroupLabel::so(2 * m + 1, 1)).copies == m - 1);
        if (m >= 2) {
            CHECK(descriptor(GroupLabel::so(2 * m, 0)).copies == m);
            CHECK(descriptor(GroupLabel::so(2 * m, 1)).copies == m - 2);
        }
    }
}

TEST_CASE("so_invariants examples") {
    const auto a = so_invariants(8, std::nullopt);
    CHECK(a.w2 == 0);
    CHECK(a.copies == 4);
    const auto b = so_invariants(7, StableBlock{3, 0});
    CHECK(b.w2 == 1);
    CHECK(b.copies == 2);
    const auto c = so_invariants(8, StableBlock{4, 0});
    CHECK(c.w2 == 1);
    CHECK(c.copies == 2);
}

TEST_CASE("component tables") {
    for (int m = 1; m <= 4; ++m) CHECK(list_components(Family::O, 2 * m + 1).size() == 8);
    CHECK(list_components(Family::O, 2).size() == 7);
    for (int m = 2; m <= 4; ++m) CHECK(list_components(Family::O, 2 * m).size() == 8);
    CHECK(list_components(Family::O, 1).size() == 4);
    const auto o5 = list_components(Family::O, 5);
    CHECK(std::count_if(o5.begin(), o5.end(), [](const GroupLabel& g) { return g.k == 1; }) == 4);
    CHECK(std::count_if(o5.begin(), o5.end(), [](const GroupLabel& g) { return g.k == 3; }) == 4);
    const auto so7 = list_components(Family::SO, 7);
    REQUIRE(so7.size() == 2);
    CHECK(descriptor(so7[0]).copies == 3);
    CHECK(descriptor(so7[1]).copies == 2);
    CHECK(list_components(Family::SO, 2) == std::vector<GroupLabel>{GroupLabel::so2(0)});
    CHECK(list_components(Family::SO, 3).size() == 2);
    CHECK(list_components(Family::SO, 4).size() == 2);
    CHECK_THROWS_AS(list_components(Family::GL, 3), DomainError);
}

TEST_CASE("make_class enforces length and constraints verbatim") {
    CHECK_THROWS_AS(make_class(GroupLabel::gl(2, 0), Tuple{cp(0, 0, 1, 0)}), DomainError);
    try {
        make_class(GroupLabel::sl(2), Tuple{cp(1, 0, 2, 1), cp(0, 0, 1, -1)});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("determinant constraint violated") != std::string::npos);
    }
    try {
        make_class(GroupLabel::sl(2), Tuple{cp(1, 0, 2, 1), cp(1, 0, 2, 1)});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("trace constraint violated") != std::string::npos);
    }
    CHECK_THROWS_AS(make_class(GroupLabel::o(5, 1, 0), Tuple{cp(0, 0, 1, 1), cp(0, 0, 1, 2)}, StableBlock{1, 1}),
                    DomainError);
}

TEST_CASE("isomorphism examples") {
    const auto z = cp(1, 2, 3, 5);
    CHECK(isomorphic(make_class(GroupLabel::sp(1), {z}), make_class(GroupLabel::sp(1), {neg(z)})));
    const auto a = cp(1, 0, 3, 1), b = cp(0, 1, 3, 2);
    const auto so4 = GroupLabel::so(4, 0);
    CHECK_FALSE(isomorphic(make_class(so4, {a, b}), make_class(so4, {neg(a), b})));
    CHECK(isomorphic(make_class(so4, {a, b}), make_class(so4, {neg(a), neg(b)})));
    CHECK(isomorphic(make_class(GroupLabel::so(5, 0), {a, b}), make_class(GroupLabel::so(5, 0), {neg(a), b})));
    CHECK_THROWS_AS(isomorphic(make_class(GroupLabel::sp(2), {a, b}), make_class(so4, {a, b})), DomainError);
    const auto pgl = GroupLabel::pgl(2, 0);
    CHECK(isomorphic(make_class(pgl, {cp(0, 0, 4, 1), cp(0, 0, 4, -1)}),
                     make_class(pgl, {cp(1, 1, 2, 1), cp(1, 1, 2, -1)})));
}

TEST_CASE("singularity examples") {
    const auto g = GroupLabel::gl(2, 0);
    CHECK(is_singular(make_class(g, {cp(1, 0, 3, 1), cp(1, 0, 3, 1)})));
    CHECK_FALSE(is_singular(make_class(g, {cp(1, 0, 3, 1), cp(1, 0, 3, 2)})));
    CHECK(is_singular(make_class(GroupLabel::sp(1), {cp(1, 0, 2, 0)})));
    CHECK_FALSE(is_singular(make_class(GroupLabel::sp(1), {cp(1, 0, 2, 1)})));
    CHECK_FALSE(is_singular(make_class(GroupLabel::so2(0), {cp(1, 0, 2, 0)})));
}

TEST_CASE("is_singular agrees with the expansion-and-duplicate oracle on X[2]-valued classes") {
    for (const auto& g : small_labels()) {
        const int m = descriptor(g).copies;
        if (m > 3) continue;
        CAPTURE(to_string(g));
        for (const auto& raw : all_two_torsion_tuples(m)) {
            if (!satisfies_sums(g, raw)) continue;
            const auto c = make_class(g, raw);
            CHECK(is_singular(c) == has_duplicate(expand_summands(g, c.points)));
        }
    }
}

TEST_CASE("canonical classes are invariant under the descriptor action") {
    std::mt19937_64 rng(21);
    for (const auto& g : small_labels()) {
        const auto desc = descriptor(g);
        if (desc.copies == 0) continue;
        const auto elements = group_elements(desc.action);
        for (int trial = 0; trial < 20; ++trial) {
            Tuple raw;
            for (int i = 0; i < desc.copies; ++i) {
                raw.push_back(cp(static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4), 4,
                                 static_cast<std::int64_t>(rng() % 5) - 2));
            }
            if (g.family == Family::SL || g.family == Family::PGL) {
                CotangentPoint s;
                for (std::size_t i = 0; i + 1 < raw.size(); ++i) s = s + raw[i];
                raw.back() = neg(s);
            }
            const auto moved = act(elements[rng() % elements.size()], raw);
            const auto c1 = make_class(g, raw), c2 = make_class(g, moved);
            CHECK(isomorphic(c1, c2));
            CHECK(underlying_bundle(c1) == underlying_bundle(c2));
        }
    }
}

TEST_CASE("underlying bundle") {
    const auto g = GroupLabel::gl(2, 0);
    const auto c = make_class(g, {cp(1, 0, 3, 1), cp(1, 0, 3, 2)});
    const auto b = underlying_bundle(c);
    CHECK(b.points == std::vector<CurvePoint>{pt(1, 0, 3), pt(1, 0, 3)});
    Tuple lifted;
    for (const auto& x : b.points) lifted.push_back({x, {}});
    CHECK(underlying_bundle(make_class(g, lifted)) == b);
    const auto sp = underlying_bundle(make_class(GroupLabel::sp(1), {cp(2, 1, 3, 4)}));
    CHECK(sp.points == std::vector<CurvePoint>{pt(1, 2, 3)});
}

TEST_CASE("det_tr and the translate law") {
    const auto sl_raw = Tuple{cp(1, 0, 3, 2), cp(1, 1, 3, -5), cp(1, 2, 3, 3)};
    CHECK(det_tr(make_class(GroupLabel::gl(3, 0), sl_raw)) == CotangentPoint{});
    std::mt19937_64 rng(22);
    for (const auto& g : {GroupLabel::gl(6, 4), GroupLabel::gl(3, 0), GroupLabel::gl(4, 2), GroupLabel::gl(5, 1)}) {
        const int h = gl_gcd(g);
        CHECK(h * gl_piece_rank(g) == g.n);
        for (int trial = 0; trial < 50; ++trial) {
            Tuple raw;
            for (int i = 0; i < h; ++i) {
                raw.push_back(cp(static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 6), 6,
                                 static_cast<std::int64_t>(rng() % 7) - 3));
            }
            const auto c = make_class(g, raw);
            const CotangentPoint w = cp(static_cast<std::int64_t>(rng() % 5), static_cast<std::int64_t>(rng() % 5), 5,
                                        static_cast<std::int64_t>(rng() % 3));
            CHECK(det_tr(translate(c, w)) == det_tr(c) + scalar_mul(g.n, w));
            CHECK(underlying_bundle(translate(c, {w.x, {}})) == translate(underlying_bundle(c), w.x));
        }
    }
    CHECK_THROWS_AS(det_tr(make_class(GroupLabel::sp(1), {cp(0, 0, 1, 1)})), DomainError);
}

TEST_CASE("graded objects") {
    const auto g = GroupLabel::gl(2, 0);
    const auto z = cp(1, 2, 3, 7);
    const auto c = graded_object(g, {{z, 2}});
    CHECK(c.points == Tuple{z, z});
    CHECK(is_singular(c));
    const auto g3 = GroupLabel::gl(3, 0);
    const auto w = cp(0, 1, 2, -1);
    CHECK(graded_object(g3, {{z, 2}, {w, 1}}) == graded_object(g3, {{w, 1}, {z, 2}}));
    CHECK_THROWS_AS(graded_object(g3, {{z, 2}}), DomainError);
}
