#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ellhiggs/errors.hpp"
#include "ellhiggs/json_io.hpp"

using namespace ellhiggs;
namespace jio = ellhiggs::json_io;

namespace {

CurvePoint pt(std::int64_t i, std::int64_t j, std::int64_t n) {
    return CurvePoint(make_rational(i, n), make_rational(j, n));
}

std::vector<GroupLabel> labels() {
    return {GroupLabel::gl(4, 2),  GroupLabel::gl(3, -1), GroupLabel::sl(3),      GroupLabel::pgl(4, 2),
            GroupLabel::pgl(3, 0), GroupLabel::sp(2),     GroupLabel::o(5, 1, 3), GroupLabel::o(6, 2, 4),
            GroupLabel::so(6, 0),  GroupLabel::so(7, 1),  GroupLabel::so2(3)};
}

}  // namespace

TEST_CASE("rational and point encodings") {
    CHECK(jio::to_json(make_rational(-3, 6)) == "-1/2");
    CHECK(jio::to_json(make_rational(4)) == "4");
    CHECK(jio::rational_from_json(jio::parse("\"6/4\"")) == make_rational(3, 2));
    CHECK(jio::rational_from_json(jio::parse("5")) == make_rational(5));
    CHECK(jio::to_json(pt(1, 2, 3)) == jio::parse(R"(["1/3","2/3"])"));
    CHECK(jio::curve_point_from_json(jio::parse(R"(["4/3","-1/3"])")) == pt(1, 2, 3));
    CHECK(jio::complex_from_json(jio::parse("\"2\"")) == ComplexRational(make_rational(2)));
    const CotangentPoint p{pt(1, 0, 2), ComplexRational(make_rational(1, 2), make_rational(-3))};
    CHECK(jio::to_json(p) == jio::parse(R"({"x":["1/2","0"],"t":["1/2","-3"]})"));
    CHECK(jio::cotangent_point_from_json(jio::to_json(p)) == p);
}

TEST_CASE("malformed JSON reports the byte offset") {
    try {
        jio::parse(R"({"family": GL})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 12);
        CHECK(std::string(e.what()).find("byte 12") != std::string::npos);
    }
    CHECK_THROWS_AS(jio::curve_point_from_json(jio::parse(R"(["1/2"])")), ParseError);
    CHECK_THROWS_AS(jio::rational_from_json(jio::parse(R"("1/x")")), ParseError);
    CHECK_THROWS_AS(jio::label_from_json(jio::parse(R"({"family":"E8","n":8})")), ParseError);
    CHECK_THROWS_AS(jio::label_from_json(jio::parse(R"({"family":"GL"})")), ParseError);
}

TEST_CASE("labels round-trip and normalize") {
    for (const auto& g : labels()) CHECK(jio::label_from_json(jio::to_json(g)) == g);
    CHECK(jio::label_from_json(jio::parse(R"({"family":"Sp","m":3})")) == GroupLabel::sp(3));
    CHECK(jio::label_from_json(jio::parse(R"({"family":"Sp","n":6})")) == GroupLabel::sp(3));
    CHECK(jio::label_from_json(jio::parse(R"({"family":"SO","n":2,"w2":0})")) == GroupLabel::so2(0));
    CHECK_THROWS_AS(jio::label_from_json(jio::parse(R"({"family":"SO","n":2,"w2":1})")), DomainError);
    CHECK_THROWS_AS(jio::label_from_json(jio::parse(R"({"family":"O","n":5,"k":2})")), DomainError);
}

TEST_CASE("group elements and action specs round-trip") {
    for (const auto& spec : {ActionSpec::hyperoct(3), ActionSpec::sym_and_translate(2, 2), ActionSpec::even_sign(2)}) {
        CHECK(jio::action_from_json(jio::to_json(spec)) == spec);
        for (const auto& g : group_elements(spec)) CHECK(jio::element_from_json(jio::to_json(g)) == g);
    }
}

TEST_CASE("emitted classes re-parse to equal values") {
    std::mt19937_64 rng(41);
    for (const auto& g : labels()) {
        const auto d = descriptor(g);
        for (int trial = 0; trial < 30; ++trial) {
            Tuple raw;
            for (int i = 0; i < d.copies; ++i) {
                raw.push_back({pt(static_cast<std::int64_t>(rng() % 6), static_cast<std::int64_t>(rng() % 6), 6),
                               ComplexRational(make_rational(static_cast<std::int64_t>(rng() % 7) - 3, 2),
                                               make_rational(static_cast<std::int64_t>(rng() % 3) - 1))});
            }
            if (g.family == Family::SL || g.family == Family::PGL) {
                CotangentPoint s;
                for (std::size_t i = 0; i + 1 < raw.size(); ++i) s = s + raw[i];
                raw.back() = neg(s);
            }
            const auto c = make_class(g, raw);
            const auto text = jio::to_json(c).dump();
            CHECK(jio::class_from_json(jio::parse(text)) == c);
            const auto b = underlying_bundle(c);
            CHECK(jio::bundle_from_json(jio::to_json(b)) == b);
            const auto base = hitchin_map(c);
            CHECK(jio::base_point_from_json(g, jio::to_json(base)) == base);
        }
    }
}

TEST_CASE("class parsing checks block tags and constraints") {
    const auto ok = jio::parse(R"({"group":{"family":"O","n":5,"k":1,"a":2},"block":{"k":1,"a":2},
        "points":[{"x":["0","0"],"t":["1","0"]},{"x":["1/3","0"],"t":["2","0"]}]})");
    CHECK(jio::class_from_json(ok).block == StableBlock{1, 2});
    const auto bad = jio::parse(R"({"group":{"family":"O","n":5,"k":1,"a":2},"block":{"k":1,"a":0},
        "points":[{"x":["0","0"],"t":["1","0"]},{"x":["1/3","0"],"t":["2","0"]}]})");
    CHECK_THROWS_AS(jio::class_from_json(bad), DomainError);
    const auto sl = jio::parse(R"({"group":{"family":"SL","n":2},
        "points":[{"x":["1/2","0"],"t":["1","0"]},{"x":["0","0"],"t":["-1","0"]}]})");
    CHECK_THROWS_AS(jio::class_from_json(sl), DomainError);
}

TEST_CASE("report encodings") {
    const auto d = jio::to_json(descriptor(GroupLabel::sp(3)));
    CHECK(d["copies"] == 3);
    CHECK(d["action"] == "hyperoct");
    CHECK(d["dim"] == 6);
    const auto r = jio::to_json(check_freeness(4, {2, 2}));
    CHECK(r["statement"] == "weighted-action-freeness");
    CHECK(r["verdict"] == "confirmed");
    CHECK(r.contains("witness"));
    const auto g = GroupLabel::pgl(4, 0);
    const auto b = make_base_point(g, {ComplexRational(make_rational(1)), ComplexRational(make_rational(1)),
                                       ComplexRational(make_rational(-1)), ComplexRational(make_rational(-1))});
    const auto f = jio::to_json(fiber_descriptor(g, b));
    CHECK(f["r"] == 2);
    CHECK(f["fiber"] == jio::parse(R"([["P/X[r]",[1,1],2]])"));
    CHECK(f["base"] == jio::parse(R"(["X",1])"));
}
