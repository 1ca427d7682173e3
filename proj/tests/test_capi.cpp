#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#include "ellhiggs/ellhiggs.h"

using nlohmann::json;

namespace {

struct Context {
    ellh_context* ctx = nullptr;
    Context() { REQUIRE(ellh_context_new(&ctx) == ELLH_OK); }
    ~Context() { ellh_context_free(ctx); }
};

std::string take(char* s) {
    std::string out = s ? s : "";
    ellh_string_free(s);
    return out;
}

const char* kGl2 = R"({"group":{"family":"GL","n":2,"d":0},
  "points":[{"x":["1/3","0"],"t":["1","0"]},{"x":["0","0"],"t":["2","0"]}]})";
const char* kGl2Swapped = R"({"group":{"family":"GL","n":2,"d":0},
  "points":[{"x":["0","0"],"t":["2","0"]},{"x":["1/3","0"],"t":["1","0"]}]})";

}  // namespace

TEST_CASE("context defaults and setters") {
    Context c;
    CHECK(ellh_context_model_n(c.ctx) == 3);
    CHECK(ellh_context_seed(c.ctx) == 42);
    CHECK(std::string(ellh_context_format(c.ctx)) == "json");
    CHECK(ellh_context_set_model_n(c.ctx, 0) == ELLH_ERR_DOMAIN);
    CHECK(std::string(ellh_last_error(c.ctx)).find("model level") != std::string::npos);
    CHECK(ellh_context_set_model_n(c.ctx, 4) == ELLH_OK);
    CHECK(ellh_context_model_n(c.ctx) == 4);
    CHECK(ellh_context_set_format(c.ctx, "xml") == ELLH_ERR_USAGE);
    CHECK(ellh_context_set_format(c.ctx, "csv") == ELLH_OK);
    CHECK(ellh_context_new(nullptr) == ELLH_ERR_USAGE);
    CHECK(std::string(ellh_status_name(ELLH_ERR_PARSE)) == "parse error");
    CHECK(std::string(ellh_version()).size() > 0);
}

TEST_CASE("config files") {
    Context c;
    const std::string path = "ellh_test_config.json";
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        REQUIRE(f != nullptr);
        std::fputs(R"({"model_n":2,"seed":7,"format":"csv"})", f);
        std::fclose(f);
    }
    CHECK(ellh_context_load_config(c.ctx, path.c_str()) == ELLH_OK);
    CHECK(ellh_context_model_n(c.ctx) == 2);
    CHECK(ellh_context_seed(c.ctx) == 7);
    CHECK(std::string(ellh_context_format(c.ctx)) == "csv");
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs(R"({"model_n":0})", f);
        std::fclose(f);
    }
    CHECK(ellh_context_load_config(c.ctx, path.c_str()) == ELLH_ERR_DOMAIN);
    CHECK(ellh_context_model_n(c.ctx) == 2);
    std::remove(path.c_str());
    CHECK(ellh_context_load_config(c.ctx, "no/such/file.json") == ELLH_ERR_USAGE);
}

TEST_CASE("classes through opaque handles") {
    Context c;
    ellh_class* a = nullptr;
    ellh_class* b = nullptr;
    REQUIRE(ellh_class_from_json(c.ctx, kGl2, &a) == ELLH_OK);
    REQUIRE(ellh_class_from_json(c.ctx, kGl2Swapped, &b) == ELLH_OK);
    int same = 0;
    CHECK(ellh_class_isomorphic(c.ctx, a, b, &same) == ELLH_OK);
    CHECK(same == 1);
    int singular = 1;
    CHECK(ellh_class_is_singular(c.ctx, a, &singular) == ELLH_OK);
    CHECK(singular == 0);
    char* out = nullptr;
    CHECK(ellh_class_to_json(c.ctx, a, &out) == ELLH_OK);
    const auto canon = json::parse(take(out));
    CHECK(canon["points"][0]["x"] == json::parse(R"(["0","0"])"));
    CHECK(ellh_class_det_tr_json(c.ctx, a, &out) == ELLH_OK);
    CHECK(json::parse(take(out)) == json::parse(R"({"x":["1/3","0"],"t":["3","0"]})"));
    CHECK(ellh_class_hitchin_json(c.ctx, a, &out) == ELLH_OK);
    CHECK(json::parse(take(out))["char_poly"] == json::parse(R"([["-3","0"],["2","0"]])"));
    CHECK(ellh_class_underlying_json(c.ctx, a, &out) == ELLH_OK);
    CHECK(json::parse(take(out))["points"].size() == 2);
    ellh_class* moved = nullptr;
    CHECK(ellh_class_translate(c.ctx, a, R"({"x":["1/3","0"],"t":["1","0"]})", &moved) == ELLH_OK);
    CHECK(ellh_class_det_tr_json(c.ctx, moved, &out) == ELLH_OK);
    CHECK(json::parse(take(out)) == json::parse(R"({"x":["0","0"],"t":["5","0"]})"));
    ellh_class_free(moved);
    ellh_class_free(a);
    ellh_class_free(b);
}

TEST_CASE("error codes") {
    Context c;
    ellh_class* a = nullptr;
    CHECK(ellh_class_from_json(c.ctx, "{oops", &a) == ELLH_ERR_PARSE);
    CHECK(std::string(ellh_last_error(c.ctx)).find("byte") != std::string::npos);
    CHECK(a == nullptr);
    CHECK(ellh_class_from_json(c.ctx, R"({"group":{"family":"SL","n":2},
        "points":[{"x":["1/2","0"],"t":["0","0"]},{"x":["0","0"],"t":["0","0"]}]})", &a) == ELLH_ERR_DOMAIN);
    CHECK(std::string(ellh_last_error(c.ctx)).find("determinant constraint violated") != std::string::npos);
    CHECK(ellh_class_from_json(c.ctx, nullptr, &a) == ELLH_ERR_USAGE);
    CHECK(ellh_class_from_json(nullptr, kGl2, &a) == ELLH_ERR_USAGE);
    char* out = nullptr;
    CHECK(ellh_descriptor_json(c.ctx, R"({"family":"GL","n":2})", "stack", &out) == ELLH_ERR_USAGE);
    CHECK(ellh_components(c.ctx, "GL", 3, &out) == ELLH_ERR_USAGE);
    CHECK(ellh_context_set_model_n(c.ctx, 2) == ELLH_OK);
    CHECK(ellh_fiber_json(c.ctx, R"({"family":"PGL","n":4})", R"([["0","0"],["0","0"],["0","0"],["0","0"]])", &out) ==
          ELLH_ERR_DOMAIN);
    CHECK(ellh_context_set_model_n(c.ctx, 1000) == ELLH_OK);
    CHECK(ellh_fiber_json(c.ctx, R"({"family":"GL","n":2})", R"([["1","0"],["1","0"]])", &out) == ELLH_ERR_SIZE);
    CHECK(ellh_descriptor_json(c.ctx, R"({"family":"GL","n":2})", nullptr, &out) == ELLH_OK);
    CHECK(std::string(ellh_last_error(c.ctx)).empty());
    ellh_string_free(out);
}

TEST_CASE("descriptor, fiber and components") {
    Context c;
    char* out = nullptr;
    REQUIRE(ellh_descriptor_json(c.ctx, R"({"family":"Sp","m":3})", "higgs", &out) == ELLH_OK);
    const auto d = json::parse(take(out));
    CHECK(d["copies"] == 3);
    CHECK(d["action"] == "hyperoct");
    CHECK(d["dim"] == 6);
    REQUIRE(ellh_fiber_json(c.ctx, R"({"family":"GL","n":2})", R"({"t":[["1","0"],["1","0"]]})", &out) == ELLH_OK);
    const auto f = json::parse(take(out));
    CHECK(f["model"] == json::parse(R"({"N":3,"enumerated":45,"predicted":45})"));
    REQUIRE(ellh_components(c.ctx, "O", 6, &out) == ELLH_OK);
    CHECK(json::parse(take(out)).size() == 8);
    REQUIRE(ellh_context_set_format(c.ctx, "csv") == ELLH_OK);
    REQUIRE(ellh_components(c.ctx, "O", 2, &out) == ELLH_OK);
    const auto csv = take(out);
    CHECK(csv.rfind("family,n,k,a,w2,d,copies\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
}

TEST_CASE("verification suites") {
    Context c;
    char* out = nullptr;
    int ok = 0;
    REQUIRE(ellh_verify_freeness(c.ctx, 4, 2, 3, &out, &ok) == ELLH_OK);
    CHECK(ok == 1);
    const auto lines = take(out);
    CHECK(std::count(lines.begin(), lines.end(), '\n') == 4 * (4 + 16));
    const int weights[] = {1, 3};
    REQUIRE(ellh_verify_quotient_iso(c.ctx, 2, weights, 2, 4, &out, &ok) == ELLH_OK);
    CHECK(ok == 1);
    CHECK(json::parse(take(out))["counts"]["orbits"] == 64);
    REQUIRE(ellh_verify_diagrams(c.ctx, 5, &out, nullptr) == ELLH_OK);
    const auto text = take(out);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK(text.find("\"seed\":42") != std::string::npos);
    CHECK(ellh_verify_quotient_iso(c.ctx, 2, nullptr, 2, 4, &out, &ok) == ELLH_ERR_USAGE);
}
