// Command-line front end; talks to the library only through the C API.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellhiggs/ellhiggs.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

using ContextPtr = std::unique_ptr<ellh_context, decltype(&ellh_context_free)>;
using ClassPtr = std::unique_ptr<ellh_class, decltype(&ellh_class_free)>;

int exit_code_for(ellh_status s) {
    switch (s) {
        case ELLH_OK: return kExitOk;
        case ELLH_ERR_DOMAIN:
        case ELLH_ERR_SIZE:
        case ELLH_ERR_INTERNAL: return kExitDomain;
        case ELLH_ERR_PARSE:
        case ELLH_ERR_USAGE: return kExitUsage;
    }
    return kExitDomain;
}

void check(ellh_context* ctx, ellh_status s) {
    if (s != ELLH_OK) throw CliError(exit_code_for(s), std::string(ellh_status_name(s)) + ": " + ellh_last_error(ctx));
}

// Inline JSON if the argument starts with '{' or '[', otherwise a file path.
std::string read_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
    std::ifstream in(arg);
    if (!in) throw CliError(kExitUsage, "cannot open " + arg + " (pass inline JSON or a readable file)");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string take(char* s) {
    std::string out = s ? s : "";
    ellh_string_free(s);
    return out;
}

void print(const std::string& text) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
}

ClassPtr load_class(ellh_context* ctx, const std::string& arg) {
    ellh_class* c = nullptr;
    check(ctx, ellh_class_from_json(ctx, read_arg(arg).c_str(), &c));
    return ClassPtr(c, &ellh_class_free);
}

std::string bool_result(ellh_context* ctx, bool value, const char* key) {
    if (std::string(ellh_context_format(ctx)) == "csv") return std::string(key) + "\n" + (value ? "true" : "false");
    return std::string("{\"") + key + "\":" + (value ? "true" : "false") + "}";
}

std::vector<int> parse_weights(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CliError(kExitUsage, "weights must be comma-separated integers, got " + text);
        }
    }
    if (out.empty()) throw CliError(kExitUsage, "weights must not be empty");
    return out;
}

int finish_verify(const std::string& text, int confirmed) {
    print(text);
    return confirmed ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ellhiggs: moduli of G-Higgs bundles over an elliptic curve"};
    app.require_subcommand(1);
    app.fallthrough();

    std::uint64_t seed = 42;
    std::int64_t model_n = 0;
    std::string format;
    std::string config;
    auto* seed_opt = app.add_option("--seed", seed, "Random seed for sampled checks");
    app.add_option("--model-n", model_n, "Torsion level N of the finite models")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", config, "JSON config file")->envname("ELLHIGGS_CONFIG");

    std::string group, level = "higgs", cls, cls_b, base, family;
    int n = 0;

    auto* descriptor = app.add_subcommand("descriptor", "Describe the moduli space of a group");
    descriptor->add_option("group", group, "Group label (JSON or file)")->required();
    descriptor->add_option("--level", level, "higgs or bundle")->check(CLI::IsMember({"higgs", "bundle"}));

    auto* canon = app.add_subcommand("canon", "Canonical form of a class");
    canon->add_option("class", cls, "Higgs class (JSON or file)")->required();

    auto* isom = app.add_subcommand("isom", "Decide whether two classes are isomorphic");
    isom->add_option("a", cls, "First class")->required();
    isom->add_option("b", cls_b, "Second class")->required();

    auto* singular = app.add_subcommand("singular", "Decide whether a class is a singular point");
    singular->add_option("class", cls, "Higgs class")->required();

    auto* underlying = app.add_subcommand("underlying", "Underlying bundle of a class");
    underlying->add_option("class", cls, "Higgs class")->required();

    auto* hitchin = app.add_subcommand("hitchin", "Hitchin base point of a class");
    hitchin->add_option("class", cls, "Higgs class")->required();

    auto* fiber = app.add_subcommand("fiber", "Fiber description and finite-model counts over a base point");
    fiber->add_option("group", group, "Group label")->required();
    fiber->add_option("base", base, "Base point: {\"t\":[...]} or a bare array")->required();

    auto* components = app.add_subcommand("components", "List components of O(n) or SO(n)");
    components->add_option("family", family, "O or SO")->required()->check(CLI::IsMember({"O", "SO"}));
    components->add_option("n", n, "Rank")->required()->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    verify->require_subcommand(1);
    int h_max = 6, l_max = 3, w_max = 6;
    auto* freeness = verify->add_subcommand("freeness", "Exhaustive freeness sweep of weighted actions");
    freeness->add_option("--h-max", h_max)->check(CLI::PositiveNumber);
    freeness->add_option("--l-max", l_max)->check(CLI::PositiveNumber);
    freeness->add_option("--w-max", w_max)->check(CLI::NonNegativeNumber);
    int h = 2;
    std::string weights = "1,3";
    std::int64_t big_n = 4;
    auto* quotient = verify->add_subcommand("quotient-iso", "Check the weighted quotient isomorphism");
    quotient->set_help_flag("--help", "Print this help message and exit");
    quotient->add_option("--h", h)->check(CLI::PositiveNumber);
    quotient->add_option("--weights", weights, "Comma-separated weights");
    quotient->add_option("--N", big_n, "Torsion level")->check(CLI::PositiveNumber);
    int samples = 1000;
    auto* diagrams = verify->add_subcommand("diagrams", "Sampled commutative-diagram checks");
    diagrams->add_option("--samples", samples)->check(CLI::PositiveNumber);
    diagrams->add_option("--seed", seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    ellh_context* raw = nullptr;
    if (ellh_context_new(&raw) != ELLH_OK) {
        std::cerr << "error: cannot create context\n";
        return kExitDomain;
    }
    ContextPtr ctx(raw, &ellh_context_free);

    try {
        if (!config.empty()) check(ctx.get(), ellh_context_load_config(ctx.get(), config.c_str()));
        if (*seed_opt || diagrams->count("--seed")) check(ctx.get(), ellh_context_set_seed(ctx.get(), seed));
        if (model_n > 0) check(ctx.get(), ellh_context_set_model_n(ctx.get(), model_n));
        if (!format.empty()) check(ctx.get(), ellh_context_set_format(ctx.get(), format.c_str()));
        ellh_context* c = ctx.get();
        char* out = nullptr;

        if (*descriptor) {
            check(c, ellh_descriptor_json(c, read_arg(group).c_str(), level.c_str(), &out));
            print(take(out));
        } else if (*canon) {
            auto k = load_class(c, cls);
            check(c, ellh_class_to_json(c, k.get(), &out));
            print(take(out));
        } else if (*isom) {
            auto a = load_class(c, cls);
            auto b = load_class(c, cls_b);
            int same = 0;
            check(c, ellh_class_isomorphic(c, a.get(), b.get(), &same));
            print(bool_result(c, same != 0, "isomorphic"));
        } else if (*singular) {
            auto k = load_class(c, cls);
            int sing = 0;
            check(c, ellh_class_is_singular(c, k.get(), &sing));
            print(bool_result(c, sing != 0, "singular"));
        } else if (*underlying) {
            auto k = load_class(c, cls);
            check(c, ellh_class_underlying_json(c, k.get(), &out));
            print(take(out));
        } else if (*hitchin) {
            auto k = load_class(c, cls);
            check(c, ellh_class_hitchin_json(c, k.get(), &out));
            print(take(out));
        } else if (*fiber) {
            check(c, ellh_fiber_json(c, read_arg(group).c_str(), read_arg(base).c_str(), &out));
            print(take(out));
        } else if (*components) {
            check(c, ellh_components(c, family.c_str(), n, &out));
            print(take(out));
        } else if (*freeness) {
            int ok = 0;
            check(c, ellh_verify_freeness(c, h_max, l_max, w_max, &out, &ok));
            return finish_verify(take(out), ok);
        } else if (*quotient) {
            const auto w = parse_weights(weights);
            int ok = 0;
            check(c, ellh_verify_quotient_iso(c, h, w.data(), w.size(), big_n, &out, &ok));
            return finish_verify(take(out), ok);
        } else if (*diagrams) {
            int ok = 0;
            check(c, ellh_verify_diagrams(c, samples, &out, &ok));
            return finish_verify(take(out), ok);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code;
    }
    return kExitOk;
}
