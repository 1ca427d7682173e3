#include "ellhiggs/ellhiggs.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "ellhiggs/errors.hpp"
#include "ellhiggs/json_io.hpp"

namespace jio = ellhiggs::json_io;
using nlohmann::json;

struct ellh_context {
    std::int64_t model_n = 3;
    std::uint64_t seed = 42;
    std::string format = "json";
    std::int64_t fiber_cap = ellhiggs::kFiberModelCap;
    std::string last_error;
};

struct ellh_class {
    ellhiggs::HiggsClass value;
};

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class F>
ellh_status guarded(ellh_context* ctx, F&& body) {
    if (ctx == nullptr) return ELLH_ERR_USAGE;
    ctx->last_error.clear();
    try {
        body();
        return ELLH_OK;
    } catch (const UsageError& e) {
        ctx->last_error = e.what();
        return ELLH_ERR_USAGE;
    } catch (const ellhiggs::ParseError& e) {
        ctx->last_error = e.what();
        return ELLH_ERR_PARSE;
    } catch (const json::exception& e) {
        ctx->last_error = std::string("malformed value: ") + e.what();
        return ELLH_ERR_PARSE;
    } catch (const ellhiggs::DomainError& e) {
        ctx->last_error = e.what();
        return ELLH_ERR_DOMAIN;
    } catch (const ellhiggs::SizeError& e) {
        ctx->last_error = e.what();
        return ELLH_ERR_SIZE;
    } catch (const std::exception& e) {
        ctx->last_error = std::string("internal error: ") + e.what();
        return ELLH_ERR_INTERNAL;
    }
}

template <class T>
T& require(T* p, const char* what) {
    if (p == nullptr) throw UsageError(std::string(what) + " must not be NULL");
    return *p;
}

const char* require_str(const char* s, const char* what) {
    if (s == nullptr) throw UsageError(std::string(what) + " must not be NULL");
    return s;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** out, const std::string& s) { require(out, "out") = dup_string(s); }

std::string json_lines(const std::vector<ellhiggs::LemmaReport>& reports, int* all_confirmed) {
    std::string text;
    bool ok = true;
    for (const auto& r : reports) {
        text += jio::to_json(r).dump() + "\n";
        ok = ok && r.confirmed;
    }
    if (all_confirmed) *all_confirmed = ok ? 1 : 0;
    return text;
}

std::string join_weights(const json& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? ";" : "") + std::to_string(w[i].get<int>());
    return out;
}

}  // namespace

extern "C" {

const char* ellh_version(void) { return "0.1.0"; }

const char* ellh_status_name(ellh_status status) {
    switch (status) {
        case ELLH_OK: return "ok";
        case ELLH_ERR_DOMAIN: return "domain error";
        case ELLH_ERR_PARSE: return "parse error";
        case ELLH_ERR_USAGE: return "usage error";
        case ELLH_ERR_SIZE: return "size error";
        case ELLH_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

ellh_status ellh_context_new(ellh_context** out) {
    if (out == nullptr) return ELLH_ERR_USAGE;
    try {
        *out = new ellh_context();
    } catch (...) {
        return ELLH_ERR_INTERNAL;
    }
    return ELLH_OK;
}

void ellh_context_free(ellh_context* ctx) { delete ctx; }

const char* ellh_last_error(const ellh_context* ctx) { return ctx ? ctx->last_error.c_str() : "no context"; }

ellh_status ellh_context_load_config(ellh_context* ctx, const char* path) {
    return guarded(ctx, [&] {
        std::ifstream in(require_str(path, "path"));
        if (!in) throw UsageError(std::string("cannot open config file ") + path);
        std::stringstream buf;
        buf << in.rdbuf();
        const json cfg = jio::parse(buf.str());
        if (!cfg.is_object()) throw ellhiggs::ParseError("config must be a JSON object");
        ellh_context next = *ctx;
        if (cfg.contains("model_n")) next.model_n = cfg["model_n"].get<std::int64_t>();
        if (cfg.contains("seed")) next.seed = cfg["seed"].get<std::uint64_t>();
        if (cfg.contains("format")) next.format = cfg["format"].get<std::string>();
        if (cfg.contains("fiber_cap")) next.fiber_cap = cfg["fiber_cap"].get<std::int64_t>();
        if (next.model_n < 1) throw ellhiggs::DomainError("config: model_n must be at least 1");
        if (next.fiber_cap < 1) throw ellhiggs::DomainError("config: fiber_cap must be positive");
        if (next.format != "json" && next.format != "csv") throw ellhiggs::ParseError("config: format must be json or csv");
        next.last_error.clear();
        *ctx = std::move(next);
    });
}

ellh_status ellh_context_set_model_n(ellh_context* ctx, int64_t n) {
    return guarded(ctx, [&] {
        if (n < 1) throw ellhiggs::DomainError("model level N must be at least 1, got " + std::to_string(n));
        ctx->model_n = n;
    });
}

ellh_status ellh_context_set_seed(ellh_context* ctx, uint64_t seed) {
    return guarded(ctx, [&] { ctx->seed = seed; });
}

ellh_status ellh_context_set_format(ellh_context* ctx, const char* format) {
    return guarded(ctx, [&] {
        const std::string f = require_str(format, "format");
        if (f != "json" && f != "csv") throw UsageError("format must be json or csv, got " + f);
        ctx->format = f;
    });
}

int64_t ellh_context_model_n(const ellh_context* ctx) { return ctx ? ctx->model_n : 0; }
uint64_t ellh_context_seed(const ellh_context* ctx) { return ctx ? ctx->seed : 0; }
const char* ellh_context_format(const ellh_context* ctx) { return ctx ? ctx->format.c_str() : "json"; }

void ellh_string_free(char* s) { std::free(s); }

ellh_status ellh_class_from_json(ellh_context* ctx, const char* text, ellh_class** out) {
    return guarded(ctx, [&] {
        auto& slot = require(out, "out");
        auto c = std::make_unique<ellh_class>();
        c->value = jio::class_from_json(jio::parse(require_str(text, "json")));
        slot = c.release();
    });
}

void ellh_class_free(ellh_class* c) { delete c; }

ellh_status ellh_class_to_json(ellh_context* ctx, const ellh_class* c, char** out) {
    return guarded(ctx, [&] { emit(out, jio::to_json(require(c, "class").value).dump()); });
}

ellh_status ellh_class_isomorphic(ellh_context* ctx, const ellh_class* a, const ellh_class* b, int* out) {
    return guarded(ctx, [&] {
        require(out, "out") = ellhiggs::isomorphic(require(a, "a").value, require(b, "b").value) ? 1 : 0;
    });
}

ellh_status ellh_class_is_singular(ellh_context* ctx, const ellh_class* c, int* out) {
    return guarded(ctx, [&] { require(out, "out") = ellhiggs::is_singular(require(c, "class").value) ? 1 : 0; });
}

ellh_status ellh_class_underlying_json(ellh_context* ctx, const ellh_class* c, char** out) {
    return guarded(ctx, [&] {
        emit(out, jio::to_json(ellhiggs::underlying_bundle(require(c, "class").value)).dump());
    });
}

ellh_status ellh_class_hitchin_json(ellh_context* ctx, const ellh_class* c, char** out) {
    return guarded(ctx, [&] {
        emit(out, jio::hitchin_report(ellhiggs::hitchin_map(require(c, "class").value)).dump());
    });
}

ellh_status ellh_class_det_tr_json(ellh_context* ctx, const ellh_class* c, char** out) {
    return guarded(ctx, [&] { emit(out, jio::to_json(ellhiggs::det_tr(require(c, "class").value)).dump()); });
}

ellh_status ellh_class_translate(ellh_context* ctx, const ellh_class* c, const char* point_json, ellh_class** out) {
    return guarded(ctx, [&] {
        auto& slot = require(out, "out");
        const auto w = jio::cotangent_point_from_json(jio::parse(require_str(point_json, "point_json")));
        auto moved = std::make_unique<ellh_class>();
        moved->value = ellhiggs::translate(require(c, "class").value, w);
        slot = moved.release();
    });
}

ellh_status ellh_descriptor_json(ellh_context* ctx, const char* group_json, const char* level, char** out) {
    return guarded(ctx, [&] {
        const auto label = jio::label_from_json(jio::parse(require_str(group_json, "group_json")));
        const std::string lv = level ? level : "higgs";
        if (lv != "higgs" && lv != "bundle") throw UsageError("level must be higgs or bundle, got " + lv);
        const auto d = ellhiggs::descriptor(label, lv == "higgs" ? ellhiggs::Level::higgs : ellhiggs::Level::bundle);
        emit(out, jio::to_json(d).dump());
    });
}

ellh_status ellh_fiber_json(ellh_context* ctx, const char* group_json, const char* base_json, char** out) {
    return guarded(ctx, [&] {
        const auto label = jio::label_from_json(jio::parse(require_str(group_json, "group_json")));
        const auto b = jio::base_point_from_json(label, jio::parse(require_str(base_json, "base_json")));
        const auto fd = ellhiggs::fiber_descriptor(label, b);
        const auto count = ellhiggs::fiber_count_model(label, b, ctx->model_n, ctx->fiber_cap);
        const json result = {{"group", jio::to_json(label)},
                             {"base", jio::to_json(b)["t"]},
                             {"pattern", jio::to_json(ellhiggs::spectral_pattern(b))},
                             {"descriptor", jio::to_json(fd)},
                             {"model", jio::to_json(count)}};
        emit(out, result.dump());
    });
}

ellh_status ellh_components(ellh_context* ctx, const char* family, int n, char** out) {
    return guarded(ctx, [&] {
        const auto fam = ellhiggs::parse_family(require_str(family, "family"));
        if (fam != ellhiggs::Family::O && fam != ellhiggs::Family::SO) {
            throw UsageError("components are listed for O and SO only");
        }
        const auto labels = ellhiggs::list_components(fam, n);
        if (ctx->format == "csv") {
            std::string text = "family,n,k,a,w2,d,copies\n";
            for (const auto& g : labels) {
                const auto block = ellhiggs::forced_block(g);
                text += ellhiggs::to_string(g.family) + "," + std::to_string(g.n) + "," +
                        std::to_string(block ? block->k : 0) + "," + std::to_string(block ? block->a : 0) + "," +
                        std::to_string(g.w2) + "," + std::to_string(g.d) + "," +
                        std::to_string(ellhiggs::descriptor(g).copies) + "\n";
            }
            emit(out, text);
            return;
        }
        json arr = json::array();
        for (const auto& g : labels) {
            json entry = {{"group", jio::to_json(g)}, {"copies", ellhiggs::descriptor(g).copies}};
            if (const auto block = ellhiggs::forced_block(g)) {
                entry["block"] = jio::to_json(*block);
                json lines = json::array();
                for (const auto& p : block->lines()) lines.push_back(jio::to_json(p));
                entry["lines"] = std::move(lines);
            }
            arr.push_back(std::move(entry));
        }
        emit(out, arr.dump());
    });
}

ellh_status ellh_verify_freeness(ellh_context* ctx, int h_max, int l_max, int w_max, char** out, int* all_confirmed) {
    return guarded(ctx, [&] {
        if (h_max < 1 || l_max < 1 || w_max < 0) throw UsageError("h_max and l_max must be positive, w_max >= 0");
        const auto reports = ellhiggs::freeness_sweep(h_max, l_max, w_max);
        if (ctx->format == "csv") {
            std::string text = "h,weights,r,free,verdict\n";
            bool ok = true;
            for (const auto& r : reports) {
                const json& p = r.parameters;
                text += std::to_string(p["h"].get<int>()) + "," + join_weights(p["weights"]) + "," +
                        std::to_string(p["r"].get<int>()) + "," + (p["free"].get<bool>() ? "true" : "false") + "," +
                        (r.confirmed ? "confirmed" : "refuted") + "\n";
                ok = ok && r.confirmed;
            }
            if (all_confirmed) *all_confirmed = ok ? 1 : 0;
            emit(out, text);
            return;
        }
        emit(out, json_lines(reports, all_confirmed));
    });
}

ellh_status ellh_verify_quotient_iso(ellh_context* ctx, int h, const int* weights, size_t l, int64_t n, char** out,
                                     int* all_confirmed) {
    return guarded(ctx, [&] {
        if (l > 0 && weights == nullptr) throw UsageError("weights must not be NULL");
        const std::vector<int> w(weights, weights + l);
        emit(out, json_lines({ellhiggs::check_quotient_iso(h, w, n)}, all_confirmed));
    });
}

ellh_status ellh_verify_diagrams(ellh_context* ctx, int samples, char** out, int* all_confirmed) {
    return guarded(ctx, [&] { emit(out, json_lines(ellhiggs::check_diagrams(ctx->seed, samples), all_confirmed)); });
}

}  // extern "C"
