#include "ellhiggs/json_io.hpp"

#include "ellhiggs/errors.hpp"

namespace ellhiggs::json_io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError(std::string("expected an object with key \"") + key + "\"");
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string("key \"") + key + "\" must be an integer");
    return v.get<int>();
}

std::optional<int> optional_int(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (!it->is_number_integer()) throw ParseError(std::string("key \"") + key + "\" must be an integer");
    return it->get<int>();
}

const json& array_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) throw ParseError(std::string("key \"") + key + "\" must be an array");
    return v;
}

std::vector<int> int_array(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an array of integers");
        out.push_back(v.get<int>());
    }
    return out;
}

std::string level_name(Level l) { return l == Level::higgs ? "higgs" : "bundle"; }

}  // namespace

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
    }
}

json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw ParseError("rational must be a string \"p/q\" or an integer, got " + j.dump());
}

json to_json(const CurvePoint& p) { return json::array({to_json(p.a.value()), to_json(p.b.value())}); }

CurvePoint curve_point_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("curve point must be a pair [\"a\",\"b\"], got " + j.dump());
    return {rational_from_json(j[0]), rational_from_json(j[1])};
}

json to_json(const ComplexRational& t) { return json::array({to_json(t.re), to_json(t.im)}); }

ComplexRational complex_from_json(const json& j) {
    if (j.is_array()) {
        if (j.size() != 2) throw ParseError("complex value must be a pair [\"re\",\"im\"], got " + j.dump());
        return {rational_from_json(j[0]), rational_from_json(j[1])};
    }
    return {rational_from_json(j), Rational(0)};
}

json to_json(const CotangentPoint& p) { return {{"x", to_json(p.x)}, {"t", to_json(p.t)}}; }

CotangentPoint cotangent_point_from_json(const json& j) {
    return {curve_point_from_json(field(j, "x")), complex_from_json(field(j, "t"))};
}

json to_json(const GroupLabel& g) {
    json out = {{"family", to_string(g.family)}, {"n", g.n}};
    switch (g.family) {
        case Family::GL:
        case Family::PGL: out["d"] = g.d; break;
        case Family::SL:
        case Family::Sp: break;
        case Family::O:
            out["k"] = g.k;
            out["a"] = g.a;
            break;
        case Family::SO:
            if (g.is_so2()) out["d"] = g.d;
            else out["w2"] = g.w2;
            break;
    }
    return out;
}

GroupLabel label_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("group label must be an object, got " + j.dump());
    const json& fam = field(j, "family");
    if (!fam.is_string()) throw ParseError("key \"family\" must be a string");
    const Family family = parse_family(fam.get<std::string>());
    GroupLabel g;
    switch (family) {
        case Family::GL: g = GroupLabel::gl(int_field(j, "n"), optional_int(j, "d").value_or(0)); break;
        case Family::SL: g = GroupLabel::sl(int_field(j, "n")); break;
        case Family::PGL: g = GroupLabel::pgl(int_field(j, "n"), optional_int(j, "d").value_or(0)); break;
        case Family::Sp: {
            const auto m = optional_int(j, "m");
            const auto n = optional_int(j, "n");
            if (!m && !n) throw ParseError("Sp label needs \"m\" or \"n\"");
            if (m && n && *n != 2 * *m) throw DomainError("Sp label: n must equal 2m");
            g = GroupLabel{Family::Sp, n ? *n : 2 * *m, 0, 0, 0, 0};
            break;
        }
        case Family::O: g = GroupLabel::o(int_field(j, "n"), int_field(j, "k"), optional_int(j, "a").value_or(0)); break;
        case Family::SO: {
            const int n = int_field(j, "n");
            if (n == 2) {
                const auto w2 = optional_int(j, "w2");
                if (w2 && *w2 != 0) throw DomainError("SO(2) has no component with w2 = " + std::to_string(*w2));
                g = GroupLabel::so2(optional_int(j, "d").value_or(0));
            } else {
                g = GroupLabel::so(n, optional_int(j, "w2").value_or(0));
            }
            break;
        }
    }
    g.validate();
    return g;
}

json to_json(const StableBlock& b) { return {{"k", b.k}, {"a", b.a}}; }

StableBlock block_from_json(const json& j) { return {int_field(j, "k"), optional_int(j, "a").value_or(0)}; }

json to_json(const ActionSpec& s) {
    json out = {{"kind", to_string(s.kind)}, {"m", s.m}};
    if (s.kind == ActionKind::sym_and_translate) out["h"] = s.h;
    return out;
}

ActionSpec action_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw ParseError("key \"kind\" must be a string");
    ActionSpec s{parse_action_kind(kind.get<std::string>()), int_field(j, "m"), optional_int(j, "h").value_or(1)};
    s.validate();
    return s;
}

json to_json(const GroupElement& g) {
    return std::visit(
        [](const auto& e) -> json {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, HyperoctahedralElement>) {
                return {{"signs", e.signs.signs()}, {"perm", e.perm.images()}};
            } else {
                return {{"perm", e.perm.images()}, {"shift", to_json(e.shift)}};
            }
        },
        g);
}

GroupElement element_from_json(const json& j) {
    Permutation perm(int_array(field(j, "perm"), "\"perm\""));
    if (j.contains("shift")) return TranslatedPermutation{std::move(perm), curve_point_from_json(j["shift"])};
    if (j.contains("signs")) {
        SignVector signs(int_array(j["signs"], "\"signs\""));
        if (signs.size() != perm.size()) throw DomainError("signs and perm have different lengths");
        return HyperoctahedralElement{std::move(signs), std::move(perm)};
    }
    return HyperoctahedralElement::from_perm(std::move(perm));
}

json to_json(const HiggsClass& c) {
    json out = {{"group", to_json(c.label)}};
    if (c.block) out["block"] = to_json(*c.block);
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back(to_json(p));
    out["points"] = std::move(pts);
    return out;
}

HiggsClass class_from_json(const json& j) {
    const GroupLabel label = label_from_json(field(j, "group"));
    Tuple raw;
    for (const auto& p : array_field(j, "points")) raw.push_back(cotangent_point_from_json(p));
    if (j.contains("block")) return make_class(label, raw, block_from_json(j["block"]));
    return make_class(label, raw);
}

json to_json(const BundleClass& c) {
    json out = {{"group", to_json(c.label)}};
    if (c.block) out["block"] = to_json(*c.block);
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({{"x", to_json(p)}});
    out["points"] = std::move(pts);
    return out;
}

BundleClass bundle_from_json(const json& j) {
    const GroupLabel label = label_from_json(field(j, "group"));
    std::vector<CurvePoint> raw;
    for (const auto& p : array_field(j, "points")) raw.push_back(curve_point_from_json(field(p, "x")));
    BundleClass out = make_bundle_class(label, raw);
    if (j.contains("block") && std::optional<StableBlock>(block_from_json(j["block"])) != out.block) {
        throw DomainError("stable block tag inconsistent with " + to_string(label));
    }
    return out;
}

json to_json(const ModuliDescriptor& d) {
    return {{"group", to_json(d.label)},
            {"level", level_name(d.level)},
            {"copies", d.copies},
            {"action", to_string(d.action.kind)},
            {"action_spec", to_json(d.action)},
            {"constraints", d.constraints},
            {"dim", d.dimension},
            {"presentation", d.presentation}};
}

json to_json(const HitchinBasePoint& b) {
    json t = json::array();
    for (const auto& v : b.t) t.push_back(to_json(v));
    return {{"group", to_json(b.label)}, {"t", std::move(t)}};
}

HitchinBasePoint base_point_from_json(const GroupLabel& label, const json& j) {
    const json& arr = j.is_array() ? j : array_field(j, "t");
    if (!arr.is_array()) throw ParseError("base point t must be an array");
    std::vector<ComplexRational> t;
    for (const auto& v : arr) t.push_back(complex_from_json(v));
    if (j.is_object() && j.contains("group") && !(label_from_json(j["group"]) == label)) {
        throw DomainError("base point group differs from the requested group " + to_string(label));
    }
    return make_base_point(label, t);
}

json hitchin_report(const HitchinBasePoint& b) {
    json out = to_json(b);
    json e = json::array();
    for (const auto& v : elementary_symmetric(eigenvalues(b))) e.push_back(to_json(v));
    json cp = json::array();
    for (const auto& v : char_poly(b)) cp.push_back(to_json(v));
    out["elementary"] = std::move(e);
    out["char_poly"] = std::move(cp);
    if (auto pf = pfaffian(b)) out["pfaffian"] = to_json(*pf);
    out["pattern"] = to_json(spectral_pattern(b));
    return out;
}

json to_json(const SpectralPattern& p) {
    json groups = json::array();
    for (const auto& [v, m] : p.groups) groups.push_back(json::array({to_json(v), m}));
    json out = {{"m0", p.m0}, {"groups", std::move(groups)}, {"generic", p.generic}};
    if (p.delta_kind) out["kind"] = to_string(*p.delta_kind);
    return out;
}

json to_json(const FiberDescriptor& d) {
    json fiber = json::array();
    for (const auto& f : d.fiber) {
        switch (f.kind) {
            case FiberFactor::Kind::projective: fiber.push_back(json::array({"P", f.dims.at(0)})); break;
            case FiberFactor::Kind::projective_quotient: fiber.push_back(json::array({"P/X[r]", f.dims, f.r})); break;
            case FiberFactor::Kind::delta_quotient: fiber.push_back(json::array({"X/Delta", f.dims.at(0)})); break;
        }
    }
    json stratum = json::array();
    for (const auto& s : d.stratum) {
        switch (s.kind) {
            case StratumFactor::Kind::sym: stratum.push_back(json::array({"Sym", s.m})); break;
            case StratumFactor::Kind::sym_z2: stratum.push_back(json::array({"Sym/Z2", s.m})); break;
            case StratumFactor::Kind::delta: stratum.push_back(json::array({"X/Delta", s.m})); break;
        }
    }
    json out = {{"base", json::array({"X", d.base_dim})},
                {"fiber", std::move(fiber)},
                {"stratum", std::move(stratum)},
                {"sum_zero", d.sum_zero_slice}};
    if (d.r) out["r"] = *d.r;
    if (d.needs_review) out["review"] = true;
    return out;
}

json to_json(const FiberCount& c) { return {{"N", c.n}, {"enumerated", c.enumerated}, {"predicted", c.predicted}}; }

json to_json(const LemmaReport& r) {
    json out = {{"statement", r.statement}, {"parameters", r.parameters}, {"verdict", r.confirmed ? "confirmed" : "refuted"}};
    if (r.witness) out["witness"] = *r.witness;
    if (r.counts) out["counts"] = {{"orbits", r.counts->first}, {"expected", r.counts->second}};
    if (r.seed) out["seed"] = *r.seed;
    if (!r.failures.empty()) out["failures"] = r.failures;
    if (!r.parts.empty()) {
        json parts = json::array();
        for (const auto& p : r.parts) parts.push_back(to_json(p));
        out["parts"] = std::move(parts);
    }
    return out;
}

}  // namespace ellhiggs::json_io
