#include "ellhiggs/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unordered_set>

#include "ellhiggs/errors.hpp"
#include "ellhiggs/hitchin.hpp"
#include "ellhiggs/moduli.hpp"

namespace ellhiggs {

namespace {

int gcd_all(int h, const std::vector<int>& weights) {
    int r = h;
    for (int m : weights) r = std::gcd(r, std::abs(m));
    return r;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < e; ++i) out = detail::checked_mul(out, b);
    return out;
}

/// Tuples of X[N]^l encoded in mixed radix N^2, coordinate 0 most significant.
class TupleSpace {
public:
    TupleSpace(std::int64_t n, std::size_t l) : lattice_(n), l_(l), size_(ipow(n * n, static_cast<std::int64_t>(l))) {}

    std::int64_t size() const { return size_; }
    const TorsionLattice& lattice() const { return lattice_; }

    std::vector<std::int64_t> decode(std::int64_t code) const {
        std::vector<std::int64_t> out(l_);
        for (std::size_t i = l_; i > 0; --i) {
            out[i - 1] = code % lattice_.size();
            code /= lattice_.size();
        }
        return out;
    }

    std::int64_t encode(const std::vector<std::int64_t>& z) const {
        std::int64_t code = 0;
        for (auto p : z) code = code * lattice_.size() + p;
        return code;
    }

    std::int64_t act(std::int64_t code, const std::vector<int>& weights, std::int64_t w) const {
        std::vector<std::int64_t> z = decode(code);
        for (std::size_t i = 0; i < l_; ++i) z[i] = lattice_.add(z[i], lattice_.mul(weights[i], w));
        return encode(z);
    }

private:
    TorsionLattice lattice_;
    std::size_t l_;
    std::int64_t size_;
};

class Partition {
public:
    explicit Partition(std::int64_t n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), std::int64_t{0});
    }
    std::int64_t find(std::int64_t i) {
        while (parent_[static_cast<std::size_t>(i)] != i) {
            auto& p = parent_[static_cast<std::size_t>(i)];
            p = parent_[static_cast<std::size_t>(p)];
            i = p;
        }
        return i;
    }
    void unite(std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::int64_t roots() {
        std::int64_t out = 0;
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(parent_.size()); ++i) out += find(i) == i;
        return out;
    }

private:
    std::vector<std::int64_t> parent_;
};

/// The two basic generators of X[k] inside X[N].
std::vector<std::int64_t> basic_generators(const TorsionLattice& lattice, int k) {
    if (k == 1) return {};
    const std::int64_t step = lattice.level() / k;
    return {lattice.index(step, 0), lattice.index(0, step)};
}

nlohmann::json params(int h, const std::vector<int>& weights) {
    return {{"h", h}, {"weights", weights}, {"l", weights.size()}};
}

}  // namespace

std::int64_t inverse_mod(std::int64_t a, std::int64_t h) {
    if (h < 1) throw DomainError("modulus must be positive");
    std::int64_t old_r = ((a % h) + h) % h, r = h, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    }
    if (h == 1) return 0;
    if (old_r != 1) throw DomainError(std::to_string(a) + " is not invertible modulo " + std::to_string(h));
    return ((old_s % h) + h) % h;
}

LemmaReport check_freeness(int h, const std::vector<int>& weights) {
    if (h < 1) throw DomainError("check_freeness: h must be positive, got " + std::to_string(h));
    LemmaReport out;
    out.statement = "weighted-action-freeness";
    const int r = gcd_all(h, weights);
    out.parameters = params(h, weights);
    out.parameters["r"] = r;

    const TorsionLattice lattice(h);
    std::optional<std::int64_t> fixed;
    for (std::int64_t a = 1; a < lattice.size() && !fixed; ++a) {
        bool fixes = true;
        for (int m : weights) fixes = fixes && lattice.mul(m, a) == 0;
        if (fixes) fixed = a;
    }
    const bool free = !fixed;
    const bool predicted_free = r == 1;
    out.confirmed = free == predicted_free;
    out.parameters["free"] = free;
    out.parameters["predicted_free"] = predicted_free;
    if (fixed) out.witness = to_string(lattice.to_point(*fixed));
    if (!out.confirmed) {
        out.failures.push_back("enumeration says " + std::string(free ? "free" : "not free") + " but gcd(h, m) = " +
                               std::to_string(r));
        if (!out.witness) out.witness = "no nonzero fixed point";
    }
    return out;
}

std::vector<LemmaReport> freeness_sweep(int h_max, int l_max, int w_max) {
    std::vector<LemmaReport> out;
    for (int h = 1; h <= h_max; ++h) {
        for (int l = 1; l <= l_max; ++l) {
            std::vector<int> w(static_cast<std::size_t>(l), 0);
            while (true) {
                out.push_back(check_freeness(h, w));
                int i = l - 1;
                while (i >= 0 && w[static_cast<std::size_t>(i)] == w_max) w[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
                ++w[static_cast<std::size_t>(i)];
            }
        }
    }
    return out;
}

LemmaReport check_quotient_iso(int h, const std::vector<int>& weights, std::int64_t n) {
    if (h < 1) throw DomainError("check_quotient_iso: h must be positive, got " + std::to_string(h));
    if (n < 1 || n % h != 0) {
        throw DomainError("check_quotient_iso: N must be a positive multiple of h, got h = " + std::to_string(h) +
                          ", N = " + std::to_string(n));
    }
    LemmaReport out;
    out.statement = "weighted-quotient";
    out.parameters = params(h, weights);
    out.parameters["N"] = n;
    const int r = gcd_all(h, weights);
    out.parameters["r"] = r;
    const std::size_t l = weights.size();

    const TupleSpace space(n, l);
    const TorsionLattice& lattice = space.lattice();
    const std::vector<std::int64_t> gens = basic_generators(lattice, h);

    Partition orbits(space.size());
    for (std::int64_t code = 0; code < space.size(); ++code) {
        for (auto w : gens) orbits.unite(code, space.act(code, weights, w));
    }
    const std::int64_t count = orbits.roots();
    const std::int64_t expected = detail::checked_mul(r * r, space.size()) / (h * h);
    out.counts = std::make_pair(count, expected);
    if (count != expected) {
        out.confirmed = false;
        out.failures.push_back("orbit count " + std::to_string(count) + " differs from r^2 N^(2l)/h^2 = " +
                               std::to_string(expected));
        out.witness = "orbit count " + std::to_string(count);
    }
    if (l == 0) return out;

    const int r1 = std::gcd(h, std::abs(weights[0]));
    if (r1 == 1) {
        // (a_1, ..., a_l) -> (h a_1, a_2 - p m_2 a_1, ...), p m_1 = 1 mod h.
        const std::int64_t p = inverse_mod(weights[0], h);
        out.parameters["bezout_p"] = p;
        auto orbit_map = [&](std::int64_t code) {
            std::vector<std::int64_t> a = space.decode(code);
            const std::int64_t a1 = a[0];
            a[0] = lattice.mul(h, a1);
            for (std::size_t i = 1; i < l; ++i) {
                const std::int64_t coef = (p * weights[i]) % n;
                a[i] = lattice.add(a[i], lattice.neg(lattice.mul(coef, a1)));
            }
            return space.encode(a);
        };
        LemmaReport map_report;
        map_report.statement = "bezout-orbit-map";
        map_report.parameters = {{"p", p}};
        for (std::int64_t code = 0; code < space.size() && map_report.failures.size() < 5; ++code) {
            for (auto w : gens) {
                const std::int64_t moved = space.act(code, weights, w);
                if (orbit_map(code) != orbit_map(moved)) {
                    map_report.confirmed = false;
                    map_report.failures.push_back("map not constant on the orbit of tuple code " + std::to_string(code));
                    map_report.witness = std::to_string(code);
                }
            }
        }
        std::unordered_set<std::int64_t> images;
        for (std::int64_t code = 0; code < space.size(); ++code) {
            if (orbits.find(code) == code) images.insert(orbit_map(code));
        }
        const std::int64_t image_size = static_cast<std::int64_t>(images.size());
        const std::int64_t expected_image = detail::checked_mul((n / h) * (n / h), space.size() / (n * n));
        map_report.counts = std::make_pair(image_size, expected_image);
        if (image_size != count) {
            map_report.confirmed = false;
            map_report.failures.push_back("map not injective on orbit representatives: " + std::to_string(image_size) +
                                          " images for " + std::to_string(count) + " orbits");
        }
        if (image_size != expected_image) {
            map_report.confirmed = false;
            map_report.failures.push_back("image has " + std::to_string(image_size) + " points, expected |X[N/h]| N^(2(l-1)) = " +
                                          std::to_string(expected_image));
        }
        if (!map_report.confirmed && !map_report.witness) map_report.witness = "image size " + std::to_string(image_size);
        out.confirmed = out.confirmed && map_report.confirmed;
        out.parts.push_back(std::move(map_report));
        return out;
    }

    // gcd(m_1, h) = r1 > 1: X[r1] fixes the first coordinate, so its orbits
    // are those of the weighted (m_2..m_l)-action at level r1; X[h] then acts
    // on those classes.
    LemmaReport stage;
    stage.statement = "factor-through-subgroup";
    stage.parameters = {{"r1", r1}};
    const std::vector<std::int64_t> sub_gens = basic_generators(lattice, r1);
    Partition first(space.size());
    for (std::int64_t code = 0; code < space.size(); ++code) {
        for (auto w : sub_gens) first.unite(code, space.act(code, weights, w));
    }
    const std::int64_t first_count = first.roots();
    const std::vector<int> tail(weights.begin() + 1, weights.end());
    const int r_tail = gcd_all(r1, tail);
    const std::int64_t first_expected = detail::checked_mul(r_tail * r_tail, space.size()) / (r1 * r1);
    if (first_count != first_expected) {
        stage.confirmed = false;
        stage.failures.push_back("X[r1] orbit count " + std::to_string(first_count) + ", expected " +
                                 std::to_string(first_expected));
    }
    for (auto w : gens) {
        for (std::int64_t code = 0; code < space.size(); ++code) first.unite(code, space.act(code, weights, w));
    }
    const std::int64_t second_count = first.roots();
    stage.counts = std::make_pair(second_count, expected);
    if (second_count != count) {
        stage.confirmed = false;
        stage.failures.push_back("two-stage count " + std::to_string(second_count) + " differs from direct count " +
                                 std::to_string(count));
    }
    if (!tail.empty()) {
        LemmaReport sub = check_quotient_iso(r1, tail, n);
        stage.confirmed = stage.confirmed && sub.confirmed;
        stage.parts.push_back(std::move(sub));
    }
    if (!stage.confirmed && !stage.witness) stage.witness = "stage counts " + std::to_string(first_count);
    out.confirmed = out.confirmed && stage.confirmed;
    out.parts.push_back(std::move(stage));
    return out;
}

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    CurvePoint point(std::int64_t n) { return CurvePoint::torsion(uniform(0, n - 1), uniform(0, n - 1), n); }

    CurvePoint point() {
        static constexpr std::int64_t levels[] = {1, 2, 3, 4, 6};
        return point(levels[uniform(0, 4)]);
    }

    ComplexRational value() {
        return {make_rational(uniform(-4, 4), uniform(1, 3)), make_rational(uniform(-2, 2), uniform(1, 2))};
    }

    /// Random t-tuple; repeated, opposite and zero values are made likely.
    std::vector<ComplexRational> values(std::size_t m) {
        std::vector<ComplexRational> out;
        for (std::size_t i = 0; i < m; ++i) {
            const auto mode = uniform(0, 5);
            if (i > 0 && mode == 0) out.push_back(out[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
            else if (i > 0 && mode == 1) out.push_back(-out[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
            else if (mode == 2) out.emplace_back();
            else out.push_back(value());
        }
        return out;
    }

    Tuple tuple(std::size_t m) {
        const auto t = values(m);
        Tuple out;
        for (std::size_t i = 0; i < m; ++i) out.push_back({point(), t[i]});
        return out;
    }

    /// Tuple with sum x = 0 and sum t = 0.
    Tuple balanced(std::size_t m) {
        Tuple out = tuple(m);
        if (m == 0) return out;
        CotangentPoint s;
        for (std::size_t i = 0; i + 1 < m; ++i) s = s + out[i];
        out.back() = -s;
        return out;
    }

    Permutation permutation(int m) {
        std::vector<int> images(static_cast<std::size_t>(m));
        std::iota(images.begin(), images.end(), 0);
        std::shuffle(images.begin(), images.end(), rng_);
        return Permutation(std::move(images));
    }

    GroupElement element(const ActionSpec& spec) {
        Permutation perm = permutation(spec.m);
        if (spec.kind == ActionKind::sym_and_translate) return TranslatedPermutation{std::move(perm), point(spec.h)};
        std::vector<int> signs(static_cast<std::size_t>(spec.m), 1);
        if (spec.kind != ActionKind::sym) {
            for (auto& s : signs) s = uniform(0, 1) ? -1 : 1;
        }
        if (spec.kind == ActionKind::even_sign && spec.m > 0 && std::count(signs.begin(), signs.end(), -1) % 2 != 0) {
            signs[0] = -signs[0];
        }
        return HyperoctahedralElement{SignVector(std::move(signs)), std::move(perm)};
    }

private:
    std::mt19937_64 rng_;
};

class DiagramReport {
public:
    DiagramReport(std::string family, std::uint64_t seed, int samples) {
        report_.statement = "diagrams/" + std::move(family);
        report_.seed = seed;
        report_.parameters = {{"seed", seed}, {"samples", samples}, {"labels", nlohmann::json::array()}};
    }

    void add_label(const GroupLabel& g) { report_.parameters["labels"].push_back(to_string(g)); }

    void expect(bool ok, const std::string& what, const Tuple& input) {
        ++checks_;
        if (ok) return;
        ++failed_;
        if (report_.failures.size() < 10) report_.failures.push_back(what + " failed on " + to_string(input));
        if (!report_.witness) report_.witness = to_string(input);
    }

    LemmaReport finish() {
        report_.confirmed = failed_ == 0;
        report_.counts = std::make_pair(checks_ - failed_, checks_);
        report_.parameters["checks"] = checks_;
        return std::move(report_);
    }

private:
    LemmaReport report_;
    std::int64_t checks_ = 0;
    std::int64_t failed_ = 0;
};

Tuple with_xs_moved(Tuple z, Sampler& rng, bool keep_sum) {
    if (z.empty()) return z;
    if (keep_sum) {
        if (z.size() < 2) return z;
        const CurvePoint y = rng.point();
        z[0].x = z[0].x + y;
        z[1].x = z[1].x - y;
        return z;
    }
    for (auto& p : z) p.x = rng.point();
    return z;
}

void check_gl(const GroupLabel& label, Sampler& rng, DiagramReport& rep) {
    const ModuliDescriptor desc = descriptor(label);
    const Tuple z = rng.tuple(static_cast<std::size_t>(desc.copies));
    const HiggsClass c = make_class(label, z);
    const CotangentPoint s = sum(std::span<const CotangentPoint>(z));

    rep.expect(det_tr(c) == s, "det_tr equals the coordinate sum", z);
    const Tuple permuted = act(rng.permutation(desc.copies), z);
    rep.expect(det_tr(make_class(label, permuted)) == det_tr(c), "det_tr permutation invariance", z);

    const CotangentPoint v{rng.point(), rng.value()};
    const CotangentPoint w{rng.point(), rng.value()};
    rep.expect(det_tr(translate(c, w)) == det_tr(c) + scalar_mul(label.n, w), "det_tr o translate law", z);
    rep.expect(translate(translate(c, v), w) == translate(c, v + w), "translate is an action", z);
    rep.expect(translate(c, CotangentPoint{}) == c, "translate by zero", z);

    const CotangentPoint x_only{rng.point(), {}};
    rep.expect(hitchin_map(translate(c, x_only)) == hitchin_map(c), "hitchin o x-translation", z);
    rep.expect(hitchin_map(make_class(label, with_xs_moved(z, rng, false))) == hitchin_map(c), "hitchin ignores x", z);
    rep.expect(elementary_symmetric(eigenvalues(hitchin_map(c))).at(0) == det_tr(c).t, "e_1 equals the trace", z);
    rep.expect(underlying_bundle(translate(c, x_only)) == translate(underlying_bundle(c), x_only.x),
               "underlying bundle o translate", z);
}

void check_sl(const GroupLabel& label, Sampler& rng, DiagramReport& rep) {
    const int n = label.n;
    const Tuple z = rng.balanced(static_cast<std::size_t>(n));
    const HiggsClass c = make_class(label, z);

    auto chart = [](const Tuple& full) { return Tuple(full.begin(), full.end() - 1); };
    auto lift = [](const Tuple& coords) {
        CotangentPoint s;
        for (const auto& p : coords) s = s + p;
        Tuple out = coords;
        out.push_back(-s);
        return out;
    };
    auto chart_action = [&](const Permutation& g, const Tuple& coords) { return chart(act(g, lift(coords))); };

    const Tuple coords = chart(z);
    rep.expect(lift(coords) == z, "chart round trip", z);
    std::set<Tuple> images;
    bool same_class = true;
    for (const auto& g : group_elements(ActionSpec::sym(n))) {
        const auto& perm = std::get<HyperoctahedralElement>(g).perm;
        const Tuple moved = chart_action(perm, coords);
        images.insert(moved);
        same_class = same_class && make_class(label, lift(moved)) == c;
    }
    rep.expect(same_class, "chart action preserves the sorted class", z);
    rep.expect(static_cast<std::int64_t>(images.size()) ==
                   detail::factorial(n) / stabilizer_order(ActionSpec::sym(n), z),
               "chart orbit size equals the S_n orbit size", z);
    const Permutation p = rng.permutation(n);
    const Permutation q = rng.permutation(n);
    rep.expect(chart_action(p, chart_action(q, coords)) == chart_action(p * q, coords), "chart action composes", z);

    rep.expect(det_tr(make_class(GroupLabel::gl(n, 0), z)) == CotangentPoint{}, "SL slice lies over (O, 0)", z);
    rep.expect(hitchin_map(make_class(label, with_xs_moved(z, rng, true))) == hitchin_map(c), "hitchin ignores x", z);
    rep.expect(char_poly(hitchin_map(c)).at(0).is_zero(), "traceless characteristic polynomial", z);
}

void check_generic(const GroupLabel& label, Sampler& rng, DiagramReport& rep) {
    const ModuliDescriptor desc = descriptor(label);
    const std::size_t m = static_cast<std::size_t>(desc.copies);
    const bool balanced = label.family == Family::PGL;
    const Tuple z = balanced ? rng.balanced(m) : rng.tuple(m);
    const HiggsClass c = make_class(label, z);
    const HitchinBasePoint b = hitchin_map(c);

    const GroupElement g = rng.element(desc.action);
    const HiggsClass moved = make_class(label, act(g, z));
    rep.expect(isomorphic(moved, c), "class invariant under the group", z);
    rep.expect(hitchin_map(moved) == b, "hitchin invariant under the group", z);
    rep.expect(char_poly(hitchin_map(moved)) == char_poly(b), "char_poly invariant under the group", z);
    rep.expect(pfaffian(hitchin_map(moved)) == pfaffian(b), "pfaffian invariant under the group", z);
    rep.expect(hitchin_map(make_class(label, with_xs_moved(z, rng, balanced))) == b, "hitchin ignores x", z);
    if (balanced && !z.empty()) {
        const CurvePoint w = rng.point(desc.copies);
        rep.expect(make_class(label, translate_all(z, w)) == c, "X[h]-translation invariance", z);
    }
    rep.expect(underlying_bundle(moved) == underlying_bundle(c), "underlying bundle invariant", z);
}

}  // namespace

std::vector<LemmaReport> check_diagrams(std::uint64_t seed, int samples) {
    if (samples < 1) throw DomainError("check_diagrams: samples must be positive, got " + std::to_string(samples));
    struct Suite {
        std::string family;
        std::vector<GroupLabel> labels;
        void (*check)(const GroupLabel&, Sampler&, DiagramReport&);
    };
    const std::vector<Suite> suites{
        {"GL", {GroupLabel::gl(6, 4), GroupLabel::gl(3, 0), GroupLabel::gl(4, 2), GroupLabel::gl(5, 1)}, check_gl},
        {"SL", {GroupLabel::sl(2), GroupLabel::sl(3), GroupLabel::sl(4)}, check_sl},
        {"PGL", {GroupLabel::pgl(2, 0), GroupLabel::pgl(4, 2), GroupLabel::pgl(3, 0), GroupLabel::pgl(6, 2)}, check_generic},
        {"Sp", {GroupLabel::sp(1), GroupLabel::sp(2), GroupLabel::sp(3)}, check_generic},
        {"O", {GroupLabel::o(5, 1, 2), GroupLabel::o(6, 2, 3), GroupLabel::o(4, 0, 0), GroupLabel::o(7, 3, 1)}, check_generic},
        {"SO",
         {GroupLabel::so(8, 0), GroupLabel::so(7, 1), GroupLabel::so(6, 1), GroupLabel::so(5, 0), GroupLabel::so(4, 0),
          GroupLabel::so2(0)},
         check_generic},
    };
    std::vector<LemmaReport> out;
    std::uint64_t suite_index = 0;
    for (const auto& suite : suites) {
        Sampler rng(seed + 0x9e3779b97f4a7c15ULL * ++suite_index);
        DiagramReport rep(suite.family, seed, samples);
        for (const auto& g : suite.labels) rep.add_label(g);
        for (int i = 0; i < samples; ++i) {
            suite.check(suite.labels[static_cast<std::size_t>(i) % suite.labels.size()], rng, rep);
        }
        out.push_back(rep.finish());
    }
    return out;
}

}  // namespace ellhiggs
