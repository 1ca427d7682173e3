#include "ellhiggs/moduli.hpp"

#include <algorithm>
#include <numeric>

#include "ellhiggs/errors.hpp"

namespace ellhiggs {

namespace {

constexpr std::array<int, 5> kBlockCounts{1, 4, 6, 4, 1};

std::string str(int v) { return std::to_string(v); }

/// m' for SO(n, w2), possibly negative for labels naming no component.
int so_copies(int n, int w2) {
    const int m = n / 2;
    if (n % 2 == 0) return w2 == 0 ? m : m - 2;
    return w2 == 0 ? m : m - 1;
}

ActionSpec action_for(const GroupLabel& g, int copies) {
    switch (g.family) {
        case Family::GL:
        case Family::SL: return ActionSpec::sym(copies);
        case Family::PGL: return ActionSpec::sym_and_translate(copies, copies);
        case Family::Sp:
        case Family::O: return ActionSpec::hyperoct(copies);
        case Family::SO:
            if (g.n % 2 == 0 && g.w2 == 0) return ActionSpec::even_sign(copies);
            return ActionSpec::hyperoct(copies);
    }
    return {};
}

int copies_for(const GroupLabel& g) {
    switch (g.family) {
        case Family::GL:
        case Family::PGL: return gl_gcd(g);
        case Family::SL: return g.n;
        case Family::Sp: return g.n / 2;
        case Family::O: return (g.n - g.k) / 2;
        case Family::SO: return g.is_so2() ? 1 : so_copies(g.n, g.w2);
    }
    return 0;
}

void check_sums(const GroupLabel& label, const CurvePoint& sx, const ComplexRational* st) {
    if (label.family != Family::SL && label.family != Family::PGL) return;
    const std::string who = label.family == Family::SL ? "SL" : "PGL";
    if (!sx.is_identity()) {
        throw DomainError(who + " determinant constraint violated: sum of x is " + to_string(sx) + ", expected (0,0)");
    }
    if (st != nullptr && !st->is_zero()) {
        throw DomainError(who + " trace constraint violated: sum of t is " + to_string(*st) + ", expected 0");
    }
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::GL: return "GL";
        case Family::SL: return "SL";
        case Family::PGL: return "PGL";
        case Family::Sp: return "Sp";
        case Family::O: return "O";
        case Family::SO: return "SO";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    for (Family f : {Family::GL, Family::SL, Family::PGL, Family::Sp, Family::O, Family::SO}) {
        if (s == to_string(f)) return f;
    }
    throw ParseError("unknown group family \"" + s + "\"");
}

void GroupLabel::validate() const {
    if (n < 1) throw DomainError(to_string(family) + "(n): n must be at least 1, got " + str(n));
    switch (family) {
        case Family::GL:
        case Family::SL:
        case Family::PGL: return;
        case Family::Sp:
            if (n % 2 != 0) throw DomainError("Sp(n): n must be even, got " + str(n));
            return;
        case Family::O:
            if (k < 0 || k > 4) throw DomainError("O(n): block rank k must lie in 0..4, got " + str(k));
            if (n < k || (n - k) % 2 != 0) {
                throw DomainError("O(" + str(n) + "): block rank k = " + str(k) + " needs n - k even and >= 0");
            }
            if (a < 0 || a >= kBlockCounts[static_cast<std::size_t>(k)]) {
                throw DomainError("O(n): block index a = " + str(a) + " out of range for k = " + str(k));
            }
            return;
        case Family::SO:
            if (n == 2) {
                if (w2 != 0) throw DomainError("SO(2) components are indexed by the degree d, not w2");
                return;
            }
            if (w2 != 0 && w2 != 1) throw DomainError("SO(n): w2 must be 0 or 1, got " + str(w2));
            if (so_copies(n, w2) < 0) {
                throw DomainError("SO(" + str(n) + ") has no component with w2 = " + str(w2));
            }
            return;
    }
}

std::string to_string(const GroupLabel& g) {
    switch (g.family) {
        case Family::GL: return "GL(" + str(g.n) + "," + str(g.d) + ")";
        case Family::SL: return "SL(" + str(g.n) + ")";
        case Family::PGL: return "PGL(" + str(g.n) + "," + str(g.d) + ")";
        case Family::Sp: return "Sp(" + str(g.n) + ")";
        case Family::O: return "O(" + str(g.n) + ",k=" + str(g.k) + ",a=" + str(g.a) + ")";
        case Family::SO:
            if (g.is_so2()) return "SO(2,d=" + str(g.d) + ")";
            return "SO(" + str(g.n) + ",w2=" + str(g.w2) + ")";
    }
    return "?";
}

const std::array<CurvePoint, 4>& two_torsion_catalog() {
    static const std::array<CurvePoint, 4> catalog{CurvePoint::torsion(0, 0, 2), CurvePoint::torsion(1, 0, 2),
                                                   CurvePoint::torsion(0, 1, 2), CurvePoint::torsion(1, 1, 2)};
    return catalog;
}

int block_count(int k) {
    if (k < 0 || k > 4) throw DomainError("block rank must lie in 0..4, got " + str(k));
    return kBlockCounts[static_cast<std::size_t>(k)];
}

std::vector<CurvePoint> StableBlock::lines() const {
    if (a < 0 || a >= block_count(k)) throw DomainError("block index out of range");
    const auto& j = two_torsion_catalog();
    switch (k) {
        case 0: return {};
        case 1: return {j[static_cast<std::size_t>(a)]};
        case 2: {
            int index = 0;
            for (std::size_t p = 0; p < 4; ++p) {
                for (std::size_t q = p + 1; q < 4; ++q) {
                    if (index++ == a) return {j[p], j[q]};
                }
            }
            return {};
        }
        case 3: {
            std::vector<CurvePoint> out;
            for (std::size_t b = 0; b < 4; ++b) {
                if (static_cast<int>(b) != a) out.push_back(j[b]);
            }
            return out;
        }
        default: return {j.begin(), j.end()};
    }
}

int gl_gcd(const GroupLabel& label) { return std::gcd(label.n, label.d); }

int gl_piece_rank(const GroupLabel& label) { return label.n / gl_gcd(label); }

std::optional<StableBlock> forced_block(const GroupLabel& label) {
    if (label.family == Family::O) {
        if (label.k == 0) return std::nullopt;
        return StableBlock{label.k, label.a};
    }
    if (label.family == Family::SO && !label.is_so2()) {
        if (label.n % 2 == 1) return StableBlock{label.w2 == 0 ? 1 : 3, 0};
        if (label.w2 == 1) return StableBlock{4, 0};
    }
    return std::nullopt;
}

ModuliDescriptor descriptor(const GroupLabel& label, Level level) {
    label.validate();
    ModuliDescriptor out;
    out.label = label;
    out.level = level;
    out.copies = copies_for(label);
    out.action = action_for(label, out.copies);
    out.constraints = (label.family == Family::SL || label.family == Family::PGL) && out.copies > 0 ? 1 : 0;
    const int per_copy = level == Level::higgs ? 2 : 1;
    out.dimension = per_copy * (out.copies - out.constraints);

    const std::string space = level == Level::higgs ? "T*X" : "X";
    const std::string m = str(out.copies);
    const std::string power = (level == Level::higgs ? "(T*X)" : "X") + std::string("^") + m;
    switch (label.family) {
        case Family::GL: out.presentation = "Sym^" + m + "(" + space + ")"; break;
        case Family::SL: out.presentation = "{z in " + power + " : sum z = 0}/S_" + m; break;
        case Family::PGL:
            out.presentation = "{z in " + power + " : sum z = 0}/(S_" + m + " x X[" + m + "])";
            break;
        case Family::Sp:
        case Family::O: out.presentation = "Sym^" + m + "(" + space + "/Z2)"; break;
        case Family::SO:
            if (label.is_so2()) {
                out.presentation = space;
            } else if (out.action.kind == ActionKind::even_sign) {
                out.presentation = power + "/Delta_" + m;
            } else {
                out.presentation = "Sym^" + m + "(" + space + "/Z2)";
            }
            break;
    }
    return out;
}

HiggsClass make_class(const GroupLabel& label, const Tuple& raw) {
    const ModuliDescriptor desc = descriptor(label);
    if (raw.size() != static_cast<std::size_t>(desc.copies)) {
        throw DomainError(to_string(label) + " expects " + str(desc.copies) + " points, got " + str(static_cast<int>(raw.size())));
    }
    std::vector<CurvePoint> xs;
    ComplexRational st;
    for (const auto& p : raw) {
        xs.push_back(p.x);
        st += p.t;
    }
    check_sums(label, sum(xs), &st);
    return {label, canonical(desc.action, raw), forced_block(label)};
}

HiggsClass make_class(const GroupLabel& label, const Tuple& raw, const std::optional<StableBlock>& block) {
    HiggsClass out = make_class(label, raw);
    if (block != out.block) {
        throw DomainError("stable block tag inconsistent with " + to_string(label));
    }
    return out;
}

BundleClass make_bundle_class(const GroupLabel& label, const std::vector<CurvePoint>& raw) {
    const ModuliDescriptor desc = descriptor(label, Level::bundle);
    if (raw.size() != static_cast<std::size_t>(desc.copies)) {
        throw DomainError(to_string(label) + " expects " + str(desc.copies) + " points, got " + str(static_cast<int>(raw.size())));
    }
    check_sums(label, sum(raw), nullptr);
    return {label, canonical(desc.action, raw), forced_block(label)};
}

bool isomorphic(const HiggsClass& a, const HiggsClass& b) {
    if (!(a.label == b.label)) {
        throw DomainError("cannot compare classes of " + to_string(a.label) + " and " + to_string(b.label));
    }
    return a.points == b.points && a.block == b.block;
}

bool is_singular(const HiggsClass& c) {
    if (c.label.is_so2()) return false;
    if (!c.label.is_orthosymplectic()) {
        return std::adjacent_find(c.points.begin(), c.points.end()) != c.points.end();
    }
    const Tuple keys = canonical_hyperoct(c.points);
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return true;
    for (const auto& p : c.points) {
        if (is_self_negative(p)) return true;
    }
    if (c.block) {
        for (const auto& line : c.block->lines()) {
            const CotangentPoint summand{line, {}};
            for (const auto& p : c.points) {
                if (p == summand || -p == summand) return true;
            }
        }
    }
    return false;
}

BundleClass underlying_bundle(const HiggsClass& c) {
    std::vector<CurvePoint> xs;
    xs.reserve(c.points.size());
    for (const auto& p : c.points) xs.push_back(p.x);
    const ModuliDescriptor desc = descriptor(c.label, Level::bundle);
    return {c.label, canonical(desc.action, xs), c.block};
}

namespace {

void require_gl(const GroupLabel& label, const char* op) {
    if (label.family != Family::GL) throw DomainError(std::string(op) + " is defined for GL labels only, got " + to_string(label));
}

}  // namespace

CotangentPoint det_tr(const HiggsClass& c) {
    require_gl(c.label, "det_tr");
    return sum(std::span<const CotangentPoint>(c.points));
}

HiggsClass translate(const HiggsClass& c, const CotangentPoint& w) {
    require_gl(c.label, "translate");
    const CotangentPoint step = scalar_mul(gl_piece_rank(c.label), w);
    Tuple moved = c.points;
    for (auto& p : moved) p = p + step;
    return {c.label, canonical_sym(moved), c.block};
}

BundleClass translate(const BundleClass& c, const CurvePoint& x) {
    require_gl(c.label, "translate");
    const CurvePoint step = scalar_mul(gl_piece_rank(c.label), x);
    std::vector<CurvePoint> moved = c.points;
    for (auto& p : moved) p = p + step;
    return {c.label, canonical_sym(moved), c.block};
}

HiggsClass graded_object(const GroupLabel& label, const std::vector<SummandDescriptor>& summands) {
    require_gl(label, "graded_object");
    label.validate();
    const int h = gl_gcd(label);
    int total = 0;
    Tuple raw;
    for (const auto& s : summands) {
        if (s.jordan_size < 1) throw DomainError("jordan_size must be positive, got " + str(s.jordan_size));
        total += s.jordan_size;
        for (int i = 0; i < s.jordan_size; ++i) raw.push_back(s.stable_point);
    }
    if (total != h) {
        throw DomainError("jordan sizes sum to " + str(total) + " but gcd(n,d) = " + str(h) + " for " + to_string(label));
    }
    return make_class(label, raw);
}

std::vector<GroupLabel> list_components(Family family, int n) {
    if (n < 1) throw DomainError("n must be at least 1, got " + str(n));
    std::vector<GroupLabel> out;
    if (family == Family::O) {
        for (int k = n % 2; k <= std::min(n, 4); k += 2) {
            for (int a = 0; a < block_count(k); ++a) out.push_back(GroupLabel::o(n, k, a));
        }
        return out;
    }
    if (family == Family::SO) {
        if (n == 2) return {GroupLabel::so2(0)};
        for (int w2 : {0, 1}) {
            if (so_copies(n, w2) >= 0) out.push_back(GroupLabel::so(n, w2));
        }
        return out;
    }
    throw DomainError("components are listed for O and SO only, got " + to_string(family));
}

SoInvariants so_invariants(int n, const std::optional<StableBlock>& block) {
    if (n < 1) throw DomainError("n must be at least 1, got " + str(n));
    const bool even = n % 2 == 0;
    const int k = block ? block->k : 0;
    SoInvariants out{n, 0, 0};
    if (k == 0 && even) {
        out.copies = n / 2;
    } else if (k == 1 && !even) {
        out.copies = (n - 1) / 2;
    } else if (k == 3 && !even && n >= 3) {
        out.w2 = 1;
        out.copies = (n - 1) / 2 - 1;
    } else if (k == 4 && even && n >= 4) {
        out.w2 = 1;
        out.copies = n / 2 - 2;
    } else {
        throw DomainError("stable block of rank " + str(k) + " is inconsistent with SO(" + str(n) + ")");
    }
    return out;
}

}  // namespace ellhiggs
