#include "ellhiggs/hitchin.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ellhiggs/errors.hpp"

namespace ellhiggs {

namespace {

std::string str(std::int64_t v) { return std::to_string(v); }

/// Action of the label's group on t-coordinates alone.
ActionSpec t_action(const GroupLabel& label) { return descriptor(label).action; }

void require_label(const GroupLabel& label, const HitchinBasePoint& b) {
    if (!(label == b.label)) {
        throw DomainError("base point of " + to_string(b.label) + " is incompatible with " + to_string(label));
    }
}

std::vector<std::vector<std::int64_t>> multisets(int m, std::int64_t points) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(static_cast<std::size_t>(m), 0);
    if (m == 0) return {{}};
    while (true) {
        out.push_back(cur);
        int i = m - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == points - 1) --i;
        if (i < 0) return out;
        const std::int64_t v = cur[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < m; ++j) cur[static_cast<std::size_t>(j)] = v;
    }
}

Integer product_of_burnside(const std::vector<StratumFactor>& factors, std::int64_t n) {
    Integer out = 1;
    for (const auto& f : factors) {
        switch (f.kind) {
            case StratumFactor::Kind::sym: out *= burnside_count(ActionSpec::sym(f.m), n); break;
            case StratumFactor::Kind::sym_z2: out *= burnside_count(ActionSpec::hyperoct(f.m), n); break;
            case StratumFactor::Kind::delta: out *= burnside_count(ActionSpec::even_sign(f.m), n); break;
        }
    }
    return out;
}

/// Sum over y in X[N]^l with sum y = 0 of prod_i (multisets of size m_i with sum y_i).
Integer sl_prediction(const std::vector<int>& mults, std::int64_t n) {
    const TorsionLattice lattice(n);
    const std::size_t l = mults.size();
    if (l == 0) return 1;
    std::vector<std::map<std::int64_t, Integer>> slice(l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::int64_t y = 0; y < lattice.size(); ++y) {
            slice[i][y] = sym_slice_count(mults[i], n, y / n, y % n);
        }
    }
    Integer total = 0;
    std::vector<std::int64_t> y(l, 0);
    while (true) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i + 1 < l; ++i) acc = lattice.add(acc, y[i]);
        y[l - 1] = lattice.neg(acc);
        Integer term = 1;
        for (std::size_t i = 0; i < l; ++i) term *= slice[i][y[i]];
        total += term;
        std::size_t i = l - 1;
        while (i > 0) {
            --i;
            if (++y[i] < lattice.size()) break;
            y[i] = 0;
            if (i == 0) return total;
        }
        if (l == 1) return total;
    }
}

/// Orbits of S_{m_1} x ... x S_{m_l} x X[h] on sum-zero assignments, computed
/// as a sum over base orbits (weighted X[h]-action on the block sums) of the
/// Burnside count of the base stabilizer on the product of multiset fibers.
Integer pgl_prediction(const std::vector<int>& mults, int h, std::int64_t n) {
    const TorsionLattice lattice(n);
    const std::size_t l = mults.size();
    const std::vector<std::int64_t> shifts = lattice.subgroup(h);

    std::map<int, std::map<std::int64_t, std::vector<std::vector<std::int64_t>>>> by_sum;
    for (int m : mults) {
        if (by_sum.count(m)) continue;
        auto& table = by_sum[m];
        for (auto& ms : multisets(m, lattice.size())) {
            std::int64_t s = 0;
            for (auto p : ms) s = lattice.add(s, p);
            table[s].push_back(std::move(ms));
        }
    }

    std::vector<std::int64_t> stabilizer;
    for (auto w : shifts) {
        bool fixes = true;
        for (int m : mults) fixes = fixes && lattice.mul(m, w) == 0;
        if (fixes) stabilizer.push_back(w);
    }

    std::set<std::vector<std::int64_t>> base_reps;
    std::vector<std::int64_t> y(l, 0);
    bool done = l == 0;
    if (l == 0) base_reps.insert({});
    while (!done) {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i + 1 < l; ++i) acc = lattice.add(acc, y[i]);
        y[l - 1] = lattice.neg(acc);
        std::vector<std::int64_t> best;
        for (auto w : shifts) {
            std::vector<std::int64_t> moved(l);
            for (std::size_t i = 0; i < l; ++i) moved[i] = lattice.add(y[i], lattice.mul(mults[i], w));
            if (best.empty() || moved < best) best = std::move(moved);
        }
        base_reps.insert(std::move(best));
        std::size_t i = l - 1;
        done = true;
        while (i > 0) {
            --i;
            if (++y[i] < lattice.size()) {
                done = false;
                break;
            }
            y[i] = 0;
        }
    }

    Integer total = 0;
    for (const auto& rep : base_reps) {
        Integer fixed_sum = 0;
        for (auto w : stabilizer) {
            Integer fixed = 1;
            for (std::size_t i = 0; i < l && fixed != 0; ++i) {
                const auto& table = by_sum.at(mults[i]);
                const auto it = table.find(rep[i]);
                std::int64_t count = 0;
                if (it != table.end()) {
                    for (const auto& ms : it->second) {
                        std::vector<std::int64_t> moved(ms.size());
                        for (std::size_t j = 0; j < ms.size(); ++j) moved[j] = lattice.add(ms[j], w);
                        std::sort(moved.begin(), moved.end());
                        if (moved == ms) ++count;
                    }
                }
                fixed *= count;
            }
            fixed_sum += fixed;
        }
        if (fixed_sum % static_cast<std::int64_t>(stabilizer.size()) != 0) {
            throw std::logic_error("Burnside sum over the base stabilizer is not divisible by its order");
        }
        total += fixed_sum / static_cast<std::int64_t>(stabilizer.size());
    }
    return total;
}

std::int64_t to_int64(const Integer& v) {
    if (v > std::numeric_limits<std::int64_t>::max()) throw SizeError("unsupported size: count exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

}  // namespace

HitchinBasePoint make_base_point(const GroupLabel& label, const std::vector<ComplexRational>& t) {
    const ModuliDescriptor desc = descriptor(label);
    if (t.size() != static_cast<std::size_t>(desc.copies)) {
        throw DomainError(to_string(label) + " base points have " + str(desc.copies) + " coordinates, got " +
                          str(static_cast<std::int64_t>(t.size())));
    }
    if (label.family == Family::SL || label.family == Family::PGL) {
        ComplexRational s;
        for (const auto& v : t) s += v;
        if (!s.is_zero()) {
            throw DomainError(to_string(label.family) + " trace constraint violated: sum of t is " + to_string(s) +
                              ", expected 0");
        }
    }
    return {label, canonical(desc.action, t)};
}

HitchinBasePoint hitchin_map(const HiggsClass& c) {
    std::vector<ComplexRational> t;
    t.reserve(c.points.size());
    for (const auto& p : c.points) t.push_back(p.t);
    return {c.label, canonical(t_action(c.label), t)};
}

std::vector<ComplexRational> eigenvalues(const HitchinBasePoint& b) {
    const GroupLabel& g = b.label;
    std::vector<ComplexRational> out;
    switch (g.family) {
        case Family::GL:
        case Family::SL:
        case Family::PGL: {
            const int rank = g.family == Family::SL ? 1 : gl_piece_rank(g);
            for (const auto& t : b.t) {
                for (int i = 0; i < rank; ++i) out.push_back(t / Rational(rank));
            }
            return out;
        }
        case Family::Sp:
        case Family::O:
        case Family::SO:
            for (const auto& t : b.t) {
                out.push_back(t);
                out.push_back(-t);
            }
            while (out.size() < static_cast<std::size_t>(g.n)) out.emplace_back();
            return out;
    }
    return out;
}

std::vector<ComplexRational> elementary_symmetric(const std::vector<ComplexRational>& values) {
    std::vector<ComplexRational> e(values.size() + 1);
    e[0] = ComplexRational(1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t k = i + 1; k >= 1; --k) e[k] += e[k - 1] * values[i];
    }
    return {e.begin() + 1, e.end()};
}

std::vector<ComplexRational> char_poly(const HitchinBasePoint& b) {
    std::vector<ComplexRational> e = elementary_symmetric(eigenvalues(b));
    for (std::size_t k = 0; k < e.size(); k += 2) e[k] = -e[k];
    return e;
}

std::optional<ComplexRational> pfaffian(const HitchinBasePoint& b) {
    if (b.label.family != Family::SO || b.label.n % 2 != 0 || (!b.label.is_so2() && b.label.w2 != 0)) {
        return std::nullopt;
    }
    ComplexRational p(1);
    for (const auto& t : b.t) p = p * t;
    return p;
}

std::string to_string(DeltaKind k) {
    switch (k) {
        case DeltaKind::generic: return "generic";
        case DeltaKind::s1: return "s1";
        case DeltaKind::s2: return "s2";
    }
    return "?";
}

std::vector<int> SpectralPattern::multiplicities() const {
    std::vector<int> out;
    for (const auto& g : groups) out.push_back(g.second);
    return out;
}

SpectralPattern spectral_pattern(const HitchinBasePoint& b) {
    const GroupLabel& g = b.label;
    SpectralPattern out;
    std::vector<ComplexRational> keys;
    if (g.is_orthosymplectic() && !g.is_so2()) {
        keys = canonical_hyperoct(b.t);
        for (const auto& k : keys) {
            if (k.is_zero()) ++out.m0;
        }
        keys.erase(std::remove_if(keys.begin(), keys.end(), [](const ComplexRational& k) { return k.is_zero(); }),
                   keys.end());
    } else {
        keys = canonical_sym(b.t);
    }
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) ++j;
        out.groups.emplace_back(keys[i], static_cast<int>(j - i));
        if (j - i > 1) out.generic = false;
        i = j;
    }
    if (out.m0 > 0) out.generic = false;
    if (descriptor(g).action.kind == ActionKind::even_sign && !g.is_so2()) {
        if (out.generic) {
            out.delta_kind = DeltaKind::generic;
        } else if (out.m0 == 0 && canonical_delta(b.t) != canonical_hyperoct(b.t)) {
            out.delta_kind = DeltaKind::s1;
        } else {
            out.delta_kind = DeltaKind::s2;
        }
    }
    return out;
}

int FiberFactor::dimension() const {
    switch (kind) {
        case Kind::projective:
        case Kind::delta_quotient: return dims.at(0);
        case Kind::projective_quotient: return std::accumulate(dims.begin(), dims.end(), 0);
    }
    return 0;
}

int FiberDescriptor::dimension() const {
    int out = base_dim;
    for (const auto& f : fiber) out += f.dimension();
    return out;
}

FiberDescriptor fiber_descriptor(const GroupLabel& label, const HitchinBasePoint& b) {
    require_label(label, b);
    const ModuliDescriptor desc = descriptor(label);
    const SpectralPattern pattern = spectral_pattern(b);
    const std::vector<int> mults = pattern.multiplicities();
    const int l = static_cast<int>(mults.size());

    FiberDescriptor out;
    auto add_projective = [&out](int m) {
        if (m > 1) out.fiber.push_back({FiberFactor::Kind::projective, {m - 1}, 1});
    };
    for (int m : mults) out.stratum.push_back({StratumFactor::Kind::sym, m});

    switch (label.family) {
        case Family::GL:
            out.base_dim = l;
            for (int m : mults) add_projective(m);
            break;
        case Family::SL:
            out.base_dim = l - 1;
            out.sum_zero_slice = true;
            for (int m : mults) add_projective(m);
            break;
        case Family::PGL: {
            const int h = desc.copies;
            int r = h;
            for (int m : mults) r = std::gcd(r, m);
            out.base_dim = l - 1;
            out.sum_zero_slice = true;
            out.r = r;
            out.needs_review = h > 1 && r == h;
            if (r > 1) {
                FiberFactor q{FiberFactor::Kind::projective_quotient, {}, r};
                for (int m : mults) q.dims.push_back(m - 1);
                out.fiber.push_back(std::move(q));
            } else {
                for (int m : mults) add_projective(m);
            }
            break;
        }
        case Family::Sp:
        case Family::O:
        case Family::SO:
            out.base_dim = l;
            if (label.is_so2()) break;
            if (pattern.m0 > 0) {
                if (desc.action.kind == ActionKind::even_sign) {
                    out.fiber.push_back({FiberFactor::Kind::delta_quotient, {pattern.m0}, 1});
                    out.stratum.insert(out.stratum.begin(), {StratumFactor::Kind::delta, pattern.m0});
                } else {
                    out.fiber.push_back({FiberFactor::Kind::projective, {pattern.m0}, 1});
                    out.stratum.insert(out.stratum.begin(), {StratumFactor::Kind::sym_z2, pattern.m0});
                }
            }
            for (int m : mults) add_projective(m);
            break;
    }

    const int expected = desc.copies - desc.constraints;
    if (out.dimension() != expected) {
        throw std::logic_error("fiber descriptor dimension " + str(out.dimension()) + " does not match " +
                               str(expected) + " for " + to_string(label));
    }
    return out;
}

Integer sym_slice_count(int m, std::int64_t n, std::int64_t i, std::int64_t j) {
    if (m < 0 || n < 1) throw DomainError("sym_slice_count: invalid arguments");
    i = ((i % n) + n) % n;
    j = ((j % n) + n) % n;
    if (m == 0) return (i == 0 && j == 0) ? 1 : 0;
    Integer total = 0;
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    const Integer full = Integer(n) * n;
    do {
        const auto cycles = Permutation(images).cycles();
        std::int64_t g = n;
        for (const auto& c : cycles) g = std::gcd(g, static_cast<std::int64_t>(c.size()));
        if (i % g == 0 && j % g == 0) {
            Integer term = Integer(g) * g;
            for (std::size_t c = 1; c < cycles.size(); ++c) term *= full;
            total += term;
        }
    } while (std::next_permutation(images.begin(), images.end()));
    const Integer order = detail::factorial(m);
    if (total % order != 0) throw std::logic_error("Burnside sum not divisible by m!");
    return total / order;
}

FiberCount fiber_count_model(const GroupLabel& label, const HitchinBasePoint& b, std::int64_t n, std::int64_t cap) {
    require_label(label, b);
    if (n < 1) throw DomainError("model level N must be positive, got " + str(n));
    const ModuliDescriptor desc = descriptor(label);
    if (label.family == Family::PGL && n % desc.copies != 0) {
        throw DomainError("PGL fiber model needs h | N, got h = " + str(desc.copies) + ", N = " + str(n));
    }
    Integer size = 1;
    for (int i = 0; i < desc.copies; ++i) size *= n * n;
    if (size > cap) {
        throw SizeError("unsupported size: " + size.str() + " x-assignments exceed the cap " + str(cap));
    }

    const bool sum_zero = label.family == Family::SL || label.family == Family::PGL;
    std::vector<Tuple> domain;
    for (auto& z : torsion_tuples(n, b.t)) {
        if (sum_zero) {
            CurvePoint s;
            for (const auto& p : z) s = s + p.x;
            if (!s.is_identity()) continue;
        }
        domain.push_back(std::move(z));
    }
    const std::vector<GroupElement> stab = stabilizer(desc.action, b.t);
    const OrbitPartition partition = orbit_partition(stab, domain);

    const FiberDescriptor fd = fiber_descriptor(label, b);
    const std::vector<int> mults = spectral_pattern(b).multiplicities();
    Integer predicted;
    if (label.family == Family::SL) {
        predicted = sl_prediction(mults, n);
    } else if (label.family == Family::PGL) {
        predicted = pgl_prediction(mults, desc.copies, n);
    } else {
        predicted = product_of_burnside(fd.stratum, n);
    }
    return {n, partition.report.orbit_count, to_int64(predicted)};
}

}  // namespace ellhiggs
