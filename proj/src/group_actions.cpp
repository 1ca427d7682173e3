#include "ellhiggs/group_actions.hpp"

#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>

namespace ellhiggs {

namespace {

struct TupleHash {
    std::size_t operator()(const Tuple& z) const {
        std::size_t h = z.size();
        for (const auto& p : z) h ^= hash_value(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

Permutation transposition(int m, int i, int j) {
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
    return Permutation(std::move(images));
}

SignVector signs_from_mask(int m, std::uint64_t mask) {
    std::vector<int> s(static_cast<std::size_t>(m), 1);
    for (int i = 0; i < m; ++i) {
        if ((mask >> i) & 1U) s[static_cast<std::size_t>(i)] = -1;
    }
    return SignVector(std::move(s));
}

std::int64_t two_torsion_count(std::int64_t n) { return n % 2 == 0 ? 4 : 1; }

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)]) {
            throw DomainError("not a permutation of 0.." + std::to_string(static_cast<int>(images_.size()) - 1));
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int m) {
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images));
}

Permutation Permutation::operator*(const Permutation& o) const {
    detail::check_length(size(), static_cast<std::size_t>(o.size()));
    std::vector<int> out(images_.size());
    for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = (*this)(o(i));
    return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
    std::vector<int> out(images_.size());
    for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>((*this)(i))] = i;
    return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i) {
        if ((*this)(i) != i) return false;
    }
    return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(images_.size(), false);
    for (int i = 0; i < size(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        std::vector<int> cycle;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = (*this)(j)) {
            seen[static_cast<std::size_t>(j)] = true;
            cycle.push_back(j);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
        if (s != 1 && s != -1) throw DomainError("sign entries must be +1 or -1, got " + std::to_string(s));
    }
}

int SignVector::flips() const {
    return static_cast<int>(std::count(signs_.begin(), signs_.end(), -1));
}

HyperoctahedralElement HyperoctahedralElement::operator*(const HyperoctahedralElement& o) const {
    detail::check_length(size(), static_cast<std::size_t>(o.size()));
    std::vector<int> s(static_cast<std::size_t>(size()));
    for (int i = 0; i < size(); ++i) s[static_cast<std::size_t>(i)] = signs[o.perm(i)] * o.signs[i];
    return {SignVector(std::move(s)), perm * o.perm};
}

HyperoctahedralElement HyperoctahedralElement::inverse() const {
    std::vector<int> s(static_cast<std::size_t>(size()));
    for (int i = 0; i < size(); ++i) s[static_cast<std::size_t>(perm(i))] = signs[i];
    return {SignVector(std::move(s)), perm.inverse()};
}

TranslatedPermutation TranslatedPermutation::operator*(const TranslatedPermutation& o) const {
    return {perm * o.perm, shift + o.shift};
}

std::string to_string(ActionKind k) {
    switch (k) {
        case ActionKind::sym: return "sym";
        case ActionKind::hyperoct: return "hyperoct";
        case ActionKind::even_sign: return "evensign";
        case ActionKind::sym_and_translate: return "translate";
    }
    return "?";
}

ActionKind parse_action_kind(const std::string& s) {
    if (s == "sym") return ActionKind::sym;
    if (s == "hyperoct") return ActionKind::hyperoct;
    if (s == "evensign") return ActionKind::even_sign;
    if (s == "translate") return ActionKind::sym_and_translate;
    throw ParseError("unknown action kind \"" + s + "\"");
}

void ActionSpec::validate() const {
    if (m < 0) throw DomainError("action on a negative number of coordinates");
    if (h < 1) throw DomainError("translation level must be positive, got " + std::to_string(h));
}

std::int64_t ActionSpec::order() const {
    validate();
    const std::int64_t f = detail::factorial(m);
    switch (kind) {
        case ActionKind::sym: return f;
        case ActionKind::hyperoct:
            if (m >= 62) throw SizeError("group order exceeds 64 bits");
            return detail::checked_mul(f, std::int64_t{1} << m);
        case ActionKind::even_sign:
            if (m >= 63) throw SizeError("group order exceeds 64 bits");
            return m == 0 ? 1 : detail::checked_mul(f, std::int64_t{1} << (m - 1));
        case ActionKind::sym_and_translate:
            return detail::checked_mul(f, detail::checked_mul(h, h));
    }
    return 0;
}

namespace detail {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw SizeError("unsupported size: count exceeds 64 bits");
    return out;
}

std::int64_t factorial(int n) {
    std::int64_t out = 1;
    for (int i = 2; i <= n; ++i) out = checked_mul(out, i);
    return out;
}

}  // namespace detail

GroupElement compose(const GroupElement& g, const GroupElement& h) {
    if (const auto* a = std::get_if<HyperoctahedralElement>(&g)) {
        if (const auto* b = std::get_if<HyperoctahedralElement>(&h)) return *a * *b;
    }
    auto as_translation = [](const GroupElement& e) -> TranslatedPermutation {
        if (const auto* t = std::get_if<TranslatedPermutation>(&e)) return *t;
        const auto& hy = std::get<HyperoctahedralElement>(e);
        if (hy.signs.flips() != 0) {
            throw DomainError("cannot compose a sign change with a translation: not a group element of any action");
        }
        return {hy.perm, CurvePoint{}};
    };
    return as_translation(g) * as_translation(h);
}

GroupElement identity_element(const ActionSpec& spec) {
    spec.validate();
    if (spec.kind == ActionKind::sym_and_translate) return TranslatedPermutation::identity(spec.m);
    return HyperoctahedralElement::identity(spec.m);
}

bool belongs_to(const GroupElement& g, const ActionSpec& spec) {
    return std::visit(
        [&](const auto& e) -> bool {
            using T = std::decay_t<decltype(e)>;
            if (e.size() != spec.m) return false;
            if constexpr (std::is_same_v<T, HyperoctahedralElement>) {
                switch (spec.kind) {
                    case ActionKind::sym:
                    case ActionKind::sym_and_translate: return e.signs.flips() == 0;
                    case ActionKind::hyperoct: return true;
                    case ActionKind::even_sign: return e.is_even();
                }
                return false;
            } else {
                if (spec.kind != ActionKind::sym_and_translate) return e.shift.is_identity();
                return scalar_mul(spec.h, e.shift).is_identity();
            }
        },
        g);
}

void for_each_element(const ActionSpec& spec, const std::function<void(const GroupElement&)>& fn, std::int64_t cap) {
    const std::int64_t order = spec.order();
    if (order > cap) {
        throw SizeError("unsupported size: group of order " + std::to_string(order) + " exceeds the enumeration cap " +
                        std::to_string(cap));
    }
    const int m = spec.m;
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    const std::vector<CurvePoint> shifts =
        spec.kind == ActionKind::sym_and_translate ? torsion_subgroup(spec.h) : std::vector<CurvePoint>{};
    do {
        const Permutation perm(images);
        switch (spec.kind) {
            case ActionKind::sym: fn(HyperoctahedralElement::from_perm(perm)); break;
            case ActionKind::hyperoct:
            case ActionKind::even_sign:
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
                    if (spec.kind == ActionKind::even_sign && std::popcount(mask) % 2 != 0) continue;
                    fn(HyperoctahedralElement{signs_from_mask(m, mask), perm});
                }
                break;
            case ActionKind::sym_and_translate:
                for (const auto& w : shifts) fn(TranslatedPermutation{perm, w});
                break;
        }
    } while (std::next_permutation(images.begin(), images.end()));
}

std::vector<GroupElement> group_elements(const ActionSpec& spec, std::int64_t cap) {
    std::vector<GroupElement> out;
    for_each_element(spec, [&](const GroupElement& g) { out.push_back(g); }, cap);
    return out;
}

std::vector<GroupElement> generators(const ActionSpec& spec) {
    spec.validate();
    const int m = spec.m;
    std::vector<GroupElement> out;
    for (int i = 0; i + 1 < m; ++i) {
        if (spec.kind == ActionKind::sym_and_translate) {
            out.emplace_back(TranslatedPermutation{transposition(m, i, i + 1), CurvePoint{}});
        } else {
            out.emplace_back(HyperoctahedralElement::from_perm(transposition(m, i, i + 1)));
        }
    }
    if (spec.kind == ActionKind::hyperoct && m >= 1) {
        out.emplace_back(HyperoctahedralElement{signs_from_mask(m, 1), Permutation::identity(m)});
    }
    if (spec.kind == ActionKind::even_sign && m >= 2) {
        out.emplace_back(HyperoctahedralElement{signs_from_mask(m, 3), Permutation::identity(m)});
    }
    if (spec.kind == ActionKind::sym_and_translate && spec.h > 1) {
        out.emplace_back(TranslatedPermutation{Permutation::identity(m), CurvePoint::torsion(1, 0, spec.h)});
        out.emplace_back(TranslatedPermutation{Permutation::identity(m), CurvePoint::torsion(0, 1, spec.h)});
    }
    return out;
}

OrbitPartition orbit_partition(const std::vector<GroupElement>& gens, std::span<const Tuple> domain) {
    std::unordered_map<Tuple, std::size_t, TupleHash> index;
    index.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) index.emplace(domain[i], i);

    UnionFind uf(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) {
        for (const auto& g : gens) {
            Tuple image = act(g, domain[i]);
            const auto it = index.find(image);
            if (it == index.end()) {
                throw DomainError("domain not closed under the action: " + to_string(image) + " (image of " +
                                  to_string(domain[i]) + ") escapes");
            }
            uf.unite(i, it->second);
        }
    }

    std::unordered_map<std::size_t, std::size_t> minimum_of_root;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        const std::size_t r = uf.find(i);
        auto [it, inserted] = minimum_of_root.emplace(r, i);
        if (!inserted && domain[i] < domain[it->second]) it->second = i;
    }
    std::vector<std::pair<std::size_t, std::size_t>> roots(minimum_of_root.begin(), minimum_of_root.end());
    std::sort(roots.begin(), roots.end(),
              [&](const auto& a, const auto& b) { return domain[a.second] < domain[b.second]; });

    OrbitPartition out;
    std::unordered_map<std::size_t, std::size_t> slot;
    for (const auto& [root, min_index] : roots) {
        slot.emplace(root, out.representatives.size());
        out.representatives.push_back(domain[min_index]);
    }
    out.orbit_of.resize(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) out.orbit_of[i] = slot.at(uf.find(i));
    out.report.orbit_count = static_cast<std::int64_t>(out.representatives.size());
    out.report.method = CountMethod::enumeration;
    return out;
}

OrbitPartition orbit_enumerate(const ActionSpec& spec, std::span<const Tuple> domain) {
    spec.validate();
    for (const auto& z : domain) detail::check_length(spec.m, z.size());
    return orbit_partition(generators(spec), domain);
}

std::int64_t burnside_count(const ActionSpec& spec, std::int64_t n, const std::optional<std::vector<ComplexRational>>& t) {
    spec.validate();
    if (n < 1) throw DomainError("model level N must be positive, got " + std::to_string(n));
    if (spec.kind == ActionKind::sym_and_translate && n % spec.h != 0) {
        throw DomainError("X[" + std::to_string(spec.h) + "] does not act on X[" + std::to_string(n) + "]: need h | N");
    }
    const std::vector<ComplexRational> pattern = t ? *t : std::vector<ComplexRational>(static_cast<std::size_t>(spec.m));
    detail::check_length(spec.m, pattern.size());

    const Integer full = Integer(n) * n;
    Integer total = 0;
    std::int64_t stabilizer = 0;
    for_each_element(spec, [&](const GroupElement& g) {
        if (act(g, pattern) != pattern) return;
        ++stabilizer;
        Integer fixed = 1;
        std::visit(
            [&](const auto& e) {
                using T = std::decay_t<decltype(e)>;
                for (const auto& cycle : e.perm.cycles()) {
                    if constexpr (std::is_same_v<T, HyperoctahedralElement>) {
                        int sign = 1;
                        for (int i : cycle) sign *= e.signs[i];
                        fixed *= sign > 0 ? full : Integer(two_torsion_count(n));
                    } else {
                        const auto len = static_cast<std::int64_t>(cycle.size());
                        if (!scalar_mul(len, e.shift).is_identity()) fixed = 0;
                        else fixed *= full;
                    }
                }
            },
            g);
        total += fixed;
    });
    if (total % stabilizer != 0) throw std::logic_error("Burnside sum not divisible by the group order");
    const Integer count = total / stabilizer;
    if (count > std::numeric_limits<std::int64_t>::max()) throw SizeError("unsupported size: orbit count exceeds 64 bits");
    return static_cast<std::int64_t>(count);
}

std::vector<Tuple> torsion_tuples(std::int64_t n, std::span<const ComplexRational> t) {
    const TorsionLattice lattice(n);
    const std::size_t m = t.size();
    Integer total = 1;
    for (std::size_t i = 0; i < m; ++i) total *= lattice.size();
    if (total > 10'000'000) throw SizeError("unsupported size: " + total.str() + " tuples exceed the model cap");

    const std::vector<CurvePoint> points = torsion_subgroup(n);
    std::vector<Tuple> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<std::size_t> digit(m, 0);
    while (true) {
        Tuple z(m);
        for (std::size_t i = 0; i < m; ++i) z[i] = CotangentPoint{points[digit[i]], t[i]};
        out.push_back(std::move(z));
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (++digit[i] < points.size()) break;
            digit[i] = 0;
            if (i == 0) return out;
        }
        if (m == 0) return out;
    }
}

std::string to_string(std::span<const CotangentPoint> z) {
    std::string out = "[";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) out += ", ";
        out += to_string(z[i]);
    }
    return out + "]";
}

std::string to_string(const GroupElement& g) {
    return std::visit(
        [](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            std::string out = "perm=(";
            for (int i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e.perm(i));
            out += ")";
            if constexpr (std::is_same_v<T, HyperoctahedralElement>) {
                out += " signs=(";
                for (int i = 0; i < e.size(); ++i) out += std::string(i ? "," : "") + (e.signs[i] < 0 ? "-" : "+");
                out += ")";
            } else {
                out += " shift=" + to_string(e.shift);
            }
            return out;
        },
        g);
}

}  // namespace ellhiggs
