#pragma once

// Points of the moduli spaces of semistable G-Higgs bundles over the curve,
// stored as canonical tuples of cotangent points together with the group
// label and, for orthogonal groups, the 2-torsion stable block.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ellhiggs/group_actions.hpp"
#include "ellhiggs/torus.hpp"

namespace ellhiggs {

enum class Family { GL, SL, PGL, Sp, O, SO };

std::string to_string(Family f);
Family parse_family(const std::string& s);

/// A group G together with the topological datum selecting a component.
///
/// GL(n,d), SL(n), PGL(n,d), Sp(n) with n = 2m, O(n) with stable block
/// (k,a), SO(n) with w2. SO(2) is indexed by its degree d instead of w2.
struct GroupLabel {
    Family family = Family::GL;
    int n = 1;
    int d = 0;
    int k = 0;
    int a = 0;
    int w2 = 0;

    static GroupLabel gl(int n, int d) { return {Family::GL, n, d, 0, 0, 0}; }
    static GroupLabel sl(int n) { return {Family::SL, n, 0, 0, 0, 0}; }
    static GroupLabel pgl(int n, int d) { return {Family::PGL, n, d, 0, 0, 0}; }
    static GroupLabel sp(int m) { return {Family::Sp, 2 * m, 0, 0, 0, 0}; }
    static GroupLabel o(int n, int k, int a) { return {Family::O, n, 0, k, a, 0}; }
    static GroupLabel so(int n, int w2) { return {Family::SO, n, 0, 0, 0, w2}; }
    static GroupLabel so2(int d) { return {Family::SO, 2, d, 0, 0, 0}; }

    /// Throws DomainError if the label names no component.
    void validate() const;

    bool is_so2() const { return family == Family::SO && n == 2; }
    /// Families whose group acts through sign changes.
    bool is_orthosymplectic() const { return family == Family::Sp || family == Family::O || family == Family::SO; }

    bool operator==(const GroupLabel&) const = default;
};

std::string to_string(const GroupLabel& g);

/// The four 2-torsion points J0 = (0,0), J1 = (1/2,0), J2 = (0,1/2), J3 = (1/2,1/2).
const std::array<CurvePoint, 4>& two_torsion_catalog();

/// Stable orthogonal block of rank k built from distinct 2-torsion lines.
/// k = 1: J_a; k = 2: the a-th pair in lexicographic order; k = 3: all J_b
/// with b != a; k = 4: all four.
struct StableBlock {
    int k = 0;
    int a = 0;

    std::vector<CurvePoint> lines() const;
    bool operator==(const StableBlock&) const = default;
};

/// Number of components of O(k)-stable blocks: (n0,...,n4) = (1,4,6,4,1).
int block_count(int k);

enum class Level { bundle, higgs };

struct ModuliDescriptor {
    GroupLabel label;
    Level level = Level::higgs;
    int copies = 0;
    ActionSpec action;
    /// Number of linear constraints cutting the slice out of (T*X)^copies.
    int constraints = 0;
    /// Complex dimension of the moduli space.
    int dimension = 0;
    std::string presentation;
};

ModuliDescriptor descriptor(const GroupLabel& label, Level level = Level::higgs);

/// The stable block forced by the label, if any.
std::optional<StableBlock> forced_block(const GroupLabel& label);

struct HiggsClass {
    GroupLabel label;
    Tuple points;
    std::optional<StableBlock> block;

    bool operator==(const HiggsClass&) const = default;
};

struct BundleClass {
    GroupLabel label;
    std::vector<CurvePoint> points;
    std::optional<StableBlock> block;

    bool operator==(const BundleClass&) const = default;
};

struct SummandDescriptor {
    CotangentPoint stable_point;
    int jordan_size = 1;
};

/// Validates the raw tuple against the label and returns its canonical class.
HiggsClass make_class(const GroupLabel& label, const Tuple& raw);
/// As make_class, but also checks an explicitly supplied block tag.
HiggsClass make_class(const GroupLabel& label, const Tuple& raw, const std::optional<StableBlock>& block);

BundleClass make_bundle_class(const GroupLabel& label, const std::vector<CurvePoint>& raw);

bool isomorphic(const HiggsClass& a, const HiggsClass& b);
bool is_singular(const HiggsClass& c);
BundleClass underlying_bundle(const HiggsClass& c);

/// (sum x_i, sum t_i); GL only.
CotangentPoint det_tr(const HiggsClass& c);
/// (x_i, t_i) -> (x_i + n'x, t_i + n's) with n' = n/h; GL only.
HiggsClass translate(const HiggsClass& c, const CotangentPoint& w);
/// Weight-n' translation of the underlying bundle; GL only.
BundleClass translate(const BundleClass& c, const CurvePoint& x);

HiggsClass graded_object(const GroupLabel& label, const std::vector<SummandDescriptor>& summands);

/// Components of O(n) or SO(n).
std::vector<GroupLabel> list_components(Family family, int n);

struct SoInvariants {
    int n = 0;
    int w2 = 0;
    int copies = 0;
};

SoInvariants so_invariants(int n, const std::optional<StableBlock>& block);

/// rank of the stable pieces for GL: n' = n / gcd(n, d).
int gl_piece_rank(const GroupLabel& label);
/// gcd(n, d), with gcd(n, 0) = n.
int gl_gcd(const GroupLabel& label);

}  // namespace ellhiggs
