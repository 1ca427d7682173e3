#pragma once

// JSON encodings of every value the library exchanges. Rationals are strings
// "p/q"; curve points ["a","b"]; cotangent points {"x":[..],"t":["re","im"]}.
// All from_json functions throw ParseError on malformed input and
// DomainError on well-formed input that violates a precondition.

#include <string>
#include <vector>

#include <json.hpp>

#include "ellhiggs/group_actions.hpp"
#include "ellhiggs/hitchin.hpp"
#include "ellhiggs/moduli.hpp"
#include "ellhiggs/verify.hpp"

namespace ellhiggs::json_io {

using nlohmann::json;

/// Parses text, mapping syntax errors to ParseError with the byte offset.
json parse(const std::string& text);

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const CurvePoint& p);
CurvePoint curve_point_from_json(const json& j);

json to_json(const ComplexRational& t);
/// Accepts ["re","im"] or a single rational (imaginary part 0).
ComplexRational complex_from_json(const json& j);

json to_json(const CotangentPoint& p);
CotangentPoint cotangent_point_from_json(const json& j);

json to_json(const GroupLabel& g);
GroupLabel label_from_json(const json& j);

json to_json(const StableBlock& b);
StableBlock block_from_json(const json& j);

json to_json(const ActionSpec& s);
ActionSpec action_from_json(const json& j);

json to_json(const GroupElement& g);
GroupElement element_from_json(const json& j);

json to_json(const HiggsClass& c);
/// Canonicalizes through make_class.
HiggsClass class_from_json(const json& j);

json to_json(const BundleClass& c);
BundleClass bundle_from_json(const json& j);

json to_json(const ModuliDescriptor& d);

json to_json(const HitchinBasePoint& b);
/// Accepts {"t":[...]} or a bare array of t values; canonicalizes.
HitchinBasePoint base_point_from_json(const GroupLabel& label, const json& j);
/// Base point with elementary symmetric functions, char_poly, pfaffian and pattern.
json hitchin_report(const HitchinBasePoint& b);

json to_json(const SpectralPattern& p);
json to_json(const FiberDescriptor& d);
json to_json(const FiberCount& c);
json to_json(const LemmaReport& r);

}  // namespace ellhiggs::json_io
