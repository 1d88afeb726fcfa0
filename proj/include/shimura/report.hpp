#pragma once

// JSON forms of the reports printed by the command-line tool. Field names
// are stable; primes below 2^64 are numbers, larger ones decimal strings.

#include <string>

#include "json.hpp"

#include "shimura/curves.hpp"
#include "shimura/exceptional.hpp"
#include "shimura/verdict.hpp"

namespace shimura {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

Json prime_json(const BigInt& p);
BigInt prime_from_json(const Json& j);

Json to_json(const ExceptionalSetReport& r);
/// Inverse of to_json; throws MalformedInput.
ExceptionalSetReport sets_from_json(const Json& j);

Json to_json(const Verdict& v);
Json to_json(const IrreducibilityVerdict& v);
Json to_json(const HypothesisReport& h);
Json conic_json(int64_t c, const ConicResult& r);

/// Two-space indentation and a trailing newline.
std::string render(const Json& j);

} // namespace shimura
