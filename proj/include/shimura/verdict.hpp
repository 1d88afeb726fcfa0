#pragma once

// Per-prime verdicts on the Gamma_0(p) Shimura curve over an abelian field:
// every hypothesis is checked and each failure is reported as a code.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shimura/abelian.hpp"
#include "shimura/exceptional.hpp"
#include "shimura/hilbert.hpp"
#include "shimura/quaternion.hpp"

namespace shimura {

enum class Outcome { Empty, EllipticOnly, Inconclusive };
const char* to_string(Outcome o);

enum class IrredOutcome { Irreducible, Inconclusive };
const char* to_string(IrredOutcome o);

struct VerdictOptions
{
    /// Replace the check p not in L by an assumption; verdicts become
    /// conditional and L is never computed.
    bool assume_outside_exceptional = false;
    uint64_t q_bound = 10'000;
    ExceptionalConfig exceptional;
    /// Reuse a report computed elsewhere (e.g. from the cache).
    const ExceptionalSetReport* precomputed = nullptr;
    std::string precomputed_source = "cache";
};

struct HypothesisReport
{
    QuaternionDiscriminant b;
    AbelianFieldSpec k = AbelianFieldSpec::rational();
    bool abelian_ok = true;
    HilbertContainment hcf;
    std::optional<uint64_t> q;
    bool b_splits_over_k = false;
    std::optional<ExceptionalSetReport> exceptional;
    bool assumed_outside = false;
    /// "computed", "cache" or "assumed".
    std::string l_source;
    std::vector<std::string> notes;
};

/// Throws DegreeUnsupported / MissingSuppliedData when L is needed but
/// cannot be computed.
HypothesisReport check_hypotheses(const QuaternionDiscriminant& b, const AbelianFieldSpec& k,
                                  const VerdictOptions& options = {});

struct Verdict
{
    uint64_t d = 0;
    std::string field;
    uint64_t p = 0;
    Outcome outcome = Outcome::Inconclusive;
    bool conditional = false;
    std::vector<std::string> reasons;
    std::optional<uint64_t> q;
    std::string l_source;
    std::vector<std::string> notes;
};

/// p must be prime (InvalidInput otherwise).
Verdict evaluate(const HypothesisReport& h, uint64_t p);
Verdict evaluate(const QuaternionDiscriminant& b, const AbelianFieldSpec& k, uint64_t p,
                 const VerdictOptions& options = {});

/// Every prime in [lo, hi]; InvalidInput when lo > hi.
std::vector<Verdict> evaluate_range(const HypothesisReport& h, uint64_t lo, uint64_t hi);
std::vector<Verdict> evaluate_range(const QuaternionDiscriminant& b, const AbelianFieldSpec& k, uint64_t lo,
                                    uint64_t hi, const VerdictOptions& options = {});

struct IrreducibilityVerdict
{
    uint64_t d = 0;
    std::string field;
    uint64_t p = 0;
    IrredOutcome outcome = IrredOutcome::Inconclusive;
    bool conditional = false;
    std::vector<std::string> reasons;
    std::optional<uint64_t> q;
    std::string l_source;
};

/// Uses the primed set only: p > 4q, p not dividing d, p outside N1'.
IrreducibilityVerdict irreducibility_verdict(const HypothesisReport& h, uint64_t p);

} // namespace shimura
