#include "shimura/verdict.hpp"

#include "shimura/error.hpp"

namespace shimura {

const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::Empty:
        return "empty";
    case Outcome::EllipticOnly:
        return "elliptic_only";
    case Outcome::Inconclusive:
        return "inconclusive";
    }
    return "?";
}

const char* to_string(IrredOutcome o)
{
    return o == IrredOutcome::Irreducible ? "irreducible" : "inconclusive";
}

HypothesisReport check_hypotheses(const QuaternionDiscriminant& b, const AbelianFieldSpec& k,
                                  const VerdictOptions& options)
{
    HypothesisReport h;
    h.b = b;
    h.k = k;
    h.hcf = contains_hilbert_class_field(k);
    h.q = least_q(b, k, options.q_bound);
    h.b_splits_over_k = splits_over_abelian(b, k);
    if (options.assume_outside_exceptional) {
        h.assumed_outside = true;
        h.l_source = "assumed";
    } else if (options.precomputed) {
        if (options.precomputed->field_key != k.canonical_key()) {
            throw Error(ErrorCode::InvalidInput, "precomputed exceptional sets belong to another field");
        }
        h.exceptional = *options.precomputed;
        h.l_source = options.precomputed_source;
    } else {
        h.exceptional = exceptional_sets(k, options.exceptional);
        h.l_source = "computed";
    }
    if (h.exceptional) {
        for (const auto& g : h.exceptional->S) {
            if (b.d % g.q == 0) {
                h.notes.push_back("S_PRIME_DIVIDES_D");
                break;
            }
        }
        if (!h.exceptional->complete()) {
            h.notes.push_back("L_HAS_UNFACTORED_COFACTORS");
        }
        if (!h.exceptional->unprimed || !h.exceptional->primed) {
            h.notes.push_back("L_PARTIAL_VARIANTS");
        }
    }
    return h;
}

namespace {

void require_prime(uint64_t p)
{
    if (!is_prime_u64(p)) {
        throw Error(ErrorCode::InvalidInput, std::to_string(p) + " is not prime");
    }
}

// Conditions shared by both verdicts, in the order they are reported.
void common_checks(const HypothesisReport& h, uint64_t p, std::vector<std::string>& reasons)
{
    if (h.hcf.contained) {
        reasons.push_back("HCF_CONTAINED");
    }
    if (!h.q) {
        reasons.push_back("NO_Q_FOUND");
    } else if (!(p > 4 * *h.q)) {
        reasons.push_back("P_LE_4Q");
    }
}

} // namespace

Verdict evaluate(const HypothesisReport& h, uint64_t p)
{
    require_prime(p);
    Verdict v;
    v.d = h.b.d;
    v.field = h.k.label();
    v.p = p;
    v.q = h.q;
    v.l_source = h.l_source;
    v.notes = h.notes;
    common_checks(h, p, v.reasons);
    if (p < 11) {
        v.reasons.push_back("P_TOO_SMALL");
    }
    if (p == 13) {
        v.reasons.push_back("P_EQ_13");
    }
    if (h.b.d % p == 0) {
        v.reasons.push_back("P_DIVIDES_D");
    }
    bool failed = !v.reasons.empty();
    if (h.assumed_outside) {
        v.conditional = true;
        v.reasons.push_back("L_UNCOMPUTED_ASSUMED");
    } else if (!h.exceptional->unprimed || !h.exceptional->primed) {
        // one variant was skipped, so membership in L is unknown
        v.reasons.push_back("L_INCOMPLETE");
        failed = true;
    } else if (h.exceptional->in_L(from_u64(p))) {
        v.reasons.push_back("P_IN_L");
        failed = true;
    }
    if (failed) {
        v.outcome = Outcome::Inconclusive;
    } else {
        v.outcome = h.b_splits_over_k ? Outcome::Empty : Outcome::EllipticOnly;
    }
    return v;
}

Verdict evaluate(const QuaternionDiscriminant& b, const AbelianFieldSpec& k, uint64_t p, const VerdictOptions& options)
{
    require_prime(p);
    return evaluate(check_hypotheses(b, k, options), p);
}

std::vector<Verdict> evaluate_range(const HypothesisReport& h, uint64_t lo, uint64_t hi)
{
    if (lo > hi) {
        throw Error(ErrorCode::InvalidInput, "empty prime range");
    }
    std::vector<Verdict> out;
    for (uint64_t p : primes_in_range(static_cast<int64_t>(lo), static_cast<int64_t>(hi))) {
        out.push_back(evaluate(h, p));
    }
    return out;
}

std::vector<Verdict> evaluate_range(const QuaternionDiscriminant& b, const AbelianFieldSpec& k, uint64_t lo,
                                    uint64_t hi, const VerdictOptions& options)
{
    if (lo > hi) {
        throw Error(ErrorCode::InvalidInput, "empty prime range");
    }
    return evaluate_range(check_hypotheses(b, k, options), lo, hi);
}

IrreducibilityVerdict irreducibility_verdict(const HypothesisReport& h, uint64_t p)
{
    require_prime(p);
    IrreducibilityVerdict v;
    v.d = h.b.d;
    v.field = h.k.label();
    v.p = p;
    v.q = h.q;
    v.l_source = h.l_source;
    common_checks(h, p, v.reasons);
    if (h.b.d % p == 0) {
        v.reasons.push_back("P_DIVIDES_D");
    }
    bool failed = !v.reasons.empty();
    if (h.assumed_outside) {
        v.conditional = true;
        v.reasons.push_back("L_UNCOMPUTED_ASSUMED");
    } else if (!h.exceptional->primed) {
        v.reasons.push_back("L_INCOMPLETE");
        failed = true;
    } else if (h.exceptional->in_N1p(from_u64(p))) {
        v.reasons.push_back("P_IN_N1P");
        failed = true;
    }
    v.outcome = failed ? IrredOutcome::Inconclusive : IrredOutcome::Irreducible;
    return v;
}

} // namespace shimura
