#pragma once

// Exceptional primes: Frobenius trace sets, generators of class-group powers,
// the norm values attached to (prime, exponent tuple, Frobenius root), and
// the prime sets built from them.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "shimura/abelian.hpp"
#include "shimura/arith.hpp"
#include "shimura/number_field.hpp"

namespace shimura {

enum class Variant { Unprimed, Primed };

const char* to_string(Variant v);

struct FrobeniusRootSet
{
    uint64_t q = 0;
    /// All a with a^2 < 4q; a stands for the roots of x^2 + a x + q.
    std::vector<int64_t> traces;
};

/// Throws InvalidInput unless q is prime.
FrobeniusRootSet fr_set(uint64_t q);

/// Exponent choices per Galois element: {0,8,12,16,24} (unprimed) or
/// {0,4,6,8,12} (primed); all 5^n tuples in lexicographic order. n <= 4.
std::vector<std::vector<unsigned>> epsilon_exponents(size_t n, Variant v);

/// 24h (unprimed) or 12h (primed).
unsigned beta_exponent(unsigned h, Variant v);

/// beta^e = s*beta + t for beta a root of x^2 + a x + q.
struct BetaPower
{
    BigInt s, t;
};
BetaPower beta_power(int64_t a, uint64_t q, unsigned e);

/// Whether x^2 + a x + q has its roots in k.
bool roots_in_field(const NumberField& k, int64_t a, uint64_t q);

/// One Frobenius-root instance of a norm value.
struct NormInstance
{
    /// sigma(alpha) for every Galois index of k.
    std::vector<NumberField::Element> alpha_conjugates;
    std::vector<unsigned> exponents;
    int64_t a = 0;
    uint64_t q = 0;
    unsigned e = 0;
    /// When the roots lie in k: 0 picks (-a + sqrt(a^2-4q))/2, 1 the other.
    int root = 0;
};

/// Norm from k(beta) to Q of alpha^eps - beta^e.
BigInt norm_value(const NumberField& k, const NormInstance& inst);

/// Factors of norm_value from X^g - Y^g = prod_{d | g} Phi_d(X, Y), where g
/// is the gcd of e and the exponents. Their product is norm_value.
std::vector<BigInt> norm_value_pieces(const NumberField& k, const NormInstance& inst);

enum class Provenance { Computed, Supplied };

const char* to_string(Provenance p);

struct GeneratorDatum
{
    uint64_t q = 0;
    /// Image of the primitive element theta in O_k / frak q = F_q; for
    /// quadratic k this is r with sqrt(m) = r mod frak q.
    uint64_t residue = 0;
    unsigned h = 1;
    NumberField::Element alpha;
    std::string alpha_text;
    Provenance provenance = Provenance::Computed;
};

struct SuppliedGenerator
{
    uint64_t q = 0;
    uint64_t residue = 0;
    /// Coordinates in the power basis of theta.
    std::vector<BigRational> alpha;
    /// Optional: sigma_i(alpha) for every Galois index, checked if present.
    std::vector<std::vector<BigRational>> conjugates;
};

struct SuppliedData
{
    unsigned h = 0;
    std::vector<SuppliedGenerator> generators;

    /// {"h": 1, "generators": [{"q": 11, "residue": 9, "alpha": ["2","1","0","0"],
    /// "conjugates": [[...], ...]}]}; throws MalformedInput.
    static SuppliedData from_json(const std::string& text);
};

/// |N(alpha)| = q^h, alpha integral, theta -> residue is a root of the
/// minimal polynomial mod q, alpha lies over it and over no other root.
/// Throws MalformedInput when the data cannot be checked (residue not a
/// root, repeated roots mod q, denominators divisible by q).
bool verify_supplied_generator(const NumberField& k, uint64_t q, uint64_t residue, unsigned h,
                               const NumberField::Element& alpha);

struct ExceptionalConfig
{
    FactorBudget budget{20'000, 5'000, 8};
    bool unprimed = true;
    bool primed = true;
    const SuppliedData* supplied = nullptr;
    uint64_t s_bound = 100'000;
};

/// Class number and generating set. Quadratic k: greedy over primes q
/// splitting completely with q not dividing 6h, adding (q, least root) when
/// its class is new. Q: the prime 5. Degree 3 and 4 need supplied data.
std::vector<GeneratorDatum> choose_S(const AbelianFieldSpec& k, const ExceptionalConfig& config, unsigned& h);

struct PrimeSet
{
    std::set<BigInt> primes;
    /// Composite cofactors the factorization budget left unsplit.
    std::set<BigInt> unfactored;
    size_t values = 0;

    bool complete() const { return unfactored.empty(); }
    /// p in primes, or p divides some unfactored cofactor.
    bool may_contain(const BigInt& p) const;
};

struct ExceptionalSetReport
{
    std::string field;
    std::string field_key;
    unsigned h = 1;
    std::vector<GeneratorDatum> S;
    bool unprimed = true;
    bool primed = true;
    PrimeSet N0, N0p;
    std::set<BigInt> T, Ram, N1, N1p, L;
    std::vector<std::string> notes;

    bool complete() const { return N0.complete() && N0p.complete(); }
    bool in_L(const BigInt& p) const;
    bool in_N1p(const BigInt& p) const;
};

/// Throws DegreeUnsupported for degree > 4, MissingSuppliedData for degree
/// 3/4 without supplied data, MalformedInput for supplied data that fails
/// verification.
ExceptionalSetReport exceptional_sets(const AbelianFieldSpec& k, const ExceptionalConfig& config = {});

/// (q|p) = -1, cross-checked against Euler's criterion. p odd prime, q != p.
bool legendre_obstruction(uint64_t p, uint64_t q);

/// Traces a of fr_set(q) with a^2 = 3q or 0 mod p. p odd prime, q prime.
std::vector<int64_t> trace_filter(uint64_t q, uint64_t p);

} // namespace shimura
