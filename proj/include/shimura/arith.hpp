#pragma once

// Exact integer primitives: primality, factorization with a work budget,
// Kronecker symbols, integer square roots, sieving and modular roots.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace shimura {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigInt& n);
BigInt big_from_string(const std::string& s);

/// True iff n fits in a uint64_t (n >= 0).
bool fits_u64(const BigInt& n);
uint64_t to_u64(const BigInt& n);
BigInt from_u64(uint64_t v);
BigInt from_i64(int64_t v);

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m);
BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& m);

/// Deterministic for n < 2^64 (fixed Miller-Rabin witness set). Above that,
/// BPSW followed by 64 Miller-Rabin rounds (error below 2^-128).
bool is_prime_u64(uint64_t n);
bool is_prime(const BigInt& n);

/// Kronecker symbol (a|n), extended to even and negative n in the usual way.
int kronecker(int64_t a, int64_t n);
int kronecker(const BigInt& a, const BigInt& n);

/// num/den in canonical form (den != 0).
BigRational make_rational(const BigInt& num, const BigInt& den);

BigInt floor_sqrt(const BigInt& n);
uint64_t floor_sqrt_u64(uint64_t n);
bool is_square(const BigInt& n);

/// Primes p with lo <= p <= hi, increasing.
std::vector<uint64_t> primes_in_range(int64_t lo, int64_t hi);

/// Cached sieve of all primes below 2^16.
const std::vector<uint32_t>& small_primes();

struct FactorBudget
{
    /// Pollard-Brent iterations allowed per composite cofactor.
    uint64_t rho_iterations = 1'000'000;
    /// Pollard p-1 stage-one bound (0 disables).
    uint64_t pm1_bound = 20'000;
    /// Elliptic-curve attempts per cofactor above 2^128. Below 2^128 the
    /// curve search runs until it splits the number.
    uint64_t ecm_curves = 60;
};

struct PrimeFactorization
{
    BigInt n; // |input|
    std::vector<std::pair<BigInt, unsigned>> factors;
    /// Composite cofactors the budget could not split. Their prime divisors
    /// are unknown to the caller.
    std::vector<BigInt> unfactored;

    bool complete() const { return unfactored.empty(); }
    /// Product of factors and unfactored cofactors.
    BigInt recompose() const;
};

/// Complete for |n| < 2^128; above that, cofactors the budget cannot split
/// are listed in `unfactored`. Throws Error(InvalidInput) for n == 0.
PrimeFactorization factorize(const BigInt& n, const FactorBudget& budget = {});

/// Squarefree kernel with sign: n = s * k^2 with s squarefree (sign kept).
/// Requires n != 0; uses trial division, so |n| must factor completely.
int64_t squarefree_part(int64_t n);

/// Distinct prime divisors of a nonzero machine integer.
std::vector<uint64_t> prime_divisors(uint64_t n);

/// Square root of a modulo an odd prime p, if one exists (smallest root).
std::optional<uint64_t> sqrt_mod_prime(uint64_t a, uint64_t p);

/// Lift a simple root r of the integer polynomial `poly` (coefficients in
/// increasing degree) modulo q to a root modulo q^k. Requires
/// poly(r) = 0 mod q and poly'(r) != 0 mod q.
BigInt hensel_lift(const std::vector<BigInt>& poly, const BigInt& r,
                   const BigInt& q, unsigned k);

/// Evaluate poly (increasing degree) at x modulo m (m > 0), result in [0, m).
BigInt eval_mod(const std::vector<BigInt>& poly, const BigInt& x, const BigInt& m);

int64_t gcd_i64(int64_t a, int64_t b);
/// Extended gcd: returns g = gcd(a,b) >= 0 with u*a + v*b = g.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& u, BigInt& v);

uint64_t euler_phi(uint64_t n);

} // namespace shimura
