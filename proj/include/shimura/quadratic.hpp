#pragma once

// Elements and split prime ideals of a quadratic field, units of real
// quadratic fields, and generators of principal powers of split primes.

#include <cstdint>
#include <string>

#include "shimura/abelian.hpp"
#include "shimura/arith.hpp"
#include "shimura/forms.hpp"

namespace shimura {

/// x + y*sqrt(m) with rational x, y.
class QuadElement
{
  public:
    QuadElement(const QuadraticField& k, BigRational x, BigRational y);
    QuadElement(const QuadraticField& k, long x, long y);

    const QuadraticField& field() const { return k_; }
    const BigRational& x() const { return x_; }
    const BigRational& y() const { return y_; }

    QuadElement conj() const { return {k_, x_, -y_}; }
    BigRational norm() const;
    BigRational trace() const { return 2 * x_; }
    bool is_integral() const;
    QuadElement pow(unsigned e) const;

    QuadElement operator+(const QuadElement& o) const;
    QuadElement operator-(const QuadElement& o) const;
    QuadElement operator*(const QuadElement& o) const;
    QuadElement operator-() const { return {k_, -x_, -y_}; }
    bool operator==(const QuadElement& o) const;

  private:
    QuadraticField k_;
    BigRational x_;
    BigRational y_;
};

/// "2 - 3*sqrt(-5)"
std::string to_string(const QuadElement& a);

/// The ideal (q, r - sqrt m): q an odd prime split in k, r^2 = m mod q.
struct SplitPrimeIdeal
{
    QuadraticField field;
    uint64_t q;
    uint64_t r;
};

/// Validates the invariants; throws InvalidInput.
SplitPrimeIdeal make_split_prime_ideal(const QuadraticField& k, uint64_t q, uint64_t r);

/// Form (q, b, c) whose class is the class of the ideal.
BinaryForm ideal_form(const SplitPrimeIdeal& p);

/// Root of X^2 - m modulo q^h lifting r.
BigInt residue_lift(const SplitPrimeIdeal& p, unsigned h);

/// Membership of a in P^h, through the residue map sqrt(m) -> r_h mod q^h.
bool in_ideal_power(const QuadElement& a, const SplitPrimeIdeal& p, unsigned h);

/// Fundamental unit > 1 of a real quadratic field.
QuadElement fundamental_unit(const QuadraticField& k);

/// Generator of P^h with the least key (|x|, |y|, x < 0, y < 0) among all
/// generators. Throws NotPrincipal when P^h is not principal.
QuadElement principal_generator(const SplitPrimeIdeal& p, unsigned h);

/// Total order used to pick among associates.
bool generator_key_less(const QuadElement& a, const QuadElement& b);

} // namespace shimura
