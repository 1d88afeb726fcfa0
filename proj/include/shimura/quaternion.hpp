#pragma once

// Indefinite quaternion algebras over Q, known only through their
// discriminant: splitting over quadratic and abelian fields, the least
// admissible auxiliary prime q, and the genus of the Shimura curve.

#include <cstdint>
#include <optional>
#include <vector>

#include "shimura/abelian.hpp"
#include "shimura/arith.hpp"

namespace shimura {

struct QuaternionDiscriminant
{
    uint64_t d = 0;
    std::vector<uint64_t> primes; // increasing
};

/// Squarefree with an even number (>= 2) of prime factors, else
/// InvalidDiscriminant.
QuaternionDiscriminant validate_discriminant(uint64_t d);

/// Q(sqrt m) splits B iff no prime of d splits in it.
bool splits_over_quadratic(const QuaternionDiscriminant& b, int64_t m);

/// k splits B iff every prime of d has even local degree in k.
bool splits_over_abelian(const QuaternionDiscriminant& b, const AbelianFieldSpec& k);

/// Least prime q <= bound splitting completely in k with Q(sqrt -q) not
/// splitting B.
std::optional<uint64_t> least_q(const QuaternionDiscriminant& b, const AbelianFieldSpec& k, uint64_t bound);

/// 1 + mu/12 - e2/4 - e3/3 as an exact rational.
BigRational eichler_genus_value(const QuaternionDiscriminant& b);

/// The genus; throws InvalidInput if the expression is not a nonnegative
/// integer.
uint64_t shimura_genus(const QuaternionDiscriminant& b);

} // namespace shimura
