#include "shimura/quaternion.hpp"

#include "shimura/error.hpp"

namespace shimura {

QuaternionDiscriminant validate_discriminant(uint64_t d)
{
    if (d <= 1) {
        throw Error(ErrorCode::InvalidDiscriminant, "discriminant must exceed 1");
    }
    auto fac = factorize(from_u64(d));
    QuaternionDiscriminant out{d, {}};
    for (const auto& [p, e] : fac.factors) {
        if (e != 1) {
            throw Error(ErrorCode::InvalidDiscriminant, std::to_string(d) + " is not squarefree");
        }
        out.primes.push_back(to_u64(p));
    }
    if (out.primes.size() % 2 != 0) {
        throw Error(ErrorCode::InvalidDiscriminant,
                    std::to_string(d) + " has an odd number of prime factors");
    }
    return out;
}

bool splits_over_quadratic(const QuaternionDiscriminant& b, int64_t m)
{
    QuadraticField k(m);
    for (uint64_t ell : b.primes) {
        if (splitting_type(k, ell) == SplittingType::Split) {
            return false;
        }
    }
    return true;
}

bool splits_over_abelian(const QuaternionDiscriminant& b, const AbelianFieldSpec& k)
{
    for (uint64_t ell : b.primes) {
        if (local_degree(k, ell) % 2 != 0) {
            return false;
        }
    }
    return true;
}

std::optional<uint64_t> least_q(const QuaternionDiscriminant& b, const AbelianFieldSpec& k, uint64_t bound)
{
    if (bound < 2) {
        throw Error(ErrorCode::InvalidInput, "q bound must be at least 2");
    }
    for (uint64_t q : primes_in_range(2, static_cast<int64_t>(bound))) {
        if (splits_completely(k, q) && !splits_over_quadratic(b, -static_cast<int64_t>(q))) {
            return q;
        }
    }
    return std::nullopt;
}

BigRational eichler_genus_value(const QuaternionDiscriminant& b)
{
    BigInt mu = 1, e2 = 1, e3 = 1;
    for (uint64_t ell : b.primes) {
        auto l = static_cast<int64_t>(ell);
        mu *= l - 1;
        e2 *= 1 - kronecker(-4, l);
        e3 *= 1 - kronecker(-3, l);
    }
    BigRational g = BigRational(1) + make_rational(mu, 12) - make_rational(e2, 4) - make_rational(e3, 3);
    return g;
}

uint64_t shimura_genus(const QuaternionDiscriminant& b)
{
    BigRational g = eichler_genus_value(b);
    if (g.get_den() != 1 || g < 0) {
        throw Error(ErrorCode::InvalidInput, "genus expression is not a nonnegative integer: " + g.get_str());
    }
    return to_u64(g.get_num());
}

} // namespace shimura
