#include <doctest.h>

#include <cmath>
#include <optional>

#include "shimura/error.hpp"
#include "shimura/quadratic.hpp"
#include "oracles.hpp"

using namespace shimura;

namespace {

BigInt ipow(uint64_t q, unsigned h)
{
    BigInt n;
    mpz_pow_ui(n.get_mpz_t(), from_u64(q).get_mpz_t(), h);
    return n;
}

// alpha = (X + Y sqrt m)/2 generates P^h iff |N alpha| = q^h, alpha lies in
// P = (q, r - sqrt m) and alpha/q is not integral.
bool generates_power(const QuadraticField& k, const BigInt& x2, const BigInt& y2, uint64_t q, uint64_t r,
                     unsigned h)
{
    BigInt m = from_i64(k.radicand());
    BigInt n4 = x2 * x2 - m * y2 * y2;
    if (abs(n4) != 4 * ipow(q, h)) {
        return false;
    }
    // sqrt m -> r modulo q; 2 is invertible mod q
    BigInt v = (x2 + y2 * from_u64(r)) % from_u64(q);
    if (v != 0) {
        return false;
    }
    return !(x2 % from_u64(q) == 0 && y2 % from_u64(q) == 0);
}

bool half_integral(const QuadraticField& k)
{
    return k.discriminant() % 4 != 0;
}

// least-key generator by exhaustive search over X = 2x with |x| <= xmax
std::optional<QuadElement> brute_generator(const QuadraticField& k, uint64_t q, uint64_t r, unsigned h,
                                           const BigInt& xmax2)
{
    BigInt m = from_i64(k.radicand());
    BigInt n4 = 4 * ipow(q, h);
    std::optional<QuadElement> best;
    for (BigInt ax2 = 0; ax2 <= xmax2; ++ax2) {
        if (!half_integral(k) && ax2 % 2 != 0) {
            continue;
        }
        for (int sn : {1, -1}) {
            // m Y^2 = X^2 - sn * N
            BigInt rhs = ax2 * ax2 - sn * n4;
            if (rhs % m != 0) {
                continue;
            }
            BigInt y2sq = rhs / m;
            if (y2sq < 0 || !is_square(y2sq)) {
                continue;
            }
            BigInt ay2 = floor_sqrt(y2sq);
            if ((ax2 - ay2) % 2 != 0 || (!half_integral(k) && ay2 % 2 != 0)) {
                continue;
            }
            for (int sx : {1, -1}) {
                for (int sy : {1, -1}) {
                    BigInt x2 = sx * ax2, y2 = sy * ay2;
                    if (!generates_power(k, x2, y2, q, r, h)) {
                        continue;
                    }
                    QuadElement a(k, BigRational(x2, 2), BigRational(y2, 2));
                    if (!best || generator_key_less(a, *best)) {
                        best = a;
                    }
                }
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("element arithmetic")
{
    QuadraticField k(-5);
    QuadElement a(k, 2, 1);
    CHECK(a.norm() == 9);
    CHECK((a * a.conj()) == QuadElement(k, 9, 0));
    CHECK(a.pow(3) == a * a * a);
    CHECK(to_string(QuadElement(k, 2, -3)) == "2 - 3*sqrt(-5)");
    CHECK(to_string(QuadElement(k, 0, 1)) == "sqrt(-5)");
    CHECK(to_string(QuadElement(k, 0, -1)) == "-sqrt(-5)");
    CHECK(to_string(QuadElement(k, BigRational(1, 2), BigRational(-1, 2))) == "1/2 - 1/2*sqrt(-5)");
    QuadraticField k3(-3);
    CHECK(QuadElement(k3, BigRational(1, 2), BigRational(1, 2)).is_integral());
    CHECK_FALSE(QuadElement(k, BigRational(1, 2), BigRational(1, 2)).is_integral());
}

TEST_CASE("split prime ideals")
{
    QuadraticField k(-5);
    CHECK_THROWS_AS(make_split_prime_ideal(k, 5, 0), Error);
    CHECK_THROWS_AS(make_split_prime_ideal(k, 11, 1), Error); // 11 is inert
    CHECK_THROWS_AS(make_split_prime_ideal(k, 7, 2), Error);  // 2^2 != -5 mod 7
    CHECK_NOTHROW(make_split_prime_ideal(k, 7, 3));
    auto p = make_split_prime_ideal(k, 7, 3);
    BigInt r2 = residue_lift(p, 2);
    CHECK((r2 * r2 + 5) % 49 == 0);
    CHECK(r2 % 7 == 3);
}

TEST_CASE("known generators")
{
    QuadraticField k(-5);
    auto p = make_split_prime_ideal(k, 7, 3);
    try {
        principal_generator(p, 1);
        FAIL("expected NotPrincipal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPrincipal);
    }
    // sqrt(-5) = 3 modulo (7, 3 - sqrt -5), so 2 - 3 sqrt(-5) lies in it
    QuadElement g = principal_generator(p, 2);
    CHECK(g == QuadElement(k, 2, -3));
    CHECK(in_ideal_power(g, p, 2));
    CHECK_FALSE(in_ideal_power(QuadElement(k, 2, 3), p, 2));
    CHECK(principal_generator(make_split_prime_ideal(k, 7, 4), 2) == QuadElement(k, 2, 3));

    QuadraticField k7(7);
    CHECK(principal_generator(make_split_prime_ideal(k7, 19, 8), 1) == QuadElement(k7, 3, 2));
    CHECK(fundamental_unit(k7) == QuadElement(k7, 8, 3));
    CHECK(fundamental_unit(QuadraticField(5)) == QuadElement(QuadraticField(5), BigRational(1, 2), BigRational(1, 2)));
    CHECK(fundamental_unit(QuadraticField(2)) == QuadElement(QuadraticField(2), 1, 1));
    CHECK(fundamental_unit(QuadraticField(94)) == QuadElement(QuadraticField(94), 2143295, 221064));
}

TEST_CASE("fundamental unit matches the continued fraction period")
{
    for (int64_t m = 2; m < 3000; ++m) {
        if (squarefree_part(m) != m) {
            continue;
        }
        QuadraticField k(m);
        int64_t d = k.discriminant();
        auto [x, y] = oracle::fundamental_unit_cf(d);
        // (x + y sqrt D)/2 in terms of sqrt m
        BigRational yy = d == 4 * m ? BigRational(y) : BigRational(y, 2);
        CHECK_MESSAGE(fundamental_unit(k) == QuadElement(k, BigRational(x, 2), yy), "m=" << m);
    }
}

TEST_CASE("imaginary generators match exhaustive search")
{
    for (int64_t m : {-1, -2, -3, -5, -6, -14, -15, -23, -47, -65}) {
        QuadraticField k(m);
        for (uint64_t q = 3; q < 60; q += 2) {
            if (!is_prime_u64(q) || kronecker(k.discriminant(), int64_t(q)) != 1) {
                continue;
            }
            int64_t mm = ((m % int64_t(q)) + int64_t(q)) % int64_t(q);
            uint64_t r = *sqrt_mod_prime(uint64_t(mm), q);
            for (uint64_t rr : {r, q - r}) {
                auto p = make_split_prime_ideal(k, q, rr);
                for (unsigned h = 1; h <= 4 && ipow(q, h) < 1000000; ++h) {
                    // |x| <= sqrt(N), so 2|x| <= 2 sqrt(N)
                    auto expect = brute_generator(k, q, rr, h, 2 * floor_sqrt(ipow(q, h)) + 1);
                    if (expect) {
                        CHECK_MESSAGE(principal_generator(p, h) == *expect,
                                      "m=" << m << " q=" << q << " r=" << rr << " h=" << h);
                    } else {
                        CHECK_THROWS_AS(principal_generator(p, h), Error);
                    }
                }
            }
        }
    }
}

TEST_CASE("real generators match exhaustive search up to the found x")
{
    for (int64_t m : {2, 3, 5, 7, 10, 13, 15, 79, 82}) {
        QuadraticField k(m);
        for (uint64_t q = 3; q < 50; q += 2) {
            if (!is_prime_u64(q) || kronecker(k.discriminant(), int64_t(q)) != 1) {
                continue;
            }
            uint64_t r = *sqrt_mod_prime(uint64_t(m % int64_t(q)), q);
            for (uint64_t rr : {r, q - r}) {
                auto p = make_split_prime_ideal(k, q, rr);
                for (unsigned h = 1; h <= 3; ++h) {
                    std::optional<QuadElement> got;
                    try {
                        got = principal_generator(p, h);
                    } catch (const Error& e) {
                        CHECK(e.code() == ErrorCode::NotPrincipal);
                    }
                    if (got) {
                        CHECK(abs(got->norm()) == BigRational(ipow(q, h)));
                        CHECK(in_ideal_power(*got, p, h));
                        BigInt xmax2 = BigRational(2 * abs(got->x())).get_num();
                        auto expect = brute_generator(k, q, rr, h, xmax2);
                        REQUIRE(expect);
                        CHECK_MESSAGE(*got == *expect, "m=" << m << " q=" << q << " h=" << h);
                    } else {
                        // nothing small either
                        CHECK_FALSE(brute_generator(k, q, rr, h, BigInt(20000)));
                    }
                }
            }
        }
    }
}
