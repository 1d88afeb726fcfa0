#include "doctest.h"

#include "shimura/abelian.hpp"
#include "shimura/arith.hpp"
#include "shimura/error.hpp"

using namespace shimura;

namespace {

uint64_t mult_order(uint64_t a, uint64_t n)
{
    uint64_t x = a % n;
    uint64_t k = 1;
    while (x != 1 % n) {
        x = x * a % n;
        ++k;
    }
    return k;
}

std::vector<int64_t> radicands(const std::vector<QuadraticField>& v)
{
    std::vector<int64_t> out;
    for (const auto& k : v) {
        out.push_back(k.radicand());
    }
    return out;
}

} // namespace

TEST_CASE("quadratic field data and splitting types")
{
    QuadraticField k(-29);
    CHECK(k.discriminant() == -116);
    CHECK(splitting_type(k, 2) == SplittingType::Ramified);
    CHECK(splitting_type(k, 5) == SplittingType::Split);
    CHECK(splitting_type(QuadraticField(-79), 2) == SplittingType::Split);
    CHECK(splitting_type(QuadraticField(-5), 3) == SplittingType::Split);
    CHECK(splitting_type(QuadraticField(-5), 11) == SplittingType::Inert);
    CHECK(QuadraticField(5).discriminant() == 5);
    CHECK(QuadraticField::from_discriminant(-20).radicand() == -5);
    CHECK_THROWS_AS(QuadraticField(12), Error);
    CHECK_THROWS_AS(QuadraticField(1), Error);
    CHECK_FALSE(is_fundamental_discriminant(-16));
    CHECK(is_fundamental_discriminant(-8));
    CHECK(is_fundamental_discriminant(-3));
}

TEST_CASE("field spec parsing")
{
    auto k = AbelianFieldSpec::parse("biquad:-5,7");
    CHECK(k.conductor() == 140);
    CHECK(k.degree() == 4);
    CHECK(k.kind() == FieldKind::Biquadratic);
    CHECK(k.label() == "biquad:-5,7");
    CHECK(k.ramified_primes() == std::vector<uint64_t>{2, 5, 7});

    auto z = AbelianFieldSpec::parse("cyclo:13");
    CHECK(z.conductor() == 13);
    CHECK(z.degree() == 12);
    CHECK(z.kind() == FieldKind::Cyclotomic);

    CHECK(AbelianFieldSpec::parse("quad:-5").conductor() == 20);
    CHECK(AbelianFieldSpec::parse(" quad: 7 ").conductor() == 28);
    CHECK(AbelianFieldSpec::parse("cyclo:10").conductor() == 5);
    CHECK(AbelianFieldSpec::parse("cyclo:4").kind() == FieldKind::Quadratic);
    CHECK(AbelianFieldSpec::parse("cyclo:2").degree() == 1);

    auto a = AbelianFieldSpec::parse("abelian:f=13;H=12");
    CHECK(a.degree() == 6);
    CHECK(a.has_real_embedding());

    // The kernel of the character of Q(sqrt -5) lifted to modulus 40 drops
    // back to conductor 20.
    auto b = AbelianFieldSpec::parse("abelian:f=40;H=3,9,21,23,29");
    CHECK(b.conductor() == 20);
    CHECK(b.degree() == 2);
    CHECK(b.canonical_key() == AbelianFieldSpec::quadratic(-5).canonical_key());

    CHECK_THROWS_AS(AbelianFieldSpec::parse("poly:x^2+1"), Error);
    try {
        AbelianFieldSpec::parse("galois:x^3-2");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonAbelianField);
    }
    for (const char* bad : {"quad:4", "quad:1", "quad:x", "biquad:3", "biquad:3,3", "cyclo:0",
                            "abelian:f=10;H=2", "abelian:f=0;H=", "field:3", "quad"}) {
        try {
            AbelianFieldSpec::parse(bad);
            FAIL("accepted " << bad);
        } catch (const Error& e) {
            CHECK_MESSAGE(e.code() == ErrorCode::MalformedFieldSpec, bad);
        }
    }
}

TEST_CASE("splits_completely")
{
    auto z = AbelianFieldSpec::parse("cyclo:13");
    auto b = AbelianFieldSpec::parse("biquad:-5,7");
    CHECK(splits_completely(z, 79));
    CHECK(splits_completely(z, 53));
    CHECK_FALSE(splits_completely(z, 13));
    CHECK(splits_completely(b, 29));
    CHECK(splits_completely(b, 3));
    CHECK_FALSE(splits_completely(b, 7));
    for (uint64_t q : primes_in_range(3, 10000)) {
        if (140 % q == 0) {
            continue;
        }
        bool oracle = kronecker(-20, static_cast<int64_t>(q)) == 1 && kronecker(28, static_cast<int64_t>(q)) == 1;
        REQUIRE(splits_completely(b, q) == oracle);
        REQUIRE(splits_completely(z, q) == (q % 13 == 1));
    }
}

TEST_CASE("local degrees")
{
    auto z = AbelianFieldSpec::parse("cyclo:13");
    CHECK(local_degree(z, 2) == 12);
    CHECK(local_degree(z, 5) == 4);
    CHECK(local_degree(z, 3) == 3);
    CHECK(local_degree(z, 13) == 12);

    // 2 ramifies in Q(sqrt -5) and Q(sqrt 7) and is inert in Q(sqrt -35), so
    // no quadratic subfield has 2 split: the decomposition group is all of G.
    auto b = AbelianFieldSpec::parse("biquad:-5,7");
    CHECK(local_degree(b, 2) == 4);
    CHECK(local_degree(b, 3) == 1);
    CHECK(local_degree(b, 5) == 4);
}

TEST_CASE("local degree of a cyclotomic field is the residue order times phi of the ramified part")
{
    for (uint64_t n : {5u, 8u, 12u, 13u, 15u, 16u, 21u, 36u, 45u}) {
        auto k = AbelianFieldSpec::cyclotomic(n);
        for (uint64_t ell : primes_in_range(2, 60)) {
            uint64_t a = 1;
            uint64_t m0 = n;
            while (m0 % ell == 0) {
                m0 /= ell;
                a *= ell;
            }
            uint64_t expect = euler_phi(a) * mult_order(ell, m0);
            REQUIRE(local_degree(k, ell) == expect);
        }
    }
}

TEST_CASE("local degree of a biquadratic field from its quadratic subfields")
{
    for (auto [m1, m2] : std::vector<std::pair<int64_t, int64_t>>{{-5, 7}, {-1, 2}, {-3, 5}, {2, 3}, {-7, -11}}) {
        auto k = AbelianFieldSpec::biquadratic(m1, m2);
        auto subs = quadratic_subfields(k);
        REQUIRE(subs.size() == 3);
        for (uint64_t ell : primes_in_range(2, 2000)) {
            int split = 0;
            for (const auto& s : subs) {
                split += splitting_type(s, ell) == SplittingType::Split;
            }
            uint64_t expect = split == 3 ? 1 : (split == 1 ? 2 : 4);
            REQUIRE(split != 2);
            REQUIRE(local_degree(k, ell) == expect);
        }
    }
}

TEST_CASE("splitting type agrees with local degree on quadratic fields")
{
    for (int64_t m = -200; m <= 200; ++m) {
        if (m == 0 || m == 1 || squarefree_part(m) != m) {
            continue;
        }
        QuadraticField q(m);
        auto k = AbelianFieldSpec::quadratic(m);
        for (uint64_t ell : primes_in_range(2, 100)) {
            bool split = splitting_type(q, ell) == SplittingType::Split;
            REQUIRE(split == (local_degree(k, ell) == 1));
        }
    }
}

TEST_CASE("complete splitting matches local degree one")
{
    for (const char* spec : {"biquad:-5,7", "cyclo:13"}) {
        auto k = AbelianFieldSpec::parse(spec);
        for (uint64_t q : primes_in_range(2, 10000)) {
            if (k.conductor() % q == 0) {
                continue;
            }
            REQUIRE(splits_completely(k, q) == (local_degree(k, q) == 1));
        }
    }
}

TEST_CASE("quadratic subfields")
{
    CHECK(radicands(quadratic_subfields(AbelianFieldSpec::parse("biquad:-5,7"))) == std::vector<int64_t>{-5, 7, -35});
    CHECK(radicands(quadratic_subfields(AbelianFieldSpec::parse("cyclo:13"))) == std::vector<int64_t>{13});
    CHECK(radicands(quadratic_subfields(AbelianFieldSpec::parse("quad:-5"))) == std::vector<int64_t>{-5});
    CHECK(radicands(quadratic_subfields(AbelianFieldSpec::parse("cyclo:8"))) == std::vector<int64_t>{-1, -2, 2});
    CHECK(radicands(quadratic_subfields(AbelianFieldSpec::parse("cyclo:7"))) == std::vector<int64_t>{-7});
    CHECK(quadratic_subfields(AbelianFieldSpec::rational()).empty());
    // Q(zeta_9) has cyclic group of order 6 and conductor 9: one quadratic
    // subfield, Q(sqrt -3).
    CHECK(radicands(quadratic_subfields(AbelianFieldSpec::parse("cyclo:9"))) == std::vector<int64_t>{-3});
}

TEST_CASE("real embeddings and cosets")
{
    CHECK(AbelianFieldSpec::parse("quad:7").has_real_embedding());
    CHECK_FALSE(AbelianFieldSpec::parse("quad:-5").has_real_embedding());
    CHECK_FALSE(AbelianFieldSpec::parse("biquad:-5,7").has_real_embedding());
    CHECK(AbelianFieldSpec::parse("biquad:2,3").has_real_embedding());
    CHECK(AbelianFieldSpec::rational().has_real_embedding());
    auto b = AbelianFieldSpec::parse("biquad:-5,7");
    auto reps = b.coset_representatives();
    CHECK(reps.size() == 4);
    CHECK(reps.front() == 1);
    CHECK(AbelianFieldSpec::parse("cyclo:13").coset_representatives().size() == 12);
}
