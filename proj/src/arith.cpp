#include "shimura/arith.hpp"

#include <algorithm>
#include <numeric>
#include <array>
#include <cstdlib>
#include <map>

#include "shimura/error.hpp"

namespace shimura {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorCode::MalformedFieldSpec: return "MalformedFieldSpec";
    case ErrorCode::NonAbelianField: return "NonAbelianField";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::DegreeUnsupported: return "DegreeUnsupported";
    case ErrorCode::MissingSuppliedData: return "MissingSuppliedData";
    case ErrorCode::UnsupportedDiscriminant: return "UnsupportedDiscriminant";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::ExhaustedSearch: return "ExhaustedSearch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NoKnownModel: return "NoKnownModel";
    }
    return "Unknown";
}

std::string to_string(const BigInt& n)
{
    return n.get_str(10);
}

BigInt big_from_string(const std::string& s)
{
    BigInt r;
    if (s.empty() || r.set_str(s, 10) != 0) {
        throw Error(ErrorCode::MalformedInput, "not an integer: '" + s + "'");
    }
    return r;
}

bool fits_u64(const BigInt& n)
{
    return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

uint64_t to_u64(const BigInt& n)
{
    uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    return v;
}

BigInt from_u64(uint64_t v)
{
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

BigInt from_i64(int64_t v)
{
    if (v >= 0) {
        return from_u64(static_cast<uint64_t>(v));
    }
    // two's complement magnitude, safe for INT64_MIN
    return -from_u64(~static_cast<uint64_t>(v) + 1);
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m)
{
    uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) {
            result = mulmod_u64(result, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

BigInt powmod(const BigInt& base, const BigInt& exp, const BigInt& m)
{
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

namespace {

bool miller_rabin_witness(uint64_t n, uint64_t a, uint64_t d, int s)
{
    a %= n;
    if (a == 0) {
        return true;
    }
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) {
        return true;
    }
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) {
            return true;
        }
    }
    return false;
}

} // namespace

bool is_prime_u64(uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    if (n < 37 * 37) {
        return true;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sinclair's base set: deterministic for all n < 2^64.
    for (uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                       1795265022ULL}) {
        if (!miller_rabin_witness(n, a, d, s)) {
            return false;
        }
    }
    return true;
}

bool is_prime(const BigInt& n)
{
    if (sgn(n) <= 0) {
        return false;
    }
    if (fits_u64(n)) {
        return is_prime_u64(to_u64(n));
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 64) != 0;
}

int kronecker(int64_t a, int64_t b)
{
    static constexpr std::array<int, 8> tab2 = {0, 1, 0, -1, 0, -1, 0, 1};
    if (b == 0) {
        return (a == 1 || a == -1) ? 1 : 0;
    }
    if ((a & 1) == 0 && (b & 1) == 0) {
        return 0;
    }
    // work in 128 bits so that negating INT64_MIN is harmless
    __int128 x = a;
    __int128 y = b;
    int v = 0;
    while ((y & 1) == 0) {
        y >>= 1;
        ++v;
    }
    int k = (v & 1) ? tab2[static_cast<unsigned>(x & 7)] : 1;
    if (y < 0) {
        y = -y;
        if (x < 0) {
            k = -k;
        }
    }
    // y odd and positive from here on
    for (;;) {
        if (x == 0) {
            return y > 1 ? 0 : k;
        }
        v = 0;
        while ((x & 1) == 0) {
            x >>= 1;
            ++v;
        }
        if (v & 1) {
            k *= tab2[static_cast<unsigned>(y & 7)];
        }
        if (x & y & 2) {
            k = -k;
        }
        __int128 r = x < 0 ? -x : x;
        x = y % r;
        y = r;
    }
}

int kronecker(const BigInt& a, const BigInt& n)
{
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

BigRational make_rational(const BigInt& num, const BigInt& den)
{
    if (den == 0) {
        throw Error(ErrorCode::InvalidInput, "zero denominator");
    }
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

BigInt floor_sqrt(const BigInt& n)
{
    if (sgn(n) < 0) {
        throw Error(ErrorCode::InvalidInput, "floor_sqrt of a negative number");
    }
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

uint64_t floor_sqrt_u64(uint64_t n)
{
    return to_u64(floor_sqrt(from_u64(n)));
}

bool is_square(const BigInt& n)
{
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::vector<uint64_t> primes_in_range(int64_t lo, int64_t hi)
{
    if (lo > hi) {
        throw Error(ErrorCode::InvalidInput, "primes_in_range: lo > hi");
    }
    std::vector<uint64_t> out;
    if (hi < 2) {
        return out;
    }
    uint64_t low = static_cast<uint64_t>(std::max<int64_t>(lo, 2));
    uint64_t high = static_cast<uint64_t>(hi);
    uint64_t root = floor_sqrt_u64(high);
    // segmented sieve over [low, high] using base primes up to sqrt(high)
    std::vector<char> base(root + 1, 1);
    std::vector<uint64_t> base_primes;
    for (uint64_t i = 2; i <= root; ++i) {
        if (base[i]) {
            base_primes.push_back(i);
            for (uint64_t j = i * i; j <= root; j += i) {
                base[j] = 0;
            }
        }
    }
    constexpr uint64_t segment = 1 << 18;
    for (uint64_t start = low; start <= high; start += segment) {
        uint64_t end = std::min(high, start + segment - 1);
        std::vector<char> mark(end - start + 1, 1);
        for (uint64_t p : base_primes) {
            uint64_t first = std::max(p * p, (start + p - 1) / p * p);
            for (uint64_t j = first; j <= end; j += p) {
                mark[j - start] = 0;
            }
        }
        for (uint64_t i = start; i <= end; ++i) {
            if (mark[i - start]) {
                out.push_back(i);
            }
        }
        if (end == high) {
            break;
        }
    }
    return out;
}

const std::vector<uint32_t>& small_primes()
{
    static const std::vector<uint32_t> primes = [] {
        std::vector<uint32_t> v;
        for (uint64_t p : primes_in_range(2, 65535)) {
            v.push_back(static_cast<uint32_t>(p));
        }
        return v;
    }();
    return primes;
}

BigInt PrimeFactorization::recompose() const
{
    BigInt r = 1;
    for (const auto& [p, e] : factors) {
        BigInt pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        r *= pe;
    }
    for (const auto& c : unfactored) {
        r *= c;
    }
    return r;
}

namespace {

uint64_t rho_u64(uint64_t n, uint64_t c, uint64_t budget)
{
    // Brent's cycle finding with batched gcds
    uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    uint64_t r = 1;
    uint64_t used = 0;
    auto f = [&](uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
    do {
        x = y;
        for (uint64_t i = 0; i < r; ++i) {
            y = f(y);
        }
        uint64_t k = 0;
        do {
            ys = y;
            uint64_t lim = std::min<uint64_t>(128, r - k);
            for (uint64_t i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += lim;
            used += lim;
        } while (k < r && g == 1);
        r <<= 1;
        if (used > budget) {
            return 0;
        }
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

BigInt rho_big(const BigInt& n, unsigned long c, uint64_t budget)
{
    BigInt y = 2, x = 2, ys = 2, q = 1, g = 1, t;
    uint64_t r = 1;
    uint64_t used = 0;
    auto step = [&](BigInt& v) {
        mpz_mul(t.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
        mpz_add_ui(t.get_mpz_t(), t.get_mpz_t(), c);
        mpz_tdiv_r(v.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (uint64_t i = 0; i < r; ++i) {
            step(y);
        }
        used += r;
        uint64_t k = 0;
        do {
            ys = y;
            uint64_t lim = std::min<uint64_t>(256, r - k);
            for (uint64_t i = 0; i < lim; ++i) {
                step(y);
                mpz_sub(t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                mpz_mul(t.get_mpz_t(), q.get_mpz_t(), t.get_mpz_t());
                mpz_tdiv_r(q.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += lim;
            used += lim;
        } while (k < r && g == 1);
        r <<= 1;
        if (used > budget) {
            return 0;
        }
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            mpz_sub(t.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    return g == n ? BigInt(0) : g;
}

BigInt pollard_pm1(const BigInt& n, uint64_t bound)
{
    BigInt a = 2, g, t;
    const auto& primes = small_primes();
    unsigned count = 0;
    for (uint32_t p : primes) {
        if (p > bound) {
            break;
        }
        uint64_t pk = p;
        while (pk * p <= bound) {
            pk *= p;
        }
        mpz_powm_ui(a.get_mpz_t(), a.get_mpz_t(), pk, n.get_mpz_t());
        if (++count % 512 == 0) {
            t = a - 1;
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            if (g != 1) {
                return g == n ? BigInt(0) : g;
            }
        }
    }
    t = a - 1;
    mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    return (g == 1 || g == n) ? BigInt(0) : g;
}

// Elliptic curve method on Montgomery curves By^2 = x^3 + Ax^2 + x, x-only
// arithmetic, Suyama parametrization, stage 2 by baby-step giant-step.
class Ecm
{
  public:
    Ecm(const BigInt& n, const std::vector<char>& composite)
        : n_(n)
        , composite_(composite)
    {
    }

    /// Factor found with curve sigma, 0 if none.
    BigInt curve(uint64_t sigma, uint64_t b1, uint64_t b2)
    {
        BigInt s = sigma;
        BigInt u = s * s - 5;
        BigInt v = 4 * s;
        Point p{mod(u * u * u), mod(v * v * v)};
        BigInt num = v - u;
        num = num * num * num * (3 * u + v);
        BigInt den = 16 * u * u * u * v;
        BigInt g, inv;
        den = mod(den);
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n_.get_mpz_t());
        if (g != 1) {
            return g == n_ ? BigInt(0) : g;
        }
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n_.get_mpz_t());
        a24_ = mod(num * inv);

        for (uint64_t q = 2; q <= b1; ++q) {
            if (composite_[q]) {
                continue;
            }
            uint64_t qk = q;
            while (qk <= b1 / q) {
                qk *= q;
            }
            p = ladder(p, qk);
        }
        mpz_gcd(g.get_mpz_t(), p.z.get_mpz_t(), n_.get_mpz_t());
        if (g != 1) {
            return g == n_ ? BigInt(0) : g;
        }
        return stage2(p, b1, b2);
    }

  private:
    struct Point
    {
        BigInt x, z;
    };

    BigInt mod(const BigInt& a) const
    {
        BigInt r;
        mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n_.get_mpz_t());
        return r;
    }

    Point dbl(const Point& p) const
    {
        BigInt t = mod((p.x + p.z) * (p.x + p.z));
        BigInt s = mod((p.x - p.z) * (p.x - p.z));
        BigInt d = t - s;
        return {mod(t * s), mod(d * (s + a24_ * d))};
    }

    Point add(const Point& p, const Point& q, const Point& diff) const
    {
        BigInt u = mod((p.x - p.z) * (q.x + q.z));
        BigInt v = mod((p.x + p.z) * (q.x - q.z));
        BigInt sum = u + v;
        BigInt dif = u - v;
        return {mod(diff.z * sum * sum), mod(diff.x * dif * dif)};
    }

    Point ladder(const Point& p, uint64_t k) const
    {
        if (k == 1) {
            return p;
        }
        Point r0 = p;
        Point r1 = dbl(p);
        int top = 63 - __builtin_clzll(k);
        for (int i = top - 1; i >= 0; --i) {
            if (k >> i & 1) {
                r0 = add(r1, r0, p);
                r1 = dbl(r1);
            } else {
                r1 = add(r1, r0, p);
                r0 = dbl(r0);
            }
        }
        return r0;
    }

    BigInt stage2(const Point& q, uint64_t b1, uint64_t b2)
    {
        constexpr uint64_t D = 210;
        std::vector<Point> baby(D / 2 + 1);
        baby[1] = q;
        baby[2] = dbl(q);
        for (uint64_t j = 3; j <= D / 2; ++j) {
            baby[j] = add(baby[j - 1], q, baby[j - 2]);
        }
        Point step = ladder(q, D);
        // giant steps [cD]Q; b1 >= D keeps c >= 1 so every difference is finite
        uint64_t c = std::max<uint64_t>(b1 / D, 1);
        Point prev = ladder(q, (c - 1) * D == 0 ? D : (c - 1) * D);
        Point cur = ladder(q, c * D);
        if (c == 1) {
            prev = Point{1, 0};
        }
        BigInt acc = 1;
        BigInt g;
        for (; c * D <= b2 + D; ++c) {
            uint64_t base = c * D;
            for (uint64_t j = 1; j <= D / 2; ++j) {
                if (std::gcd(j, D) != 1) {
                    continue;
                }
                bool hit = false;
                for (uint64_t t : {base + j, base - j}) {
                    if (t > b1 && t <= b2 && !composite_[t]) {
                        hit = true;
                    }
                }
                if (hit) {
                    acc = mod(acc * (cur.x * baby[j].z - baby[j].x * cur.z));
                }
            }
            Point next = c == 1 ? dbl(cur) : add(cur, step, prev);
            prev = cur;
            cur = next;
        }
        mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n_.get_mpz_t());
        return (g == 1 || g == n_) ? BigInt(0) : g;
    }

    BigInt n_;
    BigInt a24_;
    const std::vector<char>& composite_;
};

struct EcmLevel
{
    uint64_t b1;
    uint64_t b2;
    uint64_t curves;
};

constexpr EcmLevel kEcmLevels[] = {
    {2'000, 150'000, 25}, {11'000, 1'100'000, 90}, {50'000, 5'000'000, 300}};

const std::vector<char>& ecm_sieve()
{
    static const std::vector<char> composite = [] {
        uint64_t top = kEcmLevels[2].b2;
        std::vector<char> c(top + 1, 0);
        c[0] = c[1] = 1;
        for (uint64_t i = 2; i * i <= top; ++i) {
            if (!c[i]) {
                for (uint64_t j = i * i; j <= top; j += i) {
                    c[j] = 1;
                }
            }
        }
        return c;
    }();
    return composite;
}

BigInt ecm_factor(const BigInt& n, uint64_t max_curves, bool unlimited)
{
    Ecm ecm(n, ecm_sieve());
    uint64_t used = 0;
    uint64_t sigma = 6;
    for (size_t level = 0;; level = std::min<size_t>(level + 1, 2)) {
        for (uint64_t c = 0; c < kEcmLevels[level].curves; ++c) {
            if (!unlimited && used >= max_curves) {
                return 0;
            }
            ++used;
            BigInt d = ecm.curve(sigma++, kEcmLevels[level].b1, kEcmLevels[level].b2);
            if (d != 0) {
                return d;
            }
        }
    }
}

/// Nontrivial divisor of composite n, or 0 when the budget runs out.
BigInt find_divisor(const BigInt& n, const FactorBudget& budget)
{
    // perfect powers defeat rho
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
        BigInt root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
            return root;
        }
        if (root < 2) {
            break;
        }
    }
    if (fits_u64(n)) {
        // Rho on a 64-bit composite finds a factor with overwhelming
        // probability long before this loop matters.
        uint64_t m = to_u64(n);
        for (uint64_t c = 1;; ++c) {
            uint64_t d = rho_u64(m, c, 1'000'000);
            if (d != 0) {
                return from_u64(d);
            }
        }
    }
    if (budget.pm1_bound > 0) {
        BigInt d = pollard_pm1(n, budget.pm1_bound);
        if (d != 0) {
            return d;
        }
    }
    BigInt d = rho_big(n, 1, budget.rho_iterations);
    if (d != 0) {
        return d;
    }
    bool small = mpz_sizeinbase(n.get_mpz_t(), 2) <= 128;
    return ecm_factor(n, budget.ecm_curves, small);
}

} // namespace

PrimeFactorization factorize(const BigInt& n_in, const FactorBudget& budget)
{
    if (n_in == 0) {
        throw Error(ErrorCode::InvalidInput, "factorize(0)");
    }
    PrimeFactorization out;
    out.n = abs(n_in);
    BigInt n = out.n;
    std::map<BigInt, unsigned> found;
    for (uint32_t p : small_primes()) {
        if (n == 1) {
            break;
        }
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
            found[BigInt(p)] += e;
        }
        if (BigInt(p) * p > n) {
            break;
        }
    }
    std::vector<BigInt> stack;
    std::vector<BigInt> stuck;
    if (n != 1) {
        stack.push_back(n);
    }
    while (!stack.empty()) {
        BigInt m = stack.back();
        stack.pop_back();
        if (m == 1) {
            continue;
        }
        if (is_prime(m)) {
            found[m] += 1;
            continue;
        }
        BigInt d = find_divisor(m, budget);
        if (d == 0) {
            stuck.push_back(m);
            continue;
        }
        stack.push_back(d);
        stack.push_back(m / d);
    }
    // Composite leftovers may still share the primes found elsewhere.
    for (auto& m : stuck) {
        for (const auto& [p, e] : found) {
            while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
                mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
                found[p] += 1;
            }
        }
    }
    for (const auto& [p, e] : found) {
        out.factors.emplace_back(p, e);
    }
    for (auto& m : stuck) {
        if (m == 1) {
            continue;
        }
        if (is_prime(m)) {
            // cannot happen after the loop above, kept for robustness of the
            // recomposition invariant
            out.factors.emplace_back(m, 1);
            continue;
        }
        out.unfactored.push_back(m);
    }
    std::sort(out.factors.begin(), out.factors.end());
    std::sort(out.unfactored.begin(), out.unfactored.end());
    return out;
}

int64_t squarefree_part(int64_t n)
{
    if (n == 0) {
        throw Error(ErrorCode::InvalidInput, "squarefree_part(0)");
    }
    int64_t sign = n < 0 ? -1 : 1;
    uint64_t m = n < 0 ? static_cast<uint64_t>(-n) : static_cast<uint64_t>(n);
    int64_t result = 1;
    auto fact = factorize(from_u64(m));
    for (const auto& [p, e] : fact.factors) {
        if (e % 2 == 1) {
            result *= static_cast<int64_t>(to_u64(p));
        }
    }
    return sign * result;
}

std::vector<uint64_t> prime_divisors(uint64_t n)
{
    std::vector<uint64_t> out;
    if (n == 0) {
        throw Error(ErrorCode::InvalidInput, "prime_divisors(0)");
    }
    auto fact = factorize(from_u64(n));
    for (const auto& [p, e] : fact.factors) {
        out.push_back(to_u64(p));
    }
    return out;
}

std::optional<uint64_t> sqrt_mod_prime(uint64_t a, uint64_t p)
{
    a %= p;
    if (p == 2 || a == 0) {
        return a;
    }
    if (powmod_u64(a, (p - 1) / 2, p) != 1) {
        return std::nullopt;
    }
    // Tonelli-Shanks
    uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) != p - 1) {
        ++z;
    }
    uint64_t m = s;
    uint64_t c = powmod_u64(z, q, p);
    uint64_t t = powmod_u64(a, q, p);
    uint64_t r = powmod_u64(a, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0;
        uint64_t tt = t;
        while (tt != 1) {
            tt = mulmod_u64(tt, tt, p);
            ++i;
        }
        uint64_t b = c;
        for (uint64_t j = 0; j + 1 < m - i; ++j) {
            b = mulmod_u64(b, b, p);
        }
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    return std::min(r, p - r);
}

BigInt eval_mod(const std::vector<BigInt>& poly, const BigInt& x, const BigInt& m)
{
    BigInt acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
        acc = acc * x + *it;
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
    }
    return acc;
}

BigInt hensel_lift(const std::vector<BigInt>& poly, const BigInt& r,
                   const BigInt& q, unsigned k)
{
    std::vector<BigInt> deriv;
    for (size_t i = 1; i < poly.size(); ++i) {
        deriv.push_back(poly[i] * static_cast<unsigned long>(i));
    }
    if (eval_mod(poly, r, q) != 0) {
        throw Error(ErrorCode::InvalidInput, "hensel_lift: not a root");
    }
    if (eval_mod(deriv, r, q) == 0) {
        throw Error(ErrorCode::InvalidInput, "hensel_lift: root is not simple");
    }
    BigInt root = r;
    mpz_fdiv_r(root.get_mpz_t(), root.get_mpz_t(), q.get_mpz_t());
    BigInt modulus = q;
    for (unsigned i = 1; i < k; ++i) {
        modulus *= q;
        BigInt fr = eval_mod(poly, root, modulus);
        BigInt dr = eval_mod(deriv, root, modulus);
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), modulus.get_mpz_t());
        root = root - fr * inv;
        mpz_fdiv_r(root.get_mpz_t(), root.get_mpz_t(), modulus.get_mpz_t());
    }
    return root;
}

int64_t gcd_i64(int64_t a, int64_t b)
{
    return static_cast<int64_t>(std::gcd(static_cast<uint64_t>(a < 0 ? -a : a),
                                         static_cast<uint64_t>(b < 0 ? -b : b)));
}

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& u, BigInt& v)
{
    BigInt g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
               b.get_mpz_t());
    return g;
}

uint64_t euler_phi(uint64_t n)
{
    if (n == 0) {
        return 0;
    }
    uint64_t result = n;
    for (uint64_t p : prime_divisors(n)) {
        result = result / p * (p - 1);
    }
    return result;
}

} // namespace shimura
