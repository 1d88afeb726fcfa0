#include "shimura/forms.hpp"

#include <deque>
#include <numeric>
#include <set>

#include "shimura/abelian.hpp"
#include "shimura/error.hpp"

namespace shimura {

namespace {

int64_t to_i64(const BigInt& v)
{
    if (!v.fits_slong_p()) {
        throw Error(ErrorCode::InvalidInput, "form coefficient out of range: " + to_string(v));
    }
    return v.get_si();
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

BinaryForm reduce_definite(BigInt a, BigInt b, BigInt c)
{
    if (a < 0) {
        throw Error(ErrorCode::InvalidInput, "negative definite form");
    }
    auto normalize = [&] {
        // b into (-a, a]
        BigInt r = floor_div(a - b, 2 * a);
        BigInt nb = b + 2 * r * a;
        c = a * r * r + b * r + c;
        b = nb;
    };
    normalize();
    while (a > c || (a == c && b < 0)) {
        if (a > c) {
            std::swap(a, c);
            b = -b;
            normalize();
        } else {
            b = -b;
        }
    }
    return {to_i64(a), to_i64(b), to_i64(c)};
}

struct Indefinite
{
    BigInt disc;
    BigInt s; // floor(sqrt(D))

    bool reduced(const BigInt& a, const BigInt& b) const
    {
        BigInt aa = abs(a);
        return b > 0 && b <= s && s < 2 * aa + b && 2 * aa - b <= s;
    }

    // One step of the reduction operator.
    void rho(BigInt& a, BigInt& b, BigInt& c) const
    {
        BigInt r = abs(c);
        BigInt two_r = 2 * r;
        BigInt lo = r > s ? BigInt(-r + 1) : BigInt(s - two_r + 1);
        // least b' >= lo with b' = -b mod 2r
        BigInt t = (-b - lo) % two_r;
        if (t < 0) {
            t += two_r;
        }
        BigInt nb = lo + t;
        BigInt nc = (nb * nb - disc) / (4 * c);
        a = c;
        b = nb;
        c = nc;
    }
};

BinaryForm reduce_indefinite(BigInt a, BigInt b, BigInt c)
{
    Indefinite ind{b * b - 4 * a * c, 0};
    ind.s = floor_sqrt(ind.disc);
    while (!ind.reduced(a, b)) {
        ind.rho(a, b, c);
    }
    return {to_i64(a), to_i64(b), to_i64(c)};
}

BinaryForm rho_step(const BinaryForm& f, int64_t disc)
{
    Indefinite ind{disc, floor_sqrt(BigInt(from_i64(disc)))};
    BigInt a = f.a, b = f.b, c = f.c;
    ind.rho(a, b, c);
    return {to_i64(a), to_i64(b), to_i64(c)};
}

} // namespace

BinaryForm principal_form(int64_t disc)
{
    int64_t r = ((disc % 2) + 2) % 2;
    BinaryForm f{1, r, (r - disc) / 4};
    if (disc < 0) {
        return f;
    }
    return reduce_form(f.a, f.b, f.c);
}

BinaryForm reduce_form(const BigInt& a, const BigInt& b, const BigInt& c)
{
    BigInt disc = b * b - 4 * a * c;
    if (disc < 0) {
        return reduce_definite(a, b, c);
    }
    if (disc == 0 || is_square(disc)) {
        throw Error(ErrorCode::InvalidInput, "square discriminant");
    }
    return reduce_indefinite(a, b, c);
}

bool is_reduced(const BinaryForm& f, int64_t disc)
{
    if (disc < 0) {
        if (!(std::llabs(f.b) <= f.a && f.a <= f.c)) {
            return false;
        }
        return !((std::llabs(f.b) == f.a || f.a == f.c) && f.b < 0);
    }
    Indefinite ind{from_i64(disc), floor_sqrt(from_i64(disc))};
    return ind.reduced(f.a, f.b);
}

BinaryForm compose(const BinaryForm& f, const BinaryForm& g, int64_t disc)
{
    BigInt a1 = f.a, b1 = f.b, a2 = g.a, b2 = g.b, c2 = g.c;
    BigInt s = (b1 + b2) / 2;
    BigInt u0, v0, x, w;
    BigInt d0 = ext_gcd(a1, a2, u0, v0);
    BigInt d = ext_gcd(d0, s, x, w);
    BigInt v = x * v0;
    BigInt a3 = a1 * a2 / (d * d);
    BigInt b3 = b2 + 2 * (a2 / d) * (v * (s - b2) - w * c2);
    BigInt m = 2 * abs(a3);
    b3 %= m;
    if (b3 < 0) {
        b3 += m;
    }
    BigInt num = b3 * b3 - disc;
    BigInt den = 4 * a3;
    if (num % den != 0) {
        throw Error(ErrorCode::InvalidInput, "composition produced a non-integral form");
    }
    return reduce_form(a3, b3, num / den);
}

size_t ClassGroup::class_of(const BigInt& a, const BigInt& b, const BigInt& c) const
{
    BinaryForm r = reduce_form(a, b, c);
    auto it = index_.find(r);
    if (it == index_.end()) {
        throw Error(ErrorCode::InvalidInput, "form is not primitive of discriminant " + std::to_string(disc_));
    }
    return it->second;
}

size_t ClassGroup::class_of(const BinaryForm& f) const
{
    return class_of(f.a, f.b, f.c);
}

size_t ClassGroup::multiply(size_t i, size_t j) const
{
    return class_of(compose(reps_.at(i), reps_.at(j), disc_));
}

size_t ClassGroup::element_order(size_t i) const
{
    size_t k = 1;
    size_t x = i;
    while (x != identity()) {
        x = multiply(x, i);
        ++k;
    }
    return k;
}

uint64_t ClassGroup::exponent() const
{
    uint64_t e = 1;
    for (size_t i = 0; i < order(); ++i) {
        e = std::lcm(e, static_cast<uint64_t>(element_order(i)));
    }
    return e;
}

std::vector<size_t> ClassGroup::generated_subgroup(const std::vector<size_t>& gens) const
{
    std::set<size_t> seen = {identity()};
    std::deque<size_t> queue = {identity()};
    while (!queue.empty()) {
        size_t x = queue.front();
        queue.pop_front();
        for (size_t g : gens) {
            size_t y = multiply(x, g);
            if (seen.insert(y).second) {
                queue.push_back(y);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

ClassGroup quadratic_class_group(int64_t disc, uint64_t bound)
{
    if (!is_fundamental_discriminant(disc)) {
        throw Error(ErrorCode::InvalidInput, "not a fundamental discriminant: " + std::to_string(disc));
    }
    if (static_cast<uint64_t>(std::llabs(disc)) > bound) {
        throw Error(ErrorCode::UnsupportedDiscriminant,
                    "discriminant " + std::to_string(disc) + " exceeds bound " + std::to_string(bound));
    }
    ClassGroup g;
    g.disc_ = disc;
    int64_t parity = disc & 1;
    if (disc < 0) {
        int64_t amax = static_cast<int64_t>(floor_sqrt_u64(static_cast<uint64_t>(-disc) / 3));
        for (int64_t a = 1; a <= amax; ++a) {
            for (int64_t b = -a + 1; b <= a; ++b) {
                if ((b & 1) != parity) {
                    continue;
                }
                int64_t num = b * b - disc;
                if (num % (4 * a) != 0) {
                    continue;
                }
                int64_t c = num / (4 * a);
                if (c < a || ((b < 0) && (a == c))) {
                    continue;
                }
                if (std::gcd(std::gcd(a, std::llabs(b)), c) != 1) {
                    continue;
                }
                g.reps_.push_back({a, b, c});
            }
        }
        // principal form first
        std::sort(g.reps_.begin(), g.reps_.end());
        for (size_t i = 0; i < g.reps_.size(); ++i) {
            g.index_[g.reps_[i]] = i;
        }
        g.narrow_ = g.reps_.size();
        return g;
    }

    int64_t s = static_cast<int64_t>(floor_sqrt_u64(static_cast<uint64_t>(disc)));
    std::vector<BinaryForm> reduced;
    for (int64_t b = 1; b <= s; ++b) {
        if ((b & 1) != parity) {
            continue;
        }
        int64_t n = (disc - b * b) / 4; // = -ac > 0
        for (int64_t a = 1; a * a <= n; ++a) {
            if (n % a != 0) {
                continue;
            }
            for (int64_t aa : {a, n / a}) {
                for (int64_t sa : {aa, -aa}) {
                    BinaryForm f{sa, b, -n / sa};
                    if (std::gcd(std::gcd(aa, b), std::llabs(f.c)) != 1) {
                        continue;
                    }
                    if (is_reduced(f, disc)) {
                        reduced.push_back(f);
                    }
                }
                if (a * a == n) {
                    break;
                }
            }
        }
    }
    std::sort(reduced.begin(), reduced.end());
    reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());

    // cycles under rho
    std::map<BinaryForm, size_t> cycle_of;
    std::vector<BinaryForm> cycle_min;
    for (const auto& f : reduced) {
        if (cycle_of.count(f)) {
            continue;
        }
        size_t id = cycle_min.size();
        BinaryForm least = f;
        BinaryForm x = f;
        do {
            cycle_of[x] = id;
            least = std::min(least, x);
            x = rho_step(x, disc);
        } while (x != f);
        cycle_min.push_back(least);
    }
    g.narrow_ = cycle_min.size();

    // wide classes: identify the cycle of (a,b,c) with that of (-a,b,-c)
    std::vector<size_t> wide(cycle_min.size(), SIZE_MAX);
    size_t principal_cycle = cycle_of.at(principal_form(disc));
    std::vector<size_t> order = {principal_cycle};
    for (size_t i = 0; i < cycle_min.size(); ++i) {
        if (i != principal_cycle) {
            order.push_back(i);
        }
    }
    for (size_t cyc : order) {
        if (wide[cyc] != SIZE_MAX) {
            continue;
        }
        const BinaryForm& f = cycle_min[cyc];
        size_t partner = cycle_of.at(BinaryForm{-f.a, f.b, -f.c});
        BinaryForm rep = std::min(f, cycle_min[partner]);
        if (cyc == principal_cycle) {
            rep = principal_form(disc);
        }
        wide[cyc] = wide[partner] = g.reps_.size();
        g.reps_.push_back(rep);
    }
    for (const auto& [f, cyc] : cycle_of) {
        g.index_[f] = wide[cyc];
    }
    return g;
}

} // namespace shimura
