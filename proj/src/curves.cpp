#include "shimura/curves.hpp"

#include <map>
#include <set>

#include "shimura/error.hpp"

namespace shimura {

ConicModel conic_for(uint64_t d)
{
    switch (d) {
    case 6:
        return {3, d};
    case 10:
        return {2, d};
    case 22:
        return {11, d};
    default:
        throw Error(ErrorCode::NoKnownModel, "no conic model for discriminant " + std::to_string(d));
    }
}

bool real_solvable(int64_t c)
{
    return c <= 0;
}

namespace {

// n = p^v * u with p not dividing u
unsigned split_valuation(BigInt& u, const BigInt& p)
{
    unsigned v = 0;
    while (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
        u /= p;
        ++v;
    }
    return v;
}

int mod8(const BigInt& u)
{
    BigInt r = u % 8;
    if (r < 0) {
        r += 8;
    }
    return static_cast<int>(r.get_si());
}

} // namespace

int hilbert_symbol(const BigInt& a, const BigInt& b, uint64_t p)
{
    if (a == 0 || b == 0) {
        throw Error(ErrorCode::InvalidInput, "Hilbert symbol of zero");
    }
    BigInt bp = from_u64(p);
    BigInt u = a, w = b;
    unsigned alpha = split_valuation(u, bp);
    unsigned beta = split_valuation(w, bp);
    if (p == 2) {
        int um = mod8(u), wm = mod8(w);
        int eps_u = ((um - 1) / 2) & 1, eps_w = ((wm - 1) / 2) & 1;
        int om_u = ((um * um - 1) / 8) & 1, om_w = ((wm * wm - 1) / 8) & 1;
        int e = (eps_u * eps_w + alpha * om_w + beta * om_u) & 1;
        return e ? -1 : 1;
    }
    // (-1)^{alpha beta eps(p)} (u|p)^beta (w|p)^alpha
    int sign = ((alpha * beta) & 1) && p % 4 == 3 ? -1 : 1;
    if (beta & 1) {
        sign *= kronecker(u, bp);
    }
    if (alpha & 1) {
        sign *= kronecker(w, bp);
    }
    return sign;
}

bool local_solvable_Qp(int64_t c, uint64_t p)
{
    if (c == 0) {
        throw Error(ErrorCode::InvalidInput, "c must be nonzero");
    }
    return hilbert_symbol(-1, from_i64(-c), p) == 1;
}

bool local_solvable_completion(int64_t c, const AbelianFieldSpec& k, uint64_t ell)
{
    if (local_solvable_Qp(c, ell)) {
        return true;
    }
    return local_degree(k, ell) % 2 == 0;
}

const char* to_string(ConicResult::Kind k)
{
    switch (k) {
    case ConicResult::Kind::Point:
        return "point";
    case ConicResult::Kind::LocalObstruction:
        return "local_obstruction";
    case ConicResult::Kind::Unknown:
        return "unknown";
    }
    return "?";
}

bool verify_point(int64_t c, const NumberField& k, const NumberField::Element& x, const NumberField::Element& y)
{
    auto s = k.add(k.add(k.mul(x, x), k.mul(y, y)), k.from_integer(from_i64(c)));
    return k.is_zero(s);
}

namespace {

using Coords = std::vector<int64_t>;

// Structure constants of the search basis: b_i b_j = sum_l mult[i][j][l] b_l.
struct IntegerAlgebra
{
    size_t n;
    std::vector<std::vector<std::vector<int64_t>>> mult;

    explicit IntegerAlgebra(const NumberField& k)
        : n(k.degree())
    {
        const auto& b = k.search_basis();
        mult.assign(n, std::vector<std::vector<int64_t>>(n, std::vector<int64_t>(n)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                auto c = k.search_coordinates(k.mul(b[i], b[j]));
                for (size_t l = 0; l < n; ++l) {
                    if (c[l].get_den() != 1 || !c[l].get_num().fits_slong_p()) {
                        throw Error(ErrorCode::DegreeUnsupported, "search basis is not an integral order");
                    }
                    mult[i][j][l] = c[l].get_num().get_si();
                }
            }
        }
    }

    Coords square(const Coords& x) const
    {
        std::vector<__int128> acc(n, 0);
        for (size_t i = 0; i < n; ++i) {
            if (x[i] == 0) {
                continue;
            }
            for (size_t j = 0; j < n; ++j) {
                if (x[j] == 0) {
                    continue;
                }
                __int128 xy = static_cast<__int128>(x[i]) * x[j];
                for (size_t l = 0; l < n; ++l) {
                    acc[l] += xy * mult[i][j][l];
                }
            }
        }
        Coords out(n);
        for (size_t l = 0; l < n; ++l) {
            if (acc[l] > INT64_MAX || acc[l] < INT64_MIN) {
                throw Error(ErrorCode::BudgetExceeded, "point search coordinates overflow");
            }
            out[l] = static_cast<int64_t>(acc[l]);
        }
        return out;
    }
};

int64_t max_abs(const Coords& x)
{
    int64_t m = 0;
    for (auto v : x) {
        m = std::max(m, v < 0 ? -v : v);
    }
    return m;
}

// All vectors with max |x_i| == h, lexicographic with 0 < 1 < -1 < 2 < -2 ...
std::vector<Coords> shell(size_t n, int64_t h)
{
    std::vector<int64_t> order = {0};
    for (int64_t v = 1; v <= h; ++v) {
        order.push_back(v);
        order.push_back(-v);
    }
    std::vector<Coords> out;
    Coords cur(n);
    std::vector<size_t> idx(n, 0);
    for (;;) {
        for (size_t i = 0; i < n; ++i) {
            cur[i] = order[idx[i]];
        }
        if (max_abs(cur) == h) {
            out.push_back(cur);
        }
        size_t i = n;
        while (i > 0) {
            --i;
            if (++idx[i] < order.size()) {
                break;
            }
            idx[i] = 0;
            if (i == 0) {
                return out;
            }
        }
        if (n == 0) {
            return out;
        }
    }
}

std::vector<BigRational> to_rationals(const Coords& x)
{
    std::vector<BigRational> out;
    for (auto v : x) {
        out.emplace_back(v);
    }
    return out;
}

NumberField::Element from_search(const NumberField& k, const Coords& x)
{
    auto e = k.zero();
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0) {
            e = k.add(e, k.scale(k.search_basis()[i], BigRational(x[i])));
        }
    }
    return e;
}

} // namespace

ConicResult search_point(int64_t c, const AbelianFieldSpec& spec, unsigned height)
{
    auto k = NumberField::from_spec(spec);
    IntegerAlgebra alg(k);
    size_t n = k.degree();
    ConicResult res;
    res.kind = ConicResult::Kind::Unknown;
    res.bound = height;

    // squares of every y seen so far; first y in scan order wins
    std::map<Coords, Coords> squares;
    std::vector<Coords> seen;
    for (unsigned h = 0; h <= height; ++h) {
        auto fresh = shell(n, h);
        for (const auto& y : fresh) {
            squares.emplace(alg.square(y), y);
        }
        seen.insert(seen.end(), fresh.begin(), fresh.end());
        // pairs with max height exactly h: x from any earlier shell with y new,
        // or x new; scanning all x up to h and accepting any hit is equivalent
        for (const auto& x : seen) {
            Coords target = alg.square(x);
            for (auto& v : target) {
                v = -v;
            }
            target[0] -= c; // basis element 0 is 1
            auto it = squares.find(target);
            if (it == squares.end()) {
                continue;
            }
            const Coords& y = it->second;
            if (static_cast<unsigned>(std::max(max_abs(x), max_abs(y))) != h) {
                continue;
            }
            auto ex = from_search(k, x);
            auto ey = from_search(k, y);
            if (!verify_point(c, k, ex, ey)) {
                throw Error(ErrorCode::InvalidInput, "point search produced an invalid point");
            }
            res.kind = ConicResult::Kind::Point;
            res.x = k.to_string(ex);
            res.y = k.to_string(ey);
            res.x_coords = to_rationals(x);
            res.y_coords = to_rationals(y);
            res.bound = 0;
            return res;
        }
    }
    return res;
}

ConicResult has_k_point(int64_t c, const AbelianFieldSpec& k, unsigned height)
{
    if (c == 0) {
        throw Error(ErrorCode::InvalidInput, "c must be nonzero");
    }
    ConicResult res;
    if (k.has_real_embedding() && !real_solvable(c)) {
        res.kind = ConicResult::Kind::LocalObstruction;
        res.prime = 0;
        return res;
    }
    std::set<uint64_t> places;
    for (uint64_t p : prime_divisors(2 * static_cast<uint64_t>(c < 0 ? -c : c))) {
        places.insert(p);
    }
    for (uint64_t p : k.ramified_primes()) {
        places.insert(p);
    }
    for (uint64_t p : places) {
        if (!local_solvable_completion(c, k, p)) {
            res.kind = ConicResult::Kind::LocalObstruction;
            res.prime = p;
            return res;
        }
    }
    if (k.degree() > 4) {
        res.kind = ConicResult::Kind::Unknown;
        res.bound = 0;
        return res;
    }
    return search_point(c, k, height);
}

} // namespace shimura
