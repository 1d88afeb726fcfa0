#pragma once

// Independent reference computations shared by the tests.

#include <cstdint>
#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "shimura/arith.hpp"

namespace oracle {

// Fundamental unit (x + y sqrt D)/2 of discriminant D > 0 from one period of
// the continued fraction of (P0 + sqrt D)/Q0, with (P0, Q0) = (1, 2) for odd
// D and (0, 1) on D/4 otherwise. Returns (x, y) in terms of sqrt D.
inline std::pair<shimura::BigInt, shimura::BigInt> fundamental_unit_cf(int64_t disc)
{
    using shimura::BigInt;
    bool odd = disc % 2 != 0;
    BigInt d = odd ? BigInt(disc) : BigInt(disc / 4);
    BigInt p = odd ? 1 : 0, q = odd ? 2 : 1;
    BigInt q0 = q;
    BigInt s = shimura::floor_sqrt(d);
    BigInt g2 = -p, g1 = q0, b2 = 1, b1 = 0;
    for (;;) {
        BigInt a = (p + s) / q;
        BigInt g = a * g1 + g2, b = a * b1 + b2;
        g2 = g1;
        g1 = g;
        b2 = b1;
        b1 = b;
        p = a * q - p;
        q = (d - p * p) / q;
        if (q == q0) {
            break;
        }
    }
    // eps = (g1 + b1 sqrt d)/q0
    if (odd) {
        return {g1, b1};
    }
    return {2 * g1, b1};
}

// h(D) for D < 0 from the analytic class number formula
inline int64_t dirichlet_class_number(int64_t d)
{
    int64_t w = d == -3 ? 6 : d == -4 ? 4 : 2;
    int64_t s = 0;
    for (int64_t a = 1; a < -d; ++a) {
        s += shimura::kronecker(d, a) * a;
    }
    // h = -w/(2|D|) * sum
    return -w * s / (2 * -d);
}

// count of reduced forms by a loop over all (a, b) with |b| <= a <= sqrt(|D|/3)
inline int64_t count_reduced_forms(int64_t d)
{
    int64_t h = 0;
    for (int64_t a = 1; 3 * a * a <= -d; ++a) {
        for (int64_t b = -a; b <= a; ++b) {
            int64_t num = b * b - d;
            if (num % (4 * a) != 0) {
                continue;
            }
            int64_t c = num / (4 * a);
            if (c < a || std::gcd(std::gcd(a, std::llabs(b)), c) != 1) {
                continue;
            }
            if (b < 0 && (b == -a || a == c)) {
                continue;
            }
            ++h;
        }
    }
    return h;
}

inline int64_t vp(int64_t n, int64_t p, int cap)
{
    if (n == 0) {
        return cap;
    }
    int v = 0;
    while (n % p == 0 && v < cap) {
        n /= p;
        ++v;
    }
    return v;
}

inline int64_t md(int64_t a, int64_t m)
{
    a %= m;
    return a < 0 ? a + m : a;
}

// Q_p-point on x^2 + y^2 + c z^2 = 0 by lifting primitive solutions mod p^k
// in the charts z = 1, (y = 1, p | z), (x = 1, p | y, p | z). A node is
// certified once f = 0 mod p^(2t+1), t = least valuation of a free partial
// derivative. Returns nullopt if undecided at p^kmax.
inline std::optional<bool> oracle_solvable(int64_t c, int64_t p, int kmax = 6)
{
    struct Node
    {
        int64_t u, v; // the two free coordinates
    };
    bool undecided = false;
    for (int chart = 0; chart < 3; ++chart) {
        auto f = [&](int64_t u, int64_t v, int64_t m) -> int64_t {
            __int128 x, y, z;
            if (chart == 0) {
                x = u, y = v, z = 1;
            } else if (chart == 1) {
                x = u, y = 1, z = v;
            } else {
                x = 1, y = u, z = v;
            }
            __int128 r = (x * x + y * y + static_cast<__int128>(c) * z * z) % m;
            return static_cast<int64_t>(r < 0 ? r + m : r);
        };
        auto partials = [&](int64_t u, int64_t v) -> std::pair<int64_t, int64_t> {
            if (chart == 0) {
                return {2 * u, 2 * v};
            }
            if (chart == 1) {
                return {2 * u, 2 * c * v};
            }
            return {2 * u, 2 * c * v};
        };
        std::vector<Node> level;
        int64_t pk = p;
        for (int64_t u = 0; u < p; ++u) {
            for (int64_t v = 0; v < p; ++v) {
                if (chart == 1 && v % p != 0) {
                    continue;
                }
                if (chart == 2 && (u % p != 0 || v % p != 0)) {
                    continue;
                }
                if (f(u, v, p) == 0) {
                    level.push_back({u, v});
                }
            }
        }
        for (int k = 1; k <= kmax && !level.empty(); ++k) {
            for (const auto& nd : level) {
                auto [du, dv] = partials(nd.u, nd.v);
                int64_t t = std::min(vp(md(du, pk), p, k), vp(md(dv, pk), p, k));
                if (2 * t + 1 <= k) {
                    return true;
                }
            }
            if (k == kmax) {
                undecided = true;
                break;
            }
            std::vector<Node> next;
            int64_t pk1 = pk * p;
            for (const auto& nd : level) {
                for (int64_t i = 0; i < p; ++i) {
                    for (int64_t j = 0; j < p; ++j) {
                        int64_t u = nd.u + i * pk, v = nd.v + j * pk;
                        if (f(u, v, pk1) == 0) {
                            next.push_back({u, v});
                        }
                    }
                }
            }
            level = std::move(next);
            pk = pk1;
        }
    }
    if (undecided) {
        return std::nullopt;
    }
    return false;
}

} // namespace oracle
