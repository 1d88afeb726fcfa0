#pragma once

// The genus-zero conics x^2 + y^2 + c = 0 modelling the Shimura curves of
// discriminant 6, 10 and 22: local solvability and bounded point search.

#include <cstdint>
#include <optional>
#include <string>

#include "shimura/abelian.hpp"
#include "shimura/arith.hpp"
#include "shimura/number_field.hpp"

namespace shimura {

struct ConicModel
{
    int64_t c = 0;
    std::optional<uint64_t> source_d;
};

/// d = 6, 10, 22 give c = 3, 2, 11; anything else throws NoKnownModel.
ConicModel conic_for(uint64_t d);

/// x^2 + y^2 + c = 0 has a real point iff c <= 0.
bool real_solvable(int64_t c);

/// Hilbert symbol (a, b)_p for nonzero integers a, b and p prime.
int hilbert_symbol(const BigInt& a, const BigInt& b, uint64_t p);

/// Q_p-point on x^2 + y^2 + c = 0, c != 0.
bool local_solvable_Qp(int64_t c, uint64_t p);

/// Point over the completion of k at a prime above ell. For a, b in Q_ell
/// and K/Q_ell of degree n, (a, b)_K = (a, b)_ell^n, ramified or not.
bool local_solvable_completion(int64_t c, const AbelianFieldSpec& k, uint64_t ell);

struct ConicResult
{
    enum class Kind { Point, LocalObstruction, Unknown };

    Kind kind = Kind::Unknown;
    // Point
    std::string x, y;
    std::vector<BigRational> x_coords, y_coords; // in the search basis
    // LocalObstruction: prime 0 means the real place
    uint64_t prime = 0;
    // Unknown: search height reached (0 if no search ran)
    unsigned bound = 0;

    std::string place() const { return prime == 0 ? "real" : std::to_string(prime); }
};

const char* to_string(ConicResult::Kind k);

/// Integer coordinates in k's search basis with max |coordinate| <= height,
/// scanned by increasing max |coordinate|. Requires degree(k) <= 4.
ConicResult search_point(int64_t c, const AbelianFieldSpec& k, unsigned height);

/// Places checked: the real place (if k has one), then primes dividing 2c
/// or ramified in k, increasing. Without an obstruction, searches for a
/// point when degree(k) <= 4.
ConicResult has_k_point(int64_t c, const AbelianFieldSpec& k, unsigned height = 10);

/// Exact check that x^2 + y^2 + c = 0 in k.
bool verify_point(int64_t c, const NumberField& k, const NumberField::Element& x, const NumberField::Element& y);

} // namespace shimura
