#pragma once

// Does an abelian field contain the Hilbert class field of some imaginary
// quadratic field?

#include <optional>
#include <vector>

#include "shimura/abelian.hpp"

namespace shimura {

struct HilbertContainment
{
    bool contained = false;
    std::optional<QuadraticField> witness;
};

/// An abelian k can only contain H_L when Gal(H_L/Q) is abelian, which
/// happens exactly when Cl_L is 2-torsion; then H_L is the genus field of L.
HilbertContainment contains_hilbert_class_field(const AbelianFieldSpec& k);

/// Prime discriminants d_i* with D = prod d_i*, ordered by |d_i*|.
std::vector<int64_t> prime_discriminants(int64_t disc);

/// Cl_L has exponent <= 2, decided by comparing h with the genus count.
bool class_group_is_two_torsion(int64_t disc);

} // namespace shimura
