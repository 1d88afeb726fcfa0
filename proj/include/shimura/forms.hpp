#pragma once

// Primitive binary quadratic forms ax^2 + bxy + cy^2 of fundamental
// discriminant D and the (wide) ideal class group they represent.

#include <compare>
#include <cstdint>
#include <map>
#include <vector>

#include "shimura/arith.hpp"

namespace shimura {

struct BinaryForm
{
    int64_t a = 0;
    int64_t b = 0;
    int64_t c = 0;

    auto operator<=>(const BinaryForm&) const = default;
};

/// Reduced representative: for D < 0 the unique reduced form; for D > 0 some
/// reduced form in the same narrow class (cycle).
BinaryForm reduce_form(const BigInt& a, const BigInt& b, const BigInt& c);

bool is_reduced(const BinaryForm& f, int64_t disc);

/// Dirichlet composition followed by reduction.
BinaryForm compose(const BinaryForm& f, const BinaryForm& g, int64_t disc);

class ClassGroup
{
  public:
    int64_t discriminant() const { return disc_; }
    size_t order() const { return reps_.size(); }
    /// D < 0: the reduced forms. D > 0: one reduced form per wide class,
    /// taken as the least form of its cycles.
    const std::vector<BinaryForm>& representatives() const { return reps_; }
    /// Number of cycles of reduced forms (narrow class number), D > 0 only.
    size_t narrow_order() const { return narrow_; }

    /// Index of the class of any primitive form of discriminant D.
    size_t class_of(const BinaryForm& f) const;
    size_t class_of(const BigInt& a, const BigInt& b, const BigInt& c) const;
    size_t identity() const { return 0; }
    size_t multiply(size_t i, size_t j) const;
    size_t element_order(size_t i) const;
    /// Least common multiple of element orders.
    uint64_t exponent() const;
    /// Sorted class indices of the subgroup generated by `gens`.
    std::vector<size_t> generated_subgroup(const std::vector<size_t>& gens) const;

  private:
    friend ClassGroup quadratic_class_group(int64_t, uint64_t);

    int64_t disc_ = 0;
    std::vector<BinaryForm> reps_;
    size_t narrow_ = 0;
    // reduced form -> class index (every reduced form for D > 0)
    std::map<BinaryForm, size_t> index_;
};

/// Throws UnsupportedDiscriminant when |D| > bound, InvalidInput when D is not
/// a fundamental discriminant.
ClassGroup quadratic_class_group(int64_t disc, uint64_t bound = 100'000'000);

/// The principal form (1, D mod 2, (D mod 2 - D)/4).
BinaryForm principal_form(int64_t disc);

} // namespace shimura
