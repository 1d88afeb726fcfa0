#pragma once

// Exact arithmetic in an abelian field of degree <= 4, in the power basis of
// a fixed primitive element theta. Conjugates, square roots of quadratic
// subfields and complex embeddings come from an embedding into Q(zeta_N).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "shimura/abelian.hpp"
#include "shimura/arith.hpp"

namespace shimura {

class NumberField
{
  public:
    using Element = std::vector<BigRational>;

    /// theta is sqrt(m) (quadratic), sqrt(m1)+sqrt(m2) (biquadratic),
    /// zeta_n (cyclotomic) or a Gaussian period. Degree > 4 throws
    /// DegreeUnsupported.
    static NumberField from_spec(const AbelianFieldSpec& k);

    const AbelianFieldSpec& spec() const { return spec_; }
    size_t degree() const { return n_; }
    /// Monic minimal polynomial of theta, increasing degree.
    const std::vector<BigInt>& polynomial() const { return poly_; }
    const std::string& theta_name() const { return theta_name_; }
    BigInt polynomial_discriminant() const;

    Element zero() const;
    Element one() const;
    Element theta() const;
    Element from_integer(const BigInt& v) const;
    /// Requires exactly degree() coordinates.
    Element from_coordinates(const std::vector<BigRational>& c) const;

    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;
    Element neg(const Element& a) const;
    Element scale(const Element& a, const BigRational& s) const;
    Element pow(const Element& a, unsigned e) const;
    bool is_zero(const Element& a) const;

    BigRational norm(const Element& a) const;
    BigRational trace(const Element& a) const;
    /// Characteristic polynomial of multiplication by a, monic, increasing.
    std::vector<BigRational> char_poly(const Element& a) const;
    bool is_integral(const Element& a) const;

    /// Galois group indexed like spec().coset_representatives(); index 0 is
    /// the identity and sigma_c acts on roots of unity by zeta -> zeta^c.
    size_t galois_size() const { return n_; }
    uint64_t galois_residue(size_t i) const { return residues_[i]; }
    Element apply(size_t sigma, const Element& a) const;

    /// A square root of m in k, for m the radicand of a quadratic subfield.
    Element sqrt_of(int64_t m) const;

    /// Values of a under the embeddings tau o sigma_i, with tau sending
    /// zeta_N to exp(2 pi i / N).
    std::vector<std::complex<double>> embeddings(const Element& a) const;

    /// Basis used for point search and display: {1, sqrt m},
    /// {1, sqrt m1, sqrt m2, sqrt m1 sqrt m2}, or powers of theta.
    const std::vector<Element>& search_basis() const { return basis_; }
    const std::vector<std::string>& search_basis_names() const { return basis_names_; }
    std::vector<BigRational> search_coordinates(const Element& a) const;
    /// Human-readable form in the search basis, e.g. "2 + sqrt(-5)".
    std::string to_string(const Element& a) const;

  private:
    NumberField() = default;

    AbelianFieldSpec spec_ = AbelianFieldSpec::rational();
    size_t n_ = 1;
    std::vector<BigInt> poly_;
    std::string theta_name_;
    std::vector<uint64_t> residues_;
    // conj_powers_[s][i] = sigma_s(theta)^i in the power basis
    std::vector<std::vector<Element>> conj_powers_;
    std::vector<std::complex<double>> theta_values_;
    std::vector<std::pair<int64_t, Element>> roots_;
    std::vector<Element> basis_;
    std::vector<std::string> basis_names_;
};

/// Solve A x = b exactly (A given by rows, possibly overdetermined but
/// consistent). Throws InvalidInput if inconsistent or singular.
std::vector<BigRational> solve_rational(std::vector<std::vector<BigRational>> rows, std::vector<BigRational> rhs);

BigRational determinant(std::vector<std::vector<BigRational>> m);

/// Cyclotomic polynomial Phi_n, increasing degree.
std::vector<BigInt> cyclotomic_polynomial(uint64_t n);

} // namespace shimura
