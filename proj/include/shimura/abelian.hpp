#pragma once

// Abelian number fields k, encoded by a conductor f and a subgroup H of
// (Z/fZ)^x; k is the fixed field of H inside Q(zeta_f).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shimura {

/// Q(sqrt m), m squarefree, m != 0, 1.
class QuadraticField
{
  public:
    explicit QuadraticField(int64_t m);
    static QuadraticField from_discriminant(int64_t disc);

    int64_t radicand() const { return m_; }
    int64_t discriminant() const { return disc_; }
    bool is_imaginary() const { return m_ < 0; }

    bool operator==(const QuadraticField& o) const { return m_ == o.m_; }

  private:
    int64_t m_;
    int64_t disc_;
};

std::string to_string(const QuadraticField& k);

enum class SplittingType { Split, Inert, Ramified };

const char* to_string(SplittingType t);

/// Requires ell prime.
SplittingType splitting_type(const QuadraticField& k, uint64_t ell);

enum class FieldKind { Rational, Quadratic, Biquadratic, Cyclotomic, General };

class AbelianFieldSpec
{
  public:
    /// Grammar: quad:<m> | biquad:<m1>,<m2> | cyclo:<n> |
    /// abelian:f=<f>;H=<g1>,<g2>,...   Throws MalformedFieldSpec, or
    /// NonAbelianField for poly:/galois: descriptions.
    static AbelianFieldSpec parse(std::string_view spec);

    static AbelianFieldSpec rational();
    static AbelianFieldSpec quadratic(int64_t m);
    static AbelianFieldSpec biquadratic(int64_t m1, int64_t m2);
    static AbelianFieldSpec cyclotomic(uint64_t n);
    static AbelianFieldSpec from_subgroup(uint64_t f, const std::vector<uint64_t>& gens);

    /// Minimal conductor after normalization.
    uint64_t conductor() const { return f_; }
    uint64_t degree() const { return degree_; }
    FieldKind kind() const { return kind_; }
    /// m for quadratic, (m1, m2) for biquadratic, n for cyclotomic.
    const std::vector<int64_t>& parameters() const { return params_; }
    const std::string& label() const { return label_; }
    /// Stable text identifying (conductor, subgroup) exactly.
    std::string canonical_key() const;

    /// Canonical generators: greedy over residues in increasing order.
    const std::vector<uint64_t>& subgroup_generators() const { return gens_; }
    bool in_subgroup(uint64_t residue) const;
    uint64_t subgroup_order() const { return subgroup_order_; }
    /// One representative per coset of H in (Z/fZ)^x, starting with 1.
    std::vector<uint64_t> coset_representatives() const;

    std::vector<uint64_t> ramified_primes() const;
    bool has_real_embedding() const;

  private:
    AbelianFieldSpec() = default;
    void build(uint64_t f, const std::vector<uint64_t>& gens);
    void build_from_characters(uint64_t f, const std::vector<int64_t>& discs);
    void normalize_conductor();
    void finish();

    uint64_t f_ = 1;
    uint64_t degree_ = 1;
    uint64_t subgroup_order_ = 1;
    FieldKind kind_ = FieldKind::Rational;
    std::vector<int64_t> params_;
    std::string label_;
    std::vector<char> member_;
    std::vector<uint64_t> gens_;
};

/// q prime; false whenever q divides the conductor.
bool splits_completely(const AbelianFieldSpec& k, uint64_t q);

/// e*f of any prime of k above ell (order of the decomposition group).
uint64_t local_degree(const AbelianFieldSpec& k, uint64_t ell);

/// All quadratic subfields, ordered by |m| then sign (negative first).
std::vector<QuadraticField> quadratic_subfields(const AbelianFieldSpec& k);

/// Quadratic field discriminant of Q(sqrt m) for squarefree m.
int64_t quadratic_discriminant(int64_t m);
bool is_fundamental_discriminant(int64_t d);

} // namespace shimura
