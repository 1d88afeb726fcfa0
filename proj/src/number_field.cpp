#include "shimura/number_field.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "shimura/error.hpp"

namespace shimura {

namespace {

constexpr uint64_t kMaxRingConductor = 4000;

using Poly = std::vector<BigRational>;

// Q(zeta_N), elements kept as polynomials in zeta of degree < phi(N).
class CyclotomicRing
{
  public:
    explicit CyclotomicRing(uint64_t n)
        : n_(n)
    {
        for (const auto& c : cyclotomic_polynomial(n)) {
            phi_.emplace_back(c);
        }
        deg_ = phi_.size() - 1;
    }

    uint64_t modulus() const { return n_; }
    size_t dimension() const { return deg_; }

    Poly zero() const { return Poly(deg_); }

    Poly zeta_power(uint64_t j) const
    {
        Poly v(n_);
        v[j % n_] = 1;
        return reduce(std::move(v));
    }

    Poly reduce(Poly v) const
    {
        for (size_t i = v.size(); i-- > deg_;) {
            if (v[i] == 0) {
                continue;
            }
            BigRational c = v[i];
            for (size_t j = 0; j <= deg_; ++j) {
                v[i - deg_ + j] -= c * phi_[j];
            }
        }
        v.resize(deg_);
        return v;
    }

    Poly mul(const Poly& a, const Poly& b) const
    {
        Poly r(n_);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) {
                continue;
            }
            for (size_t j = 0; j < b.size(); ++j) {
                if (b[j] != 0) {
                    r[(i + j) % n_] += a[i] * b[j];
                }
            }
        }
        return reduce(std::move(r));
    }

    Poly add(const Poly& a, const Poly& b) const
    {
        Poly r = a;
        for (size_t i = 0; i < b.size(); ++i) {
            r[i] += b[i];
        }
        return r;
    }

    Poly scale(const Poly& a, const BigRational& s) const
    {
        Poly r = a;
        for (auto& c : r) {
            c *= s;
        }
        return r;
    }

    Poly galois(const Poly& a, uint64_t c) const
    {
        Poly r(n_);
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] != 0) {
                r[(i * c) % n_] += a[i];
            }
        }
        return reduce(std::move(r));
    }

    std::complex<double> value(const Poly& a) const
    {
        std::complex<double> s = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i] != 0) {
                double ang = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_);
                s += a[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
            }
        }
        return s;
    }

    // Gauss sum of the Kronecker character of the fundamental discriminant d,
    // equal to sqrt(d) (i sqrt|d| for d < 0).
    Poly gauss_sum(int64_t d) const
    {
        uint64_t ad = static_cast<uint64_t>(std::llabs(d));
        Poly v(n_);
        for (uint64_t j = 1; j < ad; ++j) {
            int chi = kronecker(d, static_cast<int64_t>(j));
            if (chi != 0) {
                v[(j * (n_ / ad)) % n_] += chi;
            }
        }
        return reduce(std::move(v));
    }

  private:
    uint64_t n_;
    size_t deg_;
    Poly phi_;
};

std::string rational_text(const BigRational& v)
{
    return v.get_str();
}

} // namespace

std::vector<BigInt> cyclotomic_polynomial(uint64_t n)
{
    // x^n - 1 divided by Phi_d for the proper divisors d
    std::vector<BigInt> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (uint64_t d = 1; d < n; ++d) {
        if (n % d != 0) {
            continue;
        }
        std::vector<BigInt> den = cyclotomic_polynomial(d);
        size_t dd = den.size() - 1;
        std::vector<BigInt> quo(num.size() - dd, 0);
        for (size_t i = num.size(); i-- > dd;) {
            BigInt c = num[i];
            quo[i - dd] = c;
            for (size_t j = 0; j <= dd; ++j) {
                num[i - dd + j] -= c * den[j];
            }
        }
        num = quo;
    }
    return num;
}

std::vector<BigRational> solve_rational(std::vector<std::vector<BigRational>> rows, std::vector<BigRational> rhs)
{
    size_t m = rows.size();
    size_t n = m ? rows[0].size() : 0;
    size_t r = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < n && r < m; ++col) {
        size_t piv = r;
        while (piv < m && rows[piv][col] == 0) {
            ++piv;
        }
        if (piv == m) {
            continue;
        }
        std::swap(rows[piv], rows[r]);
        std::swap(rhs[piv], rhs[r]);
        for (size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][col] == 0) {
                continue;
            }
            BigRational f = rows[i][col] / rows[r][col];
            for (size_t j = col; j < n; ++j) {
                rows[i][j] -= f * rows[r][j];
            }
            rhs[i] -= f * rhs[r];
        }
        pivots.push_back(col);
        ++r;
    }
    if (r < n) {
        throw Error(ErrorCode::InvalidInput, "singular linear system");
    }
    for (size_t i = r; i < m; ++i) {
        if (rhs[i] != 0) {
            throw Error(ErrorCode::InvalidInput, "inconsistent linear system");
        }
    }
    std::vector<BigRational> x(n);
    for (size_t i = 0; i < r; ++i) {
        x[pivots[i]] = rhs[i] / rows[i][pivots[i]];
    }
    return x;
}

BigRational determinant(std::vector<std::vector<BigRational>> a)
{
    size_t n = a.size();
    BigRational det = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col] == 0) {
            ++piv;
        }
        if (piv == n) {
            return 0;
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (a[i][col] == 0) {
                continue;
            }
            BigRational f = a[i][col] / a[col][col];
            for (size_t j = col; j < n; ++j) {
                a[i][j] -= f * a[col][j];
            }
        }
    }
    return det;
}

NumberField NumberField::from_spec(const AbelianFieldSpec& k)
{
    if (k.degree() > 4) {
        throw Error(ErrorCode::DegreeUnsupported,
                    "field " + k.label() + " has degree " + std::to_string(k.degree()) + " > 4");
    }
    NumberField nf;
    nf.spec_ = k;
    nf.n_ = k.degree();
    nf.residues_ = k.coset_representatives();
    size_t n = nf.n_;
    std::vector<Element> sigma_theta; // sigma_s(theta) in the power basis

    auto unit_vec = [n](size_t i, BigRational v) {
        Element e(n);
        e[i] = v;
        return e;
    };

    if (n == 1) {
        nf.poly_ = {0, 1};
        nf.theta_name_ = "0";
        sigma_theta = {Element{0}};
        nf.theta_values_ = {0.0};
        nf.basis_ = {Element{1}};
        nf.basis_names_ = {"1"};
    } else if (n == 2) {
        int64_t m = k.kind() == FieldKind::Quadratic ? k.parameters().at(0) : quadratic_subfields(k).at(0).radicand();
        int64_t d = quadratic_discriminant(m);
        nf.poly_ = {from_i64(-m), 0, 1};
        std::string root = "sqrt(" + std::to_string(m) + ")";
        nf.theta_name_ = root;
        std::complex<double> tau = m > 0 ? std::complex<double>(std::sqrt(double(m)), 0)
                                         : std::complex<double>(0, std::sqrt(double(-m)));
        for (uint64_t c : nf.residues_) {
            int chi = kronecker(d, static_cast<int64_t>(c));
            sigma_theta.push_back(unit_vec(1, chi));
            nf.theta_values_.push_back(double(chi) * tau);
        }
        nf.roots_.emplace_back(m, unit_vec(1, 1));
        nf.basis_ = {unit_vec(0, 1), unit_vec(1, 1)};
        nf.basis_names_ = {"1", root};
    } else if (k.kind() == FieldKind::Biquadratic) {
        int64_t m1 = k.parameters().at(0);
        int64_t m2 = k.parameters().at(1);
        int64_t d1 = quadratic_discriminant(m1);
        int64_t d2 = quadratic_discriminant(m2);
        BigInt s = from_i64(m1 + m2);
        BigInt t = from_i64(m1 - m2);
        nf.poly_ = {t * t, 0, -2 * s, 0, 1};
        std::string r1 = "sqrt(" + std::to_string(m1) + ")";
        std::string r2 = "sqrt(" + std::to_string(m2) + ")";
        nf.theta_name_ = r1 + "+" + r2;
        // sqrt(m1) = (theta^3 - (3 m1 + m2) theta) / (2 (m2 - m1))
        BigRational inv = make_rational(1, 2 * (m2 - m1));
        Element sq1{0, BigRational(-(3 * m1 + m2)) * inv, 0, inv};
        Element sq2{0, 1 - sq1[1], 0, -sq1[3]};
        auto tau = [](int64_t m) {
            return m > 0 ? std::complex<double>(std::sqrt(double(m)), 0)
                         : std::complex<double>(0, std::sqrt(double(-m)));
        };
        for (uint64_t c : nf.residues_) {
            int e1 = kronecker(d1, static_cast<int64_t>(c));
            int e2 = kronecker(d2, static_cast<int64_t>(c));
            Element v(4);
            for (size_t i = 0; i < 4; ++i) {
                v[i] = e1 * sq1[i] + e2 * sq2[i];
            }
            sigma_theta.push_back(v);
            nf.theta_values_.push_back(double(e1) * tau(m1) + double(e2) * tau(m2));
        }
        // sqrt(m1 m2) = (theta^2 - m1 - m2) / 2
        Element sq12{make_rational(-(m1 + m2), 2), 0, make_rational(1, 2), 0};
        nf.roots_.emplace_back(m1, sq1);
        nf.roots_.emplace_back(m2, sq2);
        int64_t m3 = squarefree_part(m1 * m2);
        BigInt g2 = from_i64(m1 * m2 / m3);
        BigInt g = floor_sqrt(g2);
        Element sq3 = sq12;
        for (auto& c : sq3) {
            c /= BigRational(g);
        }
        nf.roots_.emplace_back(m3, sq3);
        nf.basis_ = {unit_vec(0, 1), sq1, sq2, sq12};
        nf.basis_names_ = {"1", r1, r2, r1 + "*" + r2};
    } else {
        uint64_t f = k.conductor();
        if (f > kMaxRingConductor) {
            throw Error(ErrorCode::DegreeUnsupported, "conductor " + std::to_string(f) + " too large for exact arithmetic");
        }
        CyclotomicRing ring(f);
        std::vector<uint64_t> h;
        for (uint64_t u = 1; u < f; ++u) {
            if (std::gcd(u, f) == 1 && k.in_subgroup(u)) {
                h.push_back(u);
            }
        }
        auto period = [&](uint64_t j) {
            Poly v(f);
            for (uint64_t x : h) {
                v[(x * j) % f] += 1;
            }
            return ring.reduce(std::move(v));
        };
        auto conjugates_distinct = [&](const Poly& th) {
            std::vector<Poly> cs;
            for (uint64_t c : nf.residues_) {
                Poly g = ring.galois(th, c);
                for (const auto& o : cs) {
                    if (o == g) {
                        return false;
                    }
                }
                cs.push_back(g);
            }
            return true;
        };
        Poly th;
        bool found = false;
        if (k.kind() == FieldKind::Cyclotomic) {
            th = ring.zeta_power(1);
            nf.theta_name_ = "zeta_" + std::to_string(f);
            found = true;
        } else {
            nf.theta_name_ = "t";
            std::vector<Poly> tries;
            for (uint64_t j = 1; j < f && tries.size() < 16; ++j) {
                if (std::gcd(j, f) == 1) {
                    tries.push_back(period(j));
                }
            }
            size_t base_count = tries.size();
            for (size_t j = 1; j < base_count; ++j) {
                tries.push_back(ring.add(tries[0], ring.scale(tries[j], 2)));
            }
            for (const auto& cand : tries) {
                if (conjugates_distinct(cand)) {
                    th = cand;
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            throw Error(ErrorCode::DegreeUnsupported, "no primitive Gaussian period for " + k.label());
        }
        // powers of theta and the linear map to Q(zeta_f) coordinates
        std::vector<Poly> powers = {ring.zeta_power(0)};
        for (size_t i = 1; i < n; ++i) {
            powers.push_back(ring.mul(powers.back(), th));
        }
        size_t dim = ring.dimension();
        std::vector<std::vector<BigRational>> a(dim, std::vector<BigRational>(n));
        for (size_t i = 0; i < dim; ++i) {
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = powers[j][i];
            }
        }
        auto express = [&](const Poly& v) { return solve_rational(a, v); };

        // minimal polynomial: prod over conjugates of (X - sigma theta)
        std::vector<Poly> mp = {ring.zeta_power(0)};
        for (uint64_t c : nf.residues_) {
            Poly g = ring.galois(th, c);
            std::vector<Poly> next(mp.size() + 1, ring.zero());
            for (size_t i = 0; i < mp.size(); ++i) {
                next[i + 1] = ring.add(next[i + 1], mp[i]);
                next[i] = ring.add(next[i], ring.scale(ring.mul(mp[i], g), -1));
            }
            mp = next;
            sigma_theta.push_back(express(g));
            nf.theta_values_.push_back(ring.value(g));
        }
        for (const auto& coef : mp) {
            for (size_t i = 1; i < coef.size(); ++i) {
                if (coef[i] != 0) {
                    throw Error(ErrorCode::InvalidInput, "minimal polynomial not rational");
                }
            }
            if (coef[0].get_den() != 1) {
                throw Error(ErrorCode::InvalidInput, "theta is not integral");
            }
            nf.poly_.push_back(coef[0].get_num());
        }
        for (const auto& sub : quadratic_subfields(k)) {
            Poly g = ring.gauss_sum(sub.discriminant());
            if (sub.discriminant() % 4 == 0) {
                g = ring.scale(g, make_rational(1, 2));
            }
            nf.roots_.emplace_back(sub.radicand(), express(g));
        }
        for (size_t i = 0; i < n; ++i) {
            nf.basis_.push_back(unit_vec(i, 1));
            if (i == 0) {
                nf.basis_names_.push_back("1");
            } else {
                nf.basis_names_.push_back(nf.theta_name_ + (i > 1 ? "^" + std::to_string(i) : ""));
            }
        }
    }

    nf.conj_powers_.resize(n);
    for (size_t s = 0; s < n; ++s) {
        nf.conj_powers_[s].push_back(nf.one());
        for (size_t i = 1; i < n; ++i) {
            nf.conj_powers_[s].push_back(nf.mul(nf.conj_powers_[s].back(), sigma_theta[s]));
        }
    }
    return nf;
}

BigInt NumberField::polynomial_discriminant() const
{
    Element deriv(n_);
    for (size_t i = 1; i <= n_; ++i) {
        if (i - 1 < n_) {
            deriv[i - 1] = BigRational(poly_[i] * static_cast<unsigned long>(i));
        }
    }
    BigRational nrm = norm(deriv);
    size_t sgn = (n_ * (n_ - 1) / 2) % 2;
    return sgn ? BigInt(-nrm.get_num()) : nrm.get_num();
}

NumberField::Element NumberField::zero() const
{
    return Element(n_);
}

NumberField::Element NumberField::one() const
{
    Element e(n_);
    e[0] = 1;
    return e;
}

NumberField::Element NumberField::theta() const
{
    Element e(n_);
    if (n_ > 1) {
        e[1] = 1;
    }
    return e;
}

NumberField::Element NumberField::from_integer(const BigInt& v) const
{
    Element e(n_);
    e[0] = BigRational(v);
    return e;
}

NumberField::Element NumberField::from_coordinates(const std::vector<BigRational>& c) const
{
    if (c.size() != n_) {
        throw Error(ErrorCode::MalformedInput,
                    "expected " + std::to_string(n_) + " coordinates, got " + std::to_string(c.size()));
    }
    return c;
}

NumberField::Element NumberField::add(const Element& a, const Element& b) const
{
    Element r(n_);
    for (size_t i = 0; i < n_; ++i) {
        r[i] = a[i] + b[i];
    }
    return r;
}

NumberField::Element NumberField::sub(const Element& a, const Element& b) const
{
    Element r(n_);
    for (size_t i = 0; i < n_; ++i) {
        r[i] = a[i] - b[i];
    }
    return r;
}

NumberField::Element NumberField::neg(const Element& a) const
{
    Element r(n_);
    for (size_t i = 0; i < n_; ++i) {
        r[i] = -a[i];
    }
    return r;
}

NumberField::Element NumberField::scale(const Element& a, const BigRational& s) const
{
    Element r(n_);
    for (size_t i = 0; i < n_; ++i) {
        r[i] = a[i] * s;
    }
    return r;
}

NumberField::Element NumberField::mul(const Element& a, const Element& b) const
{
    std::vector<BigRational> prod(2 * n_ - 1);
    for (size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < n_; ++j) {
            if (b[j] != 0) {
                prod[i + j] += a[i] * b[j];
            }
        }
    }
    for (size_t i = prod.size(); i-- > n_;) {
        if (prod[i] == 0) {
            continue;
        }
        BigRational c = prod[i];
        for (size_t j = 0; j < n_; ++j) {
            prod[i - n_ + j] -= c * BigRational(poly_[j]);
        }
    }
    prod.resize(n_);
    return prod;
}

NumberField::Element NumberField::pow(const Element& a, unsigned e) const
{
    Element r = one();
    Element b = a;
    while (e) {
        if (e & 1) {
            r = mul(r, b);
        }
        e >>= 1;
        if (e) {
            b = mul(b, b);
        }
    }
    return r;
}

bool NumberField::is_zero(const Element& a) const
{
    for (const auto& c : a) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

namespace {

std::vector<std::vector<BigRational>> multiplication_matrix(const NumberField& k, const NumberField::Element& a)
{
    size_t n = k.degree();
    std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n));
    NumberField::Element col = a;
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) {
            m[i][j] = col[i];
        }
        col = k.mul(col, k.theta());
    }
    return m;
}

} // namespace

BigRational NumberField::norm(const Element& a) const
{
    if (n_ == 1) {
        return a[0];
    }
    return determinant(multiplication_matrix(*this, a));
}

BigRational NumberField::trace(const Element& a) const
{
    if (n_ == 1) {
        return a[0];
    }
    auto m = multiplication_matrix(*this, a);
    BigRational t = 0;
    for (size_t i = 0; i < n_; ++i) {
        t += m[i][i];
    }
    return t;
}

std::vector<BigRational> NumberField::char_poly(const Element& a) const
{
    // Faddeev-LeVerrier
    auto A = n_ == 1 ? std::vector<std::vector<BigRational>>{{a[0]}} : multiplication_matrix(*this, a);
    size_t n = n_;
    std::vector<BigRational> c(n + 1);
    c[n] = 1;
    std::vector<std::vector<BigRational>> M(n, std::vector<BigRational>(n));
    for (size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<BigRational>> AM(n, std::vector<BigRational>(n));
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) {
                BigRational s = 0;
                for (size_t l = 0; l < n; ++l) {
                    s += A[i][l] * M[l][j];
                }
                AM[i][j] = s;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            AM[i][i] += c[n - k + 1];
        }
        M = AM;
        BigRational tr = 0;
        for (size_t i = 0; i < n; ++i) {
            for (size_t l = 0; l < n; ++l) {
                tr += A[i][l] * M[l][i];
            }
        }
        c[n - k] = -tr / BigRational(static_cast<long>(k));
    }
    return c;
}

bool NumberField::is_integral(const Element& a) const
{
    for (const auto& c : char_poly(a)) {
        if (c.get_den() != 1) {
            return false;
        }
    }
    return true;
}

NumberField::Element NumberField::apply(size_t sigma, const Element& a) const
{
    Element r(n_);
    const auto& pw = conj_powers_.at(sigma);
    for (size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < n_; ++j) {
            r[j] += a[i] * pw[i][j];
        }
    }
    return r;
}

NumberField::Element NumberField::sqrt_of(int64_t m) const
{
    for (const auto& [rm, e] : roots_) {
        if (rm == m) {
            return e;
        }
    }
    throw Error(ErrorCode::InvalidInput, "Q(sqrt(" + std::to_string(m) + ")) is not a subfield of " + spec_.label());
}

std::vector<std::complex<double>> NumberField::embeddings(const Element& a) const
{
    std::vector<std::complex<double>> out;
    for (size_t s = 0; s < n_; ++s) {
        std::complex<double> v = 0;
        std::complex<double> p = 1;
        for (size_t i = 0; i < n_; ++i) {
            v += a[i].get_d() * p;
            p *= theta_values_[s];
        }
        out.push_back(v);
    }
    return out;
}

std::vector<BigRational> NumberField::search_coordinates(const Element& a) const
{
    std::vector<std::vector<BigRational>> rows(n_, std::vector<BigRational>(n_));
    for (size_t i = 0; i < n_; ++i) {
        for (size_t j = 0; j < n_; ++j) {
            rows[i][j] = basis_[j][i];
        }
    }
    return solve_rational(rows, a);
}

std::string NumberField::to_string(const Element& a) const
{
    auto c = search_coordinates(a);
    std::string out;
    for (size_t i = 0; i < n_; ++i) {
        if (c[i] == 0) {
            continue;
        }
        BigRational v = c[i];
        bool negative = v < 0;
        if (out.empty()) {
            out = negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        v = abs(v);
        if (i == 0) {
            out += rational_text(v);
        } else if (v == 1) {
            out += basis_names_[i];
        } else {
            out += rational_text(v) + "*" + basis_names_[i];
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace shimura
