#include "shimura/quadratic.hpp"

#include <cmath>

#include "shimura/error.hpp"

namespace shimura {

QuadElement::QuadElement(const QuadraticField& k, BigRational x, BigRational y)
    : k_(k)
    , x_(std::move(x))
    , y_(std::move(y))
{
    x_.canonicalize();
    y_.canonicalize();
}

QuadElement::QuadElement(const QuadraticField& k, long x, long y)
    : QuadElement(k, BigRational(x), BigRational(y))
{
}

BigRational QuadElement::norm() const
{
    return x_ * x_ - BigRational(k_.radicand()) * y_ * y_;
}

bool QuadElement::is_integral() const
{
    BigRational t = trace();
    BigRational n = norm();
    return t.get_den() == 1 && n.get_den() == 1;
}

QuadElement QuadElement::pow(unsigned e) const
{
    QuadElement result(k_, 1, 0);
    QuadElement base = *this;
    while (e) {
        if (e & 1) {
            result = result * base;
        }
        base = base * base;
        e >>= 1;
    }
    return result;
}

QuadElement QuadElement::operator+(const QuadElement& o) const
{
    return {k_, x_ + o.x_, y_ + o.y_};
}

QuadElement QuadElement::operator-(const QuadElement& o) const
{
    return {k_, x_ - o.x_, y_ - o.y_};
}

QuadElement QuadElement::operator*(const QuadElement& o) const
{
    BigRational m = k_.radicand();
    return {k_, x_ * o.x_ + m * y_ * o.y_, x_ * o.y_ + y_ * o.x_};
}

bool QuadElement::operator==(const QuadElement& o) const
{
    return k_ == o.k_ && x_ == o.x_ && y_ == o.y_;
}

std::string to_string(const QuadElement& a)
{
    auto rat = [](const BigRational& v) { return v.get_str(); };
    std::string root = "sqrt(" + std::to_string(a.field().radicand()) + ")";
    if (a.y() == 0) {
        return rat(a.x());
    }
    std::string out;
    BigRational y = a.y();
    if (a.x() != 0) {
        out = rat(a.x()) + (y < 0 ? " - " : " + ");
        y = abs(y);
    } else if (y < 0) {
        out = "-";
        y = -y;
    }
    if (y != 1) {
        out += rat(y) + "*";
    }
    return out + root;
}

SplitPrimeIdeal make_split_prime_ideal(const QuadraticField& k, uint64_t q, uint64_t r)
{
    if (q == 2 || !is_prime_u64(q)) {
        throw Error(ErrorCode::InvalidInput, "split prime ideal needs an odd prime, got " + std::to_string(q));
    }
    if (kronecker(k.discriminant(), static_cast<int64_t>(q)) != 1) {
        throw Error(ErrorCode::InvalidInput, std::to_string(q) + " does not split in " + to_string(k));
    }
    if (r >= q) {
        throw Error(ErrorCode::InvalidInput, "residue must be reduced modulo q");
    }
    int64_t m = k.radicand() % static_cast<int64_t>(q);
    if (m < 0) {
        m += static_cast<int64_t>(q);
    }
    if (mulmod_u64(r, r, q) != static_cast<uint64_t>(m)) {
        throw Error(ErrorCode::InvalidInput, "residue is not a square root of m modulo q");
    }
    return {k, q, r};
}

BigInt residue_lift(const SplitPrimeIdeal& p, unsigned h)
{
    std::vector<BigInt> poly = {-from_i64(p.field.radicand()), 0, 1};
    return hensel_lift(poly, from_u64(p.r), from_u64(p.q), h);
}

namespace {

// Form of discriminant D attached to an ideal N Z + (sqrt m - root) Z with
// root^2 = m mod N.
BinaryForm ideal_form_big(const QuadraticField& k, const BigInt& n, const BigInt& root, BigInt& b_out, BigInt& c_out)
{
    int64_t disc = k.discriminant();
    BigInt rho = disc % 4 == 0 ? BigInt(2 * root) : root;
    BigInt b = rho % n;
    if (b < 0) {
        b += n;
    }
    if ((b % 2 != 0) != (disc % 2 != 0)) {
        b += n;
    }
    BigInt c = (b * b - disc) / (4 * n);
    b_out = b;
    c_out = c;
    if (!n.fits_slong_p() || !b.fits_slong_p() || !c.fits_slong_p()) {
        return {};
    }
    return {n.get_si(), b.get_si(), c.get_si()};
}

// A form together with the unimodular matrix M taking the original form to it
// (g(x) = f(Mx)).
struct TrackedForm
{
    BigInt a, b, c;
    BigInt m00 = 1, m01 = 0, m10 = 0, m11 = 1;

    void apply(const BigInt& t00, const BigInt& t01, const BigInt& t10, const BigInt& t11)
    {
        BigInt n00 = m00 * t00 + m01 * t10;
        BigInt n01 = m00 * t01 + m01 * t11;
        BigInt n10 = m10 * t00 + m11 * t10;
        BigInt n11 = m10 * t01 + m11 * t11;
        m00 = n00;
        m01 = n01;
        m10 = n10;
        m11 = n11;
    }

    void translate(const BigInt& r) // (x, y) -> (x + r y, y)
    {
        BigInt nc = a * r * r + b * r + c;
        b += 2 * a * r;
        c = nc;
        apply(1, r, 0, 1);
    }

    void swap() // (x, y) -> (-y, x)
    {
        std::swap(a, c);
        b = -b;
        apply(0, -1, 1, 0);
    }

    void rho(const BigInt& s_floor, const BigInt& disc)
    {
        BigInt r = abs(c);
        BigInt two_r = 2 * r;
        BigInt lo = r > s_floor ? BigInt(-r + 1) : BigInt(s_floor - two_r + 1);
        BigInt t0 = (-b - lo) % two_r;
        if (t0 < 0) {
            t0 += two_r;
        }
        BigInt nb = lo + t0;
        BigInt t = (nb + b) / (2 * c);
        BigInt nc = (nb * nb - disc) / (4 * c);
        a = c;
        b = nb;
        c = nc;
        apply(0, -1, 1, t);
    }
};

void reduce_definite_tracked(TrackedForm& f)
{
    auto normalize = [&] {
        BigInt r;
        BigInt num = f.a - f.b;
        BigInt den = 2 * f.a;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        f.translate(r);
    };
    normalize();
    while (f.a > f.c || (f.a == f.c && f.b < 0)) {
        f.swap();
        normalize();
    }
}

bool indefinite_reduced(const TrackedForm& f, const BigInt& s)
{
    BigInt aa = abs(f.a);
    return f.b > 0 && f.b <= s && s < 2 * aa + f.b && 2 * aa - f.b <= s;
}

// Element u*N + v*(-b + sqrt D)/2 as x + y sqrt m.
QuadElement lattice_element(const QuadraticField& k, const BigInt& n, const BigInt& b, const BigInt& u,
                            const BigInt& v)
{
    bool four_m = k.discriminant() % 4 == 0;
    BigRational x = BigRational(u * n) - make_rational(v * b, 2);
    BigRational y = four_m ? BigRational(v) : make_rational(v, 2);
    return QuadElement(k, x, y);
}

double log_abs(const BigRational& v)
{
    long e1 = 0, e2 = 0;
    double n = mpz_get_d_2exp(&e1, v.get_num_mpz_t());
    double d = mpz_get_d_2exp(&e2, v.get_den_mpz_t());
    return std::log(std::fabs(n)) - std::log(d) + (e1 - e2) * std::log(2.0);
}

// log |x + y sqrt m| for the embedding with sqrt m > 0, m > 0.
double log_embedding(const QuadElement& a, bool plus)
{
    BigRational y = plus ? a.y() : BigRational(-a.y());
    if (a.x() == 0) {
        return log_abs(y) + 0.5 * std::log(static_cast<double>(a.field().radicand()));
    }
    if (y == 0) {
        return log_abs(a.x());
    }
    double lx = log_abs(a.x());
    double ly = log_abs(y) + 0.5 * std::log(static_cast<double>(a.field().radicand()));
    bool same = (a.x() > 0) == (y > 0);
    if (same) {
        double hi = std::max(lx, ly);
        return hi + std::log1p(std::exp(-std::fabs(lx - ly)));
    }
    // cancellation: recover from the norm and the other embedding
    double other = log_embedding(a, !plus);
    return log_abs(a.norm()) - other;
}

} // namespace

BinaryForm ideal_form(const SplitPrimeIdeal& p)
{
    BigInt b, c;
    return ideal_form_big(p.field, from_u64(p.q), from_u64(p.r), b, c);
}

bool in_ideal_power(const QuadElement& a, const SplitPrimeIdeal& p, unsigned h)
{
    if (!a.is_integral()) {
        return false;
    }
    BigInt n;
    mpz_pow_ui(n.get_mpz_t(), from_u64(p.q).get_mpz_t(), h);
    BigInt rh = residue_lift(p, h);
    // x + y r_h modulo q^h; denominators are 1 or 2 and q is odd
    BigRational v = a.x() + a.y() * BigRational(rh);
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), v.get_den_mpz_t(), n.get_mpz_t()) == 0) {
        return false;
    }
    BigInt res = v.get_num() * inv;
    return mpz_divisible_p(res.get_mpz_t(), n.get_mpz_t()) != 0;
}

bool generator_key_less(const QuadElement& a, const QuadElement& b)
{
    BigRational ax = abs(a.x()), bx = abs(b.x());
    if (ax != bx) {
        return ax < bx;
    }
    BigRational ay = abs(a.y()), by = abs(b.y());
    if (ay != by) {
        return ay < by;
    }
    bool an = a.x() < 0, bn = b.x() < 0;
    if (an != bn) {
        return !an;
    }
    return (a.y() < 0) < (b.y() < 0);
}

QuadElement fundamental_unit(const QuadraticField& k)
{
    if (k.is_imaginary()) {
        throw Error(ErrorCode::InvalidInput, "fundamental_unit needs a real quadratic field");
    }
    int64_t disc = k.discriminant();
    BigInt bd = from_i64(disc);
    BigInt s = floor_sqrt(bd);
    BinaryForm p0 = principal_form(disc);
    TrackedForm f{p0.a, p0.b, p0.c};
    do {
        f.rho(s, bd);
    } while (abs(f.a) != 1);
    // f0(M e1) = +-1: the lattice element is a unit
    QuadElement e = lattice_element(k, 1, p0.b, f.m00, -f.m10);
    QuadElement u(k, abs(e.x()), abs(e.y()));
    BigRational n = u.norm();
    if (n != 1 && n != -1) {
        throw Error(ErrorCode::InvalidInput, "unit computation failed for " + to_string(k));
    }
    return u;
}

QuadElement principal_generator(const SplitPrimeIdeal& p, unsigned h)
{
    const QuadraticField& k = p.field;
    make_split_prime_ideal(k, p.q, p.r);
    if (h == 0) {
        throw Error(ErrorCode::InvalidInput, "exponent must be positive");
    }
    int64_t disc = k.discriminant();
    BigInt bd = from_i64(disc);
    BigInt n;
    mpz_pow_ui(n.get_mpz_t(), from_u64(p.q).get_mpz_t(), h);
    BigInt rh = residue_lift(p, h);
    BigInt b, c;
    ideal_form_big(k, n, rh, b, c);

    TrackedForm f{n, b, c};
    QuadElement alpha(k, 0, 0);
    if (disc < 0) {
        reduce_definite_tracked(f);
        if (f.a != 1) {
            throw Error(ErrorCode::NotPrincipal, "ideal power is not principal");
        }
        alpha = lattice_element(k, n, b, f.m00, -f.m10);
    } else {
        BigInt s = floor_sqrt(bd);
        while (!indefinite_reduced(f, s)) {
            f.rho(s, bd);
        }
        BigInt a0 = f.a, b0 = f.b;
        while (abs(f.a) != 1) {
            f.rho(s, bd);
            if (f.a == a0 && f.b == b0) {
                throw Error(ErrorCode::NotPrincipal, "ideal power is not principal");
            }
        }
        alpha = lattice_element(k, n, b, f.m00, -f.m10);
    }

    std::vector<QuadElement> candidates;
    if (disc < 0) {
        std::vector<QuadElement> units = {QuadElement(k, 1, 0), QuadElement(k, -1, 0)};
        if (k.radicand() == -1) {
            units.push_back(QuadElement(k, 0, 1));
            units.push_back(QuadElement(k, 0, -1));
        } else if (k.radicand() == -3) {
            for (int sx : {1, -1}) {
                for (int sy : {1, -1}) {
                    units.push_back(QuadElement(k, make_rational(sx, 2), make_rational(sy, 2)));
                }
            }
        }
        for (const auto& u : units) {
            candidates.push_back(alpha * u);
        }
    } else {
        QuadElement eps = fundamental_unit(k);
        QuadElement eps_inv = eps.conj() * QuadElement(k, BigRational(eps.norm()), 0);
        double le = log_embedding(eps, true);
        double shift = (log_embedding(alpha, false) - log_embedding(alpha, true)) / (2 * le);
        long center = std::lround(shift);
        QuadElement w = center >= 0 ? alpha * eps.pow(static_cast<unsigned>(center))
                                    : alpha * eps_inv.pow(static_cast<unsigned>(-center));
        w = w * eps_inv.pow(4);
        for (int j = -4; j <= 4; ++j) {
            candidates.push_back(w);
            candidates.push_back(-w);
            w = w * eps;
        }
    }
    QuadElement best = candidates.front();
    for (const auto& cand : candidates) {
        if (generator_key_less(cand, best)) {
            best = cand;
        }
    }
    BigRational nb = abs(best.norm());
    if (nb != BigRational(n) || !in_ideal_power(best, p, h)) {
        throw Error(ErrorCode::NotPrincipal, "generator failed verification");
    }
    return best;
}

} // namespace shimura
