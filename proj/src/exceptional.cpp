#include "shimura/exceptional.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "shimura/error.hpp"
#include "shimura/forms.hpp"
#include "shimura/quadratic.hpp"

namespace shimura {

const char* to_string(Variant v)
{
    return v == Variant::Unprimed ? "unprimed" : "primed";
}

const char* to_string(Provenance p)
{
    return p == Provenance::Computed ? "computed" : "supplied";
}

FrobeniusRootSet fr_set(uint64_t q)
{
    if (!is_prime_u64(q)) {
        throw Error(ErrorCode::InvalidInput, std::to_string(q) + " is not prime");
    }
    uint64_t b = floor_sqrt_u64(4 * q);
    if (b * b == 4 * q) {
        throw Error(ErrorCode::InvalidInput, "4q is a square");
    }
    FrobeniusRootSet out{q, {}};
    for (int64_t a = -static_cast<int64_t>(b); a <= static_cast<int64_t>(b); ++a) {
        out.traces.push_back(a);
    }
    return out;
}

std::vector<std::vector<unsigned>> epsilon_exponents(size_t n, Variant v)
{
    if (n < 1 || n > 4) {
        throw Error(ErrorCode::DegreeUnsupported, "exponent tuples need 1 <= n <= 4, got " + std::to_string(n));
    }
    const std::vector<unsigned> values =
        v == Variant::Unprimed ? std::vector<unsigned>{0, 8, 12, 16, 24} : std::vector<unsigned>{0, 4, 6, 8, 12};
    std::vector<std::vector<unsigned>> out;
    std::vector<size_t> idx(n, 0);
    for (;;) {
        std::vector<unsigned> t(n);
        for (size_t i = 0; i < n; ++i) {
            t[i] = values[idx[i]];
        }
        out.push_back(t);
        size_t i = n;
        while (i > 0 && ++idx[i - 1] == values.size()) {
            idx[--i] = 0;
        }
        if (i == 0) {
            return out;
        }
    }
}

unsigned beta_exponent(unsigned h, Variant v)
{
    return (v == Variant::Unprimed ? 24 : 12) * h;
}

BetaPower beta_power(int64_t a, uint64_t q, unsigned e)
{
    // beta^2 = -a beta - q; (s beta + t) beta = (t - a s) beta - q s
    BigInt s = 0, t = 1;
    BigInt bq = from_u64(q);
    for (unsigned i = 0; i < e; ++i) {
        BigInt ns = t - a * s;
        BigInt nt = -bq * s;
        s = ns;
        t = nt;
    }
    return {s, t};
}

namespace {

using Element = NumberField::Element;

// radicand m and t with a^2 - 4q = m t^2
std::pair<int64_t, int64_t> disc_split(int64_t a, uint64_t q)
{
    int64_t disc = a * a - 4 * static_cast<int64_t>(q);
    int64_t m = squarefree_part(disc);
    int64_t t = static_cast<int64_t>(floor_sqrt_u64(static_cast<uint64_t>(disc / m)));
    return {m, t};
}

std::optional<Element> root_in_field(const NumberField& k, int64_t a, uint64_t q, int root)
{
    auto [m, t] = disc_split(a, q);
    Element r;
    try {
        r = k.sqrt_of(m);
    } catch (const Error&) {
        return std::nullopt;
    }
    // (-a +- t sqrt m) / 2
    Element b = k.scale(r, make_rational(root == 0 ? t : -t, 2));
    return k.add(b, k.scale(k.one(), make_rational(-a, 2)));
}

// Elements u + v beta of k(beta), beta^2 = -a beta - q.
struct Ext
{
    Element u, v;
};

struct ExtRing
{
    const NumberField& k;
    BigRational a, q;

    Ext mul(const Ext& x, const Ext& y) const
    {
        Element vv = k.mul(x.v, y.v);
        Element u = k.sub(k.mul(x.u, y.u), k.scale(vv, q));
        Element v = k.sub(k.add(k.mul(x.u, y.v), k.mul(x.v, y.u)), k.scale(vv, a));
        return {u, v};
    }
    Ext add(const Ext& x, const Ext& y) const { return {k.add(x.u, y.u), k.add(x.v, y.v)}; }
    Ext scale(const Ext& x, const BigRational& c) const { return {k.scale(x.u, c), k.scale(x.v, c)}; }
    // N_{k(beta)/k}(u + v beta) = u^2 - a u v + q v^2
    Element relative_norm(const Ext& x) const
    {
        Element uu = k.mul(x.u, x.u);
        Element uv = k.mul(x.u, x.v);
        Element vv = k.mul(x.v, x.v);
        return k.add(k.sub(uu, k.scale(uv, a)), k.scale(vv, q));
    }
};

BigInt integral_norm(const NumberField& k, const Element& x)
{
    BigRational n = k.norm(x);
    if (n.get_den() != 1) {
        throw Error(ErrorCode::InvalidInput, "norm value is not an integer");
    }
    return n.get_num();
}

Element alpha_power(const NumberField& k, const NormInstance& inst, unsigned divisor)
{
    Element x = k.one();
    for (size_t s = 0; s < inst.exponents.size(); ++s) {
        unsigned ex = inst.exponents[s] / divisor;
        if (ex) {
            x = k.mul(x, k.pow(inst.alpha_conjugates.at(s), ex));
        }
    }
    return x;
}

void check_instance(const NumberField& k, const NormInstance& inst)
{
    if (inst.alpha_conjugates.size() != k.degree() || inst.exponents.size() != k.degree()) {
        throw Error(ErrorCode::InvalidInput, "norm instance does not match the field degree");
    }
    if (inst.e == 0) {
        throw Error(ErrorCode::InvalidInput, "beta exponent must be positive");
    }
}

} // namespace

bool roots_in_field(const NumberField& k, int64_t a, uint64_t q)
{
    return root_in_field(k, a, q, 0).has_value();
}

BigInt norm_value(const NumberField& k, const NormInstance& inst)
{
    check_instance(k, inst);
    Element x = alpha_power(k, inst, 1);
    if (auto beta = root_in_field(k, inst.a, inst.q, inst.root)) {
        return integral_norm(k, k.sub(x, k.pow(*beta, inst.e)));
    }
    BetaPower bp = beta_power(inst.a, inst.q, inst.e);
    ExtRing ring{k, inst.a, from_u64(inst.q)};
    Ext diff{k.sub(x, k.from_integer(bp.t)), k.from_integer(-bp.s)};
    return integral_norm(k, ring.relative_norm(diff));
}

std::vector<BigInt> norm_value_pieces(const NumberField& k, const NormInstance& inst)
{
    check_instance(k, inst);
    unsigned g = inst.e;
    for (unsigned ex : inst.exponents) {
        g = std::gcd(g, ex);
    }
    Element x = alpha_power(k, inst, g);
    auto beta = root_in_field(k, inst.a, inst.q, inst.root);
    ExtRing ring{k, inst.a, from_u64(inst.q)};
    Ext X{x, k.zero()};
    Ext Y;
    if (beta) {
        Y = {k.pow(*beta, inst.e / g), k.zero()};
    } else {
        BetaPower bp = beta_power(inst.a, inst.q, inst.e / g);
        Y = {k.from_integer(bp.t), k.from_integer(bp.s)};
    }
    std::vector<Ext> xp = {Ext{k.one(), k.zero()}}, yp = {Ext{k.one(), k.zero()}};
    std::vector<BigInt> out;
    for (unsigned d = 1; d <= g; ++d) {
        if (g % d != 0) {
            continue;
        }
        auto phi = cyclotomic_polynomial(d);
        size_t deg = phi.size() - 1;
        while (xp.size() <= deg) {
            xp.push_back(ring.mul(xp.back(), X));
            yp.push_back(ring.mul(yp.back(), Y));
        }
        // homogenized Phi_d(X, Y) = sum c_i X^i Y^(deg - i)
        Ext acc{k.zero(), k.zero()};
        for (size_t i = 0; i <= deg; ++i) {
            if (phi[i] != 0) {
                acc = ring.add(acc, ring.scale(ring.mul(xp[i], yp[deg - i]), BigRational(phi[i])));
            }
        }
        out.push_back(integral_norm(k, beta ? acc.u : ring.relative_norm(acc)));
    }
    return out;
}

SuppliedData SuppliedData::from_json(const std::string& text)
{
    using nlohmann::json;
    auto rational = [](const json& v) {
        std::string s = v.is_string() ? v.get<std::string>() : v.dump();
        BigRational r;
        if (r.set_str(s, 10) != 0) {
            throw Error(ErrorCode::MalformedInput, "bad rational: " + s);
        }
        r.canonicalize();
        return r;
    };
    auto coords = [&](const json& arr) {
        if (!arr.is_array()) {
            throw Error(ErrorCode::MalformedInput, "coordinates must be an array");
        }
        std::vector<BigRational> out;
        for (const auto& v : arr) {
            out.push_back(rational(v));
        }
        return out;
    };
    SuppliedData d;
    try {
        json j = json::parse(text);
        d.h = j.at("h").get<unsigned>();
        for (const auto& g : j.at("generators")) {
            SuppliedGenerator sg;
            sg.q = g.at("q").get<uint64_t>();
            sg.residue = g.at("residue").get<uint64_t>();
            sg.alpha = coords(g.at("alpha"));
            if (g.contains("conjugates")) {
                for (const auto& c : g.at("conjugates")) {
                    sg.conjugates.push_back(coords(c));
                }
            }
            d.generators.push_back(std::move(sg));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("supplied data: ") + e.what());
    }
    if (d.h == 0 || d.generators.empty()) {
        throw Error(ErrorCode::MalformedInput, "supplied data needs h >= 1 and at least one generator");
    }
    return d;
}

namespace {

// value of a at theta = r modulo q
std::optional<BigInt> residue_value(const Element& a, uint64_t r, uint64_t q)
{
    BigInt bq = from_u64(q);
    BigInt acc = 0, pw = 1;
    for (const auto& c : a) {
        BigInt den = c.get_den();
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), bq.get_mpz_t()) == 0) {
            return std::nullopt;
        }
        acc = (acc + c.get_num() * inv % bq * pw) % bq;
        pw = pw * from_u64(r) % bq;
    }
    if (acc < 0) {
        acc += bq;
    }
    return acc;
}

} // namespace

bool verify_supplied_generator(const NumberField& k, uint64_t q, uint64_t residue, unsigned h, const Element& alpha)
{
    if (alpha.size() != k.degree()) {
        throw Error(ErrorCode::MalformedInput, "alpha has the wrong number of coordinates");
    }
    if (!is_prime_u64(q) || residue >= q) {
        throw Error(ErrorCode::MalformedInput, "residue data needs a prime q and 0 <= residue < q");
    }
    const auto& f = k.polynomial();
    std::vector<uint64_t> roots;
    BigInt bq = from_u64(q);
    if (q > 10'000'000) {
        throw Error(ErrorCode::MalformedInput, "q too large to enumerate roots");
    }
    for (uint64_t x = 0; x < q; ++x) {
        if (eval_mod(f, from_u64(x), bq) == 0) {
            roots.push_back(x);
        }
    }
    if (std::find(roots.begin(), roots.end(), residue) == roots.end()) {
        throw Error(ErrorCode::MalformedInput, "residue is not a root of the minimal polynomial mod q");
    }
    if (roots.size() != k.degree()) {
        throw Error(ErrorCode::MalformedInput, "minimal polynomial does not split into distinct roots mod q");
    }
    if (!k.is_integral(alpha)) {
        return false;
    }
    BigInt target;
    mpz_pow_ui(target.get_mpz_t(), bq.get_mpz_t(), h);
    if (abs(k.norm(alpha)) != BigRational(target)) {
        return false;
    }
    for (uint64_t r : roots) {
        auto v = residue_value(alpha, r, q);
        if (!v) {
            throw Error(ErrorCode::MalformedInput, "alpha has a denominator divisible by q");
        }
        if ((*v == 0) != (r == residue)) {
            return false;
        }
    }
    return true;
}

std::vector<GeneratorDatum> choose_S(const AbelianFieldSpec& spec, const ExceptionalConfig& config, unsigned& h)
{
    auto k = NumberField::from_spec(spec);
    std::vector<GeneratorDatum> out;
    if (k.degree() == 1) {
        h = 1;
        GeneratorDatum g;
        g.q = 5;
        g.residue = 0;
        g.h = 1;
        g.alpha = k.from_integer(5);
        g.alpha_text = "5";
        return {g};
    }
    if (k.degree() == 2 && !config.supplied) {
        QuadraticField qf = quadratic_subfields(spec).at(0);
        Element root_m = k.sqrt_of(qf.radicand());
        auto cl = quadratic_class_group(qf.discriminant());
        h = static_cast<unsigned>(cl.order());
        std::vector<size_t> gens;
        size_t generated = 1;
        int64_t m = qf.radicand();
        for (uint64_t q : primes_in_range(3, static_cast<int64_t>(config.s_bound))) {
            if (kronecker(qf.discriminant(), static_cast<int64_t>(q)) != 1 || (6ULL * h) % q == 0) {
                continue;
            }
            int64_t mm = m % static_cast<int64_t>(q);
            if (mm < 0) {
                mm += static_cast<int64_t>(q);
            }
            uint64_t r = *sqrt_mod_prime(static_cast<uint64_t>(mm), q);
            auto ideal = make_split_prime_ideal(qf, q, r);
            size_t cls = cl.class_of(ideal_form(ideal));
            auto sub = cl.generated_subgroup(gens);
            bool fresh = std::find(sub.begin(), sub.end(), cls) == sub.end();
            if (!out.empty() && !fresh) {
                continue;
            }
            gens.push_back(cls);
            QuadElement a = principal_generator(ideal, h);
            GeneratorDatum g;
            g.q = q;
            g.residue = r;
            g.h = h;
            g.alpha = k.add(k.scale(k.one(), a.x()), k.scale(root_m, a.y()));
            g.alpha_text = k.to_string(g.alpha);
            out.push_back(g);
            generated = cl.generated_subgroup(gens).size();
            if (generated == cl.order()) {
                return out;
            }
        }
        throw Error(ErrorCode::ExhaustedSearch,
                    "no generating set of split primes below " + std::to_string(config.s_bound));
    }
    if (!config.supplied) {
        throw Error(ErrorCode::MissingSuppliedData,
                    "degree " + std::to_string(k.degree()) + " field needs supplied class number and generators");
    }
    const SuppliedData& sd = *config.supplied;
    h = sd.h;
    for (const auto& sg : sd.generators) {
        if (!splits_completely(spec, sg.q) || (6ULL * h) % sg.q == 0) {
            throw Error(ErrorCode::MalformedInput,
                        "supplied prime " + std::to_string(sg.q) + " must split completely and not divide 6h");
        }
        auto alpha = k.from_coordinates(sg.alpha);
        if (!verify_supplied_generator(k, sg.q, sg.residue, h, alpha)) {
            throw Error(ErrorCode::MalformedInput,
                        "supplied generator for q=" + std::to_string(sg.q) + " fails norm/membership verification");
        }
        if (!sg.conjugates.empty()) {
            if (sg.conjugates.size() != k.galois_size()) {
                throw Error(ErrorCode::MalformedInput, "conjugate list has the wrong length");
            }
            for (size_t s = 0; s < k.galois_size(); ++s) {
                if (k.from_coordinates(sg.conjugates[s]) != k.apply(s, alpha)) {
                    throw Error(ErrorCode::MalformedInput,
                                "supplied conjugate " + std::to_string(s) + " does not match the Galois action");
                }
            }
        }
        GeneratorDatum g;
        g.q = sg.q;
        g.residue = sg.residue;
        g.h = h;
        g.alpha = alpha;
        g.alpha_text = k.to_string(alpha);
        g.provenance = Provenance::Supplied;
        out.push_back(g);
    }
    return out;
}

bool PrimeSet::may_contain(const BigInt& p) const
{
    if (primes.count(p)) {
        return true;
    }
    for (const auto& u : unfactored) {
        if (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) {
            return true;
        }
    }
    return false;
}

bool ExceptionalSetReport::in_L(const BigInt& p) const
{
    return L.count(p) || N0.may_contain(p) || N0p.may_contain(p);
}

bool ExceptionalSetReport::in_N1p(const BigInt& p) const
{
    return N1p.count(p) || N0p.may_contain(p);
}

namespace {

// Strip primes below 2^16, then split the rest over a coprime base and
// factor each base element within the budget.
PrimeSet extract_primes(std::vector<BigInt> pieces, const FactorBudget& budget)
{
    PrimeSet out;
    std::vector<BigInt> rest;
    for (auto& x : pieces) {
        x = abs(x);
        for (uint32_t p : small_primes()) {
            if (x == 1) {
                break;
            }
            if (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
                out.primes.insert(BigInt(p));
                do {
                    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
                } while (mpz_divisible_ui_p(x.get_mpz_t(), p));
            }
        }
        if (x > 1) {
            rest.push_back(x);
        }
    }
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());

    std::vector<BigInt> base;
    for (const auto& x : rest) {
        std::vector<BigInt> queue = {x};
        while (!queue.empty()) {
            BigInt y = queue.back();
            queue.pop_back();
            if (y == 1) {
                continue;
            }
            bool split = false;
            for (size_t i = 0; i < base.size(); ++i) {
                BigInt g = gcd(y, base[i]);
                if (g > 1) {
                    BigInt b = base[i];
                    base.erase(base.begin() + static_cast<long>(i));
                    queue.push_back(g);
                    queue.push_back(b / g);
                    queue.push_back(y / g);
                    split = true;
                    break;
                }
            }
            if (!split) {
                base.push_back(y);
            }
        }
    }
    std::sort(base.begin(), base.end());
    for (const auto& b : base) {
        auto fac = factorize(b, budget);
        for (const auto& [p, e] : fac.factors) {
            out.primes.insert(p);
        }
        for (const auto& u : fac.unfactored) {
            out.unfactored.insert(u);
        }
    }
    return out;
}

PrimeSet variant_primes(const NumberField& k, const std::vector<GeneratorDatum>& S, unsigned h, Variant v,
                        const FactorBudget& budget)
{
    std::vector<BigInt> pieces;
    size_t values = 0;
    auto tuples = epsilon_exponents(k.degree(), v);
    for (const auto& g : S) {
        NormInstance inst;
        for (size_t s = 0; s < k.galois_size(); ++s) {
            inst.alpha_conjugates.push_back(k.apply(s, g.alpha));
        }
        inst.q = g.q;
        inst.e = beta_exponent(h, v);
        for (const auto& t : tuples) {
            inst.exponents = t;
            for (int64_t a : fr_set(g.q).traces) {
                inst.a = a;
                int roots = roots_in_field(k, a, g.q) ? 2 : 1;
                for (int r = 0; r < roots; ++r) {
                    inst.root = r;
                    auto ps = norm_value_pieces(k, inst);
                    if (std::any_of(ps.begin(), ps.end(), [](const BigInt& x) { return x == 0; })) {
                        continue; // zero values are excluded
                    }
                    ++values;
                    for (auto& x : ps) {
                        if (abs(x) > 1) {
                            pieces.push_back(std::move(x));
                        }
                    }
                }
            }
        }
    }
    PrimeSet out = extract_primes(std::move(pieces), budget);
    out.values = values;
    return out;
}

} // namespace

ExceptionalSetReport exceptional_sets(const AbelianFieldSpec& spec, const ExceptionalConfig& config)
{
    if (spec.degree() > 4) {
        throw Error(ErrorCode::DegreeUnsupported,
                    "exceptional sets need degree <= 4; " + spec.label() + " has degree " + std::to_string(spec.degree()));
    }
    ExceptionalSetReport rep;
    rep.field = spec.label();
    rep.field_key = spec.canonical_key();
    rep.unprimed = config.unprimed;
    rep.primed = config.primed;
    auto k = NumberField::from_spec(spec);
    rep.S = choose_S(spec, config, rep.h);

    rep.T = {BigInt(2), BigInt(3)};
    for (const auto& g : rep.S) {
        rep.T.insert(from_u64(g.q));
    }
    for (uint64_t p : spec.ramified_primes()) {
        rep.Ram.insert(from_u64(p));
    }
    if (config.unprimed) {
        rep.N0 = variant_primes(k, rep.S, rep.h, Variant::Unprimed, config.budget);
    }
    if (config.primed) {
        rep.N0p = variant_primes(k, rep.S, rep.h, Variant::Primed, config.budget);
    }
    auto unite = [&](const PrimeSet& n0) {
        std::set<BigInt> s = n0.primes;
        s.insert(rep.T.begin(), rep.T.end());
        s.insert(rep.Ram.begin(), rep.Ram.end());
        return s;
    };
    if (config.unprimed) {
        rep.N1 = unite(rep.N0);
        rep.L.insert(rep.N1.begin(), rep.N1.end());
    }
    if (config.primed) {
        rep.N1p = unite(rep.N0p);
        rep.L.insert(rep.N1p.begin(), rep.N1p.end());
    }
    if (!config.unprimed || !config.primed) {
        rep.notes.push_back("VARIANT_SUBSET");
    }
    if (!rep.complete()) {
        rep.notes.push_back("UNFACTORED_COFACTORS");
    }
    if (rep.S.front().provenance == Provenance::Supplied) {
        rep.notes.push_back("CLASS_GROUP_SUPPLIED");
    }
    return rep;
}

bool legendre_obstruction(uint64_t p, uint64_t q)
{
    if (p == 2 || !is_prime_u64(p) || !is_prime_u64(q) || p == q) {
        throw Error(ErrorCode::InvalidInput, "need distinct primes with p odd");
    }
    bool symbol = kronecker(static_cast<int64_t>(q % p), static_cast<int64_t>(p)) == -1;
    bool euler = powmod_u64(q % p, (p - 1) / 2, p) == p - 1;
    if (symbol != euler) {
        throw Error(ErrorCode::InvalidInput, "Legendre symbol disagrees with Euler's criterion");
    }
    return symbol;
}

std::vector<int64_t> trace_filter(uint64_t q, uint64_t p)
{
    if (p == 2 || !is_prime_u64(p)) {
        throw Error(ErrorCode::InvalidInput, "trace filter needs an odd prime p, got " + std::to_string(p));
    }
    auto fr = fr_set(q);
    std::vector<int64_t> out;
    auto pp = static_cast<int64_t>(p);
    int64_t three_q = static_cast<int64_t>((3 * q) % p);
    for (int64_t a : fr.traces) {
        int64_t sq = (a * a) % pp;
        if (sq == three_q || sq == 0) {
            out.push_back(a);
        }
    }
    return out;
}

} // namespace shimura
