#include "shimura/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "shimura/arith.hpp"
#include "shimura/error.hpp"

namespace shimura {

namespace {

constexpr uint64_t kMaxConductor = 10'000'000;

int64_t mod_pos(int64_t a, int64_t m)
{
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

bool is_squarefree_i64(int64_t m)
{
    if (m == 0) {
        return false;
    }
    return squarefree_part(m) == m;
}

// Closure of `gens` in (Z/fZ)^x, as a membership table of size f.
std::vector<char> closure(uint64_t f, const std::vector<uint64_t>& gens, std::vector<char> seed = {})
{
    std::vector<char> mem = seed.empty() ? std::vector<char>(f, 0) : std::move(seed);
    std::deque<uint64_t> queue;
    for (uint64_t x = 0; x < f; ++x) {
        if (mem[x]) {
            queue.push_back(x);
        }
    }
    if (queue.empty()) {
        mem[1 % f] = 1;
        queue.push_back(1 % f);
    }
    while (!queue.empty()) {
        uint64_t x = queue.front();
        queue.pop_front();
        for (uint64_t g : gens) {
            uint64_t y = mulmod_u64(x, g % f, f);
            if (!mem[y]) {
                mem[y] = 1;
                queue.push_back(y);
            }
        }
    }
    return mem;
}

uint64_t crt_pair(uint64_t r1, uint64_t m1, uint64_t r2, uint64_t m2)
{
    // m1, m2 coprime.
    BigInt u, v;
    ext_gcd(from_u64(m1), from_u64(m2), u, v);
    BigInt m = from_u64(m1) * from_u64(m2);
    BigInt x = from_u64(r1) * v * from_u64(m2) + from_u64(r2) * u * from_u64(m1);
    x %= m;
    if (x < 0) {
        x += m;
    }
    return to_u64(x);
}

std::vector<uint64_t> unit_group_generators(uint64_t n)
{
    std::vector<uint64_t> gens;
    if (n <= 2) {
        return gens;
    }
    std::vector<char> mem = closure(n, gens);
    for (uint64_t t = 2; t < n; ++t) {
        if (std::gcd(t, n) == 1 && !mem[t]) {
            gens.push_back(t);
            mem = closure(n, gens);
        }
    }
    return gens;
}

int64_t parse_int(std::string_view s, std::string_view whole)
{
    int64_t v = 0;
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw Error(ErrorCode::MalformedFieldSpec,
                    "bad integer '" + std::string(s) + "' in field spec '" + std::string(whole) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

int64_t quadratic_discriminant(int64_t m)
{
    return mod_pos(m, 4) == 1 ? m : 4 * m;
}

bool is_fundamental_discriminant(int64_t d)
{
    if (d == 0 || d == 1) {
        return false;
    }
    if (mod_pos(d, 4) == 1) {
        return is_squarefree_i64(d);
    }
    if (mod_pos(d, 4) != 0) {
        return false;
    }
    int64_t m = d / 4;
    int64_t r = mod_pos(m, 4);
    return (r == 2 || r == 3) && is_squarefree_i64(m);
}

QuadraticField::QuadraticField(int64_t m)
    : m_(m)
{
    if (m == 0 || m == 1 || !is_squarefree_i64(m)) {
        throw Error(ErrorCode::InvalidInput, "quadratic radicand must be squarefree and not 0 or 1, got " +
                                                 std::to_string(m));
    }
    disc_ = quadratic_discriminant(m);
}

QuadraticField QuadraticField::from_discriminant(int64_t disc)
{
    if (!is_fundamental_discriminant(disc)) {
        throw Error(ErrorCode::InvalidInput, "not a fundamental discriminant: " + std::to_string(disc));
    }
    return QuadraticField(mod_pos(disc, 4) == 1 ? disc : disc / 4);
}

std::string to_string(const QuadraticField& k)
{
    return "Q(sqrt(" + std::to_string(k.radicand()) + "))";
}

const char* to_string(SplittingType t)
{
    switch (t) {
    case SplittingType::Split:
        return "split";
    case SplittingType::Inert:
        return "inert";
    case SplittingType::Ramified:
        return "ramified";
    }
    return "?";
}

SplittingType splitting_type(const QuadraticField& k, uint64_t ell)
{
    int s = kronecker(k.discriminant(), static_cast<int64_t>(ell));
    if (s == 0) {
        return SplittingType::Ramified;
    }
    return s == 1 ? SplittingType::Split : SplittingType::Inert;
}

// ---------------------------------------------------------------------------

void AbelianFieldSpec::build(uint64_t f, const std::vector<uint64_t>& gens)
{
    if (f == 0 || f > kMaxConductor) {
        throw Error(ErrorCode::MalformedFieldSpec, "conductor out of range: " + std::to_string(f));
    }
    for (uint64_t g : gens) {
        if (std::gcd(g % f, f) != 1 && f > 1) {
            throw Error(ErrorCode::MalformedFieldSpec,
                        std::to_string(g) + " is not a unit modulo " + std::to_string(f));
        }
    }
    f_ = f;
    member_ = closure(f, gens);
    normalize_conductor();
    finish();
}

void AbelianFieldSpec::build_from_characters(uint64_t f, const std::vector<int64_t>& discs)
{
    if (f == 0 || f > kMaxConductor) {
        throw Error(ErrorCode::MalformedFieldSpec, "conductor out of range: " + std::to_string(f));
    }
    f_ = f;
    member_.assign(f, 0);
    for (uint64_t u = 0; u < f; ++u) {
        if (std::gcd(u, f) != 1 && f > 1) {
            continue;
        }
        bool in = true;
        for (int64_t d : discs) {
            if (kronecker(d, static_cast<int64_t>(u)) != 1) {
                in = false;
                break;
            }
        }
        member_[u] = in ? 1 : 0;
    }
    normalize_conductor();
    finish();
}

void AbelianFieldSpec::normalize_conductor()
{
    bool changed = true;
    while (changed && f_ > 1) {
        changed = false;
        for (uint64_t ell : prime_divisors(f_)) {
            uint64_t fp = f_ / ell;
            bool contained = true;
            for (uint64_t t = 0; t < ell && contained; ++t) {
                uint64_t u = (1 + fp * t) % f_;
                if (std::gcd(u, f_) == 1 && !member_[u]) {
                    contained = false;
                }
            }
            if (!contained) {
                continue;
            }
            std::vector<char> reduced(fp, 0);
            for (uint64_t x = 0; x < f_; ++x) {
                if (member_[x]) {
                    reduced[x % fp] = 1;
                }
            }
            member_ = std::move(reduced);
            f_ = fp;
            changed = true;
            break;
        }
    }
}

void AbelianFieldSpec::finish()
{
    subgroup_order_ = static_cast<uint64_t>(std::count(member_.begin(), member_.end(), 1));
    degree_ = euler_phi(f_) / subgroup_order_;
    gens_.clear();
    std::vector<char> cur = closure(f_, gens_);
    for (uint64_t u = 2; u < f_; ++u) {
        if (member_[u] && !cur[u]) {
            gens_.push_back(u);
            cur = closure(f_, gens_);
        }
    }
}

AbelianFieldSpec AbelianFieldSpec::rational()
{
    AbelianFieldSpec k;
    k.build(1, {});
    k.kind_ = FieldKind::Rational;
    k.label_ = "cyclo:1";
    return k;
}

AbelianFieldSpec AbelianFieldSpec::quadratic(int64_t m)
{
    QuadraticField q(m);
    AbelianFieldSpec k;
    k.build_from_characters(static_cast<uint64_t>(std::llabs(q.discriminant())), {q.discriminant()});
    k.kind_ = FieldKind::Quadratic;
    k.params_ = {m};
    k.label_ = "quad:" + std::to_string(m);
    return k;
}

AbelianFieldSpec AbelianFieldSpec::biquadratic(int64_t m1, int64_t m2)
{
    QuadraticField q1(m1);
    QuadraticField q2(m2);
    if (m1 == m2) {
        throw Error(ErrorCode::MalformedFieldSpec, "biquadratic radicands must differ");
    }
    uint64_t a = static_cast<uint64_t>(std::llabs(q1.discriminant()));
    uint64_t b = static_cast<uint64_t>(std::llabs(q2.discriminant()));
    uint64_t f = std::lcm(a, b);
    if (f > kMaxConductor) {
        throw Error(ErrorCode::MalformedFieldSpec, "conductor too large");
    }
    AbelianFieldSpec k;
    k.build_from_characters(f, {q1.discriminant(), q2.discriminant()});
    k.kind_ = FieldKind::Biquadratic;
    k.params_ = {m1, m2};
    k.label_ = "biquad:" + std::to_string(m1) + "," + std::to_string(m2);
    return k;
}

AbelianFieldSpec AbelianFieldSpec::cyclotomic(uint64_t n)
{
    if (n == 0 || n > kMaxConductor) {
        throw Error(ErrorCode::MalformedFieldSpec, "cyclotomic index out of range");
    }
    uint64_t f = (n % 4 == 2) ? n / 2 : n;
    AbelianFieldSpec k;
    k.build(f, {});
    k.label_ = "cyclo:" + std::to_string(n);
    if (k.degree_ == 1) {
        k.kind_ = FieldKind::Rational;
    } else if (k.degree_ == 2) {
        k.kind_ = FieldKind::Quadratic;
        k.params_ = {f == 3 ? -3 : -1};
    } else {
        k.kind_ = FieldKind::Cyclotomic;
        k.params_ = {static_cast<int64_t>(f)};
    }
    return k;
}

AbelianFieldSpec AbelianFieldSpec::from_subgroup(uint64_t f, const std::vector<uint64_t>& gens)
{
    AbelianFieldSpec k;
    k.build(f, gens);
    std::string label = "abelian:f=" + std::to_string(f) + ";H=";
    for (size_t i = 0; i < gens.size(); ++i) {
        label += (i ? "," : "") + std::to_string(gens[i]);
    }
    k.label_ = label;
    if (k.degree_ == 1) {
        k.kind_ = FieldKind::Rational;
    } else if (k.degree_ == 2) {
        k.kind_ = FieldKind::Quadratic;
        k.params_ = {quadratic_subfields(k).at(0).radicand()};
    } else if (k.subgroup_order_ == 1) {
        k.kind_ = FieldKind::Cyclotomic;
        k.params_ = {static_cast<int64_t>(k.f_)};
    } else {
        k.kind_ = FieldKind::General;
    }
    return k;
}

namespace {

AbelianFieldSpec parse_impl(std::string_view spec);

} // namespace

AbelianFieldSpec AbelianFieldSpec::parse(std::string_view spec)
{
    try {
        return parse_impl(spec);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidInput) {
            throw Error(ErrorCode::MalformedFieldSpec, e.what());
        }
        throw;
    }
}

namespace {

AbelianFieldSpec parse_impl(std::string_view spec)
{
    std::string_view s = trim(spec);
    size_t colon = s.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorCode::MalformedFieldSpec, "field spec needs a '<kind>:' prefix: '" + std::string(s) + "'");
    }
    std::string_view kind = s.substr(0, colon);
    std::string_view body = trim(s.substr(colon + 1));
    if (kind == "poly" || kind == "galois") {
        throw Error(ErrorCode::NonAbelianField, "only abelian fields given by conductor data are accepted: '" +
                                                    std::string(s) + "'");
    }
    if (kind == "quad") {
        return AbelianFieldSpec::quadratic(parse_int(trim(body), s));
    }
    if (kind == "biquad") {
        auto parts = split(body, ',');
        if (parts.size() != 2) {
            throw Error(ErrorCode::MalformedFieldSpec, "biquad needs two radicands");
        }
        return AbelianFieldSpec::biquadratic(parse_int(trim(parts[0]), s), parse_int(trim(parts[1]), s));
    }
    if (kind == "cyclo") {
        int64_t n = parse_int(trim(body), s);
        if (n <= 0) {
            throw Error(ErrorCode::MalformedFieldSpec, "cyclotomic index must be positive");
        }
        return AbelianFieldSpec::cyclotomic(static_cast<uint64_t>(n));
    }
    if (kind == "abelian") {
        auto parts = split(body, ';');
        if (parts.size() != 2) {
            throw Error(ErrorCode::MalformedFieldSpec, "abelian spec is f=<f>;H=<gens>");
        }
        auto fpart = trim(parts[0]);
        auto hpart = trim(parts[1]);
        if (fpart.substr(0, 2) != "f=" || hpart.substr(0, 2) != "H=") {
            throw Error(ErrorCode::MalformedFieldSpec, "abelian spec is f=<f>;H=<gens>");
        }
        int64_t f = parse_int(trim(fpart.substr(2)), s);
        if (f <= 0) {
            throw Error(ErrorCode::MalformedFieldSpec, "conductor must be positive");
        }
        std::vector<uint64_t> gens;
        auto hbody = trim(hpart.substr(2));
        if (!hbody.empty()) {
            for (auto g : split(hbody, ',')) {
                int64_t v = parse_int(trim(g), s);
                gens.push_back(static_cast<uint64_t>(mod_pos(v, f)));
            }
        }
        return AbelianFieldSpec::from_subgroup(static_cast<uint64_t>(f), gens);
    }
    throw Error(ErrorCode::MalformedFieldSpec, "unknown field kind '" + std::string(kind) + "'");
}

} // namespace

std::string AbelianFieldSpec::canonical_key() const
{
    std::string key = "f=" + std::to_string(f_) + ";H=";
    for (size_t i = 0; i < gens_.size(); ++i) {
        key += (i ? "," : "") + std::to_string(gens_[i]);
    }
    return key;
}

bool AbelianFieldSpec::in_subgroup(uint64_t residue) const
{
    return member_[residue % f_] != 0;
}

std::vector<uint64_t> AbelianFieldSpec::coset_representatives() const
{
    if (f_ == 1) {
        return {1};
    }
    std::vector<uint64_t> elems;
    for (uint64_t x = 0; x < f_; ++x) {
        if (member_[x]) {
            elems.push_back(x);
        }
    }
    std::vector<char> seen(f_, 0);
    std::vector<uint64_t> reps;
    for (uint64_t u = 1; u < f_; ++u) {
        if (seen[u] || std::gcd(u, f_) != 1) {
            continue;
        }
        reps.push_back(u);
        for (uint64_t h : elems) {
            seen[mulmod_u64(u, h, f_)] = 1;
        }
    }
    return reps;
}

std::vector<uint64_t> AbelianFieldSpec::ramified_primes() const
{
    return f_ == 1 ? std::vector<uint64_t>{} : prime_divisors(f_);
}

bool AbelianFieldSpec::has_real_embedding() const
{
    return f_ <= 2 || member_[f_ - 1];
}

bool splits_completely(const AbelianFieldSpec& k, uint64_t q)
{
    uint64_t f = k.conductor();
    if (f % q == 0) {
        return false;
    }
    return k.in_subgroup(q % f);
}

uint64_t local_degree(const AbelianFieldSpec& k, uint64_t ell)
{
    uint64_t f = k.conductor();
    if (f == 1) {
        return 1;
    }
    uint64_t ella = 1;
    while (f % (ella * ell) == 0) {
        ella *= ell;
    }
    uint64_t m0 = f / ella;
    std::vector<uint64_t> gens = k.subgroup_generators();
    // Frobenius: ell modulo m0, 1 modulo the ell-part.
    gens.push_back(crt_pair(ell % m0, m0, 1 % ella, ella));
    // Inertia: units that are 1 modulo m0.
    for (uint64_t t : unit_group_generators(ella)) {
        gens.push_back(crt_pair(1 % m0, m0, t, ella));
    }
    std::vector<char> mem = closure(f, gens);
    auto size = static_cast<uint64_t>(std::count(mem.begin(), mem.end(), 1));
    return size / k.subgroup_order();
}

std::vector<QuadraticField> quadratic_subfields(const AbelianFieldSpec& k)
{
    uint64_t f = k.conductor();
    std::vector<int64_t> odd;
    for (uint64_t p : k.ramified_primes()) {
        if (p != 2) {
            odd.push_back(p % 4 == 1 ? static_cast<int64_t>(p) : -static_cast<int64_t>(p));
        }
    }
    std::vector<int64_t> two = {1};
    if (f % 4 == 0) {
        two.push_back(-4);
    }
    if (f % 8 == 0) {
        two.push_back(8);
        two.push_back(-8);
    }
    std::vector<QuadraticField> out;
    for (int64_t t : two) {
        for (uint64_t mask = 0; mask < (uint64_t{1} << odd.size()); ++mask) {
            int64_t d = t;
            for (size_t i = 0; i < odd.size(); ++i) {
                if (mask >> i & 1) {
                    d *= odd[i];
                }
            }
            if (d == 1) {
                continue;
            }
            bool fixed = true;
            for (uint64_t h : k.subgroup_generators()) {
                if (kronecker(d, static_cast<int64_t>(h)) != 1) {
                    fixed = false;
                    break;
                }
            }
            if (fixed) {
                out.push_back(QuadraticField::from_discriminant(d));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const QuadraticField& a, const QuadraticField& b) {
        int64_t x = std::llabs(a.radicand());
        int64_t y = std::llabs(b.radicand());
        if (x != y) {
            return x < y;
        }
        return a.radicand() < b.radicand();
    });
    return out;
}

} // namespace shimura
