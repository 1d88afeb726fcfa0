#include "shimura/hilbert.hpp"

#include <algorithm>
#include <cstdlib>

#include "shimura/arith.hpp"
#include "shimura/error.hpp"
#include "shimura/forms.hpp"

namespace shimura {

std::vector<int64_t> prime_discriminants(int64_t disc)
{
    if (!is_fundamental_discriminant(disc)) {
        throw Error(ErrorCode::InvalidInput, "not a fundamental discriminant: " + std::to_string(disc));
    }
    std::vector<int64_t> out;
    int64_t rest = disc;
    for (uint64_t p : prime_divisors(static_cast<uint64_t>(std::llabs(disc)))) {
        if (p == 2) {
            continue;
        }
        int64_t ps = p % 4 == 1 ? static_cast<int64_t>(p) : -static_cast<int64_t>(p);
        out.push_back(ps);
        rest /= ps;
    }
    if (rest != 1) {
        // the 2-part: -4, 8 or -8
        out.push_back(rest);
    }
    std::sort(out.begin(), out.end(), [](int64_t a, int64_t b) {
        return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
    });
    return out;
}

bool class_group_is_two_torsion(int64_t disc)
{
    ClassGroup cl = quadratic_class_group(disc);
    size_t genera = size_t{1} << (prime_discriminants(disc).size() - 1);
    return cl.order() == genera;
}

HilbertContainment contains_hilbert_class_field(const AbelianFieldSpec& k)
{
    auto subs = quadratic_subfields(k);
    auto present = [&](int64_t d) {
        int64_t m = d % 4 == 0 ? d / 4 : d;
        return std::any_of(subs.begin(), subs.end(), [&](const QuadraticField& s) { return s.radicand() == m; });
    };
    for (const auto& l : subs) {
        if (!l.is_imaginary() || !class_group_is_two_torsion(l.discriminant())) {
            continue;
        }
        auto parts = prime_discriminants(l.discriminant());
        if (std::all_of(parts.begin(), parts.end(), present)) {
            return {true, l};
        }
    }
    return {};
}

} // namespace shimura
