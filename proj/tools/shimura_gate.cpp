// shimura-gate: command-line front end.
//
// Exit codes: 0 success (including inconclusive verdicts), 1 computation
// failure, 2 invalid input, 3 field degree unsupported without
// --assume-outside-exceptional.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "shimura/cache.hpp"
#include "shimura/curves.hpp"
#include "shimura/error.hpp"
#include "shimura/exceptional.hpp"
#include "shimura/forms.hpp"
#include "shimura/quaternion.hpp"
#include "shimura/report.hpp"
#include "shimura/verdict.hpp"

using namespace shimura;

namespace {

int exit_code_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::DegreeUnsupported:
    case ErrorCode::MissingSuppliedData:
        return 3;
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidDiscriminant:
    case ErrorCode::MalformedFieldSpec:
    case ErrorCode::NonAbelianField:
    case ErrorCode::MalformedInput:
    case ErrorCode::UnsupportedDiscriminant:
    case ErrorCode::NoKnownModel:
        return 2;
    case ErrorCode::NotPrincipal:
    case ErrorCode::ExhaustedSearch:
    case ErrorCode::BudgetExceeded:
        return 1;
    }
    return 1;
}

std::string join(const std::set<BigInt>& s)
{
    std::string out;
    for (const auto& p : s) {
        out += (out.empty() ? "" : " ") + to_string(p);
    }
    return out.empty() ? "-" : out;
}

std::string join(const std::vector<std::string>& v)
{
    std::string out;
    for (const auto& s : v) {
        out += (out.empty() ? "" : " ") + s;
    }
    return out.empty() ? "-" : out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct SetsOptions
{
    std::string supplied_path;
    std::string variant = "both";
    bool no_cache = false;
};

struct SetsContext
{
    std::optional<SuppliedData> supplied;
    std::string supplied_text;
    ExceptionalConfig config;
};

SetsContext make_context(const SetsOptions& o)
{
    SetsContext ctx;
    if (!o.supplied_path.empty()) {
        ctx.supplied_text = read_file(o.supplied_path);
        ctx.supplied = SuppliedData::from_json(ctx.supplied_text);
    }
    ctx.config.unprimed = o.variant != "primed";
    ctx.config.primed = o.variant != "unprimed";
    return ctx;
}

// Exceptional sets through the cache. Returns the report and its source.
std::pair<ExceptionalSetReport, std::string> load_sets(const AbelianFieldSpec& k, SetsContext& ctx, bool no_cache)
{
    ctx.config.supplied = ctx.supplied ? &*ctx.supplied : nullptr;
    std::optional<ReportCache> cache;
    std::string key = cache_key(k, ctx.config, ctx.supplied_text);
    if (!no_cache) {
        if (auto dir = default_cache_dir()) {
            cache.emplace(*dir);
            if (auto hit = cache->load(key)) {
                return {*hit, "cache"};
            }
        }
    }
    auto rep = exceptional_sets(k, ctx.config);
    if (cache) {
        try {
            cache->store(key, rep);
        } catch (const std::exception& e) {
            std::cerr << "warning: cache not written: " << e.what() << "\n";
        }
    }
    return {rep, "computed"};
}

void print_sets(const ExceptionalSetReport& r)
{
    std::cout << "field: " << r.field << "\n";
    std::cout << "class number: " << r.h << "\n";
    for (const auto& g : r.S) {
        std::cout << "S: q=" << g.q << " residue=" << g.residue << " alpha=" << g.alpha_text << " ("
                  << to_string(g.provenance) << ")\n";
    }
    std::cout << "T: " << join(r.T) << "\n";
    std::cout << "Ram: " << join(r.Ram) << "\n";
    if (r.unprimed) {
        std::cout << "N0 (" << r.N0.primes.size() << " primes from " << r.N0.values << " values): " << join(r.N0.primes)
                  << "\n";
        std::cout << "N1: " << join(r.N1) << "\n";
    }
    if (r.primed) {
        std::cout << "N0' (" << r.N0p.primes.size() << " primes from " << r.N0p.values
                  << " values): " << join(r.N0p.primes) << "\n";
        std::cout << "N1': " << join(r.N1p) << "\n";
    }
    std::cout << "L (" << r.L.size() << " primes): " << join(r.L) << "\n";
    std::cout << "complete: " << (r.complete() ? "yes" : "no") << "\n";
    for (const auto& u : r.N0.unfactored) {
        std::cout << "unfactored (N0): " << to_string(u) << "\n";
    }
    for (const auto& u : r.N0p.unfactored) {
        std::cout << "unfactored (N0'): " << to_string(u) << "\n";
    }
    if (!r.notes.empty()) {
        std::cout << "notes: " << join(r.notes) << "\n";
    }
}

std::string verdict_line(const Verdict& v)
{
    std::ostringstream s;
    s << "p=" << v.p << ": " << to_string(v.outcome) << (v.conditional ? " (conditional)" : "");
    s << "  q=" << (v.q ? std::to_string(*v.q) : "none") << "  reasons: " << join(v.reasons);
    return s.str();
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& r)
{
    auto colon = r.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::InvalidInput, "--p-range expects lo:hi");
    }
    try {
        size_t used1 = 0, used2 = 0;
        std::string a = r.substr(0, colon), b = r.substr(colon + 1);
        uint64_t lo = std::stoull(a, &used1), hi = std::stoull(b, &used2);
        if (used1 != a.size() || used2 != b.size() || a.empty() || b.empty() || a[0] == '-' || b[0] == '-') {
            throw std::invalid_argument(r);
        }
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidInput, "bad --p-range " + r);
    }
}

AbelianFieldSpec parse_field(const std::string& s)
{
    return AbelianFieldSpec::parse(s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decide when Gamma_0(p) Shimura curves have no points over abelian fields"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Print JSON");

    // verdict / irred
    uint64_t d = 0, p = 0, q_bound = 10'000;
    std::string field, p_range;
    bool assume = false;
    SetsOptions sets_opts;
    auto add_verdict_flags = [&](CLI::App* cmd, bool ranged) {
        cmd->add_option("--d", d, "Quaternion discriminant")->required();
        cmd->add_option("--field", field, "Abelian field spec")->required();
        auto* po = cmd->add_option("--p", p, "Prime");
        if (ranged) {
            auto* pr = cmd->add_option("--p-range", p_range, "Primes lo:hi");
            po->excludes(pr);
        } else {
            po->required();
        }
        cmd->add_flag("--assume-outside-exceptional", assume, "Assume p lies outside the exceptional set");
        cmd->add_option("--q-bound", q_bound, "Search bound for q");
        cmd->add_option("--supplied", sets_opts.supplied_path, "Class group data for degree 3 and 4");
        cmd->add_flag("--no-cache", sets_opts.no_cache, "Do not read or write the cache");
        cmd->add_flag("--json", json, "Print JSON");
    };
    auto* verdict = app.add_subcommand("verdict", "Verdict for a prime or a range of primes");
    add_verdict_flags(verdict, true);
    auto* irred = app.add_subcommand("irred", "Irreducibility of the mod p representation");
    add_verdict_flags(irred, false);

    auto* hyp = app.add_subcommand("hypotheses", "Check the hypotheses that do not depend on p");
    hyp->add_option("--d", d, "Quaternion discriminant")->required();
    hyp->add_option("--field", field, "Abelian field spec")->required();
    hyp->add_option("--q-bound", q_bound, "Search bound for q");
    hyp->add_flag("--json", json, "Print JSON");

    auto* sets = app.add_subcommand("sets", "Exceptional prime sets");
    sets->add_option("--field", field, "Abelian field spec")->required();
    sets->add_option("--supplied", sets_opts.supplied_path, "Class group data for degree 3 and 4");
    sets->add_option("--variant", sets_opts.variant, "both, unprimed or primed")
        ->check(CLI::IsMember({"both", "unprimed", "primed"}));
    sets->add_flag("--no-cache", sets_opts.no_cache, "Do not read or write the cache");
    sets->add_flag("--json", json, "Print JSON");

    uint64_t bound = 10'000;
    auto* lq = app.add_subcommand("least-q", "Least auxiliary prime q");
    lq->add_option("--d", d, "Quaternion discriminant")->required();
    lq->add_option("--field", field, "Abelian field spec")->required();
    lq->add_option("--bound", bound, "Search bound");
    lq->add_flag("--json", json, "Print JSON");

    auto* genus = app.add_subcommand("genus", "Genus of the Shimura curve");
    genus->add_option("--d", d, "Quaternion discriminant")->required();
    genus->add_flag("--json", json, "Print JSON");

    int64_t c = 0;
    unsigned height = 10;
    auto* conic = app.add_subcommand("conic", "Points on x^2 + y^2 + c = 0 over k");
    auto* cd = conic->add_option("--d", d, "Discriminant with a known conic model (6, 10, 22)");
    auto* cc = conic->add_option("--c", c, "Constant c");
    cd->excludes(cc);
    conic->add_option("--field", field, "Abelian field spec (default: biquad:-5,7 and cyclo:13)");
    conic->add_option("--height", height, "Search height");
    conic->add_flag("--json", json, "Print JSON");

    int64_t disc = 0;
    auto* cg = app.add_subcommand("classgroup", "Class group of a quadratic discriminant");
    cg->add_option("--disc", disc, "Fundamental discriminant")->required();
    cg->add_flag("--json", json, "Print JSON");

    uint64_t q = 0;
    auto* fr = app.add_subcommand("fr", "Frobenius traces for a prime q");
    fr->add_option("--q", q, "Prime")->required();
    fr->add_flag("--json", json, "Print JSON");

    auto* tf = app.add_subcommand("trace-filter", "Traces a with a^2 = 3q or 0 mod p");
    tf->add_option("--q", q, "Prime")->required();
    tf->add_option("--p", p, "Odd prime")->required();
    tf->add_flag("--json", json, "Print JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verdict || *irred) {
            auto b = validate_discriminant(d);
            auto k = parse_field(field);
            VerdictOptions vo;
            vo.assume_outside_exceptional = assume;
            vo.q_bound = q_bound;
            SetsContext ctx = make_context(sets_opts);
            std::optional<ExceptionalSetReport> rep;
            if (!assume) {
                try {
                    auto [r, source] = load_sets(k, ctx, sets_opts.no_cache);
                    rep = std::move(r);
                    vo.precomputed = &*rep;
                    vo.precomputed_source = source;
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::DegreeUnsupported || e.code() == ErrorCode::MissingSuppliedData) {
                        std::cerr << "error: " << e.what()
                                  << "\n(rerun with --assume-outside-exceptional for a conditional verdict)\n";
                        return 3;
                    }
                    throw;
                }
            }
            auto h = check_hypotheses(b, k, vo);
            if (*irred) {
                auto v = irreducibility_verdict(h, p);
                if (json) {
                    std::cout << render(to_json(v));
                } else {
                    std::cout << "p=" << v.p << ": " << to_string(v.outcome) << (v.conditional ? " (conditional)" : "")
                              << "  q=" << (v.q ? std::to_string(*v.q) : "none") << "  reasons: " << join(v.reasons)
                              << "\n";
                }
                return 0;
            }
            if (!p_range.empty()) {
                auto [lo, hi] = parse_range(p_range);
                auto vs = evaluate_range(h, lo, hi);
                if (json) {
                    Json a = Json::array();
                    for (const auto& v : vs) {
                        a.push_back(to_json(v));
                    }
                    std::cout << render(a);
                } else {
                    for (const auto& v : vs) {
                        std::cout << verdict_line(v) << "\n";
                    }
                }
                return 0;
            }
            if (p == 0) {
                throw Error(ErrorCode::InvalidInput, "give --p or --p-range");
            }
            auto v = evaluate(h, p);
            if (json) {
                std::cout << render(to_json(v));
            } else {
                std::cout << verdict_line(v) << "\n";
                if (!v.notes.empty()) {
                    std::cout << "notes: " << join(v.notes) << "\n";
                }
            }
            return 0;
        }
        if (*hyp) {
            VerdictOptions vo;
            vo.assume_outside_exceptional = true;
            vo.q_bound = q_bound;
            auto h = check_hypotheses(validate_discriminant(d), parse_field(field), vo);
            Json j = to_json(h);
            j.erase("L_source");
            if (json) {
                std::cout << render(j);
            } else {
                std::cout << "hilbert class field contained: " << (h.hcf.contained ? "yes" : "no");
                if (h.hcf.witness) {
                    std::cout << " (witness " << to_string(*h.hcf.witness) << ")";
                }
                std::cout << "\nq: " << (h.q ? std::to_string(*h.q) : "none") << "\n";
                std::cout << "B splits over k: " << (h.b_splits_over_k ? "yes" : "no") << "\n";
            }
            return 0;
        }
        if (*sets) {
            auto k = parse_field(field);
            SetsContext ctx = make_context(sets_opts);
            auto [r, source] = load_sets(k, ctx, sets_opts.no_cache);
            if (json) {
                std::cout << render(to_json(r));
            } else {
                print_sets(r);
            }
            return 0;
        }
        if (*lq) {
            auto b = validate_discriminant(d);
            auto res = least_q(b, parse_field(field), bound);
            if (json) {
                std::cout << render(Json{{"d", d}, {"field", field}, {"bound", bound}, {"q", res ? Json(*res) : Json(nullptr)}});
            } else {
                std::cout << (res ? std::to_string(*res) : "none") << "\n";
            }
            return 0;
        }
        if (*genus) {
            auto g = shimura_genus(validate_discriminant(d));
            if (json) {
                std::cout << render(Json{{"d", d}, {"genus", g}});
            } else {
                std::cout << g << "\n";
            }
            return 0;
        }
        if (*conic) {
            if (!*cd && !*cc) {
                throw Error(ErrorCode::InvalidInput, "give --d or --c");
            }
            if (*cd) {
                c = conic_for(d).c;
            }
            if (c == 0) {
                throw Error(ErrorCode::InvalidInput, "c must be nonzero");
            }
            std::vector<std::string> fields;
            if (field.empty()) {
                fields = {"biquad:-5,7", "cyclo:13"};
            } else {
                fields = {field};
            }
            Json all = Json::array();
            for (const auto& f : fields) {
                auto k = parse_field(f);
                auto r = has_k_point(c, k, height);
                if (json) {
                    Json j = conic_json(c, r);
                    j["field"] = k.label();
                    all.push_back(j);
                    continue;
                }
                std::cout << k.label() << ": x^2 + y^2 + " << c << " = 0: ";
                switch (r.kind) {
                case ConicResult::Kind::Point:
                    std::cout << "point x = " << r.x << ", y = " << r.y << "\n";
                    break;
                case ConicResult::Kind::LocalObstruction:
                    std::cout << "local obstruction at " << r.place() << "\n";
                    break;
                case ConicResult::Kind::Unknown:
                    std::cout << "unknown (searched to height " << r.bound << ")\n";
                    break;
                }
            }
            if (json) {
                std::cout << render(all.size() == 1 ? all[0] : all);
            }
            return 0;
        }
        if (*cg) {
            auto g = quadratic_class_group(disc);
            if (json) {
                Json forms = Json::array();
                for (const auto& f : g.representatives()) {
                    forms.push_back({f.a, f.b, f.c});
                }
                std::cout << render(Json{{"disc", disc}, {"h", g.order()}, {"exponent", g.exponent()}, {"forms", forms}});
            } else {
                std::cout << "h = " << g.order() << ", exponent " << g.exponent() << "\n";
                for (const auto& f : g.representatives()) {
                    std::cout << "(" << f.a << ", " << f.b << ", " << f.c << ")\n";
                }
            }
            return 0;
        }
        if (*fr) {
            auto t = fr_set(q).traces;
            if (json) {
                std::cout << render(Json{{"q", q}, {"traces", t}});
            } else {
                for (size_t i = 0; i < t.size(); ++i) {
                    std::cout << (i ? " " : "") << t[i];
                }
                std::cout << "\n";
            }
            return 0;
        }
        if (*tf) {
            auto t = trace_filter(q, p);
            if (json) {
                std::cout << render(Json{{"q", q}, {"p", p}, {"traces", t}});
            } else {
                for (size_t i = 0; i < t.size(); ++i) {
                    std::cout << (i ? " " : "") << t[i];
                }
                std::cout << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
