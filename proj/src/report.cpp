#include "shimura/report.hpp"

#include "shimura/error.hpp"

namespace shimura {

Json prime_json(const BigInt& p)
{
    if (fits_u64(p)) {
        return to_u64(p);
    }
    return to_string(p);
}

BigInt prime_from_json(const Json& j)
{
    if (j.is_number_unsigned()) {
        return from_u64(j.get<uint64_t>());
    }
    if (j.is_string()) {
        return big_from_string(j.get<std::string>());
    }
    throw Error(ErrorCode::MalformedInput, "expected a prime, got " + j.dump());
}

namespace {

Json primes_json(const std::set<BigInt>& s)
{
    Json a = Json::array();
    for (const auto& p : s) {
        a.push_back(prime_json(p));
    }
    return a;
}

std::set<BigInt> primes_from(const Json& a)
{
    std::set<BigInt> s;
    for (const auto& v : a) {
        s.insert(prime_from_json(v));
    }
    return s;
}

Json rationals_json(const std::vector<BigRational>& v)
{
    Json a = Json::array();
    for (const auto& c : v) {
        a.push_back(c.get_str());
    }
    return a;
}

std::vector<BigRational> rationals_from(const Json& a)
{
    std::vector<BigRational> out;
    for (const auto& v : a) {
        BigRational r;
        if (!v.is_string() || r.set_str(v.get<std::string>(), 10) != 0) {
            throw Error(ErrorCode::MalformedInput, "bad rational " + v.dump());
        }
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

Json optional_q(const std::optional<uint64_t>& q)
{
    return q ? Json(*q) : Json(nullptr);
}

} // namespace

Json to_json(const ExceptionalSetReport& r)
{
    Json j;
    j["field"] = r.field;
    j["field_key"] = r.field_key;
    j["h"] = r.h;
    Json S = Json::array();
    for (const auto& g : r.S) {
        S.push_back({{"q", g.q},
                     {"residue", g.residue},
                     {"h", g.h},
                     {"alpha", g.alpha_text},
                     {"alpha_coordinates", rationals_json(g.alpha)},
                     {"provenance", to_string(g.provenance)}});
    }
    j["S"] = S;
    j["variants"] = {{"unprimed", r.unprimed}, {"primed", r.primed}};
    j["N0"] = primes_json(r.N0.primes);
    j["T"] = primes_json(r.T);
    j["Ram"] = primes_json(r.Ram);
    j["N1"] = primes_json(r.N1);
    j["N0p"] = primes_json(r.N0p.primes);
    j["N1p"] = primes_json(r.N1p);
    j["L"] = primes_json(r.L);
    j["complete"] = r.complete();
    j["unfactored"] = {{"N0", primes_json(r.N0.unfactored)}, {"N0p", primes_json(r.N0p.unfactored)}};
    j["values"] = {{"N0", r.N0.values}, {"N0p", r.N0p.values}};
    j["notes"] = r.notes;
    return j;
}

ExceptionalSetReport sets_from_json(const Json& j)
{
    try {
        ExceptionalSetReport r;
        r.field = j.at("field").get<std::string>();
        r.field_key = j.at("field_key").get<std::string>();
        r.h = j.at("h").get<unsigned>();
        for (const auto& g : j.at("S")) {
            GeneratorDatum d;
            d.q = g.at("q").get<uint64_t>();
            d.residue = g.at("residue").get<uint64_t>();
            d.h = g.at("h").get<unsigned>();
            d.alpha_text = g.at("alpha").get<std::string>();
            d.alpha = rationals_from(g.at("alpha_coordinates"));
            std::string prov = g.at("provenance").get<std::string>();
            if (prov != "computed" && prov != "supplied") {
                throw Error(ErrorCode::MalformedInput, "unknown provenance " + prov);
            }
            d.provenance = prov == "computed" ? Provenance::Computed : Provenance::Supplied;
            r.S.push_back(std::move(d));
        }
        r.unprimed = j.at("variants").at("unprimed").get<bool>();
        r.primed = j.at("variants").at("primed").get<bool>();
        r.N0.primes = primes_from(j.at("N0"));
        r.T = primes_from(j.at("T"));
        r.Ram = primes_from(j.at("Ram"));
        r.N1 = primes_from(j.at("N1"));
        r.N0p.primes = primes_from(j.at("N0p"));
        r.N1p = primes_from(j.at("N1p"));
        r.L = primes_from(j.at("L"));
        r.N0.unfactored = primes_from(j.at("unfactored").at("N0"));
        r.N0p.unfactored = primes_from(j.at("unfactored").at("N0p"));
        r.N0.values = j.at("values").at("N0").get<size_t>();
        r.N0p.values = j.at("values").at("N0p").get<size_t>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        if (r.complete() != j.at("complete").get<bool>()) {
            throw Error(ErrorCode::MalformedInput, "completeness flag disagrees with the cofactor lists");
        }
        return r;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::MalformedInput, std::string("exceptional set report: ") + e.what());
    }
}

Json to_json(const Verdict& v)
{
    Json j;
    j["d"] = v.d;
    j["field"] = v.field;
    j["p"] = v.p;
    j["outcome"] = to_string(v.outcome);
    j["conditional"] = v.conditional;
    j["reasons"] = v.reasons;
    j["q"] = optional_q(v.q);
    j["L_source"] = v.l_source;
    j["notes"] = v.notes;
    return j;
}

Json to_json(const IrreducibilityVerdict& v)
{
    Json j;
    j["d"] = v.d;
    j["field"] = v.field;
    j["p"] = v.p;
    j["outcome"] = to_string(v.outcome);
    j["conditional"] = v.conditional;
    j["reasons"] = v.reasons;
    j["q"] = optional_q(v.q);
    j["L_source"] = v.l_source;
    return j;
}

Json to_json(const HypothesisReport& h)
{
    Json j;
    j["d"] = h.b.d;
    j["field"] = h.k.label();
    j["abelian_ok"] = h.abelian_ok;
    j["hcf_free"] = !h.hcf.contained;
    j["hcf_witness"] = h.hcf.witness ? Json(h.hcf.witness->radicand()) : Json(nullptr);
    j["q"] = optional_q(h.q);
    j["B_splits_over_k"] = h.b_splits_over_k;
    j["L_source"] = h.l_source;
    j["notes"] = h.notes;
    return j;
}

Json conic_json(int64_t c, const ConicResult& r)
{
    Json res;
    res["kind"] = to_string(r.kind);
    switch (r.kind) {
    case ConicResult::Kind::Point:
        res["point"] = {{"x", r.x},
                        {"y", r.y},
                        {"x_coordinates", rationals_json(r.x_coords)},
                        {"y_coordinates", rationals_json(r.y_coords)}};
        break;
    case ConicResult::Kind::LocalObstruction:
        res["place"] = r.prime == 0 ? Json("real") : Json(r.prime);
        break;
    case ConicResult::Kind::Unknown:
        res["bound"] = r.bound;
        break;
    }
    return {{"c", c}, {"result", res}};
}

std::string render(const Json& j)
{
    return j.dump(2) + "\n";
}

} // namespace shimura
