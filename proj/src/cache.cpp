#include "shimura/cache.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "shimura/error.hpp"
#include "shimura/report.hpp"

namespace shimura {

std::optional<std::filesystem::path> default_cache_dir()
{
    if (const char* env = std::getenv("SHIMURA_GATE_CACHE"); env && *env) {
        return std::filesystem::path(env);
    }
    if (const char* home = std::getenv("HOME"); home && *home) {
        return std::filesystem::path(home) / ".cache" / "shimura-gate";
    }
    return std::nullopt;
}

std::string cache_key(const AbelianFieldSpec& k, const ExceptionalConfig& config, const std::string& supplied_text)
{
    std::ostringstream text;
    text << k.canonical_key() << '|' << config.unprimed << config.primed << '|' << config.budget.rho_iterations << ','
         << config.budget.pm1_bound << ',' << config.budget.ecm_curves << '|' << config.s_bound << '|' << supplied_text
         << '|' << kToolVersion;
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text.str()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<ExceptionalSetReport> ReportCache::load(const std::string& key) const
{
    std::ifstream in(entry_path(key));
    if (!in) {
        return std::nullopt;
    }
    try {
        Json j = Json::parse(in);
        if (j.at("key").get<std::string>() != key || j.at("version").get<std::string>() != kToolVersion) {
            return std::nullopt;
        }
        return sets_from_json(j.at("report"));
    } catch (const Json::exception&) {
        return std::nullopt;
    } catch (const Error&) {
        return std::nullopt;
    }
}

void ReportCache::store(const std::string& key, const ExceptionalSetReport& r) const
{
    std::filesystem::create_directories(dir_);
    auto now = std::chrono::system_clock::now().time_since_epoch();
    Json j;
    j["key"] = key;
    j["version"] = kToolVersion;
    j["created_at"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    j["report"] = to_json(r);
    auto final_path = entry_path(key);
    auto tmp = dir_ / (key + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << render(j);
        if (!out) {
            throw Error(ErrorCode::InvalidInput, "cannot write cache entry " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, final_path);
}

} // namespace shimura
