#pragma once

// On-disk cache of exceptional set reports, one JSON file per key.

#include <filesystem>
#include <optional>
#include <string>

#include "shimura/exceptional.hpp"

namespace shimura {

/// $SHIMURA_GATE_CACHE, else $HOME/.cache/shimura-gate; nullopt when
/// neither variable is set.
std::optional<std::filesystem::path> default_cache_dir();

/// FNV-1a of the field key, the variant/budget/supplied-data fingerprint
/// and the tool version, as 16 hex digits.
std::string cache_key(const AbelianFieldSpec& k, const ExceptionalConfig& config,
                      const std::string& supplied_text = "");

class ReportCache
{
  public:
    explicit ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    /// Missing, unreadable or mismatched entries are treated as misses.
    std::optional<ExceptionalSetReport> load(const std::string& key) const;
    /// Write to a temporary file, then rename over the entry.
    void store(const std::string& key, const ExceptionalSetReport& r) const;

    std::filesystem::path entry_path(const std::string& key) const { return dir_ / (key + ".json"); }

  private:
    std::filesystem::path dir_;
};

} // namespace shimura
