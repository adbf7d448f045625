// Run configuration files, result documents, and delimited table output.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace ryd {

inline constexpr const char* kToolVersion = "0.1.0";

// Flat key = value configuration. Lines starting with '#' are comments.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_file(const std::string& path);
ConfigMap parse_config_text(const std::string& text);

// FNV-1a over the sorted key=value pairs, hex-encoded. Stable across runs.
std::string config_hash(const ConfigMap& config);

// Typed accessors; a present key that fails to parse raises with the key name.
double config_double(const ConfigMap& c, const std::string& key, double fallback);
long config_long(const ConfigMap& c, const std::string& key, long fallback);
std::string config_string(const ConfigMap& c, const std::string& key,
                          const std::string& fallback);

// Raises if the config holds keys outside the allowed set, naming the first
// offender. Every command calls this with its full key list.
void reject_unknown_keys(const ConfigMap& config,
                         const std::vector<std::string>& allowed);

// JSON result document with the reproducibility envelope (config, config
// hash, seed, version) already filled in.
nlohmann::json make_summary(const ConfigMap& config, std::uint64_t seed);
void write_summary(const std::string& path, const nlohmann::json& doc);

// Tab-delimited table with a '#'-prefixed header row.
void write_table(const std::string& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows);

}  // namespace ryd
