#include "rydsim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ryd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": empty key");
        if (out.count(key))
            throw std::runtime_error("duplicate config key \"" + key + "\"");
        out[key] = value;
    }
    return out;
}

ConfigMap parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_hash(const ConfigMap& config) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    for (const auto& [k, v] : config) {
        mix(k);
        mix(v);
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double config_double(const ConfigMap& c, const std::string& key, double fallback) {
    auto it = c.find(key);
    if (it == c.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config key \"" + key + "\": not a number: " +
                                 it->second);
    }
}

long config_long(const ConfigMap& c, const std::string& key, long fallback) {
    auto it = c.find(key);
    if (it == c.end()) return fallback;
    try {
        std::size_t pos = 0;
        const long v = std::stol(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("config key \"" + key + "\": not an integer: " +
                                 it->second);
    }
}

std::string config_string(const ConfigMap& c, const std::string& key,
                          const std::string& fallback) {
    auto it = c.find(key);
    return it == c.end() ? fallback : it->second;
}

void reject_unknown_keys(const ConfigMap& config,
                         const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : config) {
        bool ok = false;
        for (const auto& a : allowed)
            if (k == a) { ok = true; break; }
        if (!ok) throw std::runtime_error("unknown config key \"" + k + "\"");
    }
}

nlohmann::json make_summary(const ConfigMap& config, std::uint64_t seed) {
    nlohmann::json doc;
    doc["version"] = kToolVersion;
    doc["seed"] = seed;
    doc["config_hash"] = config_hash(config);
    doc["config"] = nlohmann::json::object();
    for (const auto& [k, v] : config) doc["config"][k] = v;
    return doc;
}

void write_summary(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << "\n";
}

void write_table(const std::string& path, const std::vector<std::string>& columns,
                 const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "#";
    for (const auto& c : columns) out << "\t" << c;
    out << "\n";
    out.precision(12);
    for (const auto& r : rows) {
        if (r.size() != columns.size())
            throw std::runtime_error("table row width mismatch");
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "\t" : "") << r[i];
        out << "\n";
    }
}

}  // namespace ryd
