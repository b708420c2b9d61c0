#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hyplab {

// Flat INI-style configuration: [section] headers and key = value lines,
// '#' comments. Values keep everything up to the end of the line, so short
// sensor expressions can be written inline.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;

    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;

    // Comma-separated list of doubles.
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

    // Reject any key outside the allowed schema (map section -> keys).
    void validate(const std::map<std::string, std::set<std::string>>& allowed) const;

    // Canonical text of the resolved configuration (sorted), for hashing and
    // echoing into the output directory.
    std::string resolved_text() const;

private:
    std::map<std::string, std::map<std::string, std::string>> data_;
};

} // namespace hyplab
