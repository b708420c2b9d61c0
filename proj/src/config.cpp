#include "hyplab/config.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "hyplab/errors.hpp"

namespace hyplab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": malformed section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ValidationError("config line " + std::to_string(lineno) +
                                      ": empty section name");
            cfg.data_[section];
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ValidationError("config line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ValidationError("config line " + std::to_string(lineno) +
                                  ": key outside any [section]");
        if (cfg.data_[section].count(key) != 0)
            throw ValidationError("config: duplicate key " + section + "." + key);
        cfg.data_[section][key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) != 0;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    if (it == data_.end() || it->second.count(key) == 0)
        throw ValidationError("config: missing required key " + section + "." + key);
    return it->second.at(key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ValidationError("config: " + section + "." + key + " is not a number: " + v);
    }
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ValidationError("config: " + section + "." + key + " is not an integer: " + v);
    }
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get_string(section, key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("config: " + section + "." + key + " is not a boolean: " + v);
}

std::uint64_t Config::get_u64(const std::string& section, const std::string& key,
                              std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key);
    try {
        std::size_t pos = 0;
        unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ValidationError("config: " + section + "." + key + " is not a u64: " + v);
    }
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    std::string v = get_string(section, key);
    std::vector<double> out;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::string t = tok;
        try {
            out.push_back(std::stod(t));
        } catch (const std::exception&) {
            throw ValidationError("config: " + section + "." + key + " has a bad entry: " + t);
        }
    }
    if (out.empty())
        throw ValidationError("config: " + section + "." + key + " is an empty list");
    return out;
}

void Config::validate(const std::map<std::string, std::set<std::string>>& allowed) const {
    for (const auto& [section, kv] : data_) {
        auto it = allowed.find(section);
        if (it == allowed.end())
            throw ValidationError("config: unknown section [" + section + "]");
        for (const auto& [key, value] : kv) {
            (void)value;
            if (it->second.count(key) == 0)
                throw ValidationError("config: unknown key " + section + "." + key);
        }
    }
}

std::string Config::resolved_text() const {
    std::string out;
    for (const auto& [section, kv] : data_) {
        out += "[" + section + "]\n";
        for (const auto& [key, value] : kv) out += key + " = " + value + "\n";
    }
    return out;
}

} // namespace hyplab
