#include "ldpcstore/config.hpp"

#include <fstream>
#include <sstream>

#include "ldpcstore/errors.hpp"

namespace ldpcstore {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string current_section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            current_section = trim(t.substr(1, t.size() - 2));
            cfg.sections_[current_section];  // record even if empty
            continue;
        }
        if (!current_section.empty()) {
            cfg.sections_[current_section].push_back(t);
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.values_[key] = val;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string Config::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stoll(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not an integer: " + it->second);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: " + it->second);
    }
}

const std::vector<std::string>& Config::section(const std::string& name) const {
    static const std::vector<std::string> kEmpty;
    auto it = sections_.find(name);
    return it == sections_.end() ? kEmpty : it->second;
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    std::vector<std::string> out;
    std::string raw = get(key);
    std::size_t pos = 0;
    while (pos <= raw.size()) {
        std::size_t comma = raw.find(',', pos);
        std::string item = trim(comma == std::string::npos ? raw.substr(pos)
                                                           : raw.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace ldpcstore
