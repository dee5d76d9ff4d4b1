#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ldpcstore {

// Line-oriented `key = value` configuration shared by node, client and
// simulator. `#` starts a comment, blank lines are ignored. A `[section]`
// line switches to raw-line mode: everything after it is collected verbatim
// (the simulator's `[events]` schedule uses this).
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text);
    static Config load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback = "") const;
    std::string require(const std::string& key) const;

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    // Raw lines of a [section], in file order; empty if absent.
    const std::vector<std::string>& section(const std::string& name) const;

    // Comma-separated list value, trimmed, empties dropped.
    std::vector<std::string> get_list(const std::string& key) const;

private:
    std::map<std::string, std::string> values_;
    std::map<std::string, std::vector<std::string>> sections_;
};

std::string trim(const std::string& s);

}  // namespace ldpcstore
