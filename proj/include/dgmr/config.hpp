#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dgmr {

/// Flat `key = value` configuration. Blank lines and text after '#' are
/// ignored; list values are separated by commas or whitespace.
class Config {
public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& origin = "<stream>");
    static Config load(const std::string& path);

    void set(const std::string& key, const std::string& value) { values_[key] = value; }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::map<std::string, std::string>& entries() const { return values_; }

    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key, long fallback) const;
    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
    std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback) const;
    /// Positive, strictly increasing integers (refinement levels).
    std::vector<std::size_t> get_levels(const std::string& key, const std::vector<std::size_t>& fallback) const;

private:
    std::map<std::string, std::string> values_;
};

}  // namespace dgmr
