#include "dgmr/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dgmr/errors.hpp"

namespace dgmr {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::string spaced = value;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::istringstream in(spaced);
    std::vector<std::string> out;
    std::string item;
    while (in >> item) {
        out.push_back(item);
    }
    return out;
}

template <typename T>
T convert(const std::string& key, const std::string& text) {
    std::istringstream in(text);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw ConfigError("config: key '" + key + "' has malformed value '" + text + "'");
    }
    return value;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& origin) {
    Config cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        cfg.values_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    return parse(in, path);
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? convert<double>(key, get(key, "")) : fallback;
}

long Config::get_int(const std::string& key, long fallback) const {
    return has(key) ? convert<long>(key, get(key, "")) : fallback;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? convert<std::uint64_t>(key, get(key, "")) : fallback;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& fallback) const {
    if (!has(key)) {
        return fallback;
    }
    std::vector<double> out;
    for (const auto& item : split_list(get(key, ""))) {
        out.push_back(convert<double>(key, item));
    }
    return out;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) const {
    if (!has(key)) {
        return fallback;
    }
    std::vector<int> out;
    for (const auto& item : split_list(get(key, ""))) {
        out.push_back(convert<int>(key, item));
    }
    return out;
}

std::vector<std::size_t> Config::get_levels(const std::string& key, const std::vector<std::size_t>& fallback) const {
    std::vector<std::size_t> out = fallback;
    if (has(key)) {
        out.clear();
        for (const auto& item : split_list(get(key, ""))) {
            const long v = convert<long>(key, item);
            if (v <= 0) {
                throw ConfigError("config: key '" + key + "' needs positive entries");
            }
            out.push_back(static_cast<std::size_t>(v));
        }
    }
    for (std::size_t k = 1; k < out.size(); ++k) {
        if (out[k] <= out[k - 1]) {
            throw ConfigError("config: key '" + key + "' must be strictly increasing");
        }
    }
    return out;
}

}  // namespace dgmr
