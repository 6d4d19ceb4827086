#include "raimsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "raimsim/error.hpp"

namespace raimsim {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
    });
}

std::string strip_comment(const std::string& line)
{
    const auto p = line.find_first_of("#;");
    return p == std::string::npos ? line : line.substr(0, p);
}

std::string location(const std::string& source, int line)
{
    return line > 0 ? source + ":" + std::to_string(line) + ": " : source + ": ";
}

} // namespace

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ConfigFile ConfigFile::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open configuration file '" + path + "'");
    return parse(in, path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& source)
{
    std::istringstream in(text);
    return parse(in, source);
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source)
{
    ConfigFile cfg;
    cfg.source_ = source;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(strip_comment(raw));
        if (text.empty())
            continue;
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ConfigError(location(source, line) + "unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            if (!valid_name(section))
                throw ConfigError(location(source, line) + "invalid section name '" + section + "'");
            cfg.data_[section];
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(location(source, line) + "expected 'key = value'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (!valid_name(key))
            throw ConfigError(location(source, line) + "invalid key '" + key + "'");
        auto& sec = cfg.data_[section];
        if (auto it = sec.find(key); it != sec.end())
            throw ConfigError(location(source, line) + "duplicate key '" + key + "' (first defined on line " +
                              std::to_string(it->second.line) + ")");
        sec[key] = Entry{value, line, source};
    }
    return cfg;
}

const ConfigFile::Entry* ConfigFile::find(const std::string& section, const std::string& key) const
{
    auto s = data_.find(section);
    if (s == data_.end())
        return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

void ConfigFile::fail(const Entry& e, const std::string& section, const std::string& key, const std::string& what) const
{
    const std::string name = section.empty() ? key : section + "." + key;
    throw ConfigError(location(e.origin, e.line) + name + ": " + what +
                      " (got '" + e.value + "')");
}

bool ConfigFile::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

std::string ConfigFile::where(const std::string& section, const std::string& key) const
{
    const Entry* e = find(section, key);
    return e ? location(e->origin, e->line) : std::string{};
}

void ConfigFile::remove_section(const std::string& section) { data_.erase(section); }

void ConfigFile::merge(const ConfigFile& other)
{
    for (const auto& [s, keys] : other.data_) {
        auto& mine = data_[s];
        for (const auto& [k, e] : keys)
            mine[k] = e;
    }
    if (source_ == "<empty>")
        source_ = other.source_;
}

void ConfigFile::set(const std::string& section, const std::string& key, const std::string& value)
{
    data_[section][key] = Entry{value, 0, "<override>"};
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key, const std::string& fallback) const
{
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key, double fallback) const
{
    const Entry* e = find(section, key);
    if (!e)
        return fallback;
    double v = 0.0;
    const char* b = e->value.data();
    const char* end = b + e->value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end)
        fail(*e, section, key, "expected a number");
    return v;
}

int ConfigFile::get_int(const std::string& section, const std::string& key, int fallback) const
{
    const Entry* e = find(section, key);
    if (!e)
        return fallback;
    int v = 0;
    const char* b = e->value.data();
    const char* end = b + e->value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end)
        fail(*e, section, key, "expected an integer");
    return v;
}

std::uint64_t ConfigFile::get_uint64(const std::string& section, const std::string& key, std::uint64_t fallback) const
{
    const Entry* e = find(section, key);
    if (!e)
        return fallback;
    std::uint64_t v = 0;
    const char* b = e->value.data();
    const char* end = b + e->value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end)
        fail(*e, section, key, "expected a non-negative integer");
    return v;
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key, bool fallback) const
{
    const Entry* e = find(section, key);
    if (!e)
        return fallback;
    if (e->value == "true" || e->value == "yes" || e->value == "on" || e->value == "1")
        return true;
    if (e->value == "false" || e->value == "no" || e->value == "off" || e->value == "0")
        return false;
    fail(*e, section, key, "expected a boolean");
}

std::vector<double> ConfigFile::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const
{
    const Entry* e = find(section, key);
    if (!e)
        return fallback;
    std::vector<double> out;
    std::stringstream ss(e->value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        double v = 0.0;
        auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || p != item.data() + item.size())
            fail(*e, section, key, "expected a comma-separated list of numbers");
        out.push_back(v);
    }
    return out;
}

std::vector<std::string> ConfigFile::unknown_keys(const std::string& section, const std::vector<std::string>& known) const
{
    std::vector<std::string> out;
    auto s = data_.find(section);
    if (s == data_.end())
        return out;
    for (const auto& [k, e] : s->second)
        if (std::find(known.begin(), known.end(), k) == known.end())
            out.push_back(location(e.origin, e.line) + k);
    return out;
}

std::vector<std::string> ConfigFile::sections() const
{
    std::vector<std::string> out;
    for (const auto& [s, keys] : data_)
        out.push_back(s);
    return out;
}

std::string ConfigFile::canonical() const
{
    std::string out;
    for (const auto& [s, keys] : data_) {
        if (keys.empty())
            continue;
        out += "[" + s + "]\n";
        for (const auto& [k, e] : keys)
            out += k + " = " + e.value + "\n";
    }
    return out;
}

std::uint64_t ConfigFile::hash() const { return fnv1a64(canonical()); }

std::string ConfigFile::hash_hex() const
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

} // namespace raimsim
