#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace raimsim {

// Flat key-value configuration with sections.
//
//   # comment            (also ';')
//   [section]
//   key = value          # trailing comments are stripped
//
// Keys before the first section header belong to the section "". Section and
// key names are [A-Za-z0-9_.-]+; a key may appear once per section. Values are
// trimmed; lists are comma separated. Errors carry "source:line:".
class ConfigFile {
public:
    struct Entry {
        std::string value;
        int line = 0;        // 0 for programmatic overrides
        std::string origin;  // file the entry came from
    };

    static ConfigFile load(const std::string& path);
    static ConfigFile parse(std::istream& in, const std::string& source);
    static ConfigFile parse_string(const std::string& text, const std::string& source = "<string>");

    const std::string& source() const { return source_; }

    bool has(const std::string& section, const std::string& key) const;
    // "source:line: " of an entry, empty when the key is absent
    std::string where(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);
    void remove_section(const std::string& section);
    // entries of `other` replace entries with the same section and key
    void merge(const ConfigFile& other);

    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    std::uint64_t get_uint64(const std::string& section, const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback) const;

    // keys present in `section` that are not in `known`
    std::vector<std::string> unknown_keys(const std::string& section, const std::vector<std::string>& known) const;
    std::vector<std::string> sections() const;

    // Canonical text (sorted sections and keys) and its 64-bit FNV-1a hash.
    std::string canonical() const;
    std::uint64_t hash() const;
    std::string hash_hex() const;

private:
    const Entry* find(const std::string& section, const std::string& key) const;
    [[noreturn]] void fail(const Entry& e, const std::string& section, const std::string& key,
                           const std::string& what) const;

    std::string source_ = "<empty>";
    std::map<std::string, std::map<std::string, Entry>> data_;
};

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace raimsim
