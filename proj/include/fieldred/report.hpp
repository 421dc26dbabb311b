#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fieldred::report {

inline constexpr const char* kVersion = "0.1.0";

/// Structured text report: sections of key/value pairs delimited by lines of
/// "---". Deterministic commands must produce byte-identical output on rerun,
/// so nothing time- or environment-dependent belongs here.
class Report {
public:
    void section() { sections_.emplace_back(); }
    void kv(const std::string& key, const std::string& value);
    void kv(const std::string& key, const char* value) { kv(key, std::string(value)); }
    void kv(const std::string& key, std::uint64_t value);
    void kv(const std::string& key, long value);
    void kv(const std::string& key, bool value);
    void raw(const std::string& block);  // verbatim lines inside the section

    std::string str() const;

private:
    struct Section {
        std::vector<std::pair<std::string, std::string>> entries;
        std::string raw;
    };
    std::vector<Section> sections_;
};

std::uint64_t fnv1a(const std::string& s);

/// Cache key: hash of command name, resolved parameter string and artifact
/// version (a version bump invalidates every entry).
std::string cache_key(const std::string& command, const std::string& params);

/// Returns the stored payload, or nullopt on miss or corruption (a corrupt
/// entry is discarded).
std::optional<std::string> cache_get(const std::string& dir, const std::string& key);
void cache_put(const std::string& dir, const std::string& key, const std::string& payload);

}  // namespace fieldred::report
