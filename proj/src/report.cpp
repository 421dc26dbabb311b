#include "fieldred/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fieldred::report {

void Report::kv(const std::string& key, const std::string& value) {
    if (sections_.empty()) section();
    sections_.back().entries.emplace_back(key, value);
}

void Report::kv(const std::string& key, std::uint64_t value) { kv(key, std::to_string(value)); }
void Report::kv(const std::string& key, long value) { kv(key, std::to_string(value)); }
void Report::kv(const std::string& key, bool value) { kv(key, std::string(value ? "true" : "false")); }

void Report::raw(const std::string& block) {
    if (sections_.empty()) section();
    sections_.back().raw += block;
    if (!block.empty() && block.back() != '\n') sections_.back().raw += '\n';
}

std::string Report::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < sections_.size(); ++i) {
        if (i) os << "---\n";
        for (const auto& [k, v] : sections_[i].entries) os << k << ": " << v << "\n";
        os << sections_[i].raw;
    }
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_key(const std::string& command, const std::string& params) {
    std::ostringstream os;
    os << std::hex << fnv1a(command + "\x1f" + params + "\x1f" + kVersion);
    return os.str();
}

namespace {
constexpr const char* kMagic = "fieldred-cache";
}

std::optional<std::string> cache_get(const std::string& dir, const std::string& key) {
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".txt");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header) || header.rfind(kMagic, 0) != 0) {
        in.close();
        std::error_code ec;
        std::filesystem::remove(p, ec);  // discard corrupt entry
        return std::nullopt;
    }
    std::ostringstream payload;
    payload << in.rdbuf();
    return payload.str();
}

void cache_put(const std::string& dir, const std::string& key, const std::string& payload) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::filesystem::path p = std::filesystem::path(dir) / (key + ".txt");
    std::ofstream out(p, std::ios::binary);
    out << kMagic << " " << kVersion << "\n" << payload;
}

}  // namespace fieldred::report
