#include "lisdist/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lisdist {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 15];
    return s;
}

DiskCache::DiskCache(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) {
        if (const char* env = std::getenv("LISDIST_CACHE_DIR")) dir_ = env;
    }
}

std::string DiskCache::path_for(const std::string& key) const {
    return (std::filesystem::path(dir_) / (hex64(fnv1a64(key)) + ".cache")).string();
}

std::optional<std::string> DiskCache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string stored;
    if (!std::getline(in, stored) || stored != key) return std::nullopt;
    std::ostringstream rest;
    rest << in.rdbuf();
    return rest.str();
}

void DiskCache::put(const std::string& key, const std::string& payload) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::string path = path_for(key);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        out << key << '\n' << payload;
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace lisdist
