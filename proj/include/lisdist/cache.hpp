#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lisdist {

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t h);

// Directory of payload files named by the FNV-1a hash of their key. Each file
// stores the key on its first line so collisions are detected on read.
class DiskCache {
public:
    // empty dir: use $LISDIST_CACHE_DIR, otherwise caching is disabled
    explicit DiskCache(std::string dir = {});

    bool enabled() const { return !dir_.empty(); }
    const std::string& dir() const { return dir_; }

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& payload) const;

private:
    std::string path_for(const std::string& key) const;
    std::string dir_;
};

}  // namespace lisdist
