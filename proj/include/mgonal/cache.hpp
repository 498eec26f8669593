#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>

#include "mgonal/bitset.hpp"
#include "mgonal/form.hpp"

namespace mgonal {

// Persistent sieve-bitmap cache: a binary word blob plus a JSON index
// sidecar ("<path>.idx.json"). Entries are keyed by (order, coefficients,
// window top); lookups match the full key, so unrelated runs can share one
// file. A stale or truncated blob invalidates the affected entries, which
// are then recomputed and re-stored. In verify mode every hit is also
// recomputed and compared bit for bit; a mismatch throws.
class SieveCache {
public:
    SieveCache(std::string path, bool verify_hits);
    ~SieveCache();

    SieveCache(const SieveCache&) = delete;
    SieveCache& operator=(const SieveCache&) = delete;

    // Returns the cached bitmap over [0, hi] for the form, or computes,
    // stores and returns it. Thread-safe.
    DynBitset get_or_compute(const MGonalForm& form, std::int64_t hi,
                             const std::function<DynBitset()>& compute);

    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }
    const std::string& path() const { return path_; }

private:
    struct Entry {
        std::uint64_t offset = 0;  // byte offset into the blob
        std::uint64_t words = 0;
    };

    void load_index();
    void write_index() const;

    std::string path_;
    bool verify_hits_;
    std::mutex mu_;
    std::map<std::string, Entry> index_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

}  // namespace mgonal
