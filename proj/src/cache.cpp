#include "mgonal/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mgonal {

namespace {

std::string make_key(const MGonalForm& form, std::int64_t hi) {
    std::ostringstream os;
    os << form.order() << "|" << coeff_list_str(form.coeffs()) << "|" << hi;
    return os.str();
}

// Compare two bitmaps of equal bit count, ignoring garbage above the last
// valid bit.
bool bits_equal(const DynBitset& a, const DynBitset& b) {
    if (a.size() != b.size()) return false;
    const std::size_t nw = a.word_count();
    for (std::size_t i = 0; i + 1 < nw; ++i)
        if (a.words()[i] != b.words()[i]) return false;
    if (nw == 0) return true;
    const std::size_t tail = a.size() & 63;
    const kernels::Word mask = tail ? (kernels::Word{1} << tail) - 1 : ~kernels::Word{0};
    return (a.words()[nw - 1] & mask) == (b.words()[nw - 1] & mask);
}

}  // namespace

SieveCache::SieveCache(std::string path, bool verify_hits)
    : path_(std::move(path)), verify_hits_(verify_hits) {
    load_index();
}

SieveCache::~SieveCache() = default;

void SieveCache::load_index() {
    std::ifstream in(path_ + ".idx.json");
    if (!in) return;  // fresh cache
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return;  // unreadable index: start over, blob entries get re-stored
    }
    if (!j.is_object() || j.value("schema", 0) != 1) return;
    std::uint64_t blob_bytes = 0;
    std::error_code ec;
    blob_bytes = std::filesystem::exists(path_, ec)
                     ? static_cast<std::uint64_t>(std::filesystem::file_size(path_, ec))
                     : 0;
    for (const auto& e : j.value("entries", nlohmann::json::array())) {
        Entry entry;
        entry.offset = e.value("offset", std::uint64_t{0});
        entry.words = e.value("words", std::uint64_t{0});
        // Skip entries the blob cannot actually back (truncated file).
        if (entry.offset + entry.words * 8 > blob_bytes) continue;
        index_[e.value("key", std::string{})] = entry;
    }
}

void SieveCache::write_index() const {
    nlohmann::json j;
    j["schema"] = 1;
    auto entries = nlohmann::json::array();
    for (const auto& [key, e] : index_) {
        entries.push_back({{"key", key}, {"offset", e.offset}, {"words", e.words}});
    }
    j["entries"] = std::move(entries);
    std::ofstream out(path_ + ".idx.json", std::ios::trunc);
    out << j.dump(1) << "\n";
}

DynBitset SieveCache::get_or_compute(const MGonalForm& form, std::int64_t hi,
                                     const std::function<DynBitset()>& compute) {
    const std::string key = make_key(form, hi);
    const std::size_t nbits = static_cast<std::size_t>(hi) + 1;

    std::lock_guard<std::mutex> lock(mu_);
    const auto it = index_.find(key);
    if (it != index_.end() && it->second.words == (nbits + 63) / 64) {
        DynBitset bits(nbits);
        std::ifstream blob(path_, std::ios::binary);
        blob.seekg(static_cast<std::streamoff>(it->second.offset));
        blob.read(reinterpret_cast<char*>(bits.words().data()),
                  static_cast<std::streamsize>(it->second.words * 8));
        if (blob) {
            ++hits_;
            if (verify_hits_) {
                const DynBitset fresh = compute();
                if (!bits_equal(bits, fresh))
                    throw std::runtime_error("sieve cache verification failed for " + key);
            }
            return bits;
        }
        index_.erase(it);  // unreadable: fall through to recompute
    }

    ++misses_;
    DynBitset bits = compute();
    std::ofstream blob(path_, std::ios::binary | std::ios::app);
    const auto offset = static_cast<std::uint64_t>(
        std::filesystem::exists(path_) ? std::filesystem::file_size(path_) : 0);
    blob.write(reinterpret_cast<const char*>(bits.words().data()),
               static_cast<std::streamsize>(bits.word_count() * 8));
    blob.flush();
    if (blob) {
        index_[key] = Entry{offset, bits.word_count()};
        write_index();
    }
    return bits;
}

}  // namespace mgonal
