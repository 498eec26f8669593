#include "mgonal/bitset.hpp"

#include <atomic>
#include <bit>
#include <stdexcept>

namespace mgonal {

namespace {
std::atomic<std::uint64_t> g_sieve_words{0};
}

std::uint64_t sieve_word_count() { return g_sieve_words.load(std::memory_order_relaxed); }
void reset_sieve_word_count() { g_sieve_words.store(0, std::memory_order_relaxed); }

void DynBitset::or_shift_from(const DynBitset& other, std::size_t shift_bits) {
    if (other.nbits_ != nbits_) throw std::invalid_argument("or_shift_from: size mismatch");
    if (&other == this) throw std::invalid_argument("or_shift_from: src must be distinct");
    kernels::active_or_shift()(words_.data(), other.words_.data(), words_.size(), shift_bits);
    g_sieve_words.fetch_add(words_.size(), std::memory_order_relaxed);
}

bool DynBitset::all_set(std::size_t lo, std::size_t hi) const {
    return !first_clear(lo, hi).has_value();
}

std::optional<std::size_t> DynBitset::first_clear(std::size_t lo, std::size_t hi) const {
    if (lo > hi) return std::nullopt;
    if (hi >= nbits_) throw std::out_of_range("first_clear: hi out of range");
    std::size_t wi = lo >> 6;
    const std::size_t wlast = hi >> 6;
    for (; wi <= wlast; ++wi) {
        Word mask = ~Word{0};
        if (wi == lo >> 6) mask &= ~Word{0} << (lo & 63);
        if (wi == wlast && (hi & 63) != 63) mask &= (Word{1} << ((hi & 63) + 1)) - 1;
        const Word missing = ~words_[wi] & mask;
        if (missing) return wi * 64 + static_cast<std::size_t>(std::countr_zero(missing));
    }
    return std::nullopt;
}

}  // namespace mgonal
