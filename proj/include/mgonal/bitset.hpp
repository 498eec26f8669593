#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mgonal/kernels/or_shift.hpp"

namespace mgonal {

// Runtime-sized bitset over uint64 words. In a representability sieve,
// bit i stands for the integer value i.
class DynBitset {
public:
    explicit DynBitset(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    std::size_t word_count() const { return words_.size(); }

    void set(std::size_t i) { words_[i >> 6] |= Word{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    // this |= other << shift_bits. `other` must be a distinct object of the
    // same size; bits shifted past size() are dropped. High garbage bits in
    // the last word can only ever move further up, so they never leak back
    // into the valid range.
    void or_shift_from(const DynBitset& other, std::size_t shift_bits);

    // Inclusive ranges; hi must be < size().
    bool all_set(std::size_t lo, std::size_t hi) const;
    std::optional<std::size_t> first_clear(std::size_t lo, std::size_t hi) const;

    const std::vector<kernels::Word>& words() const { return words_; }
    std::vector<kernels::Word>& words() { return words_; }

private:
    using Word = kernels::Word;
    std::size_t nbits_;
    std::vector<Word> words_;
};

// Deterministic work counter: words touched by or_shift_from since the last
// reset. Relaxed-atomic so worker threads can share it; the total is
// order-independent and therefore reproducible.
std::uint64_t sieve_word_count();
void reset_sieve_word_count();

}  // namespace mgonal
