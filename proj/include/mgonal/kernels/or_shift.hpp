#pragma once

// Shift-OR kernels: dst |= src << shift_bits over packed 64-bit words.
// This is the inner loop of every representability sieve, so it gets a
// scalar reference implementation plus an AVX2 variant selected at runtime
// on CPUs that support it. The two are equivalence-tested word for word.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mgonal::kernels {

using Word = std::uint64_t;

// Requires dst and src to be distinct buffers of nwords words each.
// Bits shifted past the end are dropped.
void or_shift_scalar(Word* dst, const Word* src, std::size_t nwords, std::size_t shift_bits);

#if defined(__x86_64__) || defined(__i386__)
void or_shift_avx2(Word* dst, const Word* src, std::size_t nwords, std::size_t shift_bits);
bool cpu_supports_avx2();
#endif

using OrShiftFn = void (*)(Word*, const Word*, std::size_t, std::size_t);

// Runtime selection, cached on first use. Environment override:
// MGONAL_KERNEL=scalar forces the reference kernel, MGONAL_KERNEL=avx2
// requests the vector kernel (silently falling back when unsupported).
OrShiftFn active_or_shift();
std::string_view active_kernel_name();

}  // namespace mgonal::kernels
