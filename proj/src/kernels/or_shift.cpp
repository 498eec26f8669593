#include "mgonal/kernels/or_shift.hpp"

#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#endif

namespace mgonal::kernels {

void or_shift_scalar(Word* dst, const Word* src, std::size_t nwords, std::size_t shift_bits) {
    const std::size_t w = shift_bits / 64;
    const std::size_t b = shift_bits % 64;
    if (w >= nwords) return;
    if (b == 0) {
        for (std::size_t i = w; i < nwords; ++i) dst[i] |= src[i - w];
        return;
    }
    dst[w] |= src[0] << b;
    for (std::size_t i = w + 1; i < nwords; ++i)
        dst[i] |= (src[i - w] << b) | (src[i - w - 1] >> (64 - b));
}

#if defined(__x86_64__) || defined(__i386__)

bool cpu_supports_avx2() { return __builtin_cpu_supports("avx2") != 0; }

__attribute__((target("avx2"))) void or_shift_avx2(Word* dst, const Word* src,
                                                   std::size_t nwords, std::size_t shift_bits) {
    const std::size_t w = shift_bits / 64;
    const std::size_t b = shift_bits % 64;
    if (w >= nwords) return;
    if (b == 0) {
        std::size_t i = w;
        for (; i + 4 <= nwords; i += 4) {
            const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - w));
            const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, s));
        }
        for (; i < nwords; ++i) dst[i] |= src[i - w];
        return;
    }
    dst[w] |= src[0] << b;
    // Each output word mixes two neighbouring source words; the two loads
    // overlap by one word, which unaligned loads handle fine.
    const __m128i cl = _mm_cvtsi64_si128(static_cast<long long>(b));
    const __m128i cr = _mm_cvtsi64_si128(static_cast<long long>(64 - b));
    std::size_t i = w + 1;
    for (; i + 4 <= nwords; i += 4) {
        const __m256i hi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - w));
        const __m256i lo = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - w - 1));
        const __m256i v = _mm256_or_si256(_mm256_sll_epi64(hi, cl), _mm256_srl_epi64(lo, cr));
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(d, v));
    }
    for (; i < nwords; ++i)
        dst[i] |= (src[i - w] << b) | (src[i - w - 1] >> (64 - b));
}

#endif  // x86

namespace {

OrShiftFn pick_kernel() {
#if defined(__x86_64__) || defined(__i386__)
    if (const char* env = std::getenv("MGONAL_KERNEL")) {
        const std::string_view want(env);
        if (want == "avx2" && cpu_supports_avx2()) return &or_shift_avx2;
        return &or_shift_scalar;  // "scalar" or anything unrecognized
    }
    if (cpu_supports_avx2()) return &or_shift_avx2;
#endif
    return &or_shift_scalar;
}

}  // namespace

OrShiftFn active_or_shift() {
    static const OrShiftFn fn = pick_kernel();
    return fn;
}

std::string_view active_kernel_name() {
#if defined(__x86_64__) || defined(__i386__)
    if (active_or_shift() == &or_shift_avx2) return "avx2";
#endif
    return "scalar";
}

}  // namespace mgonal::kernels
