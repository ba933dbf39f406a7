// Compiled with -mavx2 only (no -mfma); see CMakeLists.txt.
#include "biocell/kernels/decay.hpp"

#include <immintrin.h>

#include <cassert>

namespace biocell::kernels {

namespace {

inline __m256d consumption4(__m256d s, __m256d v_max, __m256d k_m) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d num = _mm256_mul_pd(v_max, s);
    return _mm256_div_pd(_mm256_xor_pd(num, sign), _mm256_add_pd(k_m, s));
}

}  // namespace

void advance_avx2(std::span<double> states, std::span<const double> v_max,
                  std::span<const double> k_m, const StepSize& h, std::size_t steps) {
    assert(states.size() == v_max.size() && states.size() == k_m.size());
    const std::size_t count = states.size();
    const std::size_t body = count - count % 8;

    const __m256d dt = _mm256_set1_pd(h.dt);
    const __m256d half = _mm256_set1_pd(h.half);
    const __m256d sixth = _mm256_set1_pd(h.sixth);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d zero = _mm256_setzero_pd();

    // Two independent 4-lane groups per iteration hide the divider latency.
    std::size_t j = 0;
    for (; j < body; j += 8) {
        __m256d sa = _mm256_loadu_pd(states.data() + j);
        __m256d sb = _mm256_loadu_pd(states.data() + j + 4);
        const __m256d va = _mm256_loadu_pd(v_max.data() + j);
        const __m256d vb = _mm256_loadu_pd(v_max.data() + j + 4);
        const __m256d ka = _mm256_loadu_pd(k_m.data() + j);
        const __m256d kb = _mm256_loadu_pd(k_m.data() + j + 4);
        for (std::size_t k = 0; k < steps; ++k) {
            const __m256d a1 = consumption4(sa, va, ka);
            const __m256d b1 = consumption4(sb, vb, kb);
            const __m256d a2 = consumption4(_mm256_add_pd(sa, _mm256_mul_pd(half, a1)), va, ka);
            const __m256d b2 = consumption4(_mm256_add_pd(sb, _mm256_mul_pd(half, b1)), vb, kb);
            const __m256d a3 = consumption4(_mm256_add_pd(sa, _mm256_mul_pd(half, a2)), va, ka);
            const __m256d b3 = consumption4(_mm256_add_pd(sb, _mm256_mul_pd(half, b2)), vb, kb);
            const __m256d a4 = consumption4(_mm256_add_pd(sa, _mm256_mul_pd(dt, a3)), va, ka);
            const __m256d b4 = consumption4(_mm256_add_pd(sb, _mm256_mul_pd(dt, b3)), vb, kb);
            __m256d ia = _mm256_add_pd(a1, _mm256_mul_pd(two, a2));
            __m256d ib = _mm256_add_pd(b1, _mm256_mul_pd(two, b2));
            ia = _mm256_add_pd(ia, _mm256_mul_pd(two, a3));
            ib = _mm256_add_pd(ib, _mm256_mul_pd(two, b3));
            ia = _mm256_add_pd(ia, a4);
            ib = _mm256_add_pd(ib, b4);
            sa = _mm256_max_pd(_mm256_add_pd(sa, _mm256_mul_pd(sixth, ia)), zero);
            sb = _mm256_max_pd(_mm256_add_pd(sb, _mm256_mul_pd(sixth, ib)), zero);
        }
        _mm256_storeu_pd(states.data() + j, sa);
        _mm256_storeu_pd(states.data() + j + 4, sb);
    }
    for (; j + 4 <= count; j += 4) {
        __m256d s = _mm256_loadu_pd(states.data() + j);
        const __m256d v = _mm256_loadu_pd(v_max.data() + j);
        const __m256d km = _mm256_loadu_pd(k_m.data() + j);
        for (std::size_t k = 0; k < steps; ++k) {
            const __m256d k1 = consumption4(s, v, km);
            const __m256d k2 = consumption4(_mm256_add_pd(s, _mm256_mul_pd(half, k1)), v, km);
            const __m256d k3 = consumption4(_mm256_add_pd(s, _mm256_mul_pd(half, k2)), v, km);
            const __m256d k4 = consumption4(_mm256_add_pd(s, _mm256_mul_pd(dt, k3)), v, km);
            __m256d inc = _mm256_add_pd(k1, _mm256_mul_pd(two, k2));
            inc = _mm256_add_pd(inc, _mm256_mul_pd(two, k3));
            inc = _mm256_add_pd(inc, k4);
            s = _mm256_max_pd(_mm256_add_pd(s, _mm256_mul_pd(sixth, inc)), zero);
        }
        _mm256_storeu_pd(states.data() + j, s);
    }
    if (j < count) {
        advance_scalar(states.subspan(j), v_max.subspan(j), k_m.subspan(j), h, steps);
    }
}

}  // namespace biocell::kernels
