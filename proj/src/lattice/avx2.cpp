#include "kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

#define FQRE_AVX2 __attribute__((target("avx2,fma")))

namespace fqre::detail
{

namespace
{

constexpr std::size_t max_lane_alphas = 32;

struct LaneSum
{
    __m256d s, c;
};

FQRE_AVX2 inline __m256d
vabs(__m256d v)
{
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

FQRE_AVX2 inline void
lane_add(LaneSum& a, __m256d v)
{
    const __m256d t = _mm256_add_pd(a.s, v);
    const __m256d big_s = _mm256_cmp_pd(vabs(a.s), vabs(v), _CMP_GE_OQ);
    const __m256d when_s = _mm256_add_pd(_mm256_sub_pd(a.s, t), v);
    const __m256d when_v = _mm256_add_pd(_mm256_sub_pd(v, t), a.s);
    a.c = _mm256_add_pd(a.c, _mm256_blendv_pd(when_v, when_s, big_s));
    a.s = t;
}

FQRE_AVX2 inline void
lane_reduce(const LaneSum& a, Neumaier& out)
{
    alignas(32) double s[4], c[4];
    _mm256_store_pd(s, a.s);
    _mm256_store_pd(c, a.c);
    for (int i = 0; i < 4; ++i) {
        out.add(s[i]);
        out.add(c[i]);
    }
}

FQRE_AVX2 inline double
hsum(__m256d v)
{
    alignas(32) double t[4];
    _mm256_store_pd(t, v);
    return (t[0] + t[1]) + (t[2] + t[3]);
}

}  // namespace

FQRE_AVX2 void
slab_avx2(const SlabArgs& a, SlabResult& r)
{
    const int mu = slab_mu(a.x);
    const int shift = a.n_M + 2 * (mu - 2);
    const std::uint64_t S = std::uint64_t(1) << shift;
    const double inv_S = std::ldexp(1.0, -shift);
    const std::size_t na = a.deltas.size();
    r.dev.assign(na, Neumaier{});

    if (na > max_lane_alphas) {
        slab_scalar(a, r);
        return;
    }

    // fixed stack arrays: heap containers of __m256d lose their alignment guarantees here
    const __m256d zero = _mm256_setzero_pd();
    LaneSum l_inv2{zero, zero}, l_inv{zero, zero};
    LaneSum l_dev[max_lane_alphas];
    __m256d v_delta[max_lane_alphas];
    for (std::size_t i = 0; i < na; ++i) {
        l_dev[i] = LaneSum{zero, zero};
        v_delta[i] = _mm256_set1_pd(a.deltas[i]);
    }

    const std::int64_t x = a.x;
    const __m256d vS = _mm256_set1_pd(double(S));
    const __m256d vinvS = _mm256_set1_pd(inv_S);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d step = _mm256_set_pd(3, 2, 1, 0);

    for (std::int64_t y = 0; y <= x; ++y) {
        const std::int64_t base = x * x + y * y;
        accumulate_point(base, wedge_weight(x, y, 0), S, inv_S, a.deltas, r);
        if (y == 0)
            continue;
        accumulate_point(base + y * y, wedge_weight(x, y, y), S, inv_S, a.deltas, r);

        const double w = (y == x) ? 24.0 : 48.0;
        const __m256d vw = _mm256_set1_pd(w);
        const __m256d vbase = _mm256_set1_pd(double(base));
        __m256d csum = zero;
        std::int64_t z = 1;
        for (; z + 3 < y; z += 4) {
            const __m256d vz = _mm256_add_pd(_mm256_set1_pd(double(z)), step);
            const __m256d n2 = _mm256_fmadd_pd(vz, vz, vbase);
            lane_add(l_inv2, _mm256_mul_pd(vw, _mm256_div_pd(one, n2)));
            lane_add(l_inv, _mm256_div_pd(vw, _mm256_sqrt_pd(n2)));

            // ceil(S / n2), corrected with an exact FMA remainder
            __m256d c = _mm256_ceil_pd(_mm256_div_pd(vS, n2));
            const __m256d rem = _mm256_fmsub_pd(c, n2, vS);
            c = _mm256_add_pd(c, _mm256_and_pd(_mm256_cmp_pd(rem, zero, _CMP_LT_OQ), one));
            c = _mm256_sub_pd(c, _mm256_and_pd(_mm256_cmp_pd(rem, n2, _CMP_GE_OQ), one));
            csum = _mm256_add_pd(csum, c);

            const __m256d r_exact = _mm256_fmsub_pd(c, n2, vS);
            const __m256d q = _mm256_mul_pd(c, n2);
            for (std::size_t i = 0; i < na; ++i) {
                const __m256d num = vabs(_mm256_sub_pd(r_exact, _mm256_mul_pd(v_delta[i], q)));
                lane_add(l_dev[i], _mm256_mul_pd(vw, _mm256_div_pd(_mm256_mul_pd(num, vinvS), n2)));
            }
            r.points += 4;
        }
        // row sums of c stay below 2^53, so the double lanes are exact
        r.ceil_sum += static_cast<unsigned __int128>(static_cast<std::uint64_t>(hsum(csum))) *
                      static_cast<std::uint64_t>(w);
        for (; z < y; ++z)
            accumulate_point(base + z * z, w, S, inv_S, a.deltas, r);
    }

    lane_reduce(l_inv2, r.inv_norm2);
    lane_reduce(l_inv, r.inv_norm);
    for (std::size_t i = 0; i < na; ++i)
        lane_reduce(l_dev[i], r.dev[i]);
}

}  // namespace fqre::detail

#else

namespace fqre::detail
{

void
slab_avx2(const SlabArgs& a, SlabResult& r)
{
    slab_scalar(a, r);
}

}  // namespace fqre::detail

#endif
