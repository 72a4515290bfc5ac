#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace fqre::detail
{

struct Neumaier
{
    double s = 0, c = 0;

    void
    add(double v)
    {
        const double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }

    void
    merge(const Neumaier& o)
    {
        add(o.s);
        add(o.c);
    }

    double value() const { return s + c; }
};

// Partial sums for the slab of wedge points x >= y >= z >= 0 at fixed x.
struct SlabResult
{
    Neumaier              inv_norm2;
    Neumaier              inv_norm;
    unsigned __int128     ceil_sum = 0;  // sum w * c, exact
    std::vector<Neumaier> dev;
    std::uint64_t         points = 0;
};

struct SlabArgs
{
    std::int64_t            x;
    int                     n_M;
    std::span<const double> deltas;  // 1 - alpha for each scale factor
};

// mu = floor(log2 x) + 2 and S = M 4^{mu-2}
inline int
slab_mu(std::int64_t x)
{
    int m = 0;
    while ((std::int64_t(2) << m) <= x)
        ++m;
    return m + 2;
}

void slab_scalar(const SlabArgs&, SlabResult&);
void slab_avx2(const SlabArgs&, SlabResult&);

}  // namespace fqre::detail

namespace fqre::detail
{

// The deviation |alpha c / S - 1/n2| is formed as |(c n2 - S) - (1 - alpha) c n2| / (S n2):
// the remainder c n2 - S is an exact small integer, so nothing cancels.
inline void
accumulate_point(std::int64_t n2, double w, std::uint64_t S, double inv_S, std::span<const double> deltas, SlabResult& r)
{
    const double d2 = double(n2);
    r.inv_norm2.add(w * (1.0 / d2));
    r.inv_norm.add(w / std::sqrt(d2));
    const std::uint64_t c = (S + std::uint64_t(n2) - 1) / std::uint64_t(n2);
    r.ceil_sum += static_cast<unsigned __int128>(c) * static_cast<std::uint64_t>(w);
    const double rem = double(c * std::uint64_t(n2) - S);
    const double q = double(c) * d2;
    for (std::size_t i = 0; i < deltas.size(); ++i)
        r.dev[i].add(w * ((std::fabs(rem - deltas[i] * q) * inv_S) / d2));
    ++r.points;
}

// Multiplicity of a wedge point: distinct permutations times sign choices.
inline double
wedge_weight(std::int64_t x, std::int64_t y, std::int64_t z)
{
    int perms = (x == y && y == z) ? 1 : (x == y || y == z) ? 3 : 6;
    int signs = 1 << (int(x != 0) + int(y != 0) + int(z != 0));
    return double(perms * signs);
}

}  // namespace fqre::detail
