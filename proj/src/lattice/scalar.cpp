#include "kernels.hpp"

namespace fqre::detail
{

void
slab_scalar(const SlabArgs& a, SlabResult& r)
{
    const int mu = slab_mu(a.x);
    const std::uint64_t S = std::uint64_t(1) << (a.n_M + 2 * (mu - 2));
    const double inv_S = std::ldexp(1.0, -(a.n_M + 2 * (mu - 2)));
    r.dev.assign(a.deltas.size(), Neumaier{});
    const std::int64_t x = a.x;
    for (std::int64_t y = 0; y <= x; ++y)
        for (std::int64_t z = 0; z <= y; ++z)
            accumulate_point(x * x + y * y + z * z, wedge_weight(x, y, z), S, inv_S, a.deltas, r);
}

}  // namespace fqre::detail
