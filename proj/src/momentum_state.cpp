#include "fqre/momentum_state.hpp"
#include "fqre/errors.hpp"
#include "fqre/parallel.hpp"
#include "lattice/kernels.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

namespace fqre
{

bool
avx2_available()
{
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Kernel
resolve_kernel(Kernel k)
{
    if (k == Kernel::automatic)
        return avx2_available() ? Kernel::avx2 : Kernel::scalar;
    if (k == Kernel::avx2 && !avx2_available())
        throw UnsupportedError("avx2 kernel requested but the CPU lacks AVX2/FMA");
    return k;
}

std::string_view
kernel_name(Kernel k)
{
    switch (k) {
    case Kernel::automatic: return "automatic";
    case Kernel::scalar:    return "scalar";
    case Kernel::avx2:      return "avx2";
    }
    return "?";
}

LatticeSums
lattice_sums(int n_p, int n_M, std::span<const double> alphas, SumOptions opt)
{
    if (n_p < 1 || n_p > max_n_p)
        throw UnsupportedError("n_p must lie in [1, " + std::to_string(max_n_p) + "], got " + std::to_string(n_p));
    if (n_M < 1 || n_M > max_n_M)
        throw UnsupportedError("n_M must lie in [1, " + std::to_string(max_n_M) + "], got " + std::to_string(n_M));

    const Kernel k = resolve_kernel(opt.kernel);
    auto slab = (k == Kernel::avx2) ? detail::slab_avx2 : detail::slab_scalar;

    const std::int64_t L = (std::int64_t(1) << n_p) - 1;
    std::vector<double> deltas(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i)
        deltas[i] = 1.0 - alphas[i];
    std::vector<detail::SlabResult> slabs(static_cast<std::size_t>(L));
    parallel_for(slabs.size(), opt.threads, [&](std::size_t i) {
        slab(detail::SlabArgs{std::int64_t(i) + 1, n_M, deltas}, slabs[i]);
    });

    detail::Neumaier inv2, inv1;
    std::vector<detail::Neumaier> dev(alphas.size());
    detail::Neumaier ceil_w;
    LatticeSums out;
    out.n_p = n_p;
    out.n_M = n_M;
    for (std::size_t i = 0; i < slabs.size(); ++i) {
        const auto& s = slabs[i];
        inv2.merge(s.inv_norm2);
        inv1.merge(s.inv_norm);
        for (std::size_t a = 0; a < dev.size(); ++a)
            dev[a].merge(s.dev[a]);
        const int mu = detail::slab_mu(std::int64_t(i) + 1);
        // Split the exact integer so both halves convert without rounding loss.
        const auto hi = static_cast<std::uint64_t>(s.ceil_sum >> 64);
        const auto lo = static_cast<std::uint64_t>(s.ceil_sum);
        const int shift = n_M + 2 * (mu - 2);
        const auto lo_hi = lo >> 32, lo_lo = lo & 0xffffffffu;
        ceil_w.add(std::ldexp(double(hi), 64 - shift));
        ceil_w.add(std::ldexp(double(lo_hi), 32 - shift));
        ceil_w.add(std::ldexp(double(lo_lo), -shift));
        out.points += s.points;
    }
    out.inv_norm2 = inv2.value();
    out.inv_norm = inv1.value();
    out.ceil_weighted = ceil_w.value();
    out.alphas.assign(alphas.begin(), alphas.end());
    out.abs_dev.resize(dev.size());
    for (std::size_t a = 0; a < dev.size(); ++a)
        out.abs_dev[a] = dev[a].value();
    return out;
}

double
tuned_alpha(int n_M, int index)
{
    if (index < 0 || index >= alpha_grid_points)
        throw DomainError("alpha grid index out of range");
    const double inv_2M = std::ldexp(1.0, -(n_M + 1));
    return 1.0 - (3.0 - double(index) / double(alpha_grid_points - 1)) * inv_2M;
}

const LatticeSums&
cached_lattice_sums(int n_p, int n_M)
{
    static std::mutex mx;
    static std::map<std::pair<int, int>, std::shared_ptr<const LatticeSums>> cache;
    {
        std::lock_guard lk(mx);
        auto it = cache.find({n_p, n_M});
        if (it != cache.end())
            return *it->second;
    }
    std::vector<double> alphas{1.0};
    for (int i = 0; i < alpha_grid_points; ++i)
        alphas.push_back(tuned_alpha(n_M, i));
    auto sums = std::make_shared<const LatticeSums>(lattice_sums(n_p, n_M, alphas));
    std::lock_guard lk(mx);
    auto [it, inserted] = cache.emplace(std::pair{n_p, n_M}, sums);
    return *it->second;
}

int
mu_of(const NuVector& v)
{
    const std::int64_t m = std::max({std::llabs(v.x), std::llabs(v.y), std::llabs(v.z)});
    if (m == 0)
        throw DomainError("mu_of: zero vector has no momentum shell");
    return detail::slab_mu(m);
}

double
lambda_nu(const MomentumBox& box)
{
    return cached_lattice_sums(box.n_p, 1).inv_norm2;
}

double
inv_norm_sum(const MomentumBox& box)
{
    return cached_lattice_sums(box.n_p, 1).inv_norm;
}

double
p_nu_success(const MomentumBox& box, const NuPreparationSpec& spec)
{
    return std::ldexp(cached_lattice_sums(box.n_p, spec.n_M).ceil_weighted, -(box.n_p + 6));
}

double
amplify(double p)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError("amplify: probability outside [0, 1]");
    const double s = std::sin(3 * std::asin(std::sqrt(p)));
    return s * s;
}

double
lambda_nu_alpha(const MomentumBox& box, const NuPreparationSpec& spec)
{
    return spec.alpha * cached_lattice_sums(box.n_p, spec.n_M).ceil_weighted;
}

double
eps_M_prefactor(double eta, double lambda_zeta, double omega)
{
    if (!(omega > 0) || eta < 1 || lambda_zeta < 0)
        throw DomainError("eps_M: need eta >= 1, lambda_zeta >= 0, omega > 0");
    return eta / (2 * std::numbers::pi * std::cbrt(omega)) * (eta - 1 + 2 * lambda_zeta);
}

double
eps_M_exact(const MomentumBox& box, const NuPreparationSpec& spec, double eta, double lambda_zeta, double omega)
{
    const double pre = eps_M_prefactor(eta, lambda_zeta, omega);
    const auto& c = cached_lattice_sums(box.n_p, spec.n_M);
    for (std::size_t i = 0; i < c.alphas.size(); ++i)
        if (c.alphas[i] == spec.alpha)
            return pre * c.abs_dev[i];
    const double a[] = {spec.alpha};
    return pre * lattice_sums(box.n_p, spec.n_M, a).abs_dev[0];
}

double
eps_M_bound(const MomentumBox& box, int n_M, double eta, double lambda_zeta, double omega)
{
    const double pre = eps_M_prefactor(eta, lambda_zeta, omega);
    const int n_p = box.n_p;
    const double shape = 7 * std::ldexp(1.0, n_p + 1) - 9.0 * n_p - 11 - 3 * std::ldexp(1.0, -n_p);
    return 4 * pre * std::ldexp(1.0, -n_M) * shape;
}

}  // namespace fqre
