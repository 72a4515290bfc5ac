#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace fqre
{

inline constexpr int max_n_p = 10;
inline constexpr int max_n_M = 40;

struct MomentumBox
{
    int n_p = 1;

    int n_mu() const { return n_p + 1; }
    std::int64_t half_width() const { return (std::int64_t(1) << n_p) - 1; }
};

struct NuVector
{
    std::int64_t x = 0, y = 0, z = 0;
};

struct NuPreparationSpec
{
    int    n_M   = 10;
    double alpha = 1.0;
};

enum class Kernel
{
    automatic,
    scalar,
    avx2,
};

struct SumOptions
{
    Kernel   kernel  = Kernel::automatic;
    unsigned threads = 1;  // 0 picks hardware concurrency
};

// Every sum over G0 that the cost models need, for one (n_p, n_M) pair.
// ceil_weighted is sum c(nu) / (M 4^{mu-2}); abs_dev[i] is
// sum |alphas[i] c(nu) / (M 4^{mu-2}) - 1/|nu|^2|.
struct LatticeSums
{
    int                 n_p = 0;
    int                 n_M = 0;
    double              inv_norm2 = 0;
    double              inv_norm  = 0;
    double              ceil_weighted = 0;
    std::vector<double> alphas;
    std::vector<double> abs_dev;
    std::uint64_t       points = 0;
};

bool        avx2_available();
Kernel      resolve_kernel(Kernel);
std::string_view kernel_name(Kernel);

LatticeSums lattice_sums(int n_p, int n_M, std::span<const double> alphas, SumOptions opt = {});

// Grid of tuned scale factors spanning [1 - 3/(2M), 1 - 1/M].
inline constexpr int alpha_grid_points = 17;
double tuned_alpha(int n_M, int index);

// Memoized sums with alphas = {1, tuned_alpha(n_M, 0..16)}. Thread safe.
const LatticeSums& cached_lattice_sums(int n_p, int n_M);

int    mu_of(const NuVector&);
double lambda_nu(const MomentumBox&);
double inv_norm_sum(const MomentumBox&);
double p_nu_success(const MomentumBox&, const NuPreparationSpec&);
double amplify(double p);
double lambda_nu_alpha(const MomentumBox&, const NuPreparationSpec&);
double eps_M_exact(const MomentumBox&, const NuPreparationSpec&, double eta, double lambda_zeta, double omega);
double eps_M_bound(const MomentumBox&, int n_M, double eta, double lambda_zeta, double omega);

// Prefactor (eta / 2 pi Omega^{1/3})(eta - 1 + 2 lambda_zeta) shared by both eps_M forms.
double eps_M_prefactor(double eta, double lambda_zeta, double omega);

}  // namespace fqre
