#include "fqre/interaction_picture.hpp"
#include "fqre/errors.hpp"
#include "fqre/momentum_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

namespace fqre
{

namespace
{

constexpr double pi = std::numbers::pi;
constexpr double e_const = std::numbers::e;

void
check_order(int K)
{
    if (K < 2 || K > max_dyson_order)
        throw UnsupportedError("Dyson order K must lie in [2, 16] (sorting-network table), got " + std::to_string(K));
}

// sum_{k>=3} y^k/k!
double
cubic_tail(double y)
{
    if (y > 1.0)
        return std::expm1(y) - y - 0.5 * y * y;
    double term = y * y * y / 6, sum = 0;
    for (int k = 4; term > 1e-300; ++k) {
        sum += term;
        if (term < sum * 1e-18)
            break;
        term *= y / k;
    }
    return sum;
}

struct Lambdas
{
    double T = 0, U = 0, V = 0, U1 = 0, V1 = 0, p_amp = 0;
};

Lambdas
raw_lambdas(const System& s, const DerivedGeometry& g, int n_M)
{
    const auto& sums = cached_lattice_sums(g.n_p, n_M);
    const double o13 = std::cbrt(s.omega);
    const double eta = s.eta, lz = double(g.lambda_zeta);
    const double half = std::ldexp(1.0, g.n_p - 1);
    Lambdas l;
    l.T = 6 * eta * pi * pi * (half - 1) * (half - 1) / (o13 * o13);
    l.U = eta * lz * sums.inv_norm2 / (pi * o13);
    l.V = eta * (eta - 1) * sums.inv_norm2 / (2 * pi * o13);
    l.U1 = l.U * sums.ceil_weighted / sums.inv_norm2;
    l.V1 = l.V * sums.ceil_weighted / sums.inv_norm2;
    l.p_amp = amplify(std::ldexp(sums.ceil_weighted, -(g.n_p + 6)));
    return l;
}

struct IPTerms
{
    std::array<toffoli_t, 8>  head{};   // k-state, inequalities, hadamards, sort, differences, kinetic, reflection
    std::array<toffoli_t, 10> block{};  // one potential block encoding, multiplied by K in the total

    toffoli_t
    total(int K) const
    {
        toffoli_t s = 0;
        for (auto v : head)
            s += v;
        for (auto v : block)
            s += K * v;
        return s;
    }
};

IPTerms
ip_terms(const System& s, const DerivedGeometry& g, const InteractionConfig& c, int b_grad, const DysonSeriesSpec& ds)
{
    const toffoli_t n_p = g.n_p, n_eta = g.n_eta, n_ez = g.n_etazeta, eta = s.eta, lz = g.lambda_zeta;
    const toffoli_t K = c.K, n_t = c.n_t, n_k = ds.n_k;
    toffoli_t ineq = n_k;
    for (int k = 2; k <= c.K - 1; ++k)
        ineq += ceil_log2(ds.sigma[k]);
    IPTerms t;
    t.head[0] = 2 * (3 * n_k + 2 * c.b_r - 9);
    t.head[1] = ineq;
    t.head[2] = 2 * K * n_t;
    t.head[3] = 4 * n_t * sort_comparator_count(c.K);
    t.head[4] = 2 * (K - 1) * (n_t - 1);
    t.head[5] = (K + 1) * (2 * n_t * (n_eta + 2 * n_p) - n_t + b_grad - 2) + 2 * (b_grad - 2);
    t.head[6] = K * (n_ez + 2 * n_eta + 2 + 4 * n_p + c.n_M + n_t + 12) + n_k + 3;
    t.head[7] = 0;
    t.block[0] = 10;
    t.block[1] = 2 * (4 * n_ez + 2 * c.b_r - 9);
    t.block[2] = 14 * n_eta + 8 * c.b_r - 36;
    t.block[3] = 3 * (3 * n_p * n_p + 15 * n_p - 7 + 4 * toffoli_t(c.n_M) * (n_p + 1));
    t.block[4] = lz > 0 ? lz + qrom_erase_cost(std::uint64_t(lz)) : 0;
    t.block[5] = 12 * eta * n_p + 4 * eta - 4;
    t.block[6] = 24 * n_p;
    t.block[7] = 6 * n_p * c.n_R;
    t.block[8] = 12 * n_p * n_p + 2 * n_p + 8 * n_eta;
    t.block[9] = 0;
    return t;
}

void
check_config(const DerivedGeometry& g, const InteractionConfig& c)
{
    check_order(c.K);
    const bool jellium = g.lambda_zeta == 0;
    if (c.n_t < 1 || c.n_M < 1 || c.b_r < 1 || c.b_T < 1 || c.n_R < (jellium ? 0 : 1))
        throw DomainError("interaction config: bit counts must be >= 1 (n_R may be 0 only without nuclei)");
}

}  // namespace

std::uint64_t
sigma(int k, int K)
{
    check_order(K);
    if (k < 0 || k > K)
        throw DomainError("sigma: need 0 <= k <= K");
    // K!/l! for l = K down to k
    std::uint64_t term = 1, sum = 0;
    for (int l = K; l >= k; --l) {
        sum += term;
        term *= std::uint64_t(l);
    }
    return sum;
}

DysonSeriesSpec
dyson_series(int K)
{
    check_order(K);
    DysonSeriesSpec d;
    d.K = K;
    d.sigma.resize(std::size_t(K) + 1);
    for (int k = 0; k <= K; ++k)
        d.sigma[k] = sigma(k, K);
    d.n_k = ceil_log2(d.sigma[0]);
    return d;
}

int
b_grad_of(int b_T, double lambda_UV, double omega)
{
    if (!(lambda_UV > 0) || !(omega > 0))
        throw DomainError("b_grad: lambda_U + lambda_V and omega must be positive");
    const double arg = pi / (lambda_UV * std::cbrt(omega) * std::cbrt(omega));
    const int b = b_T - int(std::ceil(std::log2(arg)));
    if (b < 2)
        throw DomainError("b_grad = " + std::to_string(b) + " < 2; increase b_T");
    return b;
}

double
time_discretization_bracket(double x, int n_t)
{
    const double y = std::ldexp(x, -n_t);
    return std::ldexp(cubic_tail(y), n_t);
}

double
exp_tail(double x, int K)
{
    double term = 1;
    for (int k = 1; k <= K + 1; ++k)
        term *= x / k;
    double sum = 0;
    for (int k = K + 2; term > 0; ++k) {
        sum += term;
        if (term < sum * 1e-18)
            break;
        term *= x / k;
    }
    return sum;
}

std::vector<CostItem>
interaction_step_cost(const System& s, const DerivedGeometry& g, const InteractionConfig& c, int b_grad)
{
    const DysonSeriesSpec ds = dyson_series(c.K);
    const IPTerms t = ip_terms(s, g, c, b_grad, ds);
    const toffoli_t K = c.K;
    return {
        {"k_equal_superposition", t.head[0], "over Sigma(0) values"},
        {"k_inequality_tests", t.head[1], ""},
        {"time_hadamards", t.head[2], "controlled Hadamards for K times"},
        {"time_sort", t.head[3], "4 n_t Srt(K)"},
        {"time_differences", t.head[4], ""},
        {"kinetic_phasing", t.head[5], "K+1 exponentials of T"},
        {"potential_flags", K * t.block[0], "K block encodings of U+V"},
        {"potential_uv_preparation", K * t.block[1], ""},
        {"potential_ij_superposition", K * t.block[2], ""},
        {"potential_nu_preparation", K * t.block[3], "amplitude amplified"},
        {"potential_nuclear_qrom", K * t.block[4], g.lambda_zeta > 0 ? "" : "no nuclei"},
        {"potential_controlled_swaps", K * t.block[5], ""},
        {"potential_momentum_add_subtract", K * t.block[6], ""},
        {"potential_nuclear_phase", K * t.block[7], ""},
        {"potential_kinetic_update", K * t.block[8], "momentum-sum update of the kinetic register"},
        {"reflection", t.head[6], "closed-form qubit count gives 2K fewer"},
    };
}

double
interaction_p_eq(const System& s, const DerivedGeometry& g, const InteractionConfig& c)
{
    const Lambdas l = raw_lambdas(s, g, c.n_M);
    const DysonSeriesSpec ds = dyson_series(c.K);
    const double e = equal_superposition_success(std::uint64_t(s.eta), c.b_r);
    return l.p_amp * equal_superposition_success(ds.sigma[0], c.b_r) *
           equal_superposition_success(std::uint64_t(s.eta + 2 * g.lambda_zeta), c.b_r) * e * e /
           (1 + std::ldexp(1.0, -(2 * c.b_T + 1)));
}

ErrorBudget
interaction_error_terms(const System& s, const DerivedGeometry& g, const InteractionConfig& c)
{
    check_config(g, c);
    const Lambdas l = raw_lambdas(s, g, c.n_M);
    const MomentumBox box{g.n_p};
    const double eta = s.eta, lz = double(g.lambda_zeta);
    const double uv = l.U + l.V;
    ErrorBudget b;
    b.eps_total = s.eps;
    b.eps_K = uv * exp_tail(1.0, c.K);
    b.eps_M = eps_M_bound(box, c.n_M, eta, lz, s.omega);
    b.eps_R = lz > 0 ? eta * lz * inv_norm_sum(box) * std::ldexp(1.0, -c.n_R) / std::cbrt(s.omega) : 0.0;
    b.eps_t = (2 * l.T + l.T * l.T / uv) * time_discretization_bracket(1.0, c.n_t);
    const double sys = b.systematic();
    if (!(sys < s.eps)) {
        std::ostringstream os;
        os << "systematic error " << sys << " Ha (eps_K " << b.eps_K << ", eps_M " << b.eps_M << ", eps_R " << b.eps_R
           << ", eps_t " << b.eps_t << ") leaves no room for phase estimation within " << s.eps << " Ha";
        throw InfeasibleError(os.str());
    }
    b.eps_pha = std::sqrt(s.eps * s.eps - sys * sys);
    return b;
}

std::int64_t
interaction_reps(const System& s, const DerivedGeometry& g, const InteractionConfig& c, double eps_pha)
{
    if (s.eta <= 1)
        throw DomainError("interaction_reps: eta = 1 makes the 1/(1 - 1/eta) factor singular");
    if (!(eps_pha > 0))
        throw DomainError("interaction_reps: eps_pha must be positive");
    const Lambdas l = raw_lambdas(s, g, c.n_M);
    const double v = pi * e_const * (l.U1 + l.V1 / (1 - 1.0 / s.eta)) / (2 * eps_pha * interaction_p_eq(s, g, c));
    if (!(v < 9.0e18))
        throw UnsupportedError("step count overflows 64-bit integers");
    return std::int64_t(std::ceil(v));
}

std::vector<QubitItem>
interaction_qubit_count(const System& s, const DerivedGeometry& g, const InteractionConfig& c, int b_grad, std::int64_t reps)
{
    const DysonSeriesSpec ds = dyson_series(c.K);
    const std::int64_t n_p = g.n_p, n_eta = g.n_eta, n_ez = g.n_etazeta, n_M = c.n_M, n_R = c.n_R;
    const std::int64_t K = c.K, n_t = c.n_t, n_k = ds.n_k;
    std::int64_t kept_ineq = 0;
    for (int k = 2; k <= c.K - 1; ++k)
        kept_ineq += ceil_log2(ds.sigma[k]);
    const int lg = ceil_log2(std::uint64_t(std::max<std::int64_t>(reps, 1)));

    const std::int64_t nu_temp = (3 * n_p + 2) + (2 * n_p + 1) + (3 * n_p * n_p + n_p + 1 + 4 * n_M * (n_p + 1)) + 1 + 2;
    const std::int64_t arith = std::max<std::int64_t>(2 * n_p * n_p + 5 * n_p + n_eta, 2 * (n_R - 2));
    const std::int64_t temp_potential = arith + nu_temp + 3 + 2;
    const std::int64_t temp_phasing = 2 * n_t * (n_eta + 2 * n_p) + n_t + b_grad - 4;
    const std::int64_t temp_check = (n_ez + 2 * n_eta + 4 * n_p + n_M + 12) - 1;

    return {
        {"k_equal_superposition", n_k + 2, false},
        {"k_inequality_outputs", n_k + 1 + kept_ineq, false},
        {"time_registers", K * n_t, false},
        {"sort_comparator_bits", sort_comparator_count(c.K), false},
        {"kinetic_energy_register", n_eta + 2 * n_p, false},
        {"kinetic_phase_gradient", b_grad, false},
        {"block_success_flags", K - 1, false},
        {"sine_direction_control", 1, false},
        {"system_momenta", 3 * std::int64_t(s.eta) * n_p, false},
        {"phase_estimation_control", 2 * lg - 1, false},
        {"phase_gradient", n_R + 1, false},
        {"t_state", 1, false},
        {"uv_equal_superposition", n_ez + 1, false},
        {"ij_registers", 2 * (n_eta + 1), false},
        {"nu_register_mu_and_superposition", 3 * (n_p + 1) + n_p + n_M, false},
        {"nuclear_position_output", 3 * n_R, false},
        {"overflow", 6, false},
        {"temporaries", std::max({temp_potential, temp_phasing, temp_check}), true},
    };
}

namespace
{

struct IPEval
{
    ErrorBudget  budget;
    std::int64_t reps = 0;
    int          b_grad = 0;
    toffoli_t    per_step = 0;
    toffoli_t    total = 0;
};

// Everything that does not depend on n_R, n_t, K or b_T, computed once per n_M.
struct IPContext
{
    const System&          s;
    const DerivedGeometry& g;
    Lambdas                l;
    double                 eps_M = 0;
    double                 inv_norm = 0;
    double                 eq_uv = 0, eq_eta = 0;
    int                    b_r = 0;

    IPContext(const System& s_, const DerivedGeometry& g_, int n_M, int b_r_) : s(s_), g(g_), b_r(b_r_)
    {
        l = raw_lambdas(s, g, n_M);
        eps_M = eps_M_bound(MomentumBox{g.n_p}, n_M, s.eta, double(g.lambda_zeta), s.omega);
        inv_norm = inv_norm_sum(MomentumBox{g.n_p});
        eq_uv = equal_superposition_success(std::uint64_t(s.eta + 2 * g.lambda_zeta), b_r);
        eq_eta = equal_superposition_success(std::uint64_t(s.eta), b_r);
    }
};

std::optional<IPEval>
fast_evaluate(const IPContext& x, const DysonSeriesSpec& ds, double eq_sigma, const InteractionConfig& c, bool& overflow)
{
    const System& s = x.s;
    const double uv = x.l.U + x.l.V;
    const double arg = pi / (uv * std::cbrt(s.omega) * std::cbrt(s.omega));
    const int b_grad = c.b_T - int(std::ceil(std::log2(arg)));
    if (b_grad < 2)
        return std::nullopt;
    IPEval e;
    e.b_grad = b_grad;
    auto& b = e.budget;
    b.eps_total = s.eps;
    b.eps_K = uv * exp_tail(1.0, c.K);
    b.eps_M = x.eps_M;
    b.eps_R = x.g.lambda_zeta > 0
                  ? double(s.eta) * double(x.g.lambda_zeta) * x.inv_norm * std::ldexp(1.0, -c.n_R) / std::cbrt(s.omega)
                  : 0.0;
    b.eps_t = (2 * x.l.T + x.l.T * x.l.T / uv) * time_discretization_bracket(1.0, c.n_t);
    const double sys = b.systematic();
    if (!(sys < s.eps))
        return std::nullopt;
    b.eps_pha = std::sqrt(s.eps * s.eps - sys * sys);
    const double P = x.l.p_amp * eq_sigma * x.eq_uv * x.eq_eta * x.eq_eta / (1 + std::ldexp(1.0, -(2 * c.b_T + 1)));
    const double v = pi * e_const * (x.l.U1 + x.l.V1 / (1 - 1.0 / s.eta)) / (2 * b.eps_pha * P);
    if (!(v < 9.0e18)) {
        overflow = true;
        return std::nullopt;
    }
    e.reps = std::int64_t(std::ceil(v));
    e.per_step = ip_terms(s, x.g, c, b_grad, ds).total(c.K);
    if (__builtin_mul_overflow(e.reps, e.per_step, &e.total)) {
        overflow = true;
        return std::nullopt;
    }
    return e;
}

}  // namespace

std::vector<std::string>
interaction_config_keys()
{
    return {"K", "n_t", "n_M", "n_R", "b_r", "b_T"};
}

CostReport
interaction_total_cost(const System& s, const InteractionConfig& c)
{
    const DerivedGeometry g = derive(s);
    check_config(g, c);
    const Lambdas l = raw_lambdas(s, g, c.n_M);
    const int b_grad = b_grad_of(c.b_T, l.U + l.V, s.omega);
    const ErrorBudget budget = interaction_error_terms(s, g, c);
    const std::int64_t reps = interaction_reps(s, g, c, budget.eps_pha);

    CostReport r;
    r.algorithm = "interaction";
    r.steps = reps;
    r.breakdown = interaction_step_cost(s, g, c, b_grad);
    r.per_step_total = sum_items(r.breakdown);
    r.total_toffolis = checked_product(reps, r.per_step_total);
    for (const auto& it : r.breakdown)
        if (it.value < 0)
            r.valid = false;
    r.qubit_ledger = interaction_qubit_count(s, g, c, b_grad, reps);
    r.logical_qubits = sum_items(r.qubit_ledger);
    r.config = {{"K", c.K}, {"n_t", c.n_t}, {"n_M", c.n_M}, {"n_R", c.n_R}, {"b_r", c.b_r}, {"b_T", c.b_T}};
    const DysonSeriesSpec ds = dyson_series(c.K);
    r.lambdas = {{"lambda_T", l.T}, {"lambda_U", l.U}, {"lambda_V", l.V}, {"lambda_U_1", l.U1}, {"lambda_V_1", l.V1},
                 {"p_nu_amp", l.p_amp}, {"P_eq", interaction_p_eq(s, g, c)},
                 {"lambda_effective", e_const * (l.U1 + l.V1 / (1 - 1.0 / s.eta)) / interaction_p_eq(s, g, c)},
                 {"b_grad", double(b_grad)}, {"n_k", double(ds.n_k)}, {"sigma_0", double(ds.sigma[0])}};
    r.budget = budget;
    r.notes.push_back("excludes the O(log 1/eps) control-state cost and the O((lambda dE)^2), O(1) step corrections");
    r.notes.push_back("eps_M uses (eta - 1 + 2 lambda_zeta) and eps_R uses Omega^(1/3); the theorem statement prints (eta + 2 lambda_zeta) and Omega^(2/3)");
    r.notes.push_back("reflection term includes +2K relative to the closed-form qubit count");
    if (g.lambda_zeta == 0)
        r.notes.push_back("no nuclei: U channel, nuclear QROM and nuclear phasing vanish");
    if (!r.valid)
        r.notes.push_back("negative brace term: bit widths too small for the cost formulas");
    return r;
}

std::pair<InteractionConfig, CostReport>
interaction_optimize(const System& s, const InteractionSearch& search)
{
    const DerivedGeometry g = derive(s);
    const MomentumBox box{g.n_p};
    const double eta = s.eta, lz = double(g.lambda_zeta);
    const double share = s.eps / 10;
    for (const auto& [k, v] : search.fixed) {
        const auto keys = interaction_config_keys();
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ParseError("unknown interaction parameter '" + k + "'");
    }
    auto axis = [&](const std::string& key, std::vector<int> dflt) {
        auto it = search.fixed.find(key);
        return it == search.fixed.end() ? dflt : std::vector<int>{it->second};
    };
    auto around = [](int seed, int w, int lo) {
        std::vector<int> v;
        for (int d = -w; d <= w; ++d)
            if (seed + d >= lo)
                v.push_back(seed + d);
        return v;
    };

    const int n_M0 = std::max(1, int(std::ceil(std::log2(eps_M_bound(box, 0, eta, lz, s.omega) / share))));
    int n_R0 = 0;
    if (lz > 0)
        n_R0 = std::max(1, int(std::ceil(std::log2(eta * lz * inv_norm_sum(box) / (std::cbrt(s.omega) * share)))));
    std::vector<int> ax_M = axis("n_M", around(n_M0, 4, 1));
    ax_M.erase(std::remove_if(ax_M.begin(), ax_M.end(), [](int v) { return v > max_n_M; }), ax_M.end());
    if (ax_M.empty())
        throw UnsupportedError("target error needs n_M above " + std::to_string(max_n_M));
    const std::vector<int> ax_R = axis("n_R", lz > 0 ? around(n_R0, 4, 1) : std::vector<int>{0});
    std::vector<int> ax_K(max_dyson_order - 1);
    for (int k = 2; k <= max_dyson_order; ++k)
        ax_K[k - 2] = k;
    ax_K = axis("K", ax_K);
    const std::vector<int> ax_bT = axis("b_T", {6, 7, 8, 9, 10});
    const std::vector<int> ax_br = axis("b_r", {7});

    // n_t seed: smallest width whose discretization error fits in eps/10
    const Lambdas l0 = raw_lambdas(s, g, ax_M[ax_M.size() / 2]);
    int n_t0 = 1;
    while (n_t0 < 60 && (2 * l0.T + l0.T * l0.T / (l0.U + l0.V)) * time_discretization_bracket(1.0, n_t0) > share)
        ++n_t0;
    const std::vector<int> ax_t = axis("n_t", around(n_t0, 3, 1));

    std::vector<DysonSeriesSpec> series;
    for (int K : ax_K)
        series.push_back(dyson_series(K));

    std::optional<std::pair<InteractionConfig, IPEval>> best;
    bool overflow = false;
    for (int n_M : ax_M)
        for (int b_r : ax_br) {
            const IPContext ctx(s, g, n_M, b_r);
            for (std::size_t ki = 0; ki < ax_K.size(); ++ki) {
                const double eq_sigma = equal_superposition_success(series[ki].sigma[0], b_r);
                for (int n_R : ax_R)
                    for (int n_t : ax_t)
                        for (int b_T : ax_bT) {
                            const InteractionConfig c{ax_K[ki], n_t, n_M, n_R, b_r, b_T};
                            auto e = fast_evaluate(ctx, series[ki], eq_sigma, c, overflow);
                            if (e && (!best || e->total < best->second.total))
                                best.emplace(c, *e);
                        }
            }
        }
    if (!best && overflow)
        throw UnsupportedError("interaction-picture Toffoli total overflows 64-bit integers");
    if (!best)
        throw InfeasibleError("no feasible interaction-picture parameters near the eps/10 seeds");
    return {best->first, interaction_total_cost(s, best->first)};
}

unsigned __int128
generic_sigma(int k, int K, std::int64_t c, std::int64_t d)
{
    check_order(K);
    if (k < 0 || k > K || c < 1 || d < 1)
        throw DomainError("generic_sigma: need 0 <= k <= K and positive c, d");
    using u128 = unsigned __int128;
    constexpr u128 limit = u128(1) << 120;
    // term(l) = K!/l! c^l d^{K-l}; walk l = K down to k
    u128 cK = 1;
    for (int i = 0; i < K; ++i) {
        cK *= u128(c);
        if (cK > limit)
            throw UnsupportedError("generic sigma overflows 128-bit integers");
    }
    u128 term = cK, sum = 0;
    for (int l = K; l >= k; --l) {
        sum += term;
        if (sum > limit)
            throw UnsupportedError("generic sigma overflows 128-bit integers");
        if (l > k) {
            term = term / u128(c) * u128(d) * u128(l);
            if (term > limit)
                throw UnsupportedError("generic sigma overflows 128-bit integers");
        }
    }
    return sum;
}

GenericIPCost
generic_cost(const GenericIPSpec& sp)
{
    check_order(sp.K);
    if (sp.c < 1 || sp.d < 1 || std::gcd(sp.c, sp.d) != 1)
        throw DomainError("generic_cost: c and d must be coprime positive integers");
    if (!(sp.lambda_B > 0) || !(sp.t > 0) || sp.n_t < 1 || sp.n_theta < 1 || sp.b_r < 1 || sp.n_B < 0)
        throw DomainError("generic_cost: invalid parameters");
    const double reps_real = sp.lambda_B * sp.t * double(sp.d) / double(sp.c);
    const double reps_round = std::round(reps_real);
    if (reps_round < 1 || std::fabs(reps_real - reps_round) > 1e-9 * reps_round)
        throw DomainError("generic_cost: lambda_B t d / c must be a positive integer");

    GenericIPCost out;
    const toffoli_t r = toffoli_t(reps_round);
    out.reps = r;
    std::vector<unsigned __int128> sig(std::size_t(sp.K) + 1);
    for (int k = 0; k <= sp.K; ++k)
        sig[k] = generic_sigma(k, sp.K, sp.c, sp.d);
    out.n_k = ceil_log2(sig[0]);
    toffoli_t logs = -1;
    for (int k = 0; k <= sp.K - 1; ++k)
        logs += ceil_log2(sig[k]);

    const toffoli_t K = sp.K, n_t = sp.n_t, n_k = out.n_k;
    out.toffolis = 6 * r * (3 * n_k + 2 * sp.b_r - 9) + 3 * r * logs + 6 * r * K * n_t +
                   12 * r * (n_t - 1) * sort_comparator_count(sp.K) + 6 * r * (K - 1) * (n_t - 1) +
                   2 * r * (sp.n_theta - 3) + 2 * r * (n_k + K * (n_t + sp.n_B));
    out.controlled_expA_calls = 3 * (r * (K + 1) * n_t + 2);
    out.prep_B_calls = 6 * r * K;
    out.sel_B_calls = 3 * r * K;

    const double x = double(sp.c) / double(sp.d);
    const double ratio = double(static_cast<long double>(sig[0]) / std::ldexp(1.0L, out.n_k));
    out.success_ratio = equal_superposition_success_x(ratio, sp.b_r) / std::exp(x);
    out.eps_K = exp_tail(x, sp.K);
    out.eps_theta = std::ldexp(pi, -sp.n_theta);
    const double a = sp.norm_A / sp.lambda_B;
    out.eps_t = (2 * a + a * a) * time_discretization_bracket(x, sp.n_t);
    const double ek = out.eps_K + out.eps_theta;
    out.error = double(r) * ek * (ek * ek + 3 * ek + 4) / 2 + double(r) * out.eps_t;

    if (out.success_ratio < 0.5) {
        std::ostringstream os;
        os << "success constraint violated: Eq(Sigma(0), b_r)/exp(c/d) = " << out.success_ratio << " < 1/2";
        throw InfeasibleError(os.str());
    }
    if (out.error > sp.eps) {
        std::ostringstream os;
        os << "error constraint violated: total " << out.error << " > eps " << sp.eps;
        throw InfeasibleError(os.str());
    }
    return out;
}

}  // namespace fqre
