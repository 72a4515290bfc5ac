#include "fqre/qubitization.hpp"
#include "fqre/errors.hpp"
#include "fqre/momentum_state.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fqre
{

namespace
{

constexpr double pi = std::numbers::pi;

std::int64_t
ceil_to_int(double v)
{
    if (!(v < 9.0e18))
        throw UnsupportedError("step count overflows 64-bit integers");
    return std::int64_t(std::ceil(v));
}

int
ceil_log2_steps(std::int64_t steps)
{
    return ceil_log2(std::uint64_t(std::max<std::int64_t>(steps, 1)));
}

// Terms of the per-step brace in a fixed order.
struct StepTerms
{
    std::array<toffoli_t, 11> v{};

    toffoli_t
    total() const
    {
        toffoli_t s = 0;
        for (auto x : v)
            s += x;
        return s;
    }
};

StepTerms
step_terms(const System& s, const DerivedGeometry& g, const QubitizationConfig& c)
{
    const toffoli_t n_p = g.n_p, n_eta = g.n_eta, n_ez = g.n_etazeta, eta = s.eta, lz = g.lambda_zeta;
    StepTerms t;
    t.v[0] = 2 * (c.n_T + 4 * n_ez + 2 * c.b_r - 12);
    t.v[1] = 14 * n_eta + 8 * c.b_r - 36;
    t.v[2] = c.A_amp() * (3 * n_p * n_p + 15 * n_p - 7 + 4 * toffoli_t(c.n_M) * (n_p + 1));
    t.v[3] = lz > 0 ? lz + qrom_erase_cost(std::uint64_t(lz)) : 0;
    t.v[4] = 2 * (2 * n_p + 2 * c.b_r - 7);
    t.v[5] = 12 * eta * n_p;
    t.v[6] = 5 * (n_p - 1) + 2;
    t.v[7] = 24 * n_p;
    t.v[8] = nuclear_phase_cost(g.n_p, c.n_R, c.refined);
    t.v[9] = 18;
    t.v[10] = n_ez + 2 * n_eta + 6 * n_p + c.n_M + 16;
    return t;
}

struct Evaluation
{
    LambdaSet    lam;
    ErrorBudget  budget;
    std::int64_t steps = 0;
    toffoli_t    per_step = 0;
    toffoli_t    total = 0;
};

LambdaSet
full_lambdas(const System& s, const DerivedGeometry& g, const QubitizationConfig& c)
{
    LambdaSet l = lambdas(s, g, c.n_M, c.alpha());
    l.P_eq = p_eq(s, c.b_r);
    l.lambda_effective = effective_lambda(l, l.p_nu, l.P_eq, c.amplitude_amplification, s.eta);
    return l;
}

}  // namespace

double
QubitizationConfig::alpha() const
{
    return alpha_index < 0 ? 1.0 : tuned_alpha(n_M, alpha_index);
}

LambdaSet
lambdas(const System& s, const DerivedGeometry& g, int n_M, double alpha)
{
    if (!(s.omega > 0) || s.eta < 1)
        throw DomainError("lambdas: need omega > 0 and eta >= 1");
    const double o13 = std::cbrt(s.omega);
    const double o23 = o13 * o13;
    const double eta = s.eta, lz = double(g.lambda_zeta);
    const double half = std::ldexp(1.0, g.n_p - 1);
    const auto& sums = cached_lattice_sums(g.n_p, n_M);

    LambdaSet l;
    l.lambda_T = 6 * eta * pi * pi * (half - 1) * (half - 1) / o23;
    l.lambda_T_prime = 6 * eta * pi * pi * half * half / o23;
    l.lambda_nu = sums.inv_norm2;
    l.lambda_nu_1 = alpha * sums.ceil_weighted;
    l.lambda_U = eta * lz * l.lambda_nu / (pi * o13);
    l.lambda_V = eta * (eta - 1) * l.lambda_nu / (2 * pi * o13);
    l.lambda_U_1 = l.lambda_U * l.lambda_nu_1 / l.lambda_nu;
    l.lambda_V_1 = l.lambda_V * l.lambda_nu_1 / l.lambda_nu;
    l.p_nu = std::ldexp(sums.ceil_weighted, -(g.n_p + 6));
    l.p_nu_amp = amplify(l.p_nu);
    return l;
}

double
p_eq(const System& s, int b_r)
{
    const auto lz = lambda_zeta_of(s);
    const double e = equal_superposition_success(std::uint64_t(s.eta), b_r);
    return equal_superposition_success(3, 8) * equal_superposition_success(std::uint64_t(s.eta + 2 * lz), b_r) * e * e;
}

double
effective_lambda(const LambdaSet& l, double p_nu, double P_eq, bool amplified, int eta)
{
    if (eta <= 1)
        throw DomainError("effective_lambda: eta = 1 makes the 1/(1 - 1/eta) factor singular");
    if (!(p_nu > 0 && p_nu < 1))
        throw DomainError("effective_lambda: p_nu must lie in (0, 1)");
    const double p = amplified ? amplify(p_nu) : p_nu;
    const double a = l.lambda_T_prime + l.lambda_U_1 + l.lambda_V_1;
    const double b = (l.lambda_U_1 + l.lambda_V_1 / (1 - 1.0 / eta)) / p;
    return std::max(a, b) / P_eq;
}

toffoli_t
nuclear_phase_cost(int n_p, int n_R, bool refine)
{
    if (!refine)
        return 6 * toffoli_t(n_p) * n_R;
    if (n_R > n_p)
        return 3 * (2 * toffoli_t(n_p) * n_R - toffoli_t(n_p) * (n_p + 1) - 1);
    return 3 * toffoli_t(n_R) * (n_R - 1);
}

std::vector<CostItem>
qubitization_step_cost(const System& s, const DerivedGeometry& g, const QubitizationConfig& c)
{
    const StepTerms t = step_terms(s, g, c);
    std::vector<CostItem> items = {
        {"tuv_and_uv_preparation", t.v[0], "T vs U+V rotation and U vs V equal superposition, prepared and inverted"},
        {"ij_superposition", t.v[1], "superpositions over electron pairs i, j"},
        {"nu_preparation", t.v[2], c.amplitude_amplification ? "amplitude amplified, factor 3" : "single attempt"},
        {"nuclear_qrom", t.v[3], g.lambda_zeta > 0 ? "QROM over nuclear charges plus erasure" : "no nuclei"},
        {"w_r_s_preparation", t.v[4], "tabulated as 2(2n_p+9) at b_r=8"},
        {"controlled_swaps", t.v[5], "tabulated as 12 eta n_p + 4 eta - 8 including unary iteration"},
        {"kinetic_select", t.v[6], ""},
        {"momentum_add_subtract", t.v[7], ""},
        {"nuclear_phase", t.v[8], c.refined ? "per-bit phasing count" : "6 n_p n_R"},
        {"tuv_flags", t.v[9], ""},
        {"reflection", t.v[10], "reflection on the preparation ancillae"},
    };
    if (t.v[3] > 0) {
        const auto lz = std::uint64_t(g.lambda_zeta);
        std::ostringstream os;
        os << "erasure " << qrom_erase_cost(lz) << " (k over powers of two: " << qrom_erase_cost_pow2_k(lz) << ")";
        items[3].note = os.str();
    }
    return items;
}

ErrorBudget
qubitization_error_terms(const System& s, const DerivedGeometry& g, const QubitizationConfig& c, double lambda_effective)
{
    const MomentumBox box{g.n_p};
    const double eta = s.eta, lz = double(g.lambda_zeta);
    ErrorBudget b;
    b.eps_total = s.eps;
    b.eps_M = c.refined ? eps_M_exact(box, {c.n_M, c.alpha()}, eta, lz, s.omega)
                        : eps_M_bound(box, c.n_M, eta, lz, s.omega);
    b.eps_R = lz > 0 ? eta * lz * inv_norm_sum(box) * std::ldexp(1.0, -c.n_R) / std::cbrt(s.omega) : 0.0;
    b.eps_T = c.refined ? 0.0 : pi * lambda_effective * std::ldexp(1.0, -c.n_T);
    const double sys = b.systematic();
    if (!(sys < s.eps)) {
        std::ostringstream os;
        os << "systematic error " << sys << " Ha (eps_M " << b.eps_M << ", eps_R " << b.eps_R << ", eps_T " << b.eps_T
           << ") leaves no room for phase estimation within " << s.eps << " Ha";
        throw InfeasibleError(os.str());
    }
    b.eps_pha = std::sqrt(s.eps * s.eps - sys * sys);
    return b;
}

std::vector<QubitItem>
qubitization_qubit_count(const System& s, const DerivedGeometry& g, const QubitizationConfig& c, std::int64_t steps)
{
    const std::int64_t n_p = g.n_p, n_M = c.n_M, n_R = c.n_R;
    const std::int64_t nu_prep = 3 * (n_p + 1) + n_p + n_M + (3 * n_p + 2) + (2 * n_p + 1) +
                                 (3 * n_p * n_p + n_p + 1 + 4 * n_M * (n_p + 1)) + 1 + 2;
    return {
        {"system_momenta", 3 * std::int64_t(s.eta) * n_p, false},
        {"phase_estimation_control", 2 * ceil_log2_steps(steps) - 1, false},
        {"phase_gradient", std::max<std::int64_t>(n_R + 1, c.n_T), false},
        {"t_state", 1, false},
        {"tuv_rotated_qubit", 1, false},
        {"uv_equal_superposition", g.n_etazeta + 3, false},
        {"tuv_select_flags", 3, false},
        {"ij_registers", 2 * std::int64_t(g.n_eta) + 5, false},
        {"nu_preparation", nu_prep, false},
        {"w_superposition", 4, false},
        {"r_s_registers", 2 * n_p, false},
        {"overflow", 6, false},
        {"arithmetic_or_nuclear_position", std::max<std::int64_t>(5 * n_p + 1, 5 * n_R - 4), true},
        {"add_subtract_control", 1, false},
    };
}

namespace
{

Evaluation
evaluate(const System& s, const DerivedGeometry& g, const QubitizationConfig& c)
{
    Evaluation e;
    e.lam = full_lambdas(s, g, c);
    e.budget = qubitization_error_terms(s, g, c, e.lam.lambda_effective);
    e.steps = ceil_to_int(pi * e.lam.lambda_effective / (2 * e.budget.eps_pha));
    e.per_step = step_terms(s, g, c).total();
    e.total = checked_product(e.steps, e.per_step);
    return e;
}

void
check_config(const DerivedGeometry& g, const QubitizationConfig& c)
{
    const bool jellium = g.lambda_zeta == 0;
    if (c.n_M < 1 || c.n_T < 1 || c.b_r < 1 || c.n_R < (jellium ? 0 : 1))
        throw DomainError("qubitization config: bit counts must be >= 1 (n_R may be 0 only without nuclei)");
    if (c.alpha_index >= 0 && !c.refined)
        throw DomainError("alpha_index requires refined mode");
    if (c.alpha_index >= alpha_grid_points)
        throw DomainError("alpha_index out of range");
}

}  // namespace

std::vector<std::string>
qubitization_config_keys()
{
    return {"n_M", "n_R", "n_T", "b_r", "amplify", "refined", "alpha_index"};
}

CostReport
qubitization_total_cost(const System& s, const QubitizationConfig& c)
{
    const DerivedGeometry g = derive(s);
    check_config(g, c);
    const Evaluation e = evaluate(s, g, c);

    CostReport r;
    r.algorithm = "qubitization";
    r.steps = e.steps;
    r.breakdown = qubitization_step_cost(s, g, c);
    r.per_step_total = sum_items(r.breakdown);
    r.total_toffolis = checked_product(r.steps, r.per_step_total);
    for (const auto& it : r.breakdown)
        if (it.value < 0)
            r.valid = false;
    r.qubit_ledger = qubitization_qubit_count(s, g, c, e.steps);
    r.logical_qubits = sum_items(r.qubit_ledger);
    r.config = {{"n_M", c.n_M}, {"n_R", c.n_R}, {"n_T", c.n_T}, {"b_r", c.b_r},
                {"amplify", c.amplitude_amplification ? 1 : 0}, {"refined", c.refined ? 1 : 0},
                {"alpha_index", c.alpha_index}};
    const auto& l = e.lam;
    r.lambdas = {{"lambda_T", l.lambda_T}, {"lambda_T_prime", l.lambda_T_prime}, {"lambda_U", l.lambda_U},
                 {"lambda_V", l.lambda_V}, {"lambda_U_1", l.lambda_U_1}, {"lambda_V_1", l.lambda_V_1},
                 {"lambda_nu", l.lambda_nu}, {"lambda_nu_1", l.lambda_nu_1}, {"p_nu", l.p_nu},
                 {"p_nu_amp", l.p_nu_amp}, {"alpha", c.alpha()}, {"P_eq", l.P_eq},
                 {"lambda_effective", l.lambda_effective}};
    r.budget = e.budget;
    r.notes.push_back("excludes the O(log 1/eps) cost of preparing and processing the phase estimation control state");
    r.notes.push_back("n_etazeta counts bits of eta + 2 lambda_zeta");
    if (c.refined)
        r.notes.push_back("refined: exact eps_M at the tuned alpha, eps_T absorbed into alpha, per-bit nuclear phasing count");
    if (g.lambda_zeta == 0)
        r.notes.push_back("no nuclei: U channel, nuclear QROM and nuclear phasing vanish");
    else if (g.lambda_zeta != s.eta)
        r.notes.push_back("system is not charge neutral; lambda_U / lambda_V differs from 2 eta / (eta - 1)");
    if (!r.valid)
        r.notes.push_back("negative brace term: bit widths too small for the cost formulas");
    return r;
}

std::pair<QubitizationConfig, CostReport>
qubitization_optimize(const System& s, const QubitizationSearch& search)
{
    const DerivedGeometry g = derive(s);
    const MomentumBox box{g.n_p};
    const double eta = s.eta, lz = double(g.lambda_zeta);
    const double share = s.eps / 10;

    auto fixed = [&](const std::string& k) -> std::optional<int> {
        auto it = search.fixed.find(k);
        if (it == search.fixed.end())
            return std::nullopt;
        return it->second;
    };
    for (const auto& [k, v] : search.fixed) {
        const auto keys = qubitization_config_keys();
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw ParseError("unknown qubitization parameter '" + k + "'");
    }
    const bool refined = fixed("refined").value_or(search.refined ? 1 : 0) != 0;

    auto around = [](int seed, int lo) {
        std::vector<int> v;
        for (int d = -4; d <= 4; ++d)
            if (seed + d >= lo)
                v.push_back(seed + d);
        return v;
    };
    auto axis = [&](const std::string& key, std::vector<int> dflt) {
        if (auto f = fixed(key))
            return std::vector<int>{*f};
        return dflt;
    };

    // Seeds: each systematic error at eps/10.
    const double bound0 = eps_M_bound(box, 0, eta, lz, s.omega);
    const int n_M0 = std::max(1, int(std::ceil(std::log2(bound0 / share))));
    int n_R0 = 0;
    if (lz > 0)
        n_R0 = std::max(1, int(std::ceil(std::log2(eta * lz * inv_norm_sum(box) / (std::cbrt(s.omega) * share)))));

    std::vector<int> ax_M = axis("n_M", around(n_M0, 1));
    ax_M.erase(std::remove_if(ax_M.begin(), ax_M.end(), [](int v) { return v > max_n_M; }), ax_M.end());
    if (ax_M.empty())
        throw UnsupportedError("target error needs n_M above " + std::to_string(max_n_M));
    const std::vector<int> ax_R = axis("n_R", lz > 0 ? around(n_R0, 1) : std::vector<int>{0});
    const std::vector<int> ax_br = axis("b_r", {6, 7, 8});
    const std::vector<int> ax_amp = axis("amplify", {0, 1});
    std::vector<int> ax_alpha{-1};
    if (refined) {
        ax_alpha.clear();
        for (int i = 0; i < alpha_grid_points; ++i)
            ax_alpha.push_back(i);
    }
    ax_alpha = axis("alpha_index", ax_alpha);

    // lambda does not depend on n_T, so one pass at the seed fixes the n_T seed
    QubitizationConfig seed{ax_M[ax_M.size() / 2], ax_R[ax_R.size() / 2], 1, 7, true, refined, refined ? 0 : -1};
    const double lam0 = full_lambdas(s, g, seed).lambda_effective;
    const int n_T0 = std::max(1, int(std::ceil(std::log2(pi * lam0 / share))));

    std::optional<std::pair<QubitizationConfig, Evaluation>> best;
    std::string last_err;
    for (int n_M : ax_M) {
        std::vector<int> ax_T;
        if (refined)
            for (int d = 4; d <= 8; ++d)
                ax_T.push_back(n_M + d);
        else
            ax_T = around(n_T0, 1);
        ax_T = axis("n_T", ax_T);
        for (int n_R : ax_R)
            for (int n_T : ax_T)
                for (int b_r : ax_br)
                    for (int amp : ax_amp)
                        for (int ai : ax_alpha) {
                            QubitizationConfig c{n_M, n_R, n_T, b_r, amp != 0, refined, ai};
                            try {
                                check_config(g, c);
                                Evaluation e = evaluate(s, g, c);
                                if (!best || e.total < best->second.total)
                                    best.emplace(c, e);
                            } catch (const InfeasibleError& ex) {
                                last_err = ex.what();
                            } catch (const DomainError& ex) {
                                last_err = ex.what();
                            }
                        }
    }
    if (!best)
        throw InfeasibleError("no feasible qubitization parameters near the eps/10 seeds: " + last_err);
    return {best->first, qubitization_total_cost(s, best->first)};
}

}  // namespace fqre
