#pragma once

#include "fqre/report.hpp"
#include "fqre/scenario.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fqre
{

struct QubitizationConfig
{
    int  n_M = 10;
    int  n_R = 10;
    int  n_T = 10;
    int  b_r = 7;
    bool amplitude_amplification = true;
    bool refined = false;      // exact eps_M with tuned alpha, no eps_T
    int  alpha_index = -1;     // -1 means alpha = 1, else tuned_alpha(n_M, index)

    int    A_amp() const { return amplitude_amplification ? 3 : 1; }
    double alpha() const;
};

struct LambdaSet
{
    double lambda_T = 0;
    double lambda_T_prime = 0;
    double lambda_U = 0;
    double lambda_V = 0;
    double lambda_U_1 = 0;  // block-encoded (alpha-scaled ceiling) values
    double lambda_V_1 = 0;
    double lambda_nu = 0;
    double lambda_nu_1 = 0;
    double p_nu = 0;
    double p_nu_amp = 0;
    double P_eq = 0;
    double lambda_effective = 0;
};

// Raw lambda values; p and the effective lambda are filled by the caller.
LambdaSet lambdas(const System&, const DerivedGeometry&, int n_M, double alpha = 1.0);
double    p_eq(const System&, int b_r);
double    effective_lambda(const LambdaSet&, double p_nu, double P_eq, bool amplified, int eta);

std::vector<CostItem> qubitization_step_cost(const System&, const DerivedGeometry&, const QubitizationConfig&);
// 6 n_p n_R term, or the refined phasing count when refine is set.
toffoli_t nuclear_phase_cost(int n_p, int n_R, bool refine);

ErrorBudget qubitization_error_terms(const System&, const DerivedGeometry&, const QubitizationConfig&, double lambda_effective);
std::vector<QubitItem> qubitization_qubit_count(const System&, const DerivedGeometry&, const QubitizationConfig&, std::int64_t steps);

// Throws InfeasibleError when the systematic errors exhaust the budget.
CostReport qubitization_total_cost(const System&, const QubitizationConfig&);

struct QubitizationSearch
{
    bool                       refined = false;
    std::map<std::string, int> fixed;  // n_M, n_R, n_T, b_r, amplify, alpha_index
    unsigned                   threads = 1;
};

std::pair<QubitizationConfig, CostReport> qubitization_optimize(const System&, const QubitizationSearch& = {});

std::vector<std::string> qubitization_config_keys();

}  // namespace fqre
