#pragma once

#include "fqre/report.hpp"
#include "fqre/scenario.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fqre
{

inline constexpr int max_dyson_order = 16;

struct InteractionConfig
{
    int K = 4;
    int n_t = 10;
    int n_M = 10;
    int n_R = 10;
    int b_r = 7;
    int b_T = 8;
};

struct DysonSeriesSpec
{
    int                        K = 0;
    std::vector<std::uint64_t> sigma;  // sigma[k] for k = 0..K
    int                        n_k = 0;
};

// sum_{l=k}^{K} K!/l!
std::uint64_t   sigma(int k, int K);
DysonSeriesSpec dyson_series(int K);

int b_grad_of(int b_T, double lambda_UV, double omega);

// 2^n (e^y - 1) - x (1 + y/2) with y = x/2^n, evaluated without cancellation.
double time_discretization_bracket(double x, int n_t);
// e^x - sum_{k<=K} x^k/k!
double exp_tail(double x, int K);

std::vector<CostItem>  interaction_step_cost(const System&, const DerivedGeometry&, const InteractionConfig&, int b_grad);
ErrorBudget            interaction_error_terms(const System&, const DerivedGeometry&, const InteractionConfig&);
double                 interaction_p_eq(const System&, const DerivedGeometry&, const InteractionConfig&);
std::int64_t           interaction_reps(const System&, const DerivedGeometry&, const InteractionConfig&, double eps_pha);
std::vector<QubitItem> interaction_qubit_count(const System&, const DerivedGeometry&, const InteractionConfig&, int b_grad, std::int64_t reps);

CostReport interaction_total_cost(const System&, const InteractionConfig&);

struct InteractionSearch
{
    std::map<std::string, int> fixed;  // K, n_t, n_M, n_R, b_r, b_T
};

std::pair<InteractionConfig, CostReport> interaction_optimize(const System&, const InteractionSearch& = {});

std::vector<std::string> interaction_config_keys();

// General Hamiltonian H = A + B evolved for time t in the interaction picture of A.
struct GenericIPSpec
{
    double       lambda_B = 1;
    double       t = 1;
    std::int64_t c = 1, d = 1;  // lambda_B tau = c/d
    int          K = 4;
    int          n_t = 10;
    int          n_theta = 10;
    int          b_r = 8;
    int          n_B = 1;
    double       norm_A = 0;    // ||A||, enters the time-discretization error
    double       eps = 1e-3;
};

struct GenericIPCost
{
    std::int64_t reps = 0;
    int          n_k = 0;
    toffoli_t    toffolis = 0;
    std::int64_t controlled_expA_calls = 0;
    std::int64_t prep_B_calls = 0;
    std::int64_t sel_B_calls = 0;
    double       success_ratio = 0;  // Eq(Sigma(0), b_r) / exp(c/d)
    double       eps_K = 0, eps_theta = 0, eps_t = 0;
    double       error = 0;
};

// Weighted sigma with c^l d^{K-l}; exact, throws UnsupportedError on overflow.
unsigned __int128 generic_sigma(int k, int K, std::int64_t c, std::int64_t d);
GenericIPCost     generic_cost(const GenericIPSpec&);

}  // namespace fqre
