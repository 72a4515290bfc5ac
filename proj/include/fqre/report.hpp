#pragma once

#include "fqre/arithmetic_costs.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fqre
{

struct CostItem
{
    std::string label;
    toffoli_t   value = 0;
    std::string note;
};

struct QubitItem
{
    std::string  label;
    std::int64_t value = 0;
    bool         temporary = false;
};

struct ErrorBudget
{
    double eps_total = 0;
    double eps_pha = 0;
    double eps_M = 0;
    double eps_R = 0;
    double eps_T = 0;  // qubitization only
    double eps_K = 0;  // interaction picture only
    double eps_t = 0;  // interaction picture only

    double systematic() const { return eps_M + eps_R + eps_T + eps_K + eps_t; }
};

struct CostReport
{
    std::string            algorithm;
    std::int64_t           steps = 0;
    std::vector<CostItem>  breakdown;
    toffoli_t              per_step_total = 0;
    toffoli_t              total_toffolis = 0;
    std::vector<QubitItem> qubit_ledger;
    std::int64_t           logical_qubits = 0;
    bool                   valid = true;

    // Integer config fields in a fixed order; feeding them back as
    // overrides reproduces the report.
    std::vector<std::pair<std::string, std::int64_t>> config;
    std::vector<std::pair<std::string, double>>       lambdas;
    ErrorBudget                                       budget;
    std::vector<std::string>                          notes;
};

toffoli_t sum_items(const std::vector<CostItem>&);
std::int64_t sum_items(const std::vector<QubitItem>&);

}  // namespace fqre
