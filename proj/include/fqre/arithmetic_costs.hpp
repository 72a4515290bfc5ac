#pragma once

#include <cstdint>

namespace fqre
{

using toffoli_t = std::int64_t;

struct EqualSuperpositionSpec
{
    std::uint64_t n   = 1;
    int           b_r = 7;
};

// a * b, throwing UnsupportedError when the product leaves 64 bits
toffoli_t checked_product(toffoli_t a, toffoli_t b);

int ceil_log2(std::uint64_t n);
int ceil_log2(unsigned __int128 n);

toffoli_t square_cost_simple(int n);
toffoli_t square_cost(int n);
toffoli_t sum_three_squares_cost(int n);
// Proven bound k n^2. Empirically k n^2 - n (minus one more when 3 | k) suffices.
toffoli_t sum_k_squares_cost(int k, int n);
toffoli_t product_cost(int n, int m);

// min over k >= 0 of 2^k + ceil(x / 2^k)
toffoli_t qrom_erase_cost(std::uint64_t x);
// same minimum with k restricted to powers of two (k = 1, 2, 4, ...)
toffoli_t qrom_erase_cost_pow2_k(std::uint64_t x);

int sort_comparator_count(int K);

// Success probability of the rotation-based equal superposition over n states.
double equal_superposition_success(const EqualSuperpositionSpec&);
double equal_superposition_success(std::uint64_t n, int b_r);
// Same with the ratio x = n / 2^ceil(log n) given directly (x in (1/2, 1]).
double equal_superposition_success_x(double x, int b_r);
double equal_superposition_lower_bound(int b_r);

}  // namespace fqre
