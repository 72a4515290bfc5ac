#include "fqre/arithmetic_costs.hpp"
#include "fqre/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace fqre
{

toffoli_t
checked_product(toffoli_t a, toffoli_t b)
{
    toffoli_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw UnsupportedError("Toffoli total overflows 64-bit integers");
    return r;
}

int
ceil_log2(std::uint64_t n)
{
    if (n <= 1)
        return 0;
    return 64 - std::countl_zero(n - 1);
}

int
ceil_log2(unsigned __int128 n)
{
    if (n <= 1)
        return 0;
    unsigned __int128 m = n - 1;
    int bits = 0;
    while (m) {
        m >>= 1;
        ++bits;
    }
    return bits;
}

toffoli_t
square_cost_simple(int n)
{
    if (n < 2)
        throw DomainError("square_cost_simple: width must be >= 2, got " + std::to_string(n));
    return toffoli_t(n) * n - 2;
}

toffoli_t
square_cost(int n)
{
    if (n < 1)
        throw DomainError("square_cost: width must be >= 1");
    return toffoli_t(n) * (n - 1);
}

toffoli_t
sum_three_squares_cost(int n)
{
    if (n < 1)
        throw DomainError("sum_three_squares_cost: width must be >= 1");
    return 3 * toffoli_t(n) * n - n - 1;
}

toffoli_t
sum_k_squares_cost(int k, int n)
{
    if (k < 1 || n < 1)
        throw DomainError("sum_k_squares_cost: k and n must be >= 1");
    return toffoli_t(k) * n * n;
}

toffoli_t
product_cost(int n, int m)
{
    if (n < 1 || m < 1)
        throw DomainError("product_cost: widths must be >= 1");
    const toffoli_t a = std::max(n, m), b = std::min(n, m);
    return 2 * a * b - a;
}

namespace
{

toffoli_t
erase_term(std::uint64_t x, int k)
{
    const std::uint64_t p = std::uint64_t(1) << k;
    return toffoli_t(p + (x + p - 1) / p);
}

}  // namespace

toffoli_t
qrom_erase_cost(std::uint64_t x)
{
    if (x < 1)
        throw DomainError("qrom_erase_cost: table size must be >= 1");
    toffoli_t best = erase_term(x, 0);
    for (int k = 1; k < 62 && (std::uint64_t(1) << (k - 1)) <= x; ++k)
        best = std::min(best, erase_term(x, k));
    return best;
}

toffoli_t
qrom_erase_cost_pow2_k(std::uint64_t x)
{
    if (x < 1)
        throw DomainError("qrom_erase_cost_pow2_k: table size must be >= 1");
    toffoli_t best = erase_term(x, 1);
    for (int k = 2; k < 62 && (std::uint64_t(1) << (k - 1)) <= x; k *= 2)
        best = std::min(best, erase_term(x, k));
    return best;
}

int
sort_comparator_count(int K)
{
    static constexpr std::array<int, 15> srt = {1, 3, 5, 9, 12, 16, 19, 25, 29, 35, 39, 45, 51, 56, 60};
    if (K < 2 || K > 16)
        throw UnsupportedError("sort comparator count tabulated only for 2 <= K <= 16, got " + std::to_string(K));
    return srt[K - 2];
}

double
equal_superposition_success_x(double x, int b_r)
{
    if (b_r < 1)
        throw DomainError("equal_superposition_success: b_r must be >= 1");
    // A power of two needs only Hadamards.
    if (x >= 1.0)
        return 1.0;
    constexpr double pi = std::numbers::pi;
    const double grid = std::ldexp(2 * pi, -b_r);
    const double th0 = std::asin(1 / (2 * std::sqrt(x)));
    const double h = std::ldexp(pi, -b_r);
    const double target = th0 - h * h * (2 * x - 1) / std::sqrt(4 * x - 1);
    const double th = grid * std::round(target / grid);
    const double s = std::sin(th);
    const double s2 = std::sin(2 * th);
    const double a = 1 + (2 - 4 * x) * s * s;
    return x * (a * a + s2 * s2);
}

double
equal_superposition_success(std::uint64_t n, int b_r)
{
    if (n < 1)
        throw DomainError("equal_superposition_success: n must be >= 1");
    const double x = std::ldexp(double(n), -ceil_log2(n));
    return equal_superposition_success_x(x, b_r);
}

double
equal_superposition_success(const EqualSuperpositionSpec& spec)
{
    return equal_superposition_success(spec.n, spec.b_r);
}

double
equal_superposition_lower_bound(int b_r)
{
    const double h = std::ldexp(std::numbers::pi, -b_r);
    return 1 - 2.25 * h * h;
}

}  // namespace fqre
