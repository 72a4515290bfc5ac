#include "fqre/errors.hpp"
#include "fqre/momentum_state.hpp"
#include "fqre/qubitization.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace fqre;

namespace
{

System
random_system(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> eta_d(2, 300), zeta_d(1, 30), count_d(0, 6), np_d(2, 8);
    std::uniform_real_distribution<double> omega_d(50, 1e6);
    System s;
    s.eta = eta_d(rng);
    const int kinds = count_d(rng) % 3;
    for (int i = 0; i < kinds; ++i)
        s.species.push_back({zeta_d(rng), 1 + count_d(rng)});
    s.omega = omega_d(rng);
    const std::uint64_t side = (std::uint64_t(1) << np_d(rng)) - 1;
    s.n_requested = side * side * side;
    s.eps = 0.0016;
    return s;
}

toffoli_t
sum(const std::vector<CostItem>& v)
{
    toffoli_t t = 0;
    for (const auto& i : v)
        t += i.value;
    return t;
}

}  // namespace

TEST_CASE("per-step breakdown equals the printed brace")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> bits(1, 40), br(4, 10), coin(0, 1);
    for (int i = 0; i < 100; ++i) {
        const System s = random_system(rng);
        const DerivedGeometry g = derive(s);
        QubitizationConfig c;
        c.n_M = bits(rng);
        c.n_R = g.lambda_zeta > 0 ? bits(rng) : 0;
        c.n_T = bits(rng);
        c.b_r = br(rng);
        c.amplitude_amplification = coin(rng) != 0;
        const oracle::QubitizationTuple t{s.eta, g.lambda_zeta, g.n_p, c.n_M, c.n_R, c.n_T, c.b_r,
                                          c.amplitude_amplification};
        CAPTURE(i);
        REQUIRE(sum(qubitization_step_cost(s, g, c)) == oracle::qubitization_brace(t));
    }
}

TEST_CASE("refined nuclear phasing")
{
    CHECK(nuclear_phase_cost(6, 30, false) == 6 * 6 * 30);
    CHECK(nuclear_phase_cost(6, 30, true) == 3 * (2 * 6 * 30 - 6 * 7 - 1));
    CHECK(nuclear_phase_cost(6, 5, true) == 3 * 5 * 4);
    for (int n_p = 2; n_p < 10; ++n_p)
        for (int n_R = 1; n_R < 50; ++n_R)
            CHECK(nuclear_phase_cost(n_p, n_R, true) <= nuclear_phase_cost(n_p, n_R, false));
}

TEST_CASE("lambda values")
{
    System s = preset("ethylene_carbonate").system;
    s.n_requested = 63 * 63 * 63;
    const DerivedGeometry g = derive(s);
    REQUIRE(g.n_p == 6);
    const LambdaSet l = lambdas(s, g, 20);
    const double o13 = std::cbrt(s.omega);
    const double pi = std::numbers::pi;
    CHECK(l.lambda_T == doctest::Approx(6 * 46 * pi * pi * 31.0 * 31.0 / (o13 * o13)));
    CHECK(l.lambda_T_prime == doctest::Approx(6 * 46 * pi * pi * 32.0 * 32.0 / (o13 * o13)));
    // a neutral system has lambda_U = 2 eta / (eta - 1) lambda_V
    CHECK(l.lambda_U / l.lambda_V == doctest::Approx(2.0 * 46 / 45));
    CHECK(l.lambda_nu_1 >= l.lambda_nu);
    CHECK(l.lambda_nu_1 / l.lambda_nu < 1 + 1e-4);
    CHECK(l.p_nu == doctest::Approx(p_nu_success(MomentumBox{6}, {20, 1.0})));
}

TEST_CASE("error terms and steps")
{
    System s = preset("ethylene_carbonate").system;
    const DerivedGeometry g = derive(s);
    QubitizationConfig c{30, 36, 32, 7, true, false, -1};
    const CostReport r = qubitization_total_cost(s, c);
    const double lam = r.lambdas.back().second;
    CHECK(r.budget.eps_T == doctest::Approx(std::numbers::pi * lam / std::ldexp(1.0, 32)));
    const double sys = r.budget.eps_M + r.budget.eps_R + r.budget.eps_T;
    CHECK(r.budget.eps_pha == doctest::Approx(std::sqrt(s.eps * s.eps - sys * sys)));
    CHECK(r.steps == std::int64_t(std::ceil(std::numbers::pi * lam / (2 * r.budget.eps_pha))));
    CHECK(r.total_toffolis == r.steps * r.per_step_total);
    CHECK(r.budget.eps_M == doctest::Approx(eps_M_bound(MomentumBox{g.n_p}, 30, 46, 46, s.omega)));

    QubitizationConfig tiny{3, 3, 3, 7, true, false, -1};
    CHECK_THROWS_AS(qubitization_total_cost(s, tiny), InfeasibleError);
}

TEST_CASE("qubit ledger")
{
    System s = preset("ethylene_carbonate").system;
    s.n_requested = 63 * 63 * 63;
    const DerivedGeometry g = derive(s);
    const auto q = qubitization_qubit_count(s, g, {26, 34, 32, 7, true, false, -1}, 1000000);
    CHECK(q.front().label == "system_momenta");
    CHECK(q.front().value == 3 * 46 * 6);
    CHECK(q[1].value == 2 * 20 - 1);
    CHECK(q[2].value == 35);
}

TEST_CASE("eta = 1 and jellium handling")
{
    System s = from_rs(2, 5, 1u << 15, 0.0016);
    const auto [cfg, rep] = qubitization_optimize(s);
    CHECK(cfg.n_R == 0);
    for (const auto& it : rep.breakdown)
        if (it.label == "nuclear_qrom" || it.label == "nuclear_phase")
            CHECK(it.value == 0);
    s.eta = 1;
    CHECK_THROWS_AS(qubitization_optimize(s), DomainError);
}

TEST_CASE("optimizer is deterministic and respects fixed parameters")
{
    const System s = preset("ethylene_carbonate").system;
    const auto a = qubitization_optimize(s);
    const auto b = qubitization_optimize(s);
    CHECK(a.second.total_toffolis == b.second.total_toffolis);
    CHECK(a.first.n_M == b.first.n_M);

    QubitizationSearch fixed;
    const int n_M = a.first.n_M + 1;
    fixed.fixed = {{"n_M", n_M}, {"amplify", 0}};
    const auto f = qubitization_optimize(s, fixed);
    CHECK(f.first.n_M == n_M);
    CHECK_FALSE(f.first.amplitude_amplification);
    CHECK(f.second.total_toffolis >= a.second.total_toffolis);

    QubitizationSearch bad;
    bad.fixed = {{"n_Q", 3}};
    CHECK_THROWS_AS(qubitization_optimize(s, bad), ParseError);
}

TEST_CASE("refined mode beats the default bound")
{
    const System s = preset("lipf6").system;
    QubitizationSearch r;
    r.refined = true;
    const auto d = qubitization_optimize(s).second;
    const auto f = qubitization_optimize(s, r).second;
    CHECK(f.total_toffolis < d.total_toffolis);
    CHECK(f.budget.eps_T == 0);
}

TEST_CASE("published ethylene carbonate estimate")
{
    System s = preset("ethylene_carbonate").system;
    s.n_requested = 63 * 63 * 63;
    QubitizationSearch r;
    r.refined = true;
    const auto rep = qubitization_optimize(s, r).second;
    CHECK(double(rep.total_toffolis) / 1.7e11 == doctest::Approx(1.0).epsilon(0.10));
}
