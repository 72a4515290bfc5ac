#include "fqre/errors.hpp"
#include "fqre/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace fqre;

TEST_CASE("derived geometry")
{
    System s;
    s.eta = 46;
    s.species = {{6, 3}, {1, 4}, {8, 3}};
    s.omega = 1e5;
    s.n_requested = 63 * 63 * 63;
    const DerivedGeometry g = derive(s);
    CHECK(g.n_p == 6);
    CHECK(g.n_eff_cuberoot == 63);
    CHECK(g.n_eta == 6);
    CHECK(g.lambda_zeta == 46);
    CHECK(g.n_etazeta == 8);  // 46 + 92 = 138
    CHECK(g.nuclei == 10);
    CHECK(g.n_s == 828);
    CHECK(g.r_s == doctest::Approx(std::cbrt(3e5 / (4 * std::numbers::pi * 46))));
    CHECK(g.delta == doctest::Approx(std::cbrt(1e5) / 63));
}

TEST_CASE("n_p from plane-wave count")
{
    CHECK(n_p_of(7 * 7 * 7) == 3);
    CHECK(n_p_of(8 * 8 * 8) == 4);
    CHECK(n_p_of(1u << 18) == 7);
    CHECK(n_p_of(63 * 63 * 63) == 6);
    CHECK(cube_root_of_n(27) == 3.0);
}

TEST_CASE("validation")
{
    System s = from_rs(10, 2, 1u << 12, 0.0016);
    CHECK_NOTHROW(validate(s));
    s.eta = 1;
    CHECK_THROWS_AS(validate(s), DomainError);
    s.eta = 10;
    s.omega = 0;
    CHECK_THROWS_AS(validate(s), DomainError);
    s.omega = 10;
    s.eps = -1;
    CHECK_THROWS_AS(validate(s), DomainError);
    s.eps = 0.001;
    s.species = {{0, 1}};
    CHECK_THROWS_AS(validate(s), DomainError);
}

TEST_CASE("Wigner-Seitz radius round trip")
{
    for (int eta : {2, 20, 200})
        for (double rs : {0.5, 1.0, 10.0}) {
            const System s = from_rs(eta, rs, 1u << 18, 0.0016);
            CHECK(derive(s).r_s == doctest::Approx(rs));
        }
}

TEST_CASE("material presets reproduce the tabulated radii")
{
    int checked = 0;
    for (const auto& p : presets()) {
        if (!p.table_r_s)
            continue;
        CAPTURE(p.name);
        CHECK(std::fabs(derive(p.system).r_s - *p.table_r_s) <= 0.005 + 1e-9);
        ++checked;
    }
    CHECK(checked == 16);
    CHECK_THROWS_AS(preset("unobtainium"), ParseError);
}
