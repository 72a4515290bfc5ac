#include "fqre/scenario.hpp"
#include "fqre/arithmetic_costs.hpp"
#include "fqre/errors.hpp"

#include <cmath>
#include <numbers>

namespace fqre
{

std::int64_t
lambda_zeta_of(const System& s)
{
    std::int64_t z = 0;
    for (const auto& sp : s.species)
        z += std::int64_t(sp.zeta) * sp.count;
    return z;
}

void
validate(const System& s)
{
    if (s.eta < 2)
        throw DomainError("eta must be >= 2 (single-electron systems are not modelled), got " + std::to_string(s.eta));
    if (!(s.omega > 0) || !std::isfinite(s.omega))
        throw DomainError("omega must be positive");
    if (s.n_requested < 8)
        throw DomainError("number of plane waves must be >= 8");
    if (!(s.eps > 0) || !std::isfinite(s.eps))
        throw DomainError("target error must be positive");
    for (const auto& sp : s.species)
        if (sp.zeta < 1 || sp.count < 1)
            throw DomainError("species zeta and count must be >= 1");
}

double
cube_root_of_n(std::uint64_t n)
{
    auto r = std::uint64_t(std::llround(std::cbrt(double(n))));
    for (std::uint64_t c = (r > 0 ? r - 1 : 0); c <= r + 1; ++c)
        if (c * c * c == n)
            return double(c);
    return std::cbrt(double(n));
}

int
n_p_of(std::uint64_t n)
{
    const double side = cube_root_of_n(n) + 1;
    int k = 0;
    while (std::ldexp(1.0, k) < side)
        ++k;
    return k;
}

DerivedGeometry
derive(const System& s)
{
    validate(s);
    DerivedGeometry g;
    g.n_p = n_p_of(s.n_requested);
    g.n_eff_cuberoot = (std::int64_t(1) << g.n_p) - 1;
    g.lambda_zeta = lambda_zeta_of(s);
    g.n_eta = ceil_log2(std::uint64_t(s.eta));
    g.n_etazeta = ceil_log2(std::uint64_t(s.eta + 2 * g.lambda_zeta));
    for (const auto& sp : s.species)
        g.nuclei += sp.count;
    g.r_s = std::cbrt(3 * s.omega / (4 * std::numbers::pi * s.eta));
    g.delta = std::cbrt(s.omega / double(s.n_requested));
    g.n_s = 3 * std::int64_t(s.eta) * g.n_p;
    return g;
}

double
omega_from_rs(int eta, double r_s)
{
    if (!(r_s > 0))
        throw DomainError("r_s must be positive");
    return 4.0 * std::numbers::pi / 3.0 * r_s * r_s * r_s * eta;
}

System
from_rs(int eta, double r_s, std::uint64_t n, double eps, std::vector<NuclearSpecies> species)
{
    System s;
    s.eta = eta;
    s.omega = omega_from_rs(eta, r_s);
    s.n_requested = n;
    s.eps = eps;
    s.species = std::move(species);
    validate(s);
    return s;
}

namespace
{

Preset
material(std::string name, std::string desc, double omega, int eta, double r_s, std::vector<NuclearSpecies> sp)
{
    System s;
    s.name = name;
    s.eta = eta;
    s.omega = omega;
    s.n_requested = std::uint64_t(1) << 18;
    s.species = std::move(sp);
    return Preset{std::move(name), std::move(desc), std::move(s), r_s};
}

std::vector<Preset>
build_presets()
{
    std::vector<Preset> p;
    // Valence cells carry effective ionic charges summing to the valence count.
    p.push_back(material("lithium", "metallic lithium, bcc conventional cell, all electrons", 284.94, 6, 2.25, {{3, 2}}));
    p.push_back(material("lithium_valence", "metallic lithium, bcc conventional cell, valence only", 284.94, 2, 3.24, {{1, 2}}));
    p.push_back(material("potassium", "metallic potassium, bcc conventional cell, all electrons", 961.67, 38, 1.82, {{19, 2}}));
    p.push_back(material("potassium_valence", "metallic potassium, bcc conventional cell, valence only", 961.67, 2, 4.86, {{1, 2}}));
    p.push_back(material("diamond", "diamond cubic conventional cell, all electrons", 307.04, 48, 1.15, {{6, 8}}));
    p.push_back(material("diamond_valence", "diamond cubic conventional cell, valence only", 307.04, 32, 1.32, {{4, 8}}));
    p.push_back(material("silicon", "crystalline silicon, diamond cubic cell, all electrons", 1080.43, 112, 1.32, {{14, 8}}));
    p.push_back(material("silicon_valence", "crystalline silicon, diamond cubic cell, valence only", 1080.43, 32, 2.01, {{4, 8}}));
    p.push_back(material("iron_oxide", "iron(II) oxide, rock-salt cell, all electrons", 539.84, 136, 0.98, {{26, 4}, {8, 4}}));
    p.push_back(material("iron_oxide_valence", "iron(II) oxide, rock-salt cell, valence only", 539.84, 52, 1.35, {{7, 4}, {6, 4}}));
    p.push_back(material("cobalt_oxide", "cobalt oxide, rock-salt cell, all electrons", 522.81, 140, 0.96, {{27, 4}, {8, 4}}));
    p.push_back(material("cobalt_oxide_valence", "cobalt oxide, rock-salt cell, valence only", 522.81, 60, 1.28, {{9, 4}, {6, 4}}));
    p.push_back(material("aluminium_arsenide", "aluminium arsenide, zincblende cell, all electrons", 1197.86, 184, 1.16, {{13, 4}, {33, 4}}));
    p.push_back(material("aluminium_arsenide_valence", "aluminium arsenide, zincblende cell, valence only", 1197.86, 32, 2.08, {{3, 4}, {5, 4}}));
    p.push_back(material("indium_phosphide", "indium phosphide, zincblende cell, all electrons", 1364.93, 256, 1.08, {{49, 4}, {15, 4}}));
    p.push_back(material("indium_phosphide_valence", "indium phosphide, zincblende cell, valence only", 1364.93, 32, 2.17, {{3, 4}, {5, 4}}));

    Preset ec = material("ethylene_carbonate", "ethylene carbonate C3H4O3 in a 1e5 a0^3 box", 1e5, 46, 0, {{6, 3}, {1, 4}, {8, 3}});
    ec.table_r_s.reset();
    p.push_back(ec);
    Preset lipf6 = material("lipf6", "LiPF6 in a 1e5 a0^3 box", 1e5, 72, 0, {{3, 1}, {15, 1}, {9, 6}});
    lipf6.table_r_s.reset();
    p.push_back(lipf6);

    System jel = from_rs(54, 10.0, std::uint64_t(1) << 18, 0.0016);
    jel.name = "jellium";
    p.push_back(Preset{"jellium", "uniform electron gas (no nuclei), eta=54, r_s=10", jel, std::nullopt});
    return p;
}

}  // namespace

const std::vector<Preset>&
presets()
{
    static const std::vector<Preset> all = build_presets();
    return all;
}

const Preset&
preset(const std::string& name)
{
    for (const auto& p : presets())
        if (p.name == name)
            return p;
    throw ParseError("unknown preset '" + name + "'");
}

}  // namespace fqre
