#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fqre
{

struct NuclearSpecies
{
    int zeta  = 1;
    int count = 1;
};

struct System
{
    std::string                 name;
    int                         eta = 2;
    std::vector<NuclearSpecies> species;
    double                      omega = 1.0;        // a0^3
    std::uint64_t               n_requested = 8;    // plane waves
    double                      eps = 0.0016;       // Hartree
};

struct DerivedGeometry
{
    int           n_p = 0;
    std::int64_t  n_eff_cuberoot = 0;
    int           n_eta = 0;
    int           n_etazeta = 0;
    std::int64_t  lambda_zeta = 0;
    std::int64_t  nuclei = 0;
    double        r_s = 0;
    double        delta = 0;
    std::int64_t  n_s = 0;
};

std::int64_t lambda_zeta_of(const System&);
void         validate(const System&);
// Exact integer cube root when N is a perfect cube, otherwise the real root.
double       cube_root_of_n(std::uint64_t n);
int          n_p_of(std::uint64_t n);
DerivedGeometry derive(const System&);

double omega_from_rs(int eta, double r_s);
System from_rs(int eta, double r_s, std::uint64_t n, double eps, std::vector<NuclearSpecies> species = {});

struct Preset
{
    std::string           name;
    std::string           description;
    System                system;
    std::optional<double> table_r_s;  // tabulated Wigner-Seitz radius
};

const std::vector<Preset>& presets();
const Preset&              preset(const std::string& name);

}  // namespace fqre
