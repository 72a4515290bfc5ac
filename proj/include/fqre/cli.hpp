#pragma once

#include "fqre/interaction_picture.hpp"
#include "fqre/qubitization.hpp"
#include "fqre/scenario.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fqre::cli
{

enum class Algorithm
{
    qubitization,
    interaction,
    both,
};

enum class Format
{
    json,
    csv,
    table,
};

// Overrides split by target. Keys may carry a "qubitization." or
// "interaction." prefix; unprefixed shared keys go to both.
struct Overrides
{
    std::map<std::string, double> system;
    std::map<std::string, int>    qubitization;
    std::map<std::string, int>    interaction;
};

void   apply_override(Overrides&, const std::string& key, const std::string& value);
void   apply_assignment(Overrides&, const std::string& key_eq_value);
void   apply_system_overrides(System&, const std::map<std::string, double>&);

struct Scenario
{
    System    system;
    Overrides overrides;
};

Scenario load_scenario_json(const std::string& text, const std::string& origin);
Scenario load_scenario_file(const std::string& path);
Scenario preset_scenario(const std::string& name);

// Bare %.6g-style formatting with the "C" decimal point.
std::string format_real(double);
std::string csv_escape(const std::string&);

std::vector<double> parse_real_list(const std::string&);
std::vector<int>    parse_int_range(const std::string&);  // "A:B:STEP" or "a,b,c"

struct Estimate
{
    std::string algorithm;
    CostReport  report;
};

std::vector<Estimate> run_estimate(const Scenario&, Algorithm, unsigned threads);

struct SweepAxes
{
    std::vector<int>    eta;
    std::vector<double> rs;
    std::vector<double> omega;
    std::vector<double> delta;
    std::vector<int>    log2n;
    std::vector<double> eps;
};

struct SweepRow
{
    System                       system;
    DerivedGeometry              geometry;
    std::string                  algorithm;
    std::string                  status;   // ok, infeasible, unsupported, invalid
    std::string                  message;
    std::optional<CostReport>    report;
};

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepAxes&, Algorithm, unsigned threads);

void render_estimates(std::ostream&, const Scenario&, const std::vector<Estimate>&, Format);
void render_sweep(std::ostream&, const std::vector<SweepRow>&, Format);
void render_presets(std::ostream&, Format);

// Returns the process exit code.
int main(int argc, char** argv);

}  // namespace fqre::cli

namespace fqre::cli
{

struct ReproCheck
{
    std::string item;
    std::string quantity;
    double      computed = 0;
    double      reference = 0;
    double      tolerance = 0;  // relative unless noted
    bool        pass = false;
    std::string note;
};

struct ReproResult
{
    std::string             target;
    std::vector<ReproCheck> checks;
    bool                    pass = true;
};

ReproResult reproduce(const std::string& target, unsigned threads);
void        render_reproduction(std::ostream&, const ReproResult&, Format);

// Interaction/qubitization Toffoli ratio for a jellium cell of resolution delta.
double crossover_ratio(int eta, double delta, int log2n, double eps);
// Resolution at which the ratio crosses 1, by bisection in log(delta).
double crossover_delta(int eta, int log2n, double eps, double lo = 1e-3, double hi = 1.0);

}  // namespace fqre::cli
