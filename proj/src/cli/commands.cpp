#include "fqre/cli.hpp"
#include "fqre/errors.hpp"
#include "fqre/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fqre::cli
{

namespace
{

bool
wants(Algorithm a, Algorithm which)
{
    return a == Algorithm::both || a == which;
}

CostReport
estimate_one(const System& s, const Overrides& o, const std::string& algorithm)
{
    if (algorithm == "qubitization") {
        QubitizationSearch q;
        q.fixed = o.qubitization;
        return qubitization_optimize(s, q).second;
    }
    InteractionSearch i;
    i.fixed = o.interaction;
    return interaction_optimize(s, i).second;
}

std::vector<std::string>
algorithms_of(Algorithm a)
{
    std::vector<std::string> v;
    if (wants(a, Algorithm::qubitization))
        v.push_back("qubitization");
    if (wants(a, Algorithm::interaction))
        v.push_back("interaction");
    return v;
}

}  // namespace

std::vector<Estimate>
run_estimate(const Scenario& sc, Algorithm a, unsigned /*threads*/)
{
    System s = sc.system;
    apply_system_overrides(s, sc.overrides.system);
    std::vector<Estimate> out;
    for (const auto& alg : algorithms_of(a))
        out.push_back({alg, estimate_one(s, sc.overrides, alg)});
    return out;
}

std::vector<SweepRow>
run_sweep(const Scenario& base, const SweepAxes& axes, Algorithm a, unsigned threads)
{
    const int volume_axes = int(!axes.rs.empty()) + int(!axes.omega.empty()) + int(!axes.delta.empty());
    if (volume_axes > 1)
        throw ParseError("give at most one of --rs, --omega, --delta");

    std::vector<int> etas = axes.eta.empty() ? std::vector<int>{base.system.eta} : axes.eta;
    std::vector<double> vols = {0};
    std::string vol_key;
    if (!axes.rs.empty())
        vols = axes.rs, vol_key = "rs";
    if (!axes.omega.empty())
        vols = axes.omega, vol_key = "omega";
    if (!axes.delta.empty())
        vols = axes.delta, vol_key = "delta";
    std::vector<double> ns;
    if (axes.log2n.empty())
        ns.push_back(-1);
    for (int k : axes.log2n) {
        if (k < 3 || k > 60)
            throw ParseError("--log2n entries must lie in [3, 60]");
        ns.push_back(k);
    }
    std::vector<double> epss = axes.eps.empty() ? std::vector<double>{base.system.eps} : axes.eps;
    for (double e : epss)
        if (!(e > 0))
            throw ParseError("--eps entries must be positive");

    struct Point
    {
        std::map<std::string, double> set;
        std::string                   algorithm;
    };
    std::vector<Point> points;
    const auto algs = algorithms_of(a);
    for (int eta : etas)
        for (double v : vols)
            for (double n : ns)
                for (double e : epss)
                    for (const auto& alg : algs) {
                        Point p;
                        p.set = base.overrides.system;
                        p.set["eta"] = eta;
                        if (n >= 0)
                            p.set["log2n"] = n;
                        p.set["eps"] = e;
                        if (!vol_key.empty())
                            p.set[vol_key] = v;
                        p.algorithm = alg;
                        points.push_back(std::move(p));
                    }

    std::vector<SweepRow> rows(points.size());
    parallel_for(points.size(), threads, [&](std::size_t i) {
        SweepRow& r = rows[i];
        r.system = base.system;
        r.algorithm = points[i].algorithm;
        try {
            apply_system_overrides(r.system, points[i].set);
            r.geometry = derive(r.system);
        } catch (const std::exception& e) {
            r.status = "invalid";
            r.message = e.what();
            return;
        }
        try {
            r.report = estimate_one(r.system, base.overrides, r.algorithm);
            r.status = r.report->valid ? "ok" : "invalid";
        } catch (const InfeasibleError& e) {
            r.status = "infeasible";
            r.message = e.what();
        } catch (const UnsupportedError& e) {
            r.status = "unsupported";
            r.message = e.what();
        } catch (const std::exception& e) {
            r.status = "invalid";
            r.message = e.what();
        }
    });
    return rows;
}

double
crossover_ratio(int eta, double delta, int log2n, double eps)
{
    System s;
    s.name = "jellium";
    s.eta = eta;
    s.n_requested = std::uint64_t(1) << log2n;
    s.omega = double(s.n_requested) * delta * delta * delta;
    s.eps = eps;
    const auto q = qubitization_optimize(s).second;
    const auto i = interaction_optimize(s).second;
    return double(i.total_toffolis) / double(q.total_toffolis);
}

double
crossover_delta(int eta, int log2n, double eps, double lo, double hi)
{
    double flo = std::log(crossover_ratio(eta, lo, log2n, eps));
    double fhi = std::log(crossover_ratio(eta, hi, log2n, eps));
    if (flo * fhi > 0)
        throw InfeasibleError("ratio does not cross 1 between the resolution bounds");
    double a = std::log(lo), b = std::log(hi);
    for (int it = 0; it < 40 && b - a > 1e-3; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = std::log(crossover_ratio(eta, std::exp(m), log2n, eps));
        if ((fm < 0) == (flo < 0))
            a = m, flo = fm;
        else
            b = m, fhi = fm;
    }
    // linear interpolation of log ratio within the final bracket
    return std::exp(a + (b - a) * flo / (flo - fhi));
}

namespace
{

struct KimRow
{
    std::string molecule;
    int         log2n;
    std::int64_t qubits;
    double      toffolis;
};

const std::vector<KimRow>&
kim_rows()
{
    static const std::vector<KimRow> rows = {
        {"ethylene_carbonate", 12, 1395, 2.5e10}, {"ethylene_carbonate", 15, 1701, 6.6e10},
        {"ethylene_carbonate", 18, 2021, 1.7e11}, {"ethylene_carbonate", 21, 2355, 4.2e11},
        {"lipf6", 12, 1758, 8.0e10},              {"lipf6", 15, 2150, 2.1e11},
        {"lipf6", 18, 2556, 5.1e11},              {"lipf6", 21, 2976, 1.3e12},
    };
    return rows;
}

ReproCheck
relative_check(std::string item, std::string quantity, double computed, double reference, double tol, std::string note = {})
{
    ReproCheck c{std::move(item), std::move(quantity), computed, reference, tol, false, std::move(note)};
    c.pass = std::fabs(computed / reference - 1) <= tol;
    return c;
}

ReproResult
reproduce_kim(unsigned threads)
{
    ReproResult res;
    res.target = "kim-table";
    const auto& rows = kim_rows();
    std::vector<CostReport> reports(rows.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        System s = preset(rows[i].molecule).system;
        // Table rows are labelled by rounded N = 2^{3k}; the matching box is (2^k - 1)^3.
        const std::uint64_t side = (std::uint64_t(1) << (rows[i].log2n / 3)) - 1;
        s.n_requested = side * side * side;
        QubitizationSearch q;
        q.refined = true;
        reports[i] = qubitization_optimize(s, q).second;
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string item = r.molecule + " N=2^" + std::to_string(r.log2n);
        std::string cfg;
        for (const auto& [k, v] : reports[i].config)
            cfg += (cfg.empty() ? "" : " ") + k + "=" + std::to_string(v);
        const std::uint64_t side = (std::uint64_t(1) << (r.log2n / 3)) - 1;
        const std::string note = "N_eff=" + std::to_string(side * side * side) + " " + cfg;
        res.checks.push_back(relative_check(item, "toffolis", double(reports[i].total_toffolis), r.toffolis, 0.10, note));
        res.checks.push_back(relative_check(item, "logical_qubits", double(reports[i].logical_qubits), double(r.qubits), 0.02, note));
    }
    for (const auto& c : res.checks)
        res.pass = res.pass && c.pass;
    return res;
}

ReproResult
reproduce_wigner()
{
    ReproResult res;
    res.target = "wigner-table";
    for (const auto& p : presets()) {
        if (!p.table_r_s)
            continue;
        const double rs = derive(p.system).r_s;
        ReproCheck c{p.name, "r_s", rs, *p.table_r_s, 0.005, false, "absolute tolerance (2 decimals)"};
        c.pass = std::fabs(rs - *p.table_r_s) <= 0.005 + 1e-9;
        res.checks.push_back(c);
        res.pass = res.pass && c.pass;
    }
    return res;
}

struct Probe
{
    int    eta;
    double delta;
    bool   interaction_cheaper;
};

ReproResult
reproduce_crossover(unsigned threads)
{
    ReproResult res;
    res.target = "crossover";
    static const std::vector<Probe> probes = {
        {20, 1e-3, true}, {100, 1e-2, false}, {20, 1e-1, false}};
    std::vector<double> ratio(probes.size());
    parallel_for(probes.size(), threads, [&](std::size_t i) {
        ratio[i] = crossover_ratio(probes[i].eta, probes[i].delta, 18, 0.0016);
    });
    for (std::size_t i = 0; i < probes.size(); ++i) {
        std::ostringstream item;
        item << "eta=" << probes[i].eta << " delta=" << format_real(probes[i].delta);
        ReproCheck c{item.str(), "toffoli_ratio", ratio[i], 1.0, 0, false,
                     probes[i].interaction_cheaper ? "expect < 1" : "expect > 1"};
        c.pass = probes[i].interaction_cheaper ? ratio[i] < 1 : ratio[i] > 1;
        res.checks.push_back(c);
        res.pass = res.pass && c.pass;
    }

    // boundary resolution per N, then its spread across N
    static const std::vector<int> etas = {20, 50};
    static const std::vector<int> log2ns = {12, 15, 18, 21};
    std::vector<double> star(etas.size() * log2ns.size());
    parallel_for(star.size(), threads, [&](std::size_t i) {
        star[i] = crossover_delta(etas[i / log2ns.size()], log2ns[i % log2ns.size()], 0.0016);
    });
    for (std::size_t e = 0; e < etas.size(); ++e) {
        double lo = star[e * log2ns.size()], hi = lo;
        std::string note = "delta* at log2N";
        for (std::size_t k = 0; k < log2ns.size(); ++k) {
            const double d = star[e * log2ns.size() + k];
            lo = std::min(lo, d);
            hi = std::max(hi, d);
            note += " " + std::to_string(log2ns[k]) + ":" + format_real(d);
        }
        ReproCheck c{"eta=" + std::to_string(etas[e]), "boundary_spread", hi / lo - 1, 0.0, 0.20, false, note};
        c.pass = hi / lo - 1 < 0.20;
        res.checks.push_back(c);
        res.pass = res.pass && c.pass;
    }
    return res;
}

}  // namespace

ReproResult
reproduce(const std::string& target, unsigned threads)
{
    if (target == "kim-table")
        return reproduce_kim(threads);
    if (target == "wigner-table")
        return reproduce_wigner();
    if (target == "crossover")
        return reproduce_crossover(threads);
    throw ParseError("unknown reproduction target '" + target + "' (kim-table, wigner-table, crossover)");
}

namespace
{

// relative deviation; checks without a published value report the raw quantity
double
delta_of(const ReproCheck& c)
{
    return c.reference != 0 ? c.computed / c.reference - 1 : c.computed;
}

}  // namespace

void
render_reproduction(std::ostream& os, const ReproResult& r, Format f)
{
    if (f == Format::json) {
        nlohmann::ordered_json j;
        j["target"] = r.target;
        j["pass"] = r.pass;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& c : r.checks) {
            nlohmann::ordered_json e;
            e["item"] = c.item;
            e["quantity"] = c.quantity;
            e["computed"] = std::strtod(format_real(c.computed).c_str(), nullptr);
            e["reference"] = std::strtod(format_real(c.reference).c_str(), nullptr);
            e["relative_delta"] = std::strtod(format_real(delta_of(c)).c_str(), nullptr);
            e["tolerance"] = c.tolerance;
            e["pass"] = c.pass;
            e["note"] = c.note;
            arr.push_back(e);
        }
        j["checks"] = arr;
        os << j.dump(2) << '\n';
        return;
    }
    const char* sep = f == Format::csv ? "," : "  ";
    if (f == Format::csv)
        os << "item,quantity,computed,reference,relative_delta,tolerance,pass,note\r\n";
    for (const auto& c : r.checks) {
        if (f == Format::csv) {
            os << csv_escape(c.item) << sep << c.quantity << sep << format_real(c.computed) << sep
               << format_real(c.reference) << sep << format_real(delta_of(c)) << sep
               << format_real(c.tolerance) << sep << (c.pass ? "pass" : "FAIL") << sep << csv_escape(c.note) << "\r\n";
        } else {
            os << (c.pass ? "pass  " : "FAIL  ") << c.item << "  " << c.quantity << "  computed " << format_real(c.computed)
               << "  reference " << format_real(c.reference) << "  delta " << format_real(delta_of(c))
               << "  " << c.note << "\n";
        }
    }
    if (f == Format::table)
        os << r.target << ": " << (r.pass ? "pass" : "FAIL") << "\n";
}

namespace
{

Format
parse_format(const std::string& s)
{
    if (s == "json")
        return Format::json;
    if (s == "csv")
        return Format::csv;
    if (s == "table")
        return Format::table;
    throw ParseError("unknown format '" + s + "'");
}

Algorithm
parse_algorithm(const std::string& s)
{
    if (s == "qubitization")
        return Algorithm::qubitization;
    if (s == "interaction")
        return Algorithm::interaction;
    if (s == "both")
        return Algorithm::both;
    throw ParseError("unknown algorithm '" + s + "'");
}

void
emit(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ParseError("cannot write '" + path + "'");
    out << text;
}

struct Common
{
    std::string              config, preset_name, algorithm = "both", format = "json", out;
    std::vector<std::string> sets;
    unsigned                 threads = 0;
};

void
add_common(CLI::App* app, Common& c, bool scenario)
{
    if (scenario) {
        auto* cfg = app->add_option("--config", c.config, "scenario JSON file");
        auto* pre = app->add_option("--preset", c.preset_name, "named preset (see `presets`)");
        cfg->excludes(pre);
        app->add_option("--algorithm", c.algorithm, "qubitization, interaction or both")
            ->check(CLI::IsMember({"qubitization", "interaction", "both"}));
        app->add_option("--set", c.sets, "KEY=VALUE override (repeatable)");
    }
    app->add_option("--format", c.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    app->add_option("--out", c.out, "output path (default stdout)");
    app->add_option("--threads", c.threads, "worker threads, 0 = auto");
}

Scenario
scenario_of(const Common& c, bool required)
{
    Scenario sc;
    if (!c.config.empty())
        sc = load_scenario_file(c.config);
    else if (!c.preset_name.empty())
        sc = preset_scenario(c.preset_name);
    else if (required)
        throw ParseError("need --config PATH or --preset NAME");
    else {
        sc.system.name = "jellium";
        sc.system.eta = 20;
        sc.system.omega = omega_from_rs(20, 10.0);
        sc.system.n_requested = std::uint64_t(1) << 18;
    }
    for (const auto& kv : c.sets)
        apply_assignment(sc.overrides, kv);
    return sc;
}

}  // namespace

int
main(int argc, char** argv)
{
    CLI::App app{"First-quantized plane-wave resource estimator"};
    app.require_subcommand(1);

    Common est_c, sw_c, rep_c, pre_c;
    auto* est = app.add_subcommand("estimate", "optimize and report one scenario");
    add_common(est, est_c, true);

    auto* sw = app.add_subcommand("sweep", "grid of scenarios for figure data");
    add_common(sw, sw_c, true);
    sw_c.format = "csv";
    std::string eta_axis, rs_axis, omega_axis, delta_axis, log2n_axis, eps_axis;
    sw->add_option("--eta", eta_axis, "A:B:STEP or list");
    sw->add_option("--rs", rs_axis, "Wigner-Seitz radii (list)");
    sw->add_option("--omega", omega_axis, "cell volumes (list)");
    sw->add_option("--delta", delta_axis, "resolutions (list), omega = N delta^3");
    sw->add_option("--log2n", log2n_axis, "plane-wave counts as powers of two (list)");
    sw->add_option("--eps", eps_axis, "target errors (list)");

    auto* rep = app.add_subcommand("reproduce", "recompute a reference table and diff it");
    add_common(rep, rep_c, false);
    rep_c.format = "table";
    std::string target;
    rep->add_option("target", target, "kim-table, wigner-table or crossover")->required();

    auto* pre = app.add_subcommand("presets", "list built-in scenarios");
    add_common(pre, pre_c, false);
    pre_c.format = "table";

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::ostringstream os;
        int code = 0;
        std::string out_path;
        if (*est) {
            const Scenario sc = scenario_of(est_c, true);
            const auto res = run_estimate(sc, parse_algorithm(est_c.algorithm), est_c.threads);
            Scenario shown = sc;
            apply_system_overrides(shown.system, sc.overrides.system);
            render_estimates(os, shown, res, parse_format(est_c.format));
            out_path = est_c.out;
        } else if (*sw) {
            const Scenario sc = scenario_of(sw_c, false);
            SweepAxes ax;
            if (!eta_axis.empty())
                ax.eta = parse_int_range(eta_axis);
            if (!rs_axis.empty())
                ax.rs = parse_real_list(rs_axis);
            if (!omega_axis.empty())
                ax.omega = parse_real_list(omega_axis);
            if (!delta_axis.empty())
                ax.delta = parse_real_list(delta_axis);
            if (!log2n_axis.empty())
                ax.log2n = parse_int_range(log2n_axis);
            if (!eps_axis.empty())
                ax.eps = parse_real_list(eps_axis);
            render_sweep(os, run_sweep(sc, ax, parse_algorithm(sw_c.algorithm), sw_c.threads), parse_format(sw_c.format));
            out_path = sw_c.out;
        } else if (*rep) {
            const ReproResult r = reproduce(target, rep_c.threads);
            render_reproduction(os, r, parse_format(rep_c.format));
            out_path = rep_c.out;
            if (!r.pass)
                code = 5;
        } else if (*pre) {
            render_presets(os, parse_format(pre_c.format));
            out_path = pre_c.out;
        }
        emit(out_path, os.str());
        return code;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace fqre::cli
