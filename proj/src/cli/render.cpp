#include "fqre/cli.hpp"
#include "fqre/momentum_state.hpp"

#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fqre::cli
{

namespace
{

using ojson = nlohmann::ordered_json;

ojson
real(double v)
{
    return ojson(std::strtod(format_real(v).c_str(), nullptr));
}

ojson
system_json(const System& s)
{
    ojson j;
    j["name"] = s.name;
    j["eta"] = s.eta;
    ojson sp = ojson::array();
    for (const auto& n : s.species)
        sp.push_back({{"zeta", n.zeta}, {"count", n.count}});
    j["species"] = sp;
    j["omega_bohr3"] = real(s.omega);
    j["num_plane_waves"] = s.n_requested;
    j["target_error_hartree"] = real(s.eps);
    return j;
}

ojson
geometry_json(const DerivedGeometry& g)
{
    return {{"n_p", g.n_p},           {"n_eff_cuberoot", g.n_eff_cuberoot}, {"n_eta", g.n_eta},
            {"n_etazeta", g.n_etazeta}, {"lambda_zeta", g.lambda_zeta},     {"nuclei", g.nuclei},
            {"r_s", real(g.r_s)},     {"delta", real(g.delta)},           {"n_s", g.n_s}};
}

ojson
budget_json(const ErrorBudget& b, const std::string& algorithm)
{
    ojson j;
    j["eps_total"] = real(b.eps_total);
    j["eps_pha"] = real(b.eps_pha);
    j["eps_M"] = real(b.eps_M);
    j["eps_R"] = real(b.eps_R);
    if (algorithm == "qubitization") {
        j["eps_T"] = real(b.eps_T);
    } else {
        j["eps_K"] = real(b.eps_K);
        j["eps_t"] = real(b.eps_t);
    }
    return j;
}

ojson
report_json(const CostReport& r)
{
    ojson j;
    j["algorithm"] = r.algorithm;
    j["status"] = r.valid ? "ok" : "invalid";
    j["steps"] = r.steps;
    j["per_step_toffolis"] = r.per_step_total;
    j["total_toffolis"] = r.total_toffolis;
    j["logical_qubits"] = r.logical_qubits;
    ojson cfg = ojson::object();
    for (const auto& [k, v] : r.config)
        cfg[k] = v;
    j["config"] = cfg;
    ojson lam = ojson::object();
    for (const auto& [k, v] : r.lambdas)
        lam[k] = real(v);
    j["lambdas"] = lam;
    j["budget"] = budget_json(r.budget, r.algorithm);
    ojson br = ojson::array();
    for (const auto& it : r.breakdown) {
        ojson e{{"label", it.label}, {"toffolis", it.value}};
        if (!it.note.empty())
            e["note"] = it.note;
        br.push_back(e);
    }
    j["breakdown"] = br;
    ojson ql = ojson::array();
    for (const auto& it : r.qubit_ledger)
        ql.push_back({{"label", it.label}, {"qubits", it.value}, {"temporary", it.temporary}});
    j["qubit_ledger"] = ql;
    j["notes"] = r.notes;
    return j;
}

std::string
config_overrides(const CostReport& r)
{
    std::string s;
    for (const auto& [k, v] : r.config) {
        if (!s.empty())
            s += ' ';
        s += r.algorithm + "." + k + "=" + std::to_string(v);
    }
    return s;
}

const std::vector<std::string>&
config_columns()
{
    static const std::vector<std::string> cols = {"n_M", "n_R", "n_T", "b_r", "amplify", "refined",
                                                  "alpha_index", "K", "n_t", "b_T"};
    return cols;
}

std::string
config_value(const CostReport* r, const std::string& key)
{
    if (!r)
        return "";
    for (const auto& [k, v] : r->config)
        if (k == key)
            return std::to_string(v);
    return "";
}

double
lambda_value(const CostReport& r, const std::string& key)
{
    for (const auto& [k, v] : r.lambdas)
        if (k == key)
            return v;
    return 0;
}

std::vector<std::string>
sweep_header()
{
    std::vector<std::string> h = {"eta", "omega", "n", "n_p", "r_s", "delta", "eps", "lambda_zeta", "algorithm",
                                  "status", "steps", "toffolis", "qubits", "lambda_effective", "eps_pha"};
    for (const auto& c : config_columns())
        h.push_back(c);
    h.push_back("message");
    return h;
}

std::vector<std::string>
sweep_cells(const System& s, const DerivedGeometry& g, const std::string& algorithm, const std::string& status,
            const std::string& message, const CostReport* r)
{
    std::vector<std::string> c = {std::to_string(s.eta), format_real(s.omega), std::to_string(s.n_requested),
                                  std::to_string(g.n_p), format_real(g.r_s), format_real(g.delta),
                                  format_real(s.eps), std::to_string(g.lambda_zeta), algorithm, status};
    if (r) {
        c.push_back(std::to_string(r->steps));
        c.push_back(std::to_string(r->total_toffolis));
        c.push_back(std::to_string(r->logical_qubits));
        c.push_back(format_real(lambda_value(*r, "lambda_effective")));
        c.push_back(format_real(r->budget.eps_pha));
    } else {
        for (int i = 0; i < 5; ++i)
            c.push_back("");
    }
    for (const auto& k : config_columns())
        c.push_back(config_value(r, k));
    c.push_back(message);
    return c;
}

void
write_csv(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                os << ',';
            os << csv_escape(cells[i]);
        }
        os << "\r\n";
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

void
write_table(std::ostream& os, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i)
        w[i] = header[i].size();
    for (const auto& r : rows)
        for (std::size_t i = 0; i < r.size() && i < w.size(); ++i)
            w[i] = std::max(w[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                os << "  ";
            os << std::left << std::setw(int(w[i])) << cells[i];
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

}  // namespace

void
render_estimates(std::ostream& os, const Scenario& sc, const std::vector<Estimate>& est, Format f)
{
    const DerivedGeometry g = derive(sc.system);
    if (f == Format::json) {
        ojson j;
        j["scenario"] = system_json(sc.system);
        j["derived"] = geometry_json(g);
        ojson reps = ojson::array();
        for (const auto& e : est) {
            ojson r = report_json(e.report);
            r["overrides"] = config_overrides(e.report);
            reps.push_back(r);
        }
        j["reports"] = reps;
        j["metadata"] = {{"lattice_kernel", std::string(kernel_name(resolve_kernel(Kernel::automatic)))}};
        os << j.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : est)
        rows.push_back(sweep_cells(sc.system, g, e.algorithm, e.report.valid ? "ok" : "invalid", "", &e.report));
    if (f == Format::csv) {
        write_csv(os, sweep_header(), rows);
        return;
    }
    os << "scenario " << sc.system.name << ": eta=" << sc.system.eta << " lambda_zeta=" << g.lambda_zeta
       << " omega=" << format_real(sc.system.omega) << " N=" << sc.system.n_requested << " n_p=" << g.n_p
       << " r_s=" << format_real(g.r_s) << " delta=" << format_real(g.delta) << " eps=" << format_real(sc.system.eps)
       << "\n";
    for (const auto& e : est) {
        const auto& r = e.report;
        os << "\n[" << r.algorithm << "]\n";
        os << "  steps            " << r.steps << "\n";
        os << "  per-step Toffoli " << r.per_step_total << "\n";
        os << "  total Toffoli    " << r.total_toffolis << " (" << format_real(double(r.total_toffolis)) << ")\n";
        os << "  logical qubits   " << r.logical_qubits << "\n";
        os << "  overrides        " << config_overrides(r) << "\n";
        os << "  breakdown:\n";
        for (const auto& it : r.breakdown)
            os << "    " << std::left << std::setw(34) << it.label << std::right << std::setw(10) << it.value
               << (it.note.empty() ? "" : "  ") << it.note << "\n";
        os << "  qubits:\n";
        for (const auto& it : r.qubit_ledger)
            os << "    " << std::left << std::setw(34) << it.label << std::right << std::setw(10) << it.value
               << (it.temporary ? "  temporary" : "") << "\n";
        os << "  errors (Ha): eps_pha=" << format_real(r.budget.eps_pha) << " eps_M=" << format_real(r.budget.eps_M)
           << " eps_R=" << format_real(r.budget.eps_R);
        if (r.algorithm == "qubitization")
            os << " eps_T=" << format_real(r.budget.eps_T);
        else
            os << " eps_K=" << format_real(r.budget.eps_K) << " eps_t=" << format_real(r.budget.eps_t);
        os << "\n";
        for (const auto& n : r.notes)
            os << "  note: " << n << "\n";
    }
}

void
render_sweep(std::ostream& os, const std::vector<SweepRow>& rows, Format f)
{
    if (f == Format::json) {
        ojson arr = ojson::array();
        for (const auto& r : rows) {
            ojson j;
            j["scenario"] = system_json(r.system);
            j["derived"] = geometry_json(r.geometry);
            j["algorithm"] = r.algorithm;
            j["status"] = r.status;
            if (!r.message.empty())
                j["message"] = r.message;
            if (r.report)
                j["report"] = report_json(*r.report);
            arr.push_back(j);
        }
        os << arr.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows)
        cells.push_back(sweep_cells(r.system, r.geometry, r.algorithm, r.status, r.message,
                                    r.report ? &*r.report : nullptr));
    if (f == Format::csv)
        write_csv(os, sweep_header(), cells);
    else
        write_table(os, sweep_header(), cells);
}

void
render_presets(std::ostream& os, Format f)
{
    std::vector<std::string> header = {"name", "eta", "lambda_zeta", "omega_bohr3", "r_s", "table_r_s", "description"};
    std::vector<std::vector<std::string>> rows;
    ojson arr = ojson::array();
    for (const auto& p : presets()) {
        const DerivedGeometry g = derive(p.system);
        rows.push_back({p.name, std::to_string(p.system.eta), std::to_string(g.lambda_zeta),
                        format_real(p.system.omega), format_real(g.r_s),
                        p.table_r_s ? format_real(*p.table_r_s) : "", p.description});
        ojson j = system_json(p.system);
        j["description"] = p.description;
        j["r_s"] = real(g.r_s);
        if (p.table_r_s)
            j["table_r_s"] = real(*p.table_r_s);
        arr.push_back(j);
    }
    if (f == Format::json)
        os << arr.dump(2) << '\n';
    else if (f == Format::csv)
        write_csv(os, header, rows);
    else
        write_table(os, header, rows);
}

}  // namespace fqre::cli
