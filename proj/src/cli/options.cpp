#include "fqre/cli.hpp"
#include "fqre/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace fqre::cli
{

namespace
{

const std::set<std::string> system_keys = {"eta", "omega", "rs", "delta", "n", "log2n", "eps"};

bool
contains(const std::vector<std::string>& v, const std::string& k)
{
    return std::find(v.begin(), v.end(), k) != v.end();
}

std::string
trim(std::string s)
{
    auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), sp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), sp).base(), s.end());
    return s;
}

double
parse_real(const std::string& raw, const std::string& what)
{
    const std::string s = trim(raw);
    std::istringstream is(s);
    is.imbue(std::locale::classic());
    double v = 0;
    is >> v;
    if (s.empty() || is.fail() || !is.eof() || !std::isfinite(v))
        throw ParseError("cannot parse '" + raw + "' as a number for " + what);
    return v;
}

int
parse_int(const std::string& raw, const std::string& what)
{
    const std::string s = trim(raw);
    if (s == "true" || s == "on" || s == "yes")
        return 1;
    if (s == "false" || s == "off" || s == "no")
        return 0;
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("cannot parse '" + raw + "' as an integer for " + what);
    }
    if (pos != s.size() || v < -1000000 || v > 1000000)
        throw ParseError("cannot parse '" + raw + "' as an integer for " + what);
    return int(v);
}

}  // namespace

void
apply_override(Overrides& o, const std::string& key_in, const std::string& value)
{
    std::string key = trim(key_in);
    std::string scope;
    if (auto dot = key.find('.'); dot != std::string::npos) {
        scope = key.substr(0, dot);
        key = key.substr(dot + 1);
        if (scope == "q")
            scope = "qubitization";
        if (scope == "i")
            scope = "interaction";
        if (scope != "qubitization" && scope != "interaction")
            throw ParseError("unknown override scope '" + scope + "'");
    }
    if (scope.empty() && system_keys.count(key)) {
        o.system[key] = parse_real(value, key);
        return;
    }
    const bool q = contains(qubitization_config_keys(), key);
    const bool i = contains(interaction_config_keys(), key);
    bool used = false;
    if (q && scope != "interaction") {
        o.qubitization[key] = parse_int(value, key);
        used = true;
    }
    if (i && scope != "qubitization") {
        o.interaction[key] = parse_int(value, key);
        used = true;
    }
    if (!used)
        throw ParseError("unknown override key '" + key_in + "'");
}

void
apply_assignment(Overrides& o, const std::string& kv)
{
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ParseError("override must look like KEY=VALUE, got '" + kv + "'");
    apply_override(o, kv.substr(0, eq), kv.substr(eq + 1));
}

void
apply_system_overrides(System& s, const std::map<std::string, double>& m)
{
    auto get = [&](const char* k) -> const double* {
        auto it = m.find(k);
        return it == m.end() ? nullptr : &it->second;
    };
    auto as_count = [](double v, const char* what) {
        if (v != std::floor(v) || v < 0 || v > 9.0e15)
            throw ParseError(std::string(what) + " must be a non-negative integer");
        return v;
    };
    if (auto v = get("eta"))
        s.eta = int(as_count(*v, "eta"));
    if (auto v = get("n"))
        s.n_requested = std::uint64_t(as_count(*v, "n"));
    if (auto v = get("log2n")) {
        const double k = as_count(*v, "log2n");
        if (k > 60)
            throw ParseError("log2n too large");
        s.n_requested = std::uint64_t(1) << int(k);
    }
    if (auto v = get("eps"))
        s.eps = *v;
    if (auto v = get("omega"))
        s.omega = *v;
    if (auto v = get("rs"))
        s.omega = omega_from_rs(s.eta, *v);
    if (auto v = get("delta"))
        s.omega = double(s.n_requested) * (*v) * (*v) * (*v);
    validate(s);
}

Scenario
load_scenario_json(const std::string& text, const std::string& origin)
{
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!j.is_object())
        throw ParseError(origin + ": scenario must be a JSON object");
    static const std::set<std::string> known = {"name", "eta", "species", "omega_bohr3", "r_s_bohr",
                                                "num_plane_waves", "target_error_hartree", "options"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ParseError(origin + ": unknown field '" + it.key() + "'");

    Scenario sc;
    System& s = sc.system;
    try {
        s.name = j.value("name", std::string("custom"));
        if (!j.contains("eta"))
            throw ParseError(origin + ": missing field 'eta'");
        s.eta = j.at("eta").get<int>();
        if (j.contains("species")) {
            for (const auto& sp : j.at("species")) {
                NuclearSpecies n;
                n.zeta = sp.at("zeta").get<int>();
                n.count = sp.value("count", 1);
                s.species.push_back(n);
            }
        }
        if (j.contains("omega_bohr3"))
            s.omega = j.at("omega_bohr3").get<double>();
        else if (j.contains("r_s_bohr"))
            s.omega = omega_from_rs(s.eta, j.at("r_s_bohr").get<double>());
        else
            throw ParseError(origin + ": need 'omega_bohr3' or 'r_s_bohr'");
        s.n_requested = j.value("num_plane_waves", std::uint64_t(1) << 18);
        s.eps = j.value("target_error_hartree", 0.0016);
        if (j.contains("options")) {
            const auto& opt = j.at("options");
            if (!opt.is_object())
                throw ParseError(origin + ": 'options' must be an object");
            for (auto it = opt.begin(); it != opt.end(); ++it) {
                const auto& v = it.value();
                std::string text_value;
                if (v.is_boolean())
                    text_value = v.get<bool>() ? "1" : "0";
                else if (v.is_number_integer())
                    text_value = std::to_string(v.get<long long>());
                else if (v.is_number())
                    text_value = format_real(v.get<double>());
                else
                    throw ParseError(origin + ": option '" + it.key() + "' must be a number or boolean");
                apply_override(sc.overrides, it.key(), text_value);
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    } catch (const DomainError& e) {
        throw ParseError(origin + ": " + e.what());
    }
    try {
        apply_system_overrides(s, sc.overrides.system);
        sc.overrides.system.clear();
    } catch (const DomainError& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return sc;
}

Scenario
load_scenario_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_scenario_json(ss.str(), path);
}

Scenario
preset_scenario(const std::string& name)
{
    Scenario sc;
    sc.system = preset(name).system;
    return sc;
}

std::string
format_real(double v)
{
    if (v == 0)
        return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string
csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<double>
parse_real_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_real(item, "list entry"));
    if (out.empty())
        throw ParseError("empty list");
    return out;
}

std::vector<int>
parse_int_range(const std::string& text)
{
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        std::vector<int> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':'))
            parts.push_back(parse_int(item, "range"));
        if (parts.size() < 2 || parts.size() > 3)
            throw ParseError("range must look like A:B or A:B:STEP, got '" + text + "'");
        const int step = parts.size() == 3 ? parts[2] : 1;
        if (step <= 0 || parts[1] < parts[0])
            throw ParseError("range needs A <= B and a positive step, got '" + text + "'");
        for (int v = parts[0]; v <= parts[1]; v += step)
            out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_int(item, "list entry"));
    if (out.empty())
        throw ParseError("empty list");
    return out;
}

}  // namespace fqre::cli
