// scenario.cpp — Config parsing, deterministic output writers, and run orchestration.

#include "spinbath/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "spinbath/dynamics.hpp"
#include "spinbath/rates.hpp"
#include "spinbath/validity.hpp"

namespace spinbath {

namespace {

using njson = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument("config " + path + ": " + what);
}

void check_keys(const njson& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) fail(path + "/" + it.key(), "unknown field");
    }
}

const njson& expect_object(const njson& v, const std::string& path) {
    if (!v.is_object()) fail(path, "expected an object");
    return v;
}

double get_double(const njson& obj, const std::string& path, const char* key, double def) {
    if (!obj.contains(key)) return def;
    const njson& v = obj.at(key);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    return v.get<double>();
}

int get_int(const njson& obj, const std::string& path, const char* key, int def) {
    if (!obj.contains(key)) return def;
    const njson& v = obj.at(key);
    if (!v.is_number_integer()) fail(path + "/" + key, "expected an integer");
    return v.get<int>();
}

bool get_bool(const njson& obj, const std::string& path, const char* key, bool def) {
    if (!obj.contains(key)) return def;
    const njson& v = obj.at(key);
    if (!v.is_boolean()) fail(path + "/" + key, "expected true or false");
    return v.get<bool>();
}

std::string get_string(const njson& obj, const std::string& path, const char* key, const std::string& def) {
    if (!obj.contains(key)) return def;
    const njson& v = obj.at(key);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

FormFactor parse_form_factor(const njson& obj, const std::string& path, const char* key) {
    FormFactor h;
    if (!obj.contains(key)) return h;
    const njson& v = expect_object(obj.at(key), path + "/" + key);
    const std::string p = path + "/" + key;
    check_keys(v, p, {"n", "m", "angular_norm_sq"});
    h.n = get_int(v, p, "n", 0);
    h.m = get_int(v, p, "m", 1);
    h.angular_norm_sq = get_double(v, p, "angular_norm_sq", 1.0);
    try {
        validate(h);
    } catch (const std::invalid_argument& e) {
        fail(p, e.what());
    }
    return h;
}

SpinParams parse_spin(const njson& v, const std::string& path) {
    SpinParams sp;
    sp.omega = get_double(v, path, "omega", 1.0);
    sp.lambda = get_double(v, path, "lambda", 0.0);
    sp.varkappa = get_double(v, path, "varkappa", 0.0);
    sp.mu = get_double(v, path, "mu", 0.0);
    sp.nu = get_double(v, path, "nu", 0.0);
    sp.g_loc = parse_form_factor(v, path, "local_exchange_form_factor");
    sp.f_loc = parse_form_factor(v, path, "local_conserving_form_factor");
    if (v.contains("initial_bloch")) {
        const njson& b = v.at("initial_bloch");
        if (!b.is_array() || b.size() != 3 || !b[0].is_number() || !b[1].is_number() || !b[2].is_number())
            fail(path + "/initial_bloch", "expected an array of three numbers");
        try {
            sp.rho0 = density_from_bloch(b[0].get<double>(), b[1].get<double>(), b[2].get<double>());
        } catch (const std::invalid_argument& e) {
            fail(path + "/initial_bloch", e.what());
        }
    }
    return sp;
}

std::string default_label(std::size_t k) {
    if (k < 26) return std::string(1, static_cast<char>('A' + k));
    return "S" + std::to_string(k);
}

EnsembleConfig parse_ensemble(const njson& v, const std::string& path) {
    check_keys(v, path,
               {"beta", "collective_exchange_form_factor", "collective_conserving_form_factor", "species", "spins"});
    EnsembleConfig ens;
    ens.beta = get_double(v, path, "beta", 1.0);
    ens.g_c = parse_form_factor(v, path, "collective_exchange_form_factor");
    ens.f_c = parse_form_factor(v, path, "collective_conserving_form_factor");

    const bool has_species = v.contains("species"), has_spins = v.contains("spins");
    if (has_species == has_spins)
        fail(path, "exactly one of 'species' and 'spins' is required");
    const char* list_key = has_species ? "species" : "spins";
    const njson& list = v.at(list_key);
    if (!list.is_array() || list.empty()) fail(path + "/" + list_key, "expected a non-empty array");
    ens.listed_per_spin = has_spins;

    static const std::initializer_list<const char*> kSpinKeys = {
        "label",  "count", "omega", "lambda", "varkappa", "mu", "nu", "local_exchange_form_factor",
        "local_conserving_form_factor", "initial_bloch"};
    for (std::size_t k = 0; k < list.size(); ++k) {
        const std::string p = path + "/" + list_key + "/" + std::to_string(k);
        const njson& item = expect_object(list[k], p);
        check_keys(item, p, kSpinKeys);
        Species sp;
        sp.label = get_string(item, p, "label", default_label(k));
        sp.count = has_spins ? 1 : get_int(item, p, "count", 1);
        if (has_spins && item.contains("count")) fail(p + "/count", "not allowed in a per-spin list");
        if (sp.count < 1) fail(p + "/count", "must be >= 1");
        sp.spin = parse_spin(item, p);
        ens.species.push_back(std::move(sp));
    }
    for (std::size_t i = 0; i < ens.species.size(); ++i)
        for (std::size_t k = i + 1; k < ens.species.size(); ++k)
            if (ens.species[i].label == ens.species[k].label)
                fail(path + "/" + list_key, "duplicate label '" + ens.species[i].label + "'");
    return ens;
}

std::string sweep_dir_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "sweep_%03zu", index);
    return buf;
}

void atomic_write(const std::filesystem::path& target, const std::string& content) {
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::string complex_json(const cplx& v) {
    return "{\"re\": " + format_double(v.real()) + ", \"im\": " + format_double(v.imag()) + "}";
}

std::string complex_json_or_null(const cplx& v, bool defined) {
    return defined ? complex_json(v) : std::string("null");
}

std::string double_json_or_null(double v, bool defined) {
    return defined ? format_double(v) : std::string("null");
}

std::string bool_json(bool v) { return v ? "true" : "false"; }

std::string validity_json(const ValidityReport& rep, const std::string& indent) {
    std::ostringstream os;
    const std::string in2 = indent + "  ";
    os << "{\n";
    os << in2 << "\"alpha_max\": " << format_double(rep.alpha_max) << ",\n";
    os << in2 << "\"delta\": " << format_double(rep.delta) << ",\n";
    os << in2 << "\"delta_exhaustive\": " << bool_json(rep.delta_exhaustive) << ",\n";
    os << in2 << "\"condition_gap\": {\"margin\": " << format_double(rep.condition_gap.margin)
       << ", \"passed\": " << bool_json(rep.condition_gap.passed) << "},\n";
    os << in2 << "\"margin_lambda_only\": " << format_double(rep.margin_lambda_only) << ",\n";
    os << in2 << "\"condition_collective\": {\"margin\": " << format_double(rep.condition_collective.margin)
       << ", \"passed\": " << bool_json(rep.condition_collective.passed) << "},\n";
    os << in2 << "\"condition_local\": {\"margin\": " << format_double(rep.condition_local.margin)
       << ", \"passed\": " << bool_json(rep.condition_local.passed) << "},\n";
    os << in2 << "\"assumption_a_ok\": " << bool_json(rep.assumption_a_ok) << ",\n";
    os << in2 << "\"threshold\": " << format_double(rep.threshold) << "\n";
    os << indent << "}";
    return os.str();
}

std::string rates_json_text(const ScenarioConfig& cfg, const std::vector<RateSet>& rates,
                            const ValidityReport* validity) {
    const EnsembleConfig& ens = cfg.ensemble;
    std::vector<cplx> kappas(rates.size());
    std::vector<Mat2> rho0s(rates.size());
    std::vector<std::pair<int, RateSet>> pairs;
    for (std::size_t s = 0; s < rates.size(); ++s) {
        rho0s[s] = ens.species[s].spin.rho0;
        kappas[s] = kappa_coefficient(rates[s], rho0s[s]);
        pairs.emplace_back(ens.species[s].count, rates[s]);
    }
    const std::vector<double> gdeph_inf = asymptotic_dephasing_multispecies(pairs);
    const DephasingSummary summary = dephasing_summary(rates, rho0s, ens.n_total());

    std::ostringstream os;
    os << "{\n";
    os << "  \"beta\": " << format_double(ens.beta) << ",\n";
    os << "  \"n_total\": " << ens.n_total() << ",\n";
    os << "  \"species\": [\n";
    for (std::size_t s = 0; s < rates.size(); ++s) {
        const RateSet& rs = rates[s];
        os << "    {\n";
        os << "      \"label\": \"" << ens.species[s].label << "\",\n";
        os << "      \"count\": " << ens.species[s].count << ",\n";
        os << "      \"omega\": " << format_double(ens.species[s].spin.omega) << ",\n";
        os << "      \"b\": " << format_double(rs.b) << ",\n";
        os << "      \"c\": " << format_double(rs.c) << ",\n";
        os << "      \"z_beta\": " << format_double(rs.z_beta) << ",\n";
        os << "      \"a\": " << format_double(rs.a) << ",\n";
        os << "      \"x\": " << format_double(rs.x) << ",\n";
        os << "      \"y\": " << format_double(rs.y) << ",\n";
        os << "      \"z_plus\": " << complex_json(rs.z_plus) << ",\n";
        os << "      \"z_minus\": " << complex_json(rs.z_minus) << ",\n";
        os << "      \"alpha_plus\": " << complex_json_or_null(rs.alpha_plus, rs.has_alpha) << ",\n";
        os << "      \"alpha_minus\": " << complex_json_or_null(rs.alpha_minus, rs.has_alpha) << ",\n";
        os << "      \"gamma_relax\": " << format_double(rs.gamma_relax) << ",\n";
        os << "      \"gamma_cons\": " << format_double(rs.gamma_cons) << ",\n";
        os << "      \"r\": " << double_json_or_null(rs.r, rs.has_r) << ",\n";
        os << "      \"kappa\": " << complex_json(kappas[s]) << ",\n";
        os << "      \"gamma_deph_infinity\": " << format_double(gdeph_inf[s]) << "\n";
        os << "    }" << (s + 1 < rates.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"dephasing_summary\": {\n";
    os << "    \"gamma\": " << format_double(summary.gamma) << ",\n";
    os << "    \"c_prime\": " << format_double(summary.c_prime) << ",\n";
    os << "    \"gamma_prime\": " << format_double(summary.gamma_prime) << ",\n";
    os << "    \"gamma_deph\": " << format_double(summary.gamma_deph) << "\n";
    os << "  }";
    if (validity) {
        os << ",\n  \"validity\": " << validity_json(*validity, "  ");
    }
    os << "\n}\n";
    return os.str();
}

std::string trajectory_csv_text(const Trajectory& traj) {
    const bool single = traj.per_species.size() == 1;
    std::string out = "t,sz_total,sminus_re,sminus_im";
    if (single) {
        out += ",gamma_t,b_t,log_abs_c";
    } else {
        for (const auto& tr : traj.per_species) {
            const std::string& l = tr.label;
            out += ",sz_" + l + ",sminus_re_" + l + ",sminus_im_" + l + ",gamma_t_" + l + ",b_t_" + l +
                   ",log_abs_c_" + l;
        }
    }
    out += "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += format_double(traj.times[k]);
        out += "," + format_double(traj.sz[k]);
        out += "," + format_double(traj.sminus[k].real());
        out += "," + format_double(traj.sminus[k].imag());
        if (single) {
            const auto& tr = traj.per_species.front();
            out += "," + format_double(tr.gamma_t[k]);
            out += "," + format_double(tr.b_t[k]);
            out += "," + format_double(tr.log_c_magnitude[k]);
        } else {
            for (const auto& tr : traj.per_species) {
                out += "," + format_double(tr.sz[k]);
                out += "," + format_double(tr.sminus[k].real());
                out += "," + format_double(tr.sminus[k].imag());
                out += "," + format_double(tr.gamma_t[k]);
                out += "," + format_double(tr.b_t[k]);
                out += "," + format_double(tr.log_c_magnitude[k]);
            }
        }
        out += "\n";
    }
    return out;
}

std::string bloch_csv_text(const BlochCoefficients& bloch) {
    const bool single = bloch.per_species.size() == 1;
    std::string out = "t";
    for (const auto& tr : bloch.per_species) {
        const std::string suffix = single ? "" : "_" + tr.label;
        out += ",gamma_t" + suffix + ",b_t" + suffix;
    }
    out += "\n";
    for (std::size_t k = 0; k < bloch.times.size(); ++k) {
        out += format_double(bloch.times[k]);
        for (const auto& tr : bloch.per_species) {
            out += "," + format_double(tr.gamma_t[k]);
            out += "," + format_double(tr.b_t[k]);
        }
        out += "\n";
    }
    return out;
}

std::string oracle_csv_text(const OracleComparison& cmp) {
    std::string out = "t,exact_re,exact_im,resonance_re,resonance_im,deviation\n";
    for (std::size_t k = 0; k < cmp.times.size(); ++k) {
        out += format_double(cmp.times[k]);
        out += "," + format_double(cmp.exact[k].real());
        out += "," + format_double(cmp.exact[k].imag());
        out += "," + format_double(cmp.resonance[k].real());
        out += "," + format_double(cmp.resonance[k].imag());
        out += "," + format_double(cmp.deviation[k]);
        out += "\n";
    }
    return out;
}

std::vector<double> build_grid(const ScenarioConfig& cfg, const RunOptions& opts) {
    const int n = opts.grid_points_override.value_or(cfg.grid.num_points);
    if (cfg.grid.log_spacing) {
        const double t_min = cfg.grid.t_min.value_or(cfg.grid.t_max * 1e-6);
        return log_grid(t_min, cfg.grid.t_max, n);
    }
    return linear_grid(cfg.grid.t_max, n);
}

std::vector<RateSet> species_rates(const EnsembleConfig& ens) {
    std::vector<RateSet> rates;
    rates.reserve(ens.species.size());
    for (const auto& sp : ens.species) rates.push_back(compute_rateset(sp.spin, ens));
    return rates;
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

ScenarioConfig parse_scenario_text(const std::string& json_text) {
    njson root;
    try {
        root = njson::parse(json_text);
    } catch (const njson::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    expect_object(root, "");
    check_keys(root, "", {"ensemble", "grid", "outputs", "sweep", "validity_threshold", "oracle_spin_index"});

    ScenarioConfig cfg;
    if (!root.contains("ensemble")) fail("/ensemble", "required section is missing");
    cfg.ensemble = parse_ensemble(expect_object(root.at("ensemble"), "/ensemble"), "/ensemble");

    if (root.contains("grid")) {
        const njson& g = expect_object(root.at("grid"), "/grid");
        check_keys(g, "/grid", {"t_max", "num_points", "spacing", "t_min"});
        cfg.grid.t_max = get_double(g, "/grid", "t_max", 100.0);
        cfg.grid.num_points = get_int(g, "/grid", "num_points", 1024);
        const std::string spacing = get_string(g, "/grid", "spacing", "linear");
        if (spacing == "log")
            cfg.grid.log_spacing = true;
        else if (spacing != "linear")
            fail("/grid/spacing", "expected \"linear\" or \"log\"");
        if (g.contains("t_min")) cfg.grid.t_min = get_double(g, "/grid", "t_min", 0.0);
        if (!(cfg.grid.t_max > 0.0)) fail("/grid/t_max", "must be > 0");
        if (cfg.grid.num_points < 2) fail("/grid/num_points", "must be >= 2");
        if (cfg.grid.t_min && !(*cfg.grid.t_min > 0.0 && *cfg.grid.t_min < cfg.grid.t_max))
            fail("/grid/t_min", "must satisfy 0 < t_min < t_max");
    }

    if (root.contains("outputs")) {
        const njson& o = expect_object(root.at("outputs"), "/outputs");
        check_keys(o, "/outputs", {"trajectory", "rates", "bloch_coefficients", "oracle_check", "validity"});
        cfg.outputs.trajectory = get_bool(o, "/outputs", "trajectory", true);
        cfg.outputs.rates = get_bool(o, "/outputs", "rates", true);
        cfg.outputs.bloch_coefficients = get_bool(o, "/outputs", "bloch_coefficients", true);
        cfg.outputs.oracle_check = get_bool(o, "/outputs", "oracle_check", false);
        cfg.outputs.validity = get_bool(o, "/outputs", "validity", true);
    }

    if (root.contains("sweep")) {
        const njson& s = expect_object(root.at("sweep"), "/sweep");
        check_keys(s, "/sweep", {"parameter", "values"});
        SweepSpec sw;
        sw.parameter = get_string(s, "/sweep", "parameter", "");
        if (sw.parameter.empty() || sw.parameter.front() != '/')
            fail("/sweep/parameter", "expected a JSON pointer starting with '/'");
        if (!s.contains("values") || !s.at("values").is_array() || s.at("values").empty())
            fail("/sweep/values", "expected a non-empty array of numbers");
        for (const auto& v : s.at("values")) {
            if (!v.is_number()) fail("/sweep/values", "expected a non-empty array of numbers");
            sw.values.push_back(v.get<double>());
        }
        cfg.sweep = std::move(sw);
    }

    cfg.validity_threshold = get_double(root, "", "validity_threshold", 0.1);
    if (!(cfg.validity_threshold > 0.0)) fail("/validity_threshold", "must be > 0");
    cfg.oracle_spin_index = get_int(root, "", "oracle_spin_index", 0);
    if (cfg.oracle_spin_index < 0 || cfg.oracle_spin_index >= cfg.ensemble.n_total())
        fail("/oracle_spin_index", "must name a spin in [0, N)");

    try {
        validate_ensemble(cfg.ensemble);
    } catch (const std::invalid_argument& e) {
        fail("/ensemble", e.what());
    }
    return cfg;
}

std::string apply_sweep_value(const std::string& json_text, const std::string& pointer, double value) {
    njson root;
    try {
        root = njson::parse(json_text);
    } catch (const njson::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    njson::json_pointer ptr;
    try {
        ptr = njson::json_pointer(pointer);
        root.at(ptr); // must already exist: sweeps override, never create
    } catch (const std::exception&) {
        throw std::invalid_argument("sweep parameter '" + pointer + "' does not address an existing config field");
    }
    root[ptr] = value;
    return root.dump();
}

OracleConfig oracle_from_scenario(const ScenarioConfig& cfg) {
    const EnsembleConfig& ens = cfg.ensemble;
    validate_ensemble(ens);
    const auto spins = expand_spins(ens);
    const int n = static_cast<int>(spins.size());
    const int j = cfg.oracle_spin_index;
    if (j < 0 || j >= n) throw std::invalid_argument("oracle comparison: spin index out of range");

    for (const SpinParams* sp : spins)
        if (sp->lambda != 0.0 || sp->mu != 0.0)
            throw std::invalid_argument(
                "oracle comparison requires a pure-dephasing scenario (lambda = mu = 0 on every spin)");
    const double vk = spins[0]->varkappa;
    for (const SpinParams* sp : spins)
        if (sp->varkappa != vk)
            throw std::invalid_argument("oracle comparison requires a homogeneous collective conserving coupling");

    OracleConfig oc;
    oc.beta = ens.beta;
    oc.N = n;
    oc.varkappa_c = vk;
    oc.nu_l = spins[j]->nu;
    oc.f_c = ens.f_c;
    oc.f_l = spins[j]->f_loc;
    oc.rho0_j = spins[j]->rho0;
    oc.omega = spins[j]->omega;

    bool have_p = false;
    double p = 0.5;
    for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        const double pk = spins[k]->rho0.m11.real();
        if (!have_p) {
            p = pk;
            have_p = true;
        } else if (std::abs(pk - p) > 1e-12) {
            throw std::invalid_argument(
                "oracle comparison requires equal +1/2 populations on all non-singled-out spins");
        }
    }
    oc.p = p;
    return oc;
}

RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
    validate_ensemble(cfg.ensemble);
    const ValidityReport validity = check_validity(cfg.ensemble, cfg.validity_threshold);
    if (opts.strict && !validity.condition_gap.passed) {
        return {2, "validity gate failed: margin " + format_double(validity.condition_gap.margin) +
                       " >= threshold " + format_double(validity.threshold) + "; no outputs written"};
    }

    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    const std::vector<double> times = build_grid(cfg, opts);
    const std::vector<RateSet> rates = species_rates(cfg.ensemble);

    std::string written;
    auto note = [&written](const char* name) {
        if (!written.empty()) written += ", ";
        written += name;
    };

    if (cfg.outputs.trajectory) {
        const Trajectory traj = magnetization_trajectory(cfg.ensemble, rates, times);
        atomic_write(dir / "trajectory.csv", trajectory_csv_text(traj));
        note("trajectory.csv");
    }
    if (cfg.outputs.bloch_coefficients) {
        const BlochCoefficients bloch = bloch_coefficients(cfg.ensemble, rates, times);
        atomic_write(dir / "bloch.csv", bloch_csv_text(bloch));
        note("bloch.csv");
    }
    if (cfg.outputs.rates) {
        atomic_write(dir / "rates.json",
                     rates_json_text(cfg, rates, cfg.outputs.validity ? &validity : nullptr));
        note("rates.json");
    }
    if (cfg.outputs.oracle_check) {
        const OracleConfig oc = oracle_from_scenario(cfg);
        const OracleComparison cmp = compare_resonance_vs_exact(oc, times);
        atomic_write(dir / "oracle.csv", oracle_csv_text(cmp));
        note("oracle.csv");
    }

    std::string msg = "wrote " + (written.empty() ? std::string("no outputs") : written) + " to " + opts.out_dir;
    if (!validity.condition_gap.passed)
        msg += " (validity margin " + format_double(validity.condition_gap.margin) + " exceeds threshold " +
               format_double(validity.threshold) + ")";
    return {0, msg};
}

RunResult run_rates_only(const ScenarioConfig& cfg, const RunOptions& opts) {
    validate_ensemble(cfg.ensemble);
    const ValidityReport validity = check_validity(cfg.ensemble, cfg.validity_threshold);
    if (opts.strict && !validity.condition_gap.passed) {
        return {2, "validity gate failed: margin " + format_double(validity.condition_gap.margin) +
                       " >= threshold " + format_double(validity.threshold) + "; no outputs written"};
    }
    std::filesystem::create_directories(opts.out_dir);
    const std::vector<RateSet> rates = species_rates(cfg.ensemble);
    atomic_write(std::filesystem::path(opts.out_dir) / "rates.json",
                 rates_json_text(cfg, rates, cfg.outputs.validity ? &validity : nullptr));
    return {0, "wrote rates.json to " + opts.out_dir};
}

RunResult run_verify(const ScenarioConfig& cfg, const RunOptions& opts) {
    const OracleConfig oc = oracle_from_scenario(cfg);
    std::filesystem::create_directories(opts.out_dir);
    const std::vector<double> times = build_grid(cfg, opts);
    const OracleComparison cmp = compare_resonance_vs_exact(oc, times);
    atomic_write(std::filesystem::path(opts.out_dir) / "oracle.csv", oracle_csv_text(cmp));
    const bool ok = cmp.max_substituted_deviation < opts.verify_tolerance;
    std::string msg = "max substituted deviation " + format_double(cmp.max_substituted_deviation) +
                      (ok ? " < " : " >= ") + "tolerance " + format_double(opts.verify_tolerance) +
                      "; max raw deviation " + format_double(cmp.max_unsubstituted_deviation) +
                      "; wrote oracle.csv to " + opts.out_dir;
    return {ok ? 0 : 1, msg};
}

RunResult run_sweep(const std::string& config_text, const ScenarioConfig& base, const RunOptions& opts) {
    if (!base.sweep) throw std::invalid_argument("sweep: config has no sweep section");
    const SweepSpec& sw = *base.sweep;
    std::filesystem::create_directories(opts.out_dir);

    const std::size_t n = sw.values.size();
    std::vector<std::string> dirs(n);
    std::vector<RunResult> results(n);
    for (std::size_t i = 0; i < n; ++i)
        dirs[i] = (std::filesystem::path(opts.out_dir) / sweep_dir_name(i)).string();

    auto task = [&](std::size_t i) -> RunResult {
        try {
            const std::string text = apply_sweep_value(config_text, sw.parameter, sw.values[i]);
            const ScenarioConfig sub = parse_scenario_text(text);
            RunOptions sub_opts = opts;
            sub_opts.out_dir = dirs[i];
            return run_scenario(sub, sub_opts);
        } catch (const std::exception& e) {
            return {1, std::string(e.what())};
        }
    };

    constexpr std::size_t kWave = 8;
    for (std::size_t start = 0; start < n; start += kWave) {
        const std::size_t end = std::min(n, start + kWave);
        std::vector<std::future<RunResult>> wave;
        wave.reserve(end - start);
        for (std::size_t i = start; i < end; ++i)
            wave.push_back(std::async(std::launch::async, task, i));
        for (std::size_t i = start; i < end; ++i) results[i] = wave[i - start].get();
    }

    std::string index = "index,directory,value\n";
    int exit_code = 0;
    std::string failures;
    for (std::size_t i = 0; i < n; ++i) {
        index += std::to_string(i) + "," + sweep_dir_name(i) + "," + format_double(sw.values[i]) + "\n";
        if (results[i].exit_code != 0) {
            exit_code = std::max(exit_code, results[i].exit_code);
            failures += "\n  " + sweep_dir_name(i) + ": " + results[i].message;
        }
    }
    atomic_write(std::filesystem::path(opts.out_dir) / "sweep_index.csv", index);
    std::string msg = "swept " + sw.parameter + " over " + std::to_string(n) + " values into " + opts.out_dir;
    if (!failures.empty()) msg += "; failures:" + failures;
    return {exit_code, msg};
}

} // namespace spinbath
