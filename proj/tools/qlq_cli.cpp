// qlq_cli.cpp — command-line front end: spectra, metrics, sector anatomy, scans, oracles

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlq/liouville.hpp"
#include "qlq/model.hpp"
#include "qlq/oracles.hpp"
#include "qlq/scan.hpp"
#include "qlq/spectra.hpp"

using nlohmann::json;
using namespace qlq;

namespace {

struct RunConfig {
    int n_max = 3;
    double g = 0.3;
    double omega0 = 1.0;
    double omega_c = 1.0;
    std::string bath = "vacuum";
    double beta = 1.0;
    double lambda = 0.0;
    std::string lambda_grid;  // start:stop:step
    std::string kappa_grid;
    double tol_imag = 1e-8;
    double sigma_eff = 0.0;
    int threads = 1;
    std::string out;
    std::string format = "json";
    std::string g_list;      // comma-separated, phase-map
    std::string n_max_list;  // comma-separated, phase-map

    model::JCParams params() const { return {omega0, omega_c, g, n_max}; }
    model::BathSpec bath_spec() const {
        if (bath == "vacuum") return model::BathSpec::vacuum();
        if (bath == "thermal") return model::BathSpec::thermal(beta);
        throw std::invalid_argument("bath must be 'vacuum' or 'thermal'");
    }
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

struct GridSpec {
    double start, stop, step;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g{};
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &g.start, &g.stop, &g.step) != 3)
        throw std::invalid_argument("grid must be start:stop:step, got '" + s + "'");
    return g;
}

// Atomic write: temp file in the same directory, then rename.
void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp");
    {
        std::ofstream f(tmp);
        if (!f) throw std::runtime_error("cannot open output file " + tmp.string());
        f << text;
    }
    fs::rename(tmp, target);
}

std::string csv_format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json eigenvalue_array(const Eigen::VectorXcd& ev) {
    // deterministic ordering: sort by (Re, Im)
    std::vector<std::complex<double>> v(ev.data(), ev.data() + ev.size());
    std::sort(v.begin(), v.end(), [](auto a, auto b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    json arr = json::array();
    for (const auto& z : v) arr.push_back({{"re", z.real()}, {"im", z.imag()}});
    return arr;
}

std::string eigenvalues_csv(const json& arr) {
    std::string s = "re,im\n";
    for (const auto& e : arr)
        s += csv_format(e["re"].get<double>()) + "," + csv_format(e["im"].get<double>()) + "\n";
    return s;
}

struct BuiltQLQ {
    liouville::Superoperator l, p, qlq;
};

BuiltQLQ build_qlq(const RunConfig& cfg) {
    const auto params = cfg.params();
    params.validate();
    auto l = liouville::commutator_superoperator(model::build_jc(params));
    auto p = liouville::nz_projector(cfg.bath_spec(), params.omega_c, params.n_max);
    auto qlq = liouville::projected_generator(l, p);
    return {std::move(l), std::move(p), std::move(qlq)};
}

json meta_object() {
    return {{"tool", "qlq"}, {"version", "1.0"}};
}

// ---------------------------------------------------------------- subcommands

json cmd_spectrum(const RunConfig& cfg) {
    auto built = build_qlq(cfg);
    auto sd = spectra::eigendecompose(built.qlq.mat);
    auto rep = spectra::reality_report(sd, cfg.tol_imag);
    return {{"n_max", cfg.n_max},
            {"g", cfg.g},
            {"delta", cfg.omega0 - cfg.omega_c},
            {"bath", cfg.bath == "thermal" ? cfg.bath + ":" + std::to_string(cfg.beta) : cfg.bath},
            {"max_imag", rep.max_imag},
            {"n_complex", rep.n_complex},
            {"zero_mode_count", static_cast<int>(sd.zero_modes.size())},
            {"biorth_residual", sd.biorth_residual},
            {"eigenvalues", eigenvalue_array(sd.eigenvalues)}};
}

json sector_metric_rows(const BuiltQLQ& built) {
    auto dec = liouville::sector_decompose(built.qlq);
    auto diag = liouville::sector_diagnostics(dec, &built.p);
    json rows = json::array();
    for (const auto& row : diag.rows) {
        json r = {{"delta_n", row.delta_n},
                  {"dim", row.dim},
                  {"frobenius", row.frobenius},
                  {"herm_residual", row.herm_residual},
                  {"projector_support", row.projector_support}};
        try {
            auto sd = spectra::eigendecompose(dec.blocks.at(row.delta_n));
            auto mr = spectra::build_metric(dec.blocks.at(row.delta_n), sd);
            r["kappa"] = mr.kappa;
        } catch (const std::exception& e) {
            r["kappa"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

json cmd_metric(const RunConfig& cfg) {
    auto built = build_qlq(cfg);
    auto sd = spectra::eigendecompose(built.qlq.mat);
    auto mr = spectra::build_metric(built.qlq.mat, sd);
    return {{"n_max", cfg.n_max},
            {"g", cfg.g},
            {"delta", cfg.omega0 - cfg.omega_c},
            {"bath", cfg.bath},
            {"kappa", mr.kappa},
            {"intertwining_residual", mr.intertwining_residual},
            {"min_eta_eigenvalue", mr.min_eigenvalue},
            {"hermitization_residual", mr.hermitization_residual},
            {"nonzero_rank", mr.rank},
            {"per_sector", sector_metric_rows(built)}};
}

json cmd_sectors(const RunConfig& cfg) {
    auto built = build_qlq(cfg);
    auto dec = liouville::sector_decompose(built.qlq);
    auto diag = liouville::sector_diagnostics(dec, &built.p);
    json rows = json::array();
    for (const auto& row : diag.rows)
        rows.push_back({{"delta_n", row.delta_n},
                        {"dim", row.dim},
                        {"frobenius", row.frobenius},
                        {"herm_residual", row.herm_residual},
                        {"projector_support", row.projector_support}});
    return {{"n_max", cfg.n_max},
            {"g", cfg.g},
            {"bath", cfg.bath},
            {"leakage", diag.leakage},
            {"leakage_ok", diag.leakage_ok},
            {"sectors", rows}};
}

json scan_to_json(const scan::ScanResult& res, const RunConfig& cfg, const GridSpec& gs) {
    json bubbles = json::array();
    for (const auto& iv : res.complex_intervals) bubbles.push_back({iv.left, iv.right});
    json trace = json::array();
    for (const auto& t : res.trace)
        trace.push_back({{"lambda", t.value},
                         {"max_imag", t.max_imag},
                         {"n_complex", t.n_complex},
                         {"ok", t.ok}});
    return {{"n_max", cfg.n_max},
            {"g", cfg.g},
            {"delta", cfg.omega0 - cfg.omega_c},
            {"lambda_grid", {{"start", gs.start}, {"stop", gs.stop}, {"step", gs.step}}},
            {"tol_imag", cfg.tol_imag},
            {"lambda_first", res.lambda_first ? json(*res.lambda_first) : json(nullptr)},
            {"lambda_onset_terminal",
             res.lambda_onset_terminal ? json(*res.lambda_onset_terminal) : json(nullptr)},
            {"n_bub", res.n_bub},
            {"bubbles", bubbles},
            {"classification", std::string(1, res.classification)},
            {"max_imag_overall", res.max_imag_overall},
            {"trace", trace}};
}

json cmd_scan(const RunConfig& cfg) {
    const GridSpec gs = parse_grid(cfg.lambda_grid.empty() ? "0:1:0.01" : cfg.lambda_grid);
    auto grid = scan::ScanGrid::regular(gs.start, gs.stop, gs.step, "lambda", cfg.tol_imag);
    auto res = scan::lambda_scan(cfg.params(), grid, cfg.bath_spec(), cfg.threads);
    return scan_to_json(res, cfg, gs);
}

json cmd_phase_map(const RunConfig& cfg) {
    if (cfg.g_list.empty() || cfg.n_max_list.empty())
        throw std::invalid_argument("phase-map requires --g-list and --n-max-list");
    const GridSpec gs = parse_grid(cfg.lambda_grid.empty() ? "0:1:0.01" : cfg.lambda_grid);
    auto grid = scan::ScanGrid::regular(gs.start, gs.stop, gs.step, "lambda", cfg.tol_imag);
    std::vector<int> ns;
    for (double v : parse_list(cfg.n_max_list)) ns.push_back(static_cast<int>(v));
    auto rows = scan::phase_map(parse_list(cfg.g_list), ns, grid, cfg.omega0, cfg.omega_c,
                                cfg.threads);
    json arr = json::array();
    for (const auto& row : rows)
        arr.push_back({{"g", row.g},
                       {"n_max", row.n_max},
                       {"g_c", row.g_c},
                       {"classification", std::string(1, row.scan.classification)},
                       {"n_bub", row.scan.n_bub},
                       {"lambda_first",
                        row.scan.lambda_first ? json(*row.scan.lambda_first) : json(nullptr)},
                       {"lambda_onset_terminal",
                        row.scan.lambda_onset_terminal ? json(*row.scan.lambda_onset_terminal)
                                                       : json(nullptr)},
                       {"max_imag_overall", row.scan.max_imag_overall}});
    return {{"lambda_grid", {{"start", gs.start}, {"stop", gs.stop}, {"step", gs.step}}},
            {"tol_imag", cfg.tol_imag},
            {"rows", arr}};
}

json cmd_thermal(const RunConfig& cfg) {
    if (cfg.bath != "thermal") throw std::invalid_argument("thermal requires --bath thermal");
    auto tr = oracles::thermal_reduction(cfg.beta, cfg.omega_c, cfg.g, cfg.n_max,
                                        cfg.omega0 - cfg.omega_c);
    bool interlace = true;
    for (int k = 1; k <= cfg.n_max; ++k)
        interlace = interlace && tr.roots[k - 1] > k - 1 && tr.roots[k - 1] < k;
    return {{"n_max", cfg.n_max},
            {"beta", cfg.beta},
            {"g", cfg.g},
            {"q", std::vector<double>(tr.q.data(), tr.q.data() + tr.q.size())},
            {"f0", tr.secular(0.0)},
            {"f0_closed_form", 1.0 - 0.5 * (tr.p(0) + tr.p(cfg.n_max))},
            {"secular_roots", tr.roots},
            {"predicted_nonzero", tr.predicted_nonzero},
            {"interlacing_ok", interlace}};
}

json cmd_lindblad(const RunConfig& cfg) {
    std::vector<double> ks;
    if (!cfg.kappa_grid.empty()) {
        const GridSpec gs = parse_grid(cfg.kappa_grid);
        for (double k = gs.start; k <= gs.stop + 1e-15; k += gs.step) ks.push_back(k);
    } else {
        for (int i = 0; i <= 10; ++i) ks.push_back(0.02 * cfg.g * i);  // 0..0.2g
    }
    auto res = scan::kappa_sweep(cfg.params(), ks);
    return {{"n_max", cfg.n_max},
            {"g", cfg.g},
            {"delta", cfg.omega0 - cfg.omega_c},
            {"kappa", res.kappa},
            {"lambda1_re", res.lambda1_re},
            {"lambda1_im", res.lambda1_im},
            {"overlap", res.overlap},
            {"n_complex", res.n_complex},
            {"tracking_ok", res.tracking_ok},
            {"slope", res.slope_valid ? json(res.slope_at_zero) : json(nullptr)},
            {"slope_closed_form",
             oracles::lindblad_slope(cfg.omega0 - cfg.omega_c, cfg.g)}};
}

json cmd_bands(const RunConfig& cfg) {
    auto entries = oracles::band_catalog(cfg.g, 0, std::max(5, cfg.n_max),
                                         cfg.sigma_eff > 0 ? cfg.sigma_eff : -1.0);
    json arr = json::array();
    for (const auto& e : entries) {
        json row = {{"family", std::string(1, e.family)},
                    {"k", e.k},
                    {"n", e.n},
                    {"g_res", e.g_res},
                    {"delta_e", e.delta_e}};
        if (e.lambda_c >= 0) row["lambda_c"] = e.lambda_c;
        arr.push_back(std::move(row));
    }
    return {{"g", cfg.g}, {"bands", arr}};
}

json cmd_oracle_check(const RunConfig& cfg) {
    json checks = json::array();
    auto built = build_qlq(cfg);
    const double delta = cfg.omega0 - cfg.omega_c;

    // reality
    auto sd = spectra::eigendecompose(built.qlq.mat);
    auto rep = spectra::reality_report(sd, cfg.tol_imag);
    checks.push_back({{"name", "global_reality"},
                      {"pass", rep.max_imag < 1e-12},
                      {"max_deviation", rep.max_imag}});

    // sector leakage
    auto dec = liouville::sector_decompose(built.qlq);
    checks.push_back({{"name", "sector_block_diagonality"},
                      {"pass", dec.leakage_ok},
                      {"max_deviation", dec.leakage}});

    // vacuum exact spectrum on the ΔN=0 block
    if (cfg.bath == "vacuum") {
        auto vs = oracles::vacuum_spectrum(cfg.n_max, cfg.g, delta);
        auto bsd = spectra::eigendecompose(dec.blocks.at(0));
        // compare against predicted pairs: every predicted value present
        double worst = 0.0;
        for (double pred : vs.multiset()) {
            double best = 1e300;
            for (int i = 0; i < bsd.size(); ++i)
                best = std::min(best, std::abs(bsd.eigenvalues(i) -
                                               std::complex<double>(pred, 0.0)));
            worst = std::max(worst, best);
        }
        checks.push_back({{"name", "vacuum_exact_spectrum"},
                          {"pass", worst < 1e-10 * std::max(1.0, bsd.max_abs_eigenvalue)},
                          {"max_deviation", worst}});
    } else {
        auto tr = oracles::thermal_reduction(cfg.beta, cfg.omega_c, cfg.g, cfg.n_max, delta);
        bool interlace = true;
        for (int k = 1; k <= cfg.n_max; ++k)
            interlace = interlace && tr.roots[k - 1] > k - 1 && tr.roots[k - 1] < k;
        checks.push_back({{"name", "thermal_interlacing"}, {"pass", interlace}});
        double worst = 0.0;
        for (double pred : tr.predicted_nonzero) {
            double best = 1e300;
            for (int i = 0; i < sd.size(); ++i)
                best = std::min(best, std::abs(sd.eigenvalues(i) -
                                               std::complex<double>(pred, 0.0)));
            worst = std::max(worst, best);
        }
        checks.push_back({{"name", "thermal_predicted_subset"},
                          {"pass", worst < 1e-9},
                          {"max_deviation", worst}});
    }

    bool all = true;
    for (const auto& c : checks) all = all && c["pass"].get<bool>();
    return {{"n_max", cfg.n_max},
            {"g", cfg.g},
            {"bath", cfg.bath},
            {"all_pass", all},
            {"checks", checks}};
}

std::string render(const json& payload, const std::string& subcmd, const std::string& format) {
    if (format == "json") {
        json doc = payload;
        doc["meta"] = meta_object();
        return doc.dump(2) + "\n";
    }
    if (format == "csv") {
        if (subcmd == "spectrum") return eigenvalues_csv(payload["eigenvalues"]);
        if (subcmd == "phase-map") {
            std::string s = "g,n_max,classification,n_bub,lambda_first,lambda_onset_terminal,max_imag_overall\n";
            for (const auto& r : payload["rows"]) {
                s += csv_format(r["g"].get<double>()) + "," +
                     std::to_string(r["n_max"].get<int>()) + "," +
                     r["classification"].get<std::string>() + "," +
                     std::to_string(r["n_bub"].get<int>()) + ",";
                s += (r["lambda_first"].is_null() ? ""
                                                  : csv_format(r["lambda_first"].get<double>()));
                s += ",";
                s += (r["lambda_onset_terminal"].is_null()
                          ? ""
                          : csv_format(r["lambda_onset_terminal"].get<double>()));
                s += "," + csv_format(r["max_imag_overall"].get<double>()) + "\n";
            }
            return s;
        }
        if (subcmd == "scan") {
            std::string s = "lambda,max_imag,n_complex\n";
            for (const auto& t : payload["trace"])
                s += csv_format(t["lambda"].get<double>()) + "," +
                     csv_format(t["max_imag"].get<double>()) + "," +
                     std::to_string(t["n_complex"].get<int>()) + "\n";
            return s;
        }
        if (subcmd == "bands") {
            std::string s = "family,k,n,g_res,delta_e\n";
            for (const auto& e : payload["bands"])
                s += e["family"].get<std::string>() + "," + std::to_string(e["k"].get<int>()) +
                     "," + std::to_string(e["n"].get<int>()) + "," +
                     csv_format(e["g_res"].get<double>()) + "," +
                     csv_format(e["delta_e"].get<double>()) + "\n";
            return s;
        }
        throw std::invalid_argument("csv format not supported for subcommand " + subcmd);
    }
    throw std::invalid_argument("unknown format " + format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Projected-Liouvillian (QLQ) spectral toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string params_json;

    const auto add_shared = [&](CLI::App* sub) {
        sub->add_option("--n-max", cfg.n_max, "Fock truncation (>= 1)");
        sub->add_option("--g", cfg.g, "coupling");
        sub->add_option("--omega0", cfg.omega0, "qubit frequency");
        sub->add_option("--omega-c", cfg.omega_c, "mode frequency");
        sub->add_option("--bath", cfg.bath, "vacuum | thermal");
        sub->add_option("--beta", cfg.beta, "inverse temperature (thermal)");
        sub->add_option("--lambda", cfg.lambda, "deformation strength");
        sub->add_option("--lambda-grid", cfg.lambda_grid, "start:stop:step");
        sub->add_option("--kappa-grid", cfg.kappa_grid, "start:stop:step");
        sub->add_option("--tol-imag", cfg.tol_imag, "reality tolerance");
        sub->add_option("--sigma-eff", cfg.sigma_eff, "phenomenological band self-energy");
        sub->add_option("--threads", cfg.threads, "parallelism degree");
        sub->add_option("--out", cfg.out, "output path (stdout if omitted)");
        sub->add_option("--format", cfg.format, "json | csv");
        sub->add_option("--params-json", params_json, "JSON file with a RunConfig document");
    };

    std::vector<std::string> names = {"spectrum", "metric",  "sectors", "scan",        "phase-map",
                                      "thermal",  "lindblad", "bands",   "oracle-check"};
    for (const auto& n : names) add_shared(app.add_subcommand(n));
    app.get_subcommand("phase-map")->add_option("--g-list", cfg.g_list, "comma-separated g values");
    app.get_subcommand("phase-map")
        ->add_option("--n-max-list", cfg.n_max_list, "comma-separated truncations");

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    try {
        if (!params_json.empty()) {
            std::ifstream f(params_json);
            if (!f) throw std::invalid_argument("cannot read " + params_json);
            json doc = json::parse(f);
            if (doc.contains("n_max")) cfg.n_max = doc["n_max"];
            if (doc.contains("g")) cfg.g = doc["g"];
            if (doc.contains("omega0")) cfg.omega0 = doc["omega0"];
            if (doc.contains("omega_c")) cfg.omega_c = doc["omega_c"];
            if (doc.contains("bath")) cfg.bath = doc["bath"];
            if (doc.contains("beta")) cfg.beta = doc["beta"];
            if (doc.contains("lambda_grid")) cfg.lambda_grid = doc["lambda_grid"];
            if (doc.contains("kappa_grid")) cfg.kappa_grid = doc["kappa_grid"];
            if (doc.contains("tol_imag")) cfg.tol_imag = doc["tol_imag"];
        }
        cfg.params().validate();  // uniform validation before any allocation

        json payload;
        if (sub == "spectrum") payload = cmd_spectrum(cfg);
        else if (sub == "metric") payload = cmd_metric(cfg);
        else if (sub == "sectors") payload = cmd_sectors(cfg);
        else if (sub == "scan") payload = cmd_scan(cfg);
        else if (sub == "phase-map") payload = cmd_phase_map(cfg);
        else if (sub == "thermal") payload = cmd_thermal(cfg);
        else if (sub == "lindblad") payload = cmd_lindblad(cfg);
        else if (sub == "bands") payload = cmd_bands(cfg);
        else if (sub == "oracle-check") payload = cmd_oracle_check(cfg);

        write_text(cfg.out, render(payload, sub, cfg.format));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
