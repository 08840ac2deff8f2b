// dzl: command-line front end for the Dirichlet zero laboratory.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "dzl/bdelta.hpp"
#include "dzl/config.hpp"
#include "dzl/dirpoly.hpp"
#include "dzl/error.hpp"
#include "dzl/lab.hpp"
#include "dzl/model_m.hpp"
#include "dzl/util.hpp"
#include "dzl/zeros.hpp"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kConfigError = 1, kFailedRows = 2 };

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

json rect_json(const dzl::Rectangle& r) { return {r.sigma_lo, r.sigma_hi, r.t_lo, r.t_hi}; }

json zero_json(const dzl::ZeroRecord& z) {
    return {{"re", z.location.real()},      {"im", z.location.imag()},     {"residual", z.residual},
            {"relative_residual", z.relative_residual}, {"winding", z.winding}, {"box", rect_json(z.box)},
            {"iterations", z.iterations}};
}

dzl::Rectangle parse_box(const std::string& s) {
    const auto v = dzl::parse_number_list(s);
    if (v.size() != 4) throw std::invalid_argument("--box needs sigma_lo,sigma_hi,t_lo,t_hi");
    dzl::Rectangle r{v[0], v[1], v[2], v[3]};
    r.validate();
    return r;
}

int cmd_run(const std::string& path, const std::string& format) {
    dzl::ExperimentConfig cfg;
    try {
        cfg = dzl::load_config(path);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    const auto t0 = Clock::now();
    const dzl::Report rep = dzl::run_experiment(cfg);
    const std::string stem = cfg.output_stem.empty() ? dzl::to_string(cfg.id) : cfg.output_stem;
    std::vector<std::string> files;
    if (format == "json" || format == "both") {
        auto w = dzl::emit_report(rep, dzl::ReportFormat::json, cfg.output_dir, stem);
        files.insert(files.end(), w.begin(), w.end());
    }
    if (format == "csv" || format == "both") {
        auto w = dzl::emit_report(rep, dzl::ReportFormat::csv, cfg.output_dir, stem);
        files.insert(files.end(), w.begin(), w.end());
    }
    for (const auto& f : files) std::cout << f << '\n';
    std::cerr << rep.experiment << ": wall time " << dzl::g17(seconds_since(t0)) << " s\n";
    return rep.any_failed_rows() ? kFailedRows : kOk;
}

int cmd_fourier(const std::string& deltas, long J) {
    const auto ds = dzl::parse_number_list(deltas);
    std::cout << "delta,j,coeff_formula,coeff_quadrature,abs_err\n";
    bool bad = false;
    for (const auto& r : dzl::fourier_table(ds, J)) {
        std::cout << dzl::g17(r.delta) << ',' << r.j << ',' << dzl::g17(r.formula) << ',' << dzl::g17(r.quadrature)
                  << ',' << dzl::g17(r.abs_err) << '\n';
        bad = bad || !(r.abs_err < 1e-9);
    }
    return bad ? kFailedRows : kOk;
}

struct ZerosArgs {
    std::string function = "ones";
    std::string n = "1000";
    std::string box;
    std::string mode = "find";
    double c = 0.1;
    double t1_frac = -0.5;
};

int cmd_zeros(const ZerosArgs& a) {
    const auto t0 = Clock::now();
    json out;
    out["mode"] = a.mode;
    json params = {{"function", a.function}, {"n", a.n}};
    json windings = json::array(), zeros = json::array(), margins = json::object();
    int code = kOk;
    const double N = dzl::parse_number(a.n);

    if (a.mode == "model-m" || a.mode == "rouche") {
        const auto spec = dzl::FunctionSpec::parse(a.function);
        const double c = spec.c.value_or(a.c);
        const double L = std::log(N);
        const auto rect = dzl::montgomery_rectangle_from_log(L, c, spec.m, a.t1_frac * dzl::kTwoPi / L);
        dzl::FunctionSpec base = spec;
        base.delta.reset();
        base.c.reset();
        const auto f = dzl::build_function(base, 100000);
        const dzl::ModelMParams mp{dzl::compute_model_constants(f, spec.m, c), L};
        params["c"] = c;
        params["m"] = spec.m;
        params["delta"] = mp.constants.delta;
        params["rectangle"] = rect_json(rect.rect);
        if (a.mode == "model-m") {
            const auto w = dzl::model_M_winding(mp, rect);
            windings.push_back(w.winding.winding);
            margins = {{"min_boundary_modulus", w.winding.min_boundary_modulus},
                       {"side_arg", w.winding.side_arg},
                       {"right_max_M1_over_M2", w.dominance.right_max_M1_over_M2},
                       {"left_max_M2_over_M1", w.dominance.left_max_M2_over_M1},
                       {"regime_ok", w.regime_ok},
                       {"note", w.note}};
        } else {
            dzl::FunctionSpec tw = base;
            tw.c = c;
            const auto g = dzl::build_function(tw, static_cast<std::size_t>(std::llround(N)));
            const auto p = dzl::DirichletPolynomial::from_function(g);
            const auto r = dzl::rouche_gap_report(dzl::Evaluator::of(p), mp, rect);
            windings.push_back(r.poly_winding);
            windings.push_back(r.model_winding);
            margins = {{"max_ratio", r.max_ratio}, {"samples", r.samples}, {"consistent", r.consistent()}, {"error", r.error}};
            if (!r.consistent()) code = kFailedRows;
        }
    } else {
        const auto f = dzl::build_function(dzl::FunctionSpec::parse(a.function), static_cast<std::size_t>(std::llround(N)));
        const auto p = dzl::DirichletPolynomial::from_function(f);
        const auto box = parse_box(a.box);
        params["box"] = rect_json(box);
        if (a.mode == "find") {
            const auto r = dzl::find_zeros(p, box);
            windings.push_back(r.winding);
            for (const auto& z : r.zeros) zeros.push_back(zero_json(z));
            bool conserved = true;
            for (const auto& q : r.subdivisions) conserved = conserved && q.conserved();
            margins = {{"jitter_attempts", r.jitter_attempts}, {"box", rect_json(r.box)},
                       {"subdivisions", r.subdivisions.size()}, {"conserved", conserved}};
        } else if (a.mode == "certify") {
            const auto r = dzl::certify_zero_free(p, box.sigma_lo, box.t_lo, box.t_hi);
            for (int w : r.windings) windings.push_back(w);
            margins = {{"min_modulus", r.min_modulus}, {"sigma_dom", r.sigma_dom}, {"boxes", r.boxes},
                       {"dominated", r.dominated}, {"zero_free", r.zero_free}};
            if (!r.zero_free) code = kFailedRows;
        } else if (a.mode == "rightmost") {
            const auto r = dzl::rightmost_zero_scan(p, box.sigma_lo, box.t_lo, box.t_hi);
            if (r.witness) zeros.push_back(zero_json(*r.witness));
            margins = {{"sigma_dom", r.sigma_dom}, {"strips", r.strips}};
            if (r.sigma_max)
                margins["sigma_max"] = *r.sigma_max;
            else
                margins["sigma_max"] = nullptr;
        } else {
            throw std::invalid_argument("unknown mode '" + a.mode + "'");
        }
    }
    out["params"] = params;
    out["windings"] = windings;
    out["zeros"] = zeros;
    out["margins"] = margins;
    out["timing"] = {{"wall_seconds", seconds_since(t0)}};
    std::cout << out.dump(2) << '\n';
    return code;
}

int cmd_quad(const std::string& check) {
    dzl::ExperimentConfig cfg;
    cfg.id = dzl::ExperimentId::E4_quadrature;
    cfg.N = {1.0};
    cfg.extra["checks"] = check;
    const auto rep = dzl::run_experiment(cfg);
    dzl::write_table_csv(std::cout, rep.table(check));
    return rep.any_failed_rows() ? kFailedRows : kOk;
}

int cmd_gen(const std::string& function, const std::string& n, const std::string& out) {
    const auto f = dzl::build_function(dzl::FunctionSpec::parse(function),
                                       static_cast<std::size_t>(std::llround(dzl::parse_number(n))));
    if (out.empty() || out == "-") {
        dzl::write_coefficients_csv(std::cout, f);
    } else {
        std::ofstream os(out);
        if (!os) throw std::runtime_error("cannot write '" + out + "'");
        dzl::write_coefficients_csv(os, f);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dirichlet polynomial zero laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dzl::library_version());

    std::string config, format = "both";
    auto* run = app.add_subcommand("run", "Run an experiment from a config file");
    run->add_option("config", config, "Config file")->required();
    run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "both"}));

    std::string deltas = "0,0.01,0.05,0.1,0.2";
    long J = 50;
    auto* fourier = app.add_subcommand("fourier", "Fourier coefficients: closed form against quadrature (CSV)");
    fourier->add_option("--delta", deltas, "Comma-separated delta values");
    fourier->add_option("-J,--J", J, "Largest |j|")->check(CLI::PositiveNumber);

    ZerosArgs za;
    auto* zeros = app.add_subcommand("zeros", "Locate or certify zeros (JSON)");
    zeros->add_option("--function", za.function, "Function spec, e.g. ones, dk:k=2, ones:c=0.1");
    zeros->add_option("--n", za.n, "Polynomial length N");
    zeros->add_option("--box", za.box, "sigma_lo,sigma_hi,t_lo,t_hi");
    zeros->add_option("--mode", za.mode, "Operation")->check(CLI::IsMember({"find", "certify", "rightmost", "model-m", "rouche"}));
    zeros->add_option("--c", za.c, "c for model-m and rouche when the spec has none");
    zeros->add_option("--t1-frac", za.t1_frac, "t1 as a multiple of 2 pi / log N");

    std::string check;
    auto* quad = app.add_subcommand("quad", "Quadrature checks (CSV)");
    quad->add_option("--check", check, "Which check")->required()->check(CLI::IsMember({"perron", "hankel", "segment", "shiu"}));

    std::string gen_fn = "ones", gen_n = "100", gen_out;
    auto* gen = app.add_subcommand("gen", "Export coefficients as CSV n,re,im");
    gen->add_option("--function", gen_fn, "Function spec");
    gen->add_option("--n", gen_n, "Length N");
    gen->add_option("-o,--out", gen_out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kConfigError;
    }
    std::cout.precision(17);
    try {
        if (*run) return cmd_run(config, format);
        if (*fourier) return cmd_fourier(deltas, J);
        if (*zeros) {
            if (za.box.empty() && za.mode != "model-m" && za.mode != "rouche")
                throw std::invalid_argument("--box is required for this mode");
            return cmd_zeros(za);
        }
        if (*quad) return cmd_quad(check);
        if (*gen) return cmd_gen(gen_fn, gen_n, gen_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const dzl::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailedRows;
    }
    return kOk;
}
