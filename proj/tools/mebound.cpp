// Command-line pipeline: build-poly -> solve-roots -> energy -> bound, plus
// a `run` subcommand that executes all stages and writes a JSON report.

#include <complex>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mebound/bounds.hpp"
#include "mebound/energy.hpp"
#include "mebound/int_poly.hpp"
#include "mebound/mandel.hpp"
#include "mebound/pipeline.hpp"
#include "mebound/rootsolve.hpp"

namespace {

mebound::ConjugateSet load_roots(const std::string& path, const std::string& label) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open roots file: " + path);
    return mebound::read_roots_csv(is, label);
}

double parse_eps(const std::string& eps_str, int degree_hint) {
    if (eps_str == "auto") {
        if (degree_hint <= 0) throw std::runtime_error("--eps auto requires a known degree");
        return 1.0 / (static_cast<double>(degree_hint) * degree_hint);
    }
    return std::stod(eps_str);
}

int cmd_build_poly(long a, long b, bool b_set, int n, const std::string& out) {
    mebound::IterationSpec spec{a, b_set ? b : a, n};
    const mebound::IntPoly p = mebound::iterate_orbit_poly(spec);
    const mebound::Deflation d = mebound::deflate_integer_roots(p);
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file: " + out);
    mebound::write_poly_text(os, d.quotient, &spec, &d.removed_roots);
    std::cerr << "build-poly: degree " << d.quotient.degree() << " after removing "
              << d.removed_roots.size() << " integer root(s)\n";
    return 0;
}

int cmd_solve_roots(const std::string& poly_path, const std::string& out, double residual_tol,
                    int threads) {
    std::ifstream is(poly_path);
    if (!is) throw std::runtime_error("cannot open poly file: " + poly_path);
    const mebound::PolyFile pf = mebound::read_poly_text(is);
    if (!pf.has_spec)
        throw std::runtime_error("poly file lacks iteration metadata; regenerate with build-poly");
    mebound::OrbitEvaluator<long double> ev;
    ev.spec = pf.spec;
    for (const auto& r : pf.removed_roots) ev.deflated_roots.push_back(r.get_si());
    mebound::SolverConfig cfg;
    cfg.residual_tol = residual_tol;
    cfg.threads = threads;
    mebound::ConjugateSet roots =
        mebound::solve_all_roots(ev, static_cast<int>(pf.poly.degree()), cfg);
    roots.label = mebound::witness_label(pf.spec.a, pf.spec.n);
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file: " + out);
    mebound::write_roots_csv(os, roots);
    const auto cert = mebound::certify(roots, pf.spec, ev.deflated_roots, residual_tol, threads);
    std::cerr << "solve-roots: " << roots.points.size() << " roots, max residual "
              << cert.max_residual << ", min separation " << cert.min_separation
              << (cert.pass ? " [certified]" : " [CERTIFICATION FAILED]") << "\n";
    return cert.pass ? 0 : 1;
}

nlohmann::ordered_json breakdown_json(const mebound::EnergyBreakdown& b) {
    nlohmann::ordered_json j;
    to_json(j, b);
    return j;
}

int cmd_energy(const std::string& self_path, const std::vector<std::string>& cross_paths,
               const std::string& eps_str, const std::string& mode, const std::string& out,
               int threads) {
    nlohmann::ordered_json result;
    const bool want_bound = mode != "exact-quadrature";
    const bool want_exact = mode != "paper-bound";
    if (!self_path.empty()) {
        const auto roots = load_roots(self_path, "self");
        const double eps = parse_eps(eps_str, roots.degree);
        const auto mu = mebound::RegularizedMeasure::uniform(roots.points, eps);
        if (want_bound)
            result["paper_bound"] =
                breakdown_json(mebound::regularized_self_energy(mu, mebound::EnergyMode::PaperBound, threads));
        if (want_exact)
            result["exact_quadrature"] = breakdown_json(
                mebound::regularized_self_energy(mu, mebound::EnergyMode::ExactQuadrature, threads));
    } else {
        const auto ra = load_roots(cross_paths[0], "alpha");
        const auto rb = load_roots(cross_paths[1], "beta");
        const double eps = parse_eps(eps_str, ra.degree);
        const auto mu = mebound::RegularizedMeasure::uniform(ra.points, eps);
        const auto nu = mebound::RegularizedMeasure::uniform(rb.points, eps);
        if (want_bound)
            result["paper_bound"] = breakdown_json(
                mebound::regularized_cross_energy(mu, nu, mebound::EnergyMode::PaperBound, threads));
        if (want_exact)
            result["exact_quadrature"] = breakdown_json(mebound::regularized_cross_energy(
                mu, nu, mebound::EnergyMode::ExactQuadrature, threads));
    }
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file: " + out);
    os << result.dump(2) << '\n';
    return 0;
}

int cmd_bound(const std::string& alpha_path, const std::string& beta_path,
              const std::string& eps_str, const std::string& out, int threads) {
    const auto alpha = load_roots(alpha_path, "alpha");
    const auto beta = load_roots(beta_path, "beta");
    const double eps = parse_eps(eps_str, alpha.degree);
    const mebound::BoundReport br = mebound::make_bound_report(alpha, beta, eps, threads);
    nlohmann::ordered_json j;
    to_json(j, br);
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file: " + out);
    os << j.dump(2) << '\n';
    std::cerr << "bound: LB " << br.lower_bound_used << ", max_degree " << br.max_degree << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mutual-energy degree bounds for quadratic unlikely intersections"};
    app.require_subcommand(1);

    // build-poly
    long bp_a = 0, bp_b = 0;
    int bp_n = 11;
    std::string bp_out = "poly.txt";
    auto* build = app.add_subcommand("build-poly", "expand and deflate f_c^n(a) - b");
    build->add_option("--a", bp_a, "initial value a")->required();
    auto* bopt = build->add_option("--b", bp_b, "target value b (default: a, periodicity)");
    build->add_option("--n", bp_n, "iteration depth");
    build->add_option("--out", bp_out, "output polynomial text file");

    // solve-roots
    std::string sr_poly, sr_out = "roots.csv";
    double sr_tol = 1e-10;
    int sr_threads = 1;
    auto* solve = app.add_subcommand("solve-roots", "locate all roots of a deflated polynomial");
    solve->add_option("--poly", sr_poly, "polynomial file from build-poly")->required();
    solve->add_option("--out", sr_out, "output roots CSV");
    solve->add_option("--residual-tol", sr_tol, "certification residual tolerance");
    solve->add_option("--threads", sr_threads, "worker thread cap");

    // energy
    std::string en_self, en_eps = "auto", en_mode = "paper-bound", en_out = "energy.json";
    std::vector<std::string> en_cross;
    int en_threads = 1;
    auto* energy = app.add_subcommand("energy", "regularized energy breakdowns");
    auto* self_opt = energy->add_option("--self", en_self, "roots CSV for a self energy");
    energy->add_option("--cross", en_cross, "two roots CSVs for a cross energy")->expected(2);
    energy->add_option("--eps", en_eps, "circle radius, or 'auto' for 1/d^2");
    energy->add_option("--mode", en_mode, "paper-bound | exact-quadrature | both")
        ->check(CLI::IsMember({"paper-bound", "exact-quadrature", "both"}));
    energy->add_option("--out", en_out, "output JSON");
    energy->add_option("--threads", en_threads, "worker thread cap");

    // bound
    std::string bd_alpha, bd_beta, bd_eps = "auto", bd_out = "bound.json";
    int bd_threads = 1;
    auto* bound = app.add_subcommand("bound", "assemble LB, UB curve and max degree");
    bound->add_option("--alpha", bd_alpha, "roots CSV of the first witness")->required();
    bound->add_option("--beta", bd_beta, "roots CSV of the second witness")->required();
    bound->add_option("--eps", bd_eps, "witness circle radius, or 'auto' for 1/d^2");
    bound->add_option("--out", bd_out, "output JSON");
    bound->add_option("--threads", bd_threads, "worker thread cap");

    // run
    mebound::PipelineConfig cfg;
    std::string run_eps = "auto";
    auto* run = app.add_subcommand("run", "full pipeline with JSON report");
    run->add_option("--a", cfg.a, "first initial value");
    run->add_option("--b", cfg.b, "second initial value");
    run->add_option("--n", cfg.n, "iteration depth");
    run->add_option("--eps", run_eps, "witness circle radius, or 'auto' for 1/d^2");
    run->add_option("--mode", cfg.mode, "paper-bound | exact-quadrature | both")
        ->check(CLI::IsMember({"paper-bound", "exact-quadrature", "both"}));
    run->add_option("--threads", cfg.threads, "worker thread cap");
    run->add_option("--out", cfg.out_dir, "output directory");
    run->add_option("--residual-tol", cfg.solver.residual_tol, "root certification tolerance");
    run->add_option("--report", cfg.report_format, "json | text")
        ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);

    std::string stage = "cli";
    try {
        if (build->parsed()) {
            stage = "build-poly";
            return cmd_build_poly(bp_a, bp_b, bopt->count() > 0, bp_n, bp_out);
        }
        if (solve->parsed()) {
            stage = "solve-roots";
            return cmd_solve_roots(sr_poly, sr_out, sr_tol, sr_threads);
        }
        if (energy->parsed()) {
            stage = "energy";
            if (en_self.empty() == en_cross.empty())
                throw std::runtime_error("pass exactly one of --self or --cross");
            (void)self_opt;
            return cmd_energy(en_self, en_cross, en_eps, en_mode, en_out, en_threads);
        }
        if (bound->parsed()) {
            stage = "bound";
            return cmd_bound(bd_alpha, bd_beta, bd_eps, bd_out, bd_threads);
        }
        if (run->parsed()) {
            stage = "run";
            if (run_eps != "auto") cfg.eps_witness = std::stod(run_eps);
            const bool ok = mebound::run_pipeline(cfg);
            if (!ok) std::cerr << "run: certification failed; see report\n";
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error [" << stage << "]: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
