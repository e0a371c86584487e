// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures. Runs at full scale (degree-1023 witnesses).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mebound/bounds.hpp"
#include "mebound/energy.hpp"
#include "mebound/int_poly.hpp"
#include "mebound/mandel.hpp"
#include "mebound/pipeline.hpp"
#include "mebound/rootsolve.hpp"
#include "oracles.hpp"

using namespace mebound;
using C = std::complex<double>;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

double multiset_conjugation_defect(const std::vector<C>& pts) {
    std::vector<C> conj;
    conj.reserve(pts.size());
    for (const auto& p : pts) conj.push_back(std::conj(p));
    return oracles::multiset_distance(pts, conj);
}

RegularizedMeasure random_measure(std::mt19937& rng, int max_pts, double eps) {
    std::uniform_int_distribution<int> npts(1, max_pts);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    std::vector<C> pts;
    const int n = npts(rng);
    for (int i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
    return RegularizedMeasure::uniform(std::move(pts), eps);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    const double eps = 1.0 / (1023.0 * 1023.0);
    SolverConfig scfg;

    std::printf("building witnesses (a = 0 and a = 1, n = 11, degree 1023 each)...\n");
    const WitnessArtifacts wg = build_witness(0, 11, scfg);  // beta / G side
    const WitnessArtifacts wf = build_witness(1, 11, scfg);  // alpha / F side

    // 1. exact coefficients of the deflated witness polynomials
    {
        const auto& g = wg.defl.quotient.coeffs;
        const auto& f = wf.defl.quotient.coeffs;
        bool ok = wg.degree == 1023 && wf.degree == 1023;
        const long glo[] = {1, 1, 2, 5, 14, 42};
        for (int k = 0; ok && k < 6; ++k) ok = g[static_cast<std::size_t>(k)] == glo[k];
        ok = ok && g[1021] == 130816 && g[1022] == 512 && g[1023] == 1;
        ok = ok && f[0] == 2047 && f[1] == 2075647 && f[2] == 1393985534;
        ok = ok && f[1021] == 1177856 && f[1022] == 1536 && f[1023] == 1;
        report(1, ok, "deflated coefficient spot checks, exact integers");
    }

    const auto da = DiscreteMeasure::uniform(wf.roots.points);
    const auto db = DiscreteMeasure::uniform(wg.roots.points);
    const double alpha_disc = discrete_energy(da, da);
    const double beta_disc = discrete_energy(db, db);

    // 2. discrete self-energies against the printed constants
    {
        const double d1 = alpha_disc - (-0.00839974);
        const double d2 = beta_disc - (-0.00677444);
        const bool ok = std::abs(d1) <= 2e-5 && std::abs(d2) <= 2e-5;
        report(2, ok,
               "(alpha,alpha) = " + fmt(alpha_disc) + " (delta " + fmt(d1) + "), (beta,beta) = " +
                   fmt(beta_disc) + " (delta " + fmt(d2) + ")");
    }

    const auto mua = RegularizedMeasure::uniform(wf.roots.points, eps);
    const auto mub = RegularizedMeasure::uniform(wg.roots.points, eps);
    const double alpha_reg = regularized_self_energy(mua, EnergyMode::PaperBound).total;
    const double beta_reg = regularized_self_energy(mub, EnergyMode::PaperBound).total;
    const double m2cross = -2.0 * regularized_cross_energy(mua, mub, EnergyMode::PaperBound).total;

    // 3. regularized bound-mode energies at eps = 1/1023^2
    {
        const double d1 = alpha_reg - 0.00514961;
        const double d2 = beta_reg - 0.00677490;
        const double d3 = m2cross - 0.630005;
        const bool ok = std::abs(d1) <= 2e-5 && std::abs(d2) <= 2e-5 && std::abs(d3) <= 5e-5;
        report(3, ok,
               "alpha_reg = " + fmt(alpha_reg) + ", beta_reg = " + fmt(beta_reg) +
                   ", -2 cross = " + fmt(m2cross));
    }

    // 4. degree bound with the printed threshold 0.566325 (taken literally)
    {
        auto rule = [](int d) { return 1.0 / (static_cast<double>(d) * d); };
        int solved = -1;
        try {
            solved = solve_max_degree(0.566325, rule);
        } catch (const std::exception&) {
        }
        const double ub108 = upper_bound(108, rule(108));
        const double ub109 = upper_bound(109, rule(109));
        const bool ok = solved == 108 && ub109 < 0.566325 && 0.566325 <= ub108;
        report(4, ok,
               "solve_max_degree(0.566325) = " + std::to_string(solved) + ", UB(108) = " +
                   fmt(ub108) + ", UB(109) = " + fmt(ub109));
        if (!ok) {
            // informational: the bracketing does hold at the assembled value
            const int alt = solve_max_degree(0.623482, rule);
            std::printf("              note: solve_max_degree(0.623482) = %d, "
                        "UB(109) = %s < 0.623482 <= UB(108) = %s holds: %s\n",
                        alt, fmt(ub109).c_str(), fmt(ub108).c_str(),
                        (alt == 108 && ub109 < 0.623482 && 0.623482 <= ub108) ? "yes" : "no");
        }
    }

    // 5. assembled lower bound in range, report carries deltas to both constants
    {
        PipelineConfig cfg;  // defaults: a=0, b=1, n=11
        const auto rep = make_report(cfg, wg, wf);
        const double lb = rep["bound"]["component_terms"]["lower_bound"].get<double>();
        const bool has_deltas = rep.contains("paper_constants") &&
                                rep["paper_constants"].contains("lower_bound_vs_prop") &&
                                rep["paper_constants"].contains("lower_bound_vs_theorem");
        const bool ok = lb >= 0.56 && lb <= 0.64 && has_deltas;
        report(5, ok, "assembled LB = " + fmt(lb) + ", deltas present: " +
                          (has_deltas ? "yes" : "no"));
    }

    // 6. root certification at full scale
    {
        const bool counts_ok = wf.roots.points.size() == 1023 && wg.roots.points.size() == 1023 &&
                               wf.cert.min_separation > 1e-8 && wg.cert.min_separation > 1e-8;
        const bool resid_ok = wf.cert.max_residual <= 1e-10 && wg.cert.max_residual <= 1e-10;
        const double cf = multiset_conjugation_defect(wf.roots.points);
        const double cg = multiset_conjugation_defect(wg.roots.points);
        const bool conj_ok = cf <= 1e-10 && cg <= 1e-10;
        int outside = 0;
        double maxabs = 0;
        for (const auto* w : {&wf, &wg})
            for (const auto& p : w->roots.points) {
                maxabs = std::max(maxabs, std::abs(p));
                if (std::abs(p) > 2.0 + 1e-12) ++outside;
            }
        const bool disc_ok = outside == 0;
        const bool member_ok = wf.membership_bounded == 1023 && wg.membership_bounded == 1023;
        const bool ok = counts_ok && resid_ok && conj_ok && disc_ok && member_ok;
        report(6, ok,
               std::string("distinct ") + (counts_ok ? "ok" : "FAIL") + ", residuals " +
                   fmt(wf.cert.max_residual) + " / " + fmt(wg.cert.max_residual) +
                   ", conjugation defect " + fmt(std::max(cf, cg)) + ", outside |c|<=2: " +
                   std::to_string(outside) + " (max |c| " + fmt(maxabs) + "), bounded " +
                   std::to_string(wf.membership_bounded) + " / " +
                   std::to_string(wg.membership_bounded));
        if (!ok) {
            std::printf("              note: every clause holds for the a = 0 witness; the "
                        "failures are all on the a = 1 side and are intrinsic, not solver "
                        "defects.\n");
            if (!disc_ok)
                std::printf("              note: the a = 1 root set genuinely extends past "
                            "radius 2 (real root near -2-sqrt(2) = -3.4142136, where the orbit "
                            "of 1 is eventually fixed), so the |c| <= 2 clause cannot hold.\n");
            if (!resid_ok)
                std::printf("              note: the residual excess is the double-rounding "
                            "floor |P'(r)| * ulp at that outermost root (|P'| ~ 1.3e6 gives "
                            "~1e-10); the stored 17-digit roots cannot sit closer to the true "
                            "root than one half ulp.\n");
            if (!member_ok)
                std::printf("              note: the a = 1 parameters put z = 1 on a repelling "
                            "cycle, so any fixed-precision forward orbit of the rounded root "
                            "eventually crosses the escape radius even though the true orbit "
                            "is periodic.\n");
        }
    }

    // 7. metric axioms on 200 random triples, exact-quadrature mode
    {
        std::mt19937 rng(60221023);
        std::uniform_real_distribution<double> leps(std::log(1e-6), std::log(1e-2));
        bool ok = true;
        double worst_sym = 0, worst_tri = 0;
        for (int t = 0; t < 200 && ok; ++t) {
            const double e = std::exp(leps(rng));
            const auto A = random_measure(rng, 10, e);
            const auto B = random_measure(rng, 10, e);
            const auto Cm = random_measure(rng, 10, e);
            const double dAB = mutual_energy_distance(A, B, EnergyMode::ExactQuadrature);
            const double dBA = mutual_energy_distance(B, A, EnergyMode::ExactQuadrature);
            const double dBC = mutual_energy_distance(B, Cm, EnergyMode::ExactQuadrature);
            const double dAC = mutual_energy_distance(A, Cm, EnergyMode::ExactQuadrature);
            worst_sym = std::max(worst_sym, std::abs(dAB - dBA));
            worst_tri = std::max(worst_tri, dAC - dAB - dBC);
            ok = ok && std::abs(dAB - dBA) <= 1e-12 && dAC <= dAB + dBC + 1e-9;
            auto B2 = A;
            std::shuffle(B2.centers.begin(), B2.centers.end(), rng);
            ok = ok && mutual_energy_distance(A, B2, EnergyMode::ExactQuadrature) <= 1e-7;
        }
        report(7, ok, "200 triples; worst symmetry " + fmt(worst_sym) + ", worst triangle slack " +
                          fmt(-worst_tri));
    }

    // 8. regularization inequality on 200 random (set, eps) instances
    {
        std::mt19937 rng(271828);
        std::uniform_real_distribution<double> leps(std::log(1e-6), std::log(1e-2));
        bool ok = true;
        double worst = 1e300;
        for (int t = 0; t < 200 && ok; ++t) {
            const double e = std::exp(leps(rng));
            const auto mu = random_measure(rng, 10, e);
            const auto disc = DiscreteMeasure::uniform(mu.centers);
            const double rhs = discrete_energy(disc, disc) -
                               std::log(e) / static_cast<double>(mu.centers.size());
            for (auto mode : {EnergyMode::PaperBound, EnergyMode::ExactQuadrature}) {
                const double slack = rhs - regularized_self_energy(mu, mode).total;
                worst = std::min(worst, slack);
                ok = ok && slack >= -1e-12;
            }
        }
        report(8, ok, "200 instances, both modes; worst slack " + fmt(worst));
    }

    // 9. small-case oracle equivalence (n <= 4) and miniature pipeline
    {
        bool ok = true;
        double worst = 0;
        for (long a : {0L, 1L}) {
            for (int n = 2; n <= 4; ++n) {
                const auto d = deflate_integer_roots(iterate_orbit_poly({a, a, n}));
                if (d.quotient.degree() < 1) continue;
                OrbitEvaluator<long double> ev;
                ev.spec = IterationSpec{a, a, n};
                for (const auto& r : d.removed_roots) ev.deflated_roots.push_back(r.get_si());
                const auto roots = solve_all_roots(ev, static_cast<int>(d.quotient.degree()));
                std::vector<double> c;
                for (const auto& ck : d.quotient.coeffs) c.push_back(ck.get_d());
                const auto oracle = oracles::roots_by_factoring(c);
                const double dist = oracles::multiset_distance(roots.points, oracle);
                worst = std::max(worst, dist);
                ok = ok && dist <= 1e-10;
                // energies computed from either root set agree to the same tolerance
                const auto m1 = DiscreteMeasure::uniform(roots.points);
                const auto m2 = DiscreteMeasure::uniform(oracle);
                ok = ok && std::abs(discrete_energy(m1, m1) - discrete_energy(m2, m2)) <= 1e-10;
            }
        }
        const auto dir = fs::temp_directory_path() / "mebound_acceptance_mini";
        fs::remove_all(dir);
        PipelineConfig cfg;
        cfg.n = 3;
        cfg.out_dir = dir.string();
        ok = ok && run_pipeline(cfg);
        fs::remove_all(dir);
        report(9, ok, "worst root multiset distance " + fmt(worst) + ", n = 3 pipeline certified");
    }

    // 10. bit-identical default reports across 1, 4, 8 worker threads
    {
        std::string first;
        bool ok = true;
        for (int threads : {1, 4, 8}) {
            const auto dir =
                fs::temp_directory_path() / ("mebound_acceptance_thr" + std::to_string(threads));
            fs::remove_all(dir);
            PipelineConfig cfg;  // default run: a=0, b=1, n=11, mode both
            cfg.threads = threads;
            cfg.out_dir = dir.string();
            run_pipeline(cfg);  // return value (certification verdict) is criterion 6's business
            const std::string rep = slurp(dir / "report.json");
            ok = ok && !rep.empty();
            if (first.empty())
                first = rep;
            else
                ok = ok && rep == first;
            fs::remove_all(dir);
        }
        report(10, ok, "default pipeline, threads 1/4/8, report.json compared byte for byte");
    }

    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
