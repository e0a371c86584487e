#ifndef MEBOUND_ROOTSOLVE_HPP
#define MEBOUND_ROOTSOLVE_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mebound/detail/mpcomplex.hpp"
#include "mebound/detail/parallel.hpp"
#include "mebound/orbit.hpp"

namespace mebound {

struct NonConvergence : std::runtime_error {
    double worst_residual;
    NonConvergence(const std::string& msg, double worst)
        : std::runtime_error(msg), worst_residual(worst) {}
};

struct CollisionDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double residual_tol = 1e-10;
    double step_tol = 1e-12;
    double min_separation = 1e-8;
    // from a single outer circle the front contracts by roughly one order of
    // magnitude in |P| per sweep; degree 1023 needs ~530 sweeps
    int max_sweeps = 800;
    double init_radius = 2.2;
    int threads = 1;
};

/// The d complex roots of a deflated periodicity polynomial.
struct ConjugateSet {
    std::vector<std::complex<double>> points;
    int degree = 0;
    std::vector<double> residuals;
    std::string label;
};

struct CertifyReport {
    double max_residual = 0.0;
    double min_separation = std::numeric_limits<double>::infinity();
    bool pass = false;
};

namespace detail {

inline double min_pairwise_separation(const std::vector<std::complex<double>>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, std::abs(pts[i] - pts[j]));
    return best;
}

}  // namespace detail

/// Simultaneous Aberth-Ehrlich iteration driven by the orbit evaluator.
/// Initial guesses sit on the circle |c| = cfg.init_radius (outside the root
/// disc |c| <= 2) with an irrational angular offset. Sweeps are Jacobi style:
/// every point updates from the previous sweep's snapshot.
inline ConjugateSet solve_all_roots(const OrbitEvaluator<long double>& ev, int degree,
                                    const SolverConfig& cfg = {}) {
    using C = std::complex<long double>;
    if (degree < 1) throw std::invalid_argument("solve_all_roots: degree must be >= 1");
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double offset = 0.61803398874989484820L;  // frac(1/golden ratio)
    std::vector<C> z(degree), znew(degree);
    for (int k = 0; k < degree; ++k) {
        const long double theta = 2.0L * pi * (static_cast<long double>(k) + offset) /
                                  static_cast<long double>(degree);
        z[k] = std::polar<long double>(cfg.init_radius, theta);
    }

    std::vector<long double> step(degree, 0.0L), resid(degree, 0.0L);
    bool converged = false;
    for (int sweep = 0; sweep < cfg.max_sweeps && !converged; ++sweep) {
        mebound::detail::parallel_for(static_cast<std::size_t>(degree), cfg.threads,
                                      [&](std::size_t i) {
            const C zi = z[i];
            const auto e = ev(zi);
            resid[i] = std::abs(e.value);
            if (!std::isfinite(resid[i]) || e.deriv == C(0)) {
                znew[i] = zi * 0.5L;  // pull an escaped/degenerate point inward
                step[i] = std::abs(znew[i] - zi);
                return;
            }
            const C newton = e.value / e.deriv;
            C repulse(0);
            for (int j = 0; j < degree; ++j)
                if (j != static_cast<int>(i)) repulse += 1.0L / (zi - z[j]);
            const C denom = 1.0L - newton * repulse;
            C corr = (denom == C(0)) ? newton : newton / denom;
            if (!std::isfinite(std::abs(corr))) corr = newton;
            C cand = zi - corr;
            const long double mag = std::abs(cand);
            if (mag > 8.0L) cand *= 8.0L / mag;  // keep iterates in long-double range
            znew[i] = cand;
            step[i] = std::abs(cand - zi);
        });
        z.swap(znew);
        long double worst_step = 0.0L, worst_resid = 0.0L;
        for (int i = 0; i < degree; ++i) {
            worst_step = std::max(worst_step, step[i]);
            worst_resid = std::max(worst_resid, resid[i]);
        }
        converged = worst_step <= static_cast<long double>(cfg.step_tol) &&
                    worst_resid <= static_cast<long double>(cfg.residual_tol);
    }

    ConjugateSet out;
    out.degree = degree;
    out.points.resize(degree);
    out.residuals.resize(degree);
    long double worst = 0.0L;
    for (int i = 0; i < degree; ++i) {
        out.points[i] = {static_cast<double>(z[i].real()), static_cast<double>(z[i].imag())};
        const long double r = std::abs(ev(z[i]).value);
        out.residuals[i] = static_cast<double>(r);
        worst = std::max(worst, r);
    }
    if (!converged)
        throw NonConvergence("solve_all_roots: iteration cap reached (" +
                                 std::to_string(cfg.max_sweeps) + " sweeps)",
                             static_cast<double>(worst));
    const double sep = detail::min_pairwise_separation(out.points);
    if (sep < cfg.min_separation)
        throw CollisionDetected("solve_all_roots: two approximations within " +
                                std::to_string(sep) +
                                " (multiple root or bad initialization)");
    return out;
}

/// Re-evaluates every root at 256-bit precision and reports the worst
/// residual and the minimum pairwise separation. Pure report, never throws
/// on failed checks.
inline CertifyReport certify(const ConjugateSet& roots, const IterationSpec& spec,
                             const std::vector<long>& deflated_roots, double tol,
                             int threads = 1) {
    constexpr mp_bitcnt_t kBits = 256;
    CertifyReport rep;
    std::vector<double> res(roots.points.size(), 0.0);
    mebound::detail::parallel_for(roots.points.size(), threads, [&](std::size_t i) {
        res[i] = mebound::detail::orbit_residual_mp(spec, deflated_roots, roots.points[i], kBits)
                     .get_d();
    });
    for (double r : res) rep.max_residual = std::max(rep.max_residual, r);
    rep.min_separation = detail::min_pairwise_separation(roots.points);
    rep.pass = rep.max_residual <= tol && roots.points.size() == static_cast<std::size_t>(roots.degree);
    return rep;
}

inline std::string format_double17(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// CSV: header "index,re,im,residual", one root per row.
inline void write_roots_csv(std::ostream& os, const ConjugateSet& s) {
    os << "index,re,im,residual\n";
    for (std::size_t i = 0; i < s.points.size(); ++i)
        os << i << ',' << format_double17(s.points[i].real()) << ','
           << format_double17(s.points[i].imag()) << ',' << format_double17(s.residuals[i])
           << '\n';
}

inline ConjugateSet read_roots_csv(std::istream& is, const std::string& label = "") {
    ConjugateSet s;
    s.label = label;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("roots csv: empty file");
    if (line.rfind("index,", 0) != 0)
        throw std::runtime_error("roots csv: bad header: " + line);
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f0, f1, f2, f3;
        if (!std::getline(ls, f0, ',') || !std::getline(ls, f1, ',') ||
            !std::getline(ls, f2, ',') || !std::getline(ls, f3, ','))
            throw std::runtime_error("roots csv: parse failure at line " + std::to_string(lineno));
        s.points.emplace_back(std::stod(f1), std::stod(f2));
        s.residuals.push_back(std::stod(f3));
    }
    s.degree = static_cast<int>(s.points.size());
    return s;
}

}  // namespace mebound

#endif  // MEBOUND_ROOTSOLVE_HPP
