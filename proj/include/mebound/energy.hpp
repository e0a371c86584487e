#ifndef MEBOUND_ENERGY_HPP
#define MEBOUND_ENERGY_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mebound/detail/parallel.hpp"

namespace mebound {

struct InvalidEpsilon : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EpsilonMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NegativeRadicand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Weighted point masses; weights are positive and sum to 1.
struct DiscreteMeasure {
    std::vector<std::complex<double>> points;
    std::vector<double> weights;

    static DiscreteMeasure uniform(std::vector<std::complex<double>> pts) {
        DiscreteMeasure m;
        m.weights.assign(pts.size(), pts.empty() ? 0.0 : 1.0 / static_cast<double>(pts.size()));
        m.points = std::move(pts);
        return m;
    }
};

/// Point masses smeared to uniform measure on circles of radius epsilon.
struct RegularizedMeasure {
    std::vector<std::complex<double>> centers;
    double epsilon = 0.0;
    std::vector<double> weights;

    static RegularizedMeasure uniform(std::vector<std::complex<double>> centers, double eps) {
        RegularizedMeasure m;
        m.weights.assign(centers.size(),
                         centers.empty() ? 0.0 : 1.0 / static_cast<double>(centers.size()));
        m.centers = std::move(centers);
        m.epsilon = eps;
        return m;
    }
};

enum class EnergyMode { PaperBound, ExactQuadrature };

inline std::string to_string(EnergyMode m) {
    return m == EnergyMode::PaperBound ? "paper-bound" : "exact-quadrature";
}

/// Itemized energy sum, in nats. total = self + disjoint + near within 1e-12.
struct EnergyBreakdown {
    double total = 0.0;
    double self_terms = 0.0;
    double disjoint_pair_terms = 0.0;
    double near_pair_terms = 0.0;
    long near_pair_count = 0;
    EnergyMode mode = EnergyMode::PaperBound;
};

inline void to_json(nlohmann::ordered_json& j, const EnergyBreakdown& b) {
    j = nlohmann::ordered_json{{"total", b.total},
                               {"self_terms", b.self_terms},
                               {"disjoint_pair_terms", b.disjoint_pair_terms},
                               {"near_pair_terms", b.near_pair_terms},
                               {"near_pair_count", b.near_pair_count},
                               {"mode", to_string(b.mode)}};
}

/// Capacity-1 Green's-function modulus of continuity: g(z) <= dist(z,K)^{1/2}.
inline double green_modulus_bound(double dist) {
    if (dist < 0) throw std::invalid_argument("green_modulus_bound: dist must be >= 0");
    return std::sqrt(dist);
}

namespace detail {

// Circle-average identity: (1/2pi) int log|a - eps e^{it}| dt = max{log|a|, log eps}.
inline long double circle_avg_log(long double a_abs, long double eps) {
    return std::max(std::log(a_abs), std::log(eps));
}

template <class Fn>
long double adaptive_simpson(Fn&& f, long double a, long double b, long double fa, long double fm,
                             long double fb, long double whole, long double tol, int depth) {
    const long double m = 0.5L * (a + b);
    const long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
    const long double flm = f(lm), frm = f(rm);
    const long double left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
    const long double right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
    const long double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0L * tol) return left + right + delta / 15.0L;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

}  // namespace detail

/// Mutual energy of two epsilon-circles centered w apart:
///   (delta_{z,eps}, delta_{z',eps}) = -int_0^1 max{log|w - eps e^{2 pi i s}|, log eps} ds,
/// with w = z - z'. Computed by adaptive Simpson quadrature to ~1e-12.
inline double circle_pair_energy(std::complex<double> w, double eps) {
    if (eps <= 0) throw InvalidEpsilon("circle_pair_energy: epsilon must be > 0");
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double wr = w.real(), wi = w.imag(), e = eps;
    auto f = [&](long double s) {
        const long double x = wr - e * std::cos(2.0L * pi * s);
        const long double y = wi - e * std::sin(2.0L * pi * s);
        return detail::circle_avg_log(std::hypot(x, y), e);
    };
    const long double fa = f(0.0L), fm = f(0.5L), fb = f(1.0L);
    const long double whole = (1.0L / 6.0L) * (fa + 4.0L * fm + fb);
    const long double integral =
        detail::adaptive_simpson(f, 0.0L, 1.0L, fa, fm, fb, whole, 1e-13L, 40);
    return static_cast<double>(-integral);
}

/// Off-diagonal discrete mutual energy
///   sum_{i,j : x_i != y_j} w_i v_j (-log|x_i - y_j|)
/// in nats. Pairs with exactly coincident points are excluded by convention;
/// if any were excluded, *excluded_any is set.
inline double discrete_energy(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                              bool* excluded_any = nullptr, int threads = 1) {
    const std::size_t n = mu.points.size();
    std::vector<char> row_excluded(n, 0);
    const long double total = detail::chunked_sum(n, threads, [&](std::size_t lo, std::size_t hi) {
        detail::KahanSum acc;
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = 0; j < nu.points.size(); ++j) {
                if (mu.points[i] == nu.points[j]) {
                    row_excluded[i] = 1;
                    continue;
                }
                acc.add(-static_cast<long double>(mu.weights[i]) * nu.weights[j] *
                        std::log(std::abs(mu.points[i] - nu.points[j])));
            }
        }
        return acc.sum;
    });
    if (excluded_any) {
        *excluded_any = false;
        for (char c : row_excluded)
            if (c) *excluded_any = true;
    }
    return static_cast<double>(total);
}

namespace detail {

// Shared pair loop for the regularized energies. `self` selects the i<j
// upper triangle (doubled) plus the -log eps diagonal; otherwise the full
// i x j rectangle is used. Near pairs are |z - z'| <= 2 eps, ties near.
inline EnergyBreakdown regularized_pairing(const std::vector<std::complex<double>>& za,
                                           const std::vector<double>& wa,
                                           const std::vector<std::complex<double>>& zb,
                                           const std::vector<double>& wb, double eps, bool self,
                                           double near_kernel, EnergyMode mode, int threads) {
    if (eps <= 0) throw InvalidEpsilon("regularized energy: epsilon must be > 0");
    EnergyBreakdown out;
    out.mode = mode;
    const double two_eps = 2.0 * eps;

    if (self) {
        long double s = 0.0L;
        for (double w : wa) s += static_cast<long double>(w) * w;
        out.self_terms = static_cast<double>(s * -std::log(static_cast<long double>(eps)));
    }

    // near pairs are rare; collect them sequentially first
    struct NearPair {
        std::size_t i, j;
    };
    std::vector<NearPair> near;
    for (std::size_t i = 0; i < za.size(); ++i) {
        const std::size_t jbegin = self ? i + 1 : 0;
        for (std::size_t j = jbegin; j < zb.size(); ++j)
            if (std::abs(za[i] - zb[j]) <= two_eps) near.push_back({i, j});
    }
    out.near_pair_count = static_cast<long>(near.size()) * (self ? 2 : 1);

    detail::KahanSum nearacc;
    for (const auto& [i, j] : near) {
        const double term = (mode == EnergyMode::PaperBound)
                                ? near_kernel
                                : circle_pair_energy(za[i] - zb[j], eps);
        nearacc.add(static_cast<long double>(wa[i]) * wb[j] * term * (self ? 2.0L : 1.0L));
    }
    out.near_pair_terms = static_cast<double>(nearacc.sum);

    const long double far = detail::chunked_sum(za.size(), threads,
                                                [&](std::size_t lo, std::size_t hi) {
        detail::KahanSum acc;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::size_t jbegin = self ? i + 1 : 0;
            for (std::size_t j = jbegin; j < zb.size(); ++j) {
                const double dist = std::abs(za[i] - zb[j]);
                if (dist <= two_eps) continue;
                acc.add(static_cast<long double>(wa[i]) * wb[j] * -std::log(dist) *
                        (self ? 2.0L : 1.0L));
            }
        }
        return acc.sum;
    });
    out.disjoint_pair_terms = static_cast<double>(far);
    out.total = out.self_terms + out.disjoint_pair_terms + out.near_pair_terms;
    return out;
}

}  // namespace detail

/// ([F]_eps, [F]_eps): self terms contribute w_i^2 (-log eps) each; disjoint
/// pairs contribute -log|z - z'| exactly; near pairs use the lemma estimate
/// -log(4 eps) in paper-bound mode (the side the printed constants use) and
/// exact circle quadrature otherwise.
inline EnergyBreakdown regularized_self_energy(const RegularizedMeasure& mu, EnergyMode mode,
                                               int threads = 1) {
    return detail::regularized_pairing(mu.centers, mu.weights, mu.centers, mu.weights, mu.epsilon,
                                       /*self=*/true, -std::log(4.0 * mu.epsilon), mode, threads);
}

/// ([alpha]_eps, [beta]_eps): returns the pairing value (the caller forms
/// -2x it). Disjoint pairs contribute -log|a_i - b_j|; near pairs use the
/// potential bound log eps in paper-bound mode, exact quadrature otherwise.
inline EnergyBreakdown regularized_cross_energy(const RegularizedMeasure& mu,
                                                const RegularizedMeasure& nu, EnergyMode mode,
                                                int threads = 1) {
    if (mu.epsilon != nu.epsilon)
        throw EpsilonMismatch("regularized_cross_energy: circle radii differ");
    return detail::regularized_pairing(mu.centers, mu.weights, nu.centers, nu.weights, mu.epsilon,
                                       /*self=*/false, -std::log(mu.epsilon), mode, threads);
}

/// d_inf(mu, nu) = sqrt(self(mu) - 2 cross + self(nu)).
inline double mutual_energy_distance(const RegularizedMeasure& mu, const RegularizedMeasure& nu,
                                     EnergyMode mode, int threads = 1) {
    const double smu = regularized_self_energy(mu, mode, threads).total;
    const double snu = regularized_self_energy(nu, mode, threads).total;
    const double cross = regularized_cross_energy(mu, nu, mode, threads).total;
    double radicand = smu - 2.0 * cross + snu;
    if (radicand < -1e-12)
        throw NegativeRadicand("mutual_energy_distance: radicand " + std::to_string(radicand));
    if (radicand < 0) radicand = 0;
    return std::sqrt(radicand);
}

}  // namespace mebound

#endif  // MEBOUND_ENERGY_HPP
