#ifndef MEBOUND_BOUNDS_HPP
#define MEBOUND_BOUNDS_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mebound/energy.hpp"
#include "mebound/rootsolve.hpp"

namespace mebound {

struct NoBound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// log(d^d / d! * (pi/4)^{d/2}) via log-gamma: the Minkowski lower bound on
/// log|disc| for a degree-d algebraic integer.
inline double minkowski_log_disc(int d) {
    if (d < 1) throw std::invalid_argument("minkowski_log_disc: d must be >= 1");
    const double dd = static_cast<double>(d);
    return dd * std::log(dd) - std::lgamma(dd + 1.0) + 0.5 * dd * std::log(std::numbers::pi / 4.0);
}

/// Degree-dependent upper bound on d_inf(mu_0, mu_1):
///   2 sqrt( -(1/d^2) minkowski_log_disc(d) + 2 sqrt(eps) + log(1/eps)/d ).
inline double upper_bound(int d, double eps) {
    if (eps <= 0) throw InvalidEpsilon("upper_bound: eps must be > 0");
    const double dd = static_cast<double>(d);
    const double radicand =
        -minkowski_log_disc(d) / (dd * dd) + 2.0 * std::sqrt(eps) + std::log(1.0 / eps) / dd;
    if (radicand < 0)
        throw NegativeRadicand("upper_bound: negative radicand at d=" + std::to_string(d));
    return 2.0 * std::sqrt(radicand);
}

/// sqrt(E + 2 sqrt(eps) + log(1/eps)/d): bound on d_inf between an
/// equilibrium measure and the regularized conjugate measure, where E is
/// either the Minkowski bound (UB side) or a computed discrete self energy
/// (LB side).
inline double distance_to_equilibrium_bound(double self_energy_discrete, int d, double eps) {
    if (eps <= 0) throw InvalidEpsilon("distance_to_equilibrium_bound: eps must be > 0");
    const double dd = static_cast<double>(d);
    const double radicand = self_energy_discrete + 2.0 * std::sqrt(eps) + std::log(1.0 / eps) / dd;
    if (radicand < 0)
        throw NegativeRadicand("distance_to_equilibrium_bound: negative radicand");
    return std::sqrt(radicand);
}

/// The three terms of the witness lower bound
///   LB = d_inf([a]_eps,[b]_eps) - d_inf(mu_a,[a]_eps) - d_inf(mu_b,[b]_eps).
struct LowerBoundTerms {
    double witness_distance = 0.0;       // paper-bound mode
    double witness_distance_exact = 0.0; // exact-quadrature mode
    double alpha_penalty = 0.0;
    double beta_penalty = 0.0;
    double alpha_self_discrete = 0.0;
    double beta_self_discrete = 0.0;
    double lower_bound = 0.0;
    double lower_bound_exact = 0.0;
    bool informative = false;  // false when LB <= 0
    std::string alpha_label, beta_label;
};

inline LowerBoundTerms assemble_lower_bound(const ConjugateSet& alpha, const ConjugateSet& beta,
                                            double eps, int threads = 1) {
    LowerBoundTerms t;
    t.alpha_label = alpha.label;
    t.beta_label = beta.label;
    const auto mu = RegularizedMeasure::uniform(alpha.points, eps);
    const auto nu = RegularizedMeasure::uniform(beta.points, eps);
    t.witness_distance = mutual_energy_distance(mu, nu, EnergyMode::PaperBound, threads);
    t.witness_distance_exact = mutual_energy_distance(mu, nu, EnergyMode::ExactQuadrature, threads);
    const auto da = DiscreteMeasure::uniform(alpha.points);
    const auto db = DiscreteMeasure::uniform(beta.points);
    t.alpha_self_discrete = discrete_energy(da, da, nullptr, threads);
    t.beta_self_discrete = discrete_energy(db, db, nullptr, threads);
    t.alpha_penalty = distance_to_equilibrium_bound(t.alpha_self_discrete, alpha.degree, eps);
    t.beta_penalty = distance_to_equilibrium_bound(t.beta_self_discrete, beta.degree, eps);
    t.lower_bound = t.witness_distance - t.alpha_penalty - t.beta_penalty;
    t.lower_bound_exact = t.witness_distance_exact - t.alpha_penalty - t.beta_penalty;
    t.informative = t.lower_bound > 0;
    return t;
}

/// Largest d with upper_bound(d, eps_rule(d)) >= lower_bound. The UB curve is
/// eventually strictly decreasing; the scan exits after a long monotone tail
/// below the lower bound, capped at 10^6.
inline int solve_max_degree(double lower_bound, const std::function<double(int)>& eps_rule) {
    if (lower_bound <= 0) throw std::invalid_argument("solve_max_degree: lower_bound must be > 0");
    constexpr int kCap = 1'000'000;
    constexpr int kTail = 64;
    int best = -1;
    int below_streak = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= kCap; ++d) {
        double ub;
        try {
            ub = upper_bound(d, eps_rule(d));
        } catch (const NegativeRadicand&) {
            break;  // past the feasible range for this eps rule
        }
        if (ub >= lower_bound) {
            best = d;
            below_streak = 0;
        } else if (d >= 3 && ub <= prev) {
            if (++below_streak >= kTail) break;
        }
        prev = ub;
    }
    if (best < 0) throw NoBound("solve_max_degree: UB never reaches the lower bound");
    return best;
}

/// Assembled report: certified LB, UB curve near the critical degree, and the
/// maximal admissible degree.
struct BoundReport {
    LowerBoundTerms terms;
    double lower_bound_used = 0.0;
    std::map<int, double> ub_curve;
    int max_degree = -1;
    std::string epsilon_rule;
    double eps_witness = 0.0;
};

inline BoundReport make_bound_report(const ConjugateSet& alpha, const ConjugateSet& beta,
                                     double eps_witness, int threads = 1) {
    BoundReport r;
    r.eps_witness = eps_witness;
    r.epsilon_rule = "eps(d) = 1/d^2";
    r.terms = assemble_lower_bound(alpha, beta, eps_witness, threads);
    r.lower_bound_used = r.terms.lower_bound;
    auto rule = [](int d) { return 1.0 / (static_cast<double>(d) * d); };
    if (r.terms.informative) {
        r.max_degree = solve_max_degree(r.lower_bound_used, rule);
        for (int d = std::max(1, r.max_degree - 3); d <= r.max_degree + 3; ++d)
            r.ub_curve[d] = upper_bound(d, rule(d));
    }
    return r;
}

inline void to_json(nlohmann::ordered_json& j, const LowerBoundTerms& t) {
    j = nlohmann::ordered_json{{"witness_distance", t.witness_distance},
                               {"witness_distance_exact", t.witness_distance_exact},
                               {"alpha_penalty", t.alpha_penalty},
                               {"beta_penalty", t.beta_penalty},
                               {"alpha_self_discrete", t.alpha_self_discrete},
                               {"beta_self_discrete", t.beta_self_discrete},
                               {"lower_bound", t.lower_bound},
                               {"lower_bound_exact", t.lower_bound_exact},
                               {"informative", t.informative},
                               {"alpha_label", t.alpha_label},
                               {"beta_label", t.beta_label}};
}

inline void to_json(nlohmann::ordered_json& j, const BoundReport& r) {
    nlohmann::ordered_json curve;
    for (const auto& [d, ub] : r.ub_curve) curve[std::to_string(d)] = ub;
    nlohmann::ordered_json terms;
    to_json(terms, r.terms);
    j = nlohmann::ordered_json{{"component_terms", terms},
                               {"lower_bound", r.lower_bound_used},
                               {"ub_curve", curve},
                               {"max_degree", r.max_degree},
                               {"epsilon_rule", r.epsilon_rule},
                               {"eps_witness", r.eps_witness}};
}

}  // namespace mebound

#endif  // MEBOUND_BOUNDS_HPP
