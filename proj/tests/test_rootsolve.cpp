#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <complex>

#include "mebound/int_poly.hpp"
#include "mebound/orbit.hpp"
#include "mebound/rootsolve.hpp"
#include "oracles.hpp"

using namespace mebound;

namespace {

OrbitEvaluator<long double> make_eval(long a, int n) {
    OrbitEvaluator<long double> ev;
    ev.spec = IterationSpec{a, a, n};
    ev.deflated_roots = {0};
    return ev;
}

std::vector<double> expanded_deflated(long a, int n) {
    const auto d = deflate_integer_roots(iterate_orbit_poly({a, a, n}));
    std::vector<double> c;
    for (const auto& ck : d.quotient.coeffs) c.push_back(ck.get_d());
    return c;
}

}  // namespace

TEST_CASE("evaluator matches the deflated polynomial") {
    const auto ev = make_eval(0, 3);
    const auto c = expanded_deflated(0, 3);  // c^3 + 2c^2 + c + 1
    REQUIRE(c.size() == 4);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == 1.0);
    CHECK(c[2] == 2.0);
    CHECK(c[3] == 1.0);
    for (double x : {0.3, -1.2, 1.9}) {
        for (double y : {0.0, 0.7, -0.4}) {
            const std::complex<long double> z(x, y);
            const auto e = ev(z);
            const auto ref = oracles::horner_c(c, {x, y});
            CHECK(std::abs(std::complex<double>(static_cast<double>(e.value.real()),
                                                static_cast<double>(e.value.imag())) -
                           ref) < 1e-12 * (1.0 + std::abs(ref)));
        }
    }
}

TEST_CASE("evaluator derivative by finite differences") {
    const auto ev = make_eval(1, 4);
    const long double h = 1e-7L;
    for (double x : {0.25, -0.8}) {
        const std::complex<long double> z(x, 0.31);
        const auto e = ev(z);
        const auto fd = (ev(z + std::complex<long double>(h, 0)).value -
                         ev(z - std::complex<long double>(h, 0)).value) /
                        (2.0L * h);
        CHECK(std::abs(e.deriv - fd) < 1e-5L * (1.0L + std::abs(fd)));
    }
}

TEST_CASE("cubic witness: a=0, n=3") {
    const auto roots = solve_all_roots(make_eval(0, 3), 3);
    REQUIRE(roots.points.size() == 3);

    // oracle: grid bisection + quadratic factoring on the expanded cubic
    const auto oracle = oracles::roots_by_factoring(expanded_deflated(0, 3));
    CHECK(oracles::multiset_distance(roots.points, oracle) < 1e-10);

    // real root near -1.7549; one conjugate pair
    int reals = 0;
    for (const auto& r : roots.points)
        if (std::abs(r.imag()) < 1e-12) {
            ++reals;
            CHECK(r.real() == Catch::Approx(-1.754877666246693).epsilon(1e-9));
        }
    CHECK(reals == 1);

    // resultant check: product of (c - root) reconstructs the cubic
    std::vector<std::complex<double>> prod{1.0};
    for (const auto& r : roots.points) {
        std::vector<std::complex<double>> next(prod.size() + 1, 0.0);
        for (std::size_t k = 0; k < prod.size(); ++k) {
            next[k + 1] += prod[k];
            next[k] -= prod[k] * r;
        }
        prod = next;
    }
    const double expect[] = {1, 1, 2, 1};
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(std::abs(prod[k].real() - expect[k]) < 1e-12);
        CHECK(std::abs(prod[k].imag()) < 1e-12);
    }
}

TEST_CASE("small-degree oracle equivalence, n <= 4, a in {0,1}") {
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
            CHECK(oracles::multiset_distance(roots.points, oracle) < 1e-10);
        }
    }
}

TEST_CASE("degree-1023 witness solve, a=0") {
    const auto roots = solve_all_roots(make_eval(0, 11), 1023);
    REQUIRE(roots.points.size() == 1023);
    for (const auto& p : roots.points) CHECK(std::abs(p) <= 2.0 + 1e-9);
    for (double r : roots.residuals) CHECK(r <= 1e-10);

    // conjugation closure of the multiset
    std::vector<std::complex<double>> conj;
    for (const auto& p : roots.points) conj.push_back(std::conj(p));
    CHECK(oracles::multiset_distance(roots.points, conj) < 1e-10);

    const auto cert = certify(roots, {0, 0, 11}, {0}, 1e-10);
    CHECK(cert.pass);
    CHECK(cert.max_residual <= 1e-10);
    CHECK(cert.min_separation > 1e-8);
}

TEST_CASE("certify passes exact root and fails a perturbed one") {
    // roots of c^2 + c after deflation: {-1}
    ConjugateSet s;
    s.points = {{-1.0, 0.0}};
    s.residuals = {0.0};
    s.degree = 1;
    const auto good = certify(s, {0, 0, 2}, {0}, 1e-10);
    CHECK(good.pass);
    CHECK(good.max_residual == 0.0);

    auto g = solve_all_roots(make_eval(0, 11), 1023);
    g.points[7] += std::complex<double>(1e-3, 0);
    const auto bad = certify(g, {0, 0, 11}, {0}, 1e-10);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_residual > 1e-6);
}

TEST_CASE("solver error paths") {
    SolverConfig cfg;
    cfg.max_sweeps = 1;
    CHECK_THROWS_AS(solve_all_roots(make_eval(0, 11), 1023, cfg), NonConvergence);
    CHECK_THROWS_AS(solve_all_roots(make_eval(0, 3), 0), std::invalid_argument);
}

TEST_CASE("roots CSV round trip") {
    const auto roots = solve_all_roots(make_eval(0, 3), 3);
    std::stringstream ss;
    write_roots_csv(ss, roots);
    const auto back = read_roots_csv(ss, "w0_n3");
    REQUIRE(back.points.size() == roots.points.size());
    for (std::size_t i = 0; i < back.points.size(); ++i) {
        CHECK(back.points[i] == roots.points[i]);  // 17 digits round-trips exactly
        CHECK(back.residuals[i] == roots.residuals[i]);
    }
    std::stringstream bad("not,a,header\n");
    CHECK_THROWS_AS(read_roots_csv(bad), std::runtime_error);
}
