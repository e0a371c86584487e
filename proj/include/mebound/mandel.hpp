#ifndef MEBOUND_MANDEL_HPP
#define MEBOUND_MANDEL_HPP

#include <complex>
#include <fstream>
#include <stdexcept>
#include <string>

#include "mebound/rootsolve.hpp"

namespace mebound {

/// Provisional-or-definitive orbit verdict for c under z <- z^2 + c from z = a.
struct OrbitCheck {
    std::complex<double> c;
    long a = 0;
    int max_iter = 0;
    double escape_radius = 0.0;
    bool escaped = false;
    int escape_iteration = -1;  // first k with |z_k| past the radius
};

/// Membership test for the generalized Mandelbrot set M_a. Escape criterion
/// |z| > max(|c|, 2): past that radius |z_{k+1}| >= |z_k|(|z_k| - 1) > |z_k|,
/// so escaped verdicts are definitive; bounded-so-far is provisional.
inline OrbitCheck membership(std::complex<double> c, long a, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("membership: max_iter must be >= 1");
    OrbitCheck chk;
    chk.c = c;
    chk.a = a;
    chk.max_iter = max_iter;
    chk.escape_radius = std::max(std::abs(c), 2.0);
    std::complex<double> z(static_cast<double>(a), 0.0);
    for (int k = 0; k < max_iter; ++k) {
        if (std::abs(z) > chk.escape_radius) {
            chk.escaped = true;
            chk.escape_iteration = k;
            return chk;
        }
        z = z * z + c;
    }
    return chk;
}

/// CSV point cloud "re,im", one root per row, 17 significant digits.
inline void emit_point_cloud(const ConjugateSet& roots, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("emit_point_cloud: cannot open " + path);
    os << "re,im\n";
    for (const auto& p : roots.points)
        os << format_double17(p.real()) << ',' << format_double17(p.imag()) << '\n';
    if (!os) throw std::runtime_error("emit_point_cloud: write failure on " + path);
}

}  // namespace mebound

#endif  // MEBOUND_MANDEL_HPP
