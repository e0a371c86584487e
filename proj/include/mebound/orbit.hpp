#ifndef MEBOUND_ORBIT_HPP
#define MEBOUND_ORBIT_HPP

#include <complex>
#include <vector>

#include "mebound/int_poly.hpp"

namespace mebound {

/// Evaluates the deflated periodicity function
///   (f_c^n(a) - b) / prod_r (c - r)
/// and its c-derivative through the n squaring steps, never via expanded
/// coefficients. The derivative rides along as a dual number:
/// (P, P') -> (P^2 + c, 2 P P' + 1).
template <class Real>
struct OrbitEvaluator {
    IterationSpec spec;
    std::vector<long> deflated_roots;  // normally {0}

    struct Eval {
        std::complex<Real> value;
        std::complex<Real> deriv;
    };

    Eval operator()(const std::complex<Real>& c) const {
        std::complex<Real> p(static_cast<Real>(spec.a), Real(0));
        std::complex<Real> dp(Real(0), Real(0));
        for (int k = 0; k < spec.n; ++k) {
            dp = Real(2) * p * dp + Real(1);
            p = p * p + c;
        }
        std::complex<Real> v = p - std::complex<Real>(static_cast<Real>(spec.b), Real(0));
        std::complex<Real> dv = dp;
        // divide out each removed linear factor by the quotient rule:
        // q = v/(c-r), q' = (v' - q)/(c-r)
        for (long r : deflated_roots) {
            const std::complex<Real> u = c - std::complex<Real>(static_cast<Real>(r), Real(0));
            v /= u;
            dv = (dv - v) / u;
        }
        return {v, dv};
    }

    std::complex<Real> value(const std::complex<Real>& c) const { return (*this)(c).value; }
};

}  // namespace mebound

#endif  // MEBOUND_ORBIT_HPP
