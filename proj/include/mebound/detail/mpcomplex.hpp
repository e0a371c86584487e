#ifndef MEBOUND_DETAIL_MPCOMPLEX_HPP
#define MEBOUND_DETAIL_MPCOMPLEX_HPP

#include <gmpxx.h>

#include <complex>

#include "mebound/int_poly.hpp"

namespace mebound::detail {

// Minimal complex arithmetic on GMP floats, for the high-precision
// certification pass. Precision is per-object (mp_bitcnt_t bits).
struct MpComplex {
    mpf_class re, im;

    MpComplex(mp_bitcnt_t prec) : re(0, prec), im(0, prec) {}
    MpComplex(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}

    MpComplex operator+(const MpComplex& o) const { return {re + o.re, im + o.im}; }
    MpComplex operator-(const MpComplex& o) const { return {re - o.re, im - o.im}; }
    MpComplex operator*(const MpComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    MpComplex operator/(const MpComplex& o) const {
        mpf_class n = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }

    mpf_class abs() const {
        mpf_class n = re * re + im * im;
        mpf_class r(0, n.get_prec());
        mpf_sqrt(r.get_mpf_t(), n.get_mpf_t());
        return r;
    }
};

// |(f_c^n(a) - b) / prod_r (c - r)| evaluated at `bits` precision.
inline mpf_class orbit_residual_mp(const IterationSpec& spec, const std::vector<long>& deflated,
                                   std::complex<double> c, mp_bitcnt_t bits) {
    MpComplex zc(mpf_class(c.real(), bits), mpf_class(c.imag(), bits));
    MpComplex p(mpf_class(static_cast<double>(spec.a), bits), mpf_class(0, bits));
    for (int k = 0; k < spec.n; ++k) p = p * p + zc;
    MpComplex v = p - MpComplex(mpf_class(static_cast<double>(spec.b), bits), mpf_class(0, bits));
    for (long r : deflated)
        v = v / (zc - MpComplex(mpf_class(static_cast<double>(r), bits), mpf_class(0, bits)));
    return v.abs();
}

}  // namespace mebound::detail

#endif  // MEBOUND_DETAIL_MPCOMPLEX_HPP
