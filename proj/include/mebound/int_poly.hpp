#ifndef MEBOUND_INT_POLY_HPP
#define MEBOUND_INT_POLY_HPP

#include <gmpxx.h>

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mebound {

/// Exact univariate polynomial over Z in the parameter c.
/// coeffs[k] is the coefficient of c^k, lowest order first.
/// The zero polynomial is represented by an empty coefficient vector.
struct IntPoly {
    std::vector<mpz_class> coeffs;

    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> c) : coeffs(std::move(c)) { normalize(); }

    static IntPoly constant(const mpz_class& v) {
        IntPoly p;
        if (v != 0) p.coeffs.push_back(v);
        return p;
    }

    bool is_zero() const { return coeffs.empty(); }

    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }

    const mpz_class& coeff(std::size_t k) const {
        static const mpz_class zero = 0;
        return k < coeffs.size() ? coeffs[k] : zero;
    }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool operator==(const IntPoly& o) const { return coeffs == o.coeffs; }
};

inline IntPoly add(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] = a.coeff(k) + b.coeff(k);
    r.normalize();
    return r;
}

inline IntPoly sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) r.coeffs[k] = a.coeff(k) - b.coeff(k);
    r.normalize();
    return r;
}

namespace detail {

inline void mul_schoolbook_into(std::vector<mpz_class>& out, const mpz_class* a, std::size_t na,
                                const mpz_class* b, std::size_t nb) {
    out.assign(na + nb - 1, mpz_class(0));
    mpz_class t;
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < nb; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            out[i + j] += t;
        }
    }
}

// Karatsuba over mpz coefficient vectors; falls back to schoolbook below the cutoff.
inline std::vector<mpz_class> mul_rec(const mpz_class* a, std::size_t na, const mpz_class* b,
                                      std::size_t nb) {
    constexpr std::size_t kCutoff = 24;
    if (na == 0 || nb == 0) return {};
    if (na < kCutoff || nb < kCutoff) {
        std::vector<mpz_class> out;
        mul_schoolbook_into(out, a, na, b, nb);
        return out;
    }
    const std::size_t h = std::max(na, nb) / 2;
    const std::size_t na0 = std::min(na, h), nb0 = std::min(nb, h);
    const std::size_t na1 = na - na0, nb1 = nb - nb0;
    // a = a0 + x^h a1, b = b0 + x^h b1
    std::vector<mpz_class> z0 = mul_rec(a, na0, b, nb0);
    std::vector<mpz_class> z2 = (na1 && nb1) ? mul_rec(a + na0, na1, b + nb0, nb1)
                                             : std::vector<mpz_class>{};
    std::vector<mpz_class> asum(std::max(na0, na1), mpz_class(0));
    for (std::size_t i = 0; i < na0; ++i) asum[i] = a[i];
    for (std::size_t i = 0; i < na1; ++i) asum[i] += a[na0 + i];
    std::vector<mpz_class> bsum(std::max(nb0, nb1), mpz_class(0));
    for (std::size_t i = 0; i < nb0; ++i) bsum[i] = b[i];
    for (std::size_t i = 0; i < nb1; ++i) bsum[i] += b[nb0 + i];
    std::vector<mpz_class> z1 = mul_rec(asum.data(), asum.size(), bsum.data(), bsum.size());
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];

    std::vector<mpz_class> out(na + nb - 1, mpz_class(0));
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i) out[h + i] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i) out[2 * h + i] += z2[i];
    return out;
}

}  // namespace detail

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    IntPoly r;
    r.coeffs = detail::mul_rec(a.coeffs.data(), a.coeffs.size(), b.coeffs.data(), b.coeffs.size());
    r.normalize();
    return r;
}

/// Parameters of a periodicity/preperiodicity equation f_c^n(a) = b.
struct IterationSpec {
    long a = 0;
    long b = 0;
    int n = 1;
};

/// Exact expansion of f_c^n(a) - b in Z[c] by repeated squaring:
/// P_0 = a, P_{k+1} = P_k^2 + c, result P_n - b. Degree is 2^{n-1}.
inline IntPoly iterate_orbit_poly(const IterationSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("iterate_orbit_poly: n must be >= 1");
    IntPoly p = IntPoly::constant(spec.a);
    for (int k = 0; k < spec.n; ++k) {
        p = mul(p, p);
        if (p.coeffs.size() < 2) p.coeffs.resize(2, mpz_class(0));
        p.coeffs[1] += 1;  // + c
        p.normalize();
    }
    return sub(p, IntPoly::constant(spec.b));
}

/// Horner evaluation in exact rational arithmetic.
inline mpq_class eval_exact(const IntPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + mpq_class(*it);
    acc.canonicalize();
    return acc;
}

inline mpz_class eval_exact_int(const IntPoly& p, const mpz_class& x) {
    mpz_class acc = 0;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

namespace detail {

// Exact division of p by (c - r); throws if a nonzero remainder is left.
inline IntPoly divide_linear_exact(const IntPoly& p, const mpz_class& r) {
    if (p.is_zero()) throw std::logic_error("divide_linear_exact: zero polynomial");
    std::vector<mpz_class> q(p.coeffs.size() - 1);
    mpz_class carry = 0;
    for (std::size_t k = p.coeffs.size(); k-- > 1;) {
        carry = p.coeffs[k] + carry * r;
        q[k - 1] = carry;
    }
    carry = p.coeffs[0] + carry * r;
    if (carry != 0)
        throw std::logic_error("divide_linear_exact: nonzero remainder (internal error)");
    return IntPoly(std::move(q));
}

}  // namespace detail

struct Deflation {
    IntPoly quotient;
    std::vector<mpz_class> removed_roots;  // with multiplicity, in removal order
};

/// Removes all integer roots of p with multiplicity, by the rational-root test
/// restricted to integer candidates: root 0 while the constant term vanishes,
/// then divisors of the constant term. Candidates are capped at
/// min(Cauchy root bound, 2^20) in absolute value.
inline Deflation deflate_integer_roots(const IntPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("deflate_integer_roots: zero polynomial");
    Deflation d;
    d.quotient = p;
    while (d.quotient.degree() >= 1 && d.quotient.coeffs[0] == 0) {
        d.quotient = detail::divide_linear_exact(d.quotient, 0);
        d.removed_roots.emplace_back(0);
    }
    if (d.quotient.degree() < 1) return d;

    // Cauchy bound: every root has |t| <= 1 + max |a_i| / |a_d|.
    mpz_class maxabs = 0;
    for (const auto& ck : d.quotient.coeffs) {
        mpz_class a = abs(ck);
        if (a > maxabs) maxabs = a;
    }
    mpz_class lead = abs(d.quotient.coeffs.back());
    mpz_class bound = maxabs / lead + 2;
    const mpz_class cap = 1 << 20;
    if (bound > cap) bound = cap;
    mpz_class c0 = abs(d.quotient.coeffs[0]);  // nonzero roots divide the constant term
    if (c0 < bound) bound = c0;

    for (mpz_class t = 1; t <= bound && d.quotient.degree() >= 1; ++t) {
        if (d.quotient.coeffs[0] % t != 0) continue;
        for (int sign : {+1, -1}) {
            mpz_class root = sign * t;
            while (d.quotient.degree() >= 1 && eval_exact_int(d.quotient, root) == 0) {
                d.quotient = detail::divide_linear_exact(d.quotient, root);
                d.removed_roots.push_back(root);
            }
        }
    }
    return d;
}

/// Text format: optional '#' metadata lines, then "degree <d>", then one
/// decimal coefficient per line, lowest order first.
inline void write_poly_text(std::ostream& os, const IntPoly& p, const IterationSpec* spec = nullptr,
                            const std::vector<mpz_class>* removed = nullptr) {
    if (spec) {
        os << "# iterate a=" << spec->a << " b=" << spec->b << " n=" << spec->n;
        if (removed) {
            os << " deflated=";
            for (std::size_t i = 0; i < removed->size(); ++i)
                os << (i ? "," : "") << (*removed)[i];
        }
        os << '\n';
    }
    os << "degree " << p.degree() << '\n';
    for (const auto& ck : p.coeffs) os << ck << '\n';
}

struct PolyFile {
    IntPoly poly;
    bool has_spec = false;
    IterationSpec spec;
    std::vector<mpz_class> removed_roots;
};

inline PolyFile read_poly_text(std::istream& is) {
    PolyFile pf;
    std::string line;
    long degree = -2;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tok;
            while (ls >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "a") pf.spec.a = std::stol(val), pf.has_spec = true;
                else if (key == "b") pf.spec.b = std::stol(val);
                else if (key == "n") pf.spec.n = std::stoi(val);
                else if (key == "deflated") {
                    std::istringstream vs(val);
                    std::string item;
                    while (std::getline(vs, item, ','))
                        if (!item.empty()) pf.removed_roots.emplace_back(item);
                }
            }
            continue;
        }
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "degree") throw std::runtime_error("poly file: expected 'degree' header, got: " + line);
        ls >> degree;
        break;
    }
    if (degree < -1) throw std::runtime_error("poly file: missing degree header");
    for (long k = 0; k <= degree; ++k) {
        if (!std::getline(is, line)) throw std::runtime_error("poly file: truncated coefficient list");
        pf.poly.coeffs.emplace_back(line);
    }
    pf.poly.normalize();
    if (pf.poly.degree() != degree)
        throw std::runtime_error("poly file: degree header disagrees with coefficients");
    return pf;
}

}  // namespace mebound

#endif  // MEBOUND_INT_POLY_HPP
