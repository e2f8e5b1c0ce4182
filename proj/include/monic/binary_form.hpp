#ifndef MONIC_BINARY_FORM_HPP
#define MONIC_BINARY_FORM_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "monic/certificate.hpp"
#include "monic/newton.hpp"
#include "monic/scalar.hpp"

namespace monic {

// Binary form of fixed degree; coeffs[i] is the coefficient of x^{degree-i} y^i.
struct BinaryForm {
    int degree = 0;
    std::vector<Complex> coeffs;  // length degree + 1

    BinaryForm() = default;
    BinaryForm(int deg, std::vector<Complex> c) : degree(deg), coeffs(std::move(c)) {
        if (coeffs.size() != static_cast<std::size_t>(degree) + 1)
            throw Error("BinaryForm: coefficient count must be degree + 1");
    }

    static BinaryForm zero(int deg) { return BinaryForm(deg, std::vector<Complex>(deg + 1, Complex(0, 0))); }

    // (x + a y)^d
    static BinaryForm monic_linear_power(int d, Complex a) {
        BinaryForm f = zero(d);
        Complex pw(1, 0);
        double binom = 1;
        for (int m = 0; m <= d; ++m) {
            f.coeffs[m] = binom * pw;
            pw *= a;
            binom = binom * (d - m) / (m + 1);
        }
        return f;
    }

    BinaryForm operator+(const BinaryForm& o) const {
        if (degree != o.degree) throw Error("BinaryForm: degree mismatch");
        BinaryForm r = *this;
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
        return r;
    }
    BinaryForm operator-(const BinaryForm& o) const {
        if (degree != o.degree) throw Error("BinaryForm: degree mismatch");
        BinaryForm r = *this;
        for (std::size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] -= o.coeffs[i];
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& c : coeffs) m = std::max(m, std::abs(c));
        return m;
    }
};

inline double binomial(int n, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// Roots of a monic univariate polynomial by Ehrlich-Aberth simultaneous
// iteration. coeffs[0] = 1 (leading), coeffs[degree] = constant term.
// Restarts from perturbed initial points on stagnation.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, double tol = 1e-12,
                                       int max_iters = 200) {
    if (coeffs.size() < 2) throw Error("poly_roots: degree must be >= 1");
    if (std::abs(coeffs[0] - Complex(1, 0)) > 1e-12) throw Error("poly_roots: polynomial must be monic");
    const int n = static_cast<int>(coeffs.size()) - 1;

    double cmax = 0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    double radius = 1.0 + cmax;

    auto eval = [&](Complex z, Complex* deriv) {
        Complex p(0, 0), dp(0, 0);
        for (const auto& c : coeffs) {
            dp = dp * z + p;
            p = p * z + c;
        }
        if (deriv) *deriv = dp;
        return p;
    };

    std::vector<Complex> z(n);
    for (int restart = 0; restart < 8; ++restart) {
        // staggered ring of initial guesses; restarts rotate and scale it
        double theta0 = 0.4 + 0.7 * restart;
        double r0 = radius * (1.0 + 0.25 * restart);
        for (int i = 0; i < n; ++i) {
            double th = theta0 + 2.0 * M_PI * i / n;
            z[i] = Complex(r0 * std::cos(th), r0 * std::sin(th));
        }
        double prev_err = 1e300;
        int stagnation = 0;
        for (int it = 0; it < max_iters; ++it) {
            double err = 0;
            for (int i = 0; i < n; ++i) {
                Complex dp;
                Complex p = eval(z[i], &dp);
                err = std::max(err, std::abs(p));
                if (std::abs(p) == 0.0) continue;
                Complex newton = dp == Complex(0, 0) ? Complex(0, 0) : p / dp;
                Complex sum(0, 0);
                for (int j = 0; j < n; ++j)
                    if (j != i && z[i] != z[j]) sum += Complex(1, 0) / (z[i] - z[j]);
                Complex denom = Complex(1, 0) - newton * sum;
                Complex step = denom == Complex(0, 0) ? newton : newton / denom;
                z[i] -= step;
            }
            if (err <= tol * (1.0 + cmax)) return z;
            if (err >= prev_err * 0.999) {
                if (++stagnation > 12) break;
            } else {
                stagnation = 0;
            }
            prev_err = err;
        }
        double final_err = 0;
        for (int i = 0; i < n; ++i) final_err = std::max(final_err, std::abs(eval(z[i], nullptr)));
        if (final_err <= 1e-9 * (1.0 + cmax)) return z;
    }
    std::string best;
    for (const auto& r : z) best += " (" + std::to_string(r.real()) + "," + std::to_string(r.imag()) + ")";
    throw Error("poly_roots: no convergence; best iterate:" + best);
}

// Residual and per-summand checks for a binary certificate against a target.
inline void binary_checks(Certificate& cert, const BinaryForm& q, double tol) {
    const int d = q.degree;
    BinaryForm sum = BinaryForm::zero(d);
    cert.monic_checks.clear();
    cert.rank_checks.clear();
    cert.structure_checks.clear();
    for (const auto& a : cert.binary_roots) {
        sum = sum + BinaryForm::monic_linear_power(d, a);
        cert.monic_checks.push_back(true);      // x + a y has leading coefficient 1 by construction
        cert.rank_checks.push_back(true);       // a d-th power of a linear form
        cert.structure_checks.push_back(std::isfinite(a.real()) && std::isfinite(a.imag()));
    }
    cert.residual = (q - sum).max_abs() / std::max(1.0, q.max_abs());
    (void)tol;
}

// Monic Waring decomposition of a binary form q of degree d with coefficient
// d at x^d: q = sum_i (x + a_i y)^d. Power sums are read off the coefficients,
// inverted through Newton's identities and the a_i recovered as polynomial
// roots.
inline Certificate waring_monic_binary(const BinaryForm& q, double tol = 1e-9) {
    const int d = q.degree;
    if (d < 1) throw Error("waring_monic_binary: degree must be >= 1");
    if (std::abs(q.coeffs[0] - Complex(static_cast<double>(d), 0)) > tol * std::max(1.0, q.max_abs()))
        throw Error("waring_monic_binary: not in dH (coefficient at x^d must be d)");

    std::vector<Complex> power_sums(d);
    for (int m = 1; m <= d; ++m) power_sums[m - 1] = q.coeffs[m] / binomial(d, m);
    std::vector<Complex> elem = newton_power_to_elementary(power_sums);

    // z^d - e1 z^{d-1} + e2 z^{d-2} - ... has the a_i as roots
    std::vector<Complex> mono(d + 1);
    mono[0] = Complex(1, 0);
    double sign = -1;
    for (int m = 1; m <= d; ++m) {
        mono[m] = sign * elem[m - 1];
        sign = -sign;
    }
    bool all_zero = true;
    for (int m = 1; m <= d; ++m)
        if (std::abs(mono[m]) > tol) all_zero = false;

    Certificate cert;
    cert.family = Family::binary;
    cert.tolerance = tol;
    cert.binary_roots = all_zero ? std::vector<Complex>(d, Complex(0, 0)) : poly_roots(mono);
    binary_checks(cert, q, tol);
    return cert;
}

}  // namespace monic

#endif
