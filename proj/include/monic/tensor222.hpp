#ifndef MONIC_TENSOR222_HPP
#define MONIC_TENSOR222_HPP

#include <array>
#include <cmath>
#include <nlohmann/json.hpp>

#include "monic/certificate.hpp"
#include "monic/matrix.hpp"
#include "monic/rng.hpp"

namespace monic {

// 2x2x2 tensor t = M1 (x) e1 + M2 (x) e2 with slices M1 = (a11 a12 / a21 a22)
// and M2 = (b11 b12 / b21 b22). The monic functional is h(t) = a11.
struct Tensor222 {
    Complex a11{}, a12{}, a21{}, a22{};
    Complex b11{}, b12{}, b21{}, b22{};

    static Tensor222 unit() { return Tensor222{Complex(1, 0), {}, {}, {}, {}, {}, {}, {}}; }

    // the rank-one point (1, a | c, ac / b, ab | bc, abc) of X1
    static Tensor222 x1_point(Complex a, Complex b, Complex c) {
        return Tensor222{Complex(1, 0), a, b, a * b, c, a * c, b * c, a * b * c};
    }

    std::array<Complex, 8> entries() const { return {a11, a12, a21, a22, b11, b12, b21, b22}; }

    Tensor222 operator+(const Tensor222& o) const {
        return Tensor222{a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22,
                         b11 + o.b11, b12 + o.b12, b21 + o.b21, b22 + o.b22};
    }
    Tensor222 operator-(const Tensor222& o) const {
        return Tensor222{a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22,
                         b11 - o.b11, b12 - o.b12, b21 - o.b21, b22 - o.b22};
    }
    Tensor222 scaled(Complex s) const {
        return Tensor222{a11 * s, a12 * s, a21 * s, a22 * s, b11 * s, b12 * s, b21 * s, b22 * s};
    }

    double max_abs() const {
        double m = 0;
        for (Complex e : entries()) m = std::max(m, std::abs(e));
        return m;
    }

    nlohmann::json to_json() const {
        return nlohmann::json{
            {"slice1", {{complex_to_json(a11), complex_to_json(a12)}, {complex_to_json(a21), complex_to_json(a22)}}},
            {"slice2", {{complex_to_json(b11), complex_to_json(b12)}, {complex_to_json(b21), complex_to_json(b22)}}}};
    }
    static Tensor222 from_json(const nlohmann::json& j) {
        auto cx = [](const nlohmann::json& v) { return complex_from_json(v); };
        const auto& s1 = j.at("slice1");
        const auto& s2 = j.at("slice2");
        return Tensor222{cx(s1[0][0]), cx(s1[0][1]), cx(s1[1][0]), cx(s1[1][1]),
                         cx(s2[0][0]), cx(s2[0][1]), cx(s2[1][0]), cx(s2[1][1])};
    }
};

// Additive action of K^3: u = (u1, u2, u3) shears in the three tensor modes.
// The three shears commute and each fixes a11, so h is invariant. On X1 in the
// (a, b, c) chart the action is translation: u . (a, b, c) = (a+u1, b+u2, c+u3).
inline Tensor222 apply_action(const std::array<Complex, 3>& u, const Tensor222& t) {
    Tensor222 r = t;
    // mode giving a12 += u1*a11 (and likewise in the second slice)
    r.a12 += u[0] * r.a11;
    r.a22 += u[0] * r.a21;
    r.b12 += u[0] * r.b11;
    r.b22 += u[0] * r.b21;
    // mode giving a21 += u2*a11
    r.a21 += u[1] * r.a11;
    r.a22 += u[1] * r.a12;
    r.b21 += u[1] * r.b11;
    r.b22 += u[1] * r.b12;
    // mode giving b11 += u3*a11
    r.b11 += u[2] * r.a11;
    r.b12 += u[2] * r.a12;
    r.b21 += u[2] * r.a21;
    r.b22 += u[2] * r.a22;
    return r;
}

struct TensorNormalization {
    std::array<Complex, 3> u;  // u . t = canonical
    Tensor222 canonical;       // (k, 0 | 0, d13 / 0, d12 | d23, e)
};

// Shear t into the unique orbit representative with a12 = a21 = b11 = 0.
inline TensorNormalization tensor222_normalize(const Tensor222& t, double tol = 1e-12) {
    if (std::abs(t.a11) <= tol * std::max(1.0, t.max_abs()))
        throw Error("tensor222_normalize: h(t)=0, normalization undefined");
    std::array<Complex, 3> u{-t.a12 / t.a11, -t.a21 / t.a11, -t.b11 / t.a11};
    Tensor222 c = apply_action(u, t);
    // exact zeros by construction; clear roundoff so downstream tests are clean
    c.a12 = c.a21 = c.b11 = Complex(0, 0);
    return {u, c};
}

struct Sigma2Report {
    bool in_sigma2 = false;
    bool in_osec2 = false;
    // |mu_i| within `borderline_margin` of the zero threshold: the mu-pattern
    // classification is numerically unreliable and the verdict is flagged
    bool borderline = false;
    std::array<Complex, 3> mu{};  // (mu1, mu2, mu3) = (d23, d13, d12)
};

// Membership of t (with a11 = 2) in the second monic secant and its open
// counterpart. sigma_2 is the hypersurface x1 x2 x3 + 2 z123 = x1 y23 + x2 y13
// + x3 y12 in the labeling x1=a12, x2=a21, x3=b11, y12=a22, y13=b12, y23=b21,
// z123=b22; osec_2 additionally requires the canonical-form pattern
// #{i | mu_i = 0} != 1.
inline Sigma2Report tensor222_sigma2_membership(const Tensor222& t, double tol) {
    double scale = std::max(1.0, t.max_abs());
    if (std::abs(t.a11 - Complex(2, 0)) > tol * scale)
        throw Error("tensor222_sigma2_membership: a11 must equal 2");
    Sigma2Report rep;
    Complex lhs = t.a12 * t.a21 * t.b11 + Complex(2, 0) * t.b22;
    Complex rhs = t.a12 * t.b21 + t.a21 * t.b12 + t.b11 * t.a22;
    double eq_scale = std::max({1.0, scale * scale * scale});
    rep.in_sigma2 = std::abs(lhs - rhs) <= tol * eq_scale;
    auto nrm = tensor222_normalize(t, tol);
    rep.mu = {nrm.canonical.b21, nrm.canonical.b12, nrm.canonical.a22};
    int zeros = 0;
    double zero_tol = tol * std::max(1.0, nrm.canonical.max_abs());
    for (const Complex& m : rep.mu) {
        double a = std::abs(m);
        if (a <= zero_tol) ++zeros;
        if (a > zero_tol * 0.1 && a < zero_tol * 10.0) rep.borderline = true;
    }
    rep.in_osec2 = rep.in_sigma2 && zeros != 1;
    return rep;
}

namespace tensor_detail {

inline void tensor_checks(Certificate& cert, const Tensor222& target, double tol) {
    cert.monic_checks.clear();
    cert.rank_checks.clear();
    cert.structure_checks.clear();
    Tensor222 sum{};
    for (const auto& s : cert.tensor_summands) {
        Tensor222 p = Tensor222::x1_point(s.a, s.b, s.c);
        sum = sum + p;
        cert.monic_checks.push_back(true);       // a11 = 1 by construction
        cert.rank_checks.push_back(true);        // X1 chart point is rank one
        cert.structure_checks.push_back(true);
    }
    cert.residual = (target - sum).max_abs() / std::max(1.0, target.max_abs());
}

// solve 2bc = al, 2ac = be, 2ab = ga given #zeros(al, be, ga) != 1
inline std::array<Complex, 3> solve_two_point_system(Complex al, Complex be, Complex ga, double zero_tol) {
    bool za = std::abs(al) <= zero_tol, zb = std::abs(be) <= zero_tol, zg = std::abs(ga) <= zero_tol;
    int zeros = int(za) + int(zb) + int(zg);
    if (zeros == 1) throw Error("tensor222_monic_decompose: exactly-one-zero obstruction");
    if (zeros == 3) return {Complex(0, 0), Complex(0, 0), Complex(0, 0)};
    if (zeros == 2) {
        // one product nonzero, the factor not shared by it is zero
        if (!za) {  // bc = al/2, a = 0: pick b = c = sqrt(al/2)
            Complex r = std::sqrt(al / Complex(2, 0));
            return {Complex(0, 0), r, r};
        }
        if (!zb) {
            Complex r = std::sqrt(be / Complex(2, 0));
            return {r, Complex(0, 0), r};
        }
        Complex r = std::sqrt(ga / Complex(2, 0));
        return {r, r, Complex(0, 0)};
    }
    Complex a = std::sqrt(be * ga / (Complex(2, 0) * al));
    Complex c = be / (Complex(2, 0) * a);
    Complex b = ga / (Complex(2, 0) * a);
    return {a, b, c};
}

}  // namespace tensor_detail

// Monic decomposition of t in kH into k rank-one summands with a11 = 1,
// returned as (a, b, c) chart triples. k = 2 requires osec_2 membership; every
// t in 3H decomposes at k = 3.
inline Certificate tensor222_monic_decompose(const Tensor222& t, int k, double tol, Rng& rng,
                                             int retry_budget = 32) {
    if (k != 2 && k != 3) throw Error("tensor222_monic_decompose: k must be 2 or 3");
    double scale = std::max(1.0, t.max_abs());
    if (std::abs(t.a11 - Complex(k, 0)) > tol * scale)
        throw Error("tensor222_monic_decompose: a11 must equal k");

    Certificate cert;
    cert.family = Family::tensor;
    cert.tolerance = tol;

    auto nrm = tensor222_normalize(t, tol);
    const Tensor222& cf = nrm.canonical;
    Complex d13 = cf.b12, d12 = cf.a22, d23 = cf.b21, e = cf.b22;
    double zero_tol = tol * std::max(1.0, cf.max_abs());

    std::vector<std::array<Complex, 3>> triples;
    if (k == 2) {
        if (std::abs(e) > zero_tol)
            throw Error("tensor222_monic_decompose: not in the second monic secant");
        auto abc = tensor_detail::solve_two_point_system(d23, d13, d12, zero_tol);
        triples.push_back(abc);
        triples.push_back({-abc[0], -abc[1], -abc[2]});
    } else {
        if (std::abs(d12) <= zero_tol && std::abs(d13) <= zero_tol && std::abs(d23) <= zero_tol &&
            std::abs(e) <= zero_tol) {
            for (int i = 0; i < 3; ++i) triples.push_back({Complex(0, 0), Complex(0, 0), Complex(0, 0)});
        } else {
            bool done = false;
            for (int attempt = 0; attempt < retry_budget && !done; ++attempt) {
                Complex a = rng.small_complex(), b = rng.small_complex();
                // shear by (a/3, b/3, c/3) and ask the leftover top coefficient
                // delta to equal abc; that is linear in c
                Complex coef = Complex(8, 0) / Complex(9, 0) * a * b - d12 / Complex(3, 0);
                if (std::abs(coef) <= zero_tol) continue;
                Complex c = (e + (a * d23 + b * d13) / Complex(3, 0)) / coef;
                Complex alh = d23 - Complex(2, 0) / Complex(3, 0) * b * c;
                Complex beh = d13 - Complex(2, 0) / Complex(3, 0) * a * c;
                Complex gah = d12 - Complex(2, 0) / Complex(3, 0) * a * b;
                if (std::abs(alh) <= zero_tol || std::abs(beh) <= zero_tol || std::abs(gah) <= zero_tol)
                    continue;
                auto abc2 = tensor_detail::solve_two_point_system(alh, beh, gah, zero_tol);
                // all work happened in the frame shifted by (a/3, b/3, c/3)
                std::array<Complex, 3> shift{a / Complex(3, 0), b / Complex(3, 0), c / Complex(3, 0)};
                triples.push_back({a - shift[0], b - shift[1], c - shift[2]});
                triples.push_back({abc2[0] - shift[0], abc2[1] - shift[1], abc2[2] - shift[2]});
                triples.push_back({-abc2[0] - shift[0], -abc2[1] - shift[1], -abc2[2] - shift[2]});
                done = true;
            }
            if (!done) throw Error("tensor222_monic_decompose: retry budget exhausted");
        }
    }
    // undo the normalizing shear: the action translates the (a, b, c) chart
    for (auto& tr : triples)
        cert.tensor_summands.push_back({tr[0] - nrm.u[0], tr[1] - nrm.u[1], tr[2] - nrm.u[2]});
    tensor_detail::tensor_checks(cert, t, tol);
    return cert;
}

}  // namespace monic

#endif
