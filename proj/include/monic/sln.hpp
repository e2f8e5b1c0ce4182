#ifndef MONIC_SLN_HPP
#define MONIC_SLN_HPP

#include <cmath>
#include <string>
#include <vector>

#include "monic/certificate.hpp"
#include "monic/matrix.hpp"
#include "monic/matrix_decompose.hpp"
#include "monic/rng.hpp"

namespace monic {

// Property P(A): neither Az is an eigenvector of A nor A^T w is an
// eigenvector of A^T. Sums of rank-one trace-zero monic summands can be
// peeled off A one at a time exactly when enough of this genericity holds.
inline bool property_P(const CMat& A, const CMat& z, const CMat& w, double tol = 1e-9) {
    if (A.rows() != A.cols()) throw Error("property_P: square matrix required");
    CMat Az = A * z;
    CMat Atw = A.transpose() * w;
    Complex wAz = pairing(Az, w);
    if (std::abs(wAz) <= tol * std::max(1.0, max_abs(Az)))
        throw Error("property_P: w^T A z = 0");
    return !is_eigenvector(A, Az, tol) && !is_eigenvector(A.transpose(), Atw, tol);
}

namespace sln_detail {

// retry loops treat a degenerate pairing (which property_P reports by
// throwing) as an ordinary failed attempt
inline bool property_P_holds(const CMat& A, const CMat& z, const CMat& w, double tol) {
    try {
        return property_P(A, z, w, tol);
    } catch (const Error&) {
        return false;
    }
}

inline CMat unit_vector(std::size_t n, std::size_t i) {
    CMat e(n, 1, Complex(0, 0));
    e.at(i, 0) = Complex(1, 0);
    return e;
}

// random point of an affine solution set: particular + random combination.
// Kernel coefficients are scaled to the particular solution so the point keeps
// the magnitude of the minimum-norm solution; unscaled coefficients let the
// resulting summands dwarf the remainder and wreck later peels.
inline CMat random_affine_point(const AffineSolution<Complex>& sol, Rng& rng) {
    CMat p = sol.particular;
    double s = std::max(1e-2, max_abs(sol.particular));
    for (const auto& dir : sol.nullspace_basis) p = p + dir.scaled(rng.small_complex() * s);
    return p;
}

// rows of the system <r_i, y> = rhs_i for column vectors r_i
inline CMat stack_rows(const std::vector<CMat>& rows) {
    CMat m(rows.size(), rows[0].rows(), Complex(0, 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i].at(j, 0);
    return m;
}

inline bool in_column_span(const CMat& A, const CMat& v, double tol) {
    CMat aug(A.rows(), A.cols() + 1, Complex(0, 0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = v.at(i, 0);
    }
    return rank(aug, tol) == rank(A, tol);
}

// v in span(columns of A) + K u ?
inline bool in_span_plus_line(const CMat& A, const CMat& u, const CMat& v, double tol) {
    CMat aug(A.rows(), A.cols() + 2, Complex(0, 0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols()) = u.at(i, 0);
        aug.at(i, A.cols() + 1) = v.at(i, 0);
    }
    CMat base(A.rows(), A.cols() + 1, Complex(0, 0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) base.at(i, j) = A.at(i, j);
        base.at(i, A.cols()) = u.at(i, 0);
    }
    return rank(aug, tol) == rank(base, tol);
}

// summand extraction from a (numerically) rank-one J with top-right entry 1:
// the dominant SVD triple, normalized so v_1 = 1. Reading a row and a column
// off J instead would amplify the rank-two tail by |J| / |top-right entry|.
inline MatrixSummand extract_summand(const CMat& J) {
    const std::size_t n = J.rows();
    auto [U, S, Vh] = svd(J);
    CMat v(n, 1, Complex(0, 0)), alpha(n, 1, Complex(0, 0));
    Complex lead = U.at(0, 0) * S.at(0, 0);
    if (std::abs(lead) == 0.0) throw Error("extract_summand: vanishing leading coordinate");
    for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = U.at(i, 0) * S.at(0, 0) / lead;
    for (std::size_t j = 0; j < n; ++j) alpha.at(j, 0) = Vh.at(0, j) * lead;
    return {v, alpha};
}

// nullspace basis of the single row r^T (as columns)
inline std::vector<CMat> row_kernel(const CMat& r, double tol) {
    CMat row(1, r.rows(), Complex(0, 0));
    for (std::size_t j = 0; j < r.rows(); ++j) row.at(0, j) = r.at(j, 0);
    auto sol = solve_affine(row, CMat(1, 1, Complex(0, 0)), tol);
    if (!sol) throw Error("row_kernel: inconsistent homogeneous system");
    return sol->nullspace_basis;
}

// One corner-lowering, rank-preserving step for A in kH (k >= 3) with
// rank(A) <= k-1: J = v alpha^T with generic v on the slice v_1 = 1 and
// alpha = A^T beta chosen so that <v, beta> = 1, <Av, beta> = 0,
// <A e_n, beta> = 1. Afterwards (A-J) e_n is not an eigenvector of A-J.
inline CMat repair_start(const CMat& A, int k, double tol, Rng& rng, int retry_budget) {
    const std::size_t n = A.rows();
    CMat en = unit_vector(n, n - 1);
    CMat Aen = A * en;
    bool found = false;
    CMat best_J;
    double best_size = 0.0;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        CMat v = rng.generic_vector(n);
        v.at(0, 0) = Complex(1, 0);
        CMat Av = A * v;
        auto sol = solve_affine(stack_rows({v, Av, Aen}),
                                CMat::column({Complex(1, 0), Complex(0, 0), Complex(1, 0)}), tol);
        if (!sol) continue;
        CMat beta = random_affine_point(*sol, rng);
        CMat J = outer(v, A.transpose() * beta);
        CMat next = A - J;
        if (found && max_abs(next) >= best_size) continue;
        if (rank(next, tol) != rank(A, tol)) continue;
        CMat w = next * en;
        if (max_abs(w) <= tol * std::max(1.0, max_abs(next))) continue;
        if (is_eigenvector(next, w, tol)) continue;
        best_J = J;
        best_size = max_abs(next);
        found = true;
    }
    if (found) return best_J;
    throw Error("sln_monic_decompose: retry budget exhausted (corner repair, k=" + std::to_string(k) + ")");
}

// One corner-lowering, rank-preserving step for A in kH (3 <= k <= n-1) with
// rank(A) <= k-1 and A e_n not an eigenvector: J = (A e_n / k) alpha^T with
// alpha_n = 1, <A e_n, alpha> = 0, alpha outside im(A^T) and outside the
// locus killing the transpose half of P. Afterwards P(A-J) holds.
inline CMat repair_step(const CMat& A, int k, double tol, Rng& rng, int retry_budget) {
    const std::size_t n = A.rows();
    CMat en = unit_vector(n, n - 1), e1 = unit_vector(n, 0);
    CMat Aen = A * en;
    CMat v = Aen.scaled(Complex(1, 0) / Complex(k, 0));
    auto sol = solve_affine(stack_rows({en, Aen}), CMat::column({Complex(1, 0), Complex(0, 0)}), tol);
    if (!sol) throw Error("sln_monic_decompose: corner repair slice is empty");
    bool found = false;
    CMat best_J;
    double best_size = 0.0;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        CMat alpha = random_affine_point(*sol, rng);
        CMat J = outer(v, alpha);
        CMat next = A - J;
        if (found && max_abs(next) >= best_size) continue;
        if (rank(next, tol) != rank(A, tol)) continue;
        if (!property_P_holds(next, en, e1, tol)) continue;
        best_J = J;
        best_size = max_abs(next);
        found = true;
    }
    if (found) return best_J;
    throw Error("sln_monic_decompose: retry budget exhausted (corner repair, k=" + std::to_string(k) + ")");
}

// Rank-preserving step for A in nH of rank n-1 that makes P hold:
// J = (Ax) alpha^T with alpha_n = 1, <x, alpha> = 1, <Ax, alpha> = 0,
// <x, A^T e_1> = 1.
inline CMat repair_corank_one(const CMat& A, double tol, Rng& rng, int retry_budget) {
    const std::size_t n = A.rows();
    CMat en = unit_vector(n, n - 1), e1 = unit_vector(n, 0);
    bool found = false;
    CMat best_J;
    double best_size = 0.0;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        // alpha on the slice alpha_n = 1
        CMat alpha = rng.generic_vector(n);
        alpha.at(n - 1, 0) = Complex(1, 0);
        CMat Atalpha = A.transpose() * alpha;
        CMat Ate1 = A.transpose() * e1;
        auto sol = solve_affine(stack_rows({alpha, Atalpha, Ate1}),
                                CMat::column({Complex(1, 0), Complex(0, 0), Complex(1, 0)}), tol);
        if (!sol) continue;
        CMat x = random_affine_point(*sol, rng);
        CMat J = outer(A * x, alpha);
        CMat next = A - J;
        if (found && max_abs(next) >= best_size) continue;
        if (rank(next, tol) != rank(A, tol)) continue;
        if (!property_P_holds(next, en, e1, tol)) continue;
        best_J = J;
        best_size = max_abs(next);
        found = true;
    }
    if (found) return best_J;
    throw Error("sln_monic_decompose: retry budget exhausted (corank-one repair)");
}

// Rank-dropping peel for A in kH of rank k >= 3 with P(A): J = (Ax)(A^T beta)^T
// with <Ax, e_1> = 1 and the beta constraints placing J in X_1; alpha lies in
// im(A^T) and v = Ax, which is exactly the condition under which subtracting
// the rank-one J drops the rank. P is re-verified on the remainder.
inline CMat peel(const CMat& A, int k, double tol, Rng& rng, int retry_budget) {
    const std::size_t n = A.rows();
    CMat en = unit_vector(n, n - 1), e1 = unit_vector(n, 0);
    CMat Aen = A * en;
    auto sdirs = row_kernel(A.transpose() * e1, tol);  // S = ker(e_1^T A)
    std::size_t r = rank(A, tol);
    // keep the admissible peel whose remainder is closest to rank r-1: the
    // discarded tail stays in the remainder and ends up in the residual
    bool found = false;
    CMat best_J;
    double best_size = 0.0;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        CMat x = en.scaled(Complex(1, 0) / Complex(k, 0));
        for (const auto& d : sdirs) x = x + d.scaled(rng.small_complex());
        CMat Ax = A * x;
        CMat A2x = A * Ax;
        auto sol = solve_affine(stack_rows({Aen, Ax, A2x}),
                                CMat::column({Complex(1, 0), Complex(1, 0), Complex(0, 0)}), tol);
        if (!sol) continue;
        CMat beta = random_affine_point(*sol, rng);
        CMat J = outer(Ax, A.transpose() * beta);
        CMat next = A - J;
        auto [nu, ns, nv] = svd(next);
        double smax = std::abs(ns.at(0, 0));
        std::size_t rk = 0;
        for (std::size_t i = 0; i < ns.rows(); ++i)
            if (std::abs(ns.at(i, 0)) > tol * smax && smax > 0) ++rk;
        if (rk != r - 1) continue;
        double junk = ns.rows() >= r ? std::abs(ns.at(r - 1, 0)) : 0.0;
        if (found && junk >= best_size) continue;
        if (k - 1 >= 2 && !property_P_holds(next, en, e1, tol)) continue;
        best_J = J;
        best_size = junk;
        found = true;
    }
    if (found) return best_J;
    throw Error("sln_monic_decompose: retry budget exhausted (peel, k=" + std::to_string(k) + ")");
}

// Endgame: A in 2H of rank 2 splits as B G C + B (I - G) C for a rank-one
// 2x2 matrix G with tr(G) = 1 (so I - G is rank one too), tr(G C B) = 0
// (both traces vanish) and e_1^T B G C e_n = 1 (both corners are 1). The
// three linear constraints leave a line of G's; det G = 0 is a quadratic on
// that line.
inline std::pair<CMat, CMat> split_rank_two(const CMat& A, double tol, Rng& rng, int retry_budget) {
    const std::size_t n = A.rows();
    auto [U, S, Vh] = svd(A);
    // keep the admissible split whose halves are closest to exact rank one:
    // their second singular values are truncated by the summand extraction
    bool found = false;
    std::pair<CMat, CMat> best;
    double best_junk = 0.0;
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        CMat M(2, 2, Complex(0, 0)), Minv(2, 2, Complex(0, 0));
        // random basis change of the rank factorization to escape degenerate lines
        Complex m11 = rng.small_complex(), m12 = rng.small_complex();
        Complex m21 = rng.small_complex(), m22 = rng.small_complex();
        Complex det = m11 * m22 - m12 * m21;
        if (std::abs(det) < 1e-9) continue;
        CMat B(n, 2, Complex(0, 0)), C(2, n, Complex(0, 0));
        for (std::size_t i = 0; i < n; ++i) {
            Complex col0 = U.at(i, 0) * S.at(0, 0), col1 = U.at(i, 1) * S.at(1, 0);
            B.at(i, 0) = col0 * m11 + col1 * m21;
            B.at(i, 1) = col0 * m12 + col1 * m22;
        }
        Complex i11 = m22 / det, i12 = -m12 / det, i21 = -m21 / det, i22 = m11 / det;
        for (std::size_t j = 0; j < n; ++j) {
            Complex row0 = Vh.at(0, j), row1 = Vh.at(1, j);
            C.at(0, j) = i11 * row0 + i12 * row1;
            C.at(1, j) = i21 * row0 + i22 * row1;
        }
        CMat T = C * B;
        // unknowns (g11, g12, g21, g22)
        CMat lhs(3, 4, Complex(0, 0));
        lhs.at(0, 0) = Complex(1, 0);
        lhs.at(0, 3) = Complex(1, 0);  // tr G = 1
        lhs.at(1, 0) = T.at(0, 0);
        lhs.at(1, 1) = T.at(1, 0);
        lhs.at(1, 2) = T.at(0, 1);
        lhs.at(1, 3) = T.at(1, 1);  // tr(G T) = 0
        Complex u1 = B.at(0, 0), u2 = B.at(0, 1);
        Complex w1 = C.at(0, n - 1), w2 = C.at(1, n - 1);
        lhs.at(2, 0) = u1 * w1;
        lhs.at(2, 1) = u1 * w2;
        lhs.at(2, 2) = u2 * w1;
        lhs.at(2, 3) = u2 * w2;  // e_1^T B G C e_n = 1
        auto sol = solve_affine(lhs, CMat::column({Complex(1, 0), Complex(0, 0), Complex(1, 0)}), tol);
        if (!sol || sol->nullspace_basis.empty()) continue;
        CMat dir = sol->nullspace_basis[0];
        for (std::size_t i = 1; i < sol->nullspace_basis.size(); ++i)
            dir = dir + sol->nullspace_basis[i].scaled(rng.small_complex());
        const CMat& g0 = sol->particular;
        // det(g0 + t dir) = q0 + q1 t + q2 t^2
        auto det2 = [](const CMat& a, const CMat& b) {
            return a.at(0, 0) * b.at(3, 0) + b.at(0, 0) * a.at(3, 0) - a.at(1, 0) * b.at(2, 0) -
                   b.at(1, 0) * a.at(2, 0);
        };
        Complex q0 = g0.at(0, 0) * g0.at(3, 0) - g0.at(1, 0) * g0.at(2, 0);
        Complex q1 = det2(g0, dir);
        Complex q2 = dir.at(0, 0) * dir.at(3, 0) - dir.at(1, 0) * dir.at(2, 0);
        Complex t;
        if (std::abs(q2) > 1e-13 * (1.0 + std::abs(q0) + std::abs(q1))) {
            // smaller-magnitude root, via the stable sign choice and the
            // product of roots q0/q2
            Complex disc = std::sqrt(q1 * q1 - Complex(4, 0) * q2 * q0);
            Complex big_num = std::abs(-q1 + disc) >= std::abs(-q1 - disc) ? (-q1 + disc) : (-q1 - disc);
            Complex t_big = big_num / (Complex(2, 0) * q2);
            t = std::abs(t_big) > 1e-13 ? q0 / (q2 * t_big) : t_big;
        } else if (std::abs(q1) > 1e-13 * (1.0 + std::abs(q0))) {
            t = -q0 / q1;
        } else if (std::abs(q0) <= tol) {
            t = Complex(0, 0);
        } else {
            continue;
        }
        CMat g = g0 + dir.scaled(t);
        CMat G(2, 2, Complex(0, 0));
        G.at(0, 0) = g.at(0, 0);
        G.at(0, 1) = g.at(1, 0);
        G.at(1, 0) = g.at(2, 0);
        G.at(1, 1) = g.at(3, 0);
        CMat J1 = B * (G * C);
        CMat J2 = A - J1;
        double s = std::max(1.0, max_abs(A));
        auto [su1, sv1, sw1] = svd(J1);
        auto [su2, sv2, sw2] = svd(J2);
        auto rank_of = [tol](const CMat& sing) {
            double smax = std::abs(sing.at(0, 0));
            std::size_t rk = 0;
            for (std::size_t i = 0; i < sing.rows(); ++i)
                if (std::abs(sing.at(i, 0)) > tol * smax && smax > 0) ++rk;
            return rk;
        };
        if (rank_of(sv1) != 1 || rank_of(sv2) != 1) continue;
        double junk = std::abs(sv1.at(1, 0)) + std::abs(sv2.at(1, 0));
        if (found && junk >= best_junk) continue;
        if (std::abs(trace(J1)) > tol * s || std::abs(trace(J2)) > tol * s) continue;
        if (std::abs(J1.at(0, n - 1) - Complex(1, 0)) > tol * s) continue;
        best = {J1, J2};
        best_junk = junk;
        found = true;
    }
    if (found) return best;
    throw Error("sln_monic_decompose: retry budget exhausted (rank-two endgame)");
}

}  // namespace sln_detail

// Decompose a trace-zero A with top-right entry n into n rank-one trace-zero
// summands v_i alpha_i^T with (v_i)_1 (alpha_i)_n = 1. Rank-deficient inputs
// are first repaired (one corner-lowering step for the start, then one per
// missing rank unit; a dedicated step for corank one) until the genericity
// property P holds, after which a rank-dropping peel runs down to a rank-two
// remainder that is split in closed form.
inline Certificate sln_monic_decompose(const CMat& A, double tol, Rng& rng, int retry_budget = 32) {
    const std::size_t n = A.rows();
    if (n < 2 || A.cols() != n) throw Error("sln_monic_decompose: need a square matrix, n >= 2");
    double scale = std::max(1.0, max_abs(A));
    if (std::abs(trace(A)) > tol * scale) throw Error("sln_monic_decompose: trace must be zero");
    if (std::abs(A.at(0, n - 1) - Complex(n, 0)) > tol * scale)
        throw Error("sln_monic_decompose: top-right entry must equal n");

    Certificate cert;
    cert.family = Family::sln;
    cert.tolerance = tol;
    std::vector<CMat> summands;

    std::size_t r = rank(A, tol);
    if (r == 1) {
        CMat J = A.scaled(Complex(1, 0) / Complex(static_cast<int>(n), 0));
        for (std::size_t i = 0; i < n; ++i) summands.push_back(J);
    } else if (n == 2) {
        // A = (p, 2 / q, -p): summands (a_i, 1 / -a_i^2, -a_i) with
        // a_1 + a_2 = p and a_1^2 + a_2^2 = -q, i.e. roots of
        // t^2 - p t + (p^2 + q)/2
        Complex p = A.at(0, 0), q = A.at(1, 0);
        Complex prod = (p * p + q) / Complex(2, 0);
        Complex disc = std::sqrt(p * p - Complex(4, 0) * prod);
        Complex a1 = (p + disc) / Complex(2, 0), a2 = (p - disc) / Complex(2, 0);
        for (Complex a : {a1, a2}) {
            CMat J(2, 2, Complex(0, 0));
            J.at(0, 0) = a;
            J.at(0, 1) = Complex(1, 0);
            J.at(1, 0) = -a * a;
            J.at(1, 1) = -a;
            summands.push_back(J);
        }
    } else {
        CMat rem = A;
        int k = static_cast<int>(n);
        if (r <= n - 2) {
            // corner repairs: rank stays at r while k drops to r
            CMat J = sln_detail::repair_start(rem, k, tol, rng, retry_budget);
            summands.push_back(J);
            rem = rem - J;
            --k;
            while (k > static_cast<int>(r)) {
                J = sln_detail::repair_step(rem, k, tol, rng, retry_budget);
                summands.push_back(J);
                rem = rem - J;
                --k;
            }
        } else if (r == n - 1) {
            CMat J = sln_detail::repair_corank_one(rem, tol, rng, retry_budget);
            summands.push_back(J);
            rem = rem - J;
            --k;
        }
        while (k > 2) {
            CMat J = sln_detail::peel(rem, k, tol, rng, retry_budget);
            summands.push_back(J);
            rem = rem - J;
            --k;
        }
        auto [J1, J2] = sln_detail::split_rank_two(rem, tol, rng, retry_budget);
        summands.push_back(J1);
        summands.push_back(J2);
    }
    for (const CMat& J : summands) {
        MatrixSummand ms = sln_detail::extract_summand(J);
        // the solver leaves a trace drift proportional to the intermediate
        // scale; cancel it exactly with a tiny bump of alpha at the largest
        // coordinate of v other than the one pinned by the monic convention
        Complex pair = pairing(ms.v, ms.alpha);
        std::size_t m = 0;
        double best = -1.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (std::abs(ms.v.at(i, 0)) > best) {
                best = std::abs(ms.v.at(i, 0));
                m = i;
            }
        if (best > 0.0) ms.alpha.at(m, 0) = ms.alpha.at(m, 0) - pair / ms.v.at(m, 0);
        cert.matrix_summands.push_back(ms);
    }
    decomp_detail::matrix_like_checks(cert, A, tol, false, true);
    return cert;
}

}  // namespace monic

#endif
