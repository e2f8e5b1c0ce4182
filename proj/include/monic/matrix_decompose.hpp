#ifndef MONIC_MATRIX_DECOMPOSE_HPP
#define MONIC_MATRIX_DECOMPOSE_HPP

#include <cmath>
#include <vector>

#include "monic/certificate.hpp"
#include "monic/matrix.hpp"
#include "monic/rng.hpp"

namespace monic {

inline constexpr int kDefaultRetryBudget = 32;

namespace decomp_detail {

inline CMat summand_sum(const std::vector<MatrixSummand>& summands, std::size_t rows, std::size_t cols) {
    CMat s(rows, cols, Complex(0, 0));
    for (const auto& ms : summands) s = s + outer(ms.v, ms.alpha);
    return s;
}

inline void matrix_like_checks(Certificate& cert, const CMat& target, double tol, bool symmetric,
                               bool sln) {
    cert.monic_checks.clear();
    cert.rank_checks.clear();
    cert.structure_checks.clear();
    const std::size_t n_last = target.cols() - 1;
    for (const auto& ms : cert.matrix_summands) {
        bool monic;
        if (sln)
            monic = std::abs(ms.v.at(0, 0) * ms.alpha.at(n_last, 0) - Complex(1, 0)) <= tol;
        else
            monic = std::abs(ms.v.at(0, 0) * ms.alpha.at(0, 0) - Complex(1, 0)) <= tol;
        cert.monic_checks.push_back(monic);
        cert.rank_checks.push_back(max_abs(ms.v) > tol && max_abs(ms.alpha) > tol);
        bool structure = true;
        if (symmetric) {
            structure = (ms.v - ms.alpha).rows() && max_abs(ms.v - ms.alpha) <= tol * std::max(1.0, max_abs(ms.v));
        }
        if (sln) structure = std::abs(pairing(ms.v, ms.alpha)) <= tol * std::max(1.0, max_abs(ms.v) * max_abs(ms.alpha));
        cert.structure_checks.push_back(structure);
    }
    CMat sum = summand_sum(cert.matrix_summands, target.rows(), target.cols());
    cert.residual = max_abs(target - sum) / std::max(1.0, max_abs(target));
}

}  // namespace decomp_detail

// Monic decomposition of A in kH (top-left entry k, rank <= k) into k rank-one
// summands v_i alpha_i^T with (v_i)_1 (alpha_i)_1 = 1. Peels one rank at a
// time: v = Ax scaled so v_1 = 1, alpha in the row space with <x, alpha> = 1
// and alpha_1 = 1, which drops the rank by exactly one and the corner by one.
// The rank-one tail is emitted as equal copies.
inline Certificate matrix_monic_decompose(const CMat& A, int k, double tol, Rng& rng,
                                          int retry_budget = kDefaultRetryBudget) {
    const std::size_t m = A.rows(), n = A.cols();
    if (m == 0 || n == 0 || k < 1 || static_cast<std::size_t>(k) > std::min(m, n))
        throw Error("matrix_monic_decompose: need 1 <= k <= min(m, n)");
    double scale = std::max(1.0, max_abs(A));
    if (std::abs(A.at(0, 0) - Complex(k, 0)) > tol * scale)
        throw Error("matrix_monic_decompose: top-left entry must equal k");
    std::size_t ell = rank(A, tol);
    if (ell > static_cast<std::size_t>(k)) throw Error("matrix_monic_decompose: not in the k-th monic secant");

    Certificate cert;
    cert.family = Family::matrix;
    cert.tolerance = tol;

    CMat rem = A;
    int corner = k;
    std::size_t r = ell;
    while (r > 1) {
        // keep the admissible peel with the smallest remainder; see the
        // symmetric variant below for why growth must be contained
        bool peeled = false;
        MatrixSummand best{};
        CMat best_next;
        double best_size = 0.0;
        for (int attempt = 0; attempt < retry_budget; ++attempt) {
            CMat x = rng.generic_vector(n);
            CMat v = rem * x;
            if (std::abs(v.at(0, 0)) <= tol * std::max(1.0, max_abs(v))) continue;
            Complex s = Complex(1, 0) / v.at(0, 0);
            x = x.scaled(s);
            v = v.scaled(s);  // v = rem * x with v_1 = 1
            // alpha = rem^T beta with beta^T rem x = 1 and alpha_1 = 1
            CMat lhs(2, m, Complex(0, 0));
            CMat remx = v;                      // rem * x
            CMat reme1(m, 1, Complex(0, 0));    // rem e_1 gives alpha_1 = (rem^T beta)_1
            for (std::size_t i = 0; i < m; ++i) reme1.at(i, 0) = rem.at(i, 0);
            for (std::size_t i = 0; i < m; ++i) {
                lhs.at(0, i) = remx.at(i, 0);
                lhs.at(1, i) = reme1.at(i, 0);
            }
            CMat rhs(2, 1, Complex(1, 0));
            auto sol = solve_affine(lhs, rhs, tol);
            if (!sol) continue;
            CMat beta = sol->particular;
            double damp = 1.0 / std::sqrt(std::max(1.0, max_abs(rem)));
            for (std::size_t dir = 0; dir < sol->nullspace_basis.size(); ++dir)
                beta = beta + sol->nullspace_basis[dir].scaled(rng.small_complex() * damp);
            CMat alpha = rem.transpose() * beta;
            CMat next = rem - outer(v, alpha);
            if (peeled && max_abs(next) >= best_size) continue;
            if (rank(next, tol) != r - 1) continue;
            if (std::abs(next.at(0, 0) - Complex(corner - 1, 0)) > tol * scale) continue;
            best = {v, alpha};
            best_next = next;
            best_size = max_abs(next);
            peeled = true;
        }
        if (!peeled)
            throw Error("matrix_monic_decompose: retry budget exhausted at rank " + std::to_string(r));
        cert.matrix_summands.push_back(best);
        rem = best_next;
        --corner;
        --r;
    }
    // rank-one (or zero) remainder with corner entry `corner`: equal copies
    if (corner > 0) {
        if (r == 0) throw Error("matrix_monic_decompose: degenerate remainder (corner nonzero, rank zero)");
        CMat v(m, 1, Complex(0, 0)), alpha(n, 1, Complex(0, 0));
        for (std::size_t i = 0; i < m; ++i) v.at(i, 0) = rem.at(i, 0) / rem.at(0, 0);
        for (std::size_t j = 0; j < n; ++j) alpha.at(j, 0) = rem.at(0, j) / Complex(corner, 0);
        for (int c = 0; c < corner; ++c) cert.matrix_summands.push_back({v, alpha});
    }
    decomp_detail::matrix_like_checks(cert, A, tol, false, false);
    return cert;
}

// Symmetric variant: summands v_i v_i^T with (v_i)_1 = 1. The peeling vector
// v = Ax needs v_1 = 1 and x^T A x = 1 simultaneously, found by solving a
// scalar quadratic along a random line inside the hyperplane (Ax)_1 = 1.
inline Certificate symmetric_monic_decompose(const CMat& A, int k, double tol, Rng& rng,
                                             int retry_budget = kDefaultRetryBudget) {
    const std::size_t n = A.rows();
    if (n == 0 || A.cols() != n) throw Error("symmetric_monic_decompose: square matrix required");
    double scale = std::max(1.0, max_abs(A));
    if (max_abs(A - A.transpose()) > tol * scale)
        throw Error("symmetric_monic_decompose: matrix is not symmetric");
    if (k < 1 || static_cast<std::size_t>(k) > n) throw Error("symmetric_monic_decompose: need 1 <= k <= n");
    if (std::abs(A.at(0, 0) - Complex(k, 0)) > tol * scale)
        throw Error("symmetric_monic_decompose: top-left entry must equal k");
    std::size_t ell = rank(A, tol);
    if (ell > static_cast<std::size_t>(k))
        throw Error("symmetric_monic_decompose: not in the k-th monic secant");

    Certificate cert;
    cert.family = Family::symmetric;
    cert.tolerance = tol;

    CMat rem = A;
    int corner = k;
    std::size_t r = ell;
    while (r > 1) {
        // among all admissible peels seen within the retry budget, keep the one
        // whose remainder is closest to rank r-1: the discarded tail stays in
        // rem at every step and ends up in the certificate residual
        bool peeled = false;
        CMat best_v, best_next;
        double best_junk = 0.0;
        for (int attempt = 0; attempt < retry_budget; ++attempt) {
            // hyperplane (rem x)_1 = 1: particular x0 + kernel of the first row
            CMat row1(1, n, Complex(0, 0));
            for (std::size_t j = 0; j < n; ++j) row1.at(0, j) = rem.at(0, j);
            auto hp = solve_affine(row1, CMat(1, 1, Complex(1, 0)), tol);
            if (!hp) continue;
            CMat x0 = hp->particular;
            // stay near the minimum-norm sheet of the quadric x^T rem x = 1,
            // otherwise v = rem x (and the peeled summand) dwarfs rem
            double damp = 1.0 / std::sqrt(std::max(1.0, max_abs(rem)));
            for (auto& kdir : hp->nullspace_basis) x0 = x0 + kdir.scaled(rng.small_complex() * damp);
            if (hp->nullspace_basis.empty()) continue;
            CMat dir = hp->nullspace_basis[rng.integer(0, static_cast<std::int64_t>(hp->nullspace_basis.size()) - 1)];
            // q(t) = (x0 + t dir)^T rem (x0 + t dir) = 1, quadratic in t
            Complex q2 = pairing(rem * dir, dir);
            Complex q1 = pairing(rem * x0, dir) + pairing(rem * dir, x0);
            Complex q0 = pairing(rem * x0, x0) - Complex(1, 0);
            std::vector<Complex> roots;
            if (std::abs(q2) > tol) {
                // larger root from the stable sign choice, smaller via the
                // product of roots q0/q2
                Complex disc = std::sqrt(q1 * q1 - Complex(4, 0) * q2 * q0);
                Complex big_num = std::abs(-q1 + disc) >= std::abs(-q1 - disc) ? (-q1 + disc) : (-q1 - disc);
                if (std::abs(big_num) <= tol) continue;
                Complex t_big = big_num / (Complex(2, 0) * q2);
                roots.push_back(t_big);
                if (std::abs(t_big) > tol) roots.push_back(q0 / (q2 * t_big));
            } else if (std::abs(q1) > tol) {
                roots.push_back(-q0 / q1);
            } else {
                continue;
            }
            for (const Complex& t : roots) {
                CMat x = x0 + dir.scaled(t);
                CMat v = rem * x;  // v_1 = 1, x^T rem x = 1
                CMat next = rem - outer(v, v);
                auto [nu, ns, nv] = svd(next);
                double smax = std::abs(ns.at(0, 0));
                std::size_t rk = 0;
                for (std::size_t i = 0; i < ns.rows(); ++i)
                    if (std::abs(ns.at(i, 0)) > tol * smax && smax > 0) ++rk;
                if (rk != r - 1) continue;
                double junk = ns.rows() >= r ? std::abs(ns.at(r - 1, 0)) : 0.0;
                if (peeled && junk >= best_junk) continue;
                if (std::abs(next.at(0, 0) - Complex(corner - 1, 0)) > tol * scale) continue;
                best_v = v;
                best_next = next;
                best_junk = junk;
                peeled = true;
            }
        }
        if (!peeled)
            throw Error("symmetric_monic_decompose: retry budget exhausted at rank " + std::to_string(r));
        cert.matrix_summands.push_back({best_v, best_v});
        rem = best_next;
        --corner;
        --r;
    }
    if (corner > 0) {
        if (r == 0) throw Error("symmetric_monic_decompose: degenerate remainder");
        // rem = corner * v v^T with v_1 = 1
        CMat v(n, 1, Complex(0, 0));
        for (std::size_t i = 0; i < n; ++i) v.at(i, 0) = rem.at(i, 0) / rem.at(0, 0);
        for (int c = 0; c < corner; ++c) cert.matrix_summands.push_back({v, v});
    }
    decomp_detail::matrix_like_checks(cert, A, tol, true, false);
    return cert;
}

}  // namespace monic

#endif
