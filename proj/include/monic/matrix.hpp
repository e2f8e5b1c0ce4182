#ifndef MONIC_MATRIX_HPP
#define MONIC_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "monic/scalar.hpp"

namespace monic {

// Dense row-major matrix over one of the scalar fields. Vectors are n x 1.
template <class F>
class Matrix {
   public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const F& fill)
        : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const F& one, const F& zero) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    static Matrix column(const std::vector<F>& v) {
        Matrix m;
        m.rows_ = v.size();
        m.cols_ = 1;
        m.e_ = v;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return e_.size(); }
    bool empty() const { return e_.empty(); }

    F& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const F& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    const std::vector<F>& entries() const { return e_; }

    Matrix transpose() const {
        if (empty()) return *this;
        Matrix t(cols_, rows_, e_[0]);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        require_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] + o.e_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const {
        require_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] - o.e_[i];
        return r;
    }
    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw Error("Matrix: shape mismatch in product");
        Matrix r(rows_, o.cols_, field_traits<F>::zero(e_.empty() ? o.e_[0] : e_[0]));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const F& a = at(i, k);
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + a * o.at(k, j);
            }
        return r;
    }
    Matrix scaled(const F& c) const {
        Matrix r = *this;
        for (auto& x : r.e_) x = x * c;
        return r;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

   private:
    void require_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("Matrix: shape mismatch");
    }
    std::size_t rows_, cols_;
    std::vector<F> e_;
};

using RatMat = Matrix<Rational>;
using CMat = Matrix<Complex>;

namespace detail {

inline Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m.at(i, j);
    return e;
}

inline CMat from_eigen(const Eigen::MatrixXcd& e) {
    CMat m(e.rows(), e.cols(), Complex(0, 0));
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m.at(i, j) = e(i, j);
    return m;
}

// Row echelon pivot count over an exact field.
template <class F>
std::size_t exact_rank(Matrix<F> m) {
    std::size_t rank = 0;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < m.cols() && prow < m.rows(); ++col) {
        std::size_t piv = prow;
        while (piv < m.rows() && field_traits<F>::is_zero(m.at(piv, col), 0)) ++piv;
        if (piv == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(prow, j), m.at(piv, j));
        F inv = field_traits<F>::one(m.at(prow, col)) / m.at(prow, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(prow, j) = m.at(prow, j) * inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == prow || field_traits<F>::is_zero(m.at(i, col), 0)) continue;
            F f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) - f * m.at(prow, j);
        }
        ++prow;
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Numerical or exact rank. tol must be 0 for exact fields; for ComplexApprox,
// singular values below tol * sigma_max count as zero.
template <class F>
std::size_t rank(const Matrix<F>& m, double tol = 0) {
    static_assert(field_traits<F>::is_exact);
    if (tol != 0) throw Error("rank: nonzero tolerance supplied for exact field");
    if (m.empty()) return 0;
    return detail::exact_rank(m);
}

inline std::size_t rank(const CMat& m, double tol = 1e-9) {
    if (m.empty()) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(m));
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    double cutoff = tol * sv(0);
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff && sv(0) > 0) ++r;
    return r;
}

template <class F>
struct AffineSolution {
    Matrix<F> particular;                  // M * particular = b
    std::vector<Matrix<F>> nullspace_basis;  // basis of ker(M)
};

// Solves M x = b. Returns nothing if inconsistent; otherwise a particular
// solution together with a kernel basis.
template <class F>
std::optional<AffineSolution<F>> solve_affine(const Matrix<F>& M, const Matrix<F>& b, double tol = 0) {
    static_assert(field_traits<F>::is_exact);
    if (M.rows() != b.rows()) throw Error("solve_affine: row mismatch");
    const F zero = field_traits<F>::zero(b.at(0, 0));
    const F one = field_traits<F>::one(b.at(0, 0));
    // Gauss-Jordan on [M | b]
    std::size_t n = M.cols();
    Matrix<F> a(M.rows(), n + 1, zero);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = M.at(i, j);
        a.at(i, n) = b.at(i, 0);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < n && prow < a.rows(); ++col) {
        std::size_t piv = prow;
        while (piv < a.rows() && field_traits<F>::is_zero(a.at(piv, col), 0)) ++piv;
        if (piv == a.rows()) continue;
        for (std::size_t j = 0; j <= n; ++j) std::swap(a.at(prow, j), a.at(piv, j));
        F inv = one / a.at(prow, col);
        for (std::size_t j = col; j <= n; ++j) a.at(prow, j) = a.at(prow, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == prow || field_traits<F>::is_zero(a.at(i, col), 0)) continue;
            F f = a.at(i, col);
            for (std::size_t j = col; j <= n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(prow, j);
        }
        pivot_col.push_back(col);
        ++prow;
    }
    for (std::size_t i = prow; i < a.rows(); ++i)
        if (!field_traits<F>::is_zero(a.at(i, n), tol)) return std::nullopt;

    AffineSolution<F> sol;
    sol.particular = Matrix<F>(n, 1, zero);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) sol.particular.at(pivot_col[r], 0) = a.at(r, n);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Matrix<F> v(n, 1, zero);
        v.at(free, 0) = one;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v.at(pivot_col[r], 0) = zero - a.at(r, free);
        sol.nullspace_basis.push_back(v);
    }
    return sol;
}

inline std::optional<AffineSolution<Complex>> solve_affine(const CMat& M, const CMat& b, double tol = 1e-9) {
    if (M.rows() != b.rows()) throw Error("solve_affine: row mismatch");
    Eigen::MatrixXcd A = detail::to_eigen(M);
    Eigen::MatrixXcd rhs = detail::to_eigen(b);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    Eigen::VectorXcd x = svd.solve(rhs.col(0));
    double bnorm = rhs.norm();
    double resid = (A * x - rhs.col(0)).norm();
    if (resid > tol * (1.0 + bnorm)) return std::nullopt;
    AffineSolution<Complex> sol;
    Eigen::MatrixXcd xm = x;
    sol.particular = detail::from_eigen(xm);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() ? tol * std::max(sv(0), 1.0) : 0.0;
    for (Eigen::Index i = 0; i < A.cols(); ++i) {
        if (i >= sv.size() || sv(i) <= cutoff) {
            Eigen::MatrixXcd col = svd.matrixV().col(i);
            sol.nullspace_basis.push_back(detail::from_eigen(col));
        }
    }
    return sol;
}

// True iff A v is parallel to v, i.e. [v | Av] has rank <= 1. Callers testing
// the eigenvector condition on Az pass v = Az.
inline bool is_eigenvector(const CMat& A, const CMat& v, double tol = 1e-9) {
    if (A.rows() != A.cols()) throw Error("is_eigenvector: A must be square");
    if (A.cols() != v.rows() || v.cols() != 1) throw Error("is_eigenvector: bad vector shape");
    Eigen::MatrixXcd ve = detail::to_eigen(v);
    if (ve.norm() <= tol) throw Error("is_eigenvector: zero vector");
    CMat av = A * v;
    CMat pair(A.rows(), 2, Complex(0, 0));
    for (std::size_t i = 0; i < A.rows(); ++i) {
        pair.at(i, 0) = v.at(i, 0);
        pair.at(i, 1) = av.at(i, 0);
    }
    return rank(pair, tol) <= 1;
}

// Full SVD A = U diag(S) Vh. S is returned as a column of real singular
// values stored in Complex entries; Vh is the adjoint factor.
inline std::tuple<CMat, CMat, CMat> svd(const CMat& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> s(detail::to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMat U = detail::from_eigen(s.matrixU());
    CMat Vh = detail::from_eigen(s.matrixV().adjoint());
    CMat S(s.singularValues().size(), 1, Complex(0, 0));
    for (Eigen::Index i = 0; i < s.singularValues().size(); ++i) S.at(i, 0) = s.singularValues()(i);
    return {U, S, Vh};
}

// max-abs norm
inline double max_abs(const CMat& m) {
    double r = 0;
    for (const auto& x : m.entries()) r = std::max(r, std::abs(x));
    return r;
}

// bilinear pairing <v, a> = a^T v (no conjugation)
inline Complex pairing(const CMat& v, const CMat& a) {
    if (v.rows() != a.rows() || v.cols() != 1 || a.cols() != 1) throw Error("pairing: shape mismatch");
    Complex s(0, 0);
    for (std::size_t i = 0; i < v.rows(); ++i) s += v.at(i, 0) * a.at(i, 0);
    return s;
}

inline CMat outer(const CMat& v, const CMat& a) {
    CMat r(v.rows(), a.rows(), Complex(0, 0));
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) r.at(i, j) = v.at(i, 0) * a.at(j, 0);
    return r;
}

inline Complex trace(const CMat& m) {
    Complex s(0, 0);
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) s += m.at(i, i);
    return s;
}

}  // namespace monic

#endif
