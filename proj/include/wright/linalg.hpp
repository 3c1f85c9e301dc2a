#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "wright/exec.hpp"
#include "wright/interval.hpp"

namespace wright {

template <class T>
using IntervalVector = std::vector<T>;
using CVector = IntervalVector<ComplexRect>;
using RVector = IntervalVector<RealInterval>;

template <class T>
class IntervalMatrix {
public:
    IntervalMatrix() = default;
    IntervalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0.0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static IntervalMatrix identity(std::size_t n) {
        IntervalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using CMatrix = IntervalMatrix<ComplexRect>;
using RMatrix = IntervalMatrix<RealInterval>;

template <class T>
IntervalVector<T> mat_vec(const IntervalMatrix<T>& a, const IntervalVector<T>& x) {
    if (a.cols() != x.size()) throw Error(Errc::DimensionMismatch, "mat_vec");
    IntervalVector<T> y(a.rows(), T(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        T acc(0.0);
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

template <class T>
IntervalMatrix<T> mat_mul(const IntervalMatrix<T>& a, const IntervalMatrix<T>& b) {
    if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "mat_mul");
    IntervalMatrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            T acc(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    return c;
}

// Induced infinity norm: max row sum of magnitude upper bounds, rounded up.
template <class T>
double inf_norm_upper(const IntervalMatrix<T>& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s = rnd::add_up(s, mag_upper(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

// Induced l1 norm: max column sum.
template <class T>
double one_norm_upper(const IntervalMatrix<T>& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s = rnd::add_up(s, mag_upper(a(i, j)));
        best = std::max(best, s);
    }
    return best;
}

template <class T>
double inf_norm_upper(const IntervalVector<T>& v) {
    double best = 0.0;
    for (const auto& x : v) best = std::max(best, mag_upper(x));
    return best;
}

template <class T>
double one_norm_upper(const IntervalVector<T>& v) {
    double s = 0.0;
    for (const auto& x : v) s = rnd::add_up(s, mag_upper(x));
    return s;
}

CMatrix to_complex(const RMatrix& a);
CVector to_complex(const RVector& v);
Eigen::MatrixXcd midpoint(const CMatrix& a);
Eigen::MatrixXd midpoint(const RMatrix& a);
Eigen::VectorXcd midpoint(const CVector& v);

// Nonrigorous approximate inverse. Lower-triangular input is inverted by
// substitution so the structural zeros stay exact.
Eigen::MatrixXcd float_inverse(const Eigen::MatrixXcd& a);
Eigen::MatrixXd float_inverse(const Eigen::MatrixXd& a);

/// Krawczyk-style verified solver for A x = b. Construction certifies
/// ||I - R A||_inf < 1 for the floating inverse R of mid(A), which proves every
/// matrix in A invertible; solve() may then be called for many right sides.
class VerifiedSolver {
public:
    explicit VerifiedSolver(const CMatrix& a);

    CVector solve(const CVector& b) const;
    double contraction() const { return norm_c_; }
    std::size_t size() const { return a_.rows(); }

private:
    CMatrix a_;
    Eigen::MatrixXcd r_;
    CMatrix c_;
    double norm_c_ = 0.0;
};

CVector verified_solve(const CMatrix& a, const CVector& b);

// Enclosure of A*B for a floating A and interval B. Exact zeros in either factor
// are skipped, which makes triangular products cheap.
CMatrix matmul_pi(const Eigen::MatrixXcd& a, const CMatrix& b, Exec exec = Exec::parallel);
CVector matvec_pi(const Eigen::MatrixXcd& a, const CVector& x);
CMatrix to_interval(const Eigen::MatrixXcd& a);
// Rigorous induced l1 norm of a floating matrix.
double one_norm_upper(const Eigen::MatrixXcd& a);
CVector verified_solve(const RMatrix& a, const RVector& b);

}  // namespace wright
