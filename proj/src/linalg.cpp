#include "wright/linalg.hpp"

#include <cmath>

namespace wright {

CMatrix to_complex(const RMatrix& a) {
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = ComplexRect(a(i, j));
    return c;
}

CVector to_complex(const RVector& v) {
    CVector c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = ComplexRect(v[i]);
    return c;
}

Eigen::MatrixXcd midpoint(const CMatrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).mid();
    return m;
}

Eigen::MatrixXd midpoint(const RMatrix& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j).mid();
    return m;
}

Eigen::VectorXcd midpoint(const CVector& v) {
    Eigen::VectorXcd m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m(i) = v[i].mid();
    return m;
}

namespace {

template <class M>
bool is_lower_triangular(const M& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != typename M::Scalar(0)) return false;
    return true;
}

template <class M>
M invert(const M& a) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "float_inverse needs a square matrix");
    const Eigen::Index n = a.rows();
    M inv;
    if (is_lower_triangular(a)) {
        for (Eigen::Index i = 0; i < n; ++i)
            if (a(i, i) == typename M::Scalar(0)) throw Error(Errc::NumericallySingular, "zero pivot");
        inv = a.template triangularView<Eigen::Lower>().solve(M::Identity(n, n));
    } else {
        Eigen::PartialPivLU<M> lu(a);
        double rc = lu.rcond();
        if (!(rc > 1e-15)) throw Error(Errc::NumericallySingular, "reciprocal condition estimate too small");
        inv = lu.inverse();
    }
    if (!inv.allFinite()) throw Error(Errc::NumericallySingular, "non-finite inverse");
    return inv;
}

}  // namespace

Eigen::MatrixXcd float_inverse(const Eigen::MatrixXcd& a) { return invert(a); }
Eigen::MatrixXd float_inverse(const Eigen::MatrixXd& a) { return invert(a); }

VerifiedSolver::VerifiedSolver(const CMatrix& a) : a_(a) {
    if (a.rows() != a.cols()) throw Error(Errc::DimensionMismatch, "verified solve needs a square matrix");
    const std::size_t n = a.rows();
    try {
        r_ = float_inverse(midpoint(a));
    } catch (const Error& e) {
        throw Error(Errc::NotVerifiablyInvertible, e.detail());
    }
    c_ = CMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ComplexRect acc(i == j ? 1.0 : 0.0);
            for (std::size_t k = 0; k < n; ++k) acc -= mul(r_(i, k), a(k, j));
            c_(i, j) = acc;
        }
    norm_c_ = inf_norm_upper(c_);
    if (!(norm_c_ < 1.0)) throw Error(Errc::NotVerifiablyInvertible, "||I - RA|| >= 1");
}

CVector VerifiedSolver::solve(const CVector& b) const {
    const std::size_t n = a_.rows();
    if (b.size() != n) throw Error(Errc::DimensionMismatch, "right-hand side length");
    Eigen::VectorXcd xh = r_ * midpoint(b);
    CVector res(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexRect acc = b[i];
        for (std::size_t j = 0; j < n; ++j) acc -= mul(xh(j), a_(i, j));
        res[i] = acc;
    }
    CVector z(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexRect acc(0.0);
        for (std::size_t j = 0; j < n; ++j) acc += mul(r_(i, j), res[j]);
        z[i] = acc;
    }
    // The error e = x - xh solves e = z + C e, so ||e|| <= ||z|| / (1 - ||C||).
    double rho = rnd::div_up(inf_norm_upper(z), rnd::sub_down(1.0, norm_c_));
    CVector e(n, ComplexRect(RealInterval(-rho, rho), RealInterval(-rho, rho)));
    for (int it = 0; it < 2; ++it) {
        CVector next(n);
        for (std::size_t i = 0; i < n; ++i) {
            ComplexRect acc = z[i];
            for (std::size_t j = 0; j < n; ++j) acc += c_(i, j) * e[j];
            next[i] = intersect(acc, e[i]);
        }
        e = std::move(next);
    }
    CVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = ComplexRect(xh(i)) + e[i];
    return x;
}

namespace {

void product_column(const Eigen::MatrixXcd& a, const CMatrix& b, std::size_t j, CMatrix& out) {
    const auto n = static_cast<std::size_t>(a.rows());
    std::vector<ComplexRect> acc(n, ComplexRect(0.0));
    for (std::size_t k = 0; k < b.rows(); ++k) {
        const ComplexRect& bk = b(k, j);
        if (bk.is_point() && bk.re.lo == 0 && bk.im.lo == 0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const std::complex<double> aik = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
            if (aik == 0.0) continue;
            acc[i] += mul(aik, bk);
        }
    }
    for (std::size_t i = 0; i < n; ++i) out(i, j) = acc[i];
}

}  // namespace

CMatrix matmul_pi(const Eigen::MatrixXcd& a, const CMatrix& b, Exec exec) {
    if (static_cast<std::size_t>(a.cols()) != b.rows()) throw Error(Errc::DimensionMismatch, "matmul_pi");
    CMatrix out(static_cast<std::size_t>(a.rows()), b.cols());
    const auto n = static_cast<long>(b.cols());
    if (exec == Exec::serial) {
        for (long j = 0; j < n; ++j) product_column(a, b, static_cast<std::size_t>(j), out);
    } else {
#pragma omp parallel for schedule(dynamic, 4)
        for (long j = 0; j < n; ++j) product_column(a, b, static_cast<std::size_t>(j), out);
    }
    return out;
}

CVector matvec_pi(const Eigen::MatrixXcd& a, const CVector& x) {
    if (static_cast<std::size_t>(a.cols()) != x.size()) throw Error(Errc::DimensionMismatch, "matvec_pi");
    CVector y(static_cast<std::size_t>(a.rows()), ComplexRect(0.0));
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        ComplexRect acc(0.0);
        for (Eigen::Index k = 0; k < a.cols(); ++k)
            if (a(i, k) != 0.0) acc += mul(a(i, k), x[static_cast<std::size_t>(k)]);
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

CMatrix to_interval(const Eigen::MatrixXcd& a) {
    CMatrix m(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = ComplexRect(a(i, j));
    return m;
}

double one_norm_upper(const Eigen::MatrixXcd& a) {
    double best = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) s = rnd::add_up(s, mag_upper(ComplexRect(a(i, j))));
        best = std::max(best, s);
    }
    return best;
}

CVector verified_solve(const CMatrix& a, const CVector& b) { return VerifiedSolver(a).solve(b); }

CVector verified_solve(const RMatrix& a, const RVector& b) {
    return VerifiedSolver(to_complex(a)).solve(to_complex(b));
}

}  // namespace wright
