#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wright/linalg.hpp"

namespace wright {

/// Chebyshev extremal mesh on [-1, 0] with theta_0 = 0 and theta_n = -1, the
/// matrix D[k-1][j-1] = l_j'(theta_k) for 1 <= j,k <= n, and D1 = D * ones.
struct ChebyshevScheme {
    int n = 0;
    RealInterval alpha;
    RVector nodes;
    RMatrix D;
    RVector D1;
    // complex copies used by every resolvent solve
    CMatrix Dc;
    CVector D1c;
    // floating midpoints for seeding and approximate solves
    Eigen::MatrixXd Dm;
    Eigen::VectorXd D1m;
};

ChebyshevScheme build_scheme(int n, const RealInterval& alpha);

// l_j'(theta_k) for 0 <= j,k <= n, the full (n+1)-point differentiation rule.
RealInterval lagrange_derivative(const RVector& nodes, int j, int k);

// Enclosure of the solution set of (D - zI) v = D1.
CVector blowup_vector(const ChebyshevScheme& s, const ComplexRect& z);
// Same, with the solver reused by the caller.
CVector blowup_vector(const ChebyshevScheme& s, const VerifiedSolver& solver);
VerifiedSolver resolvent_solver(const ChebyshevScheme& s, const ComplexRect& z);

// z + alpha * (blowup_vector)_n
ComplexRect delta_n(const ChebyshevScheme& s, const ComplexRect& z);

struct DeltaDerivs {
    ComplexRect d1;
    ComplexRect d2;
};
DeltaDerivs delta_n_derivs(const ChebyshevScheme& s, const ComplexRect& z);

// Linearization (y0, y) -> (-alpha y_n, D y - y0 D1) at floating midpoints.
Eigen::MatrixXd assemble_an_float(const ChebyshevScheme& s);

// Interval version of the same matrix, used by the homological oracle.
CMatrix assemble_an(const ChebyshevScheme& s);

// Floating helpers for seeding: Delta_n and its derivative at a point.
std::complex<double> delta_n_float(const ChebyshevScheme& s, std::complex<double> z);
std::complex<double> delta_n_prime_float(const ChebyshevScheme& s, std::complex<double> z);
Eigen::VectorXcd blowup_vector_float(const ChebyshevScheme& s, std::complex<double> z);

}  // namespace wright
