#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wright/cheb.hpp"
#include "wright/exec.hpp"
#include "wright/roots.hpp"
#include "wright/seq.hpp"

namespace wright {

/// Everything F (DDE) or F_n (PSA) needs: the eigenvalue pair, the diagonal
/// multiplier of r / r_n, Delta(<lambda,beta>) and the first-order data xi.
struct ProblemData {
    Kind kind = Kind::dde;
    RealInterval alpha;
    SpectralPair lambda;
    MultiplierTable mult;
    std::vector<ComplexRect> delta;  // Delta or Delta_n at <lambda,beta>, degree order
    int maxdeg = 0;
    ComplexRect xi10;
    ComplexRect xi01;

    ComplexRect z_at(int b1, int b2) const;
    ComplexRect delta_at(int b1, int b2) const { return delta.at(tri_index(b1, b2)); }
    ComplexRect xi_at(int b1, int /*b2*/) const { return b1 == 1 ? xi10 : xi01; }
};

// Tables up to maxdeg (use 2N so Y0 can see the tail). xi_(1,0) = xi_(0,1) = xi_scale.
ProblemData make_problem(Kind kind, const RealInterval& alpha, const SpectralPair& lambda, const ChebyshevScheme* scheme,
                         int maxdeg, double xi_scale, Exec exec = Exec::parallel);

// x_beta = -alpha Delta^{-1} (x * r(x))_beta in floating point at the table midpoints.
TaylorSeq2 recurse_coeffs(const ProblemData& p, int N);
// The same recursion carried out in interval arithmetic.
TaylorSeq2 recurse_coeffs_enclosure(const ProblemData& p, int N);

TaylorSeq2 eval_F(const ProblemData& p, const TaylorSeq2& x, int out_trunc, Exec exec = Exec::parallel);

// pi_N DF(x) pi_N, rows and columns in degree order.
CMatrix assemble_df_block(const ProblemData& p, const TaylorSeq2& xhat, int N, Exec exec = Exec::parallel);

struct ApproxSolution {
    TaylorSeq2 xhat;
    int N = 0;
    CMatrix df_block;       // interval enclosure of pi_N DF(xhat) pi_N
    Eigen::MatrixXcd adag;  // its floating midpoint
    Eigen::MatrixXcd abar;  // floating inverse of adag
};

ApproxSolution make_approx_solution(const ProblemData& p, const TaylorSeq2& xhat, int N, Exec exec = Exec::parallel);

// Sum x_beta exp(<lambda,beta> theta) sigma^beta
std::complex<double> eval_manifold_dde(const ProblemData& p, const TaylorSeq2& x, std::complex<double> s1,
                                       std::complex<double> s2, double theta);
// Sum x_beta (1, (D - <lambda_n,beta> I)^{-1} D1) sigma^beta
Eigen::VectorXcd eval_manifold_psa(const ProblemData& p, const ChebyshevScheme& s, const TaylorSeq2& x,
                                   std::complex<double> s1, std::complex<double> s2);

// Direct solution of (<lambda_n,beta> I - A_n) P_beta = (H_beta, 0) for |beta| <= maxdeg,
// with H = -alpha (P_n * P_0). Entry i is the (n+1)-vector for tri_multi(i).
std::vector<CVector> vector_homological_oracle(const ChebyshevScheme& s, const ProblemData& p, int maxdeg);

}  // namespace wright
