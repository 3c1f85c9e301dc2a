#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wright/cheb.hpp"
#include "wright/exec.hpp"
#include "wright/manifold.hpp"
#include "wright/roots.hpp"

namespace wright {

/// Result of the resolvent sweep over |beta| <= M plus the Neumann tail
/// constants that cover |beta| >= M. Vector and matrix norms are l1.
struct TailData {
    int M = 0;
    double epsilon = 0.0;
    double normD = 0.0;   // ||D||_1 upper bound
    double norm1 = 0.0;   // ||ones||_1 = n
    double normD1 = 0.0;  // ||D1||_1 upper bound
    RealInterval re_lambda;
    double alpha_hi = 0.0;
    // |((D - zI)^{-1} D1)_n| <= ||D|| ||1|| / eps for |beta| >= M
    double resolvent_tail = 0.0;
    // the sharper Neumann bound ||D1|| / eps
    double resolvent_tail_sharp = 0.0;
    // |Delta_n(<lambda_n,beta>)|^{-1} <= 1/(Re M - alpha ||D1||/eps) for |beta| >= M
    double delta_tail = 0.0;
    double finite_max = 0.0;
    std::vector<double> mult_max_by_degree;       // degree 0..M
    std::vector<double> delta_inv_max_by_degree;  // degree 0..M, zero below 2
    long explicit_solves = 0;
    bool threshold_norm = false;
    bool threshold_sharp = false;

    // max over from < s <= to of delta_inv_max_by_degree[s]
    double max_delta_inv(int from_exclusive, int to_inclusive) const;
};

// Default eps sits just below Re(lambda_n) M - ||D|| so that the strict
// inequality M > (||D|| + eps)/Re(lambda_n) holds.
double default_epsilon(double re_lo, double normD, int M);

TailData invertibility_sweep(const ChebyshevScheme& s, const SpectralPair& lambda_n, int M,
                             std::optional<double> epsilon = std::nullopt, Exec exec = Exec::parallel);

// Lower bound of Re(lambda) M - alpha exp(-Re(lambda) M); the DDE tail needs it positive.
double dde_tail_denominator(const RealInterval& re_lambda, const RealInterval& alpha, int M);

struct BoundSet {
    Kind kind = Kind::dde;
    double Y0 = 0.0;
    double Z0 = 0.0;
    double Z1 = 0.0;
    double Z2 = 0.0;
};

double y0_bound(const ProblemData& p, const ApproxSolution& sol, Exec exec = Exec::parallel);
double z0_bound(const ApproxSolution& sol, Exec exec = Exec::parallel);
// ||Abar (DF block - Adag)||_1, the finite part of Z1
double z1_finite(const ApproxSolution& sol, Exec exec = Exec::parallel);
// `tail` is required for psa and ignored for dde
double z1_bound(const ProblemData& p, const ApproxSolution& sol, const TailData* tail, Exec exec = Exec::parallel);
double z2_bound(const ProblemData& p, const ApproxSolution& sol, const TailData* tail);
BoundSet compute_bounds(const ProblemData& p, const ApproxSolution& sol, const TailData* tail,
                        Exec exec = Exec::parallel);

// Smallest certified r > 0 with Z2 r^2 - (1 - Z0 - Z1) r + Y0 < 0.
double radii_root(const BoundSet& b);
// Interval evaluation of the radii polynomial, for diagnostics and tests.
RealInterval radii_poly(const BoundSet& b, double r);

double distance_bound(double r_psa, double r_dde);
double distance_bound(double r_psa, double r_dde, const std::string& hash_psa, const std::string& hash_dde);

}  // namespace wright
