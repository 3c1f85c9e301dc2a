#include "wright/bounds.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

namespace wright {

using namespace rnd;

double TailData::max_delta_inv(int from_exclusive, int to_inclusive) const {
    double m = 0.0;
    const int last = std::min(to_inclusive, static_cast<int>(delta_inv_max_by_degree.size()) - 1);
    for (int s = std::max(from_exclusive + 1, 0); s <= last; ++s) m = std::max(m, delta_inv_max_by_degree[s]);
    return m;
}

double default_epsilon(double re_lo, double normD, int M) {
    double gap = sub_down(mul_down(re_lo, static_cast<double>(M)), normD);
    return mul_down(gap, 1.0 - 0x1p-30);
}

namespace {

struct DegreeResult {
    double mult_max = 0.0;
    double delta_inv_max = 0.0;
    long solves = 0;
};

std::string beta_str(int s, int d) {
    return "beta=(" + std::to_string((s + d) / 2) + "," + std::to_string((s - d) / 2) + ")";
}

// All beta of total degree s. Only b1 >= b2 (d >= 0) is visited: the other half
// are conjugate values with identical magnitudes.
DegreeResult sweep_degree(const ChebyshevScheme& sch, const RealInterval& re, const RealInterval& im, double alpha_hi,
                          const RealInterval& alpha, double normD, double normD1, double cut, int s) {
    DegreeResult r;
    for (int d = s % 2; d <= s; d += 2) {
        ComplexRect z(scale(re, static_cast<double>(s)), scale(im, static_cast<double>(d)));
        const double zl = mag_lower(z);
        if (zl > cut) {
            // Neumann region; the bound only improves for larger d.
            double vb = div_up(normD1, sub_down(zl, normD));
            r.mult_max = std::max(r.mult_max, vb);
            if (s >= 2) {
                double den = sub_down(zl, mul_up(alpha_hi, vb));
                if (!(den > 0)) throw Error(Errc::ThresholdViolated, "Neumann bound on Delta_n fails at " + beta_str(s, d));
                r.delta_inv_max = std::max(r.delta_inv_max, div_up(1.0, den));
            }
            break;
        }
        CVector v;
        try {
            v = blowup_vector(sch, z);
        } catch (const Error& e) {
            throw Error(Errc::NotVerifiablyInvertible, beta_str(s, d) + ": " + e.detail());
        }
        ++r.solves;
        const ComplexRect& vn = v.back();
        r.mult_max = std::max(r.mult_max, mag_upper(vn));
        if (s >= 2) {
            double ml = mag_lower(z + scale(vn, alpha));
            if (!(ml > 0)) throw Error(Errc::ResonantIndex, "Delta_n may vanish at " + beta_str(s, d));
            r.delta_inv_max = std::max(r.delta_inv_max, div_up(1.0, ml));
        }
    }
    return r;
}

}  // namespace

TailData invertibility_sweep(const ChebyshevScheme& s, const SpectralPair& lambda_n, int M,
                             std::optional<double> epsilon, Exec exec) {
    if (M < 2) throw Error(Errc::InvalidConfig, "tail threshold M must be >= 2");
    TailData t;
    t.M = M;
    t.normD = one_norm_upper(s.D);
    t.norm1 = static_cast<double>(s.n);
    t.normD1 = one_norm_upper(s.D1);
    t.re_lambda = lambda_n.plus.enclosure.re;
    t.alpha_hi = s.alpha.hi;
    const RealInterval re = lambda_n.plus.enclosure.re;
    const RealInterval im = lambda_n.plus.enclosure.im;
    if (!(re.lo > 0)) throw Error(Errc::ThresholdViolated, "Re(lambda_n) is not certified positive");

    t.epsilon = epsilon.value_or(default_epsilon(re.lo, t.normD, M));
    if (!(t.epsilon > 0)) throw Error(Errc::ThresholdViolated, "epsilon must be positive");
    const double Md = static_cast<double>(M);
    const bool first = mul_down(re.lo, Md) > add_up(t.normD, t.epsilon);
    const double den = mul_down(re.lo, t.epsilon);
    const bool second_norm = Md > div_up(mul_up(t.alpha_hi, mul_up(t.normD, t.norm1)), den);
    const bool second_sharp = Md > div_up(mul_up(t.alpha_hi, t.normD1), den);
    t.threshold_norm = first && second_norm;
    t.threshold_sharp = first && second_sharp;
    if (!t.threshold_norm)
        throw Error(Errc::ThresholdViolated, "M = " + std::to_string(M) + " violates the tail threshold inequalities");

    t.resolvent_tail = div_up(mul_up(t.normD, t.norm1), t.epsilon);
    t.resolvent_tail_sharp = div_up(t.normD1, t.epsilon);
    const double dt = sub_down(mul_down(re.lo, Md), mul_up(t.alpha_hi, t.resolvent_tail_sharp));
    if (!(dt > 0)) throw Error(Errc::ThresholdViolated, "Delta_n tail denominator is not positive");
    t.delta_tail = div_up(1.0, dt);

    const double cut = add_up(t.normD, t.epsilon);
    std::vector<DegreeResult> res(static_cast<std::size_t>(M) + 1);
    auto run = [&](int deg) {
        res[static_cast<std::size_t>(deg)] = sweep_degree(s, re, im, t.alpha_hi, s.alpha, t.normD, t.normD1, cut, deg);
    };
    if (exec == Exec::serial) {
        for (int deg = 0; deg <= M; ++deg) run(deg);
    } else {
        std::optional<Error> failure;
        int failed_at = M + 1;
#pragma omp parallel for schedule(dynamic, 1)
        for (int deg = 0; deg <= M; ++deg) {
            try {
                run(deg);
            } catch (const Error& e) {
#pragma omp critical(wright_sweep_failure)
                if (deg < failed_at) {
                    failed_at = deg;
                    failure = e;
                }
            }
        }
        if (failure) throw *failure;
    }
    t.mult_max_by_degree.resize(res.size());
    t.delta_inv_max_by_degree.resize(res.size());
    for (std::size_t k = 0; k < res.size(); ++k) {
        t.mult_max_by_degree[k] = res[k].mult_max;
        t.delta_inv_max_by_degree[k] = res[k].delta_inv_max;
        t.finite_max = std::max(t.finite_max, res[k].mult_max);
        t.explicit_solves += res[k].solves;
    }
    return t;
}

double dde_tail_denominator(const RealInterval& re_lambda, const RealInterval& alpha, int M) {
    const double x = mul_down(re_lambda.lo, static_cast<double>(M));
    const double e = exp(RealInterval(-x)).hi;
    return sub_down(x, mul_up(alpha.hi, e));
}

double y0_bound(const ProblemData& p, const ApproxSolution& sol, Exec exec) {
    const int N = sol.N;
    if (p.maxdeg < 2 * N) throw Error(Errc::InvalidConfig, "Y0 needs Delta tables up to degree 2N");
    TaylorSeq2 f = eval_F(p, sol.xhat, 2 * N, exec);
    const std::size_t K = tri_size(N);
    CVector head(f.coeffs().begin(), f.coeffs().begin() + static_cast<std::ptrdiff_t>(K));
    double y = one_norm_upper(matvec_pi(sol.abar, head));
    for (std::size_t i = K; i < f.size(); ++i) {
        double ml = mag_lower(p.delta[i]);
        if (!(ml > 0)) {
            MultiIndex b = tri_multi(i);
            throw Error(Errc::ResonantIndex,
                        "Delta may vanish at beta=(" + std::to_string(b.b1) + "," + std::to_string(b.b2) + ")");
        }
        y = add_up(y, div_up(mag_upper(f[i]), ml));
    }
    return y;
}

double z0_bound(const ApproxSolution& sol, Exec exec) {
    CMatrix prod = matmul_pi(sol.abar, to_interval(sol.adag), exec);
    double best = 0.0;
    for (std::size_t j = 0; j < prod.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < prod.rows(); ++i)
            col = add_up(col, mag_upper(ComplexRect(i == j ? 1.0 : 0.0) - prod(i, j)));
        best = std::max(best, col);
    }
    return best;
}

double z1_finite(const ApproxSolution& sol, Exec exec) {
    const std::size_t K = sol.df_block.rows();
    CMatrix e(K, K);
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) {
            const auto a = sol.adag(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            const ComplexRect& d = sol.df_block(i, j);
            e(i, j) = (a == 0.0 && d.is_point() && d.re.lo == 0 && d.im.lo == 0) ? ComplexRect(0.0) : d - ComplexRect(a);
        }
    return one_norm_upper(matmul_pi(sol.abar, e, exec));
}

namespace {

const TailData& need_tail(const TailData* tail) {
    if (tail == nullptr) throw Error(Errc::InvalidConfig, "psa bounds need the sweep's tail data");
    return *tail;
}

double dde_den(const ProblemData& p, int N) {
    double den = dde_tail_denominator(p.lambda.plus.enclosure.re, p.alpha, N);
    if (!(den > 0)) throw Error(Errc::ThresholdViolated, "Re(lambda) N - alpha exp(-Re(lambda) N) is not positive");
    return den;
}

}  // namespace

double z1_bound(const ProblemData& p, const ApproxSolution& sol, const TailData* tail, Exec exec) {
    const double fin = z1_finite(sol, exec);
    const double a = p.alpha.hi;
    const double xnorm = ell1_norm(sol.xhat).hi;
    if (p.kind == Kind::dde) {
        const double den = dde_den(p, sol.N);
        return add_up(div_up(mul_up(2.0 * a, xnorm), den), fin);
    }
    const TailData& t = need_tail(tail);
    const double dinv = std::max(t.max_delta_inv(sol.N, t.M), t.delta_tail);
    const double mult = std::max(t.finite_max, t.resolvent_tail_sharp);
    const double rxnorm = ell1_norm(apply_multiplier(sol.xhat, p.mult)).hi;
    const double inner = add_up(rxnorm, mul_up(xnorm, mult));
    return add_up(fin, mul_up(mul_up(a, dinv), inner));
}

double z2_bound(const ProblemData& p, const ApproxSolution& sol, const TailData* tail) {
    const double a2 = 2.0 * p.alpha.hi;
    const double abar = one_norm_upper(sol.abar);
    if (p.kind == Kind::dde) {
        const double den = dde_den(p, sol.N);
        return mul_up(a2, std::max(abar, div_up(1.0, den)));
    }
    const TailData& t = need_tail(tail);
    const double first = std::max({t.max_delta_inv(sol.N, t.M), t.delta_tail, abar});
    const double mult = std::max(t.finite_max, t.resolvent_tail_sharp);
    return mul_up(mul_up(a2, first), mult);
}

BoundSet compute_bounds(const ProblemData& p, const ApproxSolution& sol, const TailData* tail, Exec exec) {
    BoundSet b;
    b.kind = p.kind;
    b.Y0 = y0_bound(p, sol, exec);
    b.Z0 = z0_bound(sol, exec);
    b.Z1 = z1_bound(p, sol, tail, exec);
    b.Z2 = z2_bound(p, sol, tail);
    return b;
}

RealInterval radii_poly(const BoundSet& b, double r) {
    RealInterval R(r);
    RealInterval lin = RealInterval(1.0) - RealInterval(b.Z0) - RealInterval(b.Z1);
    return RealInterval(b.Z2) * sqr(R) - lin * R + RealInterval(b.Y0);
}

double radii_root(const BoundSet& b) {
    for (double v : {b.Y0, b.Z0, b.Z1, b.Z2})
        if (!(v >= 0) || !std::isfinite(v)) throw Error(Errc::NoNegativePoint, "bounds must be finite and nonnegative");
    const double lin = sub_down(sub_down(1.0, b.Z0), b.Z1);
    if (!(lin > 0)) throw Error(Errc::NoNegativePoint, "Z0 + Z1 >= 1");
    double r;
    if (b.Z2 == 0) {
        r = b.Y0 / lin;
    } else {
        const double disc = lin * lin - 4.0 * b.Z2 * b.Y0;
        if (!(disc > 0)) throw Error(Errc::NoNegativePoint, "radii polynomial has no real root");
        r = 2.0 * b.Y0 / (lin + std::sqrt(disc));
    }
    r *= 1.0 + 0x1p-20;
    if (r == 0) r = DBL_MIN;
    if (!(radii_poly(b, r).hi < 0))
        throw Error(Errc::NoNegativePoint, "p(r) is not certified negative at the candidate radius");
    return r;
}

double distance_bound(double r_psa, double r_dde) { return add_up(r_psa, r_dde); }

double distance_bound(double r_psa, double r_dde, const std::string& hash_psa, const std::string& hash_dde) {
    if (hash_psa != hash_dde) throw Error(Errc::MismatchedGuess, "the two validations used different xhat");
    return distance_bound(r_psa, r_dde);
}

}  // namespace wright
