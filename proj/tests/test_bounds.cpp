#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "mpfr_oracle.hpp"
#include "wright/bounds.hpp"
#include "wright/certificate.hpp"

using namespace wright;

namespace {

const RealInterval kAlpha(2.0);

const ChebyshevScheme& scheme10() {
    static const ChebyshevScheme s = build_scheme(10, kAlpha);
    return s;
}

const SpectralPair& lambda10() {
    static const SpectralPair p = *census_psa(scheme10()).unstable;
    return p;
}

// smallest M near 800 that satisfies both threshold inequalities with the default epsilon
constexpr int kSmallM = 820;

const TailData& tail_small() {
    static const TailData t = invertibility_sweep(scheme10(), lambda10(), kSmallM, std::nullopt, Exec::parallel);
    return t;
}

}  // namespace

TEST_CASE("radii polynomial examples") {
    BoundSet b{Kind::psa, 0.1, 0.2, 0.2, 0.5};
    double r = radii_root(b);
    CHECK(r >= 0.2);
    CHECK(r <= 0.2 * (1 + 1e-5));
    CHECK(radii_poly(b, r).hi < 0);
    RealInterval p5 = radii_poly(b, 0.5);
    CHECK(p5.lo <= -0.075);
    CHECK(p5.hi >= -0.075);
    CHECK(p5.hi - p5.lo <= 1e-15);

    BoundSet lin{Kind::dde, 0.1, 0.2, 0.2, 0.0};
    CHECK(radii_root(lin) == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
    CHECK(radii_root(lin) >= 1.0 / 6.0);

    for (BoundSet bad : {BoundSet{Kind::psa, 0.1, 0.5, 0.6, 0.1}, BoundSet{Kind::psa, 1.0, 0.2, 0.2, 1.0},
                         BoundSet{Kind::psa, -1.0, 0.2, 0.2, 1.0}}) {
        try {
            radii_root(bad);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::NoNegativePoint);
        }
    }
}

TEST_CASE("distance bound") {
    CHECK(distance_bound(0.0, 0.0) == 0.0);
    CHECK(distance_bound(1e-13, 2e-9) <= 2.0001e-9);
    CHECK(distance_bound(1e-13, 2e-9) >= 2.0001e-9 - 1e-20);
    double t = distance_bound(1.110565565384011e-13, 1.956701163090857e-9);
    CHECK(t >= 1.956812219647396e-9 * (1 - 1e-15));
    CHECK(t <= 1.956812219647396e-9 * (1 + 1e-15));
    CHECK(distance_bound(1e-13, 2e-9, "ab", "ab") == distance_bound(1e-13, 2e-9));
    try {
        distance_bound(1e-13, 2e-9, "ab", "cd");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MismatchedGuess);
    }
}

TEST_CASE("default epsilon at M = 1000") {
    double normD = one_norm_upper(scheme10().D);
    CHECK(normD >= 121.5652889362472863);
    CHECK(normD <= 121.5652889362472863 * (1 + 1e-13));
    CHECK(one_norm_upper(scheme10().D1) == doctest::Approx(34.0).epsilon(1e-14));
    double eps = default_epsilon(lambda10().plus.enclosure.re.lo, normD, 1000);
    CHECK(eps == doctest::Approx(51.2507139).epsilon(1e-8));
    CHECK(lambda10().plus.enclosure.re.lo * 1000 > normD + eps);
}

TEST_CASE("threshold violation for small M") {
    try {
        invertibility_sweep(scheme10(), lambda10(), 100);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ThresholdViolated);
    }
    // a valid M with an epsilon too large for the first inequality
    try {
        invertibility_sweep(scheme10(), lambda10(), 1000, 60.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ThresholdViolated);
    }
}

TEST_CASE("sweep at a small admissible M") {
    const TailData& t = tail_small();
    CHECK(t.threshold_norm);
    CHECK(t.threshold_sharp);
    CHECK(t.resolvent_tail_sharp <= t.resolvent_tail);
    CHECK(t.mult_max_by_degree.size() == kSmallM + 1);
    CHECK(t.finite_max >= 1.0);
    CHECK(t.delta_tail > 0);
    // degree one is the eigenvalue itself, so Delta_n is not bounded away from zero there
    CHECK(t.delta_inv_max_by_degree[0] == 0.0);
    CHECK(t.delta_inv_max_by_degree[1] == 0.0);
    CHECK(t.max_delta_inv(1, kSmallM) > 0);
}

TEST_CASE("tail constant covers direct solves beyond M") {
    const TailData& t = tail_small();
    const auto& lp = lambda10().plus.enclosure;
    const auto& lm = lambda10().minus.enclosure;
    for (auto [b1, b2] : {std::pair{2 * kSmallM, 0}, std::pair{kSmallM, kSmallM}, std::pair{0, 2 * kSmallM},
                          std::pair{kSmallM + 1, 3}, std::pair{700, kSmallM}}) {
        CVector v = blowup_vector(scheme10(), lambda_dot(lp, lm, b1, b2));
        CHECK(mag_upper(v.back()) <= t.resolvent_tail_sharp);
        ComplexRect d = delta_n(scheme10(), lambda_dot(lp, lm, b1, b2));
        CHECK(1.0 / mag_lower(d) <= t.delta_tail);
    }
}

TEST_CASE("serial and parallel sweeps agree bitwise") {
    TailData s = invertibility_sweep(scheme10(), lambda10(), kSmallM, std::nullopt, Exec::serial);
    const TailData& p = tail_small();
    CHECK(s.explicit_solves == p.explicit_solves);
    CHECK(s.finite_max == p.finite_max);
    CHECK(s.mult_max_by_degree == p.mult_max_by_degree);
    CHECK(s.delta_inv_max_by_degree == p.delta_inv_max_by_degree);
}

TEST_CASE("DDE tail denominator") {
    SpectralPair d = find_dde_pair(kAlpha);
    double den = dde_tail_denominator(d.plus.enclosure.re, kAlpha, 25);
    CHECK(den <= 4.293810943582076);
    CHECK(den == doctest::Approx(4.293810943582076).epsilon(1e-12));
    CHECK(dde_tail_denominator(RealInterval(0.1), kAlpha, 1) < 0);
}

TEST_CASE("Z0 and Z1 in trivial cases") {
    ApproxSolution sol;
    sol.N = 2;
    sol.df_block = CMatrix::identity(6);
    sol.adag = Eigen::MatrixXcd::Identity(6, 6);
    sol.abar = Eigen::MatrixXcd::Identity(6, 6);
    CHECK(z0_bound(sol) == 0.0);
    CHECK(z1_finite(sol) == 0.0);
    sol.abar *= 0.5;
    CHECK(z0_bound(sol) == doctest::Approx(0.5));
    CHECK(z0_bound(sol) >= 0.5);
}

TEST_CASE("DDE bounds give a radius robust to a 10% larger Y0") {
    SpectralPair d = find_dde_pair(kAlpha);
    ProblemData pd = make_problem(Kind::dde, kAlpha, d, nullptr, 50, 0.15);
    ProblemData pp = make_problem(Kind::psa, kAlpha, lambda10(), &scheme10(), 50, 0.15);
    TaylorSeq2 xhat = recurse_coeffs(pp, 25);
    ApproxSolution sol = make_approx_solution(pd, xhat, 25);
    BoundSet b = compute_bounds(pd, sol, nullptr);
    CHECK(b.Y0 > 0);
    CHECK(b.Z0 < 1e-10);
    CHECK(b.Z0 + b.Z1 < 1);
    double r = radii_root(b);
    CHECK(r < 1e-7);
    BoundSet inflated = b;
    inflated.Y0 *= 1.1;
    double r2 = radii_root(inflated);
    CHECK(r2 > r);
    CHECK(r2 <= 1.11 * r);
    // serial and parallel give the same bounds
    BoundSet bs = compute_bounds(pd, sol, nullptr, Exec::serial);
    CHECK(bs.Y0 == b.Y0);
    CHECK(bs.Z0 == b.Z0);
    CHECK(bs.Z1 == b.Z1);
    CHECK(bs.Z2 == b.Z2);
}

TEST_CASE("directed decimal output") {
    std::mt19937_64 g(7);
    std::vector<double> xs{0.1, -0.1, 1.0, 1.956812219647396e-9, 1e-300, -3.5e200, 5e-324};
    for (int i = 0; i < 200; ++i) xs.push_back(oracle::wide(g, -300, 300));
    for (double x : xs) {
        std::string up = decimal_up(x);
        std::string dn = decimal_down(x);
        oracle::Mp u, d;
        // round the decimal strings toward x so the comparison stays rigorous
        mpfr_set_str(u.v, up.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(d.v, dn.c_str(), 10, MPFR_RNDU);
        CHECK(mpfr_cmp_d(u.v, x) >= 0);
        CHECK(mpfr_cmp_d(d.v, x) <= 0);
        // one unit in the 17th digit at most
        CHECK(std::fabs(std::strtod(up.c_str(), nullptr) - x) <= std::fabs(x) * 1e-15);
    }
    CHECK(decimal_up(0.1) == "1.0000000000000001e-01");
    CHECK(decimal_down(0.1) == "1.0000000000000000e-01");
    CHECK(decimal_up(0.0) == "0");
}

TEST_CASE("coefficient hash") {
    // sha256 of 48 zero bytes
    CHECK(xhat_sha256(TaylorSeq2(1)) == "17b0761f87b081d5cf10757ccc89f12be355c70e2e29df288b65b30710dcbcd1");
}
