#include <doctest.h>

#include <fstream>

#include "wright/manifold.hpp"

using namespace wright;

namespace {

const RealInterval kAlpha(2.0);

const ProblemData& dde_problem() {
    static const ProblemData p = make_problem(Kind::dde, kAlpha, find_dde_pair(kAlpha), nullptr, 50, 0.15);
    return p;
}

const ChebyshevScheme& scheme10() {
    static const ChebyshevScheme s = build_scheme(10, kAlpha);
    return s;
}

const ProblemData& psa_problem() {
    static const ProblemData p =
        make_problem(Kind::psa, kAlpha, *census_psa(scheme10()).unstable, &scheme10(), 50, 0.15);
    return p;
}

double ell1_mid(const TaylorSeq2& x) { return ell1_norm(x).hi; }

}  // namespace

TEST_CASE("first coefficients of the recursion") {
    for (const ProblemData* p : {&dde_problem(), &psa_problem()}) {
        TaylorSeq2 x = recurse_coeffs(*p, 25);
        CHECK(x.at(0, 0).mid() == std::complex<double>(0.0, 0.0));
        CHECK(x.at(1, 0).mid() == std::complex<double>(0.15, 0.0));
        CHECK(x.at(0, 1).mid() == std::complex<double>(0.15, 0.0));
        // swapping beta1 and beta2 conjugates
        for (int b1 = 0; b1 <= 25; ++b1)
            for (int b2 = 0; b1 + b2 <= 25; ++b2) {
                std::complex<double> u = x.at(b1, b2).mid();
                std::complex<double> v = x.at(b2, b1).mid();
                CHECK(std::abs(u - std::conj(v)) <= 1e-15 * (1.0 + std::abs(u)));
            }
    }
}

TEST_CASE("x_(1,1) for the DDE against a high-precision value") {
    TaylorSeq2 x = recurse_coeffs(dde_problem(), 4);
    std::complex<double> x11 = x.at(1, 1).mid();
    CHECK(x11.real() == doctest::Approx(0.004415636025859933924).epsilon(1e-13));
    CHECK(std::abs(x11.imag()) <= 1e-17);
    TaylorSeq2 e = recurse_coeffs_enclosure(dde_problem(), 4);
    CHECK(e.at(1, 1).contains(std::complex<double>(0.004415636025859933924, 0.0)));
}

TEST_CASE("interval recursion encloses the floating one") {
    TaylorSeq2 x = recurse_coeffs(psa_problem(), 25);
    TaylorSeq2 e = recurse_coeffs_enclosure(psa_problem(), 25);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::complex<double> xm = x[i].mid();
        double w = std::max(e[i].re.width(), e[i].im.width());
        CHECK(std::abs(e[i].mid() - xm) <= 1e-13 * std::abs(xm) + w + 1e-300);
    }
}

TEST_CASE("F at the recursion output is tiny") {
    for (const ProblemData* p : {&dde_problem(), &psa_problem()}) {
        TaylorSeq2 x = recurse_coeffs(*p, 25);
        CHECK(ell1_mid(eval_F(*p, x, 25)) <= 1e-12);
    }
}

TEST_CASE("F at zero") {
    TaylorSeq2 z(10);
    TaylorSeq2 f = eval_F(psa_problem(), z, 10);
    CHECK(f.at(1, 0).contains(std::complex<double>(-0.15, 0.0)));
    CHECK(f.at(0, 1).contains(std::complex<double>(-0.15, 0.0)));
    for (std::size_t i = 0; i < f.size(); ++i)
        if (tri_multi(i).degree() != 1) CHECK(f[i].contains(std::complex<double>(0.0, 0.0)));
    CHECK_THROWS_AS(eval_F(psa_problem(), z, 21), Error);
}

TEST_CASE("DF block structure") {
    const ProblemData& p = psa_problem();
    const int N = 12;
    TaylorSeq2 zero(N);
    CMatrix d0 = assemble_df_block(p, zero, N);
    for (std::size_t r = 0; r < d0.rows(); ++r)
        for (std::size_t c = 0; c < d0.cols(); ++c) {
            if (r != c) {
                CHECK(d0(r, c).contains(std::complex<double>(0.0, 0.0)));
                continue;
            }
            MultiIndex b = tri_multi(r);
            ComplexRect want = b.degree() <= 1 ? ComplexRect(1.0) : p.delta[r];
            CHECK(overlaps(d0(r, c), want));
        }
    TaylorSeq2 x = recurse_coeffs(p, N);
    CMatrix d = assemble_df_block(p, x, N);
    // lower triangular in degree order
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = r + 1; c < d.cols(); ++c) {
            CHECK(d(r, c).is_point());
            CHECK(d(r, c).mid() == std::complex<double>(0.0, 0.0));
        }
}

TEST_CASE("DF block against finite differences") {
    const ProblemData& p = psa_problem();
    const int N = 8;
    TaylorSeq2 x = recurse_coeffs(p, N);
    Eigen::MatrixXcd d = midpoint(assemble_df_block(p, x, N));
    const double h = 1e-7;
    std::vector<std::complex<double>> base = midpoints(x);
    auto fmid = [&](const std::vector<std::complex<double>>& v) {
        return midpoints(eval_F(p, from_points(v, N), N));
    };
    std::vector<std::complex<double>> f0 = fmid(base);
    for (std::size_t c = 0; c < base.size(); ++c) {
        std::vector<std::complex<double>> v = base;
        v[c] += h;
        std::vector<std::complex<double>> f1 = fmid(v);
        for (std::size_t r = 0; r < base.size(); ++r) {
            std::complex<double> fd = (f1[r] - f0[r]) / h;
            CHECK(std::abs(fd - d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) <= 1e-5);
        }
    }
}

TEST_CASE("Euler identity for the quadratic part") {
    // F is affine plus a quadratic, so DF(x) x = 2 F(x) - (affine part) on degree >= 2
    const ProblemData& p = dde_problem();
    const int N = 10;
    TaylorSeq2 x = recurse_coeffs(p, N);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = ComplexRect(x[i].mid() * std::complex<double>(1.3, -0.2));
    Eigen::MatrixXcd d = midpoint(assemble_df_block(p, x, N));
    std::vector<std::complex<double>> xv = midpoints(x);
    Eigen::VectorXcd xe = Eigen::Map<Eigen::VectorXcd>(xv.data(), static_cast<Eigen::Index>(xv.size()));
    Eigen::VectorXcd dx = d * xe;
    std::vector<std::complex<double>> f = midpoints(eval_F(p, x, N));
    for (std::size_t i = 0; i < xv.size(); ++i) {
        if (tri_multi(i).degree() < 2) continue;
        std::complex<double> want = 2.0 * f[i] - p.delta[i].mid() * xv[i];
        CHECK(std::abs(dx(static_cast<Eigen::Index>(i)) - want) <= 1e-14);
    }
}

TEST_CASE("serial and parallel DF blocks agree") {
    const ProblemData& p = psa_problem();
    TaylorSeq2 x = recurse_coeffs(p, 15);
    CMatrix a = assemble_df_block(p, x, 15, Exec::serial);
    CMatrix b = assemble_df_block(p, x, 15, Exec::parallel);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            CHECK(a(r, c).re.lo == b(r, c).re.lo);
            CHECK(a(r, c).re.hi == b(r, c).re.hi);
            CHECK(a(r, c).im.lo == b(r, c).im.lo);
            CHECK(a(r, c).im.hi == b(r, c).im.hi);
        }
}

TEST_CASE("manifold evaluation") {
    const ProblemData& p = psa_problem();
    TaylorSeq2 x = recurse_coeffs(p, 25);
    Eigen::VectorXcd z = eval_manifold_psa(p, scheme10(), x, 0.0, 0.0);
    CHECK(z.norm() == 0.0);
    for (double t : {0.3, 1.0, 2.0}) {
        std::complex<double> s(t * std::cos(0.7), t * std::sin(0.7));
        Eigen::VectorXcd v = eval_manifold_psa(p, scheme10(), x, s, std::conj(s));
        CHECK(v.imag().cwiseAbs().maxCoeff() <= 1e-10);
        std::complex<double> w = eval_manifold_dde(dde_problem(), recurse_coeffs(dde_problem(), 25), s, std::conj(s), -0.5);
        CHECK(std::abs(w.imag()) <= 1e-10);
    }
}

TEST_CASE("scalar recursion matches the vector homological equation") {
    for (int n : {2, 3, 5}) {
        ChebyshevScheme s = build_scheme(n, kAlpha);
        ProblemData p = make_problem(Kind::psa, kAlpha, *census_psa(s).unstable, &s, 6, 0.15);
        TaylorSeq2 e = recurse_coeffs_enclosure(p, 6);
        std::vector<CVector> P = vector_homological_oracle(s, p, 6);
        for (std::size_t i = 0; i < e.size(); ++i) {
            CHECK(overlaps(P[i][0], e[i]));
            // the last component is the multiplier times the first
            CHECK(overlaps(P[i][static_cast<std::size_t>(n)], p.mult.values[i] * e[i]));
        }
    }
}

TEST_CASE("resonant index is reported") {
    ProblemData p = psa_problem();
    p.delta[tri_index(2, 1)] = ComplexRect(RealInterval(-1e-3, 1e-3), RealInterval(-1e-3, 1e-3));
    try {
        recurse_coeffs(p, 5);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ResonantIndex);
        CHECK(std::string(e.what()).find("(2,1)") != std::string::npos);
    }
}

TEST_CASE("golden coefficients at alpha = 2, n = 10, N = 25") {
    std::ifstream in(std::string(WRIGHT_DATA_DIR) + "/xhat_alpha2_n10_N25.csv");
    REQUIRE(in.good());
    TaylorSeq2 g = read_csv(in);
    REQUIRE(g.size() == 351);
    TaylorSeq2 x = recurse_coeffs(psa_problem(), 25);
    for (std::size_t i = 0; i < x.size(); ++i) {
        CHECK(g[i].re.lo == x[i].re.lo);
        CHECK(g[i].im.lo == x[i].im.lo);
    }
}
