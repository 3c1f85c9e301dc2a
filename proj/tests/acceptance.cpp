// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <string>

#include "mpfr_oracle.hpp"
#include "wright/bounds.hpp"
#include "wright/manifold.hpp"

using namespace wright;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

const RealInterval kAlpha(2.0);

// reference enclosures and results
const ComplexRect kRefDde(RealInterval(0.172816002840000, 0.172816002840000),
                            RealInterval(1.673686413740842, 1.673686413740843));
const ComplexRect kRefPsa(RealInterval(0.172816002828147, 0.172816002828167),
                            RealInterval(1.673686413740504, 1.673686413740524));
constexpr double kRefRpsa = 1.110565565384011e-13;
constexpr double kRefRdde = 1.956701163090857e-9;
constexpr double kRefTotal = 1.956812219647396e-9;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

// Runs a criterion body, turning any exception into a FAIL line.
void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        auto [ok, detail] = body();
        report(id, ok, detail);
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

fs::path work_dir() {
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / ("wright_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return d;
}

// runs the CLI, returns (exit status, seconds)
std::pair<int, double> cli(const std::string& args) {
    std::string cmd = std::string(WRIGHT_CLI_PATH) + " " + args + " >" + (work_dir() / "out.txt").string() + " 2>&1";
    auto t0 = Clock::now();
    int rc = std::system(cmd.c_str());
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, secs};
}

nlohmann::json load(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    return nlohmann::json::parse(in);
}

double num(const nlohmann::json& j) { return j.is_string() ? std::stod(j.get<std::string>()) : j.get<double>(); }

ComplexRect rect(const nlohmann::json& j) {
    return {RealInterval(num(j["re"][0]), num(j["re"][1])), RealInterval(num(j["im"][0]), num(j["im"][1]))};
}

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::pair<bool, std::string> dde_eigenvalue() {
    const fs::path out = work_dir() / "eigs.json";
    auto [rc, secs] = cli("eigs --alpha 2 --n 0 --out " + out.string());
    if (rc != 0) return {false, "eigs exited with " + std::to_string(rc)};
    ComplexRect lp = rect(load(out)["lambda_dde"]["plus"]);
    double w = std::max(lp.re.width(), lp.im.width());
    bool ok = w <= 1e-11 && overlaps(lp, kRefDde) && secs < 1.0;
    return {ok, fmt("width %.3g", w) + fmt(", intersects reference box, %.3f s", secs)};
}

std::pair<bool, std::string> psa_census() {
    auto t0 = Clock::now();
    ChebyshevScheme s = build_scheme(10, kAlpha);
    CensusResult c = census_psa_report(s);
    double secs = elapsed(t0);
    bool disjoint = true;
    for (std::size_t i = 0; i < c.all.size(); ++i)
        for (std::size_t j = i + 1; j < c.all.size(); ++j) disjoint = disjoint && !overlaps(c.all[i].enclosure, c.all[j].enclosure);
    int rhp = 0;
    for (const auto& r : c.all) rhp += r.enclosure.re.lo > 0;
    bool hit = c.unstable && overlaps(c.unstable->plus.enclosure, kRefPsa);
    bool ok = c.all.size() == 11 && disjoint && rhp == 2 && c.unstable_count == 2 && hit && secs < 5.0;
    return {ok, std::to_string(c.all.size()) + " zeros, " + std::to_string(rhp) + " unstable, disjoint=" +
                    (disjoint ? "yes" : "no") + ", intersects reference box=" + (hit ? "yes" : "no") +
                    fmt(", %.2f s", secs)};
}

nlohmann::json distance_cert;

std::pair<bool, std::string> distance() {
    const fs::path out = work_dir() / "distance.json";
    auto [rc, secs] = cli("validate distance --alpha 2 --n 10 --trunc 25 --tail-m 1000 --out " + out.string());
    distance_cert = load(out);
    if (rc != 0) return {false, "validate distance exited with " + std::to_string(rc)};
    double rp = num(distance_cert["r_psa"]);
    double rd = num(distance_cert["r_dde"]);
    double tot = num(distance_cert["total_bound"]);
    bool ok = distance_cert["certified"] == true && rp <= 1e-12 && rd <= 1e-8 && tot <= 1e-8 && secs < 300;
    std::string d = fmt("r_psa %.4g", rp) + fmt(" (ref %.4g)", kRefRpsa) + fmt(", r_dde %.4g", rd) +
                    fmt(" (ref %.4g)", kRefRdde) + fmt(", total %.4g", tot) + fmt(" (ref %.4g)", kRefTotal) +
                    fmt(", %.1f s", secs);
    return {ok, d};
}

std::pair<bool, std::string> scalar_reduction() {
    int checked = 0, bad = 0;
    for (int n : {2, 3, 5}) {
        ChebyshevScheme s = build_scheme(n, kAlpha);
        ProblemData p = make_problem(Kind::psa, kAlpha, *census_psa(s).unstable, &s, 6, 0.15);
        TaylorSeq2 x = recurse_coeffs_enclosure(p, 6);
        std::vector<CVector> P = vector_homological_oracle(s, p, 6);
        for (std::size_t i = 0; i < x.size(); ++i) {
            MultiIndex b = tri_multi(i);
            CVector v = b.degree() == 0 ? CVector(n, ComplexRect(1.0)) : blowup_vector(s, p.z_at(b.b1, b.b2));
            bad += !overlaps(P[i][0], x[i]);
            ++checked;
            for (int k = 0; k < n; ++k) {
                bad += !overlaps(P[i][static_cast<std::size_t>(k + 1)], x[i] * v[static_cast<std::size_t>(k)]);
                ++checked;
            }
        }
    }
    return {bad == 0, std::to_string(checked) + " components, " + std::to_string(bad) + " without overlap"};
}

std::pair<bool, std::string> tail_soundness() {
    const auto& t = distance_cert.at("tail");
    const double res_tail = num(t["resolvent_tail"]);
    const double res_sharp = num(t["resolvent_tail_sharp"]);
    const double delta_tail = num(t["delta_tail"]);
    const int M = t["M"].get<int>();
    ChebyshevScheme s = build_scheme(10, kAlpha);
    SpectralPair ln = *census_psa(s).unstable;
    SpectralPair ld = find_dde_pair(kAlpha);
    const int N = 25;
    const double dde_den = dde_tail_denominator(ld.plus.enclosure.re, kAlpha, N);
    std::mt19937_64 g(5);
    int bad = 0;
    double worst_res = 0, worst_delta = 0, worst_dde = 0;
    for (int k = 0; k < 20; ++k) {
        int deg = std::uniform_int_distribution<int>(M, 3 * M)(g);
        int b1 = std::uniform_int_distribution<int>(0, deg)(g);
        ComplexRect z = lambda_dot(ln.plus.enclosure, ln.minus.enclosure, b1, deg - b1);
        double vn = mag_upper(blowup_vector(s, z).back());
        double di = 1.0 / mag_lower(delta_n(s, z));
        bad += !(vn <= res_tail) + !(vn <= res_sharp) + !(di <= delta_tail);
        worst_res = std::max(worst_res, vn / res_sharp);
        worst_delta = std::max(worst_delta, di / delta_tail);
    }
    for (int k = 0; k < 20; ++k) {
        int deg = std::uniform_int_distribution<int>(N + 1, 40 * N)(g);
        int b1 = std::uniform_int_distribution<int>(0, deg)(g);
        ComplexRect z = lambda_dot(ld.plus.enclosure, ld.minus.enclosure, b1, deg - b1);
        double di = 1.0 / mag_lower(dde_delta(kAlpha, z));
        bad += !(dde_den > 0 && di <= 1.0 / dde_den);
        worst_dde = std::max(worst_dde, di * dde_den);
    }
    return {bad == 0, std::to_string(bad) + " violations; worst ratios resolvent " + fmt("%.3f", worst_res) +
                          fmt(", Delta_n %.3f", worst_delta) + fmt(", Delta %.3f", worst_dde)};
}

std::pair<bool, std::string> interval_soundness() {
    using oracle::Mp;
    constexpr int kTrials = 10000;
    std::mt19937_64 g(20261016);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const char* names[] = {"add", "sub", "mul", "div", "sqrt", "exp", "sin", "cos", "cmul", "cdiv", "cexp"};
    int bad[11] = {};
    for (int t = 0; t < kTrials; ++t) {
        RealInterval a = oracle::random_interval(g), b = oracle::random_interval(g);
        double x = oracle::sample(g, a), y = oracle::sample(g, b);
        Mp mx(x), my(y), r;
        mpfr_add(r.v, mx.v, my.v, MPFR_RNDN);
        bad[0] += !oracle::inside(a + b, r.v);
        mpfr_sub(r.v, mx.v, my.v, MPFR_RNDN);
        bad[1] += !oracle::inside(a - b, r.v);
        mpfr_mul(r.v, mx.v, my.v, MPFR_RNDN);
        bad[2] += !oracle::inside(a * b, r.v);
        mpfr_div(r.v, mx.v, my.v, MPFR_RNDN);
        bad[3] += !oracle::inside(a / b, r.v);
        RealInterval aa = abs(a);
        Mp ax(std::fabs(x));
        mpfr_sqrt(r.v, ax.v, MPFR_RNDN);
        bad[4] += !oracle::inside(sqrt(aa), r.v);

        double w = u(g);
        double w2 = w + std::fabs(u(g)) * std::ldexp(1.0, -std::uniform_int_distribution<int>(0, 40)(g));
        RealInterval W(w, w2);
        double p = oracle::sample(g, W);
        Mp mp(p);
        mpfr_exp(r.v, mp.v, MPFR_RNDN);
        bad[5] += !oracle::inside(exp(W), r.v);
        mpfr_sin(r.v, mp.v, MPFR_RNDN);
        bad[6] += !oracle::inside(sin(W), r.v);
        mpfr_cos(r.v, mp.v, MPFR_RNDN);
        bad[7] += !oracle::inside(cos(W), r.v);

        ComplexRect A(oracle::random_interval(g, -8, 3), oracle::random_interval(g, -8, 3));
        ComplexRect B(oracle::random_interval(g, -8, 3), oracle::random_interval(g, -8, 3));
        double ar = oracle::sample(g, A.re), ai = oracle::sample(g, A.im);
        double br = oracle::sample(g, B.re), bi = oracle::sample(g, B.im);
        Mp ma(ar), mb(ai), mc(br), md(bi), t1, t2, re, im, den;
        mpfr_mul(t1.v, ma.v, mc.v, MPFR_RNDN);
        mpfr_mul(t2.v, mb.v, md.v, MPFR_RNDN);
        mpfr_sub(re.v, t1.v, t2.v, MPFR_RNDN);
        mpfr_mul(t1.v, ma.v, md.v, MPFR_RNDN);
        mpfr_mul(t2.v, mb.v, mc.v, MPFR_RNDN);
        mpfr_add(im.v, t1.v, t2.v, MPFR_RNDN);
        ComplexRect P = A * B;
        bad[8] += !(oracle::inside(P.re, re.v) && oracle::inside(P.im, im.v));
        if (mag_lower(B) > 0) {
            mpfr_sqr(t1.v, mc.v, MPFR_RNDN);
            mpfr_sqr(t2.v, md.v, MPFR_RNDN);
            mpfr_add(den.v, t1.v, t2.v, MPFR_RNDN);
            mpfr_mul(t1.v, ma.v, mc.v, MPFR_RNDN);
            mpfr_mul(t2.v, mb.v, md.v, MPFR_RNDN);
            mpfr_add(re.v, t1.v, t2.v, MPFR_RNDN);
            mpfr_div(re.v, re.v, den.v, MPFR_RNDN);
            mpfr_mul(t1.v, mb.v, mc.v, MPFR_RNDN);
            mpfr_mul(t2.v, ma.v, md.v, MPFR_RNDN);
            mpfr_sub(im.v, t1.v, t2.v, MPFR_RNDN);
            mpfr_div(im.v, im.v, den.v, MPFR_RNDN);
            ComplexRect Q = A / B;
            bad[9] += !(oracle::inside(Q.re, re.v) && oracle::inside(Q.im, im.v));
        }
        mpfr_exp(t1.v, ma.v, MPFR_RNDN);
        mpfr_cos(t2.v, mb.v, MPFR_RNDN);
        mpfr_mul(re.v, t1.v, t2.v, MPFR_RNDN);
        mpfr_sin(t2.v, mb.v, MPFR_RNDN);
        mpfr_mul(im.v, t1.v, t2.v, MPFR_RNDN);
        ComplexRect E = exp(A);
        bad[10] += !(oracle::inside(E.re, re.v) && oracle::inside(E.im, im.v));
    }
    int total = 0;
    std::string d = "10000 trials per family, violations:";
    for (int i = 0; i < 11; ++i) {
        total += bad[i];
        d += std::string(" ") + names[i] + "=" + std::to_string(bad[i]);
    }
    return {total == 0, d};
}

TaylorSeq2 random_seq(std::mt19937_64& g, int trunc) {
    std::normal_distribution<double> nd;
    TaylorSeq2 x(trunc);
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = std::ldexp(1.0, -std::uniform_int_distribution<int>(0, 20)(g));
        x[i] = ComplexRect(std::complex<double>(s * nd(g), s * nd(g)));
    }
    return x;
}

std::pair<bool, std::string> banach_algebra() {
    std::mt19937_64 g(23);
    int bad_alg = 0, bad_proj = 0;
    for (int t = 0; t < 1000; ++t) {
        int tx = std::uniform_int_distribution<int>(0, 12)(g);
        int ty = std::uniform_int_distribution<int>(0, 12)(g);
        TaylorSeq2 x = random_seq(g, tx), y = random_seq(g, ty);
        TaylorSeq2 c = conv(x, y, tx + ty);
        bad_alg += !(ell1_norm(c).lo <= rnd::mul_up(ell1_norm(x).hi, ell1_norm(y).hi));
        int N = std::uniform_int_distribution<int>(0, tx + 1)(g);
        TaylorSeq2 sum = project(x, N, Part::head) + project(x, N, Part::tail);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const ComplexRect& a = sum[i];
            const ComplexRect& b = x[i];
            bad_proj += !(a.re.lo == b.re.lo && a.re.hi == b.re.hi && a.im.lo == b.im.lo && a.im.hi == b.im.hi);
        }
    }
    return {bad_alg + bad_proj == 0, "1000 random pairs: " + std::to_string(bad_alg) + " norm violations, " +
                                         std::to_string(bad_proj) + " projection mismatches"};
}

std::pair<bool, std::string> derivative() {
    const int N = 10;
    const double h = 1e-7;
    ChebyshevScheme s = build_scheme(10, kAlpha);
    SpectralPair ln = *census_psa(s).unstable;
    SpectralPair ld = find_dde_pair(kAlpha);
    ProblemData pp = make_problem(Kind::psa, kAlpha, ln, &s, 2 * N, 0.15);
    ProblemData pd = make_problem(Kind::dde, kAlpha, ld, nullptr, 2 * N, 0.15);
    TaylorSeq2 xhat = recurse_coeffs(pp, N);
    double worst = 0;
    for (const ProblemData* p : {&pp, &pd}) {
        Eigen::MatrixXcd d = midpoint(assemble_df_block(*p, xhat, N));
        std::vector<std::complex<double>> base = midpoints(xhat);
        std::vector<std::complex<double>> f0 = midpoints(eval_F(*p, xhat, N));
        for (std::size_t c = 0; c < base.size(); ++c) {
            std::vector<std::complex<double>> v = base;
            v[c] += h;
            std::vector<std::complex<double>> f1 = midpoints(eval_F(*p, from_points(v, N), N));
            Eigen::VectorXcd fd(static_cast<Eigen::Index>(base.size()));
            for (std::size_t r = 0; r < base.size(); ++r) fd(static_cast<Eigen::Index>(r)) = (f1[r] - f0[r]) / h;
            Eigen::VectorXcd col = d.col(static_cast<Eigen::Index>(c));
            worst = std::max(worst, (fd - col).lpNorm<1>() / col.lpNorm<1>());
        }
    }
    return {worst <= 1e-5, fmt("worst relative column error %.3g over both kinds", worst)};
}

std::pair<bool, std::string> radii_truths() {
    BoundSet q{Kind::psa, 0.1, 0.2, 0.2, 0.5};
    double r = radii_root(q);
    BoundSet lin{Kind::psa, 0.1, 0.2, 0.2, 0.0};
    double rl = radii_root(lin);
    CFun g = [](const ComplexRect& z) { return sqr(z) - ComplexRect(1.0); };
    CFun g1 = [](const ComplexRect& z) { return scale(z, RealInterval(2.0)); };
    CFun g2 = [](const ComplexRect&) { return ComplexRect(2.0); };
    RootCertificate c = nk_validate(g, g1, g2, {1.1, 0.0}, 0.2);
    bool ok = r >= 0.2 && r <= 0.2001 && radii_poly(q, r).hi < 0 && rl >= 1.0 / 6 && rl <= 0.1667 &&
              c.enclosure.contains(std::complex<double>(1.0, 0.0)) && c.r0 <= 0.1663 && c.r0 < 0.2;
    return {ok, fmt("quadratic r %.6g", r) + fmt(", linear r %.6g", rl) + fmt(", z^2-1 radius %.6g", c.r0)};
}

}  // namespace

int main() {
    criterion(1, dde_eigenvalue);
    criterion(2, psa_census);
    criterion(3, distance);
    criterion(4, scalar_reduction);
    criterion(5, tail_soundness);
    criterion(6, interval_soundness);
    criterion(7, banach_algebra);
    criterion(8, derivative);
    criterion(9, radii_truths);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
