#include "wright/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace wright {

using namespace rnd;

RootCertificate conj(const RootCertificate& c) {
    RootCertificate m = c;
    m.zhat = std::conj(c.zhat);
    m.enclosure = conj(c.enclosure);
    return m;
}

namespace {

// sup |g g'' / g'^2| over a k-by-k grid of cells covering the disk.
double z_bound(const CFun& g, const CFun& g1, const CFun& g2, std::complex<double> zhat, double rstar, int k) {
    double zmax = 0.0;
    auto edge = [&](double center, int i, bool lower) {
        double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(k);
        return lower ? add_down(center, mul_down(t, rstar)) : add_up(center, mul_up(t, rstar));
    };
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            ComplexRect cell(RealInterval(edge(zhat.real(), a, true), edge(zhat.real(), a + 1, false)),
                             RealInterval(edge(zhat.imag(), b, true), edge(zhat.imag(), b + 1, false)));
            if (k > 1 && mag_lower(cell - ComplexRect(zhat)) > rstar) continue;
            double gl = mag_lower(g1(cell));
            if (!(gl > 0)) throw Error(Errc::DerivativeVanishes, "g' may vanish on the validation disk");
            double num = mul_up(mag_upper(g(cell)), mag_upper(g2(cell)));
            zmax = std::max(zmax, div_up(num, mul_down(gl, gl)));
        }
    }
    return zmax;
}

}  // namespace

RootCertificate nk_validate(const CFun& g, const CFun& g1, const CFun& g2, std::complex<double> zhat, double rstar) {
    ComplexRect zp(zhat);
    ComplexRect gz = g(zp);
    ComplexRect gz1 = g1(zp);
    if (!(mag_lower(gz1) > 0)) throw Error(Errc::DerivativeVanishes, "g'(zhat) may vanish");
    double Y = mag_upper(gz / gz1);

    std::optional<Error> last;
    for (int k : {1, 4, 16}) {
        double Z = 0.0;
        try {
            Z = z_bound(g, g1, g2, zhat, rstar, k);
        } catch (const Error& e) {
            // a finer grid may still certify what one coarse rectangle cannot
            bool retry = e.code() == Errc::NotVerifiablyInvertible || e.code() == Errc::DerivativeVanishes ||
                         e.code() == Errc::DivisionByZeroInterval;
            if (!retry || k == 16) throw;
            last = e;
            continue;
        }
        if (!(Z < 1.0)) {
            last = Error(Errc::ContractionFailed, "Z = " + std::to_string(Z));
            continue;
        }
        double r0 = div_up(Y, sub_down(1.0, Z));
        if (!(r0 < rstar)) {
            last = Error(Errc::RadiusTooLarge, "r0 = " + std::to_string(r0) + " >= r* = " + std::to_string(rstar));
            continue;
        }
        RootCertificate c;
        c.zhat = zhat;
        c.r0 = r0;
        c.Y = Y;
        c.Z = Z;
        c.rstar = rstar;
        c.enclosure = ComplexRect(RealInterval(sub_down(zhat.real(), r0), add_up(zhat.real(), r0)),
                                  RealInterval(sub_down(zhat.imag(), r0), add_up(zhat.imag(), r0)));
        return c;
    }
    throw *last;
}

RootCertificate validate_root(const CFun& g, const CFun& g1, const CFun& g2, std::complex<double> zhat,
                              double rstar) {
    for (int attempt = 0;; ++attempt) {
        try {
            return nk_validate(g, g1, g2, zhat, rstar);
        } catch (const Error& e) {
            if (e.code() != Errc::ContractionFailed || attempt == 8) throw;
            rstar *= 0.5;
        }
    }
}

ComplexRect dde_delta(const RealInterval& alpha, const ComplexRect& z) { return z + scale(exp(-z), alpha); }

ComplexRect dde_delta_prime(const RealInterval& alpha, const ComplexRect& z) {
    return ComplexRect(1.0) - scale(exp(-z), alpha);
}

ComplexRect dde_delta_second(const RealInterval& alpha, const ComplexRect& z) { return scale(exp(-z), alpha); }

bool alpha_in_hayes_range(double alpha) {
    return alpha > std::numbers::pi / 2 && alpha < 5 * std::numbers::pi / 2;
}

namespace {

template <class F, class FP>
std::optional<std::complex<double>> newton(F f, FP fp, std::complex<double> z) {
    // Steps stall at a few ulps on some roots; the last iterate whose step was
    // already at noise level is returned, validation decides the rest.
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
        std::complex<double> d = fp(z);
        if (d == 0.0) return std::nullopt;
        std::complex<double> step = f(z) / d;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
        last = std::abs(step) / std::max(1.0, std::abs(z));
        if (last <= 1e-15 && it > 0) return z;
    }
    if (last <= 1e-12) return z;
    return std::nullopt;
}

}  // namespace

SpectralPair find_dde_pair(const RealInterval& alpha) {
    const double a = alpha.mid();
    if (!alpha_in_hayes_range(a))
        throw Error(Errc::AlphaOutOfRange, "alpha must lie in (pi/2, 5pi/2), got " + std::to_string(a));
    auto f = [a](std::complex<double> z) { return z + a * std::exp(-z); };
    auto fp = [a](std::complex<double> z) { return 1.0 - a * std::exp(-z); };

    // coarse scan of the upper right quadrant, Newton from every grid point
    std::optional<std::complex<double>> best;
    for (double re = 0.1; re <= 3.0; re += 0.3) {
        for (double im = 0.25; im <= 6.5; im += 0.25) {
            auto z = newton(f, fp, {re, im});
            if (!z || z->real() <= 0 || z->imag() <= 0 || std::abs(f(*z)) > 1e-10) continue;
            if (!best || z->real() > best->real()) best = z;
        }
    }
    if (!best) throw Error(Errc::SeedNotInRightHalfPlane, "no characteristic root found in the right half plane");

    CFun g = [&](const ComplexRect& z) { return dde_delta(alpha, z); };
    CFun g1 = [&](const ComplexRect& z) { return dde_delta_prime(alpha, z); };
    CFun g2 = [&](const ComplexRect& z) { return dde_delta_second(alpha, z); };
    RootCertificate plus = validate_root(g, g1, g2, *best);
    if (!(plus.enclosure.re.lo > 0))
        throw Error(Errc::SeedNotInRightHalfPlane, "validated root is not certified to have Re > 0");
    return {plus, conj(plus), Kind::dde};
}

CensusResult census_psa_report(const ChebyshevScheme& s) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(assemble_an_float(s), false);
    if (es.info() != Eigen::Success) throw Error(Errc::CensusCountMismatch, "floating eigensolver failed");
    Eigen::VectorXcd ev = es.eigenvalues();

    auto f = [&s](std::complex<double> z) { return delta_n_float(s, z); };
    auto fp = [&s](std::complex<double> z) { return delta_n_prime_float(s, z); };
    CFun g = [&s](const ComplexRect& z) { return delta_n(s, z); };
    CFun g1 = [&s](const ComplexRect& z) { return delta_n_derivs(s, z).d1; };
    CFun g2 = [&s](const ComplexRect& z) { return delta_n_derivs(s, z).d2; };

    CensusResult out;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        std::complex<double> z0 = ev(i);
        const bool real = std::abs(z0.imag()) <= 1e-10 * std::max(1.0, std::abs(z0));
        if (!real && z0.imag() < 0) continue;
        if (real) z0.imag(0.0);
        auto z = newton(f, fp, z0);
        if (!z) throw Error(Errc::CensusCountMismatch, "Newton failed from a floating eigenvalue");
        if (real) z->imag(0.0);
        RootCertificate c;
        try {
            c = validate_root(g, g1, g2, *z);
        } catch (const Error& e) {
            throw Error(e.code(), "root near (" + std::to_string(z->real()) + ", " + std::to_string(z->imag()) +
                                      "): " + e.detail());
        }
        out.all.push_back(c);
        if (!real) out.all.push_back(conj(c));
    }
    if (static_cast<int>(out.all.size()) != s.n + 1)
        throw Error(Errc::CensusCountMismatch,
                    std::to_string(out.all.size()) + " validated zeros, expected " + std::to_string(s.n + 1));
    for (std::size_t i = 0; i < out.all.size(); ++i)
        for (std::size_t j = i + 1; j < out.all.size(); ++j)
            if (overlaps(out.all[i].enclosure, out.all[j].enclosure))
                throw Error(Errc::EnclosuresOverlap, "two root enclosures intersect");

    std::sort(out.all.begin(), out.all.end(), [](const RootCertificate& a, const RootCertificate& b) {
        if (a.zhat.real() != b.zhat.real()) return a.zhat.real() > b.zhat.real();
        return a.zhat.imag() > b.zhat.imag();
    });
    for (const auto& c : out.all) {
        if (c.enclosure.re.lo > 0) {
            ++out.unstable_count;
            if (c.zhat.imag() > 0 && !out.unstable) out.unstable = SpectralPair{c, conj(c), Kind::psa};
        } else if (!(c.enclosure.re.hi < 0)) {
            throw Error(Errc::UnstableCountNotTwo, "a root enclosure straddles the imaginary axis");
        }
    }
    return out;
}

CensusResult census_psa(const ChebyshevScheme& s) {
    CensusResult r = census_psa_report(s);
    if (r.unstable_count != 2 || !r.unstable)
        throw Error(Errc::UnstableCountNotTwo, std::to_string(r.unstable_count) + " zeros in the right half plane");
    return r;
}

}  // namespace wright
