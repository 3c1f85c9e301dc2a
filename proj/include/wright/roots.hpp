#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "wright/cheb.hpp"
#include "wright/seq.hpp"

namespace wright {

/// Output of the scalar Newton-Kantorovich test: g has a unique zero in the
/// closed disk of radius r0 about zhat, and `enclosure` is the square around it.
struct RootCertificate {
    std::complex<double> zhat;
    double r0 = 0.0;
    ComplexRect enclosure;
    double Y = 0.0;
    double Z = 0.0;
    double rstar = 0.0;
};

RootCertificate conj(const RootCertificate& c);

struct SpectralPair {
    RootCertificate plus;   // Im > 0
    RootCertificate minus;  // conjugate of plus
    Kind kind = Kind::dde;
};

using CFun = std::function<ComplexRect(const ComplexRect&)>;

inline constexpr double kDefaultRstar = 1e-4;

// One attempt at a fixed r*. The disk's bounding square is split into a grid of
// cells when the single-rectangle estimate of Z is too coarse.
RootCertificate nk_validate(const CFun& g, const CFun& g1, const CFun& g2, std::complex<double> zhat, double rstar);

// nk_validate with r* halved (up to 8 times) on ContractionFailed.
RootCertificate validate_root(const CFun& g, const CFun& g1, const CFun& g2, std::complex<double> zhat,
                              double rstar = kDefaultRstar);

ComplexRect dde_delta(const RealInterval& alpha, const ComplexRect& z);
ComplexRect dde_delta_prime(const RealInterval& alpha, const ComplexRect& z);
ComplexRect dde_delta_second(const RealInterval& alpha, const ComplexRect& z);

// Hayes: for pi/2 < alpha < 5pi/2 exactly two characteristic roots lie in the
// open right half plane. That count is taken as given.
bool alpha_in_hayes_range(double alpha);
SpectralPair find_dde_pair(const RealInterval& alpha);

struct CensusResult {
    std::vector<RootCertificate> all;  // n+1 pairwise disjoint enclosures
    int unstable_count = 0;
    std::optional<SpectralPair> unstable;
};

// Validates every zero of Delta_n without constraining how many are unstable.
CensusResult census_psa_report(const ChebyshevScheme& s);
// As above, and additionally requires exactly one unstable conjugate pair.
CensusResult census_psa(const ChebyshevScheme& s);

}  // namespace wright
