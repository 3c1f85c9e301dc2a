#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>
#include <limits>

#include "wright/errors.hpp"

namespace wright {

// Directed rounding without touching the FPU mode: each primitive computes the
// round-to-nearest result, recovers the exact error with an error-free
// transform, and steps one ulp outward only when the result was inexact.
namespace rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this magnitude the FMA residual of a product may itself be rounded.
inline constexpr double kTiny = 0x1p-960;

inline double down(double x) { return std::nextafter(x, -kInf); }
inline double up(double x) { return std::nextafter(x, kInf); }

// A finite computation that overflowed to +inf has DBL_MAX as its lower bound.
inline double clamp_down(double r) { return r == kInf ? std::numeric_limits<double>::max() : r; }
inline double clamp_up(double r) { return r == -kInf ? -std::numeric_limits<double>::max() : r; }

inline double add_down(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return std::isfinite(a) && std::isfinite(b) ? clamp_down(s) : s;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e < 0 ? down(s) : s;
}
inline double add_up(double a, double b) {
    double s = a + b;
    if (!std::isfinite(s)) return std::isfinite(a) && std::isfinite(b) ? clamp_up(s) : s;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return e > 0 ? up(s) : s;
}
inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b) {
    double p = a * b;
    if (!std::isfinite(p)) return std::isfinite(a) && std::isfinite(b) ? clamp_down(p) : p;
    if (a == 0 || b == 0) return p;
    if (std::fabs(p) < kTiny) return down(p);
    return std::fma(a, b, -p) < 0 ? down(p) : p;
}
inline double mul_up(double a, double b) {
    double p = a * b;
    if (!std::isfinite(p)) return std::isfinite(a) && std::isfinite(b) ? clamp_up(p) : p;
    if (a == 0 || b == 0) return p;
    if (std::fabs(p) < kTiny) return up(p);
    return std::fma(a, b, -p) > 0 ? up(p) : p;
}

// sign of a/b - q is sign(a - q*b) * sign(b)
inline double div_down(double a, double b) {
    double q = a / b;
    if (!std::isfinite(q)) return std::isfinite(a) && b != 0 ? clamp_down(q) : q;
    if (a == 0) return q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return down(q);
    double r = std::fma(-q, b, a);
    if (r == 0) return q;
    return ((r < 0) != (b < 0)) ? down(q) : q;
}
inline double div_up(double a, double b) {
    double q = a / b;
    if (!std::isfinite(q)) return std::isfinite(a) && b != 0 ? clamp_up(q) : q;
    if (a == 0) return q;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return up(q);
    double r = std::fma(-q, b, a);
    if (r == 0) return q;
    return ((r > 0) != (b < 0)) ? up(q) : q;
}

inline double sqrt_down(double a) {
    if (a <= 0) return 0.0;
    double s = std::sqrt(a);
    if (a < kTiny) return down(s);
    return std::fma(-s, s, a) < 0 ? down(s) : s;
}
inline double sqrt_up(double a) {
    if (a <= 0) return 0.0;
    double s = std::sqrt(a);
    if (a < kTiny) return up(s);
    return std::fma(-s, s, a) > 0 ? up(s) : s;
}

}  // namespace rnd

struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr RealInterval() = default;
    constexpr RealInterval(double x) : lo(x), hi(x) {}  // NOLINT: points convert implicitly
    RealInterval(double l, double h) : lo(l), hi(h) {
        if (!(l <= h)) throw Error(Errc::InvalidInterval, "lo > hi or NaN endpoint");
    }

    double mid() const { return lo == hi ? lo : 0.5 * lo + 0.5 * hi; }
    double rad() const { return rnd::sub_up(hi, lo) * 0.5; }
    double width() const { return rnd::sub_up(hi, lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const RealInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_point() const { return lo == hi; }
    // upper bound of |x| over the interval
    double mag() const { return std::fmax(std::fabs(lo), std::fabs(hi)); }
    // lower bound of |x|
    double mig() const { return contains_zero() ? 0.0 : std::fmin(std::fabs(lo), std::fabs(hi)); }
};

inline double mag_upper(const RealInterval& x) { return x.mag(); }

RealInterval operator+(const RealInterval& a, const RealInterval& b);
RealInterval operator-(const RealInterval& a, const RealInterval& b);
RealInterval operator*(const RealInterval& a, const RealInterval& b);
RealInterval operator/(const RealInterval& a, const RealInterval& b);
inline RealInterval operator-(const RealInterval& a) { return {-a.hi, -a.lo}; }

RealInterval scale(const RealInterval& a, double d);
RealInterval recip(const RealInterval& a);
RealInterval sqr(const RealInterval& a);
RealInterval sqrt(const RealInterval& a);
RealInterval abs(const RealInterval& a);
RealInterval hull(const RealInterval& a, const RealInterval& b);
bool overlaps(const RealInterval& a, const RealInterval& b);
// Throws InvalidInterval when the intersection is empty.
RealInterval intersect(const RealInterval& a, const RealInterval& b);

RealInterval exp(const RealInterval& x);
RealInterval sin(const RealInterval& x);
RealInterval cos(const RealInterval& x);

// Tight enclosures of constants.
RealInterval pi_interval();
RealInterval ln2_interval();

inline RealInterval& operator+=(RealInterval& a, const RealInterval& b) { return a = a + b; }
inline RealInterval& operator-=(RealInterval& a, const RealInterval& b) { return a = a - b; }
inline RealInterval& operator*=(RealInterval& a, const RealInterval& b) { return a = a * b; }

std::ostream& operator<<(std::ostream& os, const RealInterval& x);

struct ComplexRect {
    RealInterval re;
    RealInterval im;

    constexpr ComplexRect() = default;
    constexpr ComplexRect(double x) : re(x), im(0.0) {}  // NOLINT
    ComplexRect(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT
    ComplexRect(const RealInterval& r, const RealInterval& i = RealInterval(0.0)) : re(r), im(i) {}  // NOLINT

    std::complex<double> mid() const { return {re.mid(), im.mid()}; }
    bool contains(std::complex<double> z) const { return re.contains(z.real()) && im.contains(z.imag()); }
    bool contains(const ComplexRect& o) const { return re.contains(o.re) && im.contains(o.im); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool is_point() const { return re.is_point() && im.is_point(); }
};

ComplexRect operator+(const ComplexRect& a, const ComplexRect& b);
ComplexRect operator-(const ComplexRect& a, const ComplexRect& b);
ComplexRect operator*(const ComplexRect& a, const ComplexRect& b);
ComplexRect operator/(const ComplexRect& a, const ComplexRect& b);
inline ComplexRect operator-(const ComplexRect& a) { return {-a.re, -a.im}; }
inline ComplexRect conj(const ComplexRect& a) { return {a.re, -a.im}; }

// Point-by-interval product; cheaper than promoting the point to a rectangle.
ComplexRect mul(std::complex<double> a, const ComplexRect& b);
ComplexRect scale(const ComplexRect& a, const RealInterval& s);
ComplexRect recip(const ComplexRect& a);
ComplexRect sqr(const ComplexRect& a);
ComplexRect hull(const ComplexRect& a, const ComplexRect& b);
bool overlaps(const ComplexRect& a, const ComplexRect& b);
ComplexRect intersect(const ComplexRect& a, const ComplexRect& b);

ComplexRect exp(const ComplexRect& z);

inline ComplexRect& operator+=(ComplexRect& a, const ComplexRect& b) { return a = a + b; }
inline ComplexRect& operator-=(ComplexRect& a, const ComplexRect& b) { return a = a - b; }
inline ComplexRect& operator*=(ComplexRect& a, const ComplexRect& b) { return a = a * b; }

struct MagBounds {
    double lower;
    double upper;
};

MagBounds mag_bounds(const ComplexRect& z);
inline double mag_upper(const ComplexRect& z) { return mag_bounds(z).upper; }
inline double mag_lower(const ComplexRect& z) { return mag_bounds(z).lower; }

std::ostream& operator<<(std::ostream& os, const ComplexRect& z);

}  // namespace wright
