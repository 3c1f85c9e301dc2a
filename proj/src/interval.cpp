#include "wright/interval.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <iomanip>
#include <ostream>

namespace wright {

using namespace rnd;

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::InvalidInterval: return "InvalidInterval";
        case Errc::DivisionByZeroInterval: return "DivisionByZeroInterval";
        case Errc::ArgumentReductionOverflow: return "ArgumentReductionOverflow";
        case Errc::Overflow: return "Overflow";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::NotVerifiablyInvertible: return "NotVerifiablyInvertible";
        case Errc::NumericallySingular: return "NumericallySingular";
        case Errc::ContractionFailed: return "ContractionFailed";
        case Errc::RadiusTooLarge: return "RadiusTooLarge";
        case Errc::DerivativeVanishes: return "DerivativeVanishes";
        case Errc::SeedNotInRightHalfPlane: return "SeedNotInRightHalfPlane";
        case Errc::EnclosuresOverlap: return "EnclosuresOverlap";
        case Errc::CensusCountMismatch: return "CensusCountMismatch";
        case Errc::UnstableCountNotTwo: return "UnstableCountNotTwo";
        case Errc::ResonantIndex: return "ResonantIndex";
        case Errc::ThresholdViolated: return "ThresholdViolated";
        case Errc::NoNegativePoint: return "NoNegativePoint";
        case Errc::MismatchedGuess: return "MismatchedGuess";
        case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
        case Errc::InvalidConfig: return "InvalidConfig";
        case Errc::IoError: return "IoError";
        case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

// ---------------------------------------------------------------- real field

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
    return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
    return {sub_down(a.lo, b.hi), sub_up(a.hi, b.lo)};
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
    if (a.lo >= 0) {
        if (b.lo >= 0) return {mul_down(a.lo, b.lo), mul_up(a.hi, b.hi)};
        if (b.hi <= 0) return {mul_down(a.hi, b.lo), mul_up(a.lo, b.hi)};
        return {mul_down(a.hi, b.lo), mul_up(a.hi, b.hi)};
    }
    if (a.hi <= 0) {
        if (b.lo >= 0) return {mul_down(a.lo, b.hi), mul_up(a.hi, b.lo)};
        if (b.hi <= 0) return {mul_down(a.hi, b.hi), mul_up(a.lo, b.lo)};
        return {mul_down(a.lo, b.hi), mul_up(a.lo, b.lo)};
    }
    if (b.lo >= 0) return {mul_down(a.lo, b.hi), mul_up(a.hi, b.hi)};
    if (b.hi <= 0) return {mul_down(a.hi, b.lo), mul_up(a.lo, b.lo)};
    return {std::min(mul_down(a.lo, b.hi), mul_down(a.hi, b.lo)),
            std::max(mul_up(a.lo, b.lo), mul_up(a.hi, b.hi))};
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
    if (b.lo > 0) {
        if (a.lo >= 0) return {div_down(a.lo, b.hi), div_up(a.hi, b.lo)};
        if (a.hi <= 0) return {div_down(a.lo, b.lo), div_up(a.hi, b.hi)};
        return {div_down(a.lo, b.lo), div_up(a.hi, b.lo)};
    }
    if (b.hi < 0) {
        if (a.lo >= 0) return {div_down(a.hi, b.hi), div_up(a.lo, b.lo)};
        if (a.hi <= 0) return {div_down(a.hi, b.lo), div_up(a.lo, b.hi)};
        return {div_down(a.hi, b.hi), div_up(a.lo, b.hi)};
    }
    throw Error(Errc::DivisionByZeroInterval, "real divisor contains zero");
}

RealInterval scale(const RealInterval& a, double d) {
    if (d >= 0) return {mul_down(a.lo, d), mul_up(a.hi, d)};
    return {mul_down(a.hi, d), mul_up(a.lo, d)};
}

RealInterval recip(const RealInterval& a) { return RealInterval(1.0) / a; }

RealInterval sqr(const RealInterval& a) {
    if (a.lo >= 0) return {mul_down(a.lo, a.lo), mul_up(a.hi, a.hi)};
    if (a.hi <= 0) return {mul_down(a.hi, a.hi), mul_up(a.lo, a.lo)};
    return {0.0, std::max(mul_up(a.lo, a.lo), mul_up(a.hi, a.hi))};
}

RealInterval sqrt(const RealInterval& a) {
    if (a.lo < 0) throw Error(Errc::InvalidInterval, "sqrt of an interval with negative part");
    return {sqrt_down(a.lo), sqrt_up(a.hi)};
}

RealInterval abs(const RealInterval& a) { return {a.mig(), a.mag()}; }

RealInterval hull(const RealInterval& a, const RealInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

bool overlaps(const RealInterval& a, const RealInterval& b) { return a.lo <= b.hi && b.lo <= a.hi; }

RealInterval intersect(const RealInterval& a, const RealInterval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::ostream& operator<<(std::ostream& os, const RealInterval& x) {
    auto flags = os.flags();
    auto prec = os.precision();
    os << std::setprecision(17) << '[' << x.lo << ", " << x.hi << ']';
    os.flags(flags);
    os.precision(prec);
    return os;
}

// ---------------------------------------------------------- elementary fns

namespace {

// ln 2 = kLn2Hi + kLn2Lo + t and pi/2 = kPio2Hi + kPio2Lo + t', |t|,|t'| < 2^-105.
constexpr double kLn2Hi = 0x1.62e42fefa39efp-1;
constexpr double kLn2Lo = 0x1.abc9e3b39803fp-56;
constexpr double kPio2Hi = 0x1.921fb54442d18p+0;
constexpr double kPio2Lo = 0x1.1a62633145c07p-54;
constexpr double kTailEps = 0x1p-105;
constexpr double kTrigLimit = 0x1p40;

RealInterval low_word(double w) { return {w - kTailEps, w + kTailEps}; }

// x - k*(hi + lo) with the product k*hi split exactly by FMA.
RealInterval reduce(double x, double k, double hi, double lo) {
    double p = k * hi;
    double e = std::fma(k, hi, -p);
    RealInterval r = RealInterval(x) - RealInterval(p);
    r = r - RealInterval(e);
    return r - RealInterval(k) * low_word(lo);
}

// 1/j! for j = 0..kTerms, each as an enclosure.
constexpr int kTerms = 27;
const std::array<RealInterval, kTerms + 1>& inv_factorials() {
    static const std::array<RealInterval, kTerms + 1> table = [] {
        std::array<RealInterval, kTerms + 1> t;
        t[0] = RealInterval(1.0);
        for (int j = 1; j <= kTerms; ++j) t[j] = t[j - 1] / RealInterval(static_cast<double>(j));
        return t;
    }();
    return table;
}

// Enclosure of e^r for |r| <= 0.36, degree-20 Taylor plus Lagrange remainder.
RealInterval exp_small(const RealInterval& r) {
    constexpr int deg = 20;
    const auto& c = inv_factorials();
    RealInterval p = c[deg];
    for (int j = deg - 1; j >= 0; --j) p = p * r + c[j];
    // |R| <= |r|^(deg+1)/(deg+1)! * e^|r| <= 2 |r|^(deg+1)/(deg+1)!
    double m = r.mag();
    double bound = 2.0;
    for (int j = 0; j <= deg; ++j) bound = mul_up(bound, m);
    bound = mul_up(bound, c[deg + 1].hi);
    return p + RealInterval(-bound, bound);
}

RealInterval exp_point(double x) {
    if (x == 0) return RealInterval(1.0);
    if (x > 709.0) throw Error(Errc::Overflow, "exp argument too large");
    if (x < -745.2) return {0.0, std::numeric_limits<double>::denorm_min()};
    double k = std::nearbyint(x / kLn2Hi);
    RealInterval r = reduce(x, k, kLn2Hi, kLn2Lo);
    RealInterval e = exp_small(r);
    int ki = static_cast<int>(k);
    double lo = std::ldexp(e.lo, ki);
    double hi = std::ldexp(e.hi, ki);
    if (lo < 0x1p-1021) {
        // ldexp rounds to nearest once the result is subnormal
        lo = std::max(0.0, down(lo));
        hi = up(hi);
    }
    return {lo, hi};
}

struct SinCos {
    RealInterval s;
    RealInterval c;
};

// Taylor enclosures of sin y and cos y for |y| <= pi/4 + tiny.
SinCos sincos_small(const RealInterval& y) {
    const auto& f = inv_factorials();
    RealInterval u = sqr(y);
    constexpr int ks = 12;  // last odd power 2*ks+1 = 25
    RealInterval ps = f[2 * ks + 1];
    for (int j = ks - 1; j >= 0; --j) {
        ps = f[2 * j + 1] - u * ps;
    }
    RealInterval s = y * ps;
    RealInterval pc = f[2 * ks];
    for (int j = ks - 1; j >= 0; --j) {
        pc = f[2 * j] - u * pc;
    }
    double m = y.mag();
    double bs = 1.0;
    for (int j = 0; j < 2 * ks + 3; ++j) bs = mul_up(bs, m);
    // the next omitted terms are y^27/27! (sin) and y^26/26! (cos)
    double bound_s = mul_up(bs, f[27].hi);
    double bc = 1.0;
    for (int j = 0; j < 2 * ks + 2; ++j) bc = mul_up(bc, m);
    double bound_c = mul_up(bc, f[26].hi);
    return {s + RealInterval(-bound_s, bound_s), pc + RealInterval(-bound_c, bound_c)};
}

SinCos sincos_point(double x) {
    if (!(std::fabs(x) <= kTrigLimit)) throw Error(Errc::ArgumentReductionOverflow, "|x| > 2^40");
    if (x == 0) return {RealInterval(0.0), RealInterval(1.0)};
    double k = std::nearbyint(x / kPio2Hi);
    RealInterval y = reduce(x, k, kPio2Hi, kPio2Lo);
    SinCos sc = sincos_small(y);
    auto q = static_cast<std::int64_t>(k) & 3;
    switch (q) {
        case 0: return sc;
        case 1: return {sc.c, -sc.s};
        case 2: return {-sc.s, -sc.c};
        default: return {-sc.c, sc.s};
    }
}

RealInterval clamp_unit(const RealInterval& v) {
    return {std::clamp(v.lo, -1.0, 1.0), std::clamp(v.hi, -1.0, 1.0)};
}

// Does [lo,hi]/(pi/2) contain an integer congruent to `res` mod 4?
bool contains_quarter_turn(const RealInterval& x, int res) {
    const RealInterval pio2 = RealInterval(kPio2Hi) + low_word(kPio2Lo);
    RealInterval t = x / pio2;
    double first = std::ceil(t.lo);
    auto f = static_cast<std::int64_t>(first);
    std::int64_t shift = ((res - f) % 4 + 4) % 4;
    return static_cast<double>(f + shift) <= t.hi;
}

RealInterval trig(const RealInterval& x, bool want_sin) {
    if (!(std::fabs(x.lo) <= kTrigLimit && std::fabs(x.hi) <= kTrigLimit))
        throw Error(Errc::ArgumentReductionOverflow, "|x| > 2^40");
    if (x.hi - x.lo >= 6.3) return {-1.0, 1.0};
    SinCos a = sincos_point(x.lo);
    RealInterval r = want_sin ? a.s : a.c;
    if (!x.is_point()) {
        SinCos b = sincos_point(x.hi);
        r = hull(r, want_sin ? b.s : b.c);
        int top = want_sin ? 1 : 0;
        int bottom = want_sin ? 3 : 2;
        if (contains_quarter_turn(x, top)) r.hi = 1.0;
        if (contains_quarter_turn(x, bottom)) r.lo = -1.0;
    }
    return clamp_unit(r);
}

}  // namespace

RealInterval pi_interval() {
    return scale(RealInterval(kPio2Hi) + low_word(kPio2Lo), 2.0);
}

RealInterval ln2_interval() { return RealInterval(kLn2Hi) + low_word(kLn2Lo); }

RealInterval exp(const RealInterval& x) {
    RealInterval lo = exp_point(x.lo);
    if (x.is_point()) return lo;
    return {lo.lo, exp_point(x.hi).hi};
}

RealInterval sin(const RealInterval& x) { return trig(x, true); }
RealInterval cos(const RealInterval& x) { return trig(x, false); }

// ------------------------------------------------------------- complex field

ComplexRect operator+(const ComplexRect& a, const ComplexRect& b) { return {a.re + b.re, a.im + b.im}; }
ComplexRect operator-(const ComplexRect& a, const ComplexRect& b) { return {a.re - b.re, a.im - b.im}; }

ComplexRect operator*(const ComplexRect& a, const ComplexRect& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexRect mul(std::complex<double> a, const ComplexRect& b) {
    return {scale(b.re, a.real()) - scale(b.im, a.imag()), scale(b.im, a.real()) + scale(b.re, a.imag())};
}

ComplexRect scale(const ComplexRect& a, const RealInterval& s) { return {a.re * s, a.im * s}; }

ComplexRect sqr(const ComplexRect& a) {
    return {sqr(a.re) - sqr(a.im), scale(a.re * a.im, 2.0)};
}

ComplexRect recip(const ComplexRect& a) {
    RealInterval den = sqr(a.re) + sqr(a.im);
    if (!(den.lo > 0)) throw Error(Errc::DivisionByZeroInterval, "complex divisor may vanish");
    return {a.re / den, (-a.im) / den};
}

ComplexRect operator/(const ComplexRect& a, const ComplexRect& b) {
    RealInterval den = sqr(b.re) + sqr(b.im);
    if (!(den.lo > 0)) throw Error(Errc::DivisionByZeroInterval, "complex divisor may vanish");
    ComplexRect num = a * conj(b);
    return {num.re / den, num.im / den};
}

ComplexRect hull(const ComplexRect& a, const ComplexRect& b) { return {hull(a.re, b.re), hull(a.im, b.im)}; }

bool overlaps(const ComplexRect& a, const ComplexRect& b) { return overlaps(a.re, b.re) && overlaps(a.im, b.im); }

ComplexRect intersect(const ComplexRect& a, const ComplexRect& b) {
    return {intersect(a.re, b.re), intersect(a.im, b.im)};
}

ComplexRect exp(const ComplexRect& z) {
    RealInterval m = exp(z.re);
    if (z.im.lo == 0 && z.im.hi == 0) return {m, RealInterval(0.0)};
    return {m * cos(z.im), m * sin(z.im)};
}

MagBounds mag_bounds(const ComplexRect& z) {
    double dx = z.re.mig();
    double dy = z.im.mig();
    double lower = sqrt_down(add_down(mul_down(dx, dx), mul_down(dy, dy)));
    double mx = z.re.mag();
    double my = z.im.mag();
    double upper = sqrt_up(add_up(mul_up(mx, mx), mul_up(my, my)));
    return {lower, upper};
}

std::ostream& operator<<(std::ostream& os, const ComplexRect& z) {
    return os << z.re << " + " << z.im << "i";
}

}  // namespace wright
