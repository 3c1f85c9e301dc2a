#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "wright/cheb.hpp"
#include "wright/exec.hpp"
#include "wright/interval.hpp"

namespace wright {

// Storage is by total degree, then lexicographic in (beta1, beta2):
// (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
inline std::size_t tri_size(int trunc) {
    return trunc < 0 ? 0 : static_cast<std::size_t>(trunc + 1) * static_cast<std::size_t>(trunc + 2) / 2;
}
inline std::size_t tri_index(int b1, int b2) {
    auto k = static_cast<std::size_t>(b1 + b2);
    return k * (k + 1) / 2 + static_cast<std::size_t>(b1);
}
struct MultiIndex {
    int b1;
    int b2;
    int degree() const { return b1 + b2; }
};
MultiIndex tri_multi(std::size_t idx);

class TaylorSeq2 {
public:
    TaylorSeq2() = default;
    explicit TaylorSeq2(int trunc) : trunc_(trunc), c_(tri_size(trunc), ComplexRect(0.0)) {}

    int trunc() const { return trunc_; }
    std::size_t size() const { return c_.size(); }

    // zero beyond the truncation degree
    ComplexRect at(int b1, int b2) const {
        return b1 + b2 <= trunc_ ? c_[tri_index(b1, b2)] : ComplexRect(0.0);
    }
    ComplexRect& operator()(int b1, int b2) { return c_[tri_index(b1, b2)]; }
    ComplexRect& operator[](std::size_t i) { return c_[i]; }
    const ComplexRect& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<ComplexRect>& coeffs() const { return c_; }

private:
    int trunc_ = -1;
    std::vector<ComplexRect> c_;
};

RealInterval ell1_norm(const TaylorSeq2& x);
TaylorSeq2 conv(const TaylorSeq2& x, const TaylorSeq2& y, int out_trunc, Exec exec = Exec::parallel);

enum class Part { head, tail };
TaylorSeq2 project(const TaylorSeq2& x, int N, Part part);
TaylorSeq2 operator+(const TaylorSeq2& x, const TaylorSeq2& y);
TaylorSeq2 operator-(const TaylorSeq2& x, const TaylorSeq2& y);

enum class Kind { dde, psa };
const char* kind_name(Kind k);

// <lambda, beta> = b1 lambda_+ + b2 lambda_-. When lambda_- is the exact
// conjugate of lambda_+ it is formed as Re*(b1+b2) + i Im*(b1-b2), so swapping
// b1 and b2 conjugates the rectangle exactly.
ComplexRect lambda_dot(const ComplexRect& plus, const ComplexRect& minus, int b1, int b2);

struct MultiplierTable {
    Kind kind = Kind::dde;
    int maxdeg = -1;
    std::vector<ComplexRect> values;

    ComplexRect at(int b1, int b2) const { return values.at(tri_index(b1, b2)); }
};

// dde: exp(-<lambda,beta>); psa: ((D - <lambda_n,beta> I)^{-1} D1)_n.
MultiplierTable multipliers(Kind kind, const ComplexRect& plus, const ComplexRect& minus,
                            const ChebyshevScheme* scheme, int maxdeg, Exec exec = Exec::parallel);

TaylorSeq2 apply_multiplier(const TaylorSeq2& x, const MultiplierTable& m);

// CSV with header beta1,beta2,re_lo,re_hi,im_lo,im_hi
void write_csv(std::ostream& os, const TaylorSeq2& x);
void write_csv(std::ostream& os, const MultiplierTable& m);
TaylorSeq2 read_csv(std::istream& is);
void write_csv_file(const std::string& path, const TaylorSeq2& x);
TaylorSeq2 read_csv_file(const std::string& path);

// Point sequence from floating coefficients, and back.
TaylorSeq2 from_points(const std::vector<std::complex<double>>& v, int trunc);
std::vector<std::complex<double>> midpoints(const TaylorSeq2& x);

}  // namespace wright
