#include "wright/seq.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wright {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

MultiIndex tri_multi(std::size_t idx) {
    auto k = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(idx) + 1.0) - 1.0) / 2.0);
    while (k * (k + 1) / 2 > idx) --k;
    while ((k + 1) * (k + 2) / 2 <= idx) ++k;
    int b1 = static_cast<int>(idx - k * (k + 1) / 2);
    return {b1, static_cast<int>(k) - b1};
}

const char* kind_name(Kind k) { return k == Kind::dde ? "dde" : "psa"; }

RealInterval ell1_norm(const TaylorSeq2& x) {
    double lo = 0.0;
    double hi = 0.0;
    for (const auto& c : x.coeffs()) {
        MagBounds m = mag_bounds(c);
        lo = rnd::add_down(lo, m.lower);
        hi = rnd::add_up(hi, m.upper);
    }
    return {lo, hi};
}

namespace {

ComplexRect conv_entry(const TaylorSeq2& x, const TaylorSeq2& y, int b1, int b2) {
    ComplexRect acc(0.0);
    for (int g1 = 0; g1 <= b1; ++g1)
        for (int g2 = 0; g2 <= b2; ++g2) {
            if (g1 + g2 > x.trunc() || (b1 - g1) + (b2 - g2) > y.trunc()) continue;
            acc += x.at(g1, g2) * y.at(b1 - g1, b2 - g2);
        }
    return acc;
}

}  // namespace

TaylorSeq2 conv(const TaylorSeq2& x, const TaylorSeq2& y, int out_trunc, Exec exec) {
    if (out_trunc > x.trunc() + y.trunc())
        throw Error(Errc::InvalidConfig, "conv output degree exceeds the sum of input degrees");
    TaylorSeq2 out(out_trunc);
    const auto n = static_cast<long>(out.size());
    if (exec == Exec::serial) {
        for (long i = 0; i < n; ++i) {
            MultiIndex b = tri_multi(static_cast<std::size_t>(i));
            out[static_cast<std::size_t>(i)] = conv_entry(x, y, b.b1, b.b2);
        }
    } else {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i) {
            MultiIndex b = tri_multi(static_cast<std::size_t>(i));
            out[static_cast<std::size_t>(i)] = conv_entry(x, y, b.b1, b.b2);
        }
    }
    return out;
}

TaylorSeq2 project(const TaylorSeq2& x, int N, Part part) {
    TaylorSeq2 out(x.trunc());
    for (std::size_t i = 0; i < x.size(); ++i) {
        bool head = tri_multi(i).degree() <= N;
        if (head == (part == Part::head)) out[i] = x[i];
    }
    return out;
}

namespace {

template <class Op>
TaylorSeq2 combine(const TaylorSeq2& x, const TaylorSeq2& y, Op op) {
    int t = std::max(x.trunc(), y.trunc());
    TaylorSeq2 out(t);
    for (std::size_t i = 0; i < out.size(); ++i) {
        MultiIndex b = tri_multi(i);
        out[i] = op(x.at(b.b1, b.b2), y.at(b.b1, b.b2));
    }
    return out;
}

}  // namespace

TaylorSeq2 operator+(const TaylorSeq2& x, const TaylorSeq2& y) {
    return combine(x, y, [](const ComplexRect& a, const ComplexRect& b) { return a + b; });
}

TaylorSeq2 operator-(const TaylorSeq2& x, const TaylorSeq2& y) {
    return combine(x, y, [](const ComplexRect& a, const ComplexRect& b) { return a - b; });
}

ComplexRect lambda_dot(const ComplexRect& plus, const ComplexRect& minus, int b1, int b2) {
    const bool conjugate = minus.re.lo == plus.re.lo && minus.re.hi == plus.re.hi &&
                           minus.im.lo == -plus.im.hi && minus.im.hi == -plus.im.lo;
    if (conjugate) {
        return {scale(plus.re, static_cast<double>(b1 + b2)), scale(plus.im, static_cast<double>(b1 - b2))};
    }
    return scale(plus, RealInterval(static_cast<double>(b1))) + scale(minus, RealInterval(static_cast<double>(b2)));
}

MultiplierTable multipliers(Kind kind, const ComplexRect& plus, const ComplexRect& minus,
                            const ChebyshevScheme* scheme, int maxdeg, Exec exec) {
    if (kind == Kind::psa && scheme == nullptr)
        throw Error(Errc::InvalidConfig, "psa multipliers need a Chebyshev scheme");
    MultiplierTable t;
    t.kind = kind;
    t.maxdeg = maxdeg;
    t.values.assign(tri_size(maxdeg), ComplexRect(0.0));
    const auto n = static_cast<long>(t.values.size());
    const bool conjugate = minus.re.lo == plus.re.lo && minus.re.hi == plus.re.hi &&
                           minus.im.lo == -plus.im.hi && minus.im.hi == -plus.im.lo;

    // With conjugate eigenvalues only b1 >= b2 needs work; the mirror index is the
    // conjugate because D is real.
    auto compute = [&](long i) {
        MultiIndex b = tri_multi(static_cast<std::size_t>(i));
        if (conjugate && b.b1 < b.b2) return;
        ComplexRect z = lambda_dot(plus, minus, b.b1, b.b2);
        try {
            if (kind == Kind::dde) {
                t.values[static_cast<std::size_t>(i)] = exp(-z);
            } else {
                t.values[static_cast<std::size_t>(i)] = blowup_vector(*scheme, z).back();
            }
        } catch (const Error& e) {
            throw Error(e.code(), "at beta=(" + std::to_string(b.b1) + "," + std::to_string(b.b2) + "): " + e.detail());
        }
    };
    if (exec == Exec::serial) {
        for (long i = 0; i < n; ++i) compute(i);
    } else {
        std::optional<Error> failure;
#pragma omp parallel for schedule(dynamic, 4)
        for (long i = 0; i < n; ++i) {
            try {
                compute(i);
            } catch (const Error& e) {
#pragma omp critical(wright_multiplier_failure)
                if (!failure) failure = e;
            }
        }
        if (failure) throw *failure;
    }
    if (conjugate) {
        for (long i = 0; i < n; ++i) {
            MultiIndex b = tri_multi(static_cast<std::size_t>(i));
            if (b.b1 < b.b2) t.values[static_cast<std::size_t>(i)] = conj(t.values[tri_index(b.b2, b.b1)]);
        }
    }
    return t;
}

TaylorSeq2 apply_multiplier(const TaylorSeq2& x, const MultiplierTable& m) {
    if (m.maxdeg < x.trunc()) throw Error(Errc::InvalidConfig, "multiplier table shorter than sequence");
    TaylorSeq2 out(x.trunc());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.values[i] * x[i];
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_rows(std::ostream& os, const std::vector<ComplexRect>& values) {
    os << "beta1,beta2,re_lo,re_hi,im_lo,im_hi\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        MultiIndex b = tri_multi(i);
        const ComplexRect& c = values[i];
        os << b.b1 << ',' << b.b2 << ',' << fmt17(c.re.lo) << ',' << fmt17(c.re.hi) << ',' << fmt17(c.im.lo) << ','
           << fmt17(c.im.hi) << '\n';
    }
}

}  // namespace

void write_csv(std::ostream& os, const TaylorSeq2& x) { write_rows(os, x.coeffs()); }
void write_csv(std::ostream& os, const MultiplierTable& m) { write_rows(os, m.values); }

TaylorSeq2 read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("beta1,beta2,re_lo,re_hi,im_lo,im_hi", 0) != 0)
        throw Error(Errc::ParseError, "missing CSV header");
    struct Row {
        int b1, b2;
        ComplexRect c;
    };
    std::vector<Row> rows;
    int trunc = -1;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::stringstream ss(line);
        std::string f[6];
        for (auto& field : f)
            if (!std::getline(ss, field, ',')) throw Error(Errc::ParseError, "short row at line " + std::to_string(lineno));
        try {
            Row r{std::stoi(f[0]), std::stoi(f[1]),
                  ComplexRect(RealInterval(std::stod(f[2]), std::stod(f[3])), RealInterval(std::stod(f[4]), std::stod(f[5])))};
            if (r.b1 < 0 || r.b2 < 0) throw Error(Errc::ParseError, "negative index");
            trunc = std::max(trunc, r.b1 + r.b2);
            rows.push_back(r);
        } catch (const std::logic_error&) {
            throw Error(Errc::ParseError, "bad number at line " + std::to_string(lineno));
        } catch (const Error& e) {
            throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + e.detail());
        }
    }
    TaylorSeq2 x(trunc);
    for (const auto& r : rows) x(r.b1, r.b2) = r.c;
    return x;
}

void write_csv_file(const std::string& path, const TaylorSeq2& x) {
    std::ofstream os(path);
    if (!os) throw Error(Errc::IoError, "cannot open " + path);
    write_csv(os, x);
    if (!os) throw Error(Errc::IoError, "write failed for " + path);
}

TaylorSeq2 read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error(Errc::IoError, "cannot open " + path);
    return read_csv(is);
}

TaylorSeq2 from_points(const std::vector<std::complex<double>>& v, int trunc) {
    TaylorSeq2 x(trunc);
    for (std::size_t i = 0; i < x.size() && i < v.size(); ++i) x[i] = ComplexRect(v[i]);
    return x;
}

std::vector<std::complex<double>> midpoints(const TaylorSeq2& x) {
    std::vector<std::complex<double>> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i].mid();
    return v;
}

}  // namespace wright
