#include "wright/manifold.hpp"

#include <string>

namespace wright {

ComplexRect ProblemData::z_at(int b1, int b2) const {
    return lambda_dot(lambda.plus.enclosure, lambda.minus.enclosure, b1, b2);
}

ProblemData make_problem(Kind kind, const RealInterval& alpha, const SpectralPair& lambda, const ChebyshevScheme* scheme,
                         int maxdeg, double xi_scale, Exec exec) {
    ProblemData p;
    p.kind = kind;
    p.alpha = alpha;
    p.lambda = lambda;
    p.maxdeg = maxdeg;
    p.xi10 = ComplexRect(xi_scale);
    p.xi01 = ComplexRect(xi_scale);
    p.mult = multipliers(kind, lambda.plus.enclosure, lambda.minus.enclosure, scheme, maxdeg, exec);
    p.delta.resize(tri_size(maxdeg));
    for (std::size_t i = 0; i < p.delta.size(); ++i) {
        MultiIndex b = tri_multi(i);
        p.delta[i] = p.z_at(b.b1, b.b2) + scale(p.mult.values[i], alpha);
    }
    return p;
}

namespace {

void check_tables(const ProblemData& p, int N) {
    if (p.maxdeg < N) throw Error(Errc::InvalidConfig, "problem tables are shorter than the requested degree");
}

[[noreturn]] void resonant(int b1, int b2) {
    throw Error(Errc::ResonantIndex,
                "Delta(<lambda,beta>) may vanish at beta=(" + std::to_string(b1) + "," + std::to_string(b2) + ")");
}

}  // namespace

TaylorSeq2 recurse_coeffs(const ProblemData& p, int N) {
    check_tables(p, N);
    std::vector<std::complex<double>> x(tri_size(N), 0.0);
    std::vector<std::complex<double>> rx(tri_size(N), 0.0);
    const double a = p.alpha.mid();
    for (std::size_t i = 0; i < x.size(); ++i) {
        MultiIndex b = tri_multi(i);
        const int deg = b.degree();
        if (deg == 1) {
            x[i] = p.xi_at(b.b1, b.b2).mid();
        } else if (deg >= 2) {
            const ComplexRect& d = p.delta[i];
            if (d.contains_zero()) resonant(b.b1, b.b2);
            std::complex<double> acc = 0.0;
            for (int g1 = 0; g1 <= b.b1; ++g1)
                for (int g2 = 0; g2 <= b.b2; ++g2) {
                    if (g1 + g2 == 0 || g1 + g2 == deg) continue;
                    acc += x[tri_index(g1, g2)] * rx[tri_index(b.b1 - g1, b.b2 - g2)];
                }
            x[i] = -a * acc / d.mid();
        }
        rx[i] = p.mult.values[i].mid() * x[i];
    }
    return from_points(x, N);
}

TaylorSeq2 recurse_coeffs_enclosure(const ProblemData& p, int N) {
    check_tables(p, N);
    TaylorSeq2 x(N);
    TaylorSeq2 rx(N);
    for (std::size_t i = 0; i < x.size(); ++i) {
        MultiIndex b = tri_multi(i);
        const int deg = b.degree();
        if (deg == 1) {
            x[i] = p.xi_at(b.b1, b.b2);
        } else if (deg >= 2) {
            const ComplexRect& d = p.delta[i];
            if (!(mag_lower(d) > 0)) resonant(b.b1, b.b2);
            ComplexRect acc(0.0);
            for (int g1 = 0; g1 <= b.b1; ++g1)
                for (int g2 = 0; g2 <= b.b2; ++g2) {
                    if (g1 + g2 == 0 || g1 + g2 == deg) continue;
                    acc += x.at(g1, g2) * rx.at(b.b1 - g1, b.b2 - g2);
                }
            x[i] = scale(acc, -p.alpha) / d;
        }
        rx[i] = p.mult.values[i] * x[i];
    }
    return x;
}

TaylorSeq2 eval_F(const ProblemData& p, const TaylorSeq2& x, int out_trunc, Exec exec) {
    if (out_trunc > 2 * x.trunc()) throw Error(Errc::InvalidConfig, "eval_F output degree exceeds 2*trunc");
    check_tables(p, std::min(out_trunc, x.trunc()));
    TaylorSeq2 cv = conv(x, apply_multiplier(x, p.mult), out_trunc, exec);
    TaylorSeq2 f(out_trunc);
    for (std::size_t i = 0; i < f.size(); ++i) {
        MultiIndex b = tri_multi(i);
        const int deg = b.degree();
        ComplexRect xb = x.at(b.b1, b.b2);
        if (deg == 0) {
            f[i] = xb;
        } else if (deg == 1) {
            f[i] = xb - p.xi_at(b.b1, b.b2);
        } else {
            ComplexRect quad = scale(cv[i], p.alpha);
            f[i] = deg <= x.trunc() ? p.delta[i] * xb + quad : quad;
        }
    }
    return f;
}

namespace {

void df_column(const ProblemData& p, const TaylorSeq2& xhat, const TaylorSeq2& rx, int N, std::size_t col, CMatrix& m) {
    MultiIndex g = tri_multi(col);
    const ComplexRect mg = p.mult.values[col];
    const std::size_t K = tri_size(N);
    for (std::size_t row = col; row < K; ++row) {
        MultiIndex b = tri_multi(row);
        if (b.degree() <= 1) {
            if (row == col) m(row, col) = ComplexRect(1.0);
            continue;
        }
        if (b.b1 < g.b1 || b.b2 < g.b2) continue;
        const int d1 = b.b1 - g.b1;
        const int d2 = b.b2 - g.b2;
        ComplexRect v = scale(rx.at(d1, d2) + mg * xhat.at(d1, d2), p.alpha);
        if (row == col) v = v + p.delta[row];
        m(row, col) = v;
    }
}

}  // namespace

CMatrix assemble_df_block(const ProblemData& p, const TaylorSeq2& xhat, int N, Exec exec) {
    if (xhat.trunc() > N) throw Error(Errc::InvalidConfig, "xhat truncation exceeds N");
    check_tables(p, N);
    const std::size_t K = tri_size(N);
    TaylorSeq2 rx = apply_multiplier(xhat, p.mult);
    CMatrix m(K, K);
    const auto n = static_cast<long>(K);
    if (exec == Exec::serial) {
        for (long c = 0; c < n; ++c) df_column(p, xhat, rx, N, static_cast<std::size_t>(c), m);
    } else {
#pragma omp parallel for schedule(dynamic, 8)
        for (long c = 0; c < n; ++c) df_column(p, xhat, rx, N, static_cast<std::size_t>(c), m);
    }
    return m;
}

ApproxSolution make_approx_solution(const ProblemData& p, const TaylorSeq2& xhat, int N, Exec exec) {
    ApproxSolution s;
    s.xhat = xhat;
    s.N = N;
    s.df_block = assemble_df_block(p, xhat, N, exec);
    s.adag = midpoint(s.df_block);
    s.abar = float_inverse(s.adag);
    return s;
}

std::complex<double> eval_manifold_dde(const ProblemData& p, const TaylorSeq2& x, std::complex<double> s1,
                                       std::complex<double> s2, double theta) {
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        MultiIndex b = tri_multi(i);
        std::complex<double> z = p.z_at(b.b1, b.b2).mid();
        sum += x[i].mid() * std::exp(z * theta) * std::pow(s1, b.b1) * std::pow(s2, b.b2);
    }
    return sum;
}

Eigen::VectorXcd eval_manifold_psa(const ProblemData& p, const ChebyshevScheme& s, const TaylorSeq2& x,
                                   std::complex<double> s1, std::complex<double> s2) {
    Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(s.n + 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        MultiIndex b = tri_multi(i);
        std::complex<double> c = x[i].mid();
        if (c == 0.0) continue;
        c *= std::pow(s1, b.b1) * std::pow(s2, b.b2);
        Eigen::VectorXcd v = blowup_vector_float(s, p.z_at(b.b1, b.b2).mid());
        sum(0) += c;
        sum.tail(s.n) += c * v;
    }
    return sum;
}

std::vector<CVector> vector_homological_oracle(const ChebyshevScheme& s, const ProblemData& p, int maxdeg) {
    const int n = s.n;
    const CMatrix an = assemble_an(s);
    std::vector<CVector> P(tri_size(maxdeg), CVector(n + 1, ComplexRect(0.0)));
    for (std::size_t i = 0; i < P.size(); ++i) {
        MultiIndex b = tri_multi(i);
        const int deg = b.degree();
        if (deg == 0) continue;
        const ComplexRect z = p.z_at(b.b1, b.b2);
        if (deg == 1) {
            CVector v = blowup_vector(s, z);
            const ComplexRect xi = p.xi_at(b.b1, b.b2);
            P[i][0] = xi;
            for (int k = 0; k < n; ++k) P[i][k + 1] = xi * v[k];
            continue;
        }
        ComplexRect h(0.0);
        for (int g1 = 0; g1 <= b.b1; ++g1)
            for (int g2 = 0; g2 <= b.b2; ++g2) {
                if (g1 + g2 == 0 || g1 + g2 == deg) continue;
                h += P[tri_index(g1, g2)][n] * P[tri_index(b.b1 - g1, b.b2 - g2)][0];
            }
        CMatrix a(n + 1, n + 1);
        for (int r = 0; r <= n; ++r)
            for (int c = 0; c <= n; ++c) a(r, c) = -an(r, c);
        for (int r = 0; r <= n; ++r) a(r, r) = a(r, r) + z;
        CVector rhs(n + 1, ComplexRect(0.0));
        rhs[0] = scale(h, -p.alpha);
        P[i] = verified_solve(a, rhs);
    }
    return P;
}

}  // namespace wright
