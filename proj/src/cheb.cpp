#include "wright/cheb.hpp"

namespace wright {

RealInterval lagrange_derivative(const RVector& nodes, int j, int k) {
    const int np = static_cast<int>(nodes.size());
    if (j == k) {
        RealInterval s(0.0);
        for (int m = 0; m < np; ++m)
            if (m != j) s += recip(nodes[j] - nodes[m]);
        return s;
    }
    RealInterval num(1.0);
    for (int m = 0; m < np; ++m)
        if (m != j && m != k) num *= nodes[k] - nodes[m];
    RealInterval den(1.0);
    for (int m = 0; m < np; ++m)
        if (m != j) den *= nodes[j] - nodes[m];
    return num / den;
}

ChebyshevScheme build_scheme(int n, const RealInterval& alpha) {
    if (n < 1) throw Error(Errc::InvalidConfig, "discretization index n must be >= 1");
    ChebyshevScheme s;
    s.n = n;
    s.alpha = alpha;
    s.nodes.resize(n + 1);
    const RealInterval pi = pi_interval();
    // angle(m) = m pi / (2n); theta_j = (cos(2 angle(j)) - 1)/2 = -sin(angle(j))^2
    auto angle = [&](int m) { return pi * RealInterval(static_cast<double>(m)) / RealInterval(2.0 * n); };
    for (int j = 0; j <= n; ++j) {
        if (j == 0) {
            s.nodes[j] = RealInterval(0.0);
        } else if (j == n) {
            s.nodes[j] = RealInterval(-1.0);
        } else if (2 * j == n) {
            s.nodes[j] = RealInterval(-0.5);
        } else {
            s.nodes[j] = -sqr(sin(angle(j)));
        }
    }
    // Entries come from the closed form for Chebyshev extremal points x_j =
    // cos(j pi/n), scaled by 2 for the map theta = (x - 1)/2. Differences are
    // written as x_a - x_b = -2 sin(angle(a+b)) sin(angle(a-b)) so each entry
    // costs a handful of operations; the product formula loses ~100 ulps here.
    const RealInterval two(2.0);
    auto xdiff = [&](int a, int b) { return -(two * sin(angle(a + b)) * sin(angle(a - b))); };
    auto weight = [n](int j) { return (j == 0 || j == n) ? 2.0 : 1.0; };
    auto entry = [&](int k, int j) {
        if (k != j) {
            double sgn = ((k + j) % 2 == 0 ? 1.0 : -1.0) * weight(k) / weight(j);
            return scale(two / xdiff(k, j), sgn);
        }
        if (k == n) return -RealInterval(2.0 * n * n + 1.0) / RealInterval(3.0);
        // -x / (1 - x^2) = -cos(2 angle) / sin(2 angle)^2
        return -(cos(angle(2 * k)) / sqr(sin(angle(2 * k))));
    };

    s.D = RMatrix(n, n);
    s.D1.assign(n, RealInterval(0.0));
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) s.D(k - 1, j - 1) = entry(k, j);
        // the l_j' sum to zero, so D * ones = -l_0'(theta_k)
        s.D1[k - 1] = -entry(k, 0);
    }
    s.Dc = to_complex(s.D);
    s.D1c = to_complex(s.D1);
    s.Dm = midpoint(s.D);
    s.D1m.resize(n);
    for (int k = 0; k < n; ++k) s.D1m(k) = s.D1[k].mid();
    return s;
}

VerifiedSolver resolvent_solver(const ChebyshevScheme& s, const ComplexRect& z) {
    CMatrix a = s.Dc;
    for (int i = 0; i < s.n; ++i) a(i, i) = a(i, i) - z;
    return VerifiedSolver(a);
}

CVector blowup_vector(const ChebyshevScheme& s, const VerifiedSolver& solver) { return solver.solve(s.D1c); }

CVector blowup_vector(const ChebyshevScheme& s, const ComplexRect& z) {
    return blowup_vector(s, resolvent_solver(s, z));
}

ComplexRect delta_n(const ChebyshevScheme& s, const ComplexRect& z) {
    CVector v = blowup_vector(s, z);
    return z + scale(v.back(), s.alpha);
}

DeltaDerivs delta_n_derivs(const ChebyshevScheme& s, const ComplexRect& z) {
    VerifiedSolver solver = resolvent_solver(s, z);
    CVector w1 = solver.solve(s.D1c);
    CVector w2 = solver.solve(w1);
    CVector w3 = solver.solve(w2);
    return {ComplexRect(1.0) + scale(w2.back(), s.alpha), scale(w3.back(), scale(s.alpha, 2.0))};
}

Eigen::MatrixXd assemble_an_float(const ChebyshevScheme& s) {
    const int n = s.n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n + 1);
    a(0, n) = -s.alpha.mid();
    for (int k = 0; k < n; ++k) {
        a(k + 1, 0) = -s.D1m(k);
        for (int j = 0; j < n; ++j) a(k + 1, j + 1) = s.Dm(k, j);
    }
    return a;
}

CMatrix assemble_an(const ChebyshevScheme& s) {
    const int n = s.n;
    CMatrix a(n + 1, n + 1);
    a(0, n) = ComplexRect(-s.alpha);
    for (int k = 0; k < n; ++k) {
        a(k + 1, 0) = -s.D1c[k];
        for (int j = 0; j < n; ++j) a(k + 1, j + 1) = s.Dc(k, j);
    }
    return a;
}

Eigen::VectorXcd blowup_vector_float(const ChebyshevScheme& s, std::complex<double> z) {
    Eigen::MatrixXcd a = s.Dm.cast<std::complex<double>>();
    a.diagonal().array() -= z;
    return a.partialPivLu().solve(s.D1m.cast<std::complex<double>>());
}

std::complex<double> delta_n_float(const ChebyshevScheme& s, std::complex<double> z) {
    return z + s.alpha.mid() * blowup_vector_float(s, z)(s.n - 1);
}

std::complex<double> delta_n_prime_float(const ChebyshevScheme& s, std::complex<double> z) {
    Eigen::MatrixXcd a = s.Dm.cast<std::complex<double>>();
    a.diagonal().array() -= z;
    auto lu = a.partialPivLu();
    Eigen::VectorXcd w1 = lu.solve(s.D1m.cast<std::complex<double>>());
    Eigen::VectorXcd w2 = lu.solve(w1);
    return 1.0 + s.alpha.mid() * w2(s.n - 1);
}

}  // namespace wright
