#pragma once

// Test-only oracles, kept independent of the library evaluation paths:
//  - naive_N / naive_D: literal reciprocal-trig summation of the modular
//    series in extended precision (no nome-power algebra);
//  - central_diff: finite-difference derivative;
//  - monomial norms over the ball and the ring by exact piecewise
//    Gauss-Legendre quadrature;
//  - raw ring series at (x, 0) by direct power sums.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace testoracle {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

inline lcplx inv_sq(lcplx z) { return lcplx{1.0L} / (z * z); }

// N(tau) = pi^2 sum_{|n|<=J} [ 1/cos^2(pi(n-1/2)tau) - 1/sin^2(pi(n-1/2)tau) ]
inline cplx naive_N(cplx tau, int J = 30) {
    const long double pi = std::numbers::pi_v<long double>;
    const lcplx t{tau.real(), tau.imag()};
    lcplx sum{0.0L};
    for (int n = -J; n <= J; ++n) {
        const lcplx arg = pi * (static_cast<long double>(n) - 0.5L) * t;
        sum += inv_sq(std::cos(arg)) - inv_sq(std::sin(arg));
    }
    sum *= pi * pi;
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// D(tau) = pi^2 sum_{|n|<=J} [ 1/cos^2(pi n tau) - 1/sin^2(pi(n-1/2)tau) ]
inline cplx naive_D(cplx tau, int J = 30) {
    const long double pi = std::numbers::pi_v<long double>;
    const lcplx t{tau.real(), tau.imag()};
    lcplx sum{0.0L};
    for (int n = -J; n <= J; ++n) {
        const lcplx argc = pi * static_cast<long double>(n) * t;
        const lcplx args = pi * (static_cast<long double>(n) - 0.5L) * t;
        sum += inv_sq(std::cos(argc)) - inv_sq(std::sin(args));
    }
    sum *= pi * pi;
    return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

inline cplx central_diff(const std::function<cplx(cplx)>& f, cplx z, double h) {
    return (f(z + h) - f(z - h)) / (2.0 * h);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
struct GaussLegendre {
    std::vector<double> x, w;

    explicit GaussLegendre(int n) : x(n), w(n) {
        const double pi = std::numbers::pi;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(pi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                const double p = std::legendre(n, t);
                const double pm = std::legendre(n - 1, t);
                const double dp = n * (t * p - pm) / (t * t - 1.0);
                const double dt = p / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            const double pm = std::legendre(n - 1, t);
            const double dp = n * (t * std::legendre(n, t) - pm) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }

    double integrate(const std::function<double(double)>& f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * f(mid + half * x[i]);
        return s * half;
    }
};

// Volume integral of |z1|^{2j} |z2|^{2k} over { s < |z| < 1 } in C^2
// (s = 0: ball). In u = rho1^2, v = rho2^2 this is
// pi^2 integral over { s^2 < u+v < 1, u,v > 0 } of u^j v^k, a piecewise
// polynomial integral that the composite Gauss-Legendre rule captures exactly.
inline double monomial_sq_norm_shell(int j, int k, double s) {
    static const GaussLegendre gl(48);
    const double s2 = s * s;
    auto inner = [&](double u) {
        const double vlo = std::max(0.0, s2 - u);
        const double vhi = 1.0 - u;
        if (vhi <= vlo) return 0.0;
        return gl.integrate([&](double v) { return std::pow(v, k); }, vlo, vhi);
    };
    auto outer = [&](double a, double b) {
        return gl.integrate([&](double u) { return std::pow(u, j) * inner(u); }, a, b);
    };
    const double pi = std::numbers::pi;
    double total = 0.0;
    if (s2 > 0.0 && s2 < 1.0) {
        total = outer(0.0, s2) + outer(s2, 1.0);
    } else {
        total = outer(0.0, 1.0);
    }
    return pi * pi * total;
}

inline double monomial_sq_norm_ball(int j, int k) { return monomial_sq_norm_shell(j, k, 0.0); }

// Direct power sums of the ring series at (x, 0): K, S1, S2, and the
// tangential numerator, each evaluated with per-term std::pow calls.
struct RawRingSums {
    double K = 0.0;
    double S1 = 0.0;
    double S2 = 0.0;
    double T = 0.0;
};

inline RawRingSums raw_ring_sums(double r, double x, int degree) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    RawRingSums out;
    for (int j = 0; j <= degree; ++j) {
        const double gb = (j + 1.0) * (j + 2.0) / pi2 / (1.0 - std::pow(r, 2 * j + 4));
        const double bc = (j + 1.0) * (j + 2.0) * (j + 3.0) / pi2 / (1.0 - std::pow(r, 2 * j + 6));
        const double yp = std::pow(x, 2 * j);
        out.K += gb * yp;
        out.S1 += gb * j * yp;
        out.S2 += gb * j * j * yp;
        out.T += bc * yp;
    }
    return out;
}

// Ring Bergman metric at (x, 0) for direction xi from the raw sums: the
// Levi form of log K contracted with xi (the mixed entry vanishes on the axis).
inline double raw_ring_metric(double r, double x, cplx xi1, cplx xi2, int degree) {
    const RawRingSums s = raw_ring_sums(r, x, degree);
    const double y = x * x;
    const double h11 = (s.K * s.S2 - s.S1 * s.S1) / (y * s.K * s.K);
    const double h22 = s.T / s.K;
    return std::sqrt(std::norm(xi1) * h11 + std::norm(xi2) * h22);
}

}  // namespace testoracle
