#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "invmet/types.hpp"

// Evaluation of the elliptic modular function
//
//   lambda(tau) = N(tau)/D(tau),
//   N(tau) = pi^2 sum_n [ 1/cos^2(pi(n-1/2)tau) - 1/sin^2(pi(n-1/2)tau) ],
//   D(tau) = pi^2 sum_n [ 1/cos^2(pi n tau)     - 1/sin^2(pi(n-1/2)tau) ],
//
// normalized so that D(tau) -> pi^2 and lambda(tau) e^{-i pi tau} -> 16 as
// Im tau -> inf. Every reciprocal trig term is evaluated through the nome
// w = e^{i pi tau}: with u = w^m (m = |2n-1| for the half-integer arguments,
// m = 2|n| for the integer ones),
//
//   1/cos^2 = 4u/(1+u)^2,    1/sin^2 = -4u/(1-u)^2,
//
// which keeps |u| <= 1 for every n instead of overflowing in cos/sin, and
// makes the exponential decay of the terms explicit. Tail bounds use
// |1 -+ u| >= 1 - |w| and geometric summation of the neglected |w|^m.

namespace invmet {

/// Series cutoff and certification policy for the modular series. min_im is
/// the smallest Im tau accepted; the exponential sandwich on |sin|, |cos|
/// behind the tail bounds needs Im of the half-integer arguments above
/// (ln 2)/2, so min_im must exceed that floor.
struct TruncationPolicy {
    int max_index;
    real_t tail_tolerance;
    real_t min_im;

    static constexpr real_t min_im_floor = 0.5 * std::numbers::ln2;

    TruncationPolicy(int max_index_, real_t tail_tolerance_, real_t min_im_)
        : max_index(max_index_), tail_tolerance(tail_tolerance_), min_im(min_im_) {
        if (max_index < 1)
            throw std::invalid_argument("TruncationPolicy: max_index must be >= 1");
        if (!(tail_tolerance > 0.0))
            throw std::invalid_argument("TruncationPolicy: tail_tolerance must be positive");
        if (!(min_im > min_im_floor))
            throw std::invalid_argument("TruncationPolicy: min_im must exceed (ln 2)/2");
    }

    /// Smallest cutoff whose tail bounds (for N, D and both derivatives) meet
    /// tail_tolerance at Im tau = im_tau. A 10% headroom on im_tau keeps the
    /// policy valid when an iteration drifts slightly below the seed height.
    static TruncationPolicy adaptive(real_t im_tau, real_t tail_tolerance = 1e-14,
                                     real_t min_im = 1.0);
};

/// Partial sum with an a posteriori tail certificate.
struct SeriesValue {
    complex_t value;
    real_t tail_bound;
    int terms_used;
};

struct LambdaInversionResult {
    UpperHalfPlanePoint tau;
    real_t residual;   // |lambda(tau) - target| at return, <= requested tol
    int iterations;
};

namespace detail {

inline constexpr real_t pi = std::numbers::pi;
inline constexpr real_t pi_sq = pi * pi;

// u = e^{2iz} with Im z >= 0
inline complex_t inv_cos_sq(complex_t u) {
    const complex_t s = 1.0 + u;
    return 4.0 * u / (s * s);
}
inline complex_t inv_sin_sq(complex_t u) {
    const complex_t s = 1.0 - u;
    return -4.0 * u / (s * s);
}
inline complex_t inv_cos_sq_du(complex_t u) {
    const complex_t s = 1.0 + u;
    return 4.0 * (1.0 - u) / (s * s * s);
}
inline complex_t inv_sin_sq_du(complex_t u) {
    const complex_t s = 1.0 - u;
    return -4.0 * (1.0 + u) / (s * s * s);
}

// sum_{m >= M} m a^m, 0 < a < 1
inline real_t geom_tail_weighted(real_t a, int M) {
    return std::pow(a, M) * (M - (M - 1) * a) / ((1.0 - a) * (1.0 - a));
}

// Tail bounds for the four series truncated at |n| <= J; a = |e^{i pi tau}|.
// The neglected indices carry powers a^m with m >= 2J+1; the prefactors bound
// the rational term shapes above uniformly over |u| <= a^2 (K3 also covers
// the derivative shapes).
inline real_t tail_N(int J, real_t a) {
    const real_t K = (1.0 + a * a) / ((1.0 - a * a) * (1.0 - a * a));
    return 16.0 * pi_sq * K * std::pow(a, 2 * J + 1) / (1.0 - a * a);
}
inline real_t tail_D(int J, real_t a) {
    const real_t d = 1.0 - a * a;
    return 16.0 * pi_sq * std::pow(a, 2 * J + 1) / (d * d * d);
}
inline real_t tail_N_prime(int J, real_t a) {
    const real_t K3 = (1.0 + a) / ((1.0 - a) * (1.0 - a) * (1.0 - a));
    return 16.0 * pi_sq * pi * K3 * geom_tail_weighted(a, 2 * J + 1);
}
inline real_t tail_D_prime(int J, real_t a) {
    return 0.5 * tail_N_prime(J, a);
}

inline std::vector<complex_t> nome_powers(complex_t nome, int upto) {
    std::vector<complex_t> p(static_cast<std::size_t>(upto) + 1);
    p[0] = 1.0;
    for (int k = 1; k <= upto; ++k) p[k] = p[k - 1] * nome;
    return p;
}

inline complex_t nome_of(const UpperHalfPlanePoint& tau) {
    return std::exp(complex_t{0.0, pi} * tau.value());
}

inline void require_in_range(const UpperHalfPlanePoint& tau, const TruncationPolicy& policy) {
    if (tau.im < policy.min_im)
        throw std::invalid_argument("modular series: Im tau below policy.min_im");
}

enum class Series { N, D, NPrime, DPrime };

inline real_t series_tail(Series s, int J, real_t a) {
    switch (s) {
        case Series::N: return tail_N(J, a);
        case Series::D: return tail_D(J, a);
        case Series::NPrime: return tail_N_prime(J, a);
        case Series::DPrime: return tail_D_prime(J, a);
    }
    return 0.0;
}

// Shared evaluation core. Terms are paired as (n, 1-n), whose half-integer
// arguments have equal |w|-power, and accumulated from the largest |n|
// downward so the smallest contributions enter the sum first. The leftover
// index -J is added up front (it is the smallest term of all).
inline SeriesValue eval_series(Series s, const UpperHalfPlanePoint& tau,
                               const TruncationPolicy& policy) {
    require_in_range(tau, policy);
    const int J = policy.max_index;
    const real_t a = std::exp(-pi * tau.im);
    const real_t tail = series_tail(s, J, a);
    if (!(tail <= policy.tail_tolerance))
        throw truncation_error("modular series: tail bound exceeds tail_tolerance; raise max_index");

    const complex_t w = nome_of(tau);
    const auto P = nome_powers(w, 2 * J + 1);
    const complex_t ipi{0.0, pi};

    auto term = [&](int n) -> complex_t {
        const int m = std::abs(2 * n - 1);
        const complex_t u = P[static_cast<std::size_t>(m)];
        switch (s) {
            case Series::N:
                return pi_sq * (inv_cos_sq(u) - inv_sin_sq(u));
            case Series::D: {
                const complex_t v = P[static_cast<std::size_t>(2 * std::abs(n))];
                return pi_sq * (inv_cos_sq(v) - inv_sin_sq(u));
            }
            case Series::NPrime:
                return pi_sq * (inv_cos_sq_du(u) - inv_sin_sq_du(u)) * (ipi * static_cast<real_t>(m) * u);
            case Series::DPrime: {
                const int mc = 2 * std::abs(n);
                const complex_t v = P[static_cast<std::size_t>(mc)];
                return pi_sq * (inv_cos_sq_du(v) * (ipi * static_cast<real_t>(mc) * v) -
                                inv_sin_sq_du(u) * (ipi * static_cast<real_t>(m) * u));
            }
        }
        return {};
    };

    complex_t sum = term(-J);
    for (int n = J; n >= 1; --n) sum += term(n) + term(1 - n);
    return {sum, tail, 2 * J + 1};
}

}  // namespace detail

inline TruncationPolicy TruncationPolicy::adaptive(real_t im_tau, real_t tail_tolerance,
                                                   real_t min_im) {
    if (!(im_tau >= min_im))
        throw std::invalid_argument("TruncationPolicy::adaptive: im_tau below min_im");
    const real_t a = std::exp(-detail::pi * std::max(min_im_floor * 1.001, 0.9 * im_tau));
    constexpr int cap = 100000;
    for (int J = 1; J <= cap; ++J) {
        const real_t worst = std::max({detail::tail_N(J, a), detail::tail_D(J, a),
                                       detail::tail_N_prime(J, a), detail::tail_D_prime(J, a)});
        if (worst <= tail_tolerance) return {J, tail_tolerance, min_im};
    }
    throw truncation_error("TruncationPolicy::adaptive: no cutoff meets tail_tolerance");
}

inline SeriesValue eval_N(const UpperHalfPlanePoint& tau, const TruncationPolicy& policy) {
    return detail::eval_series(detail::Series::N, tau, policy);
}
inline SeriesValue eval_D(const UpperHalfPlanePoint& tau, const TruncationPolicy& policy) {
    return detail::eval_series(detail::Series::D, tau, policy);
}
inline SeriesValue eval_N_prime(const UpperHalfPlanePoint& tau, const TruncationPolicy& policy) {
    return detail::eval_series(detail::Series::NPrime, tau, policy);
}
inline SeriesValue eval_D_prime(const UpperHalfPlanePoint& tau, const TruncationPolicy& policy) {
    return detail::eval_series(detail::Series::DPrime, tau, policy);
}

/// lambda = N/D with first-order quotient propagation of the two tail bounds.
/// Refuses to divide when |D| is not resolved an order of magnitude above its
/// own tail bound.
inline SeriesValue eval_lambda(const UpperHalfPlanePoint& tau, const TruncationPolicy& policy) {
    const SeriesValue N = eval_N(tau, policy);
    const SeriesValue D = eval_D(tau, policy);
    const real_t dmag = std::abs(D.value);
    if (!(dmag >= 10.0 * D.tail_bound))
        throw truncation_error("eval_lambda: denominator not resolved above its tail bound");
    const complex_t lam = N.value / D.value;
    const real_t bound = (N.tail_bound + std::abs(lam) * D.tail_bound) / dmag;
    return {lam, bound, N.terms_used};
}

/// lambda' = N'/D - lambda D'/D, termwise-differentiated series with
/// first-order propagation of all four tail bounds.
inline SeriesValue eval_lambda_prime(const UpperHalfPlanePoint& tau,
                                     const TruncationPolicy& policy) {
    const SeriesValue N = eval_N(tau, policy);
    const SeriesValue D = eval_D(tau, policy);
    const SeriesValue Np = eval_N_prime(tau, policy);
    const SeriesValue Dp = eval_D_prime(tau, policy);
    const real_t dmag = std::abs(D.value);
    if (!(dmag >= 10.0 * D.tail_bound))
        throw truncation_error("eval_lambda_prime: denominator not resolved above its tail bound");

    const complex_t lam = N.value / D.value;
    const complex_t lp = Np.value / D.value - lam * (Dp.value / D.value);

    const real_t lam_bound = (N.tail_bound + std::abs(lam) * D.tail_bound) / dmag;
    const real_t first = (Np.tail_bound + std::abs(Np.value) * D.tail_bound / dmag) / dmag;
    const real_t second = (lam_bound * std::abs(Dp.value) + std::abs(lam) * Dp.tail_bound +
                           std::abs(lam) * std::abs(Dp.value) * D.tail_bound / dmag) /
                          dmag;
    return {lp, first + second, N.terms_used};
}

/// Targets with modulus above this are outside the cusp regime the seed
/// tau_0 = log(target/16)/(i pi) is valid for; below it the seed lands at
/// Im tau > 2.3 where Newton stays on the correct branch.
inline constexpr real_t cusp_threshold = 1e-2;
inline constexpr int newton_iteration_cap = 50;

/// Solve lambda(tau) = target for tau near the cusp. The seed inverts the
/// asymptotic lambda ~ 16 e^{i pi tau}, taking arg(target) in [0, 2pi) so
/// Re tau lands in [0, 2); Newton refines until |lambda(tau) - target| <= tol.
inline LambdaInversionResult invert_lambda_near_zero(complex_t target, real_t tol,
                                                     const TruncationPolicy& policy) {
    const real_t mag = std::abs(target);
    if (!(mag > 0.0))
        throw std::invalid_argument("invert_lambda_near_zero: target must be nonzero");
    if (mag > cusp_threshold)
        throw std::invalid_argument("invert_lambda_near_zero: |target| above cusp_threshold");
    if (!(tol > 0.0))
        throw std::invalid_argument("invert_lambda_near_zero: tol must be positive");

    real_t theta = std::arg(target);
    if (theta < 0.0) theta += 2.0 * detail::pi;
    complex_t tau{theta / detail::pi, std::log(16.0 / mag) / detail::pi};

    real_t residual = std::numeric_limits<real_t>::infinity();
    int used = 0;
    for (int it = 0; it < newton_iteration_cap; ++it) {
        const UpperHalfPlanePoint q{tau};
        detail::require_in_range(q, policy);
        const SeriesValue lam = eval_lambda(q, policy);
        residual = std::abs(lam.value - target);
        used = it;
        if (residual <= tol) break;
        const SeriesValue lp = eval_lambda_prime(q, policy);
        if (!(std::abs(lp.value) > 10.0 * lp.tail_bound))
            throw convergence_error("invert_lambda_near_zero: lambda' not resolved along the path");
        tau -= (lam.value - target) / lp.value;
        if (!(tau.imag() > 0.0))
            throw convergence_error("invert_lambda_near_zero: iterate left the upper half-plane");
    }
    if (!(residual <= tol))
        throw convergence_error("invert_lambda_near_zero: no convergence within iteration cap");

    // lambda is 2-periodic; report the representative with Re in [0, 2)
    real_t re = std::fmod(tau.real(), 2.0);
    if (re < 0.0) re += 2.0;
    const UpperHalfPlanePoint q{re, tau.imag()};
    residual = std::abs(eval_lambda(q, policy).value - target);
    if (!(residual <= tol))
        throw convergence_error("invert_lambda_near_zero: residual regressed after normalization");
    return {q, residual, used};
}

/// Kobayashi metric on C minus {0,1} in the cusp regimes: F = |xi|/(2 M |lambda'(q)|)
/// with q = lambda^{-1}(p), Im q = M. Points near 1 are routed through the
/// puncture swap z -> 1-z, which preserves tangent length. The error bound
/// combines the series tail on lambda' with the inversion offset
/// dq = residual/|lambda'|, moved through dlogF = -dM/M - dlog|lambda'| using
/// |lambda''/lambda'| <= pi in the cusp regime (lambda' ~ 16 i pi e^{i pi tau}).
inline MetricSample kobayashi_c_minus_two_points(complex_t p, complex_t xi, real_t tol,
                                                 const TruncationPolicy& policy) {
    if (p == complex_t{0.0} || p == complex_t{1.0})
        throw std::invalid_argument("kobayashi_c_minus_two_points: p must avoid the punctures");
    complex_t target;
    if (std::abs(p) <= cusp_threshold)
        target = p;
    else if (std::abs(1.0 - p) <= cusp_threshold)
        target = 1.0 - p;
    else
        throw std::invalid_argument(
            "kobayashi_c_minus_two_points: p outside the supported cusp neighborhoods of 0 and 1");

    const LambdaInversionResult inv = invert_lambda_near_zero(target, tol, policy);
    const SeriesValue lp = eval_lambda_prime(inv.tau, policy);
    const real_t lp_mag = std::abs(lp.value);
    if (!(lp_mag > 0.0))
        throw convergence_error("kobayashi_c_minus_two_points: lambda' vanished at the preimage");

    const real_t M = inv.tau.im;
    const real_t value = std::abs(xi) / (2.0 * M * lp_mag);
    const real_t dq = inv.residual / lp_mag;
    const real_t rel = lp.tail_bound / lp_mag + dq * (1.0 / M + detail::pi);

    MetricSample s;
    s.domain = "c_minus_0_1";
    s.base_point = {p, complex_t{0.0}};
    s.direction = {xi, complex_t{0.0}};
    s.value = value;
    s.truncation = TruncationInfo{policy.max_index, policy.tail_tolerance, policy.min_im};
    s.error_bound = value * rel;
    return s;
}

}  // namespace invmet
