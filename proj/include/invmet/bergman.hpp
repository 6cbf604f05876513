#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "invmet/types.hpp"

// Bergman kernel and metric on the unit ball B^n and on the ring domain
// Omega_r = { r < |z| < 1 } in C^2. The ring kernel is expanded in the
// renormalized monomial basis of the ball,
//
//   |a'_{jk}|^2 = |a_{jk}|^2 / (1 - r^{2(j+k)+4}),   |a_{jk}|^2 = (j+k+2)!/(pi^2 j! k!),
//
// which on the axis point z0 = (x, 0) reduces every quantity to power series
// in y = x^2 with the coefficient families
//
//   b_j = (j+1)(j+2)/pi^2,          gamma_j = 1/(1 - r^{2j+4}),   b'_j = gamma_j b_j,
//   c_j = (j+1)(j+2)(j+3)/pi^2,     beta_j  = 1/(1 - r^{2j+6}),   c'_j = beta_j c_j.
//
// All series are truncated with geometric ratio-test certificates; the ball
// closed forms (sum b_j y^j = 2/(pi^2 (1-y)^3) and its relatives) supply the
// coefficient envelopes for the tails.

namespace invmet {

struct RingDomainSpec {
    real_t inner_radius;

    explicit RingDomainSpec(real_t r) : inner_radius(r) {
        if (!(r > 0.0) || !(r < 1.0))
            throw std::invalid_argument("RingDomainSpec: inner radius must lie in (0,1)");
    }
};

/// Axis evaluation point z0 = (x, 0). Admissibility against the inner radius
/// (r < x) is checked by each operation against its coefficient table.
struct AxisEvalPoint {
    real_t x;

    explicit AxisEvalPoint(real_t x_) : x(x_) {
        if (!(x > 0.0) || !(x < 1.0))
            throw std::invalid_argument("AxisEvalPoint: need 0 < x < 1");
    }
};

/// Renormalization factor between ball and ring orthonormal monomials,
/// a'_{jk} = a_{jk} / sqrt(1 - r^{2(j+k)+4}); always > 1, -> 1 as r -> 0.
inline real_t basis_renormalization(int j, int k, real_t r) {
    if (j < 0 || k < 0)
        throw std::invalid_argument("basis_renormalization: degrees must be nonnegative");
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("basis_renormalization: r must lie in (0,1)");
    return 1.0 / std::sqrt(1.0 - std::pow(r, 2 * (j + k) + 4));
}

/// Precomputed coefficient tables for one inner radius, degrees 0..max_degree.
struct BasisCoefficients {
    real_t r;
    int max_degree;
    std::vector<real_t> b;      // (j+1)(j+2)/pi^2
    std::vector<real_t> c;      // (j+1)(j+2)(j+3)/pi^2
    std::vector<real_t> gamma;  // 1/(1 - r^{2j+4})
    std::vector<real_t> beta;   // 1/(1 - r^{2j+6})

    static BasisCoefficients make(const RingDomainSpec& spec, int max_degree) {
        if (max_degree < 1)
            throw std::invalid_argument("BasisCoefficients: max_degree must be >= 1");
        BasisCoefficients A;
        A.r = spec.inner_radius;
        A.max_degree = max_degree;
        const std::size_t n = static_cast<std::size_t>(max_degree) + 1;
        A.b.resize(n);
        A.c.resize(n);
        A.gamma.resize(n);
        A.beta.resize(n);
        constexpr real_t pi_sq = std::numbers::pi * std::numbers::pi;
        for (int j = 0; j <= max_degree; ++j) {
            const real_t jj = static_cast<real_t>(j);
            A.b[j] = (jj + 1.0) * (jj + 2.0) / pi_sq;
            A.c[j] = (jj + 1.0) * (jj + 2.0) * (jj + 3.0) / pi_sq;
            A.gamma[j] = 1.0 / (1.0 - std::pow(A.r, 2 * j + 4));
            A.beta[j] = 1.0 / (1.0 - std::pow(A.r, 2 * j + 6));
        }
        return A;
    }
};

/// Partial sum with a certified nonnegative tail bound.
struct SumValue {
    real_t value;
    real_t tail_bound;
    int terms_used;
};

struct CoefficientTriple {
    real_t C0;
    real_t C1;
    real_t C2;
    real_t r;
};

namespace bergman_detail {

inline constexpr real_t pi_sq = std::numbers::pi * std::numbers::pi;
inline constexpr real_t pi_4 = pi_sq * pi_sq;

inline void require_axis(const AxisEvalPoint& pt, const BasisCoefficients& A) {
    if (!(pt.x > A.r))
        throw std::invalid_argument("ring evaluation: axis point must satisfy x > r");
}

// first neglected term `head` (>= every later term times ratio^k), geometric ratio
inline real_t geom_tail(real_t head, real_t ratio, const char* what) {
    if (!(ratio < 1.0))
        throw truncation_error(std::string(what) + ": ratio test inconclusive; raise max_degree");
    return head / (1.0 - ratio);
}

inline void check_rel(real_t tail, real_t sum, real_t rel_tol, const char* what) {
    if (!(tail <= rel_tol * sum))
        throw truncation_error(std::string(what) + ": tail bound not met at max_degree");
}

// sum_{j<=J} gamma_j b_j y^j; coefficients decay ratio <= y (J+4)/(J+2) past J
inline SumValue kernel_sum(const BasisCoefficients& A, real_t y, real_t rel_tol) {
    const int J = A.max_degree;
    real_t sum = 0.0, yp = 1.0;
    for (int j = 0; j <= J; ++j, yp *= y) sum += A.gamma[j] * A.b[j] * yp;
    const real_t head = A.gamma[J] * (J + 2.0) * (J + 3.0) / pi_sq * yp;
    const real_t tail = geom_tail(head, y * (J + 4.0) / (J + 2.0), "kernel series");
    check_rel(tail, sum, rel_tol, "kernel series");
    return {sum, tail, J + 1};
}

// sum beta_j c_j y^j; ratio <= y (J+5)/(J+2)
inline SumValue tangential_numerator(const BasisCoefficients& A, real_t y, real_t rel_tol) {
    const int J = A.max_degree;
    real_t sum = 0.0, yp = 1.0;
    for (int j = 0; j <= J; ++j, yp *= y) sum += A.beta[j] * A.c[j] * yp;
    const real_t head = A.beta[J] * (J + 2.0) * (J + 3.0) * (J + 4.0) / pi_sq * yp;
    const real_t tail = geom_tail(head, y * (J + 5.0) / (J + 2.0), "tangential series");
    check_rel(tail, sum, rel_tol, "tangential series");
    return {sum, tail, J + 1};
}

// sum gamma_j b_j j^s y^j for s = 1, 2; ratio <= y (J+4)/(J+2) * ((J+2)/(J+1))^s
inline SumValue moment_sum(const BasisCoefficients& A, real_t y, int s, real_t rel_tol) {
    const int J = A.max_degree;
    real_t sum = 0.0, yp = y;
    for (int j = 1; j <= J; ++j, yp *= y)
        sum += A.gamma[j] * A.b[j] * std::pow(static_cast<real_t>(j), s) * yp;
    const real_t head =
        A.gamma[J] * (J + 2.0) * (J + 3.0) / pi_sq * std::pow(J + 1.0, s) * yp;
    real_t ratio = y * (J + 4.0) / (J + 2.0);
    for (int t = 0; t < s; ++t) ratio *= (J + 2.0) / (J + 1.0);
    const real_t tail = geom_tail(head, ratio, "moment series");
    // relative check deferred to callers: moments enter differences
    (void)rel_tol;
    return {sum, tail, J + 1};
}

// Levi numerator sum_{l<J} w_l y^l with w_l = 1/2 sum_{j+k=l+1} b'_j b'_k (k-j)^2,
// each w_l an exact (complete) convolution. Neglected coefficients are bounded
// by the ball envelope w_l <= gamma_0^2 (12/pi^4) binom(l+7,7).
inline SumValue levi_numerator(const BasisCoefficients& A, real_t y, real_t rel_tol) {
    const int J = A.max_degree;
    std::vector<real_t> g(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) g[j] = A.gamma[j] * A.b[j];

    real_t sum = 0.0, yp = 1.0;
    for (int l = 0; l < J; ++l, yp *= y) {
        real_t wl = 0.0;
        for (int j = 0; j <= l + 1; ++j) {
            const int k = l + 1 - j;
            const real_t d = static_cast<real_t>(k - j);
            wl += g[j] * g[k] * d * d;
        }
        sum += 0.5 * wl * yp;
    }
    real_t binom = 1.0;  // binom(J+7, 7)
    for (int t = 1; t <= 7; ++t) binom *= (J + t) / static_cast<real_t>(t);
    const real_t head = A.gamma[0] * A.gamma[0] * 12.0 / pi_4 * binom * yp;
    const real_t tail = geom_tail(head, y * (J + 8.0) / (J + 1.0), "Levi numerator");
    check_rel(tail, sum, rel_tol, "Levi numerator");
    return {sum, tail, J};
}

inline MetricSample make_ring_sample(const BasisCoefficients& A, const AxisEvalPoint& pt,
                                     std::array<complex_t, 2> xi, real_t value, real_t rel_err,
                                     real_t rel_tol) {
    MetricSample s;
    s.domain = "ring";
    s.base_point = {complex_t{pt.x}, complex_t{0.0}};
    s.direction = xi;
    s.value = value;
    s.truncation = TruncationInfo{A.max_degree, rel_tol, 0.0};
    s.error_bound = value * rel_err;
    return s;
}

}  // namespace bergman_detail

/// Default relative series tolerance for the ring evaluations.
inline constexpr real_t ring_series_rel_tol = 1e-14;

/// Smallest degree whose first neglected coefficient certifies below rel_tol
/// of the running sum for every coefficient family in play: the kernel terms
/// (j+1)(j+2), the tangential terms (j+1)(j+2)(j+3), and the Levi convolution
/// whose coefficients are enveloped by binom(l+7, 7) (the ball value of the
/// symmetrized double series). Ball sums serve as conservative lower bounds
/// and one order of headroom is kept for the downstream certificates.
inline int choose_max_degree(real_t r, real_t x, real_t rel_tol = ring_series_rel_tol) {
    if (!(r > 0.0) || !(r < 1.0) || !(x > 0.0) || !(x < 1.0))
        throw std::invalid_argument("choose_max_degree: need r, x in (0,1)");
    const real_t y = x * x;
    const real_t r4 = r * r * r * r;
    const real_t g0 = 1.0 / (1.0 - r4);
    const real_t budget = 0.1 * rel_tol;
    const real_t lb_levi = 12.0 / bergman_detail::pi_4 / std::pow(1.0 - y, 8);
    constexpr int cap = 500000;
    real_t sum_k = 0.0, sum_t = 0.0, yp = 1.0, binom = 1.0;  // binom(j+7, 7)
    for (int j = 0; j <= cap; ++j) {
        sum_k += (j + 1.0) * (j + 2.0) / bergman_detail::pi_sq * yp;
        sum_t += (j + 1.0) * (j + 2.0) * (j + 3.0) / bergman_detail::pi_sq * yp;
        // worst coefficient ratio across the families past j
        const real_t ratio = y * (j + 9.0) / (j + 1.0);
        if (j >= 8 && ratio < 1.0) {
            const real_t geom = 1.0 / (1.0 - ratio);
            const real_t head_k =
                geom * g0 * (j + 2.0) * (j + 3.0) / bergman_detail::pi_sq * yp * y;
            const real_t head_t =
                geom * g0 * (j + 2.0) * (j + 3.0) * (j + 4.0) / bergman_detail::pi_sq * yp * y;
            const real_t head_l = geom * g0 * g0 * 12.0 / bergman_detail::pi_4 * binom * yp;
            if (head_k <= budget * sum_k && head_t <= budget * sum_t && head_l <= budget * lb_levi)
                return j;
        }
        yp *= y;
        binom *= (j + 8.0) / (j + 1.0);
    }
    throw truncation_error("choose_max_degree: no degree certifies below rel_tol");
}

/// Closed-form Bergman metric of the unit ball B^n:
/// F(p, xi) = sqrt(n+1) ( |<p,xi>|^2/(1-|p|^2)^2 + |xi|^2/(1-|p|^2) )^{1/2}.
inline real_t ball_metric(std::span<const complex_t> p, std::span<const complex_t> xi) {
    if (p.empty() || p.size() != xi.size())
        throw std::invalid_argument("ball_metric: p and xi must be nonempty of equal dimension");
    real_t p_sq = 0.0, xi_sq = 0.0;
    complex_t inner{0.0};
    for (std::size_t i = 0; i < p.size(); ++i) {
        p_sq += std::norm(p[i]);
        xi_sq += std::norm(xi[i]);
        inner += p[i] * std::conj(xi[i]);
    }
    if (!(p_sq < 1.0)) throw std::invalid_argument("ball_metric: need |p| < 1");
    const real_t n1 = static_cast<real_t>(p.size()) + 1.0;
    const real_t denom = 1.0 - p_sq;
    return std::sqrt(n1 * (std::norm(inner) / (denom * denom) + xi_sq / denom));
}

/// On-diagonal ring kernel K(z0, z0) = sum gamma_j b_j x^{2j} at z0 = (x, 0).
inline SumValue ring_kernel_diagonal(const AxisEvalPoint& pt, const BasisCoefficients& coeffs,
                                     real_t rel_tol = ring_series_rel_tol) {
    bergman_detail::require_axis(pt, coeffs);
    return bergman_detail::kernel_sum(coeffs, pt.x * pt.x, rel_tol);
}

/// Tangential metric on the ring at (x, 0):
/// F_T = sqrt( sum beta_j c_j x^{2j} / sum gamma_j b_j x^{2j} ).
inline MetricSample tangential_metric_ring(const AxisEvalPoint& pt,
                                           const BasisCoefficients& coeffs,
                                           real_t rel_tol = ring_series_rel_tol) {
    bergman_detail::require_axis(pt, coeffs);
    const real_t y = pt.x * pt.x;
    const SumValue num = bergman_detail::tangential_numerator(coeffs, y, rel_tol);
    const SumValue den = bergman_detail::kernel_sum(coeffs, y, rel_tol);
    const real_t value = std::sqrt(num.value / den.value);
    const real_t rel = 0.5 * (num.tail_bound / num.value + den.tail_bound / den.value);
    return bergman_detail::make_ring_sample(coeffs, pt, {complex_t{0.0}, complex_t{1.0}}, value,
                                            rel, rel_tol);
}

/// Normal metric on the ring at (x, 0), from the symmetrized double series
/// F_N^2 K^2 = 1/2 sum_{j,k} b'_j b'_k (k-j)^2 x^{2(j+k)-2}.
inline MetricSample normal_metric_ring(const AxisEvalPoint& pt, const BasisCoefficients& coeffs,
                                       real_t rel_tol = ring_series_rel_tol) {
    bergman_detail::require_axis(pt, coeffs);
    const real_t y = pt.x * pt.x;
    const SumValue num = bergman_detail::levi_numerator(coeffs, y, rel_tol);
    const SumValue den = bergman_detail::kernel_sum(coeffs, y, rel_tol);
    const real_t value = std::sqrt(num.value) / den.value;
    const real_t rel = 0.5 * num.tail_bound / num.value + den.tail_bound / den.value;
    return bergman_detail::make_ring_sample(coeffs, pt, {complex_t{1.0}, complex_t{0.0}}, value,
                                            rel, rel_tol);
}

/// Full ring metric at (x, 0) for an arbitrary direction, through the
/// orthogonal decomposition F(xi)^2 = |xi_1|^2 F_N^2 + |xi_2|^2 F_T^2
/// (the mixed log-kernel derivative vanishes on the axis).
inline MetricSample full_metric_ring(const AxisEvalPoint& pt, std::array<complex_t, 2> xi,
                                     const BasisCoefficients& coeffs,
                                     real_t rel_tol = ring_series_rel_tol) {
    const MetricSample n = normal_metric_ring(pt, coeffs, rel_tol);
    const MetricSample t = tangential_metric_ring(pt, coeffs, rel_tol);
    const real_t value =
        std::sqrt(std::norm(xi[0]) * n.value * n.value + std::norm(xi[1]) * t.value * t.value);
    const real_t rel_n = n.error_bound.value_or(0.0) / (n.value > 0.0 ? n.value : 1.0);
    const real_t rel_t = t.error_bound.value_or(0.0) / (t.value > 0.0 ? t.value : 1.0);
    MetricSample s = bergman_detail::make_ring_sample(coeffs, pt, xi, value,
                                                      std::max(rel_n, rel_t), rel_tol);
    return s;
}

/// Second derivatives of log K on the axis (the Levi form entries). h12 is
/// identically zero there: every kernel term carries a factor z2 or conj z2.
/// h11 goes through the moment sums S_m = sum b'_j j^m x^{2j},
/// h11 = (S0 S2 - S1^2)/(x^2 S0^2); h22 = (sum c'_j x^{2j})/S0.
struct LogKernelHessian {
    real_t h11;
    real_t h12;
    real_t h22;
};

inline LogKernelHessian ring_log_kernel_hessian(const AxisEvalPoint& pt,
                                                const BasisCoefficients& coeffs,
                                                real_t rel_tol = ring_series_rel_tol) {
    bergman_detail::require_axis(pt, coeffs);
    const real_t y = pt.x * pt.x;
    const SumValue s0 = bergman_detail::kernel_sum(coeffs, y, rel_tol);
    const SumValue s1 = bergman_detail::moment_sum(coeffs, y, 1, rel_tol);
    const SumValue s2 = bergman_detail::moment_sum(coeffs, y, 2, rel_tol);
    const SumValue t = bergman_detail::tangential_numerator(coeffs, y, rel_tol);
    LogKernelHessian h;
    h.h11 = (s0.value * s2.value - s1.value * s1.value) / (y * s0.value * s0.value);
    h.h12 = 0.0;
    h.h22 = t.value / s0.value;
    return h;
}

/// Two-sided comparability factors of the ring metric against the ball,
/// (sqrt(1-r^4), 1/sqrt(1-r^4)); the d = r^2 specialization of the
/// removed-compact comparison.
inline std::pair<real_t, real_t> comparability_bounds(real_t r) {
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("comparability_bounds: r must lie in (0,1)");
    const real_t lo = std::sqrt(1.0 - r * r * r * r);
    return {lo, 1.0 / lo};
}

/// Cross term of the tangential comparison,
/// A_{jk} = c_j b_k (beta_j - gamma_k) + c_k b_j (beta_k - gamma_j), j > k >= 0.
/// Contract: negative for every admissible (j, k) and every r in (0,1).
/// The gamma/beta gaps are evaluated through the power differences,
/// beta_j - gamma_k = (r^{2j+6} - r^{2k+4}) beta_j gamma_k, so the sign
/// survives when both quotients round to 1.
inline real_t cross_term_A(int j, int k, const BasisCoefficients& coeffs) {
    if (!(j > k) || k < 0)
        throw std::invalid_argument("cross_term_A: need j > k >= 0");
    if (j > coeffs.max_degree)
        throw std::invalid_argument("cross_term_A: j exceeds the coefficient table");
    const real_t r = coeffs.r;
    const real_t gap_jk = (std::pow(r, 2 * j + 6) - std::pow(r, 2 * k + 4)) * coeffs.beta[j] *
                          coeffs.gamma[k];
    const real_t gap_kj = (std::pow(r, 2 * k + 6) - std::pow(r, 2 * j + 4)) * coeffs.beta[k] *
                          coeffs.gamma[j];
    return coeffs.c[j] * coeffs.b[k] * gap_jk + coeffs.c[k] * coeffs.b[j] * gap_kj;
}

/// Closed forms of the first three coefficients of the normal-direction
/// comparison polynomial (1-y)^2 W(y) - 6 G(y)^2 = sum C_l y^l.
inline real_t comparison_C0_closed(real_t r) {
    const real_t r2 = r * r, r4 = r2 * r2, r6 = r4 * r2;
    return -24.0 / bergman_detail::pi_4 * (r4 - r6) / ((1.0 - r6) * (1.0 - r4) * (1.0 - r4));
}
inline real_t comparison_C1_closed(real_t r) {
    const real_t r2 = r * r, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
    return -192.0 / bergman_detail::pi_4 * r6 * (1.0 - r2) /
           ((1.0 - r4) * (1.0 - r8) * (1.0 - r6));
}
inline real_t comparison_C2_closed(real_t r) {
    const real_t r2 = r * r, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
    const real_t r10 = r8 * r2, r12 = r8 * r4, r14 = r12 * r2;
    const real_t num = 24.0 * r4 *
                       (3.0 - 2.0 * r2 - 37.0 * r4 - 66.0 * r6 - 96.0 * r8 - 69.0 * r10 -
                        34.0 * r12 + r14);
    const real_t den = (1.0 + r2) * (1.0 + r2 + r4 + r6 + r8) * (r6 - 1.0) *
                       (1.0 + r2 + r4) * (r8 - 1.0);
    return num / (den * bergman_detail::pi_4);
}

struct ComparisonCoefficients {
    CoefficientTriple triple;
    std::vector<real_t> coeffs;  // C_0 .. C_{num_coeffs-1}
};

/// Extract C_l for l < num_coeffs by exact polynomial convolution of the
/// coefficient tables (no floating-point differentiation at x = 0). Every
/// extracted coefficient is a complete finite convolution. The tables enter
/// in deviation form, gamma_j b_j = b_j + e_j with e_j = b_j r^{2j+4}/(1-r^{2j+4}):
/// the pure-ball convolution satisfies (1-y)^2 W - 6 G^2 = 0 identically and
/// is dropped, which removes the O(1) cancellation that would otherwise bury
/// the O(r^4) coefficients.
inline ComparisonCoefficients comparison_coefficients(real_t r, int num_coeffs, int max_degree) {
    if (num_coeffs < 3)
        throw std::invalid_argument("comparison_coefficients: need num_coeffs >= 3");
    if (max_degree < num_coeffs + 2)
        throw std::invalid_argument("comparison_coefficients: max_degree too small to isolate the requested coefficients");
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("comparison_coefficients: r must lie in (0,1)");
    std::vector<real_t> b(static_cast<std::size_t>(max_degree) + 1);
    std::vector<real_t> e(static_cast<std::size_t>(max_degree) + 1);
    for (int j = 0; j <= max_degree; ++j) {
        b[j] = (j + 1.0) * (j + 2.0) / bergman_detail::pi_sq;
        const real_t rp = std::pow(r, 2 * j + 4);
        e[j] = b[j] * rp / (1.0 - rp);
    }

    auto w = [&](int l) -> real_t {  // deviation part of sum_{j+k=l+1} g_j g_k (k-j)^2
        if (l < 0) return 0.0;
        real_t acc = 0.0;
        for (int j = 0; j <= l + 1; ++j) {
            const int k = l + 1 - j;
            const real_t d = static_cast<real_t>(k - j);
            acc += (e[j] * b[k] + b[j] * e[k] + e[j] * e[k]) * d * d;
        }
        return acc;
    };
    auto gsq = [&](int l) -> real_t {  // deviation part of sum_{j+k=l} g_j g_k
        real_t acc = 0.0;
        for (int j = 0; j <= l; ++j)
            acc += e[j] * b[l - j] + b[j] * e[l - j] + e[j] * e[l - j];
        return acc;
    };

    ComparisonCoefficients out;
    out.coeffs.resize(static_cast<std::size_t>(num_coeffs));
    for (int l = 0; l < num_coeffs; ++l)
        out.coeffs[l] = w(l) - 2.0 * w(l - 1) + w(l - 2) - 6.0 * gsq(l);
    out.triple = {out.coeffs[0], out.coeffs[1], out.coeffs[2], r};
    return out;
}

/// Unitary reduction of an off-axis point to (|p|, 0); the ring and the ball
/// are invariant under the rotation and the direction transforms alike.
struct AxisReduction {
    real_t x;
    std::array<complex_t, 2> direction;
};

inline AxisReduction reduce_to_axis(std::array<complex_t, 2> p, std::array<complex_t, 2> xi) {
    const real_t n = std::sqrt(std::norm(p[0]) + std::norm(p[1]));
    if (!(n > 0.0))
        throw std::invalid_argument("reduce_to_axis: undefined at the origin");
    const complex_t u0 = std::conj(p[0]) / n;
    const complex_t u1 = std::conj(p[1]) / n;
    return {n, {u0 * xi[0] + u1 * xi[1], (-p[1] * xi[0] + p[0] * xi[1]) / n}};
}

}  // namespace invmet
