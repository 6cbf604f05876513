#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "invmet/bergman.hpp"
#include "oracles.hpp"

using namespace invmet;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

BasisCoefficients basis_for(double r, double x_max, double tol = ring_series_rel_tol) {
    return BasisCoefficients::make(RingDomainSpec{r}, choose_max_degree(r, x_max, tol));
}

double ball_normal(double x) { return std::sqrt(3.0) / (1.0 - x * x); }
double ball_tangential(double x) { return std::sqrt(3.0 / (1.0 - x * x)); }

// Reference values computed with a 40-digit series evaluation at degree 4000.
constexpr double kKernel_r05_x06 = 0.79072725497537056;
constexpr double kNormal_r05_x06 = 2.701749250448532;
constexpr double kTangential_r05_x06 = 2.1448198131516744;
constexpr double kNormal_r03_x05 = 2.3081321753783455;
constexpr double kNormal_r01_x011 = 1.7531845994663985;
constexpr double kCrossA_3_0_r05 = -0.145304015664;
constexpr double kCrossA_10_2_r095 = -253.248913625;

}  // namespace

TEST_CASE("basis renormalization factor") {
    CHECK(basis_renormalization(0, 0, 0.5) == doctest::Approx(4.0 / std::sqrt(15.0)).epsilon(1e-14));
    CHECK(basis_renormalization(0, 0, 0.5) == doctest::Approx(1.0327955589886444).epsilon(1e-13));
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 3; ++k) {
            CHECK(basis_renormalization(j, k, 1e-9) == doctest::Approx(1.0));
            CHECK(basis_renormalization(j, k, 0.7) > 1.0);
        }
    CHECK_THROWS_AS(basis_renormalization(0, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(basis_renormalization(0, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(basis_renormalization(-1, 0, 0.5), std::invalid_argument);
}

TEST_CASE("renormalization squares against quadrature monomial norms") {
    for (const double r : {0.3, 0.6}) {
        for (const auto& [j, k] : {std::pair{0, 0}, {1, 0}, {2, 1}, {0, 3}}) {
            const double nb = testoracle::monomial_sq_norm_ball(j, k);
            const double nr = testoracle::monomial_sq_norm_shell(j, k, r);
            const double drop = 1.0 - std::pow(r, 2 * (j + k) + 4);
            CHECK(rel_err(nr, drop * nb) < 1e-12);
            const double factor = basis_renormalization(j, k, r);
            CHECK(rel_err(factor * factor, nb / nr) < 1e-12);
            // quadrature cross-check of the ball norm itself
            double fact = 1.0;  // j! k! / (j+k+2)!
            for (int t = 2; t <= j + k + 2; ++t) fact *= t;
            double jf = 1.0, kf = 1.0;
            for (int t = 2; t <= j; ++t) jf *= t;
            for (int t = 2; t <= k; ++t) kf *= t;
            CHECK(rel_err(nb, std::numbers::pi * std::numbers::pi * jf * kf / fact) < 1e-12);
        }
    }
}

TEST_CASE("coefficient table invariants") {
    const double pi_sq = std::numbers::pi * std::numbers::pi;
    for (const double r : {0.1, 0.5, 0.9}) {
        const auto A = BasisCoefficients::make(RingDomainSpec{r}, 50);
        for (int j = 0; j <= 50; ++j) {
            CHECK(A.b[j] == doctest::Approx((j + 1.0) * (j + 2.0) / pi_sq).epsilon(1e-15));
            CHECK(A.c[j] == doctest::Approx((j + 1.0) * (j + 2.0) * (j + 3.0) / pi_sq).epsilon(1e-15));
            // strict ordering holds while the r-powers resolve above rounding;
            // past that the quotients collapse to 1 exactly
            const bool resolvable = std::pow(r, 2 * j + 6) > 1e-14;
            CHECK(A.gamma[j] >= A.beta[j]);
            CHECK(A.beta[j] >= 1.0);
            if (resolvable) {
                CHECK(A.gamma[j] > A.beta[j]);
                CHECK(A.beta[j] > 1.0);
            }
            if (j > 0) {
                CHECK(A.gamma[j] <= A.gamma[j - 1]);
                CHECK(A.beta[j] <= A.beta[j - 1]);
                if (resolvable) {
                    CHECK(A.gamma[j] < A.gamma[j - 1]);
                    CHECK(A.beta[j] < A.beta[j - 1]);
                }
            }
        }
    }
    CHECK_THROWS_AS(RingDomainSpec{1.0}, std::invalid_argument);
    CHECK_THROWS_AS(RingDomainSpec{0.0}, std::invalid_argument);
}

TEST_CASE("ring kernel diagonal") {
    // vanishing hole: closed ball form 2/pi^2 (1-y)^-3
    const auto tiny = basis_for(1e-9, 0.6);
    const double want =
        2.0 / (std::numbers::pi * std::numbers::pi) / std::pow(1.0 - 0.36, 3);
    CHECK(rel_err(ring_kernel_diagonal(AxisEvalPoint{0.6}, tiny).value, want) < 1e-12);

    // frozen value and termwise domination of the ball kernel
    const auto A = basis_for(0.5, 0.6);
    const auto K = ring_kernel_diagonal(AxisEvalPoint{0.6}, A);
    CHECK(rel_err(K.value, kKernel_r05_x06) < 1e-13);
    CHECK(K.value > want);
    CHECK(K.tail_bound <= ring_series_rel_tol * K.value);

    // independent direct summation at doubled degree
    const auto raw = testoracle::raw_ring_sums(0.5, 0.6, 2 * A.max_degree);
    CHECK(rel_err(K.value, raw.K) < 1e-13);

    CHECK_THROWS_AS(ring_kernel_diagonal(AxisEvalPoint{0.4}, A), std::invalid_argument);
    // degree too small for the requested tolerance
    const auto small = BasisCoefficients::make(RingDomainSpec{0.5}, 5);
    CHECK_THROWS_AS(ring_kernel_diagonal(AxisEvalPoint{0.9}, small), truncation_error);
}

TEST_CASE("tangential metric: ball limit, frozen value, strictness, lower sandwich") {
    const auto tiny = basis_for(1e-9, 0.6);
    CHECK(rel_err(tangential_metric_ring(AxisEvalPoint{0.6}, tiny).value, ball_tangential(0.6)) <
          1e-12);

    const auto A = basis_for(0.5, 0.97);
    const auto T = tangential_metric_ring(AxisEvalPoint{0.6}, A);
    CHECK(rel_err(T.value, kTangential_r05_x06) < 1e-13);

    const auto [lo, hi] = comparability_bounds(0.5);
    for (int i = 1; i <= 20; ++i) {
        const double x = 0.5 + 0.5 * i / 21.0;
        const double ring = tangential_metric_ring(AxisEvalPoint{x}, A).value;
        CHECK(ring < ball_tangential(x));
        CHECK(ring >= lo * ball_tangential(x));
    }
}

TEST_CASE("normal metric: ball limit, frozen values, raw Levi oracle") {
    const auto tiny = basis_for(1e-9, 0.6);
    CHECK(rel_err(normal_metric_ring(AxisEvalPoint{0.6}, tiny).value, ball_normal(0.6)) < 1e-12);

    const auto A = basis_for(0.5, 0.6);
    CHECK(rel_err(normal_metric_ring(AxisEvalPoint{0.6}, A).value, kNormal_r05_x06) < 1e-13);

    const auto B = basis_for(0.1, 0.2);
    const auto N = normal_metric_ring(AxisEvalPoint{0.11}, B);
    CHECK(rel_err(N.value, kNormal_r01_x011) < 1e-13);
    CHECK(N.value < ball_normal(0.11));

    // double-sum route vs the raw Levi expression K d2K - |dK|^2 at (0.3, 0.5)
    const auto C = basis_for(0.3, 0.5);
    const auto NC = normal_metric_ring(AxisEvalPoint{0.5}, C);
    const double raw = testoracle::raw_ring_metric(0.3, 0.5, 1.0, 0.0, 2 * C.max_degree);
    CHECK(rel_err(NC.value, raw) < 1e-10);
    CHECK(rel_err(NC.value, kNormal_r03_x05) < 1e-13);
}

TEST_CASE("log-kernel hessian: mixed entry vanishes, diagonal matches the metrics") {
    const auto A = basis_for(0.3, 0.5);
    const auto h = ring_log_kernel_hessian(AxisEvalPoint{0.5}, A);
    CHECK(h.h12 == 0.0);
    const double n = normal_metric_ring(AxisEvalPoint{0.5}, A).value;
    const double t = tangential_metric_ring(AxisEvalPoint{0.5}, A).value;
    CHECK(rel_err(std::sqrt(h.h11), n) < 1e-12);
    CHECK(rel_err(std::sqrt(h.h22), t) < 1e-13);
}

TEST_CASE("full metric: decomposition, homogeneity, ball comparison") {
    const auto A = basis_for(0.1, 0.2);
    const AxisEvalPoint pt{0.11};

    const auto n = normal_metric_ring(pt, A);
    const auto t = tangential_metric_ring(pt, A);
    CHECK(full_metric_ring(pt, {complex_t{1.0}, complex_t{0.0}}, A).value == n.value);
    CHECK(full_metric_ring(pt, {complex_t{0.0}, complex_t{1.0}}, A).value == t.value);

    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const std::array<complex_t, 2> xi{complex_t{u(rng), u(rng)}, complex_t{u(rng), u(rng)}};
        const complex_t scale{u(rng), u(rng)};
        const std::array<complex_t, 2> sxi{scale * xi[0], scale * xi[1]};
        const double f = full_metric_ring(pt, xi, A).value;
        CHECK(full_metric_ring(pt, sxi, A).value == doctest::Approx(std::abs(scale) * f).epsilon(1e-13));

        // independent direction-resolved evaluation through the raw series
        const double raw =
            testoracle::raw_ring_metric(0.1, 0.11, xi[0], xi[1], 2 * A.max_degree);
        CHECK(rel_err(f, raw) < 1e-12);
    }

    const std::array<complex_t, 2> diag{complex_t{1.0}, complex_t{1.0}};
    const std::array<complex_t, 2> p{complex_t{0.11}, complex_t{0.0}};
    CHECK(full_metric_ring(pt, diag, A).value < ball_metric(p, diag));
}

TEST_CASE("comparability bounds") {
    const auto [lo, hi] = comparability_bounds(0.5);
    CHECK(lo == doctest::Approx(std::sqrt(15.0) / 4.0).epsilon(1e-15));
    CHECK(hi == doctest::Approx(4.0 / std::sqrt(15.0)).epsilon(1e-15));
    const auto [lo0, hi0] = comparability_bounds(1e-12);
    CHECK(lo0 == doctest::Approx(1.0));
    CHECK(hi0 == doctest::Approx(1.0));
    const auto [lo9, hi9] = comparability_bounds(0.9);
    CHECK(lo9 * hi9 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(comparability_bounds(1.0), std::invalid_argument);
}

TEST_CASE("cross terms are negative for j > k") {
    for (const double r : {0.1, 0.5, 0.9}) {
        const auto A = BasisCoefficients::make(RingDomainSpec{r}, 31);
        for (int j = 1; j <= 30; ++j)
            for (int k = 0; k < j; ++k) CHECK(cross_term_A(j, k, A) < 0.0);
    }
    const auto A05 = BasisCoefficients::make(RingDomainSpec{0.5}, 12);
    CHECK(rel_err(cross_term_A(3, 0, A05), kCrossA_3_0_r05) < 1e-10);
    const auto A95 = BasisCoefficients::make(RingDomainSpec{0.95}, 12);
    CHECK(rel_err(cross_term_A(10, 2, A95), kCrossA_10_2_r095) < 1e-10);
    CHECK_THROWS_AS(cross_term_A(2, 2, A05), std::invalid_argument);
    CHECK_THROWS_AS(cross_term_A(1, 3, A05), std::invalid_argument);
}

TEST_CASE("comparison coefficients: convolution extraction vs closed forms") {
    for (const double r : {0.05, 0.1, 0.2, 0.5}) {
        const auto out = comparison_coefficients(r, 5, 16);
        CHECK(rel_err(out.triple.C0, comparison_C0_closed(r)) < 1e-10);
        CHECK(rel_err(out.triple.C1, comparison_C1_closed(r)) < 1e-10);
        CHECK(rel_err(out.triple.C2, comparison_C2_closed(r)) < 1e-10);
        CHECK(out.triple.C0 < 0.0);
        CHECK(out.triple.C1 < 0.0);
        CHECK(out.coeffs.size() == 5);
    }
    // |C0|/r^4 stays in a narrow band as r -> 0
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const double r : {0.01, 0.02, 0.05, 0.1, 0.15, 0.2}) {
        const double ratio = std::abs(comparison_C0_closed(r)) / std::pow(r, 4);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 10.0);

    CHECK_THROWS_AS(comparison_coefficients(0.5, 2, 16), std::invalid_argument);
    CHECK_THROWS_AS(comparison_coefficients(0.5, 5, 6), std::invalid_argument);
}

TEST_CASE("ball metric closed form") {
    const std::array<complex_t, 2> zero{complex_t{0.0}, complex_t{0.0}};
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const std::array<complex_t, 2> xi{complex_t{u(rng), u(rng)}, complex_t{u(rng), u(rng)}};
        const double nrm = std::sqrt(std::norm(xi[0]) + std::norm(xi[1]));
        CHECK(ball_metric(zero, xi) == doctest::Approx(std::sqrt(3.0) * nrm).epsilon(1e-14));
    }

    const std::array<complex_t, 2> p{complex_t{0.5}, complex_t{0.0}};
    const std::array<complex_t, 2> t{complex_t{0.0}, complex_t{1.0}};
    CHECK(ball_metric(p, t) == doctest::Approx(2.0).epsilon(1e-14));

    for (const double x : {0.2, 0.5, 0.8}) {
        const std::array<complex_t, 2> px{complex_t{x}, complex_t{0.0}};
        const std::array<complex_t, 2> n{complex_t{1.0}, complex_t{0.0}};
        CHECK(ball_metric(px, n) == doctest::Approx(ball_normal(x)).epsilon(1e-14));
        CHECK(ball_metric(px, t) == doctest::Approx(ball_tangential(x)).epsilon(1e-14));
    }

    // one dimension: sqrt(2)/(1-|p|^2) at xi = 1
    const std::array<complex_t, 1> p1{complex_t{0.3}};
    const std::array<complex_t, 1> xi1{complex_t{1.0}};
    CHECK(ball_metric(p1, xi1) == doctest::Approx(std::sqrt(2.0) / (1.0 - 0.09)).epsilon(1e-14));

    const std::array<complex_t, 2> bad{complex_t{1.0}, complex_t{0.0}};
    CHECK_THROWS_AS(ball_metric(bad, t), std::invalid_argument);
}

TEST_CASE("axis reduction: unitary invariance of the full metric") {
    const double x = 0.55;
    const auto A = basis_for(0.3, x + 0.01);
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0), ang(0.0, 6.28);

    const std::array<complex_t, 2> xi0{complex_t{0.3, -0.2}, complex_t{0.8, 0.1}};
    const auto base = reduce_to_axis({complex_t{x}, complex_t{0.0}}, xi0);
    CHECK(base.x == doctest::Approx(x));
    CHECK(std::abs(base.direction[0] - xi0[0]) < 1e-15);
    const double ref = full_metric_ring(AxisEvalPoint{base.x}, base.direction, A).value;

    for (int i = 0; i < 12; ++i) {
        // push (p, xi) through a random unitary [[a, b], [-conj b, conj a]];
        // |p| is preserved and the metric must be too
        const complex_t a =
            std::cos(ang(rng) / 2.0) * std::exp(complex_t{0.0, ang(rng)});
        const complex_t b = std::sqrt(std::max(0.0, 1.0 - std::norm(a))) *
                            std::exp(complex_t{0.0, ang(rng)});
        const std::array<complex_t, 2> p0{complex_t{x}, complex_t{0.0}};
        std::array<complex_t, 2> p{a * p0[0] + b * p0[1], -std::conj(b) * p0[0] + std::conj(a) * p0[1]};
        std::array<complex_t, 2> xi{a * xi0[0] + b * xi0[1],
                                    -std::conj(b) * xi0[0] + std::conj(a) * xi0[1]};
        if (i % 2) {
            std::swap(p[0], p[1]);
            std::swap(xi[0], xi[1]);
        }
        const auto red = reduce_to_axis(p, xi);
        CHECK(red.x == doctest::Approx(x).epsilon(1e-14));
        const double nrm_in = std::sqrt(std::norm(xi[0]) + std::norm(xi[1]));
        const double nrm_out =
            std::sqrt(std::norm(red.direction[0]) + std::norm(red.direction[1]));
        CHECK(nrm_out == doctest::Approx(nrm_in).epsilon(1e-14));
        const double v = full_metric_ring(AxisEvalPoint{red.x}, red.direction, A).value;
        CHECK(v == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK_THROWS_AS(reduce_to_axis({complex_t{0.0}, complex_t{0.0}}, xi0), std::invalid_argument);
}

TEST_CASE("series tail certificates are conservative under degree doubling") {
    for (const auto& [r, x] : {std::pair{0.2, 0.5}, {0.2, 0.8}, {0.6, 0.65}, {0.6, 0.9}}) {
        {
            const int J = choose_max_degree(r, x);
            const auto A = BasisCoefficients::make(RingDomainSpec{r}, J);
            const auto B = BasisCoefficients::make(RingDomainSpec{r}, 2 * J);
            const AxisEvalPoint pt{x};
            const auto ka = ring_kernel_diagonal(pt, A);
            const auto kb = ring_kernel_diagonal(pt, B);
            CHECK(std::abs(ka.value - kb.value) <=
                  ka.tail_bound + 64.0 * std::numeric_limits<double>::epsilon() * ka.value);
            const auto na = normal_metric_ring(pt, A);
            const auto nb = normal_metric_ring(pt, B);
            CHECK(std::abs(na.value - nb.value) <=
                  na.error_bound.value() +
                      64.0 * std::numeric_limits<double>::epsilon() * na.value);
        }
    }
}
