#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "invmet/modular_lambda.hpp"
#include "invmet/types.hpp"

// Kobayashi metric through covering maps: the disk normalization of the upper
// half-plane, the generic covering evaluation F = |m'(q)|/|pi'(q)| |xi|, the
// exact punctured-disk formula, and inclusion bounds for discretely punctured
// planar domains.

namespace invmet {

/// Biholomorphism of the upper half-plane onto the unit disk sending q to 0,
/// z -> (z - q)/(z - conj q). Its derivative magnitude at q is 1/(2 Im q).
/// Rejection of Im q <= 0 is carried by the UpperHalfPlanePoint type.
inline MobiusMap mobius_to_disk(const UpperHalfPlanePoint& q) {
    const complex_t qc = q.value();
    return MobiusMap{std::conj(qc), qc};
}

/// Generic covering-map evaluation at a preimage q: the metric equals
/// q_to_disk_deriv_mag / |cover_deriv_at_q| * xi_norm.
inline real_t kobayashi_via_covering(complex_t cover_deriv_at_q, real_t q_to_disk_deriv_mag,
                                     real_t xi_norm) {
    if (cover_deriv_at_q == complex_t{0.0})
        throw std::invalid_argument("kobayashi_via_covering: covering derivative must be nonzero");
    if (q_to_disk_deriv_mag < 0.0 || xi_norm < 0.0)
        throw std::invalid_argument("kobayashi_via_covering: magnitudes must be nonnegative");
    return q_to_disk_deriv_mag / std::abs(cover_deriv_at_q) * xi_norm;
}

/// Exact Kobayashi metric of the punctured unit disk:
/// F(p, xi) = |xi| / (2 |p| log(1/|p|)). No truncation; error bound 0.
inline MetricSample kobayashi_punctured_disk(const PuncturedDiskPoint& p, complex_t xi) {
    const real_t a = std::abs(p.value);
    MetricSample s;
    s.domain = "punctured_disk";
    s.base_point = {p.value, complex_t{0.0}};
    s.direction = {xi, complex_t{0.0}};
    s.value = std::abs(xi) / (2.0 * a * std::log(1.0 / a));
    s.error_bound = 0.0;
    return s;
}

struct PuncturedDomainBounds {
    real_t lower;
    real_t upper;
};

/// Two-sided bounds near a puncture of a discretely punctured domain, from the
/// inclusions  disk(p_j, R) minus {p_j}  inside the domain  inside
/// C minus {p_j, p_j'}:
///   upper — punctured-disk value after rescaling disk(p_j, R) to the unit disk;
///   lower — the C minus two points value after the affine normalization
///           sending p_j -> 0 and the second-nearest puncture p_j' -> 1, with
///           the chain-rule factor 1/|p_j' - p_j| applied through xi.
/// The comparison pair is the two punctures nearest to p (the tightest
/// inclusion available). hole_radius is caller-supplied and must keep the
/// punctured disk clear of every other puncture.
inline PuncturedDomainBounds kobayashi_punctured_domain_bounds(
    complex_t p, std::span<const complex_t> punctures, real_t hole_radius, complex_t xi,
    real_t tol = 1e-12, real_t tail_tolerance = 1e-14) {
    if (punctures.size() < 2)
        throw std::invalid_argument("kobayashi_punctured_domain_bounds: need at least 2 punctures");
    if (!(hole_radius > 0.0))
        throw std::invalid_argument("kobayashi_punctured_domain_bounds: hole_radius must be positive");

    std::size_t jn = 0, js = 1;
    if (std::abs(p - punctures[js]) < std::abs(p - punctures[jn])) std::swap(jn, js);
    for (std::size_t k = 2; k < punctures.size(); ++k) {
        const real_t d = std::abs(p - punctures[k]);
        if (d < std::abs(p - punctures[jn])) {
            js = jn;
            jn = k;
        } else if (d < std::abs(p - punctures[js])) {
            js = k;
        }
    }
    const complex_t pj = punctures[jn];
    const complex_t pjs = punctures[js];
    const real_t dist = std::abs(p - pj);
    if (dist == 0.0)
        throw std::invalid_argument("kobayashi_punctured_domain_bounds: p lies on a puncture");
    if (!(dist < hole_radius))
        throw std::invalid_argument(
            "kobayashi_punctured_domain_bounds: p outside the admissible disk about its nearest puncture");
    for (std::size_t k = 0; k < punctures.size(); ++k) {
        if (k == jn) continue;
        if (std::abs(punctures[k] - pj) < hole_radius)
            throw std::invalid_argument(
                "kobayashi_punctured_domain_bounds: hole disk contains another puncture");
    }

    // upper: rescale disk(p_j, R) to the unit disk, w = (z - p_j)/R
    const real_t delta_rel = dist / hole_radius;
    const real_t upper = (std::abs(xi) / hole_radius) /
                         (2.0 * delta_rel * std::log(1.0 / delta_rel));

    // lower: affine chart z -> (z - p_j)/(p_j' - p_j)
    const complex_t span_v = pjs - pj;
    const complex_t p_mapped = (p - pj) / span_v;
    const complex_t xi_mapped = xi / span_v;
    const real_t t = std::min(std::abs(p_mapped), std::abs(1.0 - p_mapped));
    if (!(t > 0.0) || t > cusp_threshold)
        throw std::invalid_argument(
            "kobayashi_punctured_domain_bounds: normalized point outside the supported cusp regimes");
    const auto policy =
        TruncationPolicy::adaptive(std::log(16.0 / t) / std::numbers::pi, tail_tolerance);
    const MetricSample lower_sample = kobayashi_c_minus_two_points(p_mapped, xi_mapped, tol, policy);

    return {lower_sample.value, upper};
}

}  // namespace invmet
