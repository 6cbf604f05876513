#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace invmet {

using real_t = double;
using complex_t = std::complex<double>;

/// Thrown when a series evaluation cannot certify its tail below the
/// requested tolerance at the given cutoff. Raising the cutoff is the
/// caller's remedy.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an iterative solve exhausts its iteration budget or leaves
/// its certified region.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A point of the upper half-plane, Im > 0 enforced at construction.
struct UpperHalfPlanePoint {
    real_t re;
    real_t im;

    UpperHalfPlanePoint(real_t re_, real_t im_) : re(re_), im(im_) {
        if (!(im > 0.0))
            throw std::invalid_argument("UpperHalfPlanePoint: Im must be positive");
    }
    explicit UpperHalfPlanePoint(complex_t tau)
        : UpperHalfPlanePoint(tau.real(), tau.imag()) {}

    complex_t value() const { return {re, im}; }
};

/// A point of the punctured unit disk, 0 < |value| < 1.
struct PuncturedDiskPoint {
    complex_t value;

    explicit PuncturedDiskPoint(complex_t p) : value(p) {
        const real_t a = std::abs(p);
        if (!(a > 0.0) || !(a < 1.0))
            throw std::invalid_argument("PuncturedDiskPoint: need 0 < |p| < 1");
    }
};

/// Moebius map z -> (z - zero)/(z - pole), zero != pole.
struct MobiusMap {
    complex_t pole;
    complex_t zero;

    MobiusMap(complex_t pole_, complex_t zero_) : pole(pole_), zero(zero_) {
        if (pole == zero)
            throw std::invalid_argument("MobiusMap: zero and pole must differ");
    }

    complex_t operator()(complex_t z) const { return (z - zero) / (z - pole); }

    complex_t derivative(complex_t z) const {
        const complex_t d = z - pole;
        return (zero - pole) / (d * d);
    }
};

/// Snapshot of the truncation a value was produced with. For the modular
/// series, max_index is the two-sided cutoff |n| <= max_index and min_im the
/// evaluation floor; for power-series domains, max_index is the degree cutoff
/// and tail_tolerance the relative tolerance (min_im unused, 0).
struct TruncationInfo {
    int max_index = 0;
    real_t tail_tolerance = 0.0;
    real_t min_im = 0.0;
};

/// Universal output record of a metric evaluation. Planar domains use the
/// first component of base_point/direction; the second stays zero.
struct MetricSample {
    std::string domain;
    std::array<complex_t, 2> base_point{};
    std::array<complex_t, 2> direction{};
    real_t value = 0.0;
    std::optional<TruncationInfo> truncation;  // unset: closed form, no truncation
    std::optional<real_t> error_bound;         // absolute; 0 for exact values
};

}  // namespace invmet
