#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "invmet/bergman.hpp"
#include "invmet/covering.hpp"
#include "invmet/modular_lambda.hpp"

// Parameter sweeps over the metric evaluators and their deterministic
// emission. All numbers are printed in shortest round-trip decimal form so
// identical inputs produce byte-identical files on every platform.

namespace invmet {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

enum class SweepQuantity {
    kobayashi_punctured_disk,
    kobayashi_punctured_plane,
    bergman_ring_T,
    bergman_ring_N,
    bergman_ball,
};

inline const char* to_string(SweepQuantity q) {
    switch (q) {
        case SweepQuantity::kobayashi_punctured_disk: return "kobayashi_punctured_disk";
        case SweepQuantity::kobayashi_punctured_plane: return "kobayashi_punctured_plane";
        case SweepQuantity::bergman_ring_T: return "bergman_ring_T";
        case SweepQuantity::bergman_ring_N: return "bergman_ring_N";
        case SweepQuantity::bergman_ball: return "bergman_ball";
    }
    return "?";
}

struct SweepSpec {
    SweepQuantity quantity;
    std::vector<real_t> grid;  // delta values (kobayashi) or x values (bergman)
    real_t r = 0.5;            // ring inner radius
    std::array<complex_t, 2> direction{complex_t{1.0}, complex_t{0.0}};
    std::string direction_label = "N";
    real_t tol = 1e-12;             // inversion residual tolerance
    real_t series_rel_tol = 1e-14;  // ring series tolerance
    int max_index = 0;              // modular cutoff; 0 selects the adaptive policy
};

struct SweepRow {
    std::string domain;
    real_t param1 = 0.0;
    real_t param2 = 0.0;
    bool has_param2 = false;
    std::string dir;
    real_t value = std::numeric_limits<real_t>::quiet_NaN();
    real_t error_bound = std::numeric_limits<real_t>::quiet_NaN();
    std::string error;  // nonempty: evaluation failed at this grid point
};

inline void validate(const SweepSpec& spec) {
    if (spec.grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (const real_t g : spec.grid) {
        switch (spec.quantity) {
            case SweepQuantity::kobayashi_punctured_disk:
                if (!(g > 0.0) || !(g < 1.0))
                    throw std::invalid_argument("sweep: punctured-disk grid needs 0 < delta < 1");
                break;
            case SweepQuantity::kobayashi_punctured_plane:
                if (!(g > 0.0) || !(g <= cusp_threshold))
                    throw std::invalid_argument(
                        "sweep: punctured-plane grid needs 0 < delta <= cusp threshold");
                break;
            case SweepQuantity::bergman_ring_T:
            case SweepQuantity::bergman_ring_N:
                if (!(g > spec.r) || !(g < 1.0))
                    throw std::invalid_argument("sweep: ring grid needs r < x < 1");
                break;
            case SweepQuantity::bergman_ball:
                if (!(g >= 0.0) || !(g < 1.0))
                    throw std::invalid_argument("sweep: ball grid needs 0 <= x < 1");
                break;
        }
    }
    if (!(spec.r > 0.0) || !(spec.r < 1.0))
        throw std::invalid_argument("sweep: r must lie in (0,1)");
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    validate(spec);
    std::vector<SweepRow> rows;
    rows.reserve(spec.grid.size());

    const bool ring = spec.quantity == SweepQuantity::bergman_ring_T ||
                      spec.quantity == SweepQuantity::bergman_ring_N;
    BasisCoefficients coeffs{};
    if (ring) {
        real_t x_max = 0.0;
        for (const real_t g : spec.grid) x_max = std::max(x_max, g);
        coeffs = BasisCoefficients::make(RingDomainSpec{spec.r},
                                         choose_max_degree(spec.r, x_max, spec.series_rel_tol));
    }

    for (const real_t g : spec.grid) {
        SweepRow row;
        row.param1 = g;
        row.dir = spec.direction_label;
        try {
            switch (spec.quantity) {
                case SweepQuantity::kobayashi_punctured_disk: {
                    const auto s =
                        kobayashi_punctured_disk(PuncturedDiskPoint{complex_t{g}}, spec.direction[0]);
                    row.domain = s.domain;
                    row.value = s.value;
                    row.error_bound = s.error_bound.value();
                    break;
                }
                case SweepQuantity::kobayashi_punctured_plane: {
                    const auto policy =
                        spec.max_index > 0
                            ? TruncationPolicy{spec.max_index, 1e-14, 1.0}
                            : TruncationPolicy::adaptive(std::log(16.0 / g) / std::numbers::pi);
                    const auto s =
                        kobayashi_c_minus_two_points(complex_t{g}, spec.direction[0], spec.tol, policy);
                    row.domain = s.domain;
                    row.value = s.value;
                    row.error_bound = s.error_bound.value();
                    break;
                }
                case SweepQuantity::bergman_ring_T:
                case SweepQuantity::bergman_ring_N: {
                    row.domain = "ring";
                    row.param1 = spec.r;
                    row.param2 = g;
                    row.has_param2 = true;
                    const AxisEvalPoint pt{g};
                    const auto s = spec.quantity == SweepQuantity::bergman_ring_T
                                       ? tangential_metric_ring(pt, coeffs, spec.series_rel_tol)
                                       : normal_metric_ring(pt, coeffs, spec.series_rel_tol);
                    row.value = s.value;
                    row.error_bound = s.error_bound.value();
                    break;
                }
                case SweepQuantity::bergman_ball: {
                    row.domain = "ball";
                    const std::array<complex_t, 2> p{complex_t{g}, complex_t{0.0}};
                    row.value = ball_metric(p, spec.direction);
                    row.error_bound = 0.0;
                    break;
                }
            }
        } catch (const std::exception& e) {
            row.domain = row.domain.empty() ? to_string(spec.quantity) : row.domain;
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "domain,param1,param2,dir,value,error_bound\n";
    for (const auto& r : rows) {
        os << r.domain << ',' << format_double(r.param1) << ','
           << (r.has_param2 ? format_double(r.param2) : std::string{}) << ',' << r.dir << ','
           << format_double(r.value) << ',' << format_double(r.error_bound) << '\n';
    }
}

inline nlohmann::json rows_to_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o;
        o["domain"] = r.domain;
        o["param1"] = r.param1;
        if (r.has_param2) o["param2"] = r.param2;
        o["dir"] = r.dir;
        if (std::isnan(r.value))
            o["value"] = nullptr;
        else
            o["value"] = r.value;
        if (std::isnan(r.error_bound))
            o["error_bound"] = nullptr;
        else
            o["error_bound"] = r.error_bound;
        if (!r.error.empty()) o["error"] = r.error;
        arr.push_back(std::move(o));
    }
    return arr;
}

enum class EmitFormat { csv, json };

/// Write rows to `path` (LF line endings, fixed column order, shortest
/// round-trip floats): identical rows produce byte-identical files.
inline void emit_rows(const std::vector<SweepRow>& rows, EmitFormat format,
                      const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    if (format == EmitFormat::csv)
        write_csv(os, rows);
    else
        os << rows_to_json(rows).dump(2) << '\n';
    os.flush();
    if (!os) throw std::runtime_error("emit: write to '" + path + "' failed");
}

}  // namespace invmet
