// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "graphforge/graph.hpp"
#include "graphforge/partition.hpp"
#include "graphforge/rng.hpp"

namespace graphforge {

struct WaxmanParams {
    double alpha = 1.0;  // length-scale factor, (0, 1]
    double beta = 1.0;   // density factor, (0, 1]
};

struct RggParams {
    std::uint64_t n = 0;
    double r = 0;            // threshold radius (also sets the grid pitch)
    int dim = 2;             // 2 or 3
    bool torus = false;      // periodic boundary
    std::optional<WaxmanParams> waxman;  // probabilistic connections
};

struct RggResult {
    Graph graph;
    std::vector<double> coords;  // dim values per emitted point, cell-major
    int dim = 2;
};

/// Random geometric graph on points uniform in the unit cube, grid-partitioned
/// into cells of side >= r so only neighboring cells need comparisons.
/// In Waxman mode every cell pair is screened with an upper-bound Bernoulli
/// pass plus rejection. Atoms are cells; a partition emits the points and
/// edges owned by its cell range.
RggResult rgg(const RggParams& params, const RngStream& base,
              std::optional<Partition> part = {});

/// Same edge rule evaluated on caller-supplied points (ids = input order,
/// edges sorted); used for fixed-point checks and the brute-force oracle.
Graph rgg_from_points(const RggParams& params, std::span<const double> coords);

struct RhgParams {
    std::uint64_t n = 0;
    double alpha = 1.0;  // radial dispersion, > 1/2
    double R = 0;        // disk radius = distance threshold
};

struct RhgResult {
    Graph graph;
    std::vector<double> radius;  // per emitted point, band-major
    std::vector<double> angle;
    std::uint64_t bands = 0;
};

/// Threshold random hyperbolic graph: radii follow the alpha-controlled
/// near-rim density, angles are uniform, and u ~ v iff d_H(u, v) <= R.
/// The disk is cut into ceil(log2 n) concentric bands; each point scans its
/// band and the bands above it within an over-estimated angular window.
/// Atoms are bands.
RhgResult rhg_threshold(const RhgParams& params, const RngStream& base,
                        std::optional<Partition> part = {});

/// cosh d = cosh r_a cosh r_b - sinh r_a sinh r_b cos(angle difference),
/// clamped below at 1 before acosh.
double hyperbolic_distance(double r_a, double angle_a, double r_b, double angle_b);

namespace detail {

/// Largest angular separation at which a point at radius `ru` can reach a
/// point at radius >= band_inner within hyperbolic distance threshold_R.
double rhg_angular_envelope(double ru, double band_inner, double cosh_R);

/// Band boundaries: widths halve toward the rim, b_j = R (1 - 2^-j).
std::vector<double> rhg_band_radii(std::uint64_t n, double R);

}  // namespace detail

}  // namespace graphforge
