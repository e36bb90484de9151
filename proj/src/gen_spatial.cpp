// SPDX-License-Identifier: Apache-2.0
#include "graphforge/gen_spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "graphforge/gen_basic.hpp"
#include "graphforge/sampling.hpp"

namespace graphforge {

namespace {

constexpr std::uint64_t kCellPointsTag = fnv1a64("rgg_cell_points");
constexpr std::uint64_t kCellPairTag = fnv1a64("rgg_cell_pair");
constexpr std::uint64_t kBandPointsTag = fnv1a64("rhg_band_points");
constexpr std::uint64_t kMassSplitTag = fnv1a64("mass_split");

// ---- RGG ----------------------------------------------------------------

struct GridSpec {
    std::uint64_t g = 1;   // cells per axis
    double side = 1.0;
    int dim = 2;
    bool torus = false;

    std::uint64_t cells() const {
        std::uint64_t c = 1;
        for (int i = 0; i < dim; ++i) c *= g;
        return c;
    }
    void decode(std::uint64_t cell, std::uint64_t* lat) const {
        for (int i = dim - 1; i >= 0; --i) {
            lat[i] = cell % g;
            cell /= g;
        }
    }
    std::uint64_t encode(const std::uint64_t* lat) const {
        std::uint64_t c = 0;
        for (int i = 0; i < dim; ++i) c = c * g + lat[i];
        return c;
    }
};

GridSpec make_grid(const RggParams& p) {
    if (p.n == 0 || !(p.r > 0)) throw InfeasibleError("rgg: need n >= 1 and r > 0");
    if (p.dim != 2 && p.dim != 3) throw InfeasibleError("rgg: dimension must be 2 or 3");
    if (p.waxman) {
        if (!(p.waxman->alpha > 0) || p.waxman->alpha > 1 || !(p.waxman->beta > 0) ||
            p.waxman->beta > 1)
            throw InfeasibleError("rgg: waxman parameters must be in (0, 1]");
    }
    GridSpec grid;
    grid.dim = p.dim;
    grid.torus = p.torus;
    grid.g = p.r >= 1.0 ? 1 : std::max<std::uint64_t>(1, static_cast<std::uint64_t>(1.0 / p.r));
    grid.side = 1.0 / static_cast<double>(grid.g);  // side >= r by construction
    return grid;
}

double axis_delta(double d, bool torus) {
    d = std::abs(d);
    if (torus) d = std::min(d, 1.0 - d);
    return d;
}

double dist_sq(std::span<const double> a, std::span<const double> b, int dim, bool torus) {
    double s = 0;
    for (int i = 0; i < dim; ++i) {
        const double d = axis_delta(a[i] - b[i], torus);
        s += d * d;
    }
    return s;
}

// Smallest possible distance between points of two cells.
double cell_min_dist(const GridSpec& grid, const std::uint64_t* la, const std::uint64_t* lb) {
    double s = 0;
    for (int i = 0; i < grid.dim; ++i) {
        double gap = std::abs(static_cast<double>(la[i]) - static_cast<double>(lb[i]));
        if (grid.torus) gap = std::min(gap, static_cast<double>(grid.g) - gap);
        if (gap > 1) s += (gap - 1) * grid.side * ((gap - 1) * grid.side);
    }
    return std::sqrt(s);
}

// Lattice neighbors (Chebyshev distance <= 1) with a larger cell id.
std::vector<std::uint64_t> upper_neighbors(const GridSpec& grid, std::uint64_t cell) {
    std::uint64_t lat[3] = {0, 0, 0};
    grid.decode(cell, lat);
    std::vector<std::uint64_t> out;
    const int span = grid.g == 1 ? 0 : 1;
    const int zspan = grid.dim == 3 ? span : 0;
    const auto g = static_cast<std::int64_t>(grid.g);
    for (int dx = -span; dx <= span; ++dx)
        for (int dy = -span; dy <= span; ++dy)
            for (int dz = -zspan; dz <= zspan; ++dz) {
                const std::int64_t d[3] = {dx, dy, dz};
                std::uint64_t nb[3] = {0, 0, 0};
                bool valid = true;
                for (int i = 0; i < grid.dim; ++i) {
                    std::int64_t x = static_cast<std::int64_t>(lat[i]) + d[i];
                    if (grid.torus) {
                        x = (x + g) % g;
                    } else if (x < 0 || x >= g) {
                        valid = false;
                        break;
                    }
                    nb[i] = static_cast<std::uint64_t>(x);
                }
                if (!valid) continue;
                const std::uint64_t c = grid.encode(nb);
                if (c > cell) out.push_back(c);
            }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Points of one cell, generated from the cell's own substream.
void cell_points(const GridSpec& grid, const RngStream& base, std::uint64_t cell,
                 std::uint64_t count, std::vector<double>& coords) {
    std::uint64_t lat[3] = {0, 0, 0};
    grid.decode(cell, lat);
    RngStream rng = base.child(kCellPointsTag, cell);
    for (std::uint64_t i = 0; i < count; ++i)
        for (int a = 0; a < grid.dim; ++a)
            coords.push_back((static_cast<double>(lat[a]) + rng.next_double()) * grid.side);
}

double waxman_length_scale(int dim, bool torus) {
    const double l = std::sqrt(static_cast<double>(dim));
    return torus ? l / 2 : l;
}

}  // namespace

RggResult rgg(const RggParams& params, const RngStream& base, std::optional<Partition> part) {
    const GridSpec grid = make_grid(params);
    const std::uint64_t cells = grid.cells();

    // Per-cell occupancy, consistent across all partitions.
    std::vector<std::uint64_t> bounds(cells + 1);
    for (std::uint64_t i = 0; i <= cells; ++i) bounds[i] = i;
    const auto counts = sample_with_replacement_split(params.n, bounds, base);
    std::vector<std::uint64_t> offset(cells + 1, 0);
    for (std::uint64_t c = 0; c < cells; ++c) offset[c + 1] = offset[c] + counts[c];

    const IndexRange own = partition_atoms(part, cells);

    // Materialize the cells this partition must read. Threshold mode touches
    // own cells plus lattice neighbors; Waxman mode screens every cell pair.
    std::vector<std::vector<double>> pts(cells);
    auto ensure_points = [&](std::uint64_t c) {
        if (counts[c] > 0 && pts[c].empty()) {
            pts[c].reserve(counts[c] * grid.dim);
            cell_points(grid, base, c, counts[c], pts[c]);
        }
    };

    RggResult out;
    out.dim = grid.dim;
    out.graph.n = params.n;
    const double r_sq = params.r * params.r;
    const double len_scale =
        params.waxman ? waxman_length_scale(grid.dim, grid.torus) * params.waxman->alpha : 0;

    auto point = [&](std::uint64_t c, std::uint64_t i) {
        return std::span<const double>(pts[c]).subspan(i * grid.dim, grid.dim);
    };

    if (!params.waxman) {
        for (std::uint64_t c = own.lo; c < own.hi; ++c) {
            ensure_points(c);
            // intra-cell pairs
            for (std::uint64_t i = 0; i < counts[c]; ++i)
                for (std::uint64_t j = i + 1; j < counts[c]; ++j)
                    if (dist_sq(point(c, i), point(c, j), grid.dim, grid.torus) <= r_sq)
                        out.graph.edges.push_back({offset[c] + i, offset[c] + j});
            // cross pairs against higher-id neighbor cells
            for (std::uint64_t nb : upper_neighbors(grid, c)) {
                if (counts[nb] == 0) continue;
                ensure_points(nb);
                for (std::uint64_t i = 0; i < counts[c]; ++i)
                    for (std::uint64_t j = 0; j < counts[nb]; ++j)
                        if (dist_sq(point(c, i), point(nb, j), grid.dim, grid.torus) <= r_sq)
                            out.graph.edges.push_back({offset[c] + i, offset[nb] + j});
            }
        }
    } else {
        const double beta = params.waxman->beta;
        std::uint64_t lat_a[3], lat_b[3];
        for (std::uint64_t c = own.lo; c < own.hi; ++c) {
            if (counts[c] == 0) continue;
            ensure_points(c);
            grid.decode(c, lat_a);
            for (std::uint64_t cb = c; cb < cells; ++cb) {
                if (counts[cb] == 0) continue;
                grid.decode(cb, lat_b);
                const double bound =
                    beta * std::exp(-cell_min_dist(grid, lat_a, lat_b) / len_scale);
                const std::uint64_t region =
                    cb == c ? counts[c] * (counts[c] - 1) / 2 : counts[c] * counts[cb];
                if (region == 0) continue;
                ensure_points(cb);
                RngStream rng = base.child(kCellPairTag, c * cells + cb);
                for (std::uint64_t cand : bernoulli_skip({0, region}, bound, rng)) {
                    std::uint64_t i, j;
                    if (cb == c) {
                        const Edge e = detail::triangle_unrank(cand, counts[c]);
                        i = e.u;
                        j = e.v;
                    } else {
                        i = cand / counts[cb];
                        j = cand % counts[cb];
                    }
                    const double d =
                        std::sqrt(dist_sq(point(c, i), point(cb, j), grid.dim, grid.torus));
                    const double accept = beta * std::exp(-d / len_scale) / bound;
                    if (rng.next_double() < accept)
                        out.graph.edges.push_back({offset[c] + i, offset[cb] + j});
                }
            }
        }
    }

    // Points owned by this partition, cell-major.
    for (std::uint64_t c = own.lo; c < own.hi; ++c) {
        if (counts[c] == 0) continue;
        ensure_points(c);
        out.coords.insert(out.coords.end(), pts[c].begin(), pts[c].end());
    }
    return out;
}

Graph rgg_from_points(const RggParams& params, std::span<const double> coords) {
    if (coords.size() != params.n * static_cast<std::uint64_t>(params.dim))
        throw InvalidInputError("rgg_from_points: coordinate count mismatch");
    const GridSpec grid = make_grid(params);
    if (params.waxman)
        throw InvalidInputError("rgg_from_points: threshold mode only");

    // Bucket ids by cell, keeping input order within a cell.
    std::vector<std::vector<std::uint64_t>> members(grid.cells());
    for (std::uint64_t v = 0; v < params.n; ++v) {
        std::uint64_t lat[3] = {0, 0, 0};
        for (int a = 0; a < params.dim; ++a) {
            auto x = static_cast<std::uint64_t>(coords[v * params.dim + a] *
                                                static_cast<double>(grid.g));
            lat[a] = std::min(x, grid.g - 1);
        }
        members[grid.encode(lat)].push_back(v);
    }

    Graph g;
    g.n = params.n;
    const double r_sq = params.r * params.r;
    auto pt = [&](std::uint64_t v) {
        return coords.subspan(v * params.dim, params.dim);
    };
    for (std::uint64_t c = 0; c < grid.cells(); ++c) {
        const auto& mc = members[c];
        for (std::size_t i = 0; i < mc.size(); ++i)
            for (std::size_t j = i + 1; j < mc.size(); ++j)
                if (dist_sq(pt(mc[i]), pt(mc[j]), params.dim, params.torus) <= r_sq)
                    g.add_edge(mc[i], mc[j]);
        for (std::uint64_t nb : upper_neighbors(grid, c))
            for (std::uint64_t a : mc)
                for (std::uint64_t b : members[nb])
                    if (dist_sq(pt(a), pt(b), params.dim, params.torus) <= r_sq)
                        g.add_edge(a, b);
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

// ---- RHG ----------------------------------------------------------------

double hyperbolic_distance(double r_a, double angle_a, double r_b, double angle_b) {
    const double arg = std::cosh(r_a) * std::cosh(r_b) -
                       std::sinh(r_a) * std::sinh(r_b) * std::cos(angle_a - angle_b);
    return std::acosh(std::max(1.0, arg));
}

namespace detail {

double rhg_angular_envelope(double ru, double band_inner, double cosh_R) {
    const double num = std::cosh(ru) * std::cosh(band_inner) - cosh_R;
    const double den = std::sinh(ru) * std::sinh(band_inner);
    if (num <= -den) return std::numbers::pi;
    if (num >= den) return 0.0;
    return std::acos(num / den);
}

std::vector<double> rhg_band_radii(std::uint64_t n, double R) {
    const std::uint64_t bands = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(std::log2(static_cast<double>(std::max<std::uint64_t>(2, n))))));
    std::vector<double> b(bands + 1);
    b[0] = 0;
    for (std::uint64_t j = 1; j < bands; ++j) b[j] = R * (1.0 - std::pow(0.5, static_cast<double>(j)));
    b[bands] = R;
    return b;
}

}  // namespace detail

namespace {

// Recursive binomial splitting of k points over real mass weights; every
// tree node uses a substream keyed by its interval.
void mass_split(std::uint64_t k, std::span<const double> cum, std::size_t a, std::size_t b,
                const RngStream& base, std::vector<std::uint64_t>& counts) {
    if (b - a == 1) {
        counts[a] = k;
        return;
    }
    if (k == 0) {
        for (std::size_t i = a; i < b; ++i) counts[i] = 0;
        return;
    }
    const std::size_t mid = a + (b - a) / 2;
    RngStream node = base.child(kMassSplitTag, a * (cum.size() + 1) + b);
    const double share = (cum[mid] - cum[a]) / (cum[b] - cum[a]);
    const std::uint64_t left = node.binomial(k, std::clamp(share, 0.0, 1.0));
    mass_split(left, cum, a, mid, base, counts);
    mass_split(k - left, cum, mid, b, base, counts);
}

struct BandPoint {
    double angle;
    double radius;
    double cosh_r;
    double sinh_r;
};

}  // namespace

RhgResult rhg_threshold(const RhgParams& params, const RngStream& base,
                        std::optional<Partition> part) {
    if (!(params.alpha > 0.5)) throw InfeasibleError("rhg: alpha must exceed 1/2");
    if (!(params.R > 0)) throw InfeasibleError("rhg: R must be positive");
    if (params.n == 0) throw InfeasibleError("rhg: n must be >= 1");

    const std::vector<double> radii = detail::rhg_band_radii(params.n, params.R);
    const std::uint64_t bands = radii.size() - 1;
    const double cosh_R = std::cosh(params.R);

    // Cumulative radial mass at the band boundaries.
    std::vector<double> cum(bands + 1);
    for (std::uint64_t j = 0; j <= bands; ++j)
        cum[j] = std::cosh(params.alpha * radii[j]) - 1.0;
    std::vector<std::uint64_t> counts(bands);
    mass_split(params.n, cum, 0, bands, base, counts);
    std::vector<std::uint64_t> offset(bands + 1, 0);
    for (std::uint64_t j = 0; j < bands; ++j) offset[j + 1] = offset[j] + counts[j];

    const IndexRange own = partition_atoms(part, bands);

    // A partition needs its own bands plus everything above them.
    std::vector<std::vector<BandPoint>> band_pts(bands);
    auto ensure_band = [&](std::uint64_t j) {
        if (counts[j] == 0 || !band_pts[j].empty()) return;
        RngStream rng = base.child(kBandPointsTag, j);
        auto& pts = band_pts[j];
        pts.reserve(counts[j]);
        const double lo = cum[j], hi = cum[j + 1];
        for (std::uint64_t i = 0; i < counts[j]; ++i) {
            const double r =
                std::acosh(1.0 + lo + rng.next_double() * (hi - lo)) / params.alpha;
            const double angle = rng.next_double() * 2 * std::numbers::pi;
            pts.push_back({angle, r, std::cosh(r), std::sinh(r)});
        }
        std::sort(pts.begin(), pts.end(), [](const BandPoint& x, const BandPoint& y) {
            return x.angle != y.angle ? x.angle < y.angle : x.radius < y.radius;
        });
    };

    RhgResult out;
    out.bands = bands;
    out.graph.n = params.n;

    // Candidate scan over one band's angular window.
    auto scan_band = [&](const BandPoint& u, std::uint64_t u_id, std::uint64_t u_band,
                         std::uint64_t u_idx, std::uint64_t j) {
        if (counts[j] == 0) return;
        ensure_band(j);
        const auto& pts = band_pts[j];
        const double window = detail::rhg_angular_envelope(u.radius, radii[j], cosh_R);
        auto emit = [&](std::size_t idx) {
            if (j == u_band && idx <= u_idx) return;
            const BandPoint& v = pts[idx];
            const double arg = u.cosh_r * v.cosh_r -
                               u.sinh_r * v.sinh_r * std::cos(u.angle - v.angle);
            if (arg <= cosh_R)
                out.graph.edges.push_back({u_id, offset[j] + idx});
        };
        if (window >= std::numbers::pi) {
            for (std::size_t idx = 0; idx < pts.size(); ++idx) emit(idx);
            return;
        }
        auto angle_less = [](const BandPoint& p, double a) { return p.angle < a; };
        double lo = u.angle - window, hi = u.angle + window;
        // Wrapped window: up to two contiguous index ranges.
        auto scan_range = [&](double a, double b) {
            auto first = std::lower_bound(pts.begin(), pts.end(), a, angle_less);
            for (auto it = first; it != pts.end() && it->angle <= b; ++it)
                emit(static_cast<std::size_t>(it - pts.begin()));
        };
        if (lo < 0) {
            scan_range(0, hi);
            scan_range(lo + 2 * std::numbers::pi, 2 * std::numbers::pi);
        } else if (hi > 2 * std::numbers::pi) {
            scan_range(lo, 2 * std::numbers::pi);
            scan_range(0, hi - 2 * std::numbers::pi);
        } else {
            scan_range(lo, hi);
        }
    };

    for (std::uint64_t j = own.lo; j < own.hi; ++j) {
        ensure_band(j);
        for (std::uint64_t i = 0; i < counts[j]; ++i) {
            const BandPoint& u = band_pts[j][i];
            for (std::uint64_t jj = j; jj < bands; ++jj)
                scan_band(u, offset[j] + i, j, i, jj);
        }
    }

    for (std::uint64_t j = own.lo; j < own.hi; ++j) {
        ensure_band(j);
        for (const BandPoint& p : band_pts[j]) {
            out.radius.push_back(p.radius);
            out.angle.push_back(p.angle);
        }
    }
    return out;
}

}  // namespace graphforge
