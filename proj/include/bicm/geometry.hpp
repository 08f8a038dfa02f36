#ifndef BICM_GEOMETRY_HPP
#define BICM_GEOMETRY_HPP

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicm/constellation.hpp"

namespace bicm {

/// Pairwise decision half-plane {y : |y-z|^2 <= |y-x|^2}; its boundary is
/// the perpendicular bisector of x and z.
struct HalfPlane {
    cplx x;
    cplx z;
    bool contains(cplx y) const { return std::norm(y - z) <= std::norm(y - x); }
};

/// Decoder error region for a same/opposite subset pair. Membership is
/// min-distance-to-opposite <= min-distance-to-same; ties count as errors.
struct ErrorRegion {
    std::vector<cplx> same;
    std::vector<cplx> opp;

    bool contains(cplx y) const { return margin(y) >= 0.0; }
    /// min_same^2 - min_opp^2: >= 0 inside, > 0 strictly inside.
    double margin(cplx y) const;
};

struct GridSpec {
    double x0 = -4.0, y0 = -4.0;
    double x1 = 4.0, y1 = 4.0;
    double res = 0.005;

    int nx() const { return static_cast<int>((x1 - x0) / res + 0.5) + 1; }
    int ny() const { return static_cast<int>((y1 - y0) / res + 0.5) + 1; }
    cplx at(int ix, int iy) const { return {x0 + ix * res, y0 + iy * res}; }
    std::size_t count() const { return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()); }
};

struct CoverageReport {
    bool covered = true;
    /// Uncovered error-region grid points; the most robust witness (largest
    /// distance to the nearest covering half-plane boundary) comes first,
    /// the rest in row-major grid order.
    std::vector<cplx> witnesses;
    GridSpec grid;
    double uncovered_fraction = 0.0;
    std::size_t region_count = 0;
    bool has_strict_interior_witness = false;
    double best_witness_margin = 0.0;
};

/// Grid-verified region membership flags, reusable across transmit points
/// that share the same (bit, value) subsets.
struct RegionMask {
    GridSpec grid;
    std::vector<std::uint8_t> flags;  // bit0: in region, bit1: strict interior
    std::size_t region_count = 0;
};

struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool in_error_region(const ErrorRegion& region, cplx y);

RegionMask build_region_mask(const ErrorRegion& region, const GridSpec& grid);

/// Scans the grid: an error-region point y is covered iff some target z has
/// |y-z| <= |y-x|. Boundary ties count as covered, so every witness is
/// strictly outside all supplied half-planes.
CoverageReport coverage_check(const ErrorRegion& region, cplx x,
                              const std::vector<cplx>& targets, const GridSpec& grid);
CoverageReport coverage_check(const RegionMask& mask, cplx x, const std::vector<cplx>& targets);

struct Theorem1PerTransmit {
    cplx x;
    bool premise_holds = false;
    bool witness_in_pairwise_region = false;
    CoverageReport coverage;
};

struct Theorem1Outcome {
    Theorem1PerTransmit dark;   // transmitted 00
    Theorem1PerTransmit light;  // transmitted 01
    bool premise_holds = false;
    bool covered_after_expurgation = true;
    bool confirmed = false;
};

struct Theorem2PerTransmit {
    int point_index = -1;
    CoverageReport coverage;
};

struct Theorem2Outcome {
    Theorem2PerTransmit dark;   // inner column on the negative in-phase side
    Theorem2PerTransmit light;  // inner column on the positive side
    bool covered_after_expurgation = true;
    bool witnesses_in_far_strip = false;
    bool all_inner_points_uncovered = false;
    bool confirmed = false;
};

/// Verifies the modified-QPSK counterexample: half-plane inclusion premise
/// plus coverage failure of the single kept neighbor, for both transmitted
/// points of the half-circle subset. Throws InconclusiveError when the grid
/// cannot resolve the uncovered sliver.
Theorem1Outcome verify_theorem1(double theta_deg, const GridSpec& grid);

/// Verifies the Gray-16QAM counterexample: keeping only the unique nearest
/// opposite-subset point for an inner-column transmit leaves the far column
/// strip uncovered.
Theorem2Outcome verify_theorem2(const GridSpec& grid);

void write_witness_csv(std::ostream& os,
                       const std::vector<std::pair<cplx, std::string>>& rows);

}  // namespace bicm

#endif
