#include "bicm/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

namespace bicm {

namespace {

// absorbs floating-point noise where a kept bisector coincides with the
// region boundary; far below any grid-resolution effect
constexpr double kBoundaryTol = 1e-9;

void parallel_rows(int ny, const std::function<void(int, int)>& body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw < 2 || ny < 64) {
        body(0, ny);
        return;
    }
    const int chunks = static_cast<int>(hw);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(chunks));
    for (int t = 0; t < chunks; ++t) {
        const int lo = static_cast<int>(static_cast<long long>(ny) * t / chunks);
        const int hi = static_cast<int>(static_cast<long long>(ny) * (t + 1) / chunks);
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

double min_norm(const std::vector<cplx>& pts, cplx y) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) best = std::min(best, std::norm(y - p));
    return best;
}

// signed distance from y to the bisector of (x,z); positive outside the
// half-plane of z
double halfplane_signed_distance(cplx x, cplx z, cplx y) {
    const double sep = std::abs(z - x);
    if (sep == 0.0) return 0.0;
    return (std::norm(y - z) - std::norm(y - x)) / (2.0 * sep);
}

}  // namespace

double ErrorRegion::margin(cplx y) const {
    return min_norm(same, y) - min_norm(opp, y);
}

bool in_error_region(const ErrorRegion& region, cplx y) {
    if (region.same.empty() || region.opp.empty())
        throw std::invalid_argument("in_error_region: both point sets must be non-empty");
    return region.contains(y);
}

RegionMask build_region_mask(const ErrorRegion& region, const GridSpec& grid) {
    if (region.same.empty() || region.opp.empty())
        throw std::invalid_argument("build_region_mask: both point sets must be non-empty");
    if (grid.nx() <= 0 || grid.ny() <= 0 || grid.res <= 0.0)
        throw std::invalid_argument("build_region_mask: empty grid");

    RegionMask mask;
    mask.grid = grid;
    mask.flags.assign(grid.count(), 0);
    const int nx = grid.nx();
    const int ny = grid.ny();

    parallel_rows(ny, [&](int y_lo, int y_hi) {
        for (int iy = y_lo; iy < y_hi; ++iy) {
            std::uint8_t* row = mask.flags.data() + static_cast<std::size_t>(iy) * nx;
            for (int ix = 0; ix < nx; ++ix) {
                const double m = region.margin(grid.at(ix, iy));
                if (m >= 0.0) row[ix] = static_cast<std::uint8_t>(m > kBoundaryTol ? 3 : 1);
            }
        }
    });
    std::size_t n = 0;
    for (auto f : mask.flags) n += (f & 1u);
    mask.region_count = n;
    return mask;
}

CoverageReport coverage_check(const RegionMask& mask, cplx x, const std::vector<cplx>& targets) {
    const GridSpec& grid = mask.grid;
    const int nx = grid.nx();
    const int ny = grid.ny();

    CoverageReport rep;
    rep.grid = grid;
    rep.region_count = mask.region_count;

    std::vector<std::uint8_t> uncovered(mask.flags.size(), 0);
    parallel_rows(ny, [&](int y_lo, int y_hi) {
        for (int iy = y_lo; iy < y_hi; ++iy) {
            const std::size_t base = static_cast<std::size_t>(iy) * nx;
            for (int ix = 0; ix < nx; ++ix) {
                if (!(mask.flags[base + ix] & 1u)) continue;
                const cplx y = grid.at(ix, iy);
                const double dx = std::norm(y - x);
                bool cov = false;
                for (const auto& z : targets) {
                    if (std::norm(y - z) <= dx + kBoundaryTol) {
                        cov = true;
                        break;
                    }
                }
                if (!cov) uncovered[base + ix] = 1;
            }
        }
    });

    double best_margin = -1.0;
    std::size_t best_at = 0;
    for (int iy = 0; iy < ny; ++iy) {
        const std::size_t base = static_cast<std::size_t>(iy) * nx;
        for (int ix = 0; ix < nx; ++ix) {
            if (!uncovered[base + ix]) continue;
            const cplx y = grid.at(ix, iy);
            rep.witnesses.push_back(y);
            if (mask.flags[base + ix] & 2u) rep.has_strict_interior_witness = true;
            double margin = std::numeric_limits<double>::infinity();
            for (const auto& z : targets)
                margin = std::min(margin, halfplane_signed_distance(x, z, y));
            if (targets.empty()) margin = 0.0;
            if (margin > best_margin) {
                best_margin = margin;
                best_at = rep.witnesses.size() - 1;
            }
        }
    }
    if (!rep.witnesses.empty() && best_at != 0)
        std::swap(rep.witnesses[0], rep.witnesses[best_at]);
    rep.covered = rep.witnesses.empty();
    rep.best_witness_margin = rep.covered ? 0.0 : best_margin;
    rep.uncovered_fraction =
        rep.region_count ? static_cast<double>(rep.witnesses.size()) / static_cast<double>(rep.region_count)
                         : 0.0;
    return rep;
}

CoverageReport coverage_check(const ErrorRegion& region, cplx x, const std::vector<cplx>& targets,
                              const GridSpec& grid) {
    return coverage_check(build_region_mask(region, grid), x, targets);
}

namespace {

// grid check of Gamma(x,z) subset-of Gamma(x,z1) union Gamma(x,z2)
bool premise_holds_on_grid(cplx x, cplx z, cplx z1, cplx z2, const GridSpec& grid) {
    const int nx = grid.nx();
    const int ny = grid.ny();
    const HalfPlane gz{x, z}, g1{x, z1}, g2{x, z2};
    std::atomic<bool> ok{true};
    parallel_rows(ny, [&](int y_lo, int y_hi) {
        bool local = true;
        for (int iy = y_lo; iy < y_hi && local; ++iy) {
            for (int ix = 0; ix < nx; ++ix) {
                const cplx y = grid.at(ix, iy);
                const double dx = std::norm(y - gz.x);
                if (std::norm(y - gz.z) <= dx &&
                    std::norm(y - g1.z) > dx + kBoundaryTol &&
                    std::norm(y - g2.z) > dx + kBoundaryTol) {
                    local = false;
                    break;
                }
            }
        }
        if (!local) ok.store(false);
    });
    return ok.load();
}

}  // namespace

Theorem1Outcome verify_theorem1(double theta_deg, const GridSpec& grid) {
    const double rad = std::numbers::pi / 180.0;
    if (theta_deg > 0.0 && grid.res > theta_deg * rad / 10.0)
        throw InconclusiveError("verify_theorem1: grid too coarse to resolve the sliver");

    const Constellation c = build_theorem1_variant(theta_deg);
    const cplx p00 = c.points[0], p01 = c.points[1], p11 = c.points[2], p10 = c.points[3];

    ErrorRegion region;
    region.same = {p00, p01};
    region.opp = {p11, p10};
    const RegionMask mask = build_region_mask(region, grid);

    Theorem1Outcome out;

    out.dark.x = p00;
    out.dark.premise_holds = premise_holds_on_grid(p00, p11, p01, p10, grid);
    out.dark.coverage = coverage_check(mask, p00, {p10});
    if (!out.dark.coverage.covered)
        out.dark.witness_in_pairwise_region = HalfPlane{p00, p11}.contains(out.dark.coverage.witnesses[0]);

    out.light.x = p01;
    out.light.premise_holds = premise_holds_on_grid(p01, p10, p00, p11, grid);
    out.light.coverage = coverage_check(mask, p01, {p11});
    if (!out.light.coverage.covered)
        out.light.witness_in_pairwise_region =
            HalfPlane{p01, p10}.contains(out.light.coverage.witnesses[0]);

    out.premise_holds = out.dark.premise_holds && out.light.premise_holds;
    out.covered_after_expurgation = out.dark.coverage.covered && out.light.coverage.covered;
    out.confirmed = out.premise_holds && !out.dark.coverage.covered &&
                    !out.light.coverage.covered && out.dark.coverage.has_strict_interior_witness &&
                    out.light.coverage.has_strict_interior_witness;
    return out;
}

Theorem2Outcome verify_theorem2(const GridSpec& grid) {
    const Constellation c = build_square_qam(16, Labeling::gray);
    const double delta = c.lattice.spacing;

    // the bit whose subsets are column pairs, with value b on the inner columns
    int col_bit = -1, inner_value = -1;
    for (int i = 1; i <= c.m && col_bit < 0; ++i) {
        for (int b = 0; b <= 1; ++b) {
            const BitSubset s = subset(c, i, b);
            bool inner = true;
            for (int idx : s.members)
                inner = inner && std::abs(std::abs(c.points[static_cast<size_t>(idx)].real()) - delta) < 1e-12;
            if (inner) {
                col_bit = i;
                inner_value = b;
            }
        }
    }
    if (col_bit < 0) throw std::logic_error("verify_theorem2: no inner-column bit found");

    const BitSubset inner = subset(c, col_bit, inner_value);
    const BitSubset outer = subset(c, col_bit, 1 - inner_value);
    ErrorRegion region;
    for (int idx : inner.members) region.same.push_back(c.points[static_cast<size_t>(idx)]);
    for (int idx : outer.members) region.opp.push_back(c.points[static_cast<size_t>(idx)]);
    const RegionMask mask = build_region_mask(region, grid);

    auto nearest_opposite = [&](int x_idx) {
        const cplx x = c.points[static_cast<size_t>(x_idx)];
        double best = std::numeric_limits<double>::infinity();
        cplx z{};
        for (int idx : outer.members) {
            const double d = std::norm(x - c.points[static_cast<size_t>(idx)]);
            if (d < best) {
                best = d;
                z = c.points[static_cast<size_t>(idx)];
            }
        }
        return z;
    };

    Theorem2Outcome out;
    out.all_inner_points_uncovered = true;
    bool far_strip = true;

    int dark_idx = -1, light_idx = -1;
    for (int idx : inner.members) {
        const cplx x = c.points[static_cast<size_t>(idx)];
        if (dark_idx < 0 && x.real() < 0.0) dark_idx = idx;
        if (light_idx < 0 && x.real() > 0.0) light_idx = idx;
    }

    for (int idx : inner.members) {
        const cplx x = c.points[static_cast<size_t>(idx)];
        const CoverageReport rep = coverage_check(mask, x, {nearest_opposite(idx)});
        if (rep.covered || !rep.has_strict_interior_witness) out.all_inner_points_uncovered = false;
        // uncovered part must sit beyond the far decision boundary at 2*delta
        const double side = x.real() < 0.0 ? 1.0 : -1.0;
        for (const auto& w : rep.witnesses)
            far_strip = far_strip && side * w.real() >= 2.0 * delta - grid.res;
        if (idx == dark_idx) out.dark = Theorem2PerTransmit{idx, rep};
        if (idx == light_idx) out.light = Theorem2PerTransmit{idx, rep};
    }

    out.covered_after_expurgation = out.dark.coverage.covered && out.light.coverage.covered;
    out.witnesses_in_far_strip = far_strip;
    out.confirmed = out.all_inner_points_uncovered && far_strip;
    return out;
}

void write_witness_csv(std::ostream& os, const std::vector<std::pair<cplx, std::string>>& rows) {
    os << "re,im,region\n";
    char buf[96];
    for (const auto& [p, tag] : rows) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f,%s\n", p.real(), p.imag(), tag.c_str());
        os << buf;
    }
}

}  // namespace bicm
