#include "bicm/expurgation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "bicm/geometry.hpp"

namespace bicm {

namespace {

constexpr double kTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- axis case

enum class SubsetShape { columns, rows, circle, other };

SubsetShape classify(const Constellation& c, int bit_pos) {
    if (c.geometry == GeometryKind::circle) return SubsetShape::circle;
    auto uniform_along = [&](bool use_real) {
        std::map<long long, int> seen;  // quantized coordinate -> bit value
        for (int p = 0; p < c.size(); ++p) {
            const double coord = use_real ? c.points[static_cast<size_t>(p)].real()
                                          : c.points[static_cast<size_t>(p)].imag();
            const long long q = std::llround(coord * 1e9);
            const int bit = c.label_bit(p, bit_pos);
            auto [it, inserted] = seen.emplace(q, bit);
            if (!inserted && it->second != bit) return false;
        }
        return true;
    };
    if (uniform_along(true)) return SubsetShape::columns;
    if (uniform_along(false)) return SubsetShape::rows;
    return SubsetShape::other;
}

struct Interval {
    double lo = 0.0, hi = 0.0;  // may be +-inf
};

// 1-D coordinates with subset membership, relative to a transmit coordinate
struct AxisContext {
    std::vector<double> coords;       // sorted distinct
    std::vector<char> opposite;       // per coord
    std::vector<Interval> region;     // merged error intervals
    std::vector<double> boundaries;   // sorted boundary coordinates
    double xi = 0.0;
};

AxisContext axis_context(const Constellation& c, int bit_pos, int x_idx, bool use_real) {
    AxisContext ctx;
    const int b = c.label_bit(x_idx, bit_pos);
    std::map<long long, std::pair<double, char>> by_coord;
    for (int p = 0; p < c.size(); ++p) {
        const cplx pt = c.points[static_cast<size_t>(p)];
        const double coord = use_real ? pt.real() : pt.imag();
        by_coord[std::llround(coord * 1e9)] = {coord,
                                               static_cast<char>(c.label_bit(p, bit_pos) != b)};
    }
    for (const auto& [q, cv] : by_coord) {
        ctx.coords.push_back(cv.first);
        ctx.opposite.push_back(cv.second);
    }
    const cplx x = c.points[static_cast<size_t>(x_idx)];
    ctx.xi = use_real ? x.real() : x.imag();

    const int n = static_cast<int>(ctx.coords.size());
    std::vector<Interval> cells;
    for (int k = 0; k < n; ++k) {
        if (!ctx.opposite[static_cast<size_t>(k)]) continue;
        Interval cell;
        cell.lo = k == 0 ? -kInf : 0.5 * (ctx.coords[static_cast<size_t>(k - 1)] + ctx.coords[static_cast<size_t>(k)]);
        cell.hi = k == n - 1 ? kInf : 0.5 * (ctx.coords[static_cast<size_t>(k)] + ctx.coords[static_cast<size_t>(k + 1)]);
        cells.push_back(cell);
    }
    for (const auto& cell : cells) {
        if (!ctx.region.empty() && cell.lo <= ctx.region.back().hi + kTol)
            ctx.region.back().hi = std::max(ctx.region.back().hi, cell.hi);
        else
            ctx.region.push_back(cell);
    }
    for (int k = 0; k + 1 < n; ++k)
        if (ctx.opposite[static_cast<size_t>(k)] != ctx.opposite[static_cast<size_t>(k + 1)])
            ctx.boundaries.push_back(0.5 * (ctx.coords[static_cast<size_t>(k)] + ctx.coords[static_cast<size_t>(k + 1)]));
    return ctx;
}

// does the half-line {t : |t-tc| <= |t-xi|} contain the whole region?
bool halfline_covers(const AxisContext& ctx, double tc) {
    const double g = 0.5 * (ctx.xi + tc);
    for (const auto& iv : ctx.region) {
        if (tc > ctx.xi && iv.lo < g - kTol) return false;
        if (tc < ctx.xi && iv.hi > g + kTol) return false;
    }
    return true;
}

// the union of the targets' half-lines is (-inf, gl] U [gr, inf); region
// intervals must avoid the open gap (gl, gr)
bool halflines_cover(const AxisContext& ctx, const std::vector<double>& tcs) {
    double gl = -kInf, gr = kInf;
    for (double tc : tcs) {
        const double g = 0.5 * (ctx.xi + tc);
        if (tc < ctx.xi) gl = std::max(gl, g);
        if (tc > ctx.xi) gr = std::min(gr, g);
    }
    if (gl >= gr - kTol) return true;
    for (const auto& iv : ctx.region)
        if (!(iv.hi <= gl + kTol || iv.lo >= gr - kTol)) return false;
    return true;
}

int representative_index(const Constellation& c, double axis_coord, double off_coord,
                         bool use_real) {
    for (int p = 0; p < c.size(); ++p) {
        const cplx pt = c.points[static_cast<size_t>(p)];
        const double a = use_real ? pt.real() : pt.imag();
        const double o = use_real ? pt.imag() : pt.real();
        if (std::abs(a - axis_coord) < 1e-9 && std::abs(o - off_coord) < 1e-9) return p;
    }
    return -1;
}

Target axis_target(const Constellation& c, double axis_coord, double off_coord, bool use_real) {
    const int idx = representative_index(c, axis_coord, off_coord, use_real);
    const cplx pos = use_real ? cplx{axis_coord, off_coord} : cplx{off_coord, axis_coord};
    if (idx >= 0) return Target::real(idx, c.points[static_cast<size_t>(idx)]);
    return Target::ext(pos);
}

std::vector<Target> select_axis(const Constellation& c, int x_idx, int bit_pos, Variant variant,
                                bool use_real) {
    const AxisContext ctx = axis_context(c, bit_pos, x_idx, use_real);
    const cplx x = c.points[static_cast<size_t>(x_idx)];
    const double off = use_real ? x.imag() : x.real();

    // nearest opposite coordinate; ties resolved by smaller representative index
    auto nearest_opp = [&](int side) {  // side: -1 left, +1 right, 0 either
        std::optional<double> best;
        for (size_t k = 0; k < ctx.coords.size(); ++k) {
            if (!ctx.opposite[k]) continue;
            const double tc = ctx.coords[k];
            if (side < 0 && tc >= ctx.xi) continue;
            if (side > 0 && tc <= ctx.xi) continue;
            if (!best) {
                best = tc;
                continue;
            }
            const double d_new = std::abs(tc - ctx.xi), d_old = std::abs(*best - ctx.xi);
            if (d_new < d_old - kTol) {
                best = tc;
            } else if (std::abs(d_new - d_old) <= kTol) {
                const int i_new = representative_index(c, tc, off, use_real);
                const int i_old = representative_index(c, *best, off, use_real);
                if (i_new >= 0 && (i_old < 0 || i_new < i_old)) best = tc;
            }
        }
        return best;
    };

    if (variant == Variant::orig) {
        const auto tc = nearest_opp(0);
        if (!tc) throw std::logic_error("select_neighbors: no opposite point");
        return {axis_target(c, *tc, off, use_real)};
    }

    if (variant == Variant::v1) {
        const auto tc1 = nearest_opp(0);
        if (!tc1) throw std::logic_error("select_neighbors: no opposite point");
        Target z1 = axis_target(c, *tc1, off, use_real);
        if (halfline_covers(ctx, *tc1)) return {z1, Target::aleph()};
        const auto tc2 = nearest_opp(*tc1 > ctx.xi ? -1 : +1);
        if (!tc2) throw std::logic_error("select_neighbors: uncovered one-sided region");
        if (!halflines_cover(ctx, {*tc1, *tc2}))
            throw std::logic_error("select_neighbors: variant I pair fails to cover");
        return {z1, axis_target(c, *tc2, off, use_real)};
    }

    // variant II: mirror across the nearest error boundary on each needed side
    std::optional<double> g_left, g_right;
    for (double g : ctx.boundaries) {
        if (g < ctx.xi && (!g_left || g > *g_left)) g_left = g;
        if (g > ctx.xi && (!g_right || g < *g_right)) g_right = g;
    }
    std::vector<double> mirrors;
    if (g_left) mirrors.push_back(2.0 * *g_left - ctx.xi);
    if (g_right) mirrors.push_back(2.0 * *g_right - ctx.xi);
    if (mirrors.empty()) throw std::logic_error("select_neighbors: no error boundary");
    if (mirrors.size() == 1) return {axis_target(c, mirrors[0], off, use_real), Target::aleph()};

    const size_t primary = std::abs(mirrors[0] - ctx.xi) <= std::abs(mirrors[1] - ctx.xi) ? 0 : 1;
    if (halfline_covers(ctx, mirrors[primary]))
        return {axis_target(c, mirrors[primary], off, use_real), Target::aleph()};
    if (!halflines_cover(ctx, mirrors))
        throw std::logic_error("select_neighbors: variant II pair fails to cover");
    return {axis_target(c, mirrors[primary], off, use_real),
            axis_target(c, mirrors[1 - primary], off, use_real)};
}

// -------------------------------------------------------------- circle case

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pos(double a) {  // to [0, 2*pi)
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

double wrap_signed(double a) {  // to (-pi, pi]
    a = wrap_pos(a);
    return a > std::numbers::pi + kTol ? a - kTwoPi : a;
}

struct Arc {
    double start = 0.0;  // [0, 2*pi)
    double len = 0.0;    // (0, 2*pi]
    double end() const { return start + len; }
};

std::vector<Arc> merge_arcs(std::vector<Arc> arcs) {
    if (arcs.empty()) return arcs;
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
    std::vector<Arc> out;
    for (const auto& a : arcs) {
        if (!out.empty() && wrap_pos(a.start - out.back().start) <= out.back().len + 1e-9) {
            const double ext = wrap_pos(a.start - out.back().start) + a.len;
            out.back().len = std::max(out.back().len, ext);
        } else {
            out.push_back(a);
        }
    }
    if (out.size() > 1 && out.back().end() >= out.front().start + kTwoPi - 1e-9) {
        const double ext = wrap_pos(out.front().start - out.back().start) + out.front().len;
        out.back().len = std::max(out.back().len, ext);
        out.erase(out.begin());
    }
    for (auto& a : out) a.len = std::min(a.len, kTwoPi);
    return out;
}

// total length of the overlap between two arcs
double arc_overlap(const Arc& a, const Arc& u) {
    const double us = wrap_pos(u.start - a.start);
    double overlap = 0.0;
    if (us < a.len) overlap += std::min(a.len - us, u.len);
    if (us + u.len > kTwoPi) overlap += std::min(us + u.len - kTwoPi, a.len);
    return overlap;
}

struct CircleContext {
    std::vector<double> angles;      // per point index
    std::vector<Arc> region;         // merged opposite Voronoi arcs
    std::vector<double> boundaries;  // region endpoints (rays)
    double chi = 0.0;                // transmit angle
    double radius = 1.0;
};

CircleContext circle_context(const Constellation& c, int bit_pos, int x_idx) {
    CircleContext ctx;
    ctx.radius = c.circle_radius;
    const int b = c.label_bit(x_idx, bit_pos);
    const int n = c.size();
    ctx.angles.resize(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p)
        ctx.angles[static_cast<size_t>(p)] =
            wrap_pos(std::arg(c.points[static_cast<size_t>(p)]));
    ctx.chi = ctx.angles[static_cast<size_t>(x_idx)];

    std::vector<int> order(static_cast<size_t>(n));
    for (int p = 0; p < n; ++p) order[static_cast<size_t>(p)] = p;
    std::sort(order.begin(), order.end(),
              [&](int a, int bb) { return ctx.angles[static_cast<size_t>(a)] < ctx.angles[static_cast<size_t>(bb)]; });

    // angular Voronoi cell of each point, as arcs between adjacent bisectors
    std::vector<Arc> cells;
    for (int s = 0; s < n; ++s) {
        const int p = order[static_cast<size_t>(s)];
        if (c.label_bit(p, bit_pos) == b) continue;
        const int prev = order[static_cast<size_t>((s + n - 1) % n)];
        const int next = order[static_cast<size_t>((s + 1) % n)];
        const double a = ctx.angles[static_cast<size_t>(p)];
        const double lo = a - 0.5 * wrap_pos(a - ctx.angles[static_cast<size_t>(prev)]);
        const double hi = a + 0.5 * wrap_pos(ctx.angles[static_cast<size_t>(next)] - a);
        cells.push_back(Arc{wrap_pos(lo), wrap_pos(hi - lo) == 0.0 ? kTwoPi : wrap_pos(hi - lo)});
    }
    ctx.region = merge_arcs(cells);
    for (const auto& a : ctx.region) {
        ctx.boundaries.push_back(wrap_pos(a.start));
        ctx.boundaries.push_back(wrap_pos(a.end()));
    }
    return ctx;
}

// half-plane of a same-radius competitor at angle zeta, as a width-pi arc
Arc halfplane_arc(double chi, double zeta) {
    const double d = wrap_signed(zeta - chi);
    const double mid = chi + 0.5 * d;
    return d >= 0.0 ? Arc{wrap_pos(mid), std::numbers::pi} : Arc{wrap_pos(mid - std::numbers::pi), std::numbers::pi};
}

bool arcs_covered(const CircleContext& ctx, const std::vector<double>& zetas) {
    std::vector<Arc> halves;
    halves.reserve(zetas.size());
    for (double z : zetas) halves.push_back(halfplane_arc(ctx.chi, z));
    const std::vector<Arc> cover = merge_arcs(halves);
    for (const auto& a : ctx.region) {
        double covered = 0.0;
        for (const auto& u : cover) covered += arc_overlap(a, u);
        if (covered < a.len - 1e-9) return false;
    }
    return true;
}

Target circle_target(const Constellation& c, const CircleContext& ctx, double zeta) {
    for (int p = 0; p < c.size(); ++p)
        if (std::abs(wrap_signed(ctx.angles[static_cast<size_t>(p)] - zeta)) < 1e-9)
            return Target::real(p, c.points[static_cast<size_t>(p)]);
    return Target::ext(ctx.radius * cplx{std::cos(zeta), std::sin(zeta)});
}

std::vector<Target> select_circle(const Constellation& c, int x_idx, int bit_pos,
                                  Variant variant) {
    const CircleContext ctx = circle_context(c, bit_pos, x_idx);
    const int b = c.label_bit(x_idx, bit_pos);

    auto nearest_opp = [&](int side) {  // +1 ccw, -1 cw, 0 either
        int best = -1;
        double best_d = kInf;
        for (int p = 0; p < c.size(); ++p) {
            if (c.label_bit(p, bit_pos) == b) continue;
            const double d = wrap_signed(ctx.angles[static_cast<size_t>(p)] - ctx.chi);
            if (side > 0 && d < 0.0) continue;
            if (side < 0 && d >= 0.0) continue;
            if (std::abs(d) < best_d - 1e-12) {
                best_d = std::abs(d);
                best = p;
            }
        }
        return best;
    };

    if (variant == Variant::orig) {
        const int z = nearest_opp(0);
        if (z < 0) throw std::logic_error("select_neighbors: no opposite point");
        return {Target::real(z, c.points[static_cast<size_t>(z)])};
    }

    if (variant == Variant::v1) {
        const int z1 = nearest_opp(0);
        if (z1 < 0) throw std::logic_error("select_neighbors: no opposite point");
        const double zeta1 = ctx.angles[static_cast<size_t>(z1)];
        if (arcs_covered(ctx, {zeta1}))
            return {Target::real(z1, c.points[static_cast<size_t>(z1)]), Target::aleph()};
        const double d1 = wrap_signed(zeta1 - ctx.chi);
        int z2 = nearest_opp(d1 >= 0.0 ? -1 : +1);
        if (z2 < 0) {
            // all opposite points on one angular side; take the next nearest
            double best_d = kInf;
            for (int p = 0; p < c.size(); ++p) {
                if (c.label_bit(p, bit_pos) == b || p == z1) continue;
                const double d = std::abs(wrap_signed(ctx.angles[static_cast<size_t>(p)] - ctx.chi));
                if (d < best_d - 1e-12) {
                    best_d = d;
                    z2 = p;
                }
            }
        }
        if (z2 < 0 || !arcs_covered(ctx, {zeta1, ctx.angles[static_cast<size_t>(z2)]}))
            throw std::logic_error("select_neighbors: variant I pair fails to cover");
        return {Target::real(z1, c.points[static_cast<size_t>(z1)]),
                Target::real(z2, c.points[static_cast<size_t>(z2)])};
    }

    // variant II: mirror the transmit point across the nearest boundary ray
    // on each needed side
    double g_ccw = kInf, g_cw = kInf;
    for (double g : ctx.boundaries) {
        const double fw = wrap_pos(g - ctx.chi);
        const double bw = wrap_pos(ctx.chi - g);
        if (fw > 1e-12 && fw < g_ccw) g_ccw = fw;
        if (bw > 1e-12 && bw < g_cw) g_cw = bw;
    }
    if (!std::isfinite(g_ccw) && !std::isfinite(g_cw))
        throw std::logic_error("select_neighbors: no error boundary");

    std::vector<double> zetas;
    if (std::isfinite(g_ccw)) zetas.push_back(wrap_pos(ctx.chi + 2.0 * g_ccw));
    if (std::isfinite(g_cw)) zetas.push_back(wrap_pos(ctx.chi - 2.0 * g_cw));
    if (zetas.size() == 2 && std::abs(wrap_signed(zetas[0] - zetas[1])) < 1e-9)
        zetas.pop_back();  // the two rays lie on one diameter
    if (zetas.size() == 1)
        return {circle_target(c, ctx, zetas[0]), Target::aleph()};

    auto chord = [&](double zeta) { return std::abs(wrap_signed(zeta - ctx.chi)); };
    size_t primary = 0;
    if (chord(zetas[1]) < chord(zetas[0]) - 1e-12) {
        primary = 1;
    } else if (std::abs(chord(zetas[1]) - chord(zetas[0])) <= 1e-12) {
        const Target t0 = circle_target(c, ctx, zetas[0]);
        const Target t1 = circle_target(c, ctx, zetas[1]);
        const bool real0 = t0.kind == Target::Kind::point;
        const bool real1 = t1.kind == Target::Kind::point;
        if (real1 && (!real0 || t1.point_index < t0.point_index)) primary = 1;
    }
    if (arcs_covered(ctx, {zetas[primary]}))
        return {circle_target(c, ctx, zetas[primary]), Target::aleph()};
    if (!arcs_covered(ctx, zetas))
        throw std::logic_error("select_neighbors: variant II pair fails to cover");
    return {circle_target(c, ctx, zetas[primary]), circle_target(c, ctx, zetas[1 - primary])};
}

// ------------------------------------------------------- generalized 2-D rule

std::vector<Target> select_2d(const Constellation& c, int x_idx, int bit_pos, Variant variant) {
    const int b = c.label_bit(x_idx, bit_pos);
    const cplx x = c.points[static_cast<size_t>(x_idx)];

    ErrorRegion region;
    std::vector<int> opp_idx;
    for (int p = 0; p < c.size(); ++p) {
        if (c.label_bit(p, bit_pos) == b)
            region.same.push_back(c.points[static_cast<size_t>(p)]);
        else {
            region.opp.push_back(c.points[static_cast<size_t>(p)]);
            opp_idx.push_back(p);
        }
    }
    std::sort(opp_idx.begin(), opp_idx.end(), [&](int a, int bb) {
        const double da = std::norm(c.points[static_cast<size_t>(a)] - x);
        const double db = std::norm(c.points[static_cast<size_t>(bb)] - x);
        return da < db - kTol || (std::abs(da - db) <= kTol && a < bb);
    });

    const GridSpec grid{-2.5, -2.5, 2.5, 2.5, 0.01};
    std::vector<cplx> uncovered;
    for (int iy = 0; iy < grid.ny(); ++iy)
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const cplx y = grid.at(ix, iy);
            if (region.contains(y)) uncovered.push_back(y);
        }

    // greedy cover: repeatedly add the nearest opposite point whose
    // half-plane covers at least one still-uncovered region cell
    std::vector<int> selected;
    while (!uncovered.empty()) {
        int pick = -1;
        for (int cand : opp_idx) {
            if (std::find(selected.begin(), selected.end(), cand) != selected.end()) continue;
            const HalfPlane h{x, c.points[static_cast<size_t>(cand)]};
            for (const auto& y : uncovered)
                if (h.contains(y)) {
                    pick = cand;
                    break;
                }
            if (pick >= 0) break;
        }
        if (pick < 0) break;
        selected.push_back(pick);
        const HalfPlane h{x, c.points[static_cast<size_t>(pick)]};
        std::erase_if(uncovered, [&](const cplx& y) { return h.contains(y); });
    }

    std::vector<Target> out;
    for (int idx : selected) {
        const cplx z = c.points[static_cast<size_t>(idx)];
        if (variant != Variant::v2) {
            out.push_back(Target::real(idx, z));
            continue;
        }
        // reflect across the nearest boundary crossing along the segment x->z
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (region.margin(x + mid * (z - x)) >= 0.0 ? hi : lo) = mid;
        }
        const cplx p = x + hi * (z - x);
        const cplx mirror = 2.0 * p - x;
        bool real_match = false;
        for (int q = 0; q < c.size() && !real_match; ++q)
            if (std::abs(c.points[static_cast<size_t>(q)] - mirror) < 1e-9) {
                out.push_back(Target::real(q, c.points[static_cast<size_t>(q)]));
                real_match = true;
            }
        if (!real_match) out.push_back(Target::ext(mirror));
    }
    return out;
}

}  // namespace

std::vector<Target> select_neighbors(const Constellation& c, int point_idx, int bit_pos,
                                     Variant variant, bool allow_2d) {
    if (point_idx < 0 || point_idx >= c.size())
        throw std::invalid_argument("select_neighbors: point index out of range");
    if (bit_pos < 1 || bit_pos > c.m)
        throw std::invalid_argument("select_neighbors: bit position out of range");

    switch (classify(c, bit_pos)) {
        case SubsetShape::circle:
            return select_circle(c, point_idx, bit_pos, variant);
        case SubsetShape::columns:
            return select_axis(c, point_idx, bit_pos, variant, /*use_real=*/true);
        case SubsetShape::rows:
            return select_axis(c, point_idx, bit_pos, variant, /*use_real=*/false);
        case SubsetShape::other:
            if (!allow_2d)
                throw std::invalid_argument(
                    "select_neighbors: subset is not one-dimensional; enable the generalized rule");
            if (variant == Variant::orig) {
                // nearest opposite point, as in the 1-D case
                const int b = c.label_bit(point_idx, bit_pos);
                const cplx x = c.points[static_cast<size_t>(point_idx)];
                int best = -1;
                double best_d = kInf;
                for (int p = 0; p < c.size(); ++p) {
                    if (c.label_bit(p, bit_pos) == b) continue;
                    const double d = std::norm(c.points[static_cast<size_t>(p)] - x);
                    if (d < best_d - kTol) {
                        best_d = d;
                        best = p;
                    }
                }
                return {Target::real(best, c.points[static_cast<size_t>(best)])};
            }
            return select_2d(c, point_idx, bit_pos, variant);
    }
    throw std::logic_error("select_neighbors: unreachable");
}

NeighborAssignment assign_neighbors(const Constellation& c, Variant variant, bool allow_2d) {
    NeighborAssignment na;
    na.variant = variant;
    na.m = c.m;
    na.targets.resize(static_cast<size_t>(c.size()));
    for (int p = 0; p < c.size(); ++p) {
        na.targets[static_cast<size_t>(p)].resize(static_cast<size_t>(c.m));
        for (int i = 1; i <= c.m; ++i) {
            if (classify(c, i) == SubsetShape::other) na.nonstandard = true;
            na.targets[static_cast<size_t>(p)][static_cast<size_t>(i - 1)] =
                select_neighbors(c, p, i, variant, allow_2d);
        }
    }
    return na;
}

double harmonic_distance(const Constellation& c, Variant variant, bool allow_2d) {
    const NeighborAssignment na = assign_neighbors(c, variant, allow_2d);
    double sum = 0.0;
    for (int p = 0; p < c.size(); ++p)
        for (int i = 1; i <= c.m; ++i)
            for (const auto& t : na.targets[static_cast<size_t>(p)][static_cast<size_t>(i - 1)]) {
                if (t.is_aleph()) continue;
                sum += 1.0 / std::norm(c.points[static_cast<size_t>(p)] - t.position);
            }
    return static_cast<double>(c.m) * static_cast<double>(c.size()) / sum;
}

std::vector<Table1Row> table1() {
    std::vector<Table1Row> rows;
    auto add = [&rows](const Constellation& c, const std::string& lab, bool allow_2d) {
        Table1Row r;
        r.constellation = c.name;
        r.labeling = lab;
        r.dh2 = harmonic_distance(c, Variant::orig, allow_2d);
        r.dhc1_2 = harmonic_distance(c, Variant::v1, allow_2d);
        r.dhc2_2 = harmonic_distance(c, Variant::v2, allow_2d);
        r.flags = allow_2d ? "nonstandard" : "";
        rows.push_back(r);
    };
    add(build_psk(4, Labeling::gray), "gray", false);
    add(build_psk(4, Labeling::sp), "sp", false);
    add(build_psk(8, Labeling::gray), "gray", false);
    add(build_psk(8, Labeling::sp), "sp", false);
    add(build_square_qam(16, Labeling::gray), "gray", false);
    add(build_square_qam(16, Labeling::sp), "sp", true);
    add(build_square_qam(64, Labeling::gray), "gray", false);
    return rows;
}

}  // namespace bicm
