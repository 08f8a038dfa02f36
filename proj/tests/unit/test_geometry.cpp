#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bicm/geometry.hpp"

using namespace bicm;

namespace {

ErrorRegion region_for(const Constellation& c, int bit_pos, int b_same) {
    ErrorRegion r;
    for (int idx : subset(c, bit_pos, b_same).members) r.same.push_back(c.points[idx]);
    for (int idx : subset(c, bit_pos, 1 - b_same).members) r.opp.push_back(c.points[idx]);
    return r;
}

const GridSpec kCoarse{-4.0, -4.0, 4.0, 4.0, 0.02};

}  // namespace

TEST_CASE("in_error_region basics on gray QPSK") {
    const Constellation c = build_psk(4, Labeling::gray);
    const ErrorRegion r = region_for(c, 1, 0);  // same {0,90}, opp {180,270} degrees
    CHECK(in_error_region(r, cplx{-2.0, 0.0}));
    CHECK_FALSE(in_error_region(r, cplx{2.0, 0.0}));

    ErrorRegion bad;
    bad.same = {cplx{0, 0}};
    CHECK_THROWS_AS(in_error_region(bad, cplx{0, 0}), std::invalid_argument);
}

TEST_CASE("in_error_region on 16QAM inner/outer columns") {
    const Constellation c = build_square_qam(16, Labeling::gray);
    const double d = c.lattice.spacing;
    ErrorRegion r;
    for (const auto& p : c.points)
        (std::abs(p.real()) < 2 * d ? r.same : r.opp).push_back(p);
    // on the vertical line through an outer column the outer set wins
    CHECK(in_error_region(r, cplx{-3 * d, 0.1}));
    CHECK_FALSE(in_error_region(r, cplx{0.5 * d, 0.1}));
}

TEST_CASE("coverage_check: full opposite subset always covers") {
    for (const auto& c : {build_psk(4, Labeling::gray), build_psk(4, Labeling::sp),
                          build_psk(8, Labeling::gray), build_psk(8, Labeling::sp),
                          build_square_qam(16, Labeling::gray),
                          build_square_qam(16, Labeling::sp),
                          build_square_qam(64, Labeling::gray)}) {
        for (int i = 1; i <= c.m; ++i) {
            for (int b = 0; b <= 1; ++b) {
                const ErrorRegion r = region_for(c, i, b);
                const RegionMask mask = build_region_mask(r, kCoarse);
                for (int idx : subset(c, i, b).members) {
                    const CoverageReport rep = coverage_check(mask, c.points[idx], r.opp);
                    CHECK(rep.covered);
                }
            }
        }
    }
}

TEST_CASE("coverage_check on gray QPSK transmit 0 degrees") {
    const Constellation c = build_psk(4, Labeling::gray);
    const ErrorRegion r = region_for(c, 1, 0);
    // both opposite points cover
    CHECK(coverage_check(r, c.points[0], {c.points[2], c.points[3]}, kCoarse).covered);
    // the single kept neighbor covers exactly in the degenerate theta=0 set
    const Constellation t0 = build_theorem1_variant(0.0);
    ErrorRegion r0;
    r0.same = {t0.points[0], t0.points[1]};
    r0.opp = {t0.points[2], t0.points[3]};
    CHECK(coverage_check(r0, t0.points[0], {t0.points[3]}, kCoarse).covered);
}

TEST_CASE("coverage_check finds the uncovered sliver at theta=30") {
    const Constellation c = build_theorem1_variant(30.0);
    ErrorRegion r;
    r.same = {c.points[0], c.points[1]};
    r.opp = {c.points[2], c.points[3]};
    const CoverageReport rep = coverage_check(r, c.points[0], {c.points[3]}, kCoarse);
    CHECK_FALSE(rep.covered);
    CHECK(rep.witnesses.size() > 0);
    CHECK(rep.uncovered_fraction > 0.0);
    CHECK(rep.uncovered_fraction < 1.0);
    // every witness is in the region and strictly outside the kept half-plane
    for (const auto& w : rep.witnesses) {
        CHECK(in_error_region(r, w));
        CHECK(std::norm(w - c.points[3]) > std::norm(w - c.points[0]));
    }
    // reproducible witness list
    const CoverageReport rep2 = coverage_check(r, c.points[0], {c.points[3]}, kCoarse);
    CHECK(rep.witnesses == rep2.witnesses);
}

TEST_CASE("verify_theorem1 confirms the counterexample at theta=30") {
    GridSpec grid = kCoarse;
    grid.res = 0.01;
    const Theorem1Outcome out = verify_theorem1(30.0, grid);
    CHECK(out.premise_holds);
    CHECK_FALSE(out.covered_after_expurgation);
    CHECK(out.confirmed);
    CHECK(out.dark.coverage.witnesses.size() > 0);
    CHECK(out.light.coverage.witnesses.size() > 0);
    CHECK(out.dark.coverage.has_strict_interior_witness);
    CHECK(out.light.coverage.has_strict_interior_witness);
    // the reported witness lies inside the dropped pairwise region
    CHECK(out.dark.witness_in_pairwise_region);
    CHECK(out.light.witness_in_pairwise_region);
}

TEST_CASE("verify_theorem1 theta=0 control: no counterexample") {
    const Theorem1Outcome out = verify_theorem1(0.0, kCoarse);
    CHECK(out.premise_holds);
    CHECK(out.covered_after_expurgation);
    CHECK_FALSE(out.confirmed);
}

TEST_CASE("verify_theorem1 rejects a grid too coarse for the sliver") {
    GridSpec grid = kCoarse;
    grid.res = 0.05;  // theta = 1 deg needs about 0.0017
    CHECK_THROWS_AS(verify_theorem1(1.0, grid), InconclusiveError);
}

TEST_CASE("verify_theorem2 confirms and controls pass") {
    GridSpec grid = kCoarse;
    grid.res = 0.01;
    const Theorem2Outcome out = verify_theorem2(grid);
    CHECK_FALSE(out.covered_after_expurgation);
    CHECK(out.confirmed);
    CHECK(out.witnesses_in_far_strip);
    CHECK(out.all_inner_points_uncovered);
    CHECK(out.dark.coverage.witnesses.size() > 0);
    CHECK(out.light.coverage.witnesses.size() > 0);

    // control: keeping both opposite columns (variant I selection) covers
    const Constellation c = build_square_qam(16, Labeling::gray);
    const double d = c.lattice.spacing;
    ErrorRegion r;
    for (const auto& p : c.points) (std::abs(p.real()) < 2 * d ? r.same : r.opp).push_back(p);
    const cplx x{-d, -3 * d};
    const CoverageReport both =
        coverage_check(r, x, {cplx{-3 * d, -3 * d}, cplx{3 * d, -3 * d}}, grid);
    CHECK(both.covered);

    // control: outer-column transmit with its nearest opposite kept
    ErrorRegion r_outer;
    r_outer.same = r.opp;
    r_outer.opp = r.same;
    const CoverageReport outer =
        coverage_check(r_outer, cplx{-3 * d, -3 * d}, {cplx{-d, -3 * d}}, grid);
    CHECK(outer.covered);
}

TEST_CASE("witness CSV format") {
    std::ostringstream os;
    write_witness_csv(os, {{cplx{0.25, -1.5}, "dark"}});
    CHECK(os.str() == "re,im,region\n0.250000,-1.500000,dark\n");
}
