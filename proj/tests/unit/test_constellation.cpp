#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <sstream>

#include "bicm/constellation.hpp"

using namespace bicm;

namespace {

void check_basic_invariants(const Constellation& c) {
    CHECK(c.size() == (1 << c.m));
    std::set<std::uint32_t> labels(c.labels.begin(), c.labels.end());
    CHECK(labels.size() == c.labels.size());
    for (auto l : c.labels) CHECK(l < (1u << c.m));
    CHECK(c.average_energy() == doctest::Approx(1.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("square QAM geometry and normalization") {
    for (int order : {4, 16, 64}) {
        const Constellation c = build_square_qam(order, Labeling::gray);
        check_basic_invariants(c);
        // every point on the declared lattice: odd multiples of the spacing
        for (const auto& p : c.points) {
            const double u = p.real() / c.lattice.spacing;
            const double v = p.imag() / c.lattice.spacing;
            CHECK(std::abs(u - std::round(u)) < 1e-12);
            CHECK(std::abs(std::fmod(std::abs(std::round(u)), 2.0) - 1.0) < 1e-12);
            CHECK(std::abs(v - std::round(v)) < 1e-12);
        }
    }
    CHECK(build_square_qam(16, Labeling::gray).lattice.spacing ==
          doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-14));
    CHECK(build_square_qam(64, Labeling::gray).lattice.spacing ==
          doctest::Approx(1.0 / std::sqrt(42.0)).epsilon(1e-14));
}

TEST_CASE("QPSK points sit at (+-1 +- j)/sqrt(2)") {
    const Constellation c = build_square_qam(4, Labeling::gray);
    const double a = 1.0 / std::numbers::sqrt2;
    for (const auto& p : c.points) {
        CHECK(std::abs(std::abs(p.real()) - a) < 1e-12);
        CHECK(std::abs(std::abs(p.imag()) - a) < 1e-12);
    }
}

TEST_CASE("gray 16QAM axis labels run 00,01,11,10 along each axis") {
    const Constellation c = build_square_qam(16, Labeling::gray);
    const double d = c.lattice.spacing;
    // walk the row at the lowest quadrature coordinate
    const std::uint32_t expected[4] = {0b00u, 0b01u, 0b11u, 0b10u};
    for (int k = 0; k < 4; ++k) {
        const cplx target{(2 * k - 3) * d, -3 * d};
        for (int p = 0; p < c.size(); ++p) {
            if (std::abs(c.points[p] - target) < 1e-12) {
                CHECK((c.labels[p] >> 2) == expected[k]);  // in-phase bit pair
                CHECK((c.labels[p] & 3u) == expected[0]);  // quadrature pair of this row
            }
        }
    }
}

TEST_CASE("PSK constructors") {
    const Constellation g8 = build_psk(8, Labeling::gray);
    check_basic_invariants(g8);
    const std::uint32_t cyc[8] = {0b000, 0b001, 0b011, 0b010, 0b110, 0b111, 0b101, 0b100};
    for (int k = 0; k < 8; ++k) CHECK(g8.labels[k] == cyc[k]);

    const Constellation s8 = build_psk(8, Labeling::sp);
    for (int k = 0; k < 8; ++k) CHECK(s8.labels[k] == static_cast<std::uint32_t>(k));

    // 4PSK gray equals the 2x2 QAM up to a global rotation by 45 degrees
    const Constellation p4 = build_psk(4, Labeling::gray);
    const Constellation q4 = build_square_qam(4, Labeling::gray);
    const cplx rot = std::polar(1.0, std::numbers::pi / 4.0);
    for (const auto& p : p4.points) {
        const cplx r = p * rot;
        const bool found = std::any_of(q4.points.begin(), q4.points.end(),
                                       [&](const cplx& q) { return std::abs(q - r) < 1e-12; });
        CHECK(found);
    }
}

TEST_CASE("theorem-1 variant constellation") {
    const Constellation c = build_theorem1_variant(30.0);
    check_basic_invariants(c);
    for (const auto& p : c.points) CHECK(std::abs(std::abs(p) - 1.0) < 1e-12);
    CHECK(std::arg(c.points[1]) == doctest::Approx(60.0 * std::numbers::pi / 180.0));
    CHECK(c.labels[0] == 0b00u);
    CHECK(c.labels[1] == 0b01u);
    CHECK(c.labels[2] == 0b11u);
    CHECK(c.labels[3] == 0b10u);

    // theta = 0 degenerates to standard QPSK
    const Constellation c0 = build_theorem1_variant(0.0);
    CHECK(std::abs(c0.points[1] - cplx{0.0, 1.0}) < 1e-12);

    CHECK_THROWS_AS(build_theorem1_variant(90.0), std::invalid_argument);
    CHECK_THROWS_AS(build_theorem1_variant(-1.0), std::invalid_argument);
}

TEST_CASE("subsets partition the constellation into equal halves") {
    for (const auto& c : {build_psk(4, Labeling::gray), build_psk(8, Labeling::sp),
                          build_square_qam(16, Labeling::gray), build_square_qam(64, Labeling::gray),
                          build_square_qam(16, Labeling::sp)}) {
        for (int i = 1; i <= c.m; ++i) {
            const BitSubset s0 = subset(c, i, 0);
            const BitSubset s1 = subset(c, i, 1);
            CHECK(s0.members.size() == static_cast<size_t>(c.size() / 2));
            CHECK(s1.members.size() == static_cast<size_t>(c.size() / 2));
            std::set<int> all(s0.members.begin(), s0.members.end());
            all.insert(s1.members.begin(), s1.members.end());
            CHECK(all.size() == static_cast<size_t>(c.size()));
            for (int idx : s0.members) CHECK(c.label_bit(idx, i) == 0);
        }
    }
}

TEST_CASE("gray square QAM: bit value is constant along the row or column") {
    for (int order : {16, 64}) {
        const Constellation c = build_square_qam(order, Labeling::gray);
        for (int i = 1; i <= c.m; ++i) {
            bool const_along_col = true, const_along_row = true;
            for (int p = 0; p < c.size(); ++p)
                for (int q = 0; q < c.size(); ++q) {
                    if (std::abs(c.points[p].real() - c.points[q].real()) < 1e-12 &&
                        c.label_bit(p, i) != c.label_bit(q, i))
                        const_along_col = false;
                    if (std::abs(c.points[p].imag() - c.points[q].imag()) < 1e-12 &&
                        c.label_bit(p, i) != c.label_bit(q, i))
                        const_along_row = false;
                }
            CHECK((const_along_col || const_along_row));
        }
    }
}

TEST_CASE("16QAM gray: outer columns form one subset of the inner/outer bit") {
    const Constellation c = build_square_qam(16, Labeling::gray);
    const double d = c.lattice.spacing;
    // find the bit whose 0-or-1 class is exactly the two outer columns
    bool found = false;
    for (int i = 1; i <= c.m && !found; ++i)
        for (int b = 0; b <= 1 && !found; ++b) {
            const BitSubset s = subset(c, i, b);
            bool outer = s.members.size() == 8;
            for (int idx : s.members)
                outer = outer && std::abs(std::abs(c.points[idx].real()) - 3 * d) < 1e-12;
            found = outer;
        }
    CHECK(found);
}

TEST_CASE("construction is deterministic") {
    const Constellation a = build_square_qam(64, Labeling::gray);
    const Constellation b = build_square_qam(64, Labeling::gray);
    CHECK(a.points == b.points);
    CHECK(a.labels == b.labels);
}

TEST_CASE("custom constellation file hook") {
    const double a = 1.0 / std::numbers::sqrt2;
    std::ostringstream rows;
    rows.precision(17);
    rows << "# custom QPSK\n";
    rows << a << "," << a << ",00\n" << -a << "," << a << ",01\n";
    rows << -a << "," << -a << ",11\n" << a << "," << -a << ",10\n";
    std::istringstream in(rows.str());
    const Constellation c = load_constellation_csv(in);
    CHECK(c.m == 2);
    check_basic_invariants(c);
    CHECK(subset(c, 1, 0).members.size() == 2);

    std::istringstream dupes("1,0,0\n-1,0,0\n");
    CHECK_THROWS_AS(load_constellation_csv(dupes), std::invalid_argument);
    std::istringstream unnormalized("2,0,0\n-2,0,1\n");
    CHECK_THROWS_AS(load_constellation_csv(unnormalized), std::invalid_argument);
}

TEST_CASE("constructor errors") {
    CHECK_THROWS_AS(build_square_qam(32, Labeling::gray), std::invalid_argument);
    CHECK_THROWS_AS(build_psk(16, Labeling::gray), std::invalid_argument);
    const Constellation c = build_psk(4, Labeling::gray);
    CHECK_THROWS_AS(subset(c, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(subset(c, 3, 0), std::invalid_argument);
    CHECK_THROWS_AS(subset(c, 1, 2), std::invalid_argument);
}
