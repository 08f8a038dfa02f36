#include "bicm/constellation.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bicm {

namespace {

std::uint32_t gray_code(std::uint32_t k) { return k ^ (k >> 1); }

int ilog2(int v) {
    int b = 0;
    while ((1 << b) < v) ++b;
    return b;
}

}  // namespace

double Constellation::average_energy() const {
    double s = 0.0;
    for (const auto& p : points) s += std::norm(p);
    return s / static_cast<double>(points.size());
}

std::string Constellation::label_string(int point_idx) const {
    std::string out(static_cast<size_t>(m), '0');
    for (int i = 1; i <= m; ++i)
        out[static_cast<size_t>(i - 1)] = label_bit(point_idx, i) ? '1' : '0';
    return out;
}

int Constellation::index_of_label(std::uint32_t label) const {
    for (int i = 0; i < size(); ++i)
        if (labels[static_cast<size_t>(i)] == label) return i;
    return -1;
}

Constellation build_square_qam(int order, Labeling labeling) {
    if (order != 4 && order != 16 && order != 64)
        throw std::invalid_argument("build_square_qam: order must be 4, 16 or 64");
    if (labeling != Labeling::gray && labeling != Labeling::sp)
        throw std::invalid_argument("build_square_qam: labeling must be gray or sp");

    const int m = ilog2(order);
    const int per_axis = 1 << (m / 2);
    // unit average energy: 2*delta^2*(L^2-1)/3 = 1
    const double delta = std::sqrt(3.0 / (2.0 * (per_axis * per_axis - 1)));

    Constellation c;
    c.m = m;
    c.geometry = GeometryKind::rect_lattice;
    c.lattice = LatticeSpec{delta, per_axis};
    c.labeling = labeling;
    c.name = std::to_string(order) + "QAM";
    c.points.reserve(static_cast<size_t>(order));
    c.labels.reserve(static_cast<size_t>(order));

    for (int u = 0; u < per_axis; ++u) {
        for (int v = 0; v < per_axis; ++v) {
            const double re = (2 * u - per_axis + 1) * delta;
            const double im = (2 * v - per_axis + 1) * delta;
            std::uint32_t label = 0;
            if (labeling == Labeling::gray) {
                label = (gray_code(static_cast<std::uint32_t>(u)) << (m / 2)) |
                        gray_code(static_cast<std::uint32_t>(v));
            } else {
                // set partitioning: one (checkerboard, line-parity) bit pair
                // per lattice level, MSB first
                for (int level = 0; level < m / 2; ++level) {
                    const std::uint32_t b_check =
                        static_cast<std::uint32_t>(((u >> level) + (v >> level)) & 1);
                    const std::uint32_t b_line = static_cast<std::uint32_t>((v >> level) & 1);
                    label |= b_check << (m - 1 - 2 * level);
                    label |= b_line << (m - 2 - 2 * level);
                }
            }
            c.points.emplace_back(re, im);
            c.labels.push_back(label);
        }
    }
    return c;
}

Constellation build_psk(int n_points, Labeling labeling) {
    if (n_points != 4 && n_points != 8)
        throw std::invalid_argument("build_psk: n_points must be 4 or 8");
    if (labeling != Labeling::gray && labeling != Labeling::sp)
        throw std::invalid_argument("build_psk: labeling must be gray or sp");

    Constellation c;
    c.m = ilog2(n_points);
    c.geometry = GeometryKind::circle;
    c.circle_radius = 1.0;
    c.labeling = labeling;
    c.name = std::to_string(n_points) + "PSK";
    for (int k = 0; k < n_points; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / n_points;
        c.points.emplace_back(std::cos(ang), std::sin(ang));
        c.labels.push_back(labeling == Labeling::gray ? gray_code(static_cast<std::uint32_t>(k))
                                                      : static_cast<std::uint32_t>(k));
    }
    return c;
}

Constellation build_theorem1_variant(double theta_deg) {
    if (!(theta_deg >= 0.0 && theta_deg < 90.0))
        throw std::invalid_argument("build_theorem1_variant: theta must be in [0, 90) degrees");

    const double rad = std::numbers::pi / 180.0;
    Constellation c;
    c.m = 2;
    c.geometry = GeometryKind::circle;
    c.circle_radius = 1.0;
    c.labeling = Labeling::gray;
    c.name = "t1-qpsk";
    const double a01 = (90.0 - theta_deg) * rad;
    c.points = {cplx{1.0, 0.0}, cplx{std::cos(a01), std::sin(a01)}, cplx{-1.0, 0.0},
                cplx{0.0, -1.0}};
    c.labels = {0b00u, 0b01u, 0b11u, 0b10u};
    return c;
}

Constellation load_constellation_csv(std::istream& in) {
    Constellation c;
    c.geometry = GeometryKind::custom;
    c.labeling = Labeling::custom;
    c.name = "custom";

    std::string line;
    size_t label_len = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string re_s, im_s, label_s;
        if (!std::getline(is, re_s, ',') || !std::getline(is, im_s, ',') ||
            !std::getline(is, label_s))
            throw std::invalid_argument("load_constellation_csv: expected re,im,label rows");
        if (label_len == 0) label_len = label_s.size();
        if (label_s.size() != label_len || label_len == 0 || label_len > 16)
            throw std::invalid_argument("load_constellation_csv: inconsistent label length");
        std::uint32_t label = 0;
        for (char ch : label_s) {
            if (ch != '0' && ch != '1')
                throw std::invalid_argument("load_constellation_csv: labels must be binary strings");
            label = (label << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        c.points.emplace_back(std::stod(re_s), std::stod(im_s));
        c.labels.push_back(label);
    }
    c.m = static_cast<int>(label_len);
    if (c.size() != (1 << c.m))
        throw std::invalid_argument("load_constellation_csv: need exactly 2^m points");
    std::set<std::uint32_t> distinct(c.labels.begin(), c.labels.end());
    if (distinct.size() != c.labels.size())
        throw std::invalid_argument("load_constellation_csv: duplicate labels");
    if (std::abs(c.average_energy() - 1.0) > 1e-6)
        throw std::invalid_argument("load_constellation_csv: average energy must be 1");
    return c;
}

BitSubset subset(const Constellation& c, int bit_pos, int bit_value) {
    if (bit_pos < 1 || bit_pos > c.m)
        throw std::invalid_argument("subset: bit position out of range");
    if (bit_value != 0 && bit_value != 1)
        throw std::invalid_argument("subset: bit value must be 0 or 1");
    BitSubset s;
    s.bit_pos = bit_pos;
    s.bit_value = bit_value;
    for (int i = 0; i < c.size(); ++i)
        if (c.label_bit(i, bit_pos) == bit_value) s.members.push_back(i);
    return s;
}

}  // namespace bicm
