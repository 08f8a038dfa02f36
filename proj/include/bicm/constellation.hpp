#ifndef BICM_CONSTELLATION_HPP
#define BICM_CONSTELLATION_HPP

#include <complex>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace bicm {

using cplx = std::complex<double>;

enum class Labeling { gray, sp, custom };
enum class GeometryKind { rect_lattice, circle, custom };

/// Rectangular lattice metadata: coordinates are odd multiples of `spacing`
/// (so adjacent points are 2*spacing apart), `per_axis` points per axis.
struct LatticeSpec {
    double spacing = 0.0;
    int per_axis = 0;
};

struct BitSubset {
    int bit_pos = 0;  // 1-based, MSB first
    int bit_value = 0;
    std::vector<int> members;
};

/// Labeled signal set, normalized to unit average energy.
/// Immutable after construction; safe for concurrent reads.
struct Constellation {
    int m = 0;                            // bits per symbol
    std::vector<cplx> points;             // 2^m positions
    std::vector<std::uint32_t> labels;    // 2^m labels, m bits each
    GeometryKind geometry = GeometryKind::custom;
    LatticeSpec lattice;
    double circle_radius = 0.0;
    Labeling labeling = Labeling::custom;
    std::string name;

    int size() const { return static_cast<int>(points.size()); }

    /// Label bit at 1-based position (position 1 = leftmost/MSB).
    int label_bit(int point_idx, int bit_pos) const {
        return static_cast<int>((labels[static_cast<size_t>(point_idx)] >> (m - bit_pos)) & 1u);
    }

    double average_energy() const;
    std::string label_string(int point_idx) const;
    int index_of_label(std::uint32_t label) const;
};

/// Square QAM, order in {4,16,64}. Coordinates are odd multiples of the
/// lattice spacing chosen for unit average energy (16QAM: 1/sqrt(10),
/// 64QAM: 1/sqrt(42)). Gray: reflected binary Gray code per axis, first
/// m/2 label bits on the in-phase axis. SP: set partitioning, see README.
Constellation build_square_qam(int order, Labeling labeling);

/// PSK with n_points in {4,8} on the unit circle at angles 2*pi*k/n.
/// Gray: cyclic reflected Gray sequence; SP: natural binary counterclockwise.
Constellation build_psk(int n_points, Labeling labeling);

/// The modified-QPSK set used by the Theorem-1 counterexample: unit-circle
/// points with label 00 at 0 deg, 01 at (90-theta) deg, 11 at 180 deg,
/// 10 at 270 deg. theta = 0 degenerates to standard Gray QPSK.
Constellation build_theorem1_variant(double theta_deg);

/// Points whose label has `bit_value` at 1-based `bit_pos`.
BitSubset subset(const Constellation& c, int bit_pos, int bit_value);

/// Custom-constellation file hook: CSV rows `re,im,label` with binary label
/// strings of equal length m, exactly 2^m distinct labels, average energy 1.
Constellation load_constellation_csv(std::istream& in);

}  // namespace bicm

#endif
