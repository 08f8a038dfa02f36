#ifndef BICM_EXPURGATION_HPP
#define BICM_EXPURGATION_HPP

#include <string>
#include <vector>

#include "bicm/constellation.hpp"

namespace bicm {

/// orig: single nearest opposite-subset neighbor (the original expurgated
/// bound). v1: nearest opposite neighbors on both sides where needed.
/// v2: extended-lattice mirror points whose pairwise decision boundaries
/// coincide with the actual subset decision boundaries.
enum class Variant { orig, v1, v2 };

struct Target {
    enum class Kind { point, extended, aleph };
    Kind kind = Kind::aleph;
    int point_index = -1;  // valid for Kind::point
    cplx position{};       // valid for point and extended

    static Target aleph() { return Target{}; }
    static Target real(int idx, cplx pos) { return Target{Kind::point, idx, pos}; }
    static Target ext(cplx pos) { return Target{Kind::extended, -1, pos}; }
    bool is_aleph() const { return kind == Kind::aleph; }
};

/// Per (point, bit position) target lists. orig holds one target per slot,
/// the revised variants one or two non-aleph targets.
struct NeighborAssignment {
    Variant variant = Variant::orig;
    int m = 0;
    // targets[point_index][bit_pos-1]
    std::vector<std::vector<std::vector<Target>>> targets;
    bool nonstandard = false;  // built via the generalized 2-D rule
};

/// Neighbor selection for one (point, bit). Works on 1-D subset geometry:
/// square QAM whose subsets are unions of rows/columns (projected to the
/// axis) and PSK (handled angularly). For 2-D subsets, pass allow_2d to use
/// the generalized greedy-cover rule; otherwise an unsupported-geometry
/// error is thrown.
std::vector<Target> select_neighbors(const Constellation& c, int point_idx, int bit_pos,
                                     Variant variant, bool allow_2d = false);

NeighborAssignment assign_neighbors(const Constellation& c, Variant variant,
                                    bool allow_2d = false);

/// Harmonic mean squared distance over all (bit, value, point, target)
/// terms; aleph contributes zero. Variant orig gives the classical d_h^2,
/// v1/v2 the revised d_hc^2 values.
double harmonic_distance(const Constellation& c, Variant variant, bool allow_2d = false);

struct Table1Row {
    std::string constellation;
    std::string labeling;
    double dh2 = 0.0;
    double dhc1_2 = 0.0;
    double dhc2_2 = 0.0;
    std::string flags;
};

/// The harmonic-distance table for the built-in signal sets. The 16QAM-sp
/// revised columns use the generalized rule and are flagged `nonstandard`.
std::vector<Table1Row> table1();

}  // namespace bicm

#endif
