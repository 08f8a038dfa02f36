#ifndef BICM_PEP_HPP
#define BICM_PEP_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "bicm/constellation.hpp"
#include "bicm/expurgation.hpp"

namespace bicm {

enum class ChannelModel { awgn, rayleigh_csi };

/// Channel model plus noise level. rayleigh_csi is i.i.d. unit-mean-square
/// complex Gaussian fading per symbol, known at the receiver (K = 0).
struct ChannelSpec {
    ChannelModel model = ChannelModel::awgn;
    double es_n0_db = 0.0;
    double n0 = 1.0;  // complex noise variance at unit signal energy

    static ChannelSpec awgn(double es_n0_db);
    static ChannelSpec rayleigh(double es_n0_db);
};

/// Weighted squared-distance atoms from a neighbor assignment: every
/// (bit, value, point, target) term carries weight 1/(m*2^m); aleph terms
/// are dropped (their transform and PEP are zero), so total_mass is 1 for
/// the single-neighbor variant and up to 2 for the two-sided variants.
struct DistanceMixture {
    struct Atom {
        double d2 = 0.0;
        double weight = 0.0;
    };
    std::vector<Atom> atoms;
    double total_mass = 0.0;

    static DistanceMixture from_assignment(const Constellation& c, const NeighborAssignment& na);
    double harmonic_d2() const;  // 1 / sum(w/d2)
};

struct NumericalError : std::runtime_error {
    int nodes = 0;
    double rel_delta = 0.0;
    NumericalError(const std::string& what, int nodes_, double rel_delta_)
        : std::runtime_error(what), nodes(nodes_), rel_delta(rel_delta_) {}
};

/// Laplace transform of the per-pair metric difference.
/// awgn: exp(-s*d2 + s^2*d2*N0); rayleigh_csi: 1/(1 + d2*s*(1 - s*N0)).
std::complex<double> phi_delta(const ChannelSpec& ch, double d2, std::complex<double> s);

/// Exact pairwise error probability for a multiset of squared distances.
/// awgn: Q(sqrt(sum d2 / (2 N0))); rayleigh: angular integral evaluated by
/// adaptive quadrature to 1e-12 absolute.
double pep_exact(const ChannelSpec& ch, const std::vector<double>& d2_list);

struct FBoundDiag {
    double value = 0.0;
    int nodes = 0;
    double rel_delta = 0.0;
};

/// P(sum of d mixture draws <= 0) scaled by the mixture mass: numerically
/// inverts [sum_j w_j phi_j(s)]^d / s along Re s = 1/(2 N0) with a
/// Gauss-Chebyshev rule, doubling nodes until the result moves by less than
/// 1e-6 relative.
double f_bound(const DistanceMixture& mix, const ChannelSpec& ch, int d);
FBoundDiag f_bound_diag(const DistanceMixture& mix, const ChannelSpec& ch, int d);

/// Literal multinomial expansion of the same quantity via pep_exact; exact
/// but combinatorial, capped at d <= 12.
double f_bound_expansion(const DistanceMixture& mix, const ChannelSpec& ch, int d);

/// High-SNR Rayleigh diversity asymptote binom(2d-1, d) * (N0 / dhc2)^d.
double f_asymptotic(double dhc2, const ChannelSpec& ch, int d);

}  // namespace bicm

#endif
