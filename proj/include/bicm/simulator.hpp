#ifndef BICM_SIMULATOR_HPP
#define BICM_SIMULATOR_HPP

#include <cstdint>

#include "bicm/constellation.hpp"
#include "bicm/convcode.hpp"
#include "bicm/pep.hpp"

namespace bicm {

/// xoshiro256++ seeded through splitmix64 from (seed, stream). Gaussian
/// draws use Box-Muller on explicit 53-bit uniforms, so outputs are
/// bit-reproducible across platforms and independent of the standard
/// library's distributions.
class Rng {
 public:
    Rng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    double next_double();  // [0, 1)
    double next_gaussian();
    cplx next_cn();                        // CN(0,1)
    std::uint32_t next_below(std::uint32_t n);

 private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct SimConfig {
    Constellation constellation;
    ChannelSpec channel;
    ConvCode code;
    int block_info_bits = 10000;
    int blocks = 200;
    std::uint64_t seed = 1;
    std::uint64_t max_errors = 10000;  // early stop
    bool force_unit_fading = false;    // test hook: rayleigh path with h = 1
};

struct BerEstimate {
    double ber = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ci95 = 0.0;
};

/// Full BICM chain: encode, per-block uniform random bit interleaving,
/// label mapping, channel, suboptimal per-bit metrics
/// lambda_i(y, b) = min over z in X_b^i of |y - h z|^2, Viterbi decoding.
/// Deterministic given the seed; RNG streams are derived per block.
BerEstimate simulate_ber(const SimConfig& cfg);

/// Direct Monte Carlo of the subset decision event behind f(d): draws d
/// independent (bit position, bit value, point) triples plus channel
/// realizations and tests whether the best opposite-subset metric beats the
/// best same-subset metric.
BerEstimate estimate_f(const Constellation& c, const ChannelSpec& ch, int d,
                       std::uint64_t trials, std::uint64_t seed);

}  // namespace bicm

#endif
