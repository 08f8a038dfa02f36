#ifndef BICM_CONVCODE_HPP
#define BICM_CONVCODE_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <ostream>
#include <vector>

namespace bicm {

/// Rate-1/2 binary convolutional code. Generators are MSB-first tap masks
/// over (current input, previous inputs); the default (o133, o171) code has
/// 64 states.
struct ConvCode {
    int constraint_length = 7;
    std::array<std::uint32_t, 2> taps{0b1011011u, 0b1111001u};

    int n_states() const { return 1 << (constraint_length - 1); }

    /// g0/g1 given as octal numbers written in decimal (e.g. 133, 171).
    static ConvCode from_octal(int g0, int g1);

    /// One trellis step: returns {out0, out1, next_state}.
    std::array<int, 3> step(int state, int input) const;
};

struct WeightSpectrum {
    int d_free = 0;
    int d_max = 0;
    std::vector<std::uint64_t> path_count;   // A_d, indexed by output weight
    std::vector<std::uint64_t> info_weight;  // W_I(d)

    std::uint64_t a(int d) const { return path_count[static_cast<size_t>(d)]; }
    std::uint64_t wi(int d) const { return info_weight[static_cast<size_t>(d)]; }
};

/// Zero-state start, zero-tail termination (constraint_length-1 flush bits);
/// output length is 2*(input length + tail).
std::vector<std::uint8_t> encode(const ConvCode& code, const std::vector<std::uint8_t>& info);

/// Exact counts of detours from the zero state with output weight <= d_max,
/// by breadth-first propagation over the state graph.
WeightSpectrum weight_spectrum(const ConvCode& code, int d_max);

/// Soft-decision Viterbi over externally supplied per-coded-bit metric pairs
/// (lambda(0), lambda(1)), smaller is better. Zero-state start and end;
/// ties break toward the smaller predecessor state. Returns the info bits
/// (tail stripped).
std::vector<std::uint8_t> viterbi(const ConvCode& code,
                                  const std::vector<std::array<double, 2>>& bit_metrics);

struct UnionBoundResult {
    double value = 0.0;
    double last_term_ratio = 0.0;  // truncation diagnostic
};

/// sum over d of W_I(d) * f(d) for d in [d_free, d_max].
UnionBoundResult ber_union_bound(const WeightSpectrum& spec,
                                 const std::function<double(int)>& f);

/// CSV rows `d,A_d,W_I` for d in [d_free, d_max].
void write_spectrum_csv(std::ostream& os, const WeightSpectrum& spec);

}  // namespace bicm

#endif
