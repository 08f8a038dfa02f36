#include "bicm/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bicm {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

double ci_halfwidth(double p, std::uint64_t n) {
    if (n == 0) return 0.0;
    return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
    for (auto& word : s_) word = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cplx Rng::next_cn() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint32_t Rng::next_below(std::uint32_t n) {
    // Lemire's multiply-shift; deterministic and unbiased
    std::uint64_t x = next_u64() >> 32;
    std::uint64_t m = x * n;
    std::uint32_t lo = static_cast<std::uint32_t>(m);
    if (lo < n) {
        const std::uint32_t t = (0u - n) % n;
        while (lo < t) {
            x = next_u64() >> 32;
            m = x * n;
            lo = static_cast<std::uint32_t>(m);
        }
    }
    return static_cast<std::uint32_t>(m >> 32);
}

namespace {

struct SubsetMasks {
    // member point indices for every (bit position, bit value)
    std::vector<std::vector<int>> members;  // [(i-1)*2 + b]
};

SubsetMasks build_masks(const Constellation& c) {
    SubsetMasks masks;
    masks.members.resize(static_cast<size_t>(c.m) * 2);
    for (int i = 1; i <= c.m; ++i)
        for (int b = 0; b <= 1; ++b)
            masks.members[static_cast<size_t>(i - 1) * 2 + b] = subset(c, i, b).members;
    return masks;
}

enum Stream : std::uint64_t { kBits = 0, kInterleaver = 1, kFading = 2, kNoise = 3 };

std::uint64_t stream_id(std::uint64_t block, std::uint64_t kind) { return block * 4 + kind + 1; }

}  // namespace

BerEstimate simulate_ber(const SimConfig& cfg) {
    const Constellation& c = cfg.constellation;
    if (cfg.blocks < 1) throw std::invalid_argument("simulate_ber: blocks must be >= 1");
    if (cfg.block_info_bits < 1)
        throw std::invalid_argument("simulate_ber: block length must be >= 1");
    if (c.m < 1) throw std::invalid_argument("simulate_ber: invalid constellation");

    const SubsetMasks masks = build_masks(c);
    std::vector<int> label_to_index(static_cast<size_t>(c.size()));
    for (int p = 0; p < c.size(); ++p)
        label_to_index[c.labels[static_cast<size_t>(p)]] = p;

    const int tail = cfg.code.constraint_length - 1;
    const int coded_len = 2 * (cfg.block_info_bits + tail);
    const int n_pad = (c.m - coded_len % c.m) % c.m;
    const int n_syms = (coded_len + n_pad) / c.m;
    const bool fading = cfg.channel.model == ChannelModel::rayleigh_csi;
    const double noise_sd = std::sqrt(cfg.channel.n0 / 2.0);

    std::uint64_t errors = 0, bits = 0;
    std::vector<std::uint8_t> info(static_cast<size_t>(cfg.block_info_bits));
    std::vector<int> perm(static_cast<size_t>(coded_len));
    std::vector<std::uint8_t> tx_bits(static_cast<size_t>(coded_len + n_pad));
    std::vector<std::array<double, 2>> tx_metrics(static_cast<size_t>(coded_len + n_pad));
    std::vector<std::array<double, 2>> metrics(static_cast<size_t>(coded_len));
    std::vector<double> dist(static_cast<size_t>(c.size()));

    for (int block = 0; block < cfg.blocks; ++block) {
        Rng bits_rng(cfg.seed, stream_id(static_cast<std::uint64_t>(block), kBits));
        Rng intl_rng(cfg.seed, stream_id(static_cast<std::uint64_t>(block), kInterleaver));
        Rng fade_rng(cfg.seed, stream_id(static_cast<std::uint64_t>(block), kFading));
        Rng noise_rng(cfg.seed, stream_id(static_cast<std::uint64_t>(block), kNoise));

        for (auto& b : info) b = static_cast<std::uint8_t>(bits_rng.next_u64() & 1);
        const std::vector<std::uint8_t> coded = encode(cfg.code, info);

        // fresh uniform random permutation; tx position k carries coded bit perm[k]
        for (int k = 0; k < coded_len; ++k) perm[static_cast<size_t>(k)] = k;
        for (int k = coded_len - 1; k > 0; --k)
            std::swap(perm[static_cast<size_t>(k)],
                      perm[intl_rng.next_below(static_cast<std::uint32_t>(k + 1))]);

        for (int k = 0; k < coded_len; ++k)
            tx_bits[static_cast<size_t>(k)] = coded[static_cast<size_t>(perm[static_cast<size_t>(k)])];
        for (int k = coded_len; k < coded_len + n_pad; ++k) tx_bits[static_cast<size_t>(k)] = 0;

        for (int sym = 0; sym < n_syms; ++sym) {
            std::uint32_t label = 0;
            for (int j = 0; j < c.m; ++j)
                label = (label << 1) | tx_bits[static_cast<size_t>(sym * c.m + j)];
            const cplx x = c.points[static_cast<size_t>(label_to_index[label])];

            cplx h{1.0, 0.0};
            if (fading && !cfg.force_unit_fading) h = fade_rng.next_cn();
            cplx y = h * x;
            if (noise_sd > 0.0)
                y += cplx{noise_sd * noise_rng.next_gaussian(), noise_sd * noise_rng.next_gaussian()};

            for (int p = 0; p < c.size(); ++p)
                dist[static_cast<size_t>(p)] = std::norm(y - h * c.points[static_cast<size_t>(p)]);
            for (int i = 1; i <= c.m; ++i) {
                std::array<double, 2> lambda{std::numeric_limits<double>::infinity(),
                                             std::numeric_limits<double>::infinity()};
                for (int b = 0; b <= 1; ++b)
                    for (int p : masks.members[static_cast<size_t>(i - 1) * 2 + b])
                        lambda[static_cast<size_t>(b)] =
                            std::min(lambda[static_cast<size_t>(b)], dist[static_cast<size_t>(p)]);
                tx_metrics[static_cast<size_t>(sym * c.m + i - 1)] = lambda;
            }
        }

        for (int k = 0; k < coded_len; ++k)
            metrics[static_cast<size_t>(perm[static_cast<size_t>(k)])] = tx_metrics[static_cast<size_t>(k)];

        const std::vector<std::uint8_t> decoded = viterbi(cfg.code, metrics);
        for (int k = 0; k < cfg.block_info_bits; ++k)
            errors += decoded[static_cast<size_t>(k)] != info[static_cast<size_t>(k)];
        bits += static_cast<std::uint64_t>(cfg.block_info_bits);
        if (errors >= cfg.max_errors) break;
    }

    BerEstimate est;
    est.bits = bits;
    est.errors = errors;
    est.ber = bits ? static_cast<double>(errors) / static_cast<double>(bits) : 0.0;
    est.ci95 = ci_halfwidth(est.ber, bits);
    return est;
}

BerEstimate estimate_f(const Constellation& c, const ChannelSpec& ch, int d, std::uint64_t trials,
                       std::uint64_t seed) {
    if (d < 1) throw std::invalid_argument("estimate_f: d must be >= 1");
    const SubsetMasks masks = build_masks(c);
    const bool fading = ch.model == ChannelModel::rayleigh_csi;
    const double noise_sd = std::sqrt(ch.n0 / 2.0);
    const std::uint32_t half = static_cast<std::uint32_t>(c.size() / 2);

    Rng rng(seed, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double own = 0.0, opp = 0.0;
        for (int l = 0; l < d; ++l) {
            const int i = 1 + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(c.m)));
            const int b = static_cast<int>(rng.next_below(2));
            const auto& own_members = masks.members[static_cast<size_t>(i - 1) * 2 + b];
            const auto& opp_members = masks.members[static_cast<size_t>(i - 1) * 2 + (1 - b)];
            const cplx x = c.points[static_cast<size_t>(own_members[rng.next_below(half)])];

            cplx h{1.0, 0.0};
            if (fading) h = rng.next_cn();
            cplx y = h * x;
            if (noise_sd > 0.0)
                y += cplx{noise_sd * rng.next_gaussian(), noise_sd * rng.next_gaussian()};

            double best_own = std::numeric_limits<double>::infinity();
            double best_opp = std::numeric_limits<double>::infinity();
            for (int p : own_members)
                best_own = std::min(best_own, std::norm(y - h * c.points[static_cast<size_t>(p)]));
            for (int p : opp_members)
                best_opp = std::min(best_opp, std::norm(y - h * c.points[static_cast<size_t>(p)]));
            own += best_own;
            opp += best_opp;
        }
        hits += (opp <= own);
    }

    BerEstimate est;
    est.bits = trials;
    est.errors = hits;
    est.ber = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
    est.ci95 = ci_halfwidth(est.ber, trials);
    return est;
}

}  // namespace bicm
