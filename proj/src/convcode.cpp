#include "bicm/convcode.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace bicm {

namespace {

std::uint32_t octal_to_mask(int octal_digits) {
    if (octal_digits < 0) throw std::invalid_argument("ConvCode: bad generator");
    std::uint32_t mask = 0;
    std::uint32_t shift = 0;
    int v = octal_digits;
    while (v > 0) {
        const int digit = v % 10;
        if (digit > 7) throw std::invalid_argument("ConvCode: generator is not octal");
        mask |= static_cast<std::uint32_t>(digit) << shift;
        shift += 3;
        v /= 10;
    }
    return mask;
}

}  // namespace

ConvCode ConvCode::from_octal(int g0, int g1) {
    ConvCode code;
    code.taps = {octal_to_mask(g0), octal_to_mask(g1)};
    const std::uint32_t all = code.taps[0] | code.taps[1];
    if (all == 0) throw std::invalid_argument("ConvCode: zero generators");
    code.constraint_length = std::bit_width(all);
    if (code.constraint_length < 2 || code.constraint_length > 16)
        throw std::invalid_argument("ConvCode: unsupported constraint length");
    return code;
}

std::array<int, 3> ConvCode::step(int state, int input) const {
    const std::uint32_t reg =
        (static_cast<std::uint32_t>(input) << (constraint_length - 1)) | static_cast<std::uint32_t>(state);
    const int out0 = std::popcount(reg & taps[0]) & 1;
    const int out1 = std::popcount(reg & taps[1]) & 1;
    return {out0, out1, static_cast<int>(reg >> 1)};
}

std::vector<std::uint8_t> encode(const ConvCode& code, const std::vector<std::uint8_t>& info) {
    const int tail = code.constraint_length - 1;
    std::vector<std::uint8_t> out;
    out.reserve(2 * (info.size() + static_cast<size_t>(tail)));
    int state = 0;
    auto push = [&](int u) {
        const auto [o0, o1, ns] = code.step(state, u);
        out.push_back(static_cast<std::uint8_t>(o0));
        out.push_back(static_cast<std::uint8_t>(o1));
        state = ns;
    };
    for (const auto b : info) push(b & 1);
    for (int t = 0; t < tail; ++t) push(0);
    return out;
}

WeightSpectrum weight_spectrum(const ConvCode& code, int d_max) {
    if (d_max < 1 || d_max > 40) throw std::invalid_argument("weight_spectrum: d_max out of range");

    const int n_states = code.n_states();
    struct Bucket {
        std::uint64_t count = 0;
        std::uint64_t iw = 0;
    };
    const auto idx = [d_max](int s, int w) { return static_cast<size_t>(s) * (d_max + 1) + w; };
    std::vector<Bucket> cur(static_cast<size_t>(n_states) * (d_max + 1));
    std::vector<Bucket> nxt(cur.size());

    WeightSpectrum spec;
    spec.d_max = d_max;
    spec.path_count.assign(static_cast<size_t>(d_max + 1), 0);
    spec.info_weight.assign(static_cast<size_t>(d_max + 1), 0);

    // diverge from the zero state with input 1
    {
        const auto [o0, o1, ns] = code.step(0, 1);
        const int w = o0 + o1;
        if (w <= d_max) {
            cur[idx(ns, w)].count = 1;
            cur[idx(ns, w)].iw = 1;
        }
    }

    for (int pass = 0; pass < 100000; ++pass) {
        bool any = false;
        for (auto& b : nxt) b = Bucket{};
        for (int s = 1; s < n_states; ++s) {
            for (int w = 0; w <= d_max; ++w) {
                const Bucket& b = cur[idx(s, w)];
                if (b.count == 0) continue;
                for (int u = 0; u <= 1; ++u) {
                    const auto [o0, o1, ns] = code.step(s, u);
                    const int w2 = w + o0 + o1;
                    if (w2 > d_max) continue;
                    const std::uint64_t iw2 = b.iw + static_cast<std::uint64_t>(u) * b.count;
                    if (ns == 0) {
                        spec.path_count[static_cast<size_t>(w2)] += b.count;
                        spec.info_weight[static_cast<size_t>(w2)] += iw2;
                    } else {
                        nxt[idx(ns, w2)].count += b.count;
                        nxt[idx(ns, w2)].iw += iw2;
                        any = true;
                    }
                }
            }
        }
        cur.swap(nxt);
        if (!any) break;
    }

    spec.d_free = 0;
    for (int d = 0; d <= d_max; ++d)
        if (spec.path_count[static_cast<size_t>(d)] > 0) {
            spec.d_free = d;
            break;
        }
    if (spec.d_free == 0) throw std::invalid_argument("weight_spectrum: no detour within d_max");
    if (d_max > spec.d_free + 20)
        throw std::invalid_argument("weight_spectrum: d_max exceeds d_free + 20");
    return spec;
}

std::vector<std::uint8_t> viterbi(const ConvCode& code,
                                  const std::vector<std::array<double, 2>>& bit_metrics) {
    if (bit_metrics.size() % 2 != 0)
        throw std::invalid_argument("viterbi: metric count must be even (two coded bits per step)");
    const int steps = static_cast<int>(bit_metrics.size() / 2);
    const int tail = code.constraint_length - 1;
    if (steps <= tail) throw std::invalid_argument("viterbi: sequence shorter than the tail");

    const int n_states = code.n_states();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> pm(static_cast<size_t>(n_states), kInf);
    std::vector<double> pm_next(static_cast<size_t>(n_states));
    std::vector<std::uint8_t> from(static_cast<size_t>(n_states) * static_cast<size_t>(steps));
    pm[0] = 0.0;

    // precomputed branch outputs
    std::vector<std::array<std::uint8_t, 2>> outs(static_cast<size_t>(n_states) * 2);
    std::vector<int> next_state(static_cast<size_t>(n_states) * 2);
    for (int s = 0; s < n_states; ++s)
        for (int u = 0; u <= 1; ++u) {
            const auto [o0, o1, ns] = code.step(s, u);
            outs[static_cast<size_t>(s) * 2 + u] = {static_cast<std::uint8_t>(o0),
                                                    static_cast<std::uint8_t>(o1)};
            next_state[static_cast<size_t>(s) * 2 + u] = ns;
        }

    for (int t = 0; t < steps; ++t) {
        const auto& m0 = bit_metrics[static_cast<size_t>(2 * t)];
        const auto& m1 = bit_metrics[static_cast<size_t>(2 * t) + 1];
        for (int s = 0; s < n_states; ++s) pm_next[static_cast<size_t>(s)] = kInf;
        for (int s = 0; s < n_states; ++s) {
            const double base = pm[static_cast<size_t>(s)];
            if (base == kInf) continue;
            for (int u = 0; u <= 1; ++u) {
                const auto& o = outs[static_cast<size_t>(s) * 2 + u];
                const int ns = next_state[static_cast<size_t>(s) * 2 + u];
                const double metric = base + m0[o[0]] + m1[o[1]];
                // strict < keeps the smaller predecessor state on ties
                if (metric < pm_next[static_cast<size_t>(ns)]) {
                    pm_next[static_cast<size_t>(ns)] = metric;
                    from[static_cast<size_t>(t) * n_states + ns] = static_cast<std::uint8_t>(s);
                }
            }
        }
        pm.swap(pm_next);
    }

    // forced zero-state termination
    std::vector<std::uint8_t> decoded(static_cast<size_t>(steps));
    int state = 0;
    for (int t = steps - 1; t >= 0; --t) {
        const int prev = from[static_cast<size_t>(t) * n_states + state];
        decoded[static_cast<size_t>(t)] =
            static_cast<std::uint8_t>((state >> (code.constraint_length - 2)) & 1);
        state = prev;
    }
    decoded.resize(static_cast<size_t>(steps - tail));
    return decoded;
}

void write_spectrum_csv(std::ostream& os, const WeightSpectrum& spec) {
    os << "d,A_d,W_I\n";
    for (int d = spec.d_free; d <= spec.d_max; ++d)
        os << d << ',' << spec.a(d) << ',' << spec.wi(d) << '\n';
}

UnionBoundResult ber_union_bound(const WeightSpectrum& spec, const std::function<double(int)>& f) {
    UnionBoundResult out;
    double last_term = 0.0;
    for (int d = spec.d_free; d <= spec.d_max; ++d) {
        if (spec.wi(d) == 0) continue;
        const double term = static_cast<double>(spec.wi(d)) * f(d);
        out.value += term;
        last_term = term;
    }
    out.last_term_ratio = out.value > 0.0 ? last_term / out.value : 0.0;
    return out;
}

}  // namespace bicm
