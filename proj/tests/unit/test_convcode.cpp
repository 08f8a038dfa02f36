#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bicm/convcode.hpp"

using namespace bicm;

namespace {

// independent oracle: depth-first enumeration of all detours from the zero
// state, capped by output weight and depth
struct DetourOracle {
    const ConvCode& code;
    int w_cap;
    int depth_cap;
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> wi;

    DetourOracle(const ConvCode& c, int cap, int depth) : code(c), w_cap(cap), depth_cap(depth) {
        a.assign(static_cast<size_t>(cap + 1), 0);
        wi.assign(static_cast<size_t>(cap + 1), 0);
        const auto [o0, o1, ns] = code.step(0, 1);
        walk(ns, o0 + o1, 1, 1);
    }

    void walk(int state, int w, int in_w, int depth) {
        if (w > w_cap || depth > depth_cap) return;
        for (int u = 0; u <= 1; ++u) {
            const auto [o0, o1, ns] = code.step(state, u);
            const int w2 = w + o0 + o1;
            if (w2 > w_cap) continue;
            if (ns == 0) {
                if (u == 0) {
                    a[static_cast<size_t>(w2)] += 1;
                    wi[static_cast<size_t>(w2)] += static_cast<std::uint64_t>(in_w);
                }
            } else {
                walk(ns, w2, in_w + u, depth + 1);
            }
        }
    }
};

std::vector<std::array<double, 2>> metrics_from_bits(const std::vector<std::uint8_t>& bits) {
    std::vector<std::array<double, 2>> m(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) m[i] = {bits[i] ? 1.0 : 0.0, bits[i] ? 0.0 : 1.0};
    return m;
}

}  // namespace

TEST_CASE("generator parsing and the default code") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    CHECK(code.constraint_length == 7);
    CHECK(code.n_states() == 64);
    CHECK(code.taps[0] == 0b1011011u);
    CHECK(code.taps[1] == 0b1111001u);
    CHECK_THROWS_AS(ConvCode::from_octal(190, 171), std::invalid_argument);
}

TEST_CASE("encode basics") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    const std::vector<std::uint8_t> zeros(20, 0);
    const auto coded = encode(code, zeros);
    CHECK(coded.size() == 2 * (20 + 6));
    for (auto b : coded) CHECK(b == 0);

    // the first five input bits 1,0,1,1,0 produce 11 01 00 01 10
    const auto head = encode(code, {1, 0, 1, 1, 0});
    const std::vector<std::uint8_t> expect{1, 1, 0, 1, 0, 0, 0, 1, 1, 0};
    for (size_t i = 0; i < expect.size(); ++i) CHECK(head[i] == expect[i]);

    // one-bit input reaches full free-distance output weight
    std::vector<std::uint8_t> impulse(10, 0);
    impulse[0] = 1;
    int weight = 0;
    for (auto b : encode(code, impulse)) weight += b;
    CHECK(weight >= 10);
}

TEST_CASE("weight spectrum: free distance and oracle agreement") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    const WeightSpectrum spec = weight_spectrum(code, 24);
    CHECK(spec.d_free == 10);
    for (int d = 0; d < 10; ++d) CHECK(spec.a(d) == 0);
    CHECK(spec.a(10) == 11);
    CHECK(spec.wi(10) == 36);

    const DetourOracle oracle(code, 14, 40);
    for (int d = 0; d <= 14; ++d) {
        CHECK(spec.a(d) == oracle.a[static_cast<size_t>(d)]);
        CHECK(spec.wi(d) == oracle.wi[static_cast<size_t>(d)]);
    }

    CHECK_THROWS_AS(weight_spectrum(code, 31), std::invalid_argument);
}

TEST_CASE("viterbi on noiseless metrics recovers the message") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    std::mt19937_64 gen(123);
    std::vector<std::uint8_t> info(200);
    for (auto& b : info) b = static_cast<std::uint8_t>(gen() & 1);
    const auto coded = encode(code, info);
    CHECK(viterbi(code, metrics_from_bits(coded)) == info);

    // a single flipped coded bit is corrected
    auto flipped = coded;
    flipped[31] ^= 1;
    CHECK(viterbi(code, metrics_from_bits(flipped)) == info);
}

TEST_CASE("viterbi tie-break gives the all-zero path on all-tie metrics") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    const std::vector<std::array<double, 2>> metrics(2 * 40, {1.0, 1.0});
    const auto decoded = viterbi(code, metrics);
    CHECK(decoded.size() == 40 - 6);
    for (auto b : decoded) CHECK(b == 0);
}

TEST_CASE("viterbi equals exhaustive search on short messages") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    const int n = 9;
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::array<double, 2>> metrics(2 * (n + 6));
        for (auto& m : metrics) m = {unif(gen), unif(gen)};

        double best_metric = 1e300;
        std::vector<std::uint8_t> best;
        for (int word = 0; word < (1 << n); ++word) {
            std::vector<std::uint8_t> info(n);
            for (int i = 0; i < n; ++i) info[static_cast<size_t>(i)] = (word >> i) & 1;
            const auto coded = encode(code, info);
            double metric = 0.0;
            for (size_t i = 0; i < coded.size(); ++i) metric += metrics[i][coded[i]];
            if (metric < best_metric) {
                best_metric = metric;
                best = info;
            }
        }
        CHECK(viterbi(code, metrics) == best);
    }
}

TEST_CASE("viterbi survivor beats random alternative paths") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = 200;
    std::vector<std::array<double, 2>> metrics(static_cast<size_t>(2 * (n + 6)));
    for (auto& m : metrics) m = {unif(gen), unif(gen)};

    const auto decoded = viterbi(code, metrics);
    const auto decoded_coded = encode(code, decoded);
    double decoded_metric = 0.0;
    for (size_t i = 0; i < decoded_coded.size(); ++i)
        decoded_metric += metrics[i][decoded_coded[i]];

    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::uint8_t> info(static_cast<size_t>(n));
        for (auto& b : info) b = static_cast<std::uint8_t>(gen() & 1);
        const auto coded = encode(code, info);
        double metric = 0.0;
        for (size_t i = 0; i < coded.size(); ++i) metric += metrics[i][coded[i]];
        CHECK(decoded_metric <= metric + 1e-9);
    }

    CHECK_THROWS_AS(viterbi(code, std::vector<std::array<double, 2>>(11)), std::invalid_argument);
}

TEST_CASE("spectrum CSV export") {
    const WeightSpectrum spec = weight_spectrum(ConvCode::from_octal(133, 171), 12);
    std::ostringstream os;
    write_spectrum_csv(os, spec);
    CHECK(os.str() == "d,A_d,W_I\n10,11,36\n11,0,0\n12,38,211\n");
}

TEST_CASE("ber_union_bound assembly") {
    const ConvCode code = ConvCode::from_octal(133, 171);
    const WeightSpectrum spec = weight_spectrum(code, 24);

    CHECK(ber_union_bound(spec, [](int) { return 0.0; }).value == 0.0);

    // geometric f: value equals the explicit sum
    const auto f = [](int d) { return std::pow(0.5, d); };
    double expect = 0.0;
    for (int d = spec.d_free; d <= spec.d_max; ++d)
        expect += static_cast<double>(spec.wi(d)) * f(d);
    const UnionBoundResult res = ber_union_bound(spec, f);
    CHECK(res.value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(res.last_term_ratio > 0.0);
    CHECK(res.last_term_ratio < 1.0);

    // monotone in f
    const double larger = ber_union_bound(spec, [](int d) { return std::pow(0.6, d); }).value;
    CHECK(larger > res.value);

    // single-entry spectrum
    WeightSpectrum single;
    single.d_free = 10;
    single.d_max = 10;
    single.path_count.assign(11, 0);
    single.info_weight.assign(11, 0);
    single.path_count[10] = 11;
    single.info_weight[10] = 36;
    CHECK(ber_union_bound(single, [](int) { return 0.25; }).value ==
          doctest::Approx(36 * 0.25).epsilon(1e-12));
}
