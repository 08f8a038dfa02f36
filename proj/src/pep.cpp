#include "bicm/pep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace bicm {

namespace {

double db_to_n0(double es_n0_db) { return std::pow(10.0, -es_n0_db / 10.0); }

double q_func(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

// adaptive Simpson with absolute tolerance
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::complex<double> pow_int(std::complex<double> base, int exponent) {
    std::complex<double> out{1.0, 0.0};
    while (exponent > 0) {
        if (exponent & 1) out *= base;
        base *= base;
        exponent >>= 1;
    }
    return out;
}

}  // namespace

ChannelSpec ChannelSpec::awgn(double es_n0_db) {
    return ChannelSpec{ChannelModel::awgn, es_n0_db, db_to_n0(es_n0_db)};
}

ChannelSpec ChannelSpec::rayleigh(double es_n0_db) {
    return ChannelSpec{ChannelModel::rayleigh_csi, es_n0_db, db_to_n0(es_n0_db)};
}

DistanceMixture DistanceMixture::from_assignment(const Constellation& c,
                                                 const NeighborAssignment& na) {
    DistanceMixture mix;
    const double w = 1.0 / (static_cast<double>(c.m) * static_cast<double>(c.size()));
    for (int p = 0; p < c.size(); ++p) {
        for (int i = 1; i <= c.m; ++i) {
            for (const auto& t : na.targets[static_cast<size_t>(p)][static_cast<size_t>(i - 1)]) {
                if (t.is_aleph()) continue;
                const double d2 = std::norm(c.points[static_cast<size_t>(p)] - t.position);
                bool found = false;
                for (auto& atom : mix.atoms) {
                    if (std::abs(atom.d2 - d2) <= 1e-9 * std::max(atom.d2, d2)) {
                        atom.weight += w;
                        found = true;
                        break;
                    }
                }
                if (!found) mix.atoms.push_back(Atom{d2, w});
                mix.total_mass += w;
            }
        }
    }
    std::sort(mix.atoms.begin(), mix.atoms.end(),
              [](const Atom& a, const Atom& b) { return a.d2 < b.d2; });
    return mix;
}

double DistanceMixture::harmonic_d2() const {
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight / a.d2;
    return 1.0 / s;
}

std::complex<double> phi_delta(const ChannelSpec& ch, double d2, std::complex<double> s) {
    if (d2 < 0.0) throw std::invalid_argument("phi_delta: negative squared distance");
    const std::complex<double> u = s * (1.0 - s * ch.n0) * d2;
    if (ch.model == ChannelModel::awgn) return std::exp(-u);
    if (u.real() <= -1.0)
        throw std::domain_error("phi_delta: s outside the rayleigh convergence strip");
    return 1.0 / (1.0 + u);
}

double pep_exact(const ChannelSpec& ch, const std::vector<double>& d2_list) {
    if (d2_list.empty()) throw std::invalid_argument("pep_exact: empty distance list");
    double sum_d2 = 0.0;
    for (double d2 : d2_list) {
        if (d2 < 0.0) throw std::invalid_argument("pep_exact: negative squared distance");
        sum_d2 += d2;
    }
    if (sum_d2 == 0.0) return 0.5;

    if (ch.model == ChannelModel::awgn)
        return q_func(std::sqrt(sum_d2 / (2.0 * ch.n0)));

    std::vector<double> cs;
    cs.reserve(d2_list.size());
    for (double d2 : d2_list)
        if (d2 > 0.0) cs.push_back(d2 / (4.0 * ch.n0));
    const auto integrand = [&cs](double theta) {
        const double s2 = std::sin(theta) * std::sin(theta);
        double prod = 1.0;
        for (double cc : cs) prod *= s2 / (s2 + cc);
        return prod;
    };
    return integrate(integrand, 0.0, 0.5 * std::numbers::pi, 1e-13) / std::numbers::pi;
}

namespace {

double inversion_at(const DistanceMixture& mix, const ChannelSpec& ch, int d, int nodes) {
    const double s_hat = 1.0 / (2.0 * ch.n0);
    double acc = 0.0;
    for (int k = 1; k <= nodes / 2; ++k) {
        const double theta = (2.0 * k - 1.0) * std::numbers::pi / (2.0 * nodes);
        const double tau = std::tan(theta);
        const std::complex<double> s = s_hat * std::complex<double>{1.0, tau};
        std::complex<double> psi{0.0, 0.0};
        for (const auto& atom : mix.atoms) psi += atom.weight * phi_delta(ch, atom.d2, s);
        const std::complex<double> big_phi = pow_int(psi, d);
        acc += big_phi.real() + tau * big_phi.imag();
    }
    return acc / nodes;
}

}  // namespace

FBoundDiag f_bound_diag(const DistanceMixture& mix, const ChannelSpec& ch, int d) {
    if (d < 1) throw std::invalid_argument("f_bound: d must be >= 1");
    if (mix.atoms.empty()) throw std::invalid_argument("f_bound: empty mixture");
    if (!(ch.n0 > 0.0)) throw std::invalid_argument("f_bound: noiseless channel");

    constexpr int kStart = 64;
    constexpr int kCap = 8192;
    double prev = inversion_at(mix, ch, d, kStart);
    for (int nodes = 2 * kStart; nodes <= kCap; nodes *= 2) {
        const double cur = inversion_at(mix, ch, d, nodes);
        const double scale = std::max(std::abs(cur), 1e-300);
        const double rel = std::abs(cur - prev) / scale;
        if (rel < 1e-6) return FBoundDiag{cur, nodes, rel};
        prev = cur;
    }
    throw NumericalError("f_bound: quadrature failed to converge", kCap,
                         std::abs(prev));
}

double f_bound(const DistanceMixture& mix, const ChannelSpec& ch, int d) {
    return f_bound_diag(mix, ch, d).value;
}

double f_bound_expansion(const DistanceMixture& mix, const ChannelSpec& ch, int d) {
    if (d < 1) throw std::invalid_argument("f_bound_expansion: d must be >= 1");
    if (d > 12)
        throw std::invalid_argument("f_bound_expansion: d exceeds the combinatorial cap; use f_bound");
    if (mix.atoms.empty()) throw std::invalid_argument("f_bound_expansion: empty mixture");

    const int r = static_cast<int>(mix.atoms.size());
    std::vector<int> counts(static_cast<size_t>(r), 0);
    std::vector<double> d2s;
    double total = 0.0;

    std::vector<double> log_fact(static_cast<size_t>(d + 1), 0.0);
    for (int i = 2; i <= d; ++i)
        log_fact[static_cast<size_t>(i)] = log_fact[static_cast<size_t>(i - 1)] + std::log(static_cast<double>(i));

    const std::function<void(int, int)> recurse = [&](int atom, int remaining) {
        if (atom == r - 1) {
            counts[static_cast<size_t>(atom)] = remaining;
            double log_coef = log_fact[static_cast<size_t>(d)];
            double weight = 1.0;
            d2s.clear();
            for (int j = 0; j < r; ++j) {
                const int k = counts[static_cast<size_t>(j)];
                log_coef -= log_fact[static_cast<size_t>(k)];
                weight *= std::pow(mix.atoms[static_cast<size_t>(j)].weight, k);
                for (int t = 0; t < k; ++t) d2s.push_back(mix.atoms[static_cast<size_t>(j)].d2);
            }
            total += std::exp(log_coef) * weight * pep_exact(ch, d2s);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            counts[static_cast<size_t>(atom)] = k;
            recurse(atom + 1, remaining - k);
        }
    };
    recurse(0, d);
    return total;
}

double f_asymptotic(double dhc2, const ChannelSpec& ch, int d) {
    if (ch.model != ChannelModel::rayleigh_csi)
        throw std::invalid_argument("f_asymptotic: rayleigh-csi only");
    if (d < 1) throw std::invalid_argument("f_asymptotic: d must be >= 1");
    double binom = 1.0;  // binom(2d-1, d)
    for (int i = 1; i <= d - 1; ++i)
        binom *= static_cast<double>(d + i) / static_cast<double>(i);
    // each pair contributes 1/(4c) = N0/d2 at high SNR
    return binom * std::pow(ch.n0 / dhc2, d);
}

}  // namespace bicm
