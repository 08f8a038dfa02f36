#include "bicm/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "bicm/convcode.hpp"
#include "bicm/expurgation.hpp"
#include "bicm/geometry.hpp"
#include "bicm/pep.hpp"
#include "bicm/simulator.hpp"

namespace bicm {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNotConfirmed = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitInconclusive = 5;

struct Sweep {
    double start = 0.0, step = 1.0, stop = 0.0;
    std::vector<double> values() const {
        std::vector<double> v;
        for (double x = start; x <= stop + 1e-9; x += step) v.push_back(x);
        return v;
    }
};

Sweep parse_sweep(const std::string& text) {
    Sweep s;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> s.start >> c1 >> s.step >> c2 >> s.stop) || c1 != ':' || c2 != ':')
        throw CLI::ValidationError("--snr-db", "expected start:step:stop");
    if (!(s.step > 0.0) || s.stop < s.start - 1e-9)
        throw CLI::ValidationError("--snr-db", "sweep must be non-empty with step > 0");
    return s;
}

Constellation make_constellation(const std::string& mod, const std::string& label) {
    Labeling lab;
    if (label == "gray")
        lab = Labeling::gray;
    else if (label == "sp")
        lab = Labeling::sp;
    else
        throw CLI::ValidationError("--label", "must be gray or sp");
    if (mod == "4psk") return build_psk(4, lab);
    if (mod == "8psk") return build_psk(8, lab);
    if (mod == "16qam") return build_square_qam(16, lab);
    if (mod == "64qam") return build_square_qam(64, lab);
    throw CLI::ValidationError("--mod", "must be one of 4psk, 8psk, 16qam, 64qam");
}

ChannelSpec make_channel(const std::string& model, double es_n0_db) {
    if (model == "awgn") return ChannelSpec::awgn(es_n0_db);
    if (model == "rayleigh") return ChannelSpec::rayleigh(es_n0_db);
    throw CLI::ValidationError("--channel", "must be awgn or rayleigh");
}

std::pair<int, int> parse_code(const std::string& text) {
    int g0 = 0, g1 = 0;
    char comma = 0;
    std::istringstream is(text);
    if (!(is >> g0 >> comma >> g1) || comma != ',')
        throw CLI::ValidationError("--code", "expected two octal generators, e.g. 133,171");
    return {g0, g1};
}

std::string fmt_prob(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

std::string fmt_dist(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string fmt_snr(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    static Output open(const std::string& path) {
        Output out;
        if (path.empty()) return out;
        out.file = std::make_unique<std::ofstream>(path);
        if (!*out.file) throw std::ios_base::failure("cannot open output file: " + path);
        out.os = out.file.get();
        return out;
    }
    std::ostream& stream() { return *os; }
};

void write_header_comment(std::ostream& os, const std::string& config_echo) {
    os << "# bicm " << kVersion << " | " << config_echo << "\n";
}

// ------------------------------------------------------------------- table1

int cmd_table1(const std::string& out_path) {
    Output out = Output::open(out_path);
    write_header_comment(out.stream(), "table1 | seed=0");
    out.stream() << "constellation,labeling,dh2,dhc1_2,dhc2_2,flags\n";
    for (const auto& row : table1()) {
        out.stream() << row.constellation << ',' << row.labeling << ',' << fmt_dist(row.dh2) << ','
                     << fmt_dist(row.dhc1_2) << ',' << fmt_dist(row.dhc2_2) << ',' << row.flags
                     << '\n';
    }
    if (!out.stream()) throw std::ios_base::failure("write failed");
    return kExitOk;
}

// ------------------------------------------------------------------- bounds

int cmd_bounds(const std::string& mod, const std::string& label, const std::string& channel,
               const Sweep& sweep, const std::vector<std::string>& variants,
               const std::string& code_text, int dmax, const std::string& out_path) {
    const Constellation c = make_constellation(mod, label);
    const auto [g0, g1] = parse_code(code_text);
    const ConvCode code = ConvCode::from_octal(g0, g1);
    const WeightSpectrum spec = weight_spectrum(code, dmax);

    std::map<std::string, Variant> by_name{
        {"orig", Variant::orig}, {"new1", Variant::v1}, {"new2", Variant::v2}};
    std::map<std::string, DistanceMixture> mixtures;
    for (const auto& name : variants) {
        const auto it = by_name.find(name);
        if (it == by_name.end())
            throw CLI::ValidationError("--variant", "must be a subset of orig,new1,new2");
        const bool allow_2d = label == "sp" && mod.find("qam") != std::string::npos;
        mixtures[name] = DistanceMixture::from_assignment(
            c, assign_neighbors(c, it->second, allow_2d));
    }
    if (mixtures.empty()) throw CLI::ValidationError("--variant", "at least one variant required");

    Output out = Output::open(out_path);
    std::ostringstream echo;
    echo << "bounds mod=" << mod << " label=" << label << " channel=" << channel
         << " snr=" << fmt_snr(sweep.start) << ':' << fmt_snr(sweep.step) << ':'
         << fmt_snr(sweep.stop) << " code=" << code_text << " dmax=" << dmax << " | seed=0";
    write_header_comment(out.stream(), echo.str());
    out.stream() << "snr_db,ex_orig,ex_new1,ex_new2\n";

    for (double snr : sweep.values()) {
        const ChannelSpec ch = make_channel(channel, snr);
        std::map<std::string, double> value;
        for (const auto& [name, mix] : mixtures) {
            std::map<int, double> memo;
            const auto f = [&](int d) {
                auto it = memo.find(d);
                if (it == memo.end()) it = memo.emplace(d, f_bound(mix, ch, d)).first;
                return it->second;
            };
            const UnionBoundResult ub = ber_union_bound(spec, f);
            value[name] = ub.value;
            if (ub.last_term_ratio >= 0.01)
                std::cerr << "warning: truncation ratio " << fmt_prob(ub.last_term_ratio)
                          << " at " << fmt_snr(snr) << " dB (" << name << "); increase --dmax\n";
        }
        out.stream() << fmt_snr(snr);
        for (const char* name : {"orig", "new1", "new2"}) {
            out.stream() << ',';
            if (value.count(name)) out.stream() << fmt_prob(value[name]);
        }
        out.stream() << '\n';
    }
    if (!out.stream()) throw std::ios_base::failure("write failed");
    return kExitOk;
}

// --------------------------------------------------------- counterexamples

int cmd_counterexamples(const std::string& which, double theta, double grid_res,
                        const std::string& out_path) {
    GridSpec grid;
    grid.res = grid_res;
    if (grid_res <= 0.0) throw CLI::ValidationError("--grid", "resolution must be positive");

    std::vector<std::pair<cplx, std::string>> rows;
    bool confirmed = false;

    if (which == "t1") {
        if (!(theta >= 0.0 && theta < 90.0))
            throw CLI::ValidationError("--theta", "must be in [0, 90)");
        const Theorem1Outcome res = verify_theorem1(theta, grid);
        confirmed = res.confirmed;
        for (const auto& w : res.dark.coverage.witnesses) rows.emplace_back(w, "dark");
        for (const auto& w : res.light.coverage.witnesses) rows.emplace_back(w, "light");
    } else if (which == "t2") {
        const Theorem2Outcome res = verify_theorem2(grid);
        confirmed = res.confirmed;
        for (const auto& w : res.dark.coverage.witnesses) rows.emplace_back(w, "dark");
        for (const auto& w : res.light.coverage.witnesses) rows.emplace_back(w, "light");
    } else {
        throw CLI::ValidationError("which", "must be t1 or t2");
    }

    Output out = Output::open(out_path);
    std::ostringstream echo;
    echo << "counterexamples " << which << " theta=" << fmt_snr(theta)
         << " grid=" << fmt_snr(grid_res) << " | seed=0";
    write_header_comment(out.stream(), echo.str());
    write_witness_csv(out.stream(), rows);
    if (!out.stream()) throw std::ios_base::failure("write failed");

    std::cerr << (confirmed ? "counterexample CONFIRMED" : "counterexample NOT confirmed")
              << " (" << rows.size() << " witnesses)\n";
    return confirmed ? kExitOk : kExitNotConfirmed;
}

// ----------------------------------------------------------------- simulate

int cmd_simulate(const std::string& mod, const std::string& label, const std::string& channel,
                 const Sweep& sweep, std::uint64_t seed, int blocks, int block_bits,
                 std::uint64_t max_errors, const std::string& code_text,
                 const std::string& out_path) {
    SimConfig cfg;
    cfg.constellation = make_constellation(mod, label);
    const auto [g0, g1] = parse_code(code_text);
    cfg.code = ConvCode::from_octal(g0, g1);
    cfg.blocks = blocks;
    cfg.block_info_bits = block_bits;
    cfg.seed = seed;
    cfg.max_errors = max_errors;
    if (blocks < 1) throw CLI::ValidationError("--blocks", "must be >= 1");
    if (block_bits < 1) throw CLI::ValidationError("--block-bits", "must be >= 1");

    Output out = Output::open(out_path);
    std::ostringstream echo;
    echo << "simulate mod=" << mod << " label=" << label << " channel=" << channel
         << " snr=" << fmt_snr(sweep.start) << ':' << fmt_snr(sweep.step) << ':'
         << fmt_snr(sweep.stop) << " code=" << code_text << " blocks=" << blocks
         << " block_bits=" << block_bits << " max_errors=" << max_errors << " | seed=" << seed;
    write_header_comment(out.stream(), echo.str());
    out.stream() << "snr_db,ber,bits,errors,ci95\n";

    for (double snr : sweep.values()) {
        cfg.channel = make_channel(channel, snr);
        const BerEstimate est = simulate_ber(cfg);
        out.stream() << fmt_snr(snr) << ',' << fmt_prob(est.ber) << ',' << est.bits << ','
                     << est.errors << ',' << fmt_prob(est.ci95) << '\n';
    }
    if (!out.stream()) throw std::ios_base::failure("write failed");
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"revised expurgated BICM bounds, counterexample verifiers and simulator"};
    app.set_config("--config", "", "line-based key = value config file");
    app.require_subcommand(1);

    std::string out_path;
    std::string mod = "16qam", label = "gray", channel = "rayleigh";
    std::string snr_text = "5:1:20";
    std::string code_text = "133,171";
    std::vector<std::string> variants{"orig", "new1", "new2"};
    int dmax = 24;
    double theta = 30.0;
    double grid_res = 0.005;
    std::uint64_t seed = 1;
    int blocks = 200;
    int block_bits = 10000;
    std::uint64_t max_errors = 10000;
    std::string which;

    auto* t1 = app.add_subcommand("table1", "reproduce the harmonic-distance table");
    t1->add_option("--out", out_path, "output CSV path (default stdout)");

    auto* bo = app.add_subcommand("bounds", "BER bound curves vs Es/N0");
    bo->add_option("--mod", mod);
    bo->add_option("--label", label);
    bo->add_option("--channel", channel);
    bo->add_option("--snr-db", snr_text, "sweep start:step:stop in dB");
    bo->add_option("--variant", variants)->delimiter(',');
    bo->add_option("--code", code_text, "octal generators");
    bo->add_option("--dmax", dmax);
    bo->add_option("--out", out_path);

    auto* ce = app.add_subcommand("counterexamples", "verify the two counterexamples");
    ce->add_option("which", which, "t1 or t2")->required();
    ce->add_option("--theta", theta, "t1 displacement angle in degrees");
    ce->add_option("--grid", grid_res, "grid resolution");
    ce->add_option("--out", out_path);

    auto* si = app.add_subcommand("simulate", "Monte Carlo BER of the full BICM chain");
    si->add_option("--mod", mod);
    si->add_option("--label", label);
    si->add_option("--channel", channel);
    si->add_option("--snr-db", snr_text);
    si->add_option("--seed", seed);
    si->add_option("--blocks", blocks);
    si->add_option("--block-bits", block_bits);
    si->add_option("--max-errors", max_errors, "early stop threshold");
    si->add_option("--code", code_text);
    si->add_option("--out", out_path);

    std::vector<const char*> argv;
    argv.push_back("bicm");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (t1->parsed()) return cmd_table1(out_path);
        if (bo->parsed())
            return cmd_bounds(mod, label, channel, parse_sweep(snr_text), variants, code_text,
                              dmax, out_path);
        if (ce->parsed()) return cmd_counterexamples(which, theta, grid_res, out_path);
        if (si->parsed())
            return cmd_simulate(mod, label, channel, parse_sweep(snr_text), seed, blocks,
                                block_bits, max_errors, code_text, out_path);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const InconclusiveError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << " (nodes=" << e.nodes << ")\n";
        if (!out_path.empty()) {
            std::ofstream os(out_path, std::ios::app);
            os << "# error: numerical failure: " << e.what() << "\n";
        }
        return kExitNumerical;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace bicm
