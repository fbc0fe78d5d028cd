// oms: verification suites and one-off evaluations for Orlicz modulation spaces.

#include "oms/amalgam.hpp"
#include "oms/bargmann.hpp"
#include "oms/calibration.hpp"
#include "oms/config.hpp"
#include "oms/errors.hpp"
#include "oms/gabor.hpp"
#include "oms/orlicz.hpp"
#include "oms/report.hpp"
#include "oms/suites.hpp"
#include "oms/weights.hpp"
#include "oms/young.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct SuiteFlags {
    std::string suite, config, out, format = "json", calibration;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t probes = 0;
};

void add_suite_flags(CLI::App& app, SuiteFlags& f) {
    app.add_option("--suite", f.suite, "suite name");
    app.add_option("--config", f.config, "flat key = value config file");
    app.add_option("--seed", f.seed, "probe seed (default 7)")->each([&f](const std::string&) { f.seed_set = true; });
    app.add_option("--out", f.out, "report path (stdout if omitted)");
    app.add_option("--format", f.format, "json | csv | markdown")->check(CLI::IsMember({"json", "csv", "markdown", "md"}));
    app.add_option("--probes", f.probes, "probe count override");
    app.add_option("--calibration", f.calibration, "calibration file (default data/calibration.txt)");
}

oms::SuiteConfig config_from(const SuiteFlags& f) {
    oms::SuiteConfig c = f.config.empty() ? oms::SuiteConfig{} : oms::load_config(f.config);
    if (!f.suite.empty()) c.suite = f.suite;
    if (f.seed_set) c.seed = f.seed;
    if (f.probes) c.probes = f.probes;
    if (!f.calibration.empty()) c.calibration = f.calibration;
    if (c.suite.empty()) throw oms::DomainError("no suite given (--suite or `suite =` in the config)");
    return c;
}

void print_summary(const oms::SuiteReport& r) {
    std::fprintf(stderr, "%s: %zu/%zu cases pass, %zu drift rows, verdict %s\n", r.suite.c_str(),
                 r.cases.size() - r.failures(), r.cases.size(), r.drift.size(), r.verdict ? "pass" : "fail");
    for (const auto& c : r.cases)
        if (!c.pass)
            std::fprintf(stderr, "  FAIL %s lhs=%.6g rhs=%.6g %s\n", c.id.c_str(), c.lhs, c.rhs,
                         c.error.empty() ? c.detail.c_str() : c.error.c_str());
    for (const auto& d : r.drift)
        if (!d.pass) std::fprintf(stderr, "  DRIFT %s %.6g -> %.6g (%.3g)\n", d.key.c_str(), d.base, d.refined, d.drift);
}

int run_and_emit(const oms::SuiteConfig& c, const SuiteFlags& f) {
    const oms::SuiteReport r = oms::run_suite(c);
    const auto fmt = oms::parse_format(f.format);
    if (f.out.empty())
        std::cout << oms::render(r, fmt);
    else
        oms::emit(r, fmt, f.out);
    print_summary(r);
    return r.verdict ? 0 : 1;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

// CSV of magnitudes: each row is one axis-1 index, columns run along axis 0.
oms::Field read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw oms::DomainError("cannot open " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        rows.push_back(parse_list(line));
        if (rows.back().size() != rows.front().size()) throw oms::DomainError(path + ": ragged rows");
    }
    if (rows.empty()) throw oms::DomainError(path + ": no data");
    std::vector<oms::Axis> axes{oms::Axis{0, rows.front().size(), 1.0}};
    if (rows.size() > 1) axes.push_back(oms::Axis{0, rows.size(), 1.0});
    oms::Field f = oms::make_sequence(axes);
    for (std::size_t j = 0; j < rows.size(); ++j)
        for (std::size_t i = 0; i < rows[j].size(); ++i) f.values()[i + rows.front().size() * j] = rows[j][i];
    return f;
}

// Rows of index columns followed by re,im; `index_cols` is 1 or 2.
oms::Field read_indexed(const std::string& path, std::size_t index_cols) {
    std::ifstream in(path);
    if (!in) throw oms::DomainError("cannot open " + path);
    struct Row {
        std::int64_t i, j;
        oms::cplx v;
    };
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> v;
        try {
            v = parse_list(line);
        } catch (const std::exception&) {
            if (rows.empty()) continue;  // header
            throw oms::DomainError(path + ": bad row '" + line + "'");
        }
        if (v.size() != index_cols + 2) throw oms::DomainError(path + ": expected " + std::to_string(index_cols + 2) + " columns");
        rows.push_back({static_cast<std::int64_t>(v[0]), index_cols == 2 ? static_cast<std::int64_t>(v[1]) : 0,
                        {v[index_cols], v[index_cols + 1]}});
    }
    if (rows.empty()) throw oms::DomainError(path + ": no data");
    std::int64_t i0 = rows[0].i, i1 = rows[0].i, j0 = rows[0].j, j1 = rows[0].j;
    for (const auto& r : rows) {
        i0 = std::min(i0, r.i), i1 = std::max(i1, r.i);
        j0 = std::min(j0, r.j), j1 = std::max(j1, r.j);
    }
    std::vector<oms::Axis> axes{oms::Axis{i0, static_cast<std::size_t>(i1 - i0 + 1), 1.0}};
    if (index_cols == 2) axes.push_back(oms::Axis{j0, static_cast<std::size_t>(j1 - j0 + 1), 1.0});
    oms::Field f = oms::make_sequence(axes);
    for (const auto& r : rows) {
        const auto a = static_cast<std::size_t>(r.i - i0);
        if (index_cols == 2)
            f.at(a, static_cast<std::size_t>(r.j - j0)) += r.v;
        else
            f.at(a) += r.v;
    }
    return f;
}

// `hermite:0+i*hermite:2+0.5*hermite:1`
oms::Field hermite_combination(const std::string& expr, std::size_t n, double h) {
    oms::Field f = oms::make_sampled_1d(n, h);
    std::stringstream ss(expr);
    std::string term;
    while (std::getline(ss, term, '+')) {
        oms::cplx coef = 1.0;
        if (const auto star = term.find('*'); star != std::string::npos) {
            const std::string c = term.substr(0, star);
            coef = c == "i" ? oms::cplx(0, 1) : oms::cplx(std::stod(c));
            term = term.substr(star + 1);
        }
        if (term.rfind("hermite:", 0) != 0) throw oms::DomainError("--f: expected hermite:<order> terms, got '" + term + "'");
        f += coef * oms::hermite_function(std::stoul(term.substr(8)), n, h);
    }
    return f;
}

std::size_t steps_of(double spacing, double unit, const char* what) {
    const double q = spacing / unit;
    if (!(q >= 1.0) || std::abs(q - std::round(q)) > 1e-9 * q)
        throw oms::DomainError(std::string(what) + " is not a positive multiple of the grid spacing");
    return static_cast<std::size_t>(std::round(q));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasi-Banach Orlicz modulation spaces: norms, frames, Bargmann transform, amalgam suites"};
    app.require_subcommand(0, 1);

    SuiteFlags top;
    add_suite_flags(app, top);

    SuiteFlags sf;
    auto* suite = app.add_subcommand("suite", "run a verification suite");
    add_suite_flags(*suite, sf);

    SuiteFlags cf;
    auto* calibrate = app.add_subcommand("calibrate", "freeze the constants of a suite into the calibration file");
    add_suite_flags(*calibrate, cf);

    std::string phi = "power:2", phi2, weight = "const", values, table, data;
    bool bisect = false, mixed = false;
    auto* norm = app.add_subcommand("norm", "Luxemburg norm of a sequence");
    norm->add_option("--phi", phi, "quasi-Young function (inner for tables)");
    norm->add_option("--phi2", phi2, "outer function for two-axis tables");
    norm->add_option("--weight", weight, "weight on the index coordinates");
    norm->add_option("--values", values, "comma separated entries");
    norm->add_option("--file", table, "CSV table of magnitudes; several rows give a mixed norm");
    norm->add_option("--data", data, "CSV rows of index column(s) then re,im");
    norm->add_flag("--mixed", mixed, "--data rows carry two indices (i, j); mixed norm over i then j");
    norm->add_flag("--bisect", bisect, "skip closed forms");

    std::size_t n = 128, ts = 16, fs = 4;
    double length = 16.0, ga = 0.0, gb = 0.0;
    std::string window = "gaussian", gsuite;
    SuiteFlags gf;
    auto* gabor = app.add_subcommand("gabor", "frame bounds and canonical dual of a Gabor system");
    gabor->add_option("--n,--N", n);
    gabor->add_option("--length,--L", length);
    gabor->add_option("--time-step", ts, "time step in grid samples");
    gabor->add_option("--freq-step", fs, "frequency step in comb samples");
    gabor->add_option("--a", ga, "time step a (multiple of h)");
    gabor->add_option("--b", gb, "frequency step b (multiple of 2 pi / L)");
    gabor->add_option("--window", window)->check(CLI::IsMember({"gaussian", "gauss", "bump"}));
    gabor->add_option("--suite", gsuite, "reconstruct | equivalence | window-invariance")
        ->check(CLI::IsMember({"reconstruct", "equivalence", "window-invariance"}));
    gabor->add_option("--seed", gf.seed)->each([&gf](const std::string&) { gf.seed_set = true; });
    gabor->add_option("--out", gf.out);
    gabor->add_option("--format", gf.format)->check(CLI::IsMember({"json", "csv", "markdown", "md"}));

    std::size_t bn = 256, order = 0;
    double blength = 20.0, zr = 10.0;
    std::string bphi1 = "power:2", bphi2 = "power:2", bweight = "const", bf, check = "isometry";
    auto* barg = app.add_subcommand("bargmann", "isometry or holomorphy check for Hermite combinations");
    barg->add_option("--n,--N", bn);
    barg->add_option("--length,--L", blength);
    barg->add_option("--order", order, "Hermite order of f");
    barg->add_option("--f", bf, "combination such as hermite:0+i*hermite:2 (overrides --order)");
    barg->add_option("--check", check)->check(CLI::IsMember({"isometry", "holomorphy"}));
    barg->add_option("--phi1", bphi1);
    barg->add_option("--phi2", bphi2);
    barg->add_option("--weight", bweight);
    barg->add_option("--z-radius", zr);

    SuiteFlags af;
    std::string ainner = "linf", aphi1, aphi2, aweight, apart;
    auto* amal = app.add_subcommand("amalgam", "convolution and sampling suites on Wiener amalgams");
    amal->add_option("--inner", ainner, "local norm of the amalgam");
    amal->add_option("--phi1", aphi1);
    amal->add_option("--phi2", aphi2);
    amal->add_option("--weight", aweight);
    amal->add_option("--suite", apart, "young | wiener-conv | sampling")
        ->check(CLI::IsMember({"young", "wiener-conv", "sampling"}));
    amal->add_option("--seed", af.seed)->each([&af](const std::string&) { af.seed_set = true; });
    amal->add_option("--out", af.out);
    amal->add_option("--format", af.format)->check(CLI::IsMember({"json", "csv", "markdown", "md"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*suite) return run_and_emit(config_from(sf), sf);
        if (*calibrate) {
            const oms::SuiteConfig c = config_from(cf);
            const std::string path = c.calibration.empty() ? oms::default_calibration_path() : c.calibration;
            oms::Calibration cal = oms::Calibration::load_or_empty(path);
            const oms::SuiteReport r = oms::calibrate_suite(c, cal);
            print_summary(r);
            if (!r.verdict) {
                std::fprintf(stderr, "calibration not written: some cases failed\n");
                return 1;
            }
            cal.save(path);
            std::fprintf(stderr, "wrote %zu constants to %s\n", r.constants.size(), path.c_str());
            return 0;
        }
        if (*norm) {
            oms::Field f;
            if (!data.empty()) {
                f = read_indexed(data, mixed ? 2 : 1);
            } else if (!table.empty()) {
                f = read_table(table);
            } else {
                const auto v = parse_list(values);
                f = oms::make_sequence({oms::Axis{0, v.size(), 1.0}});
                for (std::size_t i = 0; i < v.size(); ++i) f.at(i) = v[i];
            }
            oms::LuxemburgOptions o;
            o.force_bisection = bisect;
            const auto w = oms::parse_weight(weight);
            const auto p1 = oms::parse_quasi_young(phi);
            const oms::NormReport r = f.rank() == 2
                                          ? oms::mixed_luxemburg(f, p1, oms::parse_quasi_young(phi2.empty() ? phi : phi2), w, o)
                                          : oms::luxemburg(f, p1, w, o);
            std::printf("norm %.17g\nbracket [%.17g, %.17g]\niterations %d\nin_space %s\n", r.value, r.bracket_lo,
                        r.bracket_hi, r.iterations, r.in_space ? "yes" : "no");
            return r.in_space ? 0 : 1;
        }
        if (*gabor) {
            const double h = length / static_cast<double>(n);
            if (ga > 0.0) ts = steps_of(ga, h, "--a");
            if (gb > 0.0) fs = steps_of(gb, 2.0 * 3.141592653589793 / length, "--b");
            if (!gsuite.empty()) {
                oms::SuiteConfig c;
                c.suite = gsuite == "reconstruct" ? "gabor-reconstruct"
                          : gsuite == "equivalence" ? "norm-equivalence"
                                                    : "window-invariance";
                c.n = n;
                c.length = length;
                c.time_step = ts;
                c.freq_step = fs;
                if (gf.seed_set) c.seed = gf.seed;
                return run_and_emit(c, gf);
            }
            const oms::Field g = window == "bump" ? oms::bump_window(n, h) : oms::gaussian_window(n, h);
            const oms::GaborSystem sys(g, ts, fs);
            const auto fb = oms::frame_bounds(sys);
            std::printf("lattice a=%.17g b=%.17g redundancy %.17g\n", sys.a(), sys.b(), sys.redundancy());
            std::printf("frame bounds A=%.17g B=%.17g (%s)\n", fb.lower, fb.upper, fb.is_frame ? "frame" : "not a frame");
            const auto dual = oms::dual_window(sys);
            std::printf("dual residual %.3g after %d iterations, reconstruction %.3g\n", dual.residual, dual.iterations,
                        dual.reconstruction_residual);
            return fb.is_frame ? 0 : 1;
        }
        if (*barg) {
            const double bh = blength / static_cast<double>(bn);
            const oms::Field f = bf.empty() ? oms::hermite_function(order, bn, bh) : hermite_combination(bf, bn, bh);
            if (check == "holomorphy") {
                const oms::Axis ax{-40, 81, 0.05};
                const double res = oms::cauchy_riemann_residual(oms::bargmann(f, ax, ax));
                std::printf("cauchy-riemann residual %.3g\n", res);
                return res <= 1e-8 ? 0 : 1;
            }
            const auto r = oms::isometry_check(f, oms::parse_quasi_young(bphi1), oms::parse_quasi_young(bphi2),
                                               oms::parse_weight(bweight), zr);
            std::printf("||f||_M %.17g\n||Vf||_B %.17g\nrelative error %.3g\n", r.mod_norm, r.b_norm, r.rel_error);
            return r.rel_error <= 1e-4 ? 0 : 1;
        }
        if (*amal) {
            oms::SuiteConfig c;
            c.suite = "convolution";
            c.inner = ainner == "linf" ? "" : ainner;
            c.phi1 = aphi1;
            c.phi2 = aphi2;
            c.omega = aweight;
            c.part = apart;
            if (af.seed_set) c.seed = af.seed;
            return run_and_emit(c, af);
        }
        return run_and_emit(config_from(top), top);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "oms: %s\n", e.what());
        return 2;
    }
}
