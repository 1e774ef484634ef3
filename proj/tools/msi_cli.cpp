#include "msi/error.hpp"
#include "msi/estimate.hpp"
#include "msi/fixtures.hpp"
#include "msi/io.hpp"
#include "msi/model_file.hpp"
#include "msi/plot.hpp"
#include "msi/predict.hpp"
#include "msi/simulate.hpp"
#include "msi/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace msi;

// Usage errors found after parsing (bad combinations, malformed pairs).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int g_digits = 6;

std::string fx(double x) { return format_fixed(x, g_digits); }

std::string join(std::span<const double> v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + fx(v[i]);
    return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw UsageError(what + ": '" + text + "' is not a comma-separated number list");
        }
    }
    if (out.empty()) throw UsageError(what + " is empty");
    return out;
}

Pair parse_pair(const std::string& text, const std::string& what) {
    const auto v = parse_list(text, what);
    if (v.size() != 2) throw UsageError(what + " needs two values");
    return {v[0], v[1]};
}

IndexPair parse_index_pair(const std::string& text, const std::string& what) {
    const auto v = parse_pair(text, what);
    if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1])) throw UsageError(what + " needs integers");
    return {static_cast<long>(v[0]), static_cast<long>(v[1])};
}

Axis parse_axis(const std::string& s) {
    if (s == "vertical") return Axis::vertical;
    if (s == "horizontal") return Axis::horizontal;
    return Axis::time;
}

std::ostream& output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) fail(ErrorCode::Io, "cannot write " + path);
    return file;
}

// ---- simulate ----
struct SimulateArgs {
    std::string model;
    std::string hprime;
    std::string mode = "single";
    std::string grid = "16x16";
    std::string origin = "1,1";
    std::string step = "1,1";
    std::uint64_t seed = 0;
    double jitter = 1e-10;
    std::string out;
    std::string svg;
};

int run_simulate(const SimulateArgs& a) {
    const auto x = a.grid.find('x');
    if (x == std::string::npos) throw UsageError("--grid expects ROWSxCOLS");
    const auto dims = parse_index_pair(a.grid.substr(0, x) + "," + a.grid.substr(x + 1), "--grid");
    if (dims[0] < 1 || dims[1] < 1) throw UsageError("--grid dimensions must be positive");
    if (a.model.empty() == a.hprime.empty()) throw UsageError("give exactly one of --model or --hprime");

    std::optional<CovarianceKernel> kernel;
    if (!a.hprime.empty()) {
        kernel = CovarianceKernel::fbs(parse_pair(a.hprime, "--hprime"));
    } else {
        const MsiModel model = read_model(a.model, ModelUse::simulation);
        if (a.mode == "fbs") {
            kernel = CovarianceKernel::fbs({model.hprime1.at(0), model.hprime2.at(0)});
        } else {
            kernel = CovarianceKernel::sfbs(model, a.mode == "per-rectangle" ? SfbsMode::per_rectangle : SfbsMode::single);
        }
    }
    const Eigen::MatrixXd sample = simulate_grid(*kernel, dims[0], dims[1], parse_pair(a.origin, "--origin"),
                                                 parse_pair(a.step, "--step"), a.seed, a.jitter);
    std::ofstream file;
    write_matrix_csv(output(file, a.out), sample, g_digits);
    if (!a.svg.empty()) write_text(a.svg, render_heatmap_svg(sample, "simulated field, seed " + std::to_string(a.seed)));
    return 0;
}

// ---- spectrum ----
struct SpectrumArgs {
    std::string q;
    std::string period;
    std::string hurst;
    std::string alpha = "2,2";
    int resolution = kDefaultFrequencyResolution;
    std::string coefficients_out;
    std::string density_out;
};

int run_spectrum(const SpectrumArgs& a) {
    const auto u = parse_index_pair(a.period, "--period");
    const auto rows = read_csv_rows(a.q, true);
    if (rows.empty()) fail(ErrorCode::EmptySet, a.q + " holds no covariances");
    for (const auto& r : rows) {
        if (r.size() != 5) fail(ErrorCode::Ragged, a.q + ": rows are n1,n2,tau1,tau2,value");
    }
    LagWindow window;
    window.lo = {static_cast<long>(rows[0][2]), static_cast<long>(rows[0][3])};
    window.hi = window.lo;
    for (const auto& r : rows) {
        for (int i = 0; i < 2; ++i) {
            window.lo[i] = std::min(window.lo[i], static_cast<long>(r[2 + i]));
            window.hi[i] = std::max(window.hi[i], static_cast<long>(r[2 + i]));
        }
    }
    PcCovarianceTable q(PeriodLattice(static_cast<int>(u[0]), static_cast<int>(u[1])), window);
    for (const auto& r : rows) {
        q.at({static_cast<long>(r[0]), static_cast<long>(r[1])}, {static_cast<long>(r[2]), static_cast<long>(r[3])}) = r[4];
    }
    const RTable rt = a.hurst.empty() ? r_from_q(q)
                                      : r_h_from_q(q, HurstVector(parse_list(a.hurst, "--hurst")), parse_pair(a.alpha, "--alpha"));
    const DensityTable d = a.hurst.empty() ? density_from_r(rt, a.resolution) : density_h(rt, a.resolution);

    if (!a.coefficients_out.empty()) {
        std::ofstream out(a.coefficients_out);
        if (!out) fail(ErrorCode::Io, "cannot write " + a.coefficients_out);
        out << "j1,j2,tau1,tau2,re,im\n";
        for (const auto& j : rt.lattice().indices()) {
            for (const auto& tau : window.lags()) {
                const auto v = rt.at(j, tau);
                out << j[0] << ',' << j[1] << ',' << tau[0] << ',' << tau[1] << ',' << fx(v.real()) << ',' << fx(v.imag()) << '\n';
            }
        }
    }
    if (!a.density_out.empty()) {
        std::ofstream out(a.density_out);
        if (!out) fail(ErrorCode::Io, "cannot write " + a.density_out);
        out << "j1,j2,lambda1,lambda2,re,im\n";
        for (const auto& j : d.lattice().indices()) {
            for (int k1 = 0; k1 < d.resolution(); ++k1) {
                for (int k2 = 0; k2 < d.resolution(); ++k2) {
                    const auto v = d.at(j, k1, k2);
                    out << j[0] << ',' << j[1] << ',' << fx(d.frequency(k1)) << ',' << fx(d.frequency(k2)) << ','
                        << fx(v.real()) << ',' << fx(v.imag()) << '\n';
                }
            }
        }
    }
    for (const auto& j : d.lattice().indices()) {
        const auto integral = integrate_density(d, j);
        std::cout << "density_integral j=" << j[0] << ',' << j[1] << ": " << fx(integral.real()) << ' '
                  << fx(integral.imag()) << '\n';
    }
    return 0;
}

// ---- estimate ----
struct AxisArgs {
    std::string series;
    std::string axis = "vertical";
    int segments = 3;
    std::string window;
    std::string breakpoints;
    std::string partitions;
};

struct EstimateArgs {
    AxisArgs first;
    AxisArgs second;
    bool lambda_out = false;
    bool hprime = false;
    std::string precision = "exact";
    std::string qv_mode = "raw";
    std::string model_out;
    std::string svg;
};

struct AxisResult {
    std::optional<Breakpoints> breakpoints;
    std::optional<AxisSummary> summary;
    std::vector<double> hprime;
};

AxisResult estimate_axis(const AxisArgs& a, const EstimateArgs& e, const std::string& label) {
    AxisResult r;
    std::optional<StripSeries> series;
    if (!a.series.empty()) series = read_series(a.series, parse_axis(a.axis));
    if (!a.breakpoints.empty()) {
        r.breakpoints = Breakpoints(parse_list(a.breakpoints, "--breakpoints"));
    } else if (series) {
        std::optional<AnalysisWindow> w;
        if (!a.window.empty()) {
            const auto p = parse_index_pair(a.window, "--window");
            if (p[0] < 0 || p[1] < 0) throw UsageError("--window bounds must be non-negative");
            w = AnalysisWindow{static_cast<std::size_t>(p[0]), static_cast<std::size_t>(p[1])};
        }
        r.breakpoints = detect_scale_intervals(*series, a.segments, w);
    } else {
        throw UsageError(label + ": give a series or breakpoints");
    }
    std::cout << label << "breakpoints: " << join(r.breakpoints->points()) << '\n';

    const ScaleVector scales = scale_from_breakpoints(*r.breakpoints);
    if (e.lambda_out) {
        std::cout << label << "lambda: " << join(scales.ratios()) << '\n';
        std::cout << label << "lambda_mean: " << fx(scales.mean()) << '\n';
    }
    if (e.hprime || !e.model_out.empty()) {
        if (!series) throw UsageError(label + ": H' needs the strip series");
        r.hprime = hurst_prime_all(*series, *r.breakpoints);
        std::cout << label << "hprime: " << join(r.hprime) << '\n';
    }
    if (!a.partitions.empty()) {
        const auto precision = e.precision == "reported" ? EstimationPrecision::as_reported() : EstimationPrecision::exact();
        const auto qv = quadratic_variation_table(read_partitions(a.partitions),
                                                  e.qv_mode == "increment" ? QvMode::increment : QvMode::raw);
        const auto est = subinterval_hurst(qv, scales, precision);
        for (std::size_t n = 0; n < est.ratio.size(); ++n) {
            std::cout << label << "ratio n=" << n + 1 << ": " << join(est.ratio[n]) << '\n';
            std::cout << label << "hurst n=" << n + 1 << ": " << join(est.hurst[n]) << '\n';
        }
        r.summary = summarize_axis(scales, est, precision);
        std::cout << label << "interval_hurst: " << join(r.summary->interval_hurst) << '\n';
        std::cout << label << "H: " << fx(r.summary->hurst) << '\n';
    }
    if (!e.svg.empty() && series) {
        const auto pts = r.breakpoints->points();
        write_text(e.svg, render_line_svg({label + "strip sums", {series->values().begin(), series->values().end()},
                                           {pts.begin(), pts.end()}}));
    }
    return r;
}

int run_estimate(const EstimateArgs& e) {
    const bool two_axes = !e.second.series.empty() || !e.second.breakpoints.empty();
    const AxisResult first = estimate_axis(e.first, e, two_axes ? "axis1 " : "");
    if (!two_axes) {
        if (!e.model_out.empty()) throw UsageError("--model-out needs both axes");
        return 0;
    }
    const AxisResult second = estimate_axis(e.second, e, "axis2 ");
    if (!e.model_out.empty()) {
        if (!first.summary || !second.summary) throw UsageError("--model-out needs --partitions on both axes");
        const MsiModel model = assemble_model(*first.summary, *second.summary, first.hprime, second.hprime,
                                              *first.breakpoints, *second.breakpoints);
        write_model(e.model_out, model);
        std::cout << "simulatable: " << (model.simulatable() ? "true" : "false") << '\n';
    }
    return 0;
}

// ---- predict / evaluate ----
std::string key_label(IndexPair k) { return "A" + std::to_string(k[0]) + std::to_string(k[1]); }

nlohmann::json key_map(const std::map<IndexPair, double>& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : m) j[key_label(k)] = v;
    return j;
}

struct PredictArgs {
    std::string model;
    std::string rects;
    std::string initial = "1,1";
    std::string report;
};

int run_predict(const PredictArgs& a) {
    const MsiModel model = read_model(a.model, ModelUse::analysis);
    const auto report = evaluate_prediction(read_rectangles(a.rects), model, parse_index_pair(a.initial, "--initial"));
    for (const auto& [k, v] : report.predicted) {
        std::cout << key_label(k) << ": actual " << fx(report.actual.at(k)) << " predicted " << fx(v) << '\n';
    }
    std::cout << "MAPE: " << fx(report.mape) << '\n' << "lewis: " << to_string(report.lewis) << '\n';
    if (!a.report.empty()) {
        nlohmann::json j;
        j["predicted"] = key_map(report.predicted);
        j["actual"] = key_map(report.actual);
        j["per_rect_abs_rel_error"] = key_map(report.per_rect_abs_rel_error);
        j["mape"] = report.mape;
        j["lewis"] = std::string(to_string(report.lewis));
        write_text(a.report, j.dump(2) + "\n");
    }
    return 0;
}

struct EvaluateArgs {
    std::string table;
    std::vector<std::string> exclude;
};

int run_evaluate(const EvaluateArgs& a) {
    std::map<IndexPair, double> actual, predicted;
    for (const auto& r : read_csv_rows(a.table, true)) {
        if (r.size() != 4) fail(ErrorCode::Ragged, a.table + ": rows are k1,k2,actual,predicted");
        const IndexPair k{static_cast<long>(r[0]), static_cast<long>(r[1])};
        actual[k] = r[2];
        predicted[k] = r[3];
    }
    std::set<IndexPair> exclude;
    for (const auto& e : a.exclude) exclude.insert(parse_index_pair(e, "--exclude"));
    const double gamma = mape(actual, predicted, exclude);
    std::cout << "MAPE: " << fx(gamma) << '\n' << "lewis: " << to_string(lewis_class(gamma)) << '\n';
    return 0;
}

int run_fixtures(bool list, bool validate) {
    if (list || !validate) {
        std::cout << "directory: " << fixture_dir().string() << '\n';
        for (const auto& f : fixture_registry()) std::cout << f.name << "  " << f.file << "  " << f.description << '\n';
    }
    if (!validate) return 0;
    bool ok = true;
    for (const auto& c : validate_fixtures()) {
        std::cout << (c.ok ? "ok   " : "FAIL ") << c.name << "  " << c.detail << '\n';
        ok = ok && c.ok;
    }
    return ok ? 0 : 1;
}

void add_axis_options(CLI::App* cmd, AxisArgs& a, const std::string& suffix) {
    cmd->add_option("--series" + suffix, a.series, "strip-sum or time series CSV");
    cmd->add_option("--axis" + suffix, a.axis, "axis of the series")
        ->check(CLI::IsMember({"vertical", "horizontal", "time"}));
    cmd->add_option("--segments" + suffix, a.segments, "number of scale intervals to detect")->check(CLI::PositiveNumber);
    cmd->add_option("--window" + suffix, a.window, "detector index range BEGIN,END (half-open)");
    cmd->add_option("--breakpoints" + suffix, a.breakpoints, "use these breakpoints instead of detecting");
    cmd->add_option("--partitions" + suffix, a.partitions, "partition table n,m,x1,...");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-scale invariant field toolkit"};
    app.require_subcommand(1);
    app.add_option("--digits", g_digits, "decimal digits in numeric output")->check(CLI::Range(0, 17));

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "draw a Gaussian field sample on a grid");
    simulate->add_option("--model", sim.model, "model JSON (must be simulatable)");
    simulate->add_option("--hprime", sim.hprime, "plain fBs with H'=H1,H2");
    simulate->add_option("--mode", sim.mode, "kernel for --model")->check(CLI::IsMember({"single", "per-rectangle", "fbs"}));
    simulate->add_option("--grid", sim.grid, "ROWSxCOLS");
    simulate->add_option("--origin", sim.origin, "first grid point");
    simulate->add_option("--step", sim.step, "grid spacing");
    simulate->add_option("--seed", sim.seed, "random seed");
    simulate->add_option("--jitter", sim.jitter, "initial relative diagonal jitter");
    simulate->add_option("--out", sim.out, "output CSV (default stdout)");
    simulate->add_option("--svg", sim.svg, "heatmap SVG");

    SpectrumArgs spec;
    auto* spectrum = app.add_subcommand("spectrum", "Fourier coefficients and densities of a PC covariance table");
    spectrum->add_option("--q", spec.q, "covariance CSV n1,n2,tau1,tau2,value")->required();
    spectrum->add_option("--period", spec.period, "U1,U2")->required();
    spectrum->add_option("--hurst", spec.hurst, "apply MSI weights with H1,H2");
    spectrum->add_option("--alpha", spec.alpha, "alpha1,alpha2 for the MSI weights");
    spectrum->add_option("--resolution", spec.resolution, "frequency grid points per axis")->check(CLI::Range(2, 4096));
    spectrum->add_option("--coefficients-out", spec.coefficients_out, "CSV of R_j(tau)");
    spectrum->add_option("--density-out", spec.density_out, "CSV of d_j on the frequency grid");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "scale intervals, scale ratios and Hurst exponents");
    add_axis_options(estimate, est.first, "");
    add_axis_options(estimate, est.second, "-b");
    est.second.axis = "horizontal";
    estimate->add_flag("--lambda-out", est.lambda_out, "print scale ratios");
    estimate->add_flag("--hprime", est.hprime, "print dyadic H' per interval");
    estimate->add_option("--precision", est.precision, "arithmetic of the Hurst pipeline")
        ->check(CLI::IsMember({"exact", "reported"}));
    estimate->add_option("--qv-mode", est.qv_mode, "quadratic variation terms")->check(CLI::IsMember({"raw", "increment"}));
    estimate->add_option("--model-out", est.model_out, "write the fitted model JSON");
    estimate->add_option("--svg", est.svg, "line plot of the first series with breakpoints");

    PredictArgs pred;
    auto* predict = app.add_subcommand("predict", "predict rectangle totals from an initial rectangle");
    predict->add_option("--model", pred.model, "model JSON")->required();
    predict->add_option("--rects", pred.rects, "rectangle CSV k1,k2,sub1,...")->required();
    predict->add_option("--initial", pred.initial, "initial rectangle K1,K2");
    predict->add_option("--report", pred.report, "JSON report");

    EvaluateArgs eval;
    auto* evaluate = app.add_subcommand("evaluate", "MAPE and Lewis class of actual vs predicted totals");
    evaluate->add_option("--table", eval.table, "CSV k1,k2,actual,predicted")->required();
    evaluate->add_option("--exclude", eval.exclude, "rectangle K1,K2 left out of the score");

    bool list = false, validate = false;
    auto* fixtures = app.add_subcommand("fixtures", "list or validate the bundled tables");
    fixtures->add_flag("--list", list, "list fixtures");
    fixtures->add_flag("--validate", validate, "recompute fixture checksums");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*simulate) return run_simulate(sim);
        if (*spectrum) return run_spectrum(spec);
        if (*estimate) return run_estimate(est);
        if (*predict) return run_predict(pred);
        if (*evaluate) return run_evaluate(eval);
        if (*fixtures) return run_fixtures(list, validate);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
