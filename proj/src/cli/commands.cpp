#include "simplexgeo/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "simplexgeo/cli/config.hpp"
#include "simplexgeo/cli/report_io.hpp"
#include "simplexgeo/errors.hpp"
#include "simplexgeo/exact.hpp"
#include "simplexgeo/montecarlo.hpp"

namespace simplexgeo::cli {

using nlohmann::json;

namespace {

struct OutputOptions {
    std::string format = "json";
    std::string path;
};

// Writes to --out when given, else to `out`.
void emit(const OutputOptions& options, std::ostream& out, const std::string& text) {
    if (options.path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(options.path, std::ios::binary);
    if (!file) throw ConfigError("--out: cannot open '" + options.path + "' for writing");
    file << text;
}

std::pair<int, int> parse_range(const std::string& text, const std::string& flag) {
    const auto colon = text.find(':');
    try {
        std::size_t used = 0;
        if (colon == std::string::npos) {
            const int v = std::stoi(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {v, v};
        }
        const std::string lo_text = text.substr(0, colon);
        const std::string hi_text = text.substr(colon + 1);
        const int lo = std::stoi(lo_text, &used);
        if (used != lo_text.size()) throw std::invalid_argument(text);
        const int hi = std::stoi(hi_text, &used);
        if (used != hi_text.size()) throw std::invalid_argument(text);
        if (lo > hi) throw std::invalid_argument(text);
        return {lo, hi};
    } catch (const std::exception&) {
        throw ConfigError(flag + ": expected 'lo:hi' or a single integer, got '" + text + "'");
    }
}

std::string reports_document(const std::vector<IdentityReport>& reports, const std::string& format, bool aggregate) {
    if (format == "csv") {
        std::ostringstream out;
        write_reports_csv(out, reports);
        return out.str();
    }
    json doc;
    if (aggregate) {
        json entries = json::array();
        std::int64_t passed = 0;
        for (const auto& r : reports) {
            entries.push_back(report_to_json(r));
            passed += r.pass ? 1 : 0;
        }
        doc["entries"] = entries;
        doc["summary"] = {{"total", reports.size()},
                          {"passed", passed},
                          {"failed", static_cast<std::int64_t>(reports.size()) - passed}};
    } else {
        doc["report"] = report_to_json(reports.front());
    }
    doc["metadata"] = run_metadata();
    return doc.dump(2) + "\n";
}

IdentityReport run_config(const ExperimentConfig& config) {
    config.validate();
    const Identity id = parse_identity(config.identity);
    return verify_identity(id, config.params(), config.samples, config.seed, config.policy, config.workers);
}

void add_output_options(CLI::App* cmd, OutputOptions& output) {
    cmd->add_option("--format", output.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", output.path, "Write the report to this file instead of stdout");
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string identity;
    int d = 0;
    int k = 0;
    double p = 0.0;
    std::string semiaxes;
    std::optional<std::uint64_t> rotation_seed;
    std::string rotation_file;
    std::string family = "uniform";
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::optional<int> workers;
    double z_threshold = 4.0;
    double alpha = 0.01;
    OutputOptions output;
};

int run_verify(const VerifyArgs& args, std::ostream& out) {
    ExperimentConfig config;
    config.identity = args.identity;
    config.d = args.d;
    config.k = args.k;
    config.p = args.p;
    config.semi_axes = parse_real_list(args.semiaxes, "--semiaxes");
    if (args.rotation_seed && !args.rotation_file.empty()) {
        throw ConfigError("--rotation-seed: cannot be combined with --rotation-file");
    }
    if (args.rotation_seed) {
        config.rotation.kind = RotationSpec::Kind::Random;
        config.rotation.seed = *args.rotation_seed;
    } else if (!args.rotation_file.empty()) {
        config.rotation = read_rotation_file(args.rotation_file);
    }
    config.family = parse_family(args.family);
    config.samples = args.n;
    config.seed = args.seed;
    config.workers = args.workers ? *args.workers : default_workers();
    config.policy.z_threshold = args.z_threshold;
    config.policy.alpha = args.alpha;
    try {
        config.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("--") + e.what());
    }
    const IdentityReport report = run_config(config);
    emit(args.output, out, reports_document({report}, args.output.format, false));
    return report.pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// suite

struct SuiteArgs {
    std::string path;
    std::optional<int> workers;
    OutputOptions output;
};

int run_suite(const SuiteArgs& args, std::ostream& out) {
    std::ifstream in(args.path);
    if (!in) throw ConfigError("suite: cannot open '" + args.path + "'");
    json document;
    try {
        in >> document;
    } catch (const json::exception& e) {
        throw ConfigError("suite: " + std::string(e.what()));
    }
    std::vector<ExperimentConfig> configs = parse_suite(document);
    std::vector<IdentityReport> reports;
    reports.reserve(configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i) {
        auto& config = configs[i];
        if (args.workers) config.workers = *args.workers;
        try {
            reports.push_back(run_config(config));
        } catch (const std::logic_error& e) {
            throw ConfigError("entry " + std::to_string(i) + ": " + e.what());
        }
    }
    emit(args.output, out, reports_document(reports, args.output.format, true));
    const bool all_pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
    return all_pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// table

struct TableArgs {
    std::string d_range;
    std::string k_range;
    std::string p_list;
    std::string semiaxes;
    std::optional<std::uint64_t> rotation_seed;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    std::optional<int> workers;
    OutputOptions output{"csv", ""};
};

struct TableRow {
    int d, k;
    double p;
    std::vector<double> semi_axes;
    std::int64_t n;
    EstimateReport estimate;
    double ball_exact;
    EstimateReport projection_factor;
    double predicted, predicted_stderr, z;
};

int run_table(const TableArgs& args, std::ostream& out) {
    const auto [d_lo, d_hi] = parse_range(args.d_range, "--d-range");
    const auto [k_lo, k_hi] = parse_range(args.k_range, "--k-range");
    if (d_lo < 1) throw ConfigError("--d-range: dimensions must be >= 1");
    if (k_lo < 1) throw ConfigError("--k-range: k must be >= 1");
    const std::vector<double> ps = parse_real_list(args.p_list, "--p-list");
    for (double p : ps) {
        if (!(p > -1.0)) throw ConfigError("--p-list: every p must exceed -1");
    }
    std::vector<double> axes_arg;
    if (!args.semiaxes.empty()) {
        axes_arg = parse_real_list(args.semiaxes, "--semiaxes");
        if (d_lo != d_hi || static_cast<int>(axes_arg.size()) != d_lo) {
            throw ConfigError("--semiaxes: needs a single dimension in --d-range equal to its length");
        }
        for (double a : axes_arg) {
            if (!(std::isfinite(a) && a > 0.0)) throw ConfigError("--semiaxes: values must be positive");
        }
    }
    if (args.n < 2) throw ConfigError("--n: must be >= 2");
    const int workers = args.workers ? *args.workers : default_workers();
    if (workers < 1) throw ConfigError("--workers: must be >= 1");

    const RandomStream root(args.seed);
    std::vector<TableRow> rows;
    std::uint64_t index = 0;
    for (int d = d_lo; d <= d_hi; ++d) {
        std::vector<double> axes = axes_arg.empty() ? std::vector<double>(static_cast<std::size_t>(d), 1.0) : axes_arg;
        std::optional<Matrix> rotation;
        if (args.rotation_seed) {
            RotationSpec spec{RotationSpec::Kind::Random, *args.rotation_seed, {}};
            rotation = spec.resolve(d);
        }
        const Ellipsoid ellipsoid = Ellipsoid::from_semiaxes(axes, rotation);
        for (int k = k_lo; k <= std::min(k_hi, d); ++k) {
            for (double p : ps) {
                const RandomStream row_stream = root.split(index++);
                TableRow row{d, k, p, axes, args.n, {}, 0.0, {}, 0.0, 0.0, 0.0};
                row.estimate = estimate_simplex_moment(row_stream.split(0), ellipsoid, k, p, args.n, workers);
                row.ball_exact = ball_simplex_moment(d, k, p);
                row.projection_factor =
                    estimate_projection_moment(row_stream.split(1), ellipsoid, k, p, args.n, workers);
                const double norm = std::pow(ball_volume(k), p);
                row.projection_factor.value /= norm;
                row.projection_factor.std_error /= norm;
                row.predicted = row.ball_exact * row.projection_factor.value;
                row.predicted_stderr = row.ball_exact * row.projection_factor.std_error;
                row.z = z_compare(row.estimate.measurement(), {row.predicted, row.predicted_stderr});
                rows.push_back(std::move(row));
            }
        }
    }

    std::ostringstream text;
    if (args.output.format == "csv") {
        text << "d,k,p,semi_axes,n,seed,estimate,stderr,ball_exact,projection_factor,projection_factor_stderr,"
                "predicted,predicted_stderr,z\n";
        for (const auto& row : rows) {
            std::string axes;
            for (std::size_t i = 0; i < row.semi_axes.size(); ++i) {
                if (i) axes += ';';
                axes += format_real(row.semi_axes[i]);
            }
            text << row.d << ',' << row.k << ',' << format_real(row.p) << ',' << axes << ',' << row.n << ','
                 << args.seed << ',' << format_real(row.estimate.value) << ','
                 << format_real(row.estimate.std_error) << ',' << format_real(row.ball_exact) << ','
                 << format_real(row.projection_factor.value) << ','
                 << format_real(row.projection_factor.std_error) << ',' << format_real(row.predicted) << ','
                 << format_real(row.predicted_stderr) << ',' << format_real(row.z) << '\n';
        }
    } else {
        json table = json::array();
        for (const auto& row : rows) {
            table.push_back({{"d", row.d},
                             {"k", row.k},
                             {"p", row.p},
                             {"semi_axes", row.semi_axes},
                             {"n", row.n},
                             {"seed", args.seed},
                             {"estimate", row.estimate.value},
                             {"stderr", row.estimate.std_error},
                             {"ball_exact", row.ball_exact},
                             {"projection_factor", row.projection_factor.value},
                             {"projection_factor_stderr", row.projection_factor.std_error},
                             {"predicted", row.predicted},
                             {"predicted_stderr", row.predicted_stderr},
                             {"z", std::isfinite(row.z) ? json(row.z) : json(row.z > 0 ? "inf" : "-inf")}});
        }
        text << json{{"rows", table}, {"metadata", run_metadata()}}.dump(2) << '\n';
    }
    emit(args.output, out, text.str());
    return kPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random simplices in ellipsoids: closed forms and Monte Carlo verification", "simplexgeo"};
    app.require_subcommand(1);

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Verify one identity by Monte Carlo");
    verify_cmd->add_option("--identity", verify.identity, "Identity label, e.g. thm-2.1 or ft-linear")->required();
    verify_cmd->add_option("--d", verify.d, "Ambient dimension")->required();
    verify_cmd->add_option("--k", verify.k, "Simplex / subspace dimension")->required();
    verify_cmd->add_option("--p", verify.p, "Moment exponent");
    verify_cmd->add_option("--semiaxes", verify.semiaxes, "Comma-separated semi-axes")->required();
    verify_cmd->add_option("--rotation-seed", verify.rotation_seed, "Rotate the ellipsoid by a Haar rotation");
    verify_cmd->add_option("--rotation-file", verify.rotation_file, "JSON file with a d x d rotation matrix");
    verify_cmd->add_option("--family", verify.family, "Point family for distributional checks: uniform|gaussian");
    verify_cmd->add_option("--n", verify.n, "Sample count (per side for distributional checks)")->required();
    verify_cmd->add_option("--seed", verify.seed, "Root seed")->required();
    verify_cmd->add_option("--workers", verify.workers, "Worker threads (default $SIMPLEXGEO_WORKERS or 1)");
    verify_cmd->add_option("--z-threshold", verify.z_threshold, "Pass threshold on |z|");
    verify_cmd->add_option("--alpha", verify.alpha, "KS significance level");
    add_output_options(verify_cmd, verify.output);

    SuiteArgs suite;
    auto* suite_cmd = app.add_subcommand("suite", "Run every entry of a suite file");
    suite_cmd->add_option("config", suite.path, "Suite JSON file")->required();
    suite_cmd->add_option("--workers", suite.workers, "Override the worker count of every entry");
    add_output_options(suite_cmd, suite.output);

    TableArgs table;
    auto* table_cmd = app.add_subcommand("table", "Tabulate simplex moments over a (d, k, p) grid");
    table_cmd->add_option("--d-range", table.d_range, "Dimensions, lo:hi")->required();
    table_cmd->add_option("--k-range", table.k_range, "Simplex dimensions, lo:hi")->required();
    table_cmd->add_option("--p-list", table.p_list, "Comma-separated exponents")->required();
    table_cmd->add_option("--semiaxes", table.semiaxes, "Semi-axes (unit ball when omitted)");
    table_cmd->add_option("--rotation-seed", table.rotation_seed, "Rotate the ellipsoid by a Haar rotation");
    table_cmd->add_option("--n", table.n, "Samples per estimate")->required();
    table_cmd->add_option("--seed", table.seed, "Root seed")->required();
    table_cmd->add_option("--workers", table.workers, "Worker threads");
    table_cmd->add_option("--format", table.output.format, "Table format")->check(CLI::IsMember({"json", "csv"}));
    table_cmd->add_option("--out", table.output.path, "Write the table to this file instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (verify_cmd->parsed()) return run_verify(verify, out);
        if (suite_cmd->parsed()) return run_suite(suite, out);
        return run_table(table, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::logic_error& e) {
        // DomainError / ValidationError from the library.
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace simplexgeo::cli
