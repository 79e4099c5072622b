#include "cli.hpp"

#include "dataset.hpp"

#include "robmom/comparators.hpp"
#include "robmom/distributions.hpp"
#include "robmom/experiments.hpp"
#include "robmom/format.hpp"
#include "robmom/mad_moments.hpp"
#include "robmom/medad_moments.hpp"
#include "robmom/reference.hpp"
#include "robmom/robustness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace robmom::cli {

namespace {

using json = nlohmann::ordered_json;

/// Bad flag values detected after CLI11 has accepted the syntax.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputOptions {
    std::string format;
    std::string out_path;
    bool deterministic = false;
};

struct DataSource {
    std::string input;
    std::size_t column = 0;
    char delimiter = ',';
    std::string dist;
    std::size_t n = 200;
    std::uint64_t seed = 20260101;
};

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json optional_number(const std::optional<double>& v) {
    return v ? number(*v) : json(nullptr);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(text)) {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(item, &pos);
            if (pos != item.size() || v <= 0) throw std::invalid_argument(item);
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("invalid sample size '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty sample size list");
    return out;
}

template <class F>
auto as_usage(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

void write_text(const std::string& text, const OutputOptions& opts, std::ostream& out) {
    if (opts.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opts.out_path);
    if (!file) {
        throw std::runtime_error("cannot write '" + opts.out_path + "'");
    }
    file << text;
}

json envelope(const std::string& command, json params, json results, json discrepancies,
              const OutputOptions& opts, std::optional<std::uint64_t> seed = {}) {
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    if (seed) meta["seed"] = *seed;
    if (!opts.deterministic) meta["timestamp"] = timestamp_utc();
    json env;
    env["command"] = command;
    env["params"] = std::move(params);
    env["results"] = std::move(results);
    env["discrepancies"] = discrepancies.is_null() ? json::array() : std::move(discrepancies);
    env["metadata"] = std::move(meta);
    return env;
}

void emit_json(const json& env, const OutputOptions& opts, std::ostream& out) {
    write_text(env.dump(2) + "\n", opts, out);
}

void add_output_options(CLI::App* cmd, OutputOptions& opts, const std::string& default_format) {
    opts.format = default_format;
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out_path, "Write output to this file instead of stdout");
    cmd->add_flag("--deterministic", opts.deterministic, "Omit the timestamp from metadata");
}

void add_data_source(CLI::App* cmd, DataSource& src) {
    cmd->add_option("--input", src.input, "Delimited text file with the data");
    cmd->add_option("--column", src.column, "0-based column to read")->capture_default_str();
    cmd->add_option("--delimiter", src.delimiter, "Field delimiter")->capture_default_str();
    cmd->add_option("--dist", src.dist, "Draw the data from family:p1,p2 instead of --input");
    cmd->add_option("--n", src.n, "Sample size when drawing from --dist")->capture_default_str();
    cmd->add_option("--seed", src.seed, "Seed when drawing from --dist")->capture_default_str();
}

std::vector<double> resolve_data(const DataSource& src, json& params) {
    if (src.input.empty() == src.dist.empty()) {
        throw UsageError("exactly one of --input or --dist is required");
    }
    if (!src.input.empty()) {
        const auto ds = load_dataset(src.input, src.column, src.delimiter);
        params["input"] = ds.source;
        params["column"] = ds.column;
        params["n"] = ds.values.size();
        params["skipped_rows"] = ds.skipped_rows;
        return ds.values;
    }
    const auto spec = as_usage([&] { return parse_distribution_spec(src.dist); });
    RngStream rng(src.seed, 0);
    params["dist"] = to_string(spec);
    params["n"] = src.n;
    params["seed"] = src.seed;
    return Distribution(spec).sample(src.n, rng);
}

// Appends `--key value` for each key=value line of the config file whose
// flag is not already on the command line, so explicit flags win.
std::vector<std::string> merge_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw UsageError("config line without '=': " + line);
            }
            continue;
        }
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args) {
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        }
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

std::optional<std::uint64_t> data_seed(const json& params) {
    if (!params.contains("seed")) return std::nullopt;
    return params.at("seed").get<std::uint64_t>();
}

json moment_record(const std::string& system, const MomentSet& set, const char* value_prefix,
                   const char* ratio_prefix) {
    json rec;
    rec["system"] = system;
    for (std::size_t k = 1; k <= set.max_order(); ++k) {
        rec[value_prefix + std::to_string(k)] = number(set.moment(k));
    }
    for (std::size_t k = 3; k <= set.max_order(); ++k) {
        rec[ratio_prefix + std::to_string(k)] = optional_number(set.ratio(k));
    }
    return rec;
}

std::string records_csv(const json& records) {
    std::ostringstream ss;
    ss << "system,statistic,value\n";
    for (const auto& rec : records) {
        const auto system = rec.at("system").get<std::string>();
        for (const auto& [key, value] : rec.items()) {
            if (key == "system") continue;
            ss << system << ',' << key << ','
               << (value.is_null() ? std::string("nan") : format_double(value.get<double>()))
               << '\n';
        }
    }
    return ss.str();
}

// ---------------------------------------------------------------------------

struct MomentsCommand {
    DataSource src;
    std::string systems = "mad,medad,l,classical";
    std::size_t orders = 4;
    OutputOptions out;

    void run(std::ostream& os) const {
        json params;
        const auto data = resolve_data(src, params);
        const auto names = split_list(systems);
        for (const auto& s : names) {
            if (s != "mad" && s != "medad" && s != "l" && s != "classical") {
                throw UsageError("unknown system '" + s + "' (expected mad, medad, l, classical)");
            }
        }
        if (orders < 2) throw UsageError("--orders must be at least 2");
        params["systems"] = names;
        params["orders"] = orders;

        json results = json::array();
        for (const auto& s : names) {
            if (s == "mad") {
                results.push_back(moment_record(s, sample_mad_moments(data, orders), "delta", "gamma"));
            } else if (s == "medad") {
                results.push_back(moment_record(s, sample_medad_moments(data, orders), "phi", "psi"));
            } else if (s == "l") {
                const auto lm = sample_l_moments(data);
                results.push_back({{"system", s},
                                   {"lambda1", number(lm.lambda1)},
                                   {"lambda2", number(lm.lambda2)},
                                   {"lambda3", number(lm.lambda3)},
                                   {"lambda4", number(lm.lambda4)},
                                   {"tau3", optional_number(lm.tau3)},
                                   {"tau4", optional_number(lm.tau4)}});
            } else {
                const auto cm = classical_moments(data);
                results.push_back({{"system", s},
                                   {"mean", number(cm.mean)},
                                   {"sd", number(cm.sd)},
                                   {"g1", optional_number(cm.g1)},
                                   {"g2", optional_number(cm.g2)}});
            }
        }
        if (out.format == "csv") {
            write_text(records_csv(results), out, os);
        } else {
            emit_json(envelope("moments", params, results, json::array(), out, data_seed(params)), out, os);
        }
    }
};

struct PopulationCommand {
    std::string dist;
    std::string system = "mad";
    std::size_t orders = 4;
    std::optional<double> tol;
    OutputOptions out;

    void run(std::ostream& os) const {
        const auto spec = as_usage([&] { return parse_distribution_spec(dist); });
        if (orders < 2) throw UsageError("--orders must be at least 2");
        const Distribution model(spec);
        json params{{"dist", to_string(spec)}, {"system", system}, {"orders", orders}};

        MomentSet set;
        if (system == "mad") {
            const double t = tol.value_or(kMadDefaultTol);
            params["tol"] = t;
            set = population_mad_moments(model, orders, t);
        } else {
            const double t = tol.value_or(kMedadDefaultTol);
            params["tol"] = t;
            set = population_medad_moments(model, orders, t);
        }
        json record = system == "mad" ? moment_record("mad", set, "delta", "gamma")
                                      : moment_record("medad", set, "phi", "psi");

        json discrepancies = json::array();
        for (const auto& d : find_discrepancies(model, set)) {
            discrepancies.push_back({{"quantity", d.quantity},
                                     {"distribution", d.distribution},
                                     {"published_formula", d.formula},
                                     {"published", number(d.published)},
                                     {"computed", number(d.computed)},
                                     {"tolerance", number(d.tolerance)}});
        }
        if (out.format == "csv") {
            write_text(records_csv(json::array({record})), out, os);
        } else {
            emit_json(envelope("population", params, record, discrepancies, out), out, os);
        }
    }
};

struct SimulateCommand {
    std::string dist = "cauchy:0,1";
    std::string sizes = "25,50,100";
    std::size_t reps = 10000;
    std::uint64_t seed = 20260101;
    std::string estimators = "mle,medad,quantile";
    unsigned threads = 0;
    std::string config;
    OutputOptions out;

    void run(std::ostream& os) const {
        SimulationConfig cfg;
        as_usage([&] {
            cfg.distribution = parse_distribution_spec(dist);
            cfg.sample_sizes = parse_sizes(sizes);
            cfg.replicates = reps;
            cfg.seed = seed;
            cfg.threads = threads;
            cfg.estimators.clear();
            for (const auto& e : split_list(estimators)) {
                cfg.estimators.push_back(parse_cauchy_method(e));
            }
            validate(cfg);
            return 0;
        });
        const auto report = run_mc_study(cfg);
        if (out.format == "csv") {
            std::ostringstream ss;
            write_simulation_csv(ss, report);
            write_text(ss.str(), out, os);
            return;
        }
        json params{{"dist", to_string(cfg.distribution)},
                    {"n", cfg.sample_sizes},
                    {"reps", cfg.replicates},
                    {"estimators", split_list(estimators)}};
        json rows = json::array();
        for (const auto& r : report.rows) {
            rows.push_back({{"estimator", method_name(r.estimator)},
                            {"parameter", r.parameter},
                            {"n", r.n},
                            {"bias", number(r.bias)},
                            {"mse", number(r.mse)},
                            {"B", r.replicates},
                            {"seed", r.seed},
                            {"skipped", r.skipped},
                            {"nonconverged", r.nonconverged}});
        }
        emit_json(envelope("simulate", params, rows, json::array(), out, seed), out, os);
    }
};

struct SampdistCommand {
    std::string dist = "t:3";
    std::size_t n = 500;
    std::size_t reps = 2000;
    std::uint64_t seed = 20260101;
    unsigned threads = 0;
    std::string config;
    OutputOptions out;

    void run(std::ostream& os) const {
        const auto spec = as_usage([&] { return parse_distribution_spec(dist); });
        if (n < 8) throw UsageError("--n must be at least 8");
        if (reps < 1) throw UsageError("--reps must be at least 1");
        const auto table = sampling_distribution_study(spec, n, reps, seed, threads);
        if (out.format == "csv") {
            std::ostringstream ss;
            write_ratio_table_csv(ss, table);
            write_text(ss.str(), out, os);
            return;
        }
        json params{{"dist", to_string(spec)}, {"n", n}, {"reps", reps}};
        json rows = json::array();
        for (const auto& r : table.rows) {
            rows.push_back({{"rep", r.rep},
                            {"gamma3", number(r.gamma3)},
                            {"gamma4", number(r.gamma4)},
                            {"psi3", number(r.psi3)},
                            {"psi4", number(r.psi4)},
                            {"tau3", number(r.tau3)},
                            {"tau4", number(r.tau4)},
                            {"g1", number(r.g1)},
                            {"g2", number(r.g2)}});
        }
        emit_json(envelope("sampdist", params, rows, json::array(), out, seed), out, os);
    }
};

struct InfluenceCommand {
    DataSource src;
    std::string stat;
    double zmin = -10.0;
    double zmax = 10.0;
    std::size_t grid = 201;
    OutputOptions out;

    void run(std::ostream& os) const {
        const auto statistic = as_usage([&] { return parse_statistic(stat); });
        if (grid < 1) throw UsageError("--grid must be at least 1");
        if (!(zmin <= zmax)) throw UsageError("--zmin must not exceed --zmax");
        json params;
        const auto data = resolve_data(src, params);
        params["stat"] = stat;
        params["zmin"] = zmin;
        params["zmax"] = zmax;
        params["grid"] = grid;
        const auto z = linear_grid(zmin, zmax, grid);
        const auto curve = sensitivity_curve(data, statistic, z);
        if (out.format == "csv") {
            std::ostringstream ss;
            ss << "z,sc\n";
            for (std::size_t i = 0; i < curve.z.size(); ++i) {
                ss << format_double(curve.z[i]) << ',' << format_double(curve.values[i]) << '\n';
            }
            write_text(ss.str(), out, os);
            return;
        }
        json values = json::array();
        for (double v : curve.values) values.push_back(number(v));
        json results{{"statistic", statistic_name(statistic)},
                     {"n", curve.n},
                     {"base_value", number(curve.base_value)},
                     {"z", curve.z},
                     {"sc", values}};
        emit_json(envelope("influence", params, results, json::array(), out, data_seed(params)), out, os);
    }
};

struct BreakdownCommand {
    DataSource src;
    std::size_t order = 1;
    double magnitude = 1e12;
    std::optional<std::size_t> max_count;
    OutputOptions out;

    void run(std::ostream& os) const {
        json params;
        const auto data = resolve_data(src, params);
        params["order"] = order;
        params["magnitude"] = magnitude;
        const auto report = as_usage([&] {
            return contamination_sweep(data, order, magnitude, max_count);
        });
        if (out.format == "csv") {
            std::ostringstream ss;
            ss << "k,value,diverged\n";
            for (const auto& s : report.steps) {
                ss << s.contaminated << ',' << format_double(s.value) << ','
                   << (s.diverged ? 1 : 0) << '\n';
            }
            write_text(ss.str(), out, os);
            return;
        }
        json steps = json::array();
        for (const auto& s : report.steps) {
            steps.push_back({{"k", s.contaminated}, {"value", number(s.value)},
                             {"exceeds", s.exceeds}, {"diverged", s.diverged}});
        }
        json results{{"order_b", report.order_b},
                     {"n", report.n},
                     {"analytic_fraction", report.analytic_fraction},
                     {"analytic_count", report.analytic_count},
                     {"magnitude", report.magnitude},
                     {"first_diverged", report.first_diverged ? json(*report.first_diverged)
                                                              : json(nullptr)},
                     {"steps", steps}};
        emit_json(envelope("breakdown", params, results, json::array(), out, data_seed(params)), out, os);
    }
};

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantile-sliced MAD and MedAD moments, robustness diagnostics and Monte Carlo studies",
                 kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    MomentsCommand moments;
    auto* c_moments = app.add_subcommand("moments", "Sample moments of a data column");
    add_data_source(c_moments, moments.src);
    c_moments->add_option("--systems", moments.systems, "Comma list of mad, medad, l, classical")
        ->capture_default_str();
    c_moments->add_option("--orders", moments.orders, "Highest moment order B")->capture_default_str();
    add_output_options(c_moments, moments.out, "json");

    PopulationCommand population;
    auto* c_population = app.add_subcommand("population", "Population moments of an analytic model");
    c_population->add_option("--dist", population.dist, "family:p1,p2")->required();
    c_population->add_option("--system", population.system, "mad or medad")
        ->check(CLI::IsMember({"mad", "medad"}))
        ->capture_default_str();
    c_population->add_option("--orders", population.orders, "Highest moment order B")
        ->capture_default_str();
    c_population->add_option("--tol", population.tol, "Quadrature (mad) or bisection (medad) tolerance");
    add_output_options(c_population, population.out, "json");

    SimulateCommand simulate;
    auto* c_simulate = app.add_subcommand("simulate", "Cauchy location/scale bias and MSE study");
    c_simulate->add_option("--config", simulate.config, "key=value file; flags override it");
    c_simulate->add_option("--dist", simulate.dist, "Sampling distribution")->capture_default_str();
    c_simulate->add_option("--n", simulate.sizes, "Comma list of sample sizes")->capture_default_str();
    c_simulate->add_option("--reps", simulate.reps, "Replicates B")->capture_default_str();
    c_simulate->add_option("--seed", simulate.seed, "Master seed")->capture_default_str();
    c_simulate->add_option("--estimators", simulate.estimators, "Comma list of mle, medad, quantile")
        ->capture_default_str();
    c_simulate->add_option("--threads", simulate.threads, "Worker threads (0 = all cores)");
    add_output_options(c_simulate, simulate.out, "csv");

    SampdistCommand sampdist;
    auto* c_sampdist = app.add_subcommand("sampdist", "Sampling distribution of the shape ratios");
    c_sampdist->add_option("--config", sampdist.config, "key=value file; flags override it");
    c_sampdist->add_option("--dist", sampdist.dist, "Sampling distribution")->capture_default_str();
    c_sampdist->add_option("--n", sampdist.n, "Sample size")->capture_default_str();
    c_sampdist->add_option("--reps", sampdist.reps, "Replicates B")->capture_default_str();
    c_sampdist->add_option("--seed", sampdist.seed, "Master seed")->capture_default_str();
    c_sampdist->add_option("--threads", sampdist.threads, "Worker threads (0 = all cores)");
    add_output_options(c_sampdist, sampdist.out, "csv");

    InfluenceCommand influence;
    auto* c_influence = app.add_subcommand("influence", "Add-one sensitivity curve of a statistic");
    add_data_source(c_influence, influence.src);
    c_influence->add_option("--stat", influence.stat,
                            "median, delta2, phi2, gamma3, gamma4, psi3, psi4, tau3, tau4, g1, g2")
        ->required();
    c_influence->add_option("--zmin", influence.zmin)->capture_default_str();
    c_influence->add_option("--zmax", influence.zmax)->capture_default_str();
    c_influence->add_option("--grid", influence.grid, "Number of z points")->capture_default_str();
    add_output_options(c_influence, influence.out, "json");

    BreakdownCommand breakdown;
    auto* c_breakdown = app.add_subcommand("breakdown", "Upper-tail contamination sweep of phi_{b+1}");
    add_data_source(c_breakdown, breakdown.src);
    c_breakdown->add_option("--order", breakdown.order, "Slice count b (0 = median, 1 = phi2)")
        ->capture_default_str();
    c_breakdown->add_option("--magnitude", breakdown.magnitude, "Contamination value")
        ->capture_default_str();
    c_breakdown->add_option("--max-count", breakdown.max_count, "Largest contamination count");
    add_output_options(c_breakdown, breakdown.out, "json");

    std::vector<std::string> args;
    try {
        args = merge_config_file(raw_args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsageError;
    }

    std::function<void()> command;
    CLI::App* chosen = app.get_subcommands().front();
    if (chosen == c_moments) command = [&] { moments.run(out); };
    if (chosen == c_population) command = [&] { population.run(out); };
    if (chosen == c_simulate) command = [&] { simulate.run(out); };
    if (chosen == c_sampdist) command = [&] { sampdist.run(out); };
    if (chosen == c_influence) command = [&] { influence.run(out); };
    if (chosen == c_breakdown) command = [&] { breakdown.run(out); };

    try {
        command();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n\n" << chosen->help();
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kComputationError;
    }
    return kOk;
}

}  // namespace robmom::cli
