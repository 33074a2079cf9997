// pacp: command-line front end.
//
//   pacp generate   --n N --m M --delta0 D [--delta1 D1 [--c C --gamma G | --tau T]] [--edges]
//   pacp census     --degrees FILE [--m M] [--out FILE]
//   pacp estimate   --census FILE [--delta-min A --delta-max B]
//   pacp test       --census FILE --mode MODE [--alpha A] [--delta0 D | --delta-min A --delta-max B]
//   pacp constants  --delta0 D --delta1 D1 --m M [--c C --gamma G]
//   pacp experiment --spec FILE [--keep-samples]
//
// Exit codes: 0 ok, 2 usage or invalid parameters, 3 IO, 4 numeric failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "pacp/degree_stats.hpp"
#include "pacp/error.hpp"
#include "pacp/estimator.hpp"
#include "pacp/growth.hpp"
#include "pacp/hypothesis.hpp"
#include "pacp/io.hpp"
#include "pacp/montecarlo.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

struct Globals {
    std::uint64_t seed = 1;
    std::optional<unsigned> threads;
    fs::path output_dir = ".";
};

unsigned thread_count(const Globals& g) {
    if (g.threads) return *g.threads;
    if (const char* env = std::getenv("PA_THREADS")) {
        try {
            const long value = std::stol(env);
            if (value >= 0) return static_cast<unsigned>(value);
        } catch (const std::exception&) {
        }
        pacp::throw_invalid(std::string("PA_THREADS must be a non-negative integer, got '") + env + "'");
    }
    return 0;
}

pacp::DegreeCensus load_census(const fs::path& path) {
    std::istringstream in(pacp::read_file(path));
    return pacp::read_census_csv(in);
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) pacp::throw_io("cannot open " + path.string() + " for writing");
    return out;
}

struct GenerateArgs {
    std::int64_t n = 0;
    int m = 0;
    double delta0 = 0.0;
    std::optional<double> delta1;
    double c = 1.0;
    double gamma = 0.75;
    std::optional<std::int64_t> tau;
    bool edges = false;
};

void cmd_generate(const GenerateArgs& a, const Globals& g) {
    pacp::ModelConfig config;
    if (a.tau) {
        config = {a.m, a.delta0, a.delta1.value_or(a.delta0), pacp::ExplicitTau{*a.tau}, a.n};
    } else if (a.delta1) {
        config = pacp::ModelConfig::late_change(a.m, a.delta0, *a.delta1, a.c, a.gamma, a.n);
    } else {
        config = pacp::ModelConfig::null_model(a.m, a.delta0, a.n);
    }
    config.validate();
    const auto graph = pacp::grow(config, g.seed, {.keep_edges = a.edges});

    fs::create_directories(g.output_dir);
    {
        auto out = open_output(g.output_dir / "degrees.csv");
        pacp::write_degrees_csv(out, graph.degrees);
    }
    if (graph.edges) {
        auto out = open_output(g.output_dir / "edges.csv");
        pacp::write_edges_csv(out, *graph.edges);
    }
    const std::string doc = pacp::config_to_json(config, g.seed, {graph.tau, graph.tau_clamped});
    pacp::write_file(g.output_dir / "config.json", doc + "\n");
    std::cout << doc << '\n';
}

void cmd_census(const fs::path& degrees_path, int m, const std::optional<fs::path>& out_path) {
    std::istringstream in(pacp::read_file(degrees_path));
    const auto degrees = pacp::read_degrees_csv(in);
    if (m <= 0) m = static_cast<int>(*std::min_element(degrees.begin(), degrees.end()));
    const auto c = pacp::census(degrees, m);
    if (const auto violations = c.invariant_violations(); !violations.empty()) {
        for (const auto& v : violations) std::cerr << "warning: " << v << '\n';
    }
    if (out_path) {
        auto out = open_output(*out_path);
        pacp::write_census_csv(out, c);
    } else {
        pacp::write_census_csv(std::cout, c);
    }
}

void cmd_estimate(const fs::path& census_path, double delta_min, double delta_max) {
    const auto c = load_census(census_path);
    const auto fit = pacp::mle(c, {delta_min, delta_max, c.m()});
    std::cout << pacp::mle_to_json(fit) << '\n';
}

struct TestArgs {
    fs::path census;
    std::string mode;
    double alpha = 0.05;
    std::optional<double> delta0;
    std::optional<double> delta_min;
    std::optional<double> delta_max;
    double log_exponent = 1.5;
};

void cmd_test(const TestArgs& a) {
    const auto mode = pacp::parse_test_mode(a.mode);
    const bool known_delta = mode == pacp::TestMode::psi || mode == pacp::TestMode::psi_cal;
    if (known_delta && !a.delta0) pacp::throw_invalid("--mode " + a.mode + " needs --delta0");
    if (!known_delta && !(a.delta_min && a.delta_max)) {
        pacp::throw_invalid("--mode " + a.mode + " needs --delta-min and --delta-max");
    }
    const auto c = load_census(a.census);
    pacp::TestReport report;
    switch (mode) {
        case pacp::TestMode::psi: report = pacp::test_psi(c, *a.delta0, a.alpha); break;
        case pacp::TestMode::psi_cal: report = pacp::test_psi_cal(c, *a.delta0, a.alpha); break;
        case pacp::TestMode::phi:
            report = pacp::test_phi(c, pacp::ParameterBounds{*a.delta_min, *a.delta_max, c.m()},
                                    pacp::ThresholdPolicy{a.log_exponent});
            break;
        case pacp::TestMode::phi_cal:
            report = pacp::test_phi_cal(c, pacp::ParameterBounds{*a.delta_min, *a.delta_max, c.m()}, a.alpha);
            break;
    }
    std::cout << pacp::report_to_json(report) << '\n';
}

void cmd_experiment(const fs::path& spec_path, bool keep_samples, const Globals& g) {
    std::istringstream in(pacp::read_file(spec_path));
    auto spec = pacp::parse_experiment_spec(in);
    if (keep_samples) spec.keep_samples = true;
    const auto result = pacp::run_experiment(spec, thread_count(g));
    pacp::write_experiment_outputs(g.output_dir, spec, result);

    json summary = json::array();
    for (const auto& p : result.power) {
        summary.push_back({{"n", p.n},
                           {"test", std::string(pacp::to_string(p.test))},
                           {"power", p.power},
                           {"ci", {p.ci.lo, p.ci.hi}}});
    }
    std::ostringstream digest;
    digest << std::hex << result.digest();
    std::cout << json{{"output_dir", g.output_dir.string()}, {"digest", digest.str()}, {"power", summary}}.dump(2)
              << '\n';
}

int exit_code(pacp::ErrorKind kind) {
    switch (kind) {
        case pacp::ErrorKind::invalid_argument: return kExitUsage;
        case pacp::ErrorKind::io: return kExitIo;
        case pacp::ErrorKind::numeric: return kExitNumeric;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preferential-attachment changepoint tests"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    std::optional<unsigned> threads;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", threads, "worker threads for experiment (0 = all cores; env PA_THREADS)");
    app.add_option("--output-dir", g.output_dir, "directory for output files")->capture_default_str();

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "grow one graph and write its degree sequence");
    generate->add_option("--n", gen.n, "final time; the graph has n + 1 vertices")->required();
    generate->add_option("--m", gen.m, "edges per new vertex")->required();
    generate->add_option("--delta0", gen.delta0, "offset before the changepoint")->required();
    auto* delta1_opt = generate->add_option("--delta1", gen.delta1, "offset after the changepoint");
    auto* c_opt = generate->add_option("--c", gen.c, "changepoint scale: tau = n - floor(c n^gamma)")
                      ->capture_default_str();
    auto* gamma_opt = generate->add_option("--gamma", gen.gamma, "changepoint exponent")->capture_default_str();
    auto* tau_opt = generate->add_option("--tau", gen.tau, "explicit changepoint");
    tau_opt->excludes(c_opt)->excludes(gamma_opt);
    c_opt->needs(delta1_opt);
    gamma_opt->needs(delta1_opt);
    generate->add_flag("--edges", gen.edges, "also write edges.csv");

    fs::path degrees_path;
    int census_m = 0;
    std::optional<fs::path> census_out;
    auto* census = app.add_subcommand("census", "degree counts N_k and tails N_>k from a degree file");
    census->add_option("--degrees", degrees_path, "degrees.csv written by generate")->required();
    census->add_option("--m", census_m, "minimal degree (default: smallest degree present)");
    census->add_option("--out", census_out, "write here instead of stdout");

    fs::path estimate_census;
    double est_min = -0.5, est_max = 10.0;
    auto* estimate = app.add_subcommand("estimate", "maximum-likelihood offset from a census");
    estimate->add_option("--census", estimate_census, "census CSV")->required();
    estimate->add_option("--delta-min", est_min)->capture_default_str();
    estimate->add_option("--delta-max", est_max)->capture_default_str();

    TestArgs test_args;
    auto* test = app.add_subcommand("test", "run one changepoint test on a census");
    test->add_option("--census", test_args.census, "census CSV")->required();
    test->add_option("--mode", test_args.mode, "psi | phi | psi-cal | phi-cal")->required();
    test->add_option("--alpha", test_args.alpha, "significance level")->capture_default_str();
    auto* d0 = test->add_option("--delta0", test_args.delta0, "known offset (psi, psi-cal)");
    auto* dmin = test->add_option("--delta-min", test_args.delta_min, "MLE lower bound (phi, phi-cal)");
    auto* dmax = test->add_option("--delta-max", test_args.delta_max, "MLE upper bound (phi, phi-cal)");
    d0->excludes(dmin)->excludes(dmax);
    test->add_option("--a-n-exponent", test_args.log_exponent, "phi threshold sqrt(n) (log n)^exponent")
        ->capture_default_str();

    pacp::ConstantsRow row{0.0, 0.0, 1.0, 0.75, 5};
    auto* constants = app.add_subcommand("constants", "limiting variance and shift constants as JSON");
    constants->add_option("--delta0", row.delta0)->required();
    constants->add_option("--delta1", row.delta1)->required();
    constants->add_option("--m", row.m)->required();
    constants->add_option("--c", row.c)->capture_default_str();
    constants->add_option("--gamma", row.gamma)->capture_default_str();

    fs::path spec_path;
    bool keep_samples = false;
    auto* experiment = app.add_subcommand("experiment", "Monte Carlo size and power study");
    experiment->add_option("--spec", spec_path, "JSON experiment spec")->required();
    experiment->add_flag("--keep-samples", keep_samples, "write per-replicate statistics and QQ data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    g.threads = threads;

    try {
        if (*generate) cmd_generate(gen, g);
        if (*census) cmd_census(degrees_path, census_m, census_out);
        if (*estimate) cmd_estimate(estimate_census, est_min, est_max);
        if (*test) cmd_test(test_args);
        if (*constants) {
            if (row.c <= 0.0) pacp::throw_invalid("--c must be positive");
            std::cout << pacp::constants_to_json(row) << '\n';
        }
        if (*experiment) cmd_experiment(spec_path, keep_samples, g);
    } catch (const pacp::Error& e) {
        std::cerr << "pacp: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const fs::filesystem_error& e) {
        std::cerr << "pacp: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
