#include "pacp/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "pacp/error.hpp"

namespace pacp {

namespace {

using nlohmann::json;

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        fields.push_back(field);
    }
    return fields;
}

template <typename Int>
Int parse_int(const std::string& text, const char* what) {
    Int value{};
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        throw_io(std::string("cannot parse ") + what + " from '" + text + "'");
    }
    return value;
}

// Reads the header and returns the data lines, skipping blanks.
std::vector<std::vector<std::string>> read_table(std::istream& in, const std::vector<std::string>& header) {
    std::string line;
    if (!std::getline(in, line)) throw_io("empty CSV input");
    if (split_fields(line) != header) {
        std::string expected;
        for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
        throw_io("unexpected CSV header '" + line + "', expected '" + expected + "'");
    }
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto fields = split_fields(line);
        if (fields.size() != header.size()) throw_io("malformed CSV row '" + line + "'");
        rows.push_back(std::move(fields));
    }
    return rows;
}

json changepoint_json(const ModelConfig& config) {
    if (const auto* explicit_tau = std::get_if<ExplicitTau>(&config.changepoint)) {
        return {{"kind", "explicit"}, {"tau", explicit_tau->tau}};
    }
    const auto& scaled = std::get<ScaledTau>(config.changepoint);
    return {{"kind", "scaled"}, {"c", scaled.c}, {"gamma", scaled.gamma}};
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    return j.at(key).get<T>();
}

}  // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", x);
    return buffer;
}

void write_degrees_csv(std::ostream& out, const std::vector<std::uint32_t>& degrees) {
    out << "vertex,degree\n";
    for (std::size_t v = 0; v < degrees.size(); ++v) out << v << ',' << degrees[v] << '\n';
}

std::vector<std::uint32_t> read_degrees_csv(std::istream& in) {
    const auto rows = read_table(in, {"vertex", "degree"});
    std::vector<std::uint32_t> degrees(rows.size());
    std::vector<bool> seen(rows.size(), false);
    for (const auto& row : rows) {
        const auto v = parse_int<std::size_t>(row[0], "vertex");
        if (v >= rows.size() || seen[v]) throw_io("vertex ids must be 0..V-1 without repeats");
        seen[v] = true;
        degrees[v] = parse_int<std::uint32_t>(row[1], "degree");
    }
    if (degrees.size() < 2) throw_io("a degree file needs at least two vertices");
    return degrees;
}

void write_edges_csv(std::ostream& out, const std::vector<Edge>& edges) {
    out << "u,v\n";
    for (const auto& e : edges) out << e.u << ',' << e.v << '\n';
}

void write_census_csv(std::ostream& out, const DegreeCensus& census) {
    out << "k,count,tail\n";
    for (int k = census.m(); k <= census.max_degree(); ++k) {
        out << k << ',' << census.count(k) << ',' << census.tail(k) << '\n';
    }
}

DegreeCensus read_census_csv(std::istream& in, int m) {
    const auto rows = read_table(in, {"k", "count", "tail"});
    if (rows.empty()) throw_io("census file has no rows");
    std::vector<std::uint64_t> counts;
    std::vector<std::pair<int, std::uint64_t>> tails;
    for (const auto& row : rows) {
        const auto k = parse_int<int>(row[0], "k");
        if (k < 0) throw_io("negative degree in census");
        const auto count = parse_int<std::uint64_t>(row[1], "count");
        if (static_cast<std::size_t>(k) >= counts.size()) counts.resize(static_cast<std::size_t>(k) + 1, 0);
        if (counts[static_cast<std::size_t>(k)] != 0) throw_io("duplicate k in census");
        counts[static_cast<std::size_t>(k)] = count;
        tails.emplace_back(k, parse_int<std::uint64_t>(row[2], "tail"));
    }
    if (m <= 0) {
        m = 0;
        while (m < static_cast<int>(counts.size()) && counts[static_cast<std::size_t>(m)] == 0) ++m;
        if (m == 0 || m >= static_cast<int>(counts.size())) throw_io("cannot infer m from census");
    }
    auto out = DegreeCensus::from_counts(m, std::move(counts));
    for (const auto& [k, tail] : tails) {
        if (out.tail(k) != tail) throw_io("census tail column disagrees with counts at k=" + std::to_string(k));
    }
    return out;
}

std::string config_to_json(const ModelConfig& config, std::uint64_t seed, const ResolvedTau& tau) {
    json j = {{"n", config.n},
              {"m", config.m},
              {"delta0", config.delta0},
              {"delta1", config.delta1},
              {"changepoint", changepoint_json(config)},
              {"tau", tau.tau},
              {"tau_clamped", tau.clamped},
              {"seed", seed}};
    return j.dump(2);
}

std::string mle_to_json(const MleResult& result) {
    json j = {{"delta_hat", result.delta_hat},
              {"score_at_hat", result.score_at_hat},
              {"iterations", result.iterations},
              {"boundary_hit", result.boundary_hit}};
    return j.dump(2);
}

std::string report_to_json(const TestReport& report) {
    json j = {{"mode", std::string(to_string(report.mode))},
              {"statistic", report.statistic},
              {"threshold", report.threshold},
              {"reject", report.reject},
              {"alpha", report.alpha ? json(*report.alpha) : json(nullptr)},
              {"p_value", report.p_value ? json(*report.p_value) : json(nullptr)},
              {"delta_used", report.delta_used},
              {"n", report.n},
              {"m", report.m}};
    if (report.mle) {
        j["delta_hat"] = report.mle->delta_hat;
        j["boundary_hit"] = report.mle->boundary_hit;
    }
    return j.dump(2);
}

std::string constants_to_json(const ConstantsRow& row) {
    const double w = w_var(row.delta0, row.m);
    const double u = u_var(row.delta0, row.m);
    json j = {{"delta0", row.delta0},
              {"delta1", row.delta1},
              {"c", row.c},
              {"gamma", row.gamma},
              {"m", row.m},
              {"p_m", p_m_value(row.delta0, row.m)},
              {"w", w},
              {"v", v_var(row.delta0, row.m)},
              {"u", u},
              {"w_plus_u", w + u},
              {"b", b_cov(row.delta0, row.m)},
              {"eta", mean_shift_T(row.delta0, row.delta1, row.c, row.m)},
              {"alpha_shift", mean_shift_Q(row.delta0, row.delta1, row.c, row.m)}};
    return j.dump(2);
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw_io(std::string("cannot parse experiment spec: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        spec.m = get_or(j, "m", spec.m);
        spec.delta0 = get_or(j, "delta0", spec.delta0);
        spec.delta1 = get_or(j, "delta1", spec.delta0);
        spec.c = get_or(j, "c", spec.c);
        spec.gamma = get_or(j, "gamma", spec.gamma);
        if (j.contains("tau")) spec.tau = j.at("tau").get<std::int64_t>();
        spec.sizes = j.at("sizes").get<std::vector<std::int64_t>>();
        spec.replicates = get_or(j, "replicates", spec.replicates);
        spec.alpha = get_or(j, "alpha", spec.alpha);
        if (j.contains("tests")) {
            spec.tests.clear();
            for (const auto& t : j.at("tests")) spec.tests.push_back(parse_test_mode(t.get<std::string>()));
        }
        spec.bounds = {get_or(j, "delta_min", spec.bounds.delta_min),
                       get_or(j, "delta_max", spec.bounds.delta_max), spec.m};
        spec.phi_policy.log_exponent = get_or(j, "a_n_log_exponent", spec.phi_policy.log_exponent);
        spec.master_seed = get_or(j, "master_seed", spec.master_seed);
        spec.keep_samples = get_or(j, "keep_samples", spec.keep_samples);
    } catch (const json::exception& e) {
        throw_io(std::string("invalid experiment spec: ") + e.what());
    }
    return spec;
}

void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentSpec& spec,
                              const ExperimentResult& result) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw_io("cannot create output directory " + dir.string());

    std::ostringstream power;
    power << "n,test,rejections,B,power,ci_lo,ci_hi,predicted_power\n";
    for (const auto& p : result.power) {
        power << p.n << ',' << to_string(p.test) << ',' << p.rejections << ',' << p.trials << ','
              << format_double(p.power) << ',' << format_double(p.ci.lo) << ','
              << format_double(p.ci.hi) << ',' << (p.predicted ? format_double(*p.predicted) : "")
              << '\n';
    }
    write_file(dir / "power.csv", power.str());

    const double w = w_var(spec.delta0, spec.m);
    const double u = u_var(spec.delta0, spec.m);
    const double v = v_var(spec.delta0, spec.m);
    const auto shifts = shift_constants(spec.delta0, spec.delta1, spec.c, spec.m);
    std::ostringstream moments;
    moments << "n,tau,mu_T,mu_Q,vT_over_n,vQ_over_n,muT_over_ngamma,muQ_over_ngamma,eta,"
               "alpha_shift,w,w_plus_u,mean_delta_hat,n_var_delta_hat,inv_v,boundary_hits\n";
    for (const auto& s : result.sizes) {
        const double nd = static_cast<double>(s.n);
        const double ng = std::pow(nd, spec.gamma);
        moments << s.n << ',' << s.tau << ',' << format_double(s.mean_T) << ','
                << format_double(s.mean_Q) << ',' << format_double(s.var_T / nd) << ','
                << format_double(s.var_Q / nd) << ',' << format_double(s.mean_T / ng) << ','
                << format_double(s.mean_Q / ng) << ',' << format_double(shifts.eta) << ','
                << format_double(shifts.alpha_shift) << ',' << format_double(w) << ','
                << format_double(w + u) << ',' << format_double(s.mean_delta_hat) << ','
                << format_double(nd * s.var_delta_hat) << ',' << format_double(1.0 / v) << ','
                << s.boundary_hits << '\n';
    }
    write_file(dir / "moments.csv", moments.str());

    for (const auto& s : result.sizes) {
        if (s.samples_T.size() < 2) continue;
        const auto tag = std::to_string(s.n);
        for (const auto& [name, samples] :
             {std::pair{"T", &s.samples_T}, std::pair{"Q", &s.samples_Q}}) {
            std::ostringstream qq;
            qq << "theoretical,sample\n";
            const auto moments_of = empirical_moments(*samples);
            if (moments_of.variance > 0.0) {
                for (const auto& [x, y] : qq_data(*samples)) {
                    qq << format_double(x) << ',' << format_double(y) << '\n';
                }
            }
            write_file(dir / ("qq_" + std::string(name) + "_" + tag + ".csv"), qq.str());
        }
        std::ostringstream raw;
        raw << "replicate,T,Q,delta_hat,p_psi_cal\n";
        for (std::size_t b = 0; b < s.samples_T.size(); ++b) {
            raw << b << ',' << format_double(s.samples_T[b]) << ',' << format_double(s.samples_Q[b])
                << ',' << format_double(s.samples_delta_hat[b]) << ','
                << format_double(s.p_values_psi_cal[b]) << '\n';
        }
        write_file(dir / ("samples_" + tag + ".csv"), raw.str());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_io("cannot write " + path.string());
    out << contents;
    if (!out) throw_io("write failed for " + path.string());
}

}  // namespace pacp
