#pragma once

// File formats. Tabular data is CSV with a header row, reports and configs are
// JSON; every floating-point value is written with 17 significant digits.
//
//   degrees.csv        vertex,degree
//   edges.csv          u,v                 (u < v, one line per edge)
//   census.csv         k,count,tail        (k = m..max_degree)
//   power.csv          n,test,rejections,B,power,ci_lo,ci_hi,predicted_power
//   moments.csv        n,tau,mu_T,mu_Q,vT_over_n,vQ_over_n,muT_over_ngamma,
//                      muQ_over_ngamma,eta,alpha_shift,w,w_plus_u,mean_delta_hat,
//                      n_var_delta_hat,inv_v,boundary_hits
//   qq_<stat>_<n>.csv  theoretical,sample

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "pacp/degree_stats.hpp"
#include "pacp/growth.hpp"
#include "pacp/hypothesis.hpp"
#include "pacp/montecarlo.hpp"

namespace pacp {

std::string format_double(double x);

void write_degrees_csv(std::ostream& out, const std::vector<std::uint32_t>& degrees);
std::vector<std::uint32_t> read_degrees_csv(std::istream& in);
void write_edges_csv(std::ostream& out, const std::vector<Edge>& edges);

void write_census_csv(std::ostream& out, const DegreeCensus& census);
// m defaults to the smallest degree with a positive count.
DegreeCensus read_census_csv(std::istream& in, int m = 0);

std::string config_to_json(const ModelConfig& config, std::uint64_t seed, const ResolvedTau& tau);
std::string report_to_json(const TestReport& report);
std::string mle_to_json(const MleResult& result);

struct ConstantsRow {
    double delta0, delta1, c, gamma;
    int m;
};
std::string constants_to_json(const ConstantsRow& row);

ExperimentSpec parse_experiment_spec(std::istream& in);

// Writes power.csv, moments.csv and, when samples were kept, qq_T_<n>.csv,
// qq_Q_<n>.csv and samples_<n>.csv into `dir`.
void write_experiment_outputs(const std::filesystem::path& dir, const ExperimentSpec& spec,
                              const ExperimentResult& result);

// File helpers that throw Error(io).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace pacp
