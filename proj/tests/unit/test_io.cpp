#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "pacp/error.hpp"
#include "pacp/growth.hpp"
#include "pacp/io.hpp"

using namespace pacp;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::numeric;
}

}  // namespace

TEST_CASE("floats are written with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("census CSV round trip") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const int m = 1 + static_cast<int>(seed % 4);
        const auto c = census(grow(ModelConfig::late_change(m, 0.3, -0.2, 1.0, 0.75, 500 + 50 * seed), seed));
        std::stringstream buffer;
        write_census_csv(buffer, c);
        CHECK(read_census_csv(buffer, m) == c);
        std::stringstream again;
        write_census_csv(again, c);
        CHECK(read_census_csv(again) == c);
    }
}

TEST_CASE("degrees CSV round trip") {
    const auto g = grow(ModelConfig::null_model(3, 0.0, 1000), 5);
    std::stringstream buffer;
    write_degrees_csv(buffer, g.degrees);
    const std::string text = buffer.str();
    CHECK(text.rfind("vertex,degree\n", 0) == 0);
    CHECK(read_degrees_csv(buffer) == g.degrees);
}

TEST_CASE("malformed input is an IO error") {
    auto parse = [](std::string text) {
        std::istringstream in(text);
        return read_census_csv(in);
    };
    CHECK(kind_of([&] { parse(""); }) == ErrorKind::io);
    CHECK(kind_of([&] { parse("k,cnt,tail\n"); }) == ErrorKind::io);
    CHECK(kind_of([&] { parse("k,count,tail\n1,x,0\n"); }) == ErrorKind::io);
    CHECK(kind_of([&] { parse("k,count,tail\n1,2,5\n"); }) == ErrorKind::io);
    CHECK(kind_of([&] { parse("k,count,tail\n1,2\n"); }) == ErrorKind::io);
    std::istringstream degrees("vertex,degree\n0,3\n2,3\n");
    CHECK(kind_of([&] { read_degrees_csv(degrees); }) == ErrorKind::io);
    CHECK(kind_of([] { read_file("/nonexistent/pacp/file"); }) == ErrorKind::io);
}

TEST_CASE("experiment spec parsing") {
    std::istringstream in(R"({"m": 3, "delta0": 0.5, "delta1": -1, "sizes": [100, 1000],
                              "replicates": 10, "tests": ["psi_cal", "phi-cal"], "delta_min": -2,
                              "master_seed": 99, "a_n_log_exponent": 2.0})");
    const auto spec = parse_experiment_spec(in);
    CHECK(spec.m == 3);
    CHECK(spec.delta0 == 0.5);
    CHECK(spec.delta1 == -1.0);
    CHECK(spec.sizes == std::vector<std::int64_t>{100, 1000});
    CHECK(spec.replicates == 10);
    CHECK(spec.tests == std::vector<TestMode>{TestMode::psi_cal, TestMode::phi_cal});
    CHECK(spec.bounds.delta_min == -2.0);
    CHECK(spec.bounds.delta_max == 10.0);
    CHECK(spec.bounds.m == 3);
    CHECK(spec.master_seed == 99);
    CHECK(spec.phi_policy.log_exponent == 2.0);
    CHECK_FALSE(spec.tau.has_value());

    std::istringstream bad("{\"sizes\": [10], ");
    CHECK(kind_of([&] { parse_experiment_spec(bad); }) == ErrorKind::io);
    std::istringstream invalid(R"({"sizes": [10], "tests": ["chi"]})");
    CHECK(kind_of([&] { parse_experiment_spec(invalid); }) == ErrorKind::invalid_argument);
}

TEST_CASE("JSON documents") {
    const auto j = nlohmann::json::parse(constants_to_json({0.0, 1.0, 1.0, 0.75, 5}));
    CHECK(std::abs(j.at("eta").get<double>() + 0.0649) < 1e-4);
    CHECK(std::abs(j.at("alpha_shift").get<double>() + 0.0464) < 1e-4);
    CHECK(std::abs(j.at("w_plus_u").get<double>() - 0.0811) < 5e-4);

    const auto config = ModelConfig::late_change(5, 0.0, 1.0, 1.0, 0.75, 10000);
    const auto c = nlohmann::json::parse(config_to_json(config, 42, resolve_tau(config)));
    CHECK(c.at("tau").get<std::int64_t>() == 9000);
    CHECK(c.at("seed").get<std::uint64_t>() == 42);
}

TEST_CASE("experiment outputs") {
    ExperimentSpec spec;
    spec.sizes = {100, 300};
    spec.replicates = 10;
    spec.keep_samples = true;
    const auto result = run_experiment(spec, 1);
    const auto dir = std::filesystem::temp_directory_path() / "pacp_io_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    write_experiment_outputs(dir, spec, result);
    for (const char* name : {"power.csv", "moments.csv", "qq_T_100.csv", "qq_Q_300.csv", "samples_300.csv"}) {
        CHECK(std::filesystem::exists(dir / name));
    }
    const std::string power = read_file(dir / "power.csv");
    CHECK(power.rfind("n,test,rejections,B,power,ci_lo,ci_hi,predicted_power\n", 0) == 0);
    std::filesystem::remove_all(dir);
}
