#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ifscli {

struct MapSpec {
    enum class Kind { Vertices, Quadratic, Linear };
    Kind kind = Kind::Vertices;
    std::vector<std::pair<double, double>> vertices;
    double a = 0, b = 0, c = 0;  ///< quadratic a x^2 + b x + c, or linear slope=b, intercept=c
    int line = 0;
};

/// Settings of one run. Command-line flags override values from --config.
struct RunConfig {
    std::optional<std::string> preset;
    std::optional<std::pair<double, double>> domain;
    std::vector<MapSpec> maps;

    std::optional<std::vector<double>> weights;
    std::optional<std::vector<double>> matrix;  ///< row-major, inline
    std::optional<std::string> matrix_path;
    std::optional<std::string> reference_path;

    double tol = 1e-3;
    double w1_tol = 1e-12;
    double merge_eps = 1e-12;
    std::optional<int> max_depth;
    int max_iter = 200;
    std::size_t samples = 100000;
    std::size_t bins = 1024;
    int prefix = 40;
    std::uint64_t seed = 1;
    int workers = 1;
    double budget = 0.0;  ///< seconds, 0 = unlimited

    std::string mode = "disjunctive";
    std::optional<double> x0;
    std::size_t tail = 1000;
    std::optional<double> resolution;
    double conley_eps = 0.05;
    std::optional<std::pair<double, double>> j;
};

/// Thrown for malformed configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// key = value lines, '#' comments, and [map] blocks holding one of
/// "vertices = x y; x y; ...", "quadratic = a, b, c" or "linear = slope, intercept".
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Applies one key=value setting; shared by the file parser and the flags.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

std::vector<double> parse_list(const std::string& s);

/// Checks cross-field rules once all sources are merged.
void validate(const RunConfig& cfg);

}  // namespace ifscli
