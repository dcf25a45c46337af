#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "platewave/params.hpp"

namespace platewave {

/// Raised on malformed or out-of-contract configuration input; maps to
/// exit code 1 at the CLI boundary.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SpectrumKind { Geometric, Dirichlet, List };
enum class LambdaSpacing { Log, Linear };
enum class TruncationPolicy { Warn, Strict };

struct RunConfig {
    // model parameters (alpha/gamma/delta/kappa default to 1)
    double alpha = 1.0;
    double gamma = 1.0;
    double delta = 1.0;
    double kappa = 1.0;
    std::optional<double> theta; // required
    std::optional<double> beta;  // required

    // spectrum provider
    SpectrumKind spectrum = SpectrumKind::Geometric;
    double sigma_min = 1.0;
    double sigma_max = 1e8;
    std::size_t modes = 400;
    double length = 1.0;                 // dirichlet provider
    std::vector<double> sigma_list;      // list provider

    // lambda grid
    double lambda_min = 1.0;
    double lambda_max = 1e6;
    std::size_t lambda_points = 64;
    LambdaSpacing lambda_spacing = LambdaSpacing::Log;

    double fit_window = 0.4;
    std::string output;
    TruncationPolicy truncation = TruncationPolicy::Warn;

    // command-specific options
    std::string witness_case = "case2";  // witness
    std::string normalization = "ratio"; // witness: ratio | paper
    double t_max = 50.0;                 // decay
    std::size_t time_points = 100;       // decay
    unsigned long seed = 12345;          // decay initial data
    double theta_min = 0.1, theta_max = 0.9; // sweep
    std::size_t theta_points = 9;
    double beta_min = 0.1, beta_max = 1.0;
    std::size_t beta_points = 9;

    SystemParams params() const {
        if (!theta || !beta)
            throw ConfigError("theta and beta are required");
        return SystemParams(alpha, gamma, delta, kappa, *theta, *beta);
    }
};

namespace detail {

inline double parse_number(const std::string& key, const std::string& value,
                           std::size_t line) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size())
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': malformed number '" + value + "'");
    return out;
}

inline std::size_t parse_count(const std::string& key, const std::string& value,
                               std::size_t line) {
    const double d = parse_number(key, value, line);
    if (d < 0.0 || d != static_cast<double>(static_cast<std::size_t>(d)))
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': expected a nonnegative integer, got '" + value +
                          "'");
    return static_cast<std::size_t>(d);
}

inline std::vector<double> parse_list(const std::string& key,
                                      const std::string& value,
                                      std::size_t line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(key, item, line));
    if (out.empty())
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': empty list");
    return out;
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace detail

/// Applies one key=value assignment. `line` is used for diagnostics only.
inline void apply_config_key(RunConfig& cfg, const std::string& key,
                             const std::string& value, std::size_t line = 0) {
    using detail::parse_count;
    using detail::parse_list;
    using detail::parse_number;
    const auto bad_value = [&](const std::string& allowed) {
        throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': invalid value '" + value + "' (expected " +
                          allowed + ")");
    };
    if (key == "alpha") cfg.alpha = parse_number(key, value, line);
    else if (key == "gamma") cfg.gamma = parse_number(key, value, line);
    else if (key == "delta") cfg.delta = parse_number(key, value, line);
    else if (key == "kappa") cfg.kappa = parse_number(key, value, line);
    else if (key == "theta") {
        const double t = parse_number(key, value, line);
        if (t < 0.0 || t > 1.0)
            throw ConfigError("line " + std::to_string(line) +
                              ": theta must lie in [0,1]");
        cfg.theta = t;
    } else if (key == "beta") {
        const double b = parse_number(key, value, line);
        if (!(b > 0.0) || b > 1.0)
            throw ConfigError("line " + std::to_string(line) +
                              ": beta must lie in (0,1]");
        cfg.beta = b;
    } else if (key == "spectrum") {
        if (value == "geometric") cfg.spectrum = SpectrumKind::Geometric;
        else if (value == "dirichlet") cfg.spectrum = SpectrumKind::Dirichlet;
        else if (value == "list") cfg.spectrum = SpectrumKind::List;
        else bad_value("geometric|dirichlet|list");
    }
    else if (key == "sigma_min") cfg.sigma_min = parse_number(key, value, line);
    else if (key == "sigma_max") cfg.sigma_max = parse_number(key, value, line);
    else if (key == "modes") cfg.modes = parse_count(key, value, line);
    else if (key == "length") cfg.length = parse_number(key, value, line);
    else if (key == "sigma_list") cfg.sigma_list = parse_list(key, value, line);
    else if (key == "lambda_min") cfg.lambda_min = parse_number(key, value, line);
    else if (key == "lambda_max") cfg.lambda_max = parse_number(key, value, line);
    else if (key == "lambda_points")
        cfg.lambda_points = parse_count(key, value, line);
    else if (key == "lambda_spacing") {
        if (value == "log") cfg.lambda_spacing = LambdaSpacing::Log;
        else if (value == "linear") cfg.lambda_spacing = LambdaSpacing::Linear;
        else bad_value("log|linear");
    }
    else if (key == "fit_window") cfg.fit_window = parse_number(key, value, line);
    else if (key == "output") {
        if (value.empty())
            throw ConfigError("line " + std::to_string(line) +
                              ": output path must be nonempty");
        cfg.output = value;
    }
    else if (key == "truncation") {
        if (value == "warn") cfg.truncation = TruncationPolicy::Warn;
        else if (value == "strict") cfg.truncation = TruncationPolicy::Strict;
        else bad_value("warn|strict");
    }
    else if (key == "case") {
        if (value != "case1" && value != "case2" && value != "case3" &&
            value != "case4")
            bad_value("case1|case2|case3|case4");
        cfg.witness_case = value;
    }
    else if (key == "normalization") {
        if (value != "ratio" && value != "paper")
            bad_value("ratio|paper");
        cfg.normalization = value;
    }
    else if (key == "t_max") cfg.t_max = parse_number(key, value, line);
    else if (key == "time_points")
        cfg.time_points = parse_count(key, value, line);
    else if (key == "seed")
        cfg.seed = static_cast<unsigned long>(parse_count(key, value, line));
    else if (key == "theta_min") cfg.theta_min = parse_number(key, value, line);
    else if (key == "theta_max") cfg.theta_max = parse_number(key, value, line);
    else if (key == "theta_points")
        cfg.theta_points = parse_count(key, value, line);
    else if (key == "beta_min") cfg.beta_min = parse_number(key, value, line);
    else if (key == "beta_max") cfg.beta_max = parse_number(key, value, line);
    else if (key == "beta_points")
        cfg.beta_points = parse_count(key, value, line);
    else
        throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                          key + "'");
}

/// key=value lines; '#' starts a comment; later keys override earlier ones.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::stringstream ss(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        raw = detail::trim(raw);
        if (raw.empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) +
                              ": expected key=value, got '" + raw + "'");
        const std::string key = detail::trim(raw.substr(0, eq));
        const std::string value = detail::trim(raw.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line) + ": empty key");
        apply_config_key(cfg, key, value, line);
    }
    return cfg;
}

} // namespace platewave
