#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "platewave/config.hpp"
#include "platewave/evolution.hpp"
#include "platewave/mode_block.hpp"
#include "platewave/regularity.hpp"
#include "platewave/resolvent.hpp"
#include "platewave/spectrum.hpp"
#include "platewave/witness.hpp"

namespace platewave {

namespace detail {

/// 17 significant digits: doubles round-trip exactly through this.
inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline ModeSpectrum config_spectrum(const RunConfig& cfg) {
    switch (cfg.spectrum) {
        case SpectrumKind::Dirichlet:
            return spectrum_dirichlet_1d(cfg.length, cfg.modes);
        case SpectrumKind::List:
            return spectrum_from_list(cfg.sigma_list);
        case SpectrumKind::Geometric:
        default:
            return spectrum_geometric(cfg.sigma_min, cfg.sigma_max, cfg.modes);
    }
}

inline std::vector<double> config_lambda_grid(const RunConfig& cfg) {
    return cfg.lambda_spacing == LambdaSpacing::Log
               ? lambda_grid_log(cfg.lambda_min, cfg.lambda_max,
                                 cfg.lambda_points)
               : lambda_grid_linear(cfg.lambda_min, cfg.lambda_max,
                                    cfg.lambda_points);
}

/// Numerical failure distinct from bad configuration; exit code 2.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_truncation(const RunConfig& cfg, const ResolventCurve& curve,
                             std::ostream& diag) {
    if (curve.mode_policy.adequate && curve.mode_policy.suspect_samples == 0)
        return;
    std::ostringstream msg;
    msg << "truncation suspect: sigma_max=" << curve.mode_policy.sigma_max
        << " required>=" << curve.mode_policy.required_sigma_max << ", "
        << curve.mode_policy.suspect_samples << " suspect sample(s)";
    if (cfg.truncation == TruncationPolicy::Strict)
        throw NumericalFailure(msg.str());
    diag << "warning: " << msg.str() << "\n";
}

inline std::string csv_spectrum(const RunConfig& cfg, std::ostream&) {
    const ModeSpectrum sp = config_spectrum(cfg);
    std::ostringstream out;
    out << "index,sigma\n";
    for (std::size_t i = 0; i < sp.size(); ++i)
        out << i << ',' << fmt(sp.sigmas[i]) << '\n';
    return out.str();
}

inline std::string csv_resolvent(const RunConfig& cfg, std::ostream& diag) {
    const SystemParams p = cfg.params();
    const ModeSpectrum sp = config_spectrum(cfg);
    const ResolventCurve curve = resolvent_curve(p, config_lambda_grid(cfg), sp);
    check_truncation(cfg, curve, diag);
    std::ostringstream out;
    out << "lambda,norm,argmax_sigma\n";
    for (const auto& s : curve.samples)
        out << fmt(s.lambda) << ',' << fmt(s.norm) << ','
            << fmt(sp.sigmas[s.argmax_mode]) << '\n';
    return out.str();
}

inline void csv_report_row(std::ostringstream& out, const RegionReport& r) {
    out << fmt(r.theta) << ',' << fmt(r.beta) << ',' << (r.regions.in_RL ? 1 : 0)
        << ',' << (r.regions.in_RG1 ? 1 : 0) << ',' << (r.regions.in_RG2 ? 1 : 0)
        << ','
        << (r.predicted_phi ? fmt(*r.predicted_phi) : std::string("nan")) << ','
        << fmt(r.measured_slope) << ',' << fmt(r.spectral_abscissa) << ','
        << (r.error.empty() ? verdict_name(r.verdict) : "error") << '\n';
}

inline constexpr const char* kReportHeader =
    "theta,beta,in_RL,in_RG1,in_RG2,predicted_phi,measured_slope,"
    "spectral_abscissa,verdict\n";

inline std::string csv_classify(const RunConfig& cfg, std::ostream& diag) {
    const SystemParams p = cfg.params();
    const RegionReport r = classify_point(p, cfg.lambda_min, cfg.lambda_max,
                                          cfg.lambda_points, cfg.modes,
                                          cfg.fit_window);
    if (r.truncation_warning) {
        if (cfg.truncation == TruncationPolicy::Strict)
            throw NumericalFailure("truncation warning in classification");
        diag << "warning: truncation suspect at (theta=" << r.theta
             << ", beta=" << r.beta << ")\n";
    }
    std::ostringstream out;
    out << kReportHeader;
    csv_report_row(out, r);
    return out.str();
}

inline std::string csv_sweep(const RunConfig& cfg, std::ostream& diag) {
    std::vector<double> thetas, betas;
    for (std::size_t i = 0; i < cfg.theta_points; ++i)
        thetas.push_back(cfg.theta_points == 1
                             ? cfg.theta_min
                             : cfg.theta_min + (cfg.theta_max - cfg.theta_min) *
                                   static_cast<double>(i) /
                                   static_cast<double>(cfg.theta_points - 1));
    for (std::size_t i = 0; i < cfg.beta_points; ++i)
        betas.push_back(cfg.beta_points == 1
                            ? cfg.beta_min
                            : cfg.beta_min + (cfg.beta_max - cfg.beta_min) *
                                  static_cast<double>(i) /
                                  static_cast<double>(cfg.beta_points - 1));
    const SystemParams base(cfg.alpha, cfg.gamma, cfg.delta, cfg.kappa,
                            thetas.front(), betas.front());
    const auto reports =
        region_sweep(thetas, betas, base, cfg.lambda_min, cfg.lambda_max,
                     cfg.lambda_points, cfg.modes, cfg.fit_window);
    std::ostringstream out;
    out << kReportHeader;
    for (const auto& r : reports) {
        if (!r.error.empty())
            diag << "warning: sweep point (theta=" << r.theta
                 << ", beta=" << r.beta << ") failed: " << r.error << "\n";
        csv_report_row(out, r);
    }
    return out.str();
}

inline std::string csv_witness(const RunConfig& cfg, std::ostream& diag) {
    const SystemParams p = cfg.params();
    WitnessCase c = WitnessCase::Case1;
    if (cfg.witness_case == "case2") c = WitnessCase::Case2;
    else if (cfg.witness_case == "case3") c = WitnessCase::Case3;
    else if (cfg.witness_case == "case4") c = WitnessCase::Case4;
    const WitnessNormalization n = cfg.normalization == "paper"
                                       ? WitnessNormalization::PaperDbeta
                                       : WitnessNormalization::ResolventRatio;
    const WitnessSequence seq = witness_sequence(c, p, config_spectrum(cfg), n);
    if (seq.points.size() >= 3)
        diag << "fitted slope " << witness_growth_fit(seq.points)
             << " (predicted " << seq.predicted_exponent << ")\n";
    std::ostringstream out;
    out << "sigma,lambda,re_mu,im_mu,re_nu,im_nu,norm_U,norm_F,product\n";
    for (const auto& w : seq.points)
        out << fmt(w.sigma) << ',' << fmt(w.lambda) << ',' << fmt(w.mu.real())
            << ',' << fmt(w.mu.imag()) << ',' << fmt(w.nu.real()) << ','
            << fmt(w.nu.imag()) << ',' << fmt(w.norm_U) << ',' << fmt(w.norm_F)
            << ',' << fmt(w.product) << '\n';
    return out.str();
}

inline std::string csv_decay(const RunConfig& cfg, std::ostream&) {
    const SystemParams p = cfg.params();
    const ModeSpectrum sp = config_spectrum(cfg);
    if (cfg.time_points == 0)
        throw ConfigError("time_points must be positive");
    if (!(cfg.t_max > 0.0))
        throw ConfigError("t_max must be positive");

    // Deterministic random initial data, one 4-vector per mode.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<ModeBlock> blocks;
    std::vector<StateVec> initial;
    blocks.reserve(sp.size());
    initial.reserve(sp.size());
    for (double s : sp.sigmas) {
        blocks.push_back(build_mode_block(p, s));
        StateVec u;
        u.u = Complex(dist(rng), dist(rng));
        u.v = Complex(dist(rng), dist(rng));
        u.w = Complex(dist(rng), dist(rng));
        u.z = Complex(dist(rng), dist(rng));
        initial.push_back(u);
    }

    std::ostringstream out;
    out << "t,energy\n";
    for (std::size_t i = 0; i < cfg.time_points; ++i) {
        const double t =
            cfg.time_points == 1
                ? 0.0
                : cfg.t_max * static_cast<double>(i) /
                      static_cast<double>(cfg.time_points - 1);
        double total = 0.0;
        for (std::size_t k = 0; k < blocks.size(); ++k)
            total += energy(evolve_mode(blocks[k], initial[k], t), blocks[k]);
        out << fmt(t) << ',' << fmt(total) << '\n';
    }
    return out.str();
}

inline std::string csv_gevrey(const RunConfig& cfg, std::ostream& diag) {
    const SystemParams p = cfg.params();
    if (!(p.theta > 0.0) || !(p.beta < 1.0))
        throw ConfigError("gevrey requires theta in (0,1] and beta in (0,1)");
    const auto phi = predicted_gevrey_exponent(p.theta, p.beta);
    if (!phi)
        throw ConfigError("(theta, beta) lies in neither Gevrey region");
    const ModeSpectrum sp = config_spectrum(cfg);
    const ResolventCurve curve = resolvent_curve(p, config_lambda_grid(cfg), sp);
    check_truncation(cfg, curve, diag);
    std::ostringstream out;
    out << "lambda,norm_times_lambda_phi\n";
    for (const auto& s : curve.samples)
        out << fmt(s.lambda) << ','
            << fmt(s.norm * std::pow(s.lambda, *phi)) << '\n';
    return out.str();
}

} // namespace detail

/// Runs one named command against a parsed configuration, writing the CSV
/// to cfg.output in a single pass after all computation. Returns the
/// process exit code: 0 success, 1 configuration/usage error, 2 numerical
/// failure. Diagnostics go to `diag`.
inline int run_command(const std::string& name, const RunConfig& cfg,
                       std::ostream& diag) {
    try {
        if (cfg.output.empty())
            throw ConfigError("output path is required");
        std::string csv;
        if (name == "spectrum") csv = detail::csv_spectrum(cfg, diag);
        else if (name == "resolvent") csv = detail::csv_resolvent(cfg, diag);
        else if (name == "classify") csv = detail::csv_classify(cfg, diag);
        else if (name == "sweep") csv = detail::csv_sweep(cfg, diag);
        else if (name == "witness") csv = detail::csv_witness(cfg, diag);
        else if (name == "decay") csv = detail::csv_decay(cfg, diag);
        else if (name == "gevrey") csv = detail::csv_gevrey(cfg, diag);
        else
            throw ConfigError("unknown command '" + name + "'");
        std::ofstream out(cfg.output, std::ios::binary);
        if (!out)
            throw ConfigError("cannot open output path '" + cfg.output + "'");
        out << csv;
        if (!out)
            throw detail::NumericalFailure("failed writing '" + cfg.output +
                                           "'");
        return 0;
    } catch (const ConfigError& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace platewave
