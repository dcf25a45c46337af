#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "platewave/evolution.hpp"
#include "platewave/fit.hpp"
#include "platewave/mode_block.hpp"
#include "platewave/params.hpp"
#include "platewave/resolvent.hpp"
#include "platewave/spectrum.hpp"

namespace platewave {

struct RegionFlags {
    bool in_RL = false; // lack of analyticity
    bool in_RG1 = false;
    bool in_RG2 = false;
    bool in_RE = false; // exponential decay
};

/// Membership in the four parameter regions:
///   R_L  = [0,1] x (0,1] minus the analyticity point (1/2, 1);
///   R_G1 = { 2 <= theta + 2 beta,        0 < theta <= 1, 0 < beta < 1 };
///   R_G2 = { 3 theta/4 + beta/2 <= 1,    0 < theta <= 1, 0 < beta < 1 };
///   R_E  = [0,1] x (0,1].
inline RegionFlags region_membership(double theta, double beta) {
    if (!(theta >= 0.0) || !(theta <= 1.0) || !(beta > 0.0) || !(beta <= 1.0))
        throw std::invalid_argument(
            "region membership requires theta in [0,1], beta in (0,1]");
    RegionFlags r;
    r.in_RL = !(theta == 0.5 && beta == 1.0);
    const bool interior = theta > 0.0 && beta < 1.0;
    r.in_RG1 = interior && 2.0 <= theta + 2.0 * beta;
    r.in_RG2 = interior && 3.0 * theta / 4.0 + beta / 2.0 <= 1.0;
    r.in_RE = true;
    return r;
}

/// Best predicted decay order phi in (0,1]: the resolvent is expected to
/// satisfy sup_lambda lambda^phi * norm < infinity, giving Gevrey class
/// s > 1/phi. Absent when (theta, beta) lies in neither Gevrey region.
inline std::optional<double> predicted_gevrey_exponent(double theta,
                                                       double beta) {
    if (!(theta > 0.0) || !(theta <= 1.0) || !(beta > 0.0) || !(beta < 1.0))
        throw std::invalid_argument(
            "gevrey exponent requires theta in (0,1], beta in (0,1)");
    const RegionFlags r = region_membership(theta, beta);
    const double phi1 =
        2.0 * std::max((1.0 - beta) / (3.0 - beta), theta / (2.0 + theta - beta));
    const double phi2 = theta / (2.0 * (2.0 + theta - beta));
    if (r.in_RG1 && r.in_RG2) return std::max(phi1, phi2);
    if (r.in_RG1) return phi1;
    if (r.in_RG2) return phi2;
    return std::nullopt;
}

enum class Verdict { Analytic, GevreyOnly, StableNotAnalytic, Unstable };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Analytic: return "analytic";
        case Verdict::GevreyOnly: return "gevrey";
        case Verdict::StableNotAnalytic: return "stable";
        case Verdict::Unstable: return "unstable";
    }
    return "unknown";
}

struct RegionReport {
    double theta = 0.0;
    double beta = 0.0;
    RegionFlags regions;
    std::optional<double> predicted_phi;
    double measured_slope = 0.0;
    double spectral_abscissa = 0.0;
    Verdict verdict = Verdict::Unstable;
    /// Set when any resolvent sample looked truncation-limited; the
    /// verdict is then a lower-confidence reading, not a certificate.
    bool truncation_warning = false;
    std::string error; // nonempty when a sweep point failed
};

/// Slope slack for the finite-range fits of asymptotic statements.
inline constexpr double kAnalyticSlack = 0.1;  // slope <= -1 + this
inline constexpr double kGevreySlack = 0.05;   // slope <= -phi + this
inline constexpr double kDefaultFitWindow = 0.4;

/// Largest real part of any block eigenvalue over the spectrum.
inline double spectral_abscissa(const SystemParams& p,
                                const ModeSpectrum& spectrum) {
    double sup = -std::numeric_limits<double>::infinity();
    for (double s : spectrum.sigmas) {
        const auto eigs = block_spectrum(build_mode_block(p, s));
        for (const auto& e : eigs) sup = std::max(sup, e.real());
    }
    return sup;
}

/// Spectrum sized for the resolvent scan: log-spaced modes reaching the
/// truncation-adequacy bound for lambda_max.
inline ModeSpectrum adequate_spectrum(const SystemParams& p, double lambda_max,
                                      std::size_t modes = 400,
                                      double sigma_min = 1.0) {
    // x100 margin (the adequacy rule only demands x10) so the final tenth
    // of the grid, where the truncation check expects decay, lies beyond
    // the last resonance
    const double sigma_max =
        std::max(adequate_sigma_max(p, lambda_max, 100.0), sigma_min * 10.0);
    return spectrum_geometric(sigma_min, sigma_max, modes);
}

/// Builds a resolvent curve over a log lambda grid, fits its growth, and
/// classifies the point:
///   Analytic            slope <= -1 + 0.1;
///   GevreyOnly          slope <= -phi + 0.05 (phi predicted) but not above;
///   StableNotAnalytic   spectral abscissa < 0 and the curve stays bounded;
///   Unstable            otherwise.
inline RegionReport classify_point(const SystemParams& p, double lambda_min,
                                   double lambda_max,
                                   std::size_t lambda_points = 64,
                                   std::size_t modes = 400,
                                   double fit_window = kDefaultFitWindow) {
    if (!(lambda_min >= 1.0))
        throw std::invalid_argument("classification requires lambda_min >= 1");
    if (lambda_points < 8)
        throw std::invalid_argument("classification requires >= 8 grid points");
    RegionReport report;
    report.theta = p.theta;
    report.beta = p.beta;
    report.regions = region_membership(p.theta, p.beta);
    if (p.theta > 0.0 && p.beta < 1.0)
        report.predicted_phi = predicted_gevrey_exponent(p.theta, p.beta);

    const ModeSpectrum spectrum = adequate_spectrum(p, lambda_max, modes);
    // resonance-aware supremum: without the per-lambda peak modes, a
    // log-spaced grid understates the norm and misclassifies weakly damped
    // points as analytic
    const ResolventCurve curve = resolvent_curve(
        p, lambda_grid_log(lambda_min, lambda_max, lambda_points), spectrum,
        true);
    std::vector<double> ls, ns;
    ls.reserve(curve.samples.size());
    ns.reserve(curve.samples.size());
    for (const auto& s : curve.samples) {
        ls.push_back(s.lambda);
        ns.push_back(s.norm);
    }
    report.measured_slope = fit_loglog_slope(ls, ns, fit_window);
    report.truncation_warning = curve.mode_policy.suspect_samples > 0 ||
                                !curve.mode_policy.adequate;
    report.spectral_abscissa = spectral_abscissa(p, spectrum);

    const bool bounded = report.measured_slope >= -1.5 &&
                         std::isfinite(curve.samples.back().norm);
    if (report.measured_slope <= -1.0 + kAnalyticSlack)
        report.verdict = Verdict::Analytic;
    else if (report.predicted_phi &&
             report.measured_slope <= -*report.predicted_phi + kGevreySlack)
        report.verdict = Verdict::GevreyOnly;
    else if (report.spectral_abscissa < 0.0 && bounded)
        report.verdict = Verdict::StableNotAnalytic;
    else
        report.verdict = Verdict::Unstable;
    return report;
}

/// Grid classification; a failing point records its error and the sweep
/// continues.
inline std::vector<RegionReport> region_sweep(
    const std::vector<double>& thetas, const std::vector<double>& betas,
    const SystemParams& base, double lambda_min, double lambda_max,
    std::size_t lambda_points = 64, std::size_t modes = 400,
    double fit_window = kDefaultFitWindow) {
    std::vector<RegionReport> reports;
    reports.reserve(thetas.size() * betas.size());
    for (double theta : thetas) {
        for (double beta : betas) {
            try {
                const SystemParams p(base.alpha, base.gamma, base.delta,
                                     base.kappa, theta, beta);
                reports.push_back(classify_point(p, lambda_min, lambda_max,
                                                 lambda_points, modes,
                                                 fit_window));
            } catch (const std::exception& e) {
                RegionReport bad;
                bad.theta = theta;
                bad.beta = beta;
                bad.error = e.what();
                reports.push_back(bad);
            }
        }
    }
    return reports;
}

} // namespace platewave
