#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "platewave/mode_block.hpp"
#include "platewave/params.hpp"
#include "platewave/spectrum.hpp"

namespace platewave {

/// Thrown when (i*lambda*I - B) is singular on some mode: a delta=0
/// resonance where i*lambda is an imaginary eigenvalue of the block.
struct SingularSystemError : std::runtime_error {
    double lambda;
    double sigma;
    SingularSystemError(double lambda_, double sigma_)
        : std::runtime_error("singular resolvent system at lambda=" +
                             std::to_string(lambda_) + ", sigma=" +
                             std::to_string(sigma_)),
          lambda(lambda_), sigma(sigma_) {}
};

namespace detail {

inline Eigen::Matrix4cd shifted_matrix(const ModeBlock& b, double lambda) {
    Eigen::Matrix4cd m = -b.matrix.cast<Complex>();
    for (int i = 0; i < 4; ++i)
        m(i, i) += Complex(0.0, lambda);
    return m;
}

/// (i*lambda*I - B) conjugated with D = diag(sqrt(weights)); the weighted
/// operator norm of the resolvent is 1 / smallest singular value of this.
inline Eigen::Matrix4cd weighted_shifted_matrix(const ModeBlock& b,
                                                double lambda) {
    const Eigen::Vector4d d = b.weights.cwiseSqrt();
    Eigen::Matrix4cd m = shifted_matrix(b, lambda);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) *= d(i) / d(j);
    return m;
}

/// Squared resonance frequencies (s_minus, s_plus) of the undamped mode:
/// the two roots of the real quadratic q(s) shared with the witness
/// construction. Both branches increase with sigma.
inline std::pair<double, double> resonance_freqs_squared(const SystemParams& p,
                                                         double sigma) {
    const double m = 1.0 + p.kappa * std::pow(sigma, p.beta);
    const double b =
        -(p.alpha * (sigma + p.kappa * std::pow(sigma, 1.0 + p.beta)) +
          (p.alpha + p.gamma * p.gamma) * sigma * sigma);
    const double c = p.alpha * p.alpha * sigma * sigma * sigma;
    const double disc = b * b - 4.0 * m * c;
    const double big = (-b + std::sqrt(std::max(disc, 0.0))) / (2.0 * m);
    return {c / (m * big), big};
}

/// Modes resonant with the frequency lambda: for each branch, the sigma in
/// [sigma_min, sigma_max] whose undamped frequency matches lambda, found by
/// bisection in log sigma (each branch is monotone in sigma). These are the
/// locations of the resolvent-norm peaks a coarse mode grid would miss.
inline std::vector<double> resonant_sigmas(const SystemParams& p,
                                           double lambda, double sigma_min,
                                           double sigma_max) {
    const double target = lambda * lambda;
    std::vector<double> out;
    // branches 0/1: the two undamped coupled resonances (roots of q);
    // branch 2: the plate resonance alpha*sigma^2 = lambda^2 (1+kappa
    // sigma^beta), where the damped norm peaks for stronger damping
    for (int branch = 0; branch < 3; ++branch) {
        const auto value = [&](double sigma) {
            if (branch == 2)
                return p.alpha * sigma * sigma /
                           (1.0 + p.kappa * std::pow(sigma, p.beta)) -
                       target;
            const auto [lo, hi] = resonance_freqs_squared(p, sigma);
            return (branch == 0 ? lo : hi) - target;
        };
        double a = sigma_min, b = sigma_max;
        if (!(value(a) <= 0.0) || !(value(b) >= 0.0)) continue;
        for (int i = 0; i < 200 && b / a > 1.0 + 1e-14; ++i) {
            const double mid = std::sqrt(a * b);
            (value(mid) < 0.0 ? a : b) = mid;
        }
        out.push_back(std::sqrt(a * b));
    }
    return out;
}

} // namespace detail

/// Solves (i*lambda*I - B) U = F on one mode.
///
/// The first two rows of the shifted system are pure shifts
/// (i*lambda*u - w = F1, i*lambda*v - z = F2), so they are eliminated
/// exactly and only the remaining well-scaled 2x2 Schur complement in
/// (u, v) is solved numerically. A general dense solve would leave a
/// residual proportional to the largest matrix entry (alpha*sigma^2 at
/// high modes), orders of magnitude above the residual contract; the
/// reduction keeps rows 1-2 exact and the 2x2 residual at roundoff of
/// its own scale.
inline StateVec resolvent_solve(const ModeBlock& b, double lambda,
                                const StateVec& force) {
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(
        detail::weighted_shifted_matrix(b, lambda));
    const double smin = svd.singularValues()(3);
    const double smax = svd.singularValues()(0);
    if (!(smin > smax * 1e-14))
        throw SingularSystemError(lambda, b.sigma);

    const Complex il(0.0, lambda);
    const double l2 = lambda * lambda;
    const double b31 = b.matrix(2, 0), b34 = b.matrix(2, 3);
    const double b42 = b.matrix(3, 1), b43 = b.matrix(3, 2);
    const double b44 = b.matrix(3, 3);
    const Complex a11 = Complex(-l2 - b31, 0.0);
    const Complex a12 = -il * b34;
    const Complex a21 = -il * b43;
    const Complex a22 = Complex(-l2 - b42, 0.0) - il * b44;
    const Complex g1 = force.w + il * force.u - b34 * force.v;
    const Complex g2 = force.z + il * force.v - b43 * force.u -
                       b44 * force.v;
    const Complex det = a11 * a22 - a12 * a21;
    StateVec out;
    out.u = (g1 * a22 - a12 * g2) / det;
    out.v = (a11 * g2 - a21 * g1) / det;
    out.w = il * out.u - force.u;
    out.z = il * out.v - force.v;
    return out;
}

/// Closed-form solution coefficients (mu, nu) of the per-mode algebraic
/// system for the forcing F = (0, 0, -1, 0):
///   p1 mu - i lambda gamma sigma nu = 1 + kappa sigma^beta
///   i lambda gamma sigma mu + (p2 - i delta lambda sigma^theta) nu = 0
/// with p1 = lambda^2 (1+kappa sigma^beta) - alpha sigma^2 and
/// p2 = lambda^2 - alpha sigma. The solution tuple is (mu, nu, i*lambda*mu,
/// i*lambda*nu).
inline std::pair<Complex, Complex> explicit_mu_nu(const SystemParams& p,
                                                  double sigma, double lambda) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sigma must be positive");
    const double m = 1.0 + p.kappa * std::pow(sigma, p.beta);
    const double p1 = lambda * lambda * m - p.alpha * sigma * sigma;
    const double p2 = lambda * lambda - p.alpha * sigma;
    const double damp = p.delta * lambda * std::pow(sigma, p.theta);
    const Complex den =
        Complex(p1 * p2 - p.gamma * p.gamma * lambda * lambda * sigma * sigma,
                -damp * p1);
    // relative zero test: the denominator cancels catastrophically at a
    // conservative resonance even when roundoff leaves a tiny residue
    const double den_scale = std::abs(p1 * p2) +
                             p.gamma * p.gamma * lambda * lambda * sigma * sigma +
                             std::abs(damp * p1);
    if (!(std::abs(den) > 1e-12 * den_scale))
        throw SingularSystemError(lambda, sigma);
    const Complex mu = m * Complex(p2, -damp) / den;
    const Complex nu = Complex(0.0, -p.gamma * lambda * sigma) * m / den;
    return {mu, nu};
}

/// Weighted operator norm of (i*lambda*I - B)^{-1} on one mode.
inline double resolvent_block_norm(const ModeBlock& b, double lambda) {
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(
        detail::weighted_shifted_matrix(b, lambda));
    const double smin = svd.singularValues()(3);
    const double smax = svd.singularValues()(0);
    if (!(smin > smax * 1e-14))
        throw SingularSystemError(lambda, b.sigma);
    return 1.0 / smin;
}

struct ResolventSample {
    double lambda = 0.0;
    double norm = 0.0;
    std::size_t argmax_mode = 0;
    /// Set when the supremum is attained at the final mode or the block
    /// norms fail to decay over the tail of the spectrum; the finite
    /// truncation is then suspect of underestimating the true supremum.
    bool truncation_suspect = false;
};

/// Truncation adequacy: the plate-resonant mode for the largest frequency
/// of interest satisfies sigma ~ lambda^{2/(2-beta)}, and the slow coupled
/// branch can sit as high as sigma ~ lambda^2; the spectrum should reach a
/// factor `margin` beyond the highest resonant mode.
inline double adequate_sigma_max(const SystemParams& p, double lambda_max,
                                 double margin = 10.0) {
    double sup = std::pow(lambda_max, 2.0 / (2.0 - p.beta));
    for (double s : detail::resonant_sigmas(p, lambda_max, 1e-6, 1e30))
        sup = std::max(sup, s);
    return margin * sup;
}

inline bool spectrum_adequate(const SystemParams& p, double lambda_max,
                              const ModeSpectrum& spectrum) {
    return spectrum.sigmas.back() >= adequate_sigma_max(p, lambda_max);
}

/// Supremum over modes of the per-block resolvent norm. With
/// include_resonant set, the two sigma values whose undamped resonance
/// frequency equals lambda are evaluated as well (clamped to the spectrum's
/// range): the norm peaks there, and a coarse grid systematically
/// underestimates the supremum without them.
inline ResolventSample resolvent_norm(const SystemParams& p, double lambda,
                                      const ModeSpectrum& spectrum,
                                      bool include_resonant = false) {
    ResolventSample sample;
    sample.lambda = lambda;
    std::vector<double> norms;
    norms.reserve(spectrum.size());
    for (double s : spectrum.sigmas)
        norms.push_back(resolvent_block_norm(build_mode_block(p, s), lambda));
    std::size_t best = 0;
    for (std::size_t i = 1; i < norms.size(); ++i)
        if (norms[i] > norms[best]) best = i;
    sample.norm = norms[best];
    sample.argmax_mode = best;

    if (include_resonant) {
        for (double s : detail::resonant_sigmas(p, lambda,
                                                spectrum.sigmas.front(),
                                                spectrum.sigmas.back())) {
            const double n = resolvent_block_norm(build_mode_block(p, s), lambda);
            if (n > sample.norm) {
                sample.norm = n;
                // report the nearest grid mode as the attaining index
                std::size_t nearest = 0;
                for (std::size_t i = 1; i < spectrum.size(); ++i)
                    if (std::abs(std::log(spectrum.sigmas[i] / s)) <
                        std::abs(std::log(spectrum.sigmas[nearest] / s)))
                        nearest = i;
                sample.argmax_mode = nearest;
            }
        }
    }

    // Flag truncation starvation: the sup landing on the final mode, or
    // clear growth (beyond the flat off-resonance plateau) over the last
    // tenth of the grid.
    bool tail_grows = false;
    if (norms.size() >= 3) {
        const std::size_t tail_start =
            norms.size() - std::max<std::size_t>(norms.size() / 10, 2);
        for (std::size_t i = tail_start + 1; i < norms.size(); ++i)
            if (norms[i] > norms[i - 1] * (1.0 + 1e-3)) tail_grows = true;
    }
    sample.truncation_suspect = (best + 1 == norms.size()) || tail_grows;
    return sample;
}

struct TruncationRecord {
    std::size_t modes = 0;
    double sigma_max = 0.0;
    double required_sigma_max = 0.0;
    bool adequate = false;
    std::size_t suspect_samples = 0;
};

struct ResolventCurve {
    SystemParams params;
    std::vector<ResolventSample> samples;
    TruncationRecord mode_policy;
};

/// One sample per grid point; deterministic for fixed inputs.
inline ResolventCurve resolvent_curve(const SystemParams& p,
                                      const std::vector<double>& lambda_grid,
                                      const ModeSpectrum& spectrum,
                                      bool include_resonant = false) {
    if (lambda_grid.empty())
        throw std::invalid_argument("lambda grid must be nonempty");
    ResolventCurve curve{p, {}, {}};
    curve.samples.reserve(lambda_grid.size());
    double prev = -std::numeric_limits<double>::infinity();
    for (double lambda : lambda_grid) {
        if (!(lambda > prev))
            throw std::invalid_argument("lambda grid must be increasing");
        prev = lambda;
        curve.samples.push_back(
            resolvent_norm(p, lambda, spectrum, include_resonant));
    }
    curve.mode_policy.modes = spectrum.size();
    curve.mode_policy.sigma_max = spectrum.sigmas.back();
    curve.mode_policy.required_sigma_max =
        adequate_sigma_max(p, lambda_grid.back());
    curve.mode_policy.adequate =
        curve.mode_policy.sigma_max >= curve.mode_policy.required_sigma_max;
    for (const auto& s : curve.samples)
        if (s.truncation_suspect) ++curve.mode_policy.suspect_samples;
    return curve;
}

/// Log-uniform lambda grid (the default spacing for regularity scans).
inline std::vector<double> lambda_grid_log(double lambda_min, double lambda_max,
                                           std::size_t points) {
    if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min) || points == 0)
        throw std::invalid_argument("bad lambda grid parameters");
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(lambda_min);
        return grid;
    }
    const double l0 = std::log(lambda_min);
    const double l1 = std::log(lambda_max);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        grid.push_back(std::exp(l0 + t * (l1 - l0)));
    }
    grid.front() = lambda_min;
    grid.back() = lambda_max;
    return grid;
}

inline std::vector<double> lambda_grid_linear(double lambda_min,
                                              double lambda_max,
                                              std::size_t points) {
    if (!(lambda_max >= lambda_min) || points == 0)
        throw std::invalid_argument("bad lambda grid parameters");
    std::vector<double> grid;
    grid.reserve(points);
    if (points == 1) {
        grid.push_back(lambda_min);
        return grid;
    }
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        grid.push_back(lambda_min + t * (lambda_max - lambda_min));
    }
    return grid;
}

} // namespace platewave
