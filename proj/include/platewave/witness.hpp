#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "platewave/fit.hpp"
#include "platewave/mode_block.hpp"
#include "platewave/params.hpp"
#include "platewave/resolvent.hpp"
#include "platewave/spectrum.hpp"

namespace platewave {

enum class WitnessCase { Case1, Case2, Case3, Case4 };

inline const char* witness_case_name(WitnessCase c) {
    switch (c) {
        case WitnessCase::Case1: return "case1";
        case WitnessCase::Case2: return "case2";
        case WitnessCase::Case3: return "case3";
        case WitnessCase::Case4: return "case4";
    }
    return "unknown";
}

/// Parameter-region applicability of each witness construction.
inline bool case_applicable(WitnessCase c, double theta, double beta) {
    switch (c) {
        case WitnessCase::Case1:
            return theta + beta <= 1.5;
        case WitnessCase::Case2:
            return beta == 1.0 && theta < 0.5;
        case WitnessCase::Case3:
            return beta == 1.0 && theta > 0.5 && theta <= 1.0;
        case WitnessCase::Case4:
            return 2.0 * theta + beta > 2.0 && beta < 1.0;
    }
    return false;
}

inline bool case_applicable(WitnessCase c, const SystemParams& p) {
    return case_applicable(c, p.theta, p.beta);
}

/// Coefficients and roots of the real quadratic
///   q(s) = m s^2 - [alpha (sigma + kappa sigma^{1+beta}) + (alpha+gamma^2)
///          sigma^2] s + alpha^2 sigma^3,   m = 1 + kappa sigma^beta,
/// whose roots are the squared resonance frequencies of the undamped block.
struct QCoeffs {
    double a = 0.0; // s^2
    double b = 0.0; // s^1
    double c = 0.0; // s^0
    double root_minus = 0.0;
    double root_plus = 0.0;
};

inline QCoeffs q_poly_coeffs(const SystemParams& p, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sigma must be positive");
    QCoeffs q;
    const double m = 1.0 + p.kappa * std::pow(sigma, p.beta);
    q.a = m;
    q.b = -(p.alpha * (sigma + p.kappa * std::pow(sigma, 1.0 + p.beta)) +
            (p.alpha + p.gamma * p.gamma) * sigma * sigma);
    q.c = p.alpha * p.alpha * sigma * sigma * sigma;
    // Both roots are real and positive: q(alpha*sigma) = -gamma^2 alpha
    // sigma^3 < 0 splits them around alpha*sigma. The small root is
    // recovered from the product c/a to avoid cancellation.
    const double disc = q.b * q.b - 4.0 * q.a * q.c;
    const double big = (-q.b + std::sqrt(std::max(disc, 0.0))) / (2.0 * q.a);
    q.root_plus = big;
    q.root_minus = q.c / (q.a * big);
    return q;
}

/// Frequency probed by each witness construction at mode sigma:
/// Case1 the smaller root of q, Case2 the larger, Case3/4 the root of p1.
inline double choose_lambda(WitnessCase c, const SystemParams& p,
                            double sigma) {
    if (!case_applicable(c, p))
        throw std::invalid_argument(
            std::string("witness ") + witness_case_name(c) +
            " is not applicable at these parameters");
    switch (c) {
        case WitnessCase::Case1:
            return std::sqrt(q_poly_coeffs(p, sigma).root_minus);
        case WitnessCase::Case2:
            return std::sqrt(q_poly_coeffs(p, sigma).root_plus);
        case WitnessCase::Case3:
        case WitnessCase::Case4: {
            const double m = 1.0 + p.kappa * std::pow(sigma, p.beta);
            return std::sqrt(p.alpha * sigma * sigma / m);
        }
    }
    throw std::invalid_argument("unknown witness case");
}

/// Two interchangeable scalings of the modal expansion coefficients:
///  - PaperDbeta: coefficients carry the extra factor sigma^{-beta/2} from
///    normalizing the driving mode in the beta-weighted graph norm, so
///    norm_F^2 = sigma^{-beta} + kappa;
///  - ResolventRatio: raw mode coordinates, norm_F^2 = 1 + kappa sigma^beta.
/// The reported product lambda * norm_U / norm_F is identical for both.
enum class WitnessNormalization { PaperDbeta, ResolventRatio };

struct WitnessPoint {
    double sigma = 0.0;
    double lambda = 0.0;
    Complex mu{0.0, 0.0};
    Complex nu{0.0, 0.0};
    double norm_U = 0.0;
    double norm_F = 0.0;
    double product = 0.0; // lambda * norm_U / norm_F
};

/// Predicted growth exponent of lambda * norm_U / norm_F in lambda along
/// the witness sequence. A positive exponent certifies unbounded
/// lambda-scaled resolvent norms, hence non-analyticity.
///
/// The Case1 number is reproduced as stated but is not asserted by any
/// test: it rests on the order |mu| ~ lambda^{3-4beta-2theta}, which an
/// order-counting cross-check (see case1_mu_exponent_candidates) disputes,
/// and measured Case1 slopes disagree with it.
inline double predicted_witness_exponent(WitnessCase c, double theta,
                                         double beta) {
    if (!case_applicable(c, theta, beta))
        throw std::invalid_argument(
            std::string("witness ") + witness_case_name(c) +
            " is not applicable at these parameters");
    switch (c) {
        case WitnessCase::Case1:
            return 5.0 - 4.0 * beta - 2.0 * theta;
        case WitnessCase::Case2:
            return 1.0 - 2.0 * theta;
        case WitnessCase::Case3:
            return 2.0 * theta - 1.0;
        case WitnessCase::Case4:
            return (beta + 2.0 * theta - 2.0) / (2.0 - beta);
    }
    throw std::invalid_argument("unknown witness case");
}

/// The two competing candidates for the Case1 order of |mu| in lambda:
/// first the stated 3-4beta-2theta, second the cross-check 1-2beta-2theta.
/// witness CSV consumers can compare the measured |mu| slope against both.
inline std::pair<double, double> case1_mu_exponent_candidates(double theta,
                                                              double beta) {
    return {3.0 - 4.0 * beta - 2.0 * theta, 1.0 - 2.0 * beta - 2.0 * theta};
}

/// Builds one witness datum from the closed-form (mu, nu) at the case
/// frequency and enforces the algebraic residual before reporting norms.
inline WitnessPoint witness_point(WitnessCase c, const SystemParams& p,
                                  double sigma,
                                  WitnessNormalization normalization) {
    WitnessPoint w;
    w.sigma = sigma;
    w.lambda = choose_lambda(c, p, sigma);
    const auto [mu, nu] = explicit_mu_nu(p, sigma, w.lambda);
    w.mu = mu;
    w.nu = nu;

    // The solution of the mode system for F = (0,0,-1,0) must hold to
    // 1e-9 relative; a sloppy (mu, nu) would contaminate the exponent.
    const ModeBlock block = build_mode_block(p, sigma);
    const StateVec u{mu, nu, Complex(0.0, w.lambda) * mu,
                     Complex(0.0, w.lambda) * nu};
    const StateVec force{0.0, 0.0, Complex(-1.0, 0.0), 0.0};
    const Eigen::Vector4cd residual =
        detail::shifted_matrix(block, w.lambda) * u.coeffs() - force.coeffs();
    const double res = weighted_norm(StateVec::from(residual), block);
    const double scale = weighted_norm(force, block) +
                         w.lambda * weighted_norm(u, block);
    if (!(res <= 1e-9 * scale))
        throw std::runtime_error("witness residual failed tolerance at sigma=" +
                                 std::to_string(sigma));

    const double m = 1.0 + p.kappa * std::pow(sigma, p.beta);
    const double l2 = w.lambda * w.lambda;
    const double base_U2 =
        p.alpha * sigma * sigma * std::norm(mu) + p.alpha * sigma * std::norm(nu) +
        m * l2 * std::norm(mu) + l2 * std::norm(nu);
    switch (normalization) {
        case WitnessNormalization::PaperDbeta: {
            const double scale2 = std::pow(sigma, -p.beta);
            w.norm_U = std::sqrt(base_U2 * scale2);
            w.norm_F = std::sqrt(scale2 + p.kappa);
            break;
        }
        case WitnessNormalization::ResolventRatio:
        default:
            w.norm_U = std::sqrt(base_U2);
            w.norm_F = std::sqrt(m);
            break;
    }
    w.product = w.lambda * w.norm_U / w.norm_F;
    return w;
}

struct WitnessSequence {
    WitnessCase witness_case = WitnessCase::Case1;
    WitnessNormalization normalization = WitnessNormalization::ResolventRatio;
    std::vector<WitnessPoint> points;
    double predicted_exponent = 0.0;
};

inline WitnessSequence witness_sequence(
    WitnessCase c, const SystemParams& p, const ModeSpectrum& spectrum,
    WitnessNormalization normalization = WitnessNormalization::ResolventRatio) {
    if (!case_applicable(c, p))
        throw std::invalid_argument(
            std::string("witness ") + witness_case_name(c) +
            " is not applicable at these parameters");
    if (c == WitnessCase::Case1 && p.delta == 0.0)
        throw std::invalid_argument(
            "witness case1 requires delta > 0 (its growth order rests on "
            "the damping term in the denominator)");
    WitnessSequence seq;
    seq.witness_case = c;
    seq.normalization = normalization;
    seq.points.reserve(spectrum.size());
    for (double s : spectrum.sigmas)
        seq.points.push_back(witness_point(c, p, s, normalization));
    seq.predicted_exponent = predicted_witness_exponent(c, p.theta, p.beta);
    return seq;
}

/// Log-log slope of the witness product against lambda over the top
/// `window_fraction` of the log-lambda range.
inline double witness_growth_fit(const std::vector<WitnessPoint>& points,
                                 double window_fraction = 0.5) {
    if (points.size() < 3)
        throw std::invalid_argument("witness fit needs at least 3 points");
    std::vector<double> ls, ps;
    ls.reserve(points.size());
    ps.reserve(points.size());
    for (const auto& w : points) {
        ls.push_back(w.lambda);
        ps.push_back(w.product);
    }
    return fit_loglog_slope(ls, ps, window_fraction);
}

} // namespace platewave
