#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "platewave/params.hpp"

namespace platewave {

using Complex = std::complex<double>;

/// Coefficients of one mode in the four fields (u, v, w, z), w = u_t, z = v_t.
struct StateVec {
    Complex u{};
    Complex v{};
    Complex w{};
    Complex z{};

    Eigen::Vector4cd coeffs() const { return {u, v, w, z}; }

    static StateVec from(const Eigen::Vector4cd& c) {
        return {c(0), c(1), c(2), c(3)};
    }
};

/// The generator restricted to one eigenmode sigma, in coordinates (u,v,w,z),
/// plus the weights of the phase-space norm on that mode:
/// ||U||_W^2 = alpha*sigma^2 |u|^2 + alpha*sigma |v|^2
///           + (1+kappa*sigma^beta) |w|^2 + |z|^2.
struct ModeBlock {
    double sigma = 0.0;
    Eigen::Matrix4d matrix = Eigen::Matrix4d::Zero();
    Eigen::Vector4d weights = Eigen::Vector4d::Ones();
};

inline ModeBlock build_mode_block(const SystemParams& p, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("sigma must be positive");
    const double m = 1.0 + p.kappa * std::pow(sigma, p.beta);
    const double d = p.delta * std::pow(sigma, p.theta);

    ModeBlock b;
    b.sigma = sigma;
    b.matrix.setZero();
    b.matrix(0, 2) = 1.0;
    b.matrix(1, 3) = 1.0;
    b.matrix(2, 0) = -p.alpha * sigma * sigma / m;
    b.matrix(2, 3) = -p.gamma * sigma / m;
    b.matrix(3, 1) = -p.alpha * sigma;
    b.matrix(3, 2) = p.gamma * sigma;
    b.matrix(3, 3) = -d;
    b.weights << p.alpha * sigma * sigma, p.alpha * sigma, m, 1.0;
    return b;
}

/// Squared weighted phase-space norm of one mode's coefficients.
inline double energy(const StateVec& s, const ModeBlock& b) {
    return b.weights(0) * std::norm(s.u) + b.weights(1) * std::norm(s.v) +
           b.weights(2) * std::norm(s.w) + b.weights(3) * std::norm(s.z);
}

inline double weighted_norm(const StateVec& s, const ModeBlock& b) {
    return std::sqrt(energy(s, b));
}

/// Re<B U, U>_W + delta*sigma^theta*|z|^2. The skew part of the generator is
/// cancelled pairwise so the return is zero up to roundoff; the dissipation
/// term is the only survivor of the weighted product.
inline double dissipativity_defect(const StateVec& s, const ModeBlock& b,
                                   const SystemParams& p) {
    const double sigma = b.sigma;
    const double d = p.delta * std::pow(sigma, p.theta);
    const double c_uw = p.alpha * sigma * sigma;
    const double c_vz = p.alpha * sigma;
    const double c_wz = p.gamma * sigma;

    // weights(2) * (BU)_3 = -(alpha*sigma^2 u + gamma*sigma z), evaluated
    // without the intermediate division so each skew pair cancels exactly.
    const auto re = [](const Complex& a, const Complex& c) {
        return a.real() * c.real() + a.imag() * c.imag(); // Re(a * conj(c))
    };
    const double skew_uw = c_uw * (re(s.w, s.u) - re(s.u, s.w));
    const double skew_vz = c_vz * (re(s.z, s.v) - re(s.v, s.z));
    const double skew_wz = c_wz * (re(s.w, s.z) - re(s.z, s.w));
    const double dissipation = -d * std::norm(s.z);
    return skew_uw + skew_vz + skew_wz + dissipation + d * std::norm(s.z);
}

} // namespace platewave
