#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "platewave/mode_block.hpp"

namespace platewave {

/// Eigenvalues of the 4x4 generator block, sorted by real part then
/// imaginary part. The dense solver cannot fail to converge on a finite
/// 4x4 matrix; if it ever does this is an internal error.
inline std::array<Complex, 4> block_spectrum(const ModeBlock& b) {
    // Conjugate by D = diag(sqrt(weights)) first: it preserves the
    // eigenvalues and balances the wildly different entry scales, which
    // otherwise destroy the tiny real parts at large sigma.
    const Eigen::Vector4d d = b.weights.cwiseSqrt();
    Eigen::Matrix4d balanced = b.matrix;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            balanced(i, j) *= d(i) / d(j);
    Eigen::EigenSolver<Eigen::Matrix4d> es(balanced);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge on 4x4 block");
    std::array<Complex, 4> ev;
    for (int i = 0; i < 4; ++i)
        ev[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](const Complex& a, const Complex& c) {
        if (a.real() != c.real()) return a.real() < c.real();
        return a.imag() < c.imag();
    });
    return ev;
}

namespace detail {

/// exp(A) by scaling-and-squaring with a truncated Taylor series. The series
/// is cut when the running term bound guarantees a remainder below 1e-12
/// relative to the partial sum.
inline Eigen::Matrix4d expm_series(const Eigen::Matrix4d& a) {
    const double norm_a = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    double scale = 1.0;
    while (norm_a * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Eigen::Matrix4d as = a * scale;

    Eigen::Matrix4d sum = Eigen::Matrix4d::Identity();
    Eigen::Matrix4d term = Eigen::Matrix4d::Identity();
    const double eta = norm_a * scale; // <= 0.5
    double term_bound = 1.0;
    for (int k = 1; k <= 64; ++k) {
        term = (term * as) / static_cast<double>(k);
        sum += term;
        term_bound *= eta / static_cast<double>(k);
        // Remainder of the exponential tail is below term_bound/(1-eta).
        if (term_bound / (1.0 - eta) < 1e-13)
            break;
    }
    for (int i = 0; i < squarings; ++i)
        sum = sum * sum;
    return sum;
}

} // namespace detail

/// exp(t B) state0. Eigen-decomposition when the eigenvector matrix is well
/// conditioned (below 1e8), otherwise scaling-and-squaring; the fallback is
/// always available so the operation never fails.
inline StateVec evolve_mode(const ModeBlock& b, const StateVec& state0,
                            double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("time must be nonnegative");
    if (t == 0.0)
        return state0;

    Eigen::EigenSolver<Eigen::Matrix4d> es(b.matrix);
    if (es.info() == Eigen::Success) {
        const Eigen::Matrix4cd vmat = es.eigenvectors();
        Eigen::JacobiSVD<Eigen::Matrix4cd> svd(vmat);
        const double smin = svd.singularValues()(3);
        const double smax = svd.singularValues()(0);
        if (smin > 0.0 && smax / smin < 1e8) {
            Eigen::Vector4cd y = vmat.partialPivLu().solve(state0.coeffs());
            for (int i = 0; i < 4; ++i)
                y(i) *= std::exp(t * es.eigenvalues()(i));
            return StateVec::from(vmat * y);
        }
    }
    const Eigen::Matrix4d e = detail::expm_series(t * b.matrix);
    return StateVec::from(e * state0.coeffs());
}

} // namespace platewave
