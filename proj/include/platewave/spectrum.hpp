#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace platewave {

/// Strictly increasing positive eigenvalues sigma_n of the elliptic operator,
/// together with a provenance label. Eigenfunctions are implicit: each mode
/// is a coordinate direction of the modal decomposition.
struct ModeSpectrum {
    std::vector<double> sigmas;
    std::string label;

    std::size_t size() const { return sigmas.size(); }
};

namespace detail {

inline void check_strictly_increasing_positive(const std::vector<double>& v) {
    if (v.empty())
        throw std::invalid_argument("spectrum must be nonempty");
    double prev = 0.0;
    for (double s : v) {
        if (!(s > prev))
            throw std::invalid_argument(
                "spectrum values must be positive and strictly increasing");
        prev = s;
    }
}

} // namespace detail

/// Dirichlet Laplacian on an interval of the given length:
/// sigma_n = (n*pi/length)^2, n = 1..count.
inline ModeSpectrum spectrum_dirichlet_1d(double length, std::size_t count) {
    if (!(length > 0.0))
        throw std::invalid_argument("interval length must be positive");
    if (count == 0)
        throw std::invalid_argument("mode count must be at least 1");
    ModeSpectrum spec;
    spec.sigmas.reserve(count);
    for (std::size_t n = 1; n <= count; ++n) {
        const double k = static_cast<double>(n) * std::numbers::pi / length;
        spec.sigmas.push_back(k * k);
    }
    spec.label = "dirichlet_1d(L=" + std::to_string(length) + ")";
    return spec;
}

/// Wraps a user-supplied list of eigenvalues.
inline ModeSpectrum spectrum_from_list(std::vector<double> values) {
    detail::check_strictly_increasing_positive(values);
    ModeSpectrum spec;
    spec.sigmas = std::move(values);
    spec.label = "user_list";
    return spec;
}

/// Log-uniform eigenvalue grid on [sigma_min, sigma_max]. Used to probe
/// suprema over modes across many decades without an actual PDE domain.
inline ModeSpectrum spectrum_geometric(double sigma_min, double sigma_max,
                                       std::size_t count) {
    if (!(sigma_min > 0.0) || !(sigma_max > sigma_min))
        throw std::invalid_argument("need 0 < sigma_min < sigma_max");
    if (count < 2)
        throw std::invalid_argument("geometric spectrum needs >= 2 modes");
    ModeSpectrum spec;
    spec.sigmas.reserve(count);
    const double l0 = std::log(sigma_min);
    const double l1 = std::log(sigma_max);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        spec.sigmas.push_back(std::exp(l0 + t * (l1 - l0)));
    }
    spec.sigmas.front() = sigma_min;
    spec.sigmas.back() = sigma_max;
    detail::check_strictly_increasing_positive(spec.sigmas);
    spec.label = "geometric";
    return spec;
}

} // namespace platewave
