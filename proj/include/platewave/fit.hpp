#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace platewave {

/// Least-squares slope of log(y) against log(x), restricted to the points
/// whose log(x) lies in the top `window_fraction` of the log(x) range.
/// Power laws y = C x^p are recovered exactly (up to roundoff).
inline double fit_loglog_slope(const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               double window_fraction = 0.4) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit: size mismatch");
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw std::invalid_argument("fit: window fraction must be in (0,1]");
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit: data must be positive");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    double lo = lx.front(), hi = lx.front();
    for (double v : lx) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double cut = hi - window_fraction * (hi - lo);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        if (lx[i] < cut) continue;
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        ++n;
    }
    if (n < 3)
        throw std::invalid_argument("fit: fewer than 3 points in window");
    const double dn = static_cast<double>(n);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0)
        throw std::invalid_argument("fit: degenerate abscissae");
    return (dn * sxy - sx * sy) / denom;
}

} // namespace platewave
