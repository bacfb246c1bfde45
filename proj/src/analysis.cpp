#include "vrsim/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "vrsim/errors.hpp"

namespace vrsim::analysis {

std::vector<Peak> local_maxima(std::span<const double> x, std::span<const double> y,
                               double min_prominence) {
    if (x.size() != y.size()) {
        throw ContractViolation("local_maxima: length mismatch");
    }
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;

        // Prominence: drop to the lowest point before the next higher sample on each side.
        double left_min = y[i];
        for (std::size_t j = i; j-- > 0 && y[j] <= y[i];) left_min = std::min(left_min, y[j]);
        double right_min = y[i];
        for (std::size_t j = i + 1; j < y.size() && y[j] <= y[i]; ++j)
            right_min = std::min(right_min, y[j]);
        if (y[i] - std::max(left_min, right_min) < min_prominence) continue;

        const double h0 = x[i] - x[i - 1];
        const double h1 = x[i + 1] - x[i];
        Peak p{x[i], y[i]};
        if (std::abs(h0 - h1) < 1e-12 * std::max(1.0, std::abs(h0))) {
            const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
            if (denom < 0.0) {
                const double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
                p.x = x[i] + shift * h0;
                p.value = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift;
            }
        }
        peaks.push_back(p);
    }
    return peaks;
}

double interpolate(std::span<const double> x, std::span<const double> y, double x0) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ContractViolation("interpolate: need at least two matching samples");
    }
    if (x0 <= x.front()) return y.front();
    if (x0 >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), x0);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    const double w = (x0 - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * y[i - 1] + w * y[i];
}

double max_value(std::span<const double> y) {
    if (y.empty()) throw ContractViolation("max_value: empty series");
    return *std::max_element(y.begin(), y.end());
}

double max_abs_difference(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ContractViolation("max_abs_difference: length mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace vrsim::analysis
