// analysis.hpp: post-processing of sampled time series

#pragma once

#include <span>
#include <vector>

namespace vrsim::analysis {

struct Peak {
    double x{0.0};
    double value{0.0};
};

// Interior local maxima with a parabolic refinement through the three
// surrounding samples. Plateaus shorter than `min_prominence` are ignored.
std::vector<Peak> local_maxima(std::span<const double> x, std::span<const double> y,
                               double min_prominence = 0.0);

// Linear interpolation of y at x0 (x ascending).
double interpolate(std::span<const double> x, std::span<const double> y, double x0);

double max_value(std::span<const double> y);
double max_abs_difference(std::span<const double> a, std::span<const double> b);

} // namespace vrsim::analysis
