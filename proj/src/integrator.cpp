#include "vrsim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vrsim/errors.hpp"

namespace vrsim {

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double safety = 0.9;
constexpr double min_factor = 0.2;
constexpr double max_factor = 5.0;

} // namespace

Dopri5::Dopri5(Rhs rhs, IntegratorOptions options) : rhs_(std::move(rhs)), options_(options) {
    if (!(options_.rtol > 0.0) || !(options_.atol > 0.0)) {
        throw ContractViolation("Dopri5: tolerances must be positive");
    }
}

double Dopri5::error_norm(const State& err, const State& y0, const State& y1) const {
    const Eigen::ArrayXXd scale =
        options_.atol + options_.rtol * y0.cwiseAbs().array().max(y1.cwiseAbs().array());
    const double mean_sq = (err.cwiseAbs().array() / scale).square().mean();
    return std::sqrt(mean_sq);
}

double Dopri5::initial_step(double t, const State& y, const State& f0, double direction) const {
    const Eigen::ArrayXXd scale = options_.atol + options_.rtol * y.cwiseAbs().array();
    const double d0 = std::sqrt((y.cwiseAbs().array() / scale).square().mean());
    const double d1 = std::sqrt((f0.cwiseAbs().array() / scale).square().mean());
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, options_.h_max);
    const State y1 = y + direction * h0 * f0;
    const State f1 = rhs_(t + direction * h0, y1);
    const double d2 = std::sqrt(((f1 - f0).cwiseAbs().array() / scale).square().mean()) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6, 1e-3 * h0) : std::pow(0.01 / dm, 1.0 / 5.0);
    return std::min({100.0 * h0, h1, options_.h_max});
}

void Dopri5::integrate_to(double& t, State& y, double t_end) {
    if (t_end == t) return;
    const double direction = t_end > t ? 1.0 : -1.0;

    State k1 = rhs_(t, y);
    ++stats_.rhs_evaluations;
    if (h_ <= 0.0) {
        h_ = initial_step(t, y, k1, direction);
        ++stats_.rhs_evaluations;
    }

    State k2, k3, k4, k5, k6, k7, y_stage, y_new;
    while (direction * (t_end - t) > 0.0) {
        if (stats_.accepted + stats_.rejected >= options_.max_steps) {
            std::ostringstream msg;
            msg << "step budget of " << options_.max_steps << " exhausted at t=" << t
                << " (h=" << h_ << ")";
            throw StiffnessError(msg.str());
        }
        const double floor =
            std::max(options_.h_min, 16.0 * std::numeric_limits<double>::epsilon() *
                                         std::max(1.0, std::abs(t)));
        double h = std::min(h_, options_.h_max);
        bool last = false;
        if (h >= direction * (t_end - t)) {
            h = direction * (t_end - t);
            last = true;
        }
        if (h < floor && !last) {
            std::ostringstream msg;
            msg << "step size underflow at t=" << t << ": h=" << h << " below floor " << floor
                << "; the problem is stiff or singular here";
            throw StiffnessError(msg.str());
        }
        const double hs = direction * h;

        y_stage = y + hs * a21 * k1;
        k2 = rhs_(t + c2 * hs, y_stage);
        y_stage = y + hs * (a31 * k1 + a32 * k2);
        k3 = rhs_(t + c3 * hs, y_stage);
        y_stage = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
        k4 = rhs_(t + c4 * hs, y_stage);
        y_stage = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        k5 = rhs_(t + c5 * hs, y_stage);
        y_stage = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        k6 = rhs_(t + hs, y_stage);
        y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = rhs_(t + hs, y_new);
        stats_.rhs_evaluations += 6;

        const State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = error_norm(err, y, y_new);
        if (!std::isfinite(en)) {
            ++stats_.rejected;
            h_ = h * min_factor;
            if (h_ < floor) {
                std::ostringstream msg;
                msg << "non-finite error estimate at t=" << t << " with h=" << h;
                throw StiffnessError(msg.str());
            }
            continue;
        }
        if (en <= 1.0) {
            t = last ? t_end : t + hs;
            y.swap(y_new);
            k1.swap(k7);
            ++stats_.accepted;
            stats_.last_step = h;
            const double factor =
                en == 0.0 ? max_factor
                          : std::clamp(safety * std::pow(en, -0.2), min_factor, max_factor);
            // Keep the unclipped step when the last step was shortened to land on t_end.
            h_ = last ? std::max(h_, h * factor) : h * factor;
        } else {
            ++stats_.rejected;
            h_ = h * std::max(min_factor, safety * std::pow(en, -0.2));
            if (h_ < floor) {
                std::ostringstream msg;
                msg << "step size underflow at t=" << t << ": h=" << h_ << " below floor "
                    << floor << " (error norm " << en << ")";
                throw StiffnessError(msg.str());
            }
        }
    }
}

} // namespace vrsim
