// integrator.hpp: adaptive Dormand–Prince 5(4) stepper over complex matrices

#pragma once

#include <functional>
#include <limits>

#include "vrsim/fockspace.hpp"

namespace vrsim {

struct IntegratorOptions {
    double rtol{1e-8};
    double atol{1e-10};
    double h_max{std::numeric_limits<double>::infinity()};
    double h_min{0.0};        // absolute floor; a relative floor of ~1e-14·|t| always applies
    long max_steps{50'000'000};
};

struct IntegratorStats {
    long accepted{0};
    long rejected{0};
    long rhs_evaluations{0};
    double last_step{0.0};
};

class Dopri5 {
public:
    using State = Operator;
    using Rhs = std::function<State(double, const State&)>;

    Dopri5(Rhs rhs, IntegratorOptions options);

    // Advances (t, y) to exactly t_end. Throws StiffnessError when the step
    // size collapses below the floor or the step budget is exhausted.
    void integrate_to(double& t, State& y, double t_end);

    const IntegratorStats& stats() const { return stats_; }
    const IntegratorOptions& options() const { return options_; }

private:
    double error_norm(const State& err, const State& y0, const State& y1) const;
    double initial_step(double t, const State& y, const State& f0, double direction) const;

    Rhs rhs_;
    IntegratorOptions options_;
    IntegratorStats stats_;
    double h_{0.0};
};

} // namespace vrsim
