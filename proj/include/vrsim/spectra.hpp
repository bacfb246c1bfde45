// spectra.hpp: diagonalization, level sweeps, anticrossings and
// second-order effective couplings

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vrsim/model.hpp"

namespace vrsim {

// Best bare-state match of one eigenvector.
struct StateLabel {
    BareLabel label;
    double weight{0.0};        // squared overlap with the matched basis state
    bool tie{false};           // runner-up within tie_margin of the winner
    bool bare_fallback{false}; // label came from the undisplaced product basis
};

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    Operator vectors;        // eigenvectors as columns
    std::vector<StateLabel> labels;

    int size() const { return static_cast<int>(values.size()); }
};

namespace spectra {

inline constexpr double tie_margin = 0.1;

// Hermitian eigendecomposition; throws ContractViolation on non-Hermitian input.
EigenSystem diagonalize(const Operator& H);

// As above, with every state labelled by its largest overlap with the
// displaced H0 eigenbasis (falling back to bare product states on ties).
EigenSystem diagonalize(const Operator& H, const ModelParams& params,
                        const HilbertSpace& space);

// H(omega_q) = rest + (omega_q / 2) sigma_z, with the omega_q-independent
// part assembled once.
class HamiltonianFamily {
public:
    HamiltonianFamily(ModelParams params, const HilbertSpace& space);

    Operator at(double omega_q) const;
    const ModelParams& params() const { return params_; }
    const HilbertSpace& space() const { return space_; }

private:
    ModelParams params_;
    HilbertSpace space_;
    Operator rest_;
    Operator half_sz_;
};

struct Grid {
    double start{0.0};
    double stop{1.0};
    int points{2};

    std::vector<double> values() const;
};

struct LevelTable {
    std::vector<double> omega_q;
    // levels[i][b]: energy of branch b at omega_q[i], relative to the ground state.
    std::vector<std::vector<double>> levels;
    std::vector<std::string> warnings;

    int n_levels() const { return levels.empty() ? 0 : static_cast<int>(levels.front().size()); }
};

// Lowest `n_levels` eigenvalues along a monotone omega_q grid, columns kept
// on continuous branches by eigenvector overlap between neighbouring points.
LevelTable sweep_levels(const ModelParams& params, const HilbertSpace& space,
                        std::span<const double> omega_q_grid, int n_levels);

struct SplittingTargets {
    BareLabel first;   // |0,1,g>
    BareLabel second;  // |0,0,e> (two-photon) or |1,0,e> (one-photon)
};

SplittingTargets default_targets(CouplingKind kind);

struct SplittingResult {
    double omega_q_min{0.0};
    double gap{0.0};                      // 2 Omega_eff
    std::pair<int, int> branch_states;    // eigen-indices, lower first
    // hybrid_overlaps[branch][target] = squared overlap
    std::array<std::array<double, 2>, 2> hybrid_overlaps{};
    SplittingTargets targets;
    int evaluations{0};

    double omega_eff() const { return 0.5 * gap; }
};

struct Bracket {
    double lo{0.0};
    double hi{0.0};
};

inline constexpr double splitting_tolerance = 1e-6;

// Bracket centred on the bare resonance (omega_m for two-photon,
// omega_m - omega_c for one-photon).
Bracket default_bracket(const ModelParams& params, double half_width = 0.05);

// Gap between the two eigenstates carrying the largest combined weight on
// the target pair, at a single omega_q.
SplittingResult splitting_at(const HamiltonianFamily& family, double omega_q,
                             const SplittingTargets& targets);

// Golden-section minimization of the tracked gap over omega_q.
SplittingResult find_min_splitting(const ModelParams& params, const HilbertSpace& space,
                                   Bracket bracket,
                                   std::optional<SplittingTargets> targets = std::nullopt);

// Closed-form two-path effective coupling V_eff = -Omega_eff (two-photon only).
double perturbative_coupling(const ModelParams& params);

struct SecondOrderResult {
    double value{0.0};
    std::vector<BareLabel> excluded;   // degenerate intermediates left out
    int terms{0};
};

// Sum_{l != I,F} V_Fl V_lI / (E_I - E_l) over the displaced H0 eigenbasis.
// When `intermediates` is given, only those states contribute.
SecondOrderResult generic_second_order(const ModelParams& params, const HilbertSpace& space,
                                       const BareLabel& initial, const BareLabel& final_state,
                                       std::optional<std::vector<BareLabel>> intermediates =
                                           std::nullopt);

} // namespace spectra
} // namespace vrsim
