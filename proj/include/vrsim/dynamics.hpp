// dynamics.hpp: dressed-operator master equation for the hybrid system

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vrsim/integrator.hpp"
#include "vrsim/spectra.hpp"

namespace vrsim {

// Zero-temperature damping rates in units of omega_c.
struct LindbladConfig {
    double gamma_a{0.0};  // cavity
    double gamma_m{0.0};  // mechanics
    double gamma_q{0.0};  // atom

    void validate() const;
};

// Positive-frequency (lowering) parts O+ of o + o† in the energy eigenbasis,
// and their adjoints O-. Only the lowest `size()` eigenstates are kept.
struct DressedOperatorSet {
    Operator A_plus, A_minus;  // cavity, o = a
    Operator B_plus, B_minus;  // mechanics, o = b
    Operator C_plus, C_minus;  // atom, o = sigma_- (o + o† = sigma_x)

    Eigen::VectorXd energies;  // kept eigenvalues
    Operator basis;            // kept eigenvectors as columns (bare basis rows)
    // Pairs (j, k), j < k, closer than degenerate_gap whose matrix element
    // was assigned to O+ by index order.
    std::vector<std::pair<int, int>> degenerate_pairs;

    int size() const { return static_cast<int>(energies.size()); }

    // Diagonal Hamiltonian in the kept eigenbasis.
    Operator hamiltonian() const;
    // basis · op · basis†
    Operator to_bare(const Operator& op) const;
};

namespace dynamics {

inline constexpr double degenerate_gap = 1e-10;

// Keeps eigenstates with omega_l - omega_0 <= energy_cutoff (all when unset).
DressedOperatorSet build_dressed(const EigenSystem& eigen, const HilbertSpace& space,
                                 std::optional<double> energy_cutoff = std::nullopt);

// Full right-hand side
//   -i[H + H_d(t), rho] + sum_O gamma_O D[O+] rho,
//   D[L] rho = L rho L† - (L†L rho + rho L†L) / 2,
//   H_d(t) = F(t) (e^{i omega_d t} B+ + h.c.).
// `H` and `rho` are expressed in the basis of `dressed`; rho must be Hermitian.
Operator lindblad_rhs(const Operator& rho, double t, const Operator& H,
                      const DressedOperatorSet& dressed, const LindbladConfig& config,
                      const std::optional<DriveParams>& drive = std::nullopt);

// Precomputed generator. When H is diagonal, `interaction_rhs` gives the
// derivative of rho_I = e^{iHt} rho e^{-iHt}, which removes the fast free
// phases from what the integrator has to resolve.
class MasterEquation {
public:
    MasterEquation(Operator H, const DressedOperatorSet& dressed, const LindbladConfig& config,
                   std::optional<DriveParams> drive);

    Operator rhs(double t, const Operator& rho) const;
    Operator interaction_rhs(double t, const Operator& rho_i) const;

    bool diagonal_hamiltonian() const { return diagonal_; }
    // rho = e^{-iHt} rho_I e^{iHt} for diagonal H (and its inverse with -t).
    Operator to_lab(double t, const Operator& rho_i) const;
    Operator to_interaction(double t, const Operator& rho) const;

private:
    Operator non_hamiltonian_part(double t, const Operator& rho) const;

    Operator H_;
    Eigen::VectorXd levels_;  // diag(H) - min, used for the interaction frame
    bool diagonal_{false};
    std::vector<std::pair<double, Operator>> jumps_;  // (gamma, L = O+)
    Operator decay_;                                  // sum gamma L†L
    Operator B_plus_;
    std::optional<DriveParams> drive_;
};

struct Observables {
    double exp_atom{0.0};    // <C- C+>
    double exp_photon{0.0};  // <A- A+>
    double exp_phonon{0.0};  // <B- B+>
    double g2_qp{0.0};       // <C- A- A+ C+>
};

inline constexpr double imaginary_discard = 1e-9;
inline constexpr double imaginary_fatal = 1e-6;

// Throws NumericalHealthError when an expectation value carries an
// imaginary part above imaginary_fatal.
Observables observables(const Operator& rho, const DressedOperatorSet& dressed);

struct TimeGrid {
    double t_start{0.0};
    double t_stop{1.0};
    int samples{2};

    std::vector<double> times() const;
};

struct EvolveOptions {
    double rtol{1e-8};
    double atol{1e-10};
    double omega_eff{0.0};  // only used for the omega_eff_t column
    bool check_positivity{true};
};

struct TimeSeries {
    std::vector<double> times;
    std::vector<double> omega_eff_t;
    std::vector<double> exp_atom;
    std::vector<double> exp_photon;
    std::vector<double> exp_phonon;
    std::vector<double> g2_qp;
    std::vector<double> trace;
    std::vector<double> purity;
    // Health monitors at each sample (not serialized).
    std::vector<double> min_eigenvalue;
    std::vector<double> hermiticity;
    double omega_eff{0.0};
    IntegratorStats stats;

    std::size_t size() const { return times.size(); }
};

// Integrates the master equation from `initial` (in the dressed basis) and
// samples observables on `grid`. rho is Hermitized after every sample.
TimeSeries evolve(const Operator& initial, const TimeGrid& grid, const Operator& H,
                  const DressedOperatorSet& dressed, const LindbladConfig& config,
                  const std::optional<DriveParams>& drive = std::nullopt,
                  const EvolveOptions& options = {});

// |label><label| projected onto the kept eigenstates and renormalized.
// `discarded` receives the weight outside the kept subspace.
Operator project_bare_state(const BareLabel& label, const DressedOperatorSet& dressed,
                            const HilbertSpace& space, double* discarded = nullptr);

Operator ground_state(const DressedOperatorSet& dressed);

// Diagonalization plus dressed operators for one parameter set.
struct DressedSystem {
    EigenSystem eigen;
    DressedOperatorSet dressed;
    Operator H;  // diagonal, in the kept eigenbasis
};

DressedSystem prepare(const ModelParams& params, const HilbertSpace& space,
                      std::optional<double> energy_cutoff);

// Starts from the dressed ground state and applies the Gaussian drive.
TimeSeries run_driven_protocol(const ModelParams& params, const HilbertSpace& space,
                               const LindbladConfig& config, const DriveParams& drive,
                               const TimeGrid& grid, std::optional<double> energy_cutoff,
                               EvolveOptions options = {});

} // namespace dynamics
} // namespace vrsim
