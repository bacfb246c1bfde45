// model.hpp: hybrid cavity / mechanical oscillator / atom Hamiltonians

#pragma once

#include "vrsim/fockspace.hpp"

namespace vrsim {

enum class CouplingKind { two_photon, one_photon };

// Frequencies and couplings in units of the cavity frequency.
struct ModelParams {
    double omega_c{1.0};   // cavity
    double omega_m{1.05};  // mechanical oscillator
    double omega_q{1.05};  // atomic transition
    double kappa{0.05};    // optomechanical coupling
    double lambda{0.05};   // atom-field coupling
    CouplingKind coupling_kind{CouplingKind::two_photon};

    double beta() const { return kappa / omega_m; }

    // Throws ContractViolation on non-positive frequencies or negative couplings.
    void validate() const;
};

// Gaussian pulse on the mechanical mode. Times in 1/omega_c.
struct DriveParams {
    double amplitude{0.0};  // pulse area Lambda
    double omega_d{1.05};
    double sigma{1.0};
    double t0{0.0};

    void validate() const;
};

namespace model {

// (omega_q/2) sigma_z + omega_c a†a + omega_m b†b + kappa a†a (b + b†)
Operator build_H0(const ModelParams& params, const HilbertSpace& space);

// Two-photon:  (kappa/2)(a² + a†²)(b + b†) + lambda (a² + a†²) sigma_x
// One-photon:  (kappa/2)(a² + a†²)(b + b†) + lambda (a + a†) sigma_x
Operator build_V(const ModelParams& params, const HilbertSpace& space);

Operator build_H(const ModelParams& params, const HilbertSpace& space);

// Closed-form optomechanical level n omega_c - n² beta² omega_m + k omega_m.
double analytic_optomech_energy(int n, int k, const ModelParams& params);

// Eigenvalue of H0 for |n, k_n, q>.
double analytic_H0_energy(const BareLabel& label, const ModelParams& params);

// |n> ⊗ D(n beta)|k> ⊗ |q>, with the displacement evaluated on a padded
// phonon space before truncation so the edge of the basis does not leak in.
StateVector displaced_eigvec(const BareLabel& label, const ModelParams& params,
                             const HilbertSpace& space);

// All displaced eigenvectors as columns, ordered by basis_index.
Operator displaced_basis(const ModelParams& params, const HilbertSpace& space);

// Lambda · exp(-(t - t0)² / 2σ²) / (σ √(2π))
double drive_envelope(double t, const DriveParams& drive);

} // namespace model
} // namespace vrsim
