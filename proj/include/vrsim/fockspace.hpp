// fockspace.hpp: truncated bosonic / two-level operators on the
// cavity ⊗ mechanics ⊗ atom product space

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace vrsim {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

enum class Slot { cavity, mechanics, atom };

enum class AtomState : int { g = 0, e = 1 };

// Bare product-state label |n, k, q>.
struct BareLabel {
    int n{0};          // photons
    int k{0};          // phonons
    AtomState q{AtomState::g};

    friend bool operator==(const BareLabel&, const BareLabel&) = default;
};

// Truncated composite space. Basis ordering is fixed: photon index slowest,
// then phonon, then atom (g = 0, e = 1).
class HilbertSpace {
public:
    static constexpr int min_photon_max = 4;
    static constexpr int min_phonon_max = 3;

    HilbertSpace(int n_photon_max, int n_phonon_max);

    int n_photon_max() const { return n_photon_max_; }
    int n_phonon_max() const { return n_phonon_max_; }

    int photon_dim() const { return n_photon_max_ + 1; }
    int phonon_dim() const { return n_phonon_max_ + 1; }
    static constexpr int atom_dim() { return 2; }
    int dim_total() const { return photon_dim() * phonon_dim() * atom_dim(); }

    int slot_dim(Slot slot) const;
    bool contains(const BareLabel& label) const;

private:
    int n_photon_max_;
    int n_phonon_max_;
};

namespace fockspace {

// Ladder operator with <m-1|a|m> = sqrt(m).
Operator annihilation(int dim);
Operator creation(int dim);
Operator number(int dim);

// Two-level operators in the (g, e) basis; sigma_z|e> = +|e>.
Operator sigma_z();
Operator sigma_x();
Operator sigma_minus();

Operator identity(int dim);

// Places `op` into one tensor factor with identities on the others.
Operator embed(const Operator& op, Slot slot, const HilbertSpace& space);

// exp[alpha (b - b^dagger)] on a `dim`-level truncated oscillator.
Operator displacement(double alpha, int dim);

int basis_index(const BareLabel& label, const HilbertSpace& space);
BareLabel label_of(int index, const HilbertSpace& space);

StateVector basis_vector(const BareLabel& label, const HilbertSpace& space);

// Largest |A_ij - conj(A_ji)|.
double hermiticity_deviation(const Operator& op);

} // namespace fockspace
} // namespace vrsim
