#include "vrsim/model.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "vrsim/errors.hpp"

namespace vrsim {

void ModelParams::validate() const {
    if (!(omega_c > 0.0) || !(omega_m > 0.0) || !(omega_q > 0.0)) {
        throw ContractViolation("model frequencies must be positive");
    }
    if (!(kappa >= 0.0) || !(lambda >= 0.0)) {
        throw ContractViolation("model couplings must be non-negative");
    }
}

void DriveParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ContractViolation("drive pulse width sigma must be positive");
    }
    if (!std::isfinite(amplitude) || !std::isfinite(omega_d) || !std::isfinite(t0)) {
        throw ContractViolation("drive parameters must be finite");
    }
}

namespace model {

namespace {

constexpr int displacement_padding = 24;

struct Ladders {
    Operator a, ad, b, bd, n_a, sz, sx;
};

Ladders ladders(const HilbertSpace& space) {
    using namespace fockspace;
    const Operator a = annihilation(space.photon_dim());
    const Operator b = annihilation(space.phonon_dim());
    Ladders l;
    l.a = embed(a, Slot::cavity, space);
    l.ad = l.a.adjoint();
    l.b = embed(b, Slot::mechanics, space);
    l.bd = l.b.adjoint();
    l.n_a = embed(number(space.photon_dim()), Slot::cavity, space);
    l.sz = embed(sigma_z(), Slot::atom, space);
    l.sx = embed(sigma_x(), Slot::atom, space);
    return l;
}

// D(alpha)|k> truncated to `dim` levels and renormalized.
Eigen::VectorXcd displaced_fock(double alpha, int k, int dim) {
    const Operator d = fockspace::displacement(alpha, dim + displacement_padding);
    Eigen::VectorXcd v = d.col(k).head(dim);
    return v / v.norm();
}

} // namespace

Operator build_H0(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    const Ladders l = ladders(space);
    const Operator x_m = l.b + l.bd;
    return 0.5 * params.omega_q * l.sz + params.omega_c * l.n_a + params.omega_m * (l.bd * l.b) +
           params.kappa * (l.n_a * x_m);
}

Operator build_V(const ModelParams& params, const HilbertSpace& space) {
    params.validate();
    const Ladders l = ladders(space);
    const Operator pair = l.a * l.a + l.ad * l.ad;
    Operator v = 0.5 * params.kappa * (pair * (l.b + l.bd));
    if (params.coupling_kind == CouplingKind::two_photon) {
        v += params.lambda * (pair * l.sx);
    } else {
        v += params.lambda * ((l.a + l.ad) * l.sx);
    }
    return v;
}

Operator build_H(const ModelParams& params, const HilbertSpace& space) {
    return build_H0(params, space) + build_V(params, space);
}

double analytic_optomech_energy(int n, int k, const ModelParams& params) {
    const double beta = params.beta();
    return n * params.omega_c - static_cast<double>(n) * n * beta * beta * params.omega_m +
           k * params.omega_m;
}

double analytic_H0_energy(const BareLabel& label, const ModelParams& params) {
    const double atom = label.q == AtomState::e ? 0.5 * params.omega_q : -0.5 * params.omega_q;
    return analytic_optomech_energy(label.n, label.k, params) + atom;
}

StateVector displaced_eigvec(const BareLabel& label, const ModelParams& params,
                             const HilbertSpace& space) {
    if (!space.contains(label)) {
        throw InvalidLabel("displaced_eigvec: label outside the truncated space");
    }
    // exp[n beta (b - b†)] = D(-n beta) in the usual alpha b† - alpha* b convention.
    const Eigen::VectorXcd phonon =
        displaced_fock(label.n * params.beta(), label.k, space.phonon_dim());
    StateVector v = StateVector::Zero(space.dim_total());
    for (int k = 0; k < space.phonon_dim(); ++k) {
        v(fockspace::basis_index({label.n, k, label.q}, space)) = phonon(k);
    }
    return v;
}

Operator displaced_basis(const ModelParams& params, const HilbertSpace& space) {
    const int dim = space.dim_total();
    Operator basis = Operator::Zero(dim, dim);
    const int nk = space.phonon_dim();
    for (int n = 0; n < space.photon_dim(); ++n) {
        const Operator d =
            fockspace::displacement(n * params.beta(), nk + displacement_padding);
        for (int k = 0; k < nk; ++k) {
            Eigen::VectorXcd ph = d.col(k).head(nk);
            ph /= ph.norm();
            for (const AtomState q : {AtomState::g, AtomState::e}) {
                const int col = fockspace::basis_index({n, k, q}, space);
                for (int kk = 0; kk < nk; ++kk) {
                    basis(fockspace::basis_index({n, kk, q}, space), col) = ph(kk);
                }
            }
        }
    }
    return basis;
}

double drive_envelope(double t, const DriveParams& drive) {
    const double x = (t - drive.t0) / drive.sigma;
    return drive.amplitude * std::exp(-0.5 * x * x) /
           (drive.sigma * std::sqrt(2.0 * std::numbers::pi));
}

} // namespace model
} // namespace vrsim
