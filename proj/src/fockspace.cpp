#include "vrsim/fockspace.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "vrsim/errors.hpp"

namespace vrsim {

HilbertSpace::HilbertSpace(int n_photon_max, int n_phonon_max)
    : n_photon_max_(n_photon_max), n_phonon_max_(n_phonon_max) {
    if (n_photon_max < min_photon_max || n_phonon_max < min_phonon_max) {
        throw InvalidDimension("HilbertSpace requires n_photon_max >= " +
                               std::to_string(min_photon_max) + " and n_phonon_max >= " +
                               std::to_string(min_phonon_max) + ", got (" +
                               std::to_string(n_photon_max) + ", " +
                               std::to_string(n_phonon_max) + ")");
    }
}

int HilbertSpace::slot_dim(Slot slot) const {
    switch (slot) {
    case Slot::cavity: return photon_dim();
    case Slot::mechanics: return phonon_dim();
    case Slot::atom: return atom_dim();
    }
    return 0;
}

bool HilbertSpace::contains(const BareLabel& label) const {
    return label.n >= 0 && label.n <= n_photon_max_ && label.k >= 0 &&
           label.k <= n_phonon_max_ && (label.q == AtomState::g || label.q == AtomState::e);
}

namespace fockspace {

namespace {

void require_ladder_dim(int dim) {
    if (dim < 2) {
        throw InvalidDimension("ladder operator needs dim >= 2, got " + std::to_string(dim));
    }
}

} // namespace

Operator annihilation(int dim) {
    require_ladder_dim(dim);
    Operator a = Operator::Zero(dim, dim);
    for (int m = 1; m < dim; ++m) {
        a(m - 1, m) = std::sqrt(static_cast<double>(m));
    }
    return a;
}

Operator creation(int dim) { return annihilation(dim).adjoint(); }

Operator number(int dim) {
    require_ladder_dim(dim);
    Operator n = Operator::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) {
        n(m, m) = static_cast<double>(m);
    }
    return n;
}

Operator sigma_z() {
    Operator s = Operator::Zero(2, 2);
    s(0, 0) = -1.0;
    s(1, 1) = 1.0;
    return s;
}

Operator sigma_x() {
    Operator s = Operator::Zero(2, 2);
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
}

Operator sigma_minus() {
    Operator s = Operator::Zero(2, 2);
    s(0, 1) = 1.0; // |g><e|
    return s;
}

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator embed(const Operator& op, Slot slot, const HilbertSpace& space) {
    const int d = space.slot_dim(slot);
    if (op.rows() != d || op.cols() != d) {
        throw InvalidDimension("embed: operator is " + std::to_string(op.rows()) + "x" +
                               std::to_string(op.cols()) + " but slot dimension is " +
                               std::to_string(d));
    }
    const Operator id_c = identity(space.photon_dim());
    const Operator id_m = identity(space.phonon_dim());
    const Operator id_q = identity(HilbertSpace::atom_dim());
    switch (slot) {
    case Slot::cavity:
        return Eigen::kroneckerProduct(Operator(Eigen::kroneckerProduct(op, id_m)), id_q);
    case Slot::mechanics:
        return Eigen::kroneckerProduct(Operator(Eigen::kroneckerProduct(id_c, op)), id_q);
    case Slot::atom:
        return Eigen::kroneckerProduct(Operator(Eigen::kroneckerProduct(id_c, id_m)), op);
    }
    return {};
}

Operator displacement(double alpha, int dim) {
    require_ladder_dim(dim);
    if (!std::isfinite(alpha)) {
        throw InvalidDimension("displacement amplitude must be finite");
    }
    // Generator alpha (b - b^dagger) is real antisymmetric.
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
    for (int m = 1; m < dim; ++m) {
        const double s = alpha * std::sqrt(static_cast<double>(m));
        gen(m - 1, m) = s;
        gen(m, m - 1) = -s;
    }
    const Eigen::MatrixXd d = gen.exp();
    return d.cast<Complex>();
}

int basis_index(const BareLabel& label, const HilbertSpace& space) {
    if (!space.contains(label)) {
        throw InvalidLabel("label (" + std::to_string(label.n) + ", " + std::to_string(label.k) +
                           ", " + (label.q == AtomState::g ? "g" : "e") +
                           ") is outside the truncated space");
    }
    return (label.n * space.phonon_dim() + label.k) * HilbertSpace::atom_dim() +
           static_cast<int>(label.q);
}

BareLabel label_of(int index, const HilbertSpace& space) {
    if (index < 0 || index >= space.dim_total()) {
        throw InvalidLabel("basis index " + std::to_string(index) + " out of range");
    }
    BareLabel label;
    label.q = static_cast<AtomState>(index % 2);
    index /= 2;
    label.k = index % space.phonon_dim();
    label.n = index / space.phonon_dim();
    return label;
}

StateVector basis_vector(const BareLabel& label, const HilbertSpace& space) {
    StateVector v = StateVector::Zero(space.dim_total());
    v(basis_index(label, space)) = 1.0;
    return v;
}

double hermiticity_deviation(const Operator& op) {
    if (op.rows() != op.cols()) {
        throw InvalidDimension("hermiticity check on a non-square matrix");
    }
    if (op.size() == 0) {
        return 0.0;
    }
    return (op - op.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace fockspace
} // namespace vrsim
