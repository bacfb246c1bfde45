#include "vrsim/dynamics.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vrsim/errors.hpp"

namespace vrsim {

void LindbladConfig::validate() const {
    if (!(gamma_a >= 0.0) || !(gamma_m >= 0.0) || !(gamma_q >= 0.0)) {
        throw ContractViolation("damping rates must be non-negative");
    }
}

Operator DressedOperatorSet::hamiltonian() const {
    return energies.cast<Complex>().asDiagonal();
}

Operator DressedOperatorSet::to_bare(const Operator& op) const {
    return basis * op * basis.adjoint();
}

namespace dynamics {

namespace {

constexpr Complex I{0.0, 1.0};

Operator positive_frequency_part(const Operator& x) {
    return x.triangularView<Eigen::StrictlyUpper>();
}

bool is_diagonal(const Operator& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (r != c && m(r, c) != Complex{0.0, 0.0}) return false;
        }
    }
    return true;
}

// Expectation values with the operator products formed once.
class ObservableSet {
public:
    explicit ObservableSet(const DressedOperatorSet& d)
        : n_atom_(d.C_minus * d.C_plus),
          n_photon_(d.A_minus * d.A_plus),
          n_phonon_(d.B_minus * d.B_plus),
          g2_(d.C_minus * n_photon_ * d.C_plus) {}

    Observables evaluate(const Operator& rho) const {
        Observables o;
        o.exp_atom = expectation(rho, n_atom_, "<C-C+>");
        o.exp_photon = expectation(rho, n_photon_, "<A-A+>");
        o.exp_phonon = expectation(rho, n_phonon_, "<B-B+>");
        o.g2_qp = expectation(rho, g2_, "<C-A-A+C+>");
        return o;
    }

private:
    static double expectation(const Operator& rho, const Operator& op, const char* name) {
        // Tr(rho op) = sum_jk rho_jk op_kj
        const Complex v = rho.cwiseProduct(op.transpose()).sum();
        if (std::abs(v.imag()) > imaginary_fatal) {
            std::ostringstream msg;
            msg << name << " has imaginary part " << v.imag();
            throw NumericalHealthError(msg.str());
        }
        return v.real();
    }

    Operator n_atom_, n_photon_, n_phonon_, g2_;
};

} // namespace

DressedOperatorSet build_dressed(const EigenSystem& eigen, const HilbertSpace& space,
                                 std::optional<double> energy_cutoff) {
    const int dim = space.dim_total();
    if (eigen.size() != dim || eigen.vectors.rows() != dim) {
        throw InvalidDimension("build_dressed: eigensystem does not match the Hilbert space");
    }
    int kept = dim;
    if (energy_cutoff) {
        kept = 0;
        while (kept < dim && eigen.values(kept) - eigen.values(0) <= *energy_cutoff) ++kept;
        if (kept < 2) {
            throw ContractViolation("build_dressed: energy cutoff keeps fewer than two states");
        }
    }

    using namespace fockspace;
    const Operator& v = eigen.vectors;
    auto dressed_pair = [&](const Operator& o) {
        const Operator x = v.adjoint() * (o + o.adjoint()) * v;
        const Operator plus = positive_frequency_part(x).topLeftCorner(kept, kept);
        return std::pair<Operator, Operator>{plus, plus.adjoint()};
    };

    DressedOperatorSet d;
    std::tie(d.A_plus, d.A_minus) =
        dressed_pair(embed(annihilation(space.photon_dim()), Slot::cavity, space));
    std::tie(d.B_plus, d.B_minus) =
        dressed_pair(embed(annihilation(space.phonon_dim()), Slot::mechanics, space));
    std::tie(d.C_plus, d.C_minus) = dressed_pair(embed(sigma_minus(), Slot::atom, space));
    d.energies = eigen.values.head(kept);
    d.basis = v.leftCols(kept);

    for (int j = 0; j < kept; ++j) {
        for (int k = j + 1; k < kept && d.energies(k) - d.energies(j) < degenerate_gap; ++k) {
            d.degenerate_pairs.emplace_back(j, k);
        }
    }
    return d;
}

MasterEquation::MasterEquation(Operator H, const DressedOperatorSet& dressed,
                               const LindbladConfig& config, std::optional<DriveParams> drive)
    : H_(std::move(H)), B_plus_(dressed.B_plus), drive_(std::move(drive)) {
    config.validate();
    const int m = dressed.size();
    if (H_.rows() != m || H_.cols() != m) {
        throw InvalidDimension("MasterEquation: Hamiltonian and dressed operators differ in size");
    }
    if (drive_) drive_->validate();
    diagonal_ = is_diagonal(H_);
    levels_ = H_.diagonal().real();
    levels_.array() -= levels_.minCoeff();

    decay_ = Operator::Zero(m, m);
    const std::pair<double, const Operator*> channels[] = {
        {config.gamma_a, &dressed.A_plus},
        {config.gamma_m, &dressed.B_plus},
        {config.gamma_q, &dressed.C_plus},
    };
    for (const auto& [gamma, op] : channels) {
        if (gamma > 0.0) {
            jumps_.emplace_back(gamma, *op);
            decay_ += gamma * (op->adjoint() * *op);
        }
    }
}

Operator MasterEquation::non_hamiltonian_part(double t, const Operator& rho) const {
    const Eigen::Index m = rho.rows();
    Operator out = Operator::Zero(m, m);
    Operator tmp(m, m);
    for (const auto& [gamma, l] : jumps_) {
        tmp.noalias() = l * rho;
        out.noalias() += gamma * (tmp * l.adjoint());
    }
    if (!jumps_.empty()) {
        tmp.noalias() = decay_ * rho;
        out -= 0.5 * (tmp + tmp.adjoint());
    }
    if (drive_) {
        const double f = model::drive_envelope(t, *drive_);
        if (f != 0.0) {
            const Complex phase = std::exp(I * (drive_->omega_d * t));
            const Operator hd = f * (phase * B_plus_ + std::conj(phase) * B_plus_.adjoint());
            tmp.noalias() = hd * rho;
            out -= I * (tmp - tmp.adjoint());
        }
    }
    return out;
}

Operator MasterEquation::rhs(double t, const Operator& rho) const {
    Operator out = non_hamiltonian_part(t, rho);
    if (diagonal_) {
        const Eigen::VectorXd h = H_.diagonal().real();
        for (Eigen::Index c = 0; c < rho.cols(); ++c) {
            for (Eigen::Index r = 0; r < rho.rows(); ++r) {
                out(r, c) -= I * (h(r) - h(c)) * rho(r, c);
            }
        }
    } else {
        const Operator hr = H_ * rho;
        out -= I * (hr - rho * H_);
    }
    return out;
}

Operator MasterEquation::to_lab(double t, const Operator& rho_i) const {
    const Eigen::VectorXcd p = (-I * t * levels_.cast<Complex>()).array().exp();
    return p.asDiagonal() * rho_i * p.conjugate().asDiagonal();
}

Operator MasterEquation::to_interaction(double t, const Operator& rho) const {
    return to_lab(-t, rho);
}

Operator MasterEquation::interaction_rhs(double t, const Operator& rho_i) const {
    if (!diagonal_) {
        throw ContractViolation("interaction_rhs requires a diagonal Hamiltonian");
    }
    if (jumps_.empty() && !drive_) {
        return Operator::Zero(rho_i.rows(), rho_i.cols());
    }
    return to_interaction(t, non_hamiltonian_part(t, to_lab(t, rho_i)));
}

Operator lindblad_rhs(const Operator& rho, double t, const Operator& H,
                      const DressedOperatorSet& dressed, const LindbladConfig& config,
                      const std::optional<DriveParams>& drive) {
    if (rho.rows() != dressed.size() || rho.cols() != dressed.size()) {
        throw InvalidDimension("lindblad_rhs: density matrix does not match dressed operators");
    }
    return MasterEquation(H, dressed, config, drive).rhs(t, rho);
}

Observables observables(const Operator& rho, const DressedOperatorSet& dressed) {
    if (rho.rows() != dressed.size() || rho.cols() != dressed.size()) {
        throw InvalidDimension("observables: density matrix does not match dressed operators");
    }
    return ObservableSet(dressed).evaluate(rho);
}

std::vector<double> TimeGrid::times() const {
    if (samples < 2 || !(t_stop > t_start)) {
        throw ContractViolation("TimeGrid needs t_stop > t_start and at least two samples");
    }
    std::vector<double> t(samples);
    for (int i = 0; i < samples; ++i) {
        t[i] = t_start + (t_stop - t_start) * static_cast<double>(i) / (samples - 1);
    }
    return t;
}

TimeSeries evolve(const Operator& initial, const TimeGrid& grid, const Operator& H,
                  const DressedOperatorSet& dressed, const LindbladConfig& config,
                  const std::optional<DriveParams>& drive, const EvolveOptions& options) {
    const int m = dressed.size();
    if (initial.rows() != m || initial.cols() != m) {
        throw InvalidDimension("evolve: initial state does not match dressed operators");
    }
    const double dev = fockspace::hermiticity_deviation(initial);
    const double tr = initial.trace().real();
    if (dev > 1e-10 || std::abs(tr - 1.0) > 1e-10) {
        throw ContractViolation("evolve: initial state must be Hermitian with unit trace");
    }

    const MasterEquation eq(H, dressed, config, drive);
    const ObservableSet obs(dressed);
    const std::vector<double> times = grid.times();

    IntegratorOptions io;
    io.rtol = options.rtol;
    io.atol = options.atol;
    const bool interaction = eq.diagonal_hamiltonian();
    Dopri5 stepper(
        [&eq, interaction](double t, const Operator& y) {
            return interaction ? eq.interaction_rhs(t, y) : eq.rhs(t, y);
        },
        io);

    TimeSeries ts;
    ts.omega_eff = options.omega_eff;
    double t = times.front();
    Operator state = interaction ? eq.to_interaction(t, initial) : initial;

    for (const double sample : times) {
        stepper.integrate_to(t, state, sample);
        ts.hermiticity.push_back(fockspace::hermiticity_deviation(state));
        state = 0.5 * (state + state.adjoint()).eval();
        const Operator rho = interaction ? eq.to_lab(t, state) : state;

        const Observables o = obs.evaluate(rho);
        ts.times.push_back(t);
        ts.omega_eff_t.push_back(options.omega_eff * t);
        ts.exp_atom.push_back(o.exp_atom);
        ts.exp_photon.push_back(o.exp_photon);
        ts.exp_phonon.push_back(o.exp_phonon);
        ts.g2_qp.push_back(o.g2_qp);
        ts.trace.push_back(rho.trace().real());
        ts.purity.push_back(rho.cwiseAbs2().sum());
        if (options.check_positivity) {
            Eigen::SelfAdjointEigenSolver<Operator> es(rho, Eigen::EigenvaluesOnly);
            ts.min_eigenvalue.push_back(es.eigenvalues()(0));
        }
    }
    ts.stats = stepper.stats();
    return ts;
}

Operator project_bare_state(const BareLabel& label, const DressedOperatorSet& dressed,
                            const HilbertSpace& space, double* discarded) {
    const StateVector bare = fockspace::basis_vector(label, space);
    if (dressed.basis.rows() != bare.size()) {
        throw InvalidDimension("project_bare_state: dressed basis does not match the space");
    }
    Eigen::VectorXcd c = dressed.basis.adjoint() * bare;
    const double kept = c.squaredNorm();
    if (kept <= 0.0) {
        throw ContractViolation("project_bare_state: state has no weight in the kept subspace");
    }
    if (discarded) *discarded = 1.0 - kept;
    c /= std::sqrt(kept);
    return c * c.adjoint();
}

Operator ground_state(const DressedOperatorSet& dressed) {
    Operator rho = Operator::Zero(dressed.size(), dressed.size());
    rho(0, 0) = 1.0;
    return rho;
}

DressedSystem prepare(const ModelParams& params, const HilbertSpace& space,
                      std::optional<double> energy_cutoff) {
    DressedSystem s;
    s.eigen = spectra::diagonalize(model::build_H(params, space), params, space);
    s.dressed = build_dressed(s.eigen, space, energy_cutoff);
    s.H = s.dressed.hamiltonian();
    return s;
}

TimeSeries run_driven_protocol(const ModelParams& params, const HilbertSpace& space,
                               const LindbladConfig& config, const DriveParams& drive,
                               const TimeGrid& grid, std::optional<double> energy_cutoff,
                               EvolveOptions options) {
    drive.validate();
    const DressedSystem s = prepare(params, space, energy_cutoff);
    return evolve(ground_state(s.dressed), grid, s.H, s.dressed, config, drive, options);
}

} // namespace dynamics
} // namespace vrsim
