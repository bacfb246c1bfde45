#include "vrsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vrsim/errors.hpp"

namespace vrsim::spectra {

namespace {

constexpr double hermitian_tolerance = 1e-12;
constexpr double continuity_threshold = 0.5;
constexpr double degenerate_denominator = 1e-9;

struct Match {
    int index{0};
    double best{0.0};
    double second{0.0};
};

Match best_match(const Eigen::VectorXd& weights) {
    Match m;
    m.best = -1.0;
    for (int i = 0; i < weights.size(); ++i) {
        if (weights(i) > m.best) {
            m.second = m.best;
            m.best = weights(i);
            m.index = i;
        } else if (weights(i) > m.second) {
            m.second = weights(i);
        }
    }
    m.second = std::max(m.second, 0.0);
    return m;
}

} // namespace

EigenSystem diagonalize(const Operator& H) {
    if (H.rows() != H.cols() || H.rows() == 0) {
        throw ContractViolation("diagonalize: Hamiltonian must be a non-empty square matrix");
    }
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    const double dev = fockspace::hermiticity_deviation(H);
    if (dev > hermitian_tolerance * scale) {
        std::ostringstream msg;
        msg << "diagonalize: Hamiltonian is not Hermitian (max deviation " << dev << ")";
        throw ContractViolation(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Operator> solver(H);
    if (solver.info() != Eigen::Success) {
        throw NumericalHealthError("diagonalize: eigensolver did not converge");
    }
    EigenSystem es;
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();
    return es;
}

EigenSystem diagonalize(const Operator& H, const ModelParams& params,
                        const HilbertSpace& space) {
    if (H.rows() != space.dim_total()) {
        throw InvalidDimension("diagonalize: Hamiltonian does not live on the given space");
    }
    EigenSystem es = diagonalize(H);
    const Operator displaced = model::displaced_basis(params, space);
    const Eigen::MatrixXd w_displaced = (displaced.adjoint() * es.vectors).cwiseAbs2();
    const Eigen::MatrixXd w_bare = es.vectors.cwiseAbs2();

    es.labels.resize(es.size());
    for (int s = 0; s < es.size(); ++s) {
        const Match md = best_match(w_displaced.col(s));
        StateLabel& label = es.labels[s];
        if (md.best - md.second >= tie_margin) {
            label.label = fockspace::label_of(md.index, space);
            label.weight = md.best;
            continue;
        }
        const Match mb = best_match(w_bare.col(s));
        if (mb.best - mb.second >= tie_margin) {
            label.label = fockspace::label_of(mb.index, space);
            label.weight = mb.best;
            label.bare_fallback = true;
        } else {
            label.label = fockspace::label_of(md.index, space);
            label.weight = md.best;
            label.tie = true;
        }
    }
    return es;
}

HamiltonianFamily::HamiltonianFamily(ModelParams params, const HilbertSpace& space)
    : params_(params), space_(space) {
    params_.validate();
    half_sz_ = 0.5 * fockspace::embed(fockspace::sigma_z(), Slot::atom, space_);
    rest_ = model::build_H(params_, space_) - params_.omega_q * half_sz_;
}

Operator HamiltonianFamily::at(double omega_q) const { return rest_ + omega_q * half_sz_; }

std::vector<double> Grid::values() const {
    if (points < 2) {
        throw ConfigError("grid needs at least two points");
    }
    std::vector<double> v(points);
    for (int i = 0; i < points; ++i) {
        v[i] = start + (stop - start) * static_cast<double>(i) / (points - 1);
    }
    return v;
}

LevelTable sweep_levels(const ModelParams& params, const HilbertSpace& space,
                        std::span<const double> omega_q_grid, int n_levels) {
    if (omega_q_grid.empty()) {
        throw ContractViolation("sweep_levels: empty grid");
    }
    if (n_levels < 1 || n_levels > space.dim_total()) {
        throw ContractViolation("sweep_levels: level count out of range");
    }
    for (std::size_t i = 2; i < omega_q_grid.size(); ++i) {
        const double d0 = omega_q_grid[i - 1] - omega_q_grid[i - 2];
        const double d1 = omega_q_grid[i] - omega_q_grid[i - 1];
        if (d0 * d1 <= 0.0) {
            throw ContractViolation("sweep_levels: grid is not monotone");
        }
    }
    if (omega_q_grid.size() == 2 && omega_q_grid[0] == omega_q_grid[1]) {
        throw ContractViolation("sweep_levels: grid is not monotone");
    }

    const HamiltonianFamily family(params, space);
    LevelTable table;
    table.omega_q.assign(omega_q_grid.begin(), omega_q_grid.end());
    table.levels.reserve(omega_q_grid.size());

    Operator tracked; // columns follow the output branches
    for (std::size_t i = 0; i < omega_q_grid.size(); ++i) {
        const EigenSystem es = diagonalize(family.at(omega_q_grid[i]));
        const double ground = es.values(0);
        std::vector<double> row(n_levels);

        if (i == 0) {
            tracked = es.vectors.leftCols(n_levels);
            for (int b = 0; b < n_levels; ++b) {
                row[b] = es.values(b) - ground;
            }
            table.levels.push_back(std::move(row));
            continue;
        }

        // |<previous branch | current state>| for the full spectrum.
        const Eigen::MatrixXd overlap = (tracked.adjoint() * es.vectors).cwiseAbs();
        std::vector<int> assigned(n_levels, -1);
        std::vector<bool> used(n_levels, false);
        // Greedy assignment inside the current lowest-n_levels window.
        for (int round = 0; round < n_levels; ++round) {
            double best = -1.0;
            int bb = -1;
            int ss = -1;
            for (int b = 0; b < n_levels; ++b) {
                if (assigned[b] >= 0) continue;
                for (int s = 0; s < n_levels; ++s) {
                    if (used[s]) continue;
                    if (overlap(b, s) > best) {
                        best = overlap(b, s);
                        bb = b;
                        ss = s;
                    }
                }
            }
            if (best < continuity_threshold) break;
            assigned[bb] = ss;
            used[ss] = true;
        }
        // Branches without a partner either left the window or the grid is too coarse.
        int next_free = 0;
        for (int b = 0; b < n_levels; ++b) {
            if (assigned[b] >= 0) continue;
            Eigen::Index where = 0;
            const double best_any = overlap.row(b).maxCoeff(&where);
            if (best_any < continuity_threshold) {
                std::ostringstream msg;
                msg << "branch " << b << " lost continuity between omega_q="
                    << omega_q_grid[i - 1] << " and " << omega_q_grid[i]
                    << " (max overlap " << best_any << "); refine the grid";
                table.warnings.push_back(msg.str());
            }
            while (used[next_free]) ++next_free;
            assigned[b] = next_free;
            used[next_free] = true;
        }
        for (int b = 0; b < n_levels; ++b) {
            tracked.col(b) = es.vectors.col(assigned[b]);
            row[b] = es.values(assigned[b]) - ground;
        }
        table.levels.push_back(std::move(row));
    }
    return table;
}

SplittingTargets default_targets(CouplingKind kind) {
    SplittingTargets t;
    t.first = {0, 1, AtomState::g};
    t.second = kind == CouplingKind::two_photon ? BareLabel{0, 0, AtomState::e}
                                                : BareLabel{1, 0, AtomState::e};
    return t;
}

Bracket default_bracket(const ModelParams& params, double half_width) {
    const double centre = params.coupling_kind == CouplingKind::two_photon
                              ? params.omega_m
                              : params.omega_m - params.omega_c;
    return {std::max(centre - half_width, 1e-6), centre + half_width};
}

SplittingResult splitting_at(const HamiltonianFamily& family, double omega_q,
                             const SplittingTargets& targets) {
    ModelParams p = family.params();
    p.omega_q = omega_q;
    const StateVector t1 = model::displaced_eigvec(targets.first, p, family.space());
    const StateVector t2 = model::displaced_eigvec(targets.second, p, family.space());
    const EigenSystem es = diagonalize(family.at(omega_q));

    const Eigen::VectorXd w1 = (t1.adjoint() * es.vectors).cwiseAbs2().transpose();
    const Eigen::VectorXd w2 = (t2.adjoint() * es.vectors).cwiseAbs2().transpose();
    const Eigen::VectorXd w = w1 + w2;
    const Match m = best_match(w);
    int other = -1;
    double other_w = -1.0;
    for (int s = 0; s < w.size(); ++s) {
        if (s != m.index && w(s) > other_w) {
            other_w = w(s);
            other = s;
        }
    }
    const int lo = std::min(m.index, other);
    const int hi = std::max(m.index, other);

    SplittingResult r;
    r.omega_q_min = omega_q;
    r.gap = es.values(hi) - es.values(lo);
    r.branch_states = {lo, hi};
    r.hybrid_overlaps = {{{w1(lo), w2(lo)}, {w1(hi), w2(hi)}}};
    r.targets = targets;
    r.evaluations = 1;
    return r;
}

SplittingResult find_min_splitting(const ModelParams& params, const HilbertSpace& space,
                                   Bracket bracket, std::optional<SplittingTargets> targets) {
    if (!(bracket.hi > bracket.lo) || !(bracket.lo > 0.0)) {
        throw BracketError("find_min_splitting: bracket must satisfy 0 < lo < hi");
    }
    const SplittingTargets tg = targets.value_or(default_targets(params.coupling_kind));
    const HamiltonianFamily family(params, space);
    int evaluations = 0;
    auto gap = [&](double x) {
        ++evaluations;
        return splitting_at(family, x, tg).gap;
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = bracket.lo;
    double b = bracket.hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = gap(c);
    double fd = gap(d);
    while (b - a > splitting_tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = gap(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = gap(d);
        }
    }
    const double x = 0.5 * (a + b);
    SplittingResult r = splitting_at(family, x, tg);
    ++evaluations;

    const double edge = 2.0 * splitting_tolerance;
    if (x - bracket.lo < edge || bracket.hi - x < edge) {
        std::ostringstream msg;
        msg << "find_min_splitting: minimum at omega_q=" << x << " sits on the bracket edge ["
            << bracket.lo << ", " << bracket.hi << "]";
        throw BracketError(msg.str());
    }
    const double f_lo = gap(bracket.lo);
    const double f_hi = gap(bracket.hi);
    if (!(r.gap < f_lo && r.gap < f_hi)) {
        throw BracketError("find_min_splitting: no interior minimum in bracket");
    }
    r.evaluations = evaluations;
    return r;
}

double perturbative_coupling(const ModelParams& params) {
    params.validate();
    if (params.coupling_kind != CouplingKind::two_photon) {
        throw ContractViolation("perturbative_coupling: closed form holds for two-photon coupling");
    }
    const double shift = 4.0 * params.kappa * params.kappa / params.omega_m;
    const double d1 = params.omega_m - 2.0 * params.omega_c + shift;
    const double d2 = -params.omega_q - 2.0 * params.omega_c + shift;
    if (std::abs(d1) < 1e-12 || std::abs(d2) < 1e-12) {
        throw DegeneracyError("perturbative_coupling: vanishing energy denominator");
    }
    const double kl = params.kappa * params.lambda;
    return kl / d1 + kl / d2;
}

SecondOrderResult generic_second_order(const ModelParams& params, const HilbertSpace& space,
                                       const BareLabel& initial, const BareLabel& final_state,
                                       std::optional<std::vector<BareLabel>> intermediates) {
    if (initial == final_state) {
        throw ContractViolation("generic_second_order: initial and final states coincide");
    }
    const int i_idx = fockspace::basis_index(initial, space);
    const int f_idx = fockspace::basis_index(final_state, space);

    const Operator basis = model::displaced_basis(params, space);
    const Operator v = basis.adjoint() * model::build_V(params, space) * basis;
    const double e_i = model::analytic_H0_energy(initial, params);

    std::vector<int> indices;
    if (intermediates) {
        for (const BareLabel& l : *intermediates) {
            indices.push_back(fockspace::basis_index(l, space));
        }
    } else {
        indices.resize(space.dim_total());
        for (int l = 0; l < space.dim_total(); ++l) indices[l] = l;
    }

    SecondOrderResult r;
    Complex sum{0.0, 0.0};
    for (const int l : indices) {
        if (l == i_idx || l == f_idx) continue;
        const BareLabel label = fockspace::label_of(l, space);
        const double denom = e_i - model::analytic_H0_energy(label, params);
        const Complex numer = v(f_idx, l) * v(l, i_idx);
        if (std::abs(denom) < degenerate_denominator) {
            if (std::abs(numer) > 0.0) r.excluded.push_back(label);
            continue;
        }
        sum += numer / denom;
        ++r.terms;
    }
    if (std::abs(sum.imag()) > 1e-9 * std::max(1.0, std::abs(sum.real()))) {
        throw NumericalHealthError("generic_second_order: complex effective coupling");
    }
    r.value = sum.real();
    return r;
}

} // namespace vrsim::spectra
