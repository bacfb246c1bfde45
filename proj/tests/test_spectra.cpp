#include <cmath>

#include "doctest.h"

#include "vrsim/errors.hpp"
#include "vrsim/model.hpp"
#include "vrsim/spectra.hpp"

using namespace vrsim;
namespace fs = vrsim::fockspace;

namespace {

ModelParams reference_params(double omega_q = 1.052) {
    ModelParams p;
    p.omega_m = 1.05;
    p.kappa = 0.05;
    p.lambda = 0.05;
    p.omega_q = omega_q;
    return p;
}

const HilbertSpace default_space(10, 6);

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("uncoupled diagonalization reproduces bare sums") {
    ModelParams p = reference_params();
    p.kappa = p.lambda = 0.0;
    const HilbertSpace s(6, 4);
    const EigenSystem es = spectra::diagonalize(model::build_H(p, s), p, s);
    CHECK(es.size() == s.dim_total());
    std::vector<double> bare;
    for (int i = 0; i < s.dim_total(); ++i) bare.push_back(model::analytic_H0_energy(fs::label_of(i, s), p));
    std::sort(bare.begin(), bare.end());
    for (int i = 0; i < es.size(); ++i) CHECK(es.values(i) == doctest::Approx(bare[i]).epsilon(1e-10));
    for (const StateLabel& l : es.labels) CHECK(l.weight == doctest::Approx(1.0));
}

TEST_CASE("non-Hermitian input is rejected") {
    Operator h = Operator::Identity(4, 4);
    h(0, 1) = 1.0;
    CHECK_THROWS_AS(spectra::diagonalize(h), ContractViolation);
}

TEST_CASE("hybridized pair at the anticrossing") {
    const spectra::HamiltonianFamily family(reference_params(), default_space);
    const auto r = spectra::splitting_at(family, 1.052, spectra::default_targets(CouplingKind::two_photon));
    for (const auto& row : r.hybrid_overlaps)
        for (double w : row) {
            CHECK(w > 0.3);
            CHECK(w < 0.7);
        }
    CHECK(r.gap > 0.0);
}

TEST_CASE("level sweep shows a flat phonon branch and a unit-slope atom branch") {
    const std::vector<double> grid{0.80, 0.81};
    const spectra::LevelTable t = spectra::sweep_levels(reference_params(), default_space, grid, 6);
    REQUIRE(t.levels.size() == 2);
    CHECK(t.levels[0][0] == doctest::Approx(0.0).epsilon(1e-12));
    bool flat = false, unit_slope = false;
    for (int b = 1; b < t.n_levels(); ++b) {
        const double slope = (t.levels[1][b] - t.levels[0][b]) / 0.01;
        if (std::abs(t.levels[0][b] - 1.05) < 0.01 && std::abs(slope) < 0.05) flat = true;
        if (std::abs(t.levels[0][b] - 0.80) < 0.02 && std::abs(slope - 1.0) < 0.05) unit_slope = true;
    }
    CHECK(flat);
    CHECK(unit_slope);

    const std::vector<double> bad{0.9, 0.8, 1.0};
    CHECK_THROWS(spectra::sweep_levels(reference_params(), default_space, bad, 4));
}

TEST_CASE("uncoupled branches cross") {
    ModelParams p = reference_params(1.05);
    p.kappa = p.lambda = 0.0;
    const spectra::HamiltonianFamily family(p, default_space);
    const auto r = spectra::splitting_at(family, 1.05, spectra::default_targets(p.coupling_kind));
    CHECK(r.gap < 1e-12);
}

TEST_CASE("two-photon minimum splitting") {
    const ModelParams p = reference_params();
    const auto r = spectra::find_min_splitting(p, default_space, spectra::default_bracket(p));
    CHECK(r.gap == doctest::Approx(6.8e-3).epsilon(0.10));
    CHECK(std::abs(r.omega_q_min - 1.052) <= 0.003);
    CHECK(r.omega_eff() == doctest::Approx(r.gap / 2));
}

TEST_CASE("weak coupling splitting matches perturbation theory") {
    ModelParams p = reference_params();
    p.kappa = p.lambda = 0.005;
    const auto r = spectra::find_min_splitting(p, default_space, spectra::default_bracket(p));
    p.omega_q = r.omega_q_min;
    CHECK(r.gap == doctest::Approx(2 * std::abs(spectra::perturbative_coupling(p))).epsilon(0.05));
}

TEST_CASE("bracket without interior minimum") {
    const ModelParams p = reference_params();
    CHECK_THROWS_AS(spectra::find_min_splitting(p, default_space, {1.2, 1.3}), BracketError);
}

TEST_CASE("closed-form effective coupling") {
    // kappa lambda [1/(wm - 2wc + 4k²/wm) + 1/(-wq - 2wc + 4k²/wm)] by hand:
    //   shift = 0.00952381, d1 = -0.94047619, d2 = -3.04247619
    const double v = spectra::perturbative_coupling(reference_params());
    CHECK(v == doctest::Approx(-3.48e-3).epsilon(0.002));
    CHECK(2 * std::abs(v) == doctest::Approx(6.96e-3).epsilon(0.002));

    ModelParams p = reference_params();
    p.kappa = 0.0;
    CHECK(spectra::perturbative_coupling(p) == 0.0);
    p = reference_params();
    p.lambda = 0.0;
    CHECK(spectra::perturbative_coupling(p) == 0.0);

    ModelParams half = reference_params();
    half.kappa /= 2;
    half.lambda /= 2;
    CHECK(spectra::perturbative_coupling(half) == doctest::Approx(v / 4).epsilon(0.02));

    ModelParams one = reference_params();
    one.coupling_kind = CouplingKind::one_photon;
    CHECK_THROWS_AS(spectra::perturbative_coupling(one), ContractViolation);

    ModelParams degenerate = reference_params();
    degenerate.omega_m = 1.0 + std::sqrt(0.99);  // omega_m - 2 + 0.01 / omega_m = 0
    CHECK_THROWS_AS(spectra::perturbative_coupling(degenerate), DegeneracyError);
}

TEST_CASE("generic second-order sum") {
    const ModelParams p = reference_params();
    const BareLabel i{0, 1, AtomState::g}, f{0, 0, AtomState::e};
    const double closed = spectra::perturbative_coupling(p);

    const auto full = spectra::generic_second_order(p, default_space, i, f);
    CHECK(full.value == doctest::Approx(closed).epsilon(0.10));

    const std::vector<BareLabel> paths{{2, 0, AtomState::g}, {2, 1, AtomState::e}};
    const auto two = spectra::generic_second_order(p, default_space, i, f, paths);
    CHECK(two.value == doctest::Approx(closed).epsilon(0.01));
    CHECK(two.terms == 2);

    ModelParams free = p;
    free.kappa = free.lambda = 0.0;
    CHECK(spectra::generic_second_order(free, default_space, i, f).value == 0.0);
}

TEST_CASE("gap stays positive for positive couplings") {
    for (double c : {0.01, 0.03, 0.08}) {
        ModelParams p = reference_params();
        p.kappa = p.lambda = c;
        const auto r = spectra::find_min_splitting(p, default_space, spectra::default_bracket(p));
        CHECK(r.gap > 0.0);
    }
}

}
