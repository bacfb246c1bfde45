#include <cmath>

#include "doctest.h"

#include "vrsim/errors.hpp"
#include "vrsim/fockspace.hpp"

using namespace vrsim;
namespace fs = vrsim::fockspace;

TEST_SUITE("fockspace") {

TEST_CASE("ladder operators follow the sqrt(m) rule") {
    const Operator a2 = fs::annihilation(2);
    CHECK(std::abs(a2(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(a2(0, 0)) == 0.0);
    CHECK(std::abs(a2(1, 0)) == 0.0);
    CHECK(std::abs(a2(1, 1)) == 0.0);

    const Operator a4 = fs::annihilation(4);
    CHECK(a4(2, 3).real() == doctest::Approx(std::sqrt(3.0)));

    const Operator n5 = fs::number(5);
    StateVector v = StateVector::Zero(5);
    v(3) = 1.0;
    CHECK((n5 * v - 3.0 * v).norm() < 1e-14);

    CHECK_THROWS_AS(fs::annihilation(1), InvalidDimension);
}

TEST_CASE("commutator [a, a+] is the identity below the top level") {
    const int dim = 12;
    const Operator a = fs::annihilation(dim);
    const Operator c = a * fs::creation(dim) - fs::creation(dim) * a;
    const Operator inner = c.topLeftCorner(dim - 1, dim - 1) - fs::identity(dim - 1);
    CHECK(inner.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("embed places operators in the right slot") {
    const HilbertSpace space(4, 3);
    CHECK(space.dim_total() == 5 * 4 * 2);
    CHECK((fs::embed(fs::identity(5), Slot::cavity, space) - fs::identity(space.dim_total()))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    const Operator a = fs::embed(fs::annihilation(5), Slot::cavity, space);
    const Operator b = fs::embed(fs::annihilation(4), Slot::mechanics, space);
    const Operator s = fs::embed(fs::sigma_minus(), Slot::atom, space);
    CHECK((a * b - b * a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((a * s - s * a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((b * s - s * b).cwiseAbs().maxCoeff() < 1e-12);

    const Operator x = fs::embed(fs::annihilation(5) + fs::creation(5), Slot::cavity, space);
    CHECK(fs::hermiticity_deviation(x) < 1e-12);

    const Operator n = fs::embed(fs::number(5), Slot::cavity, space);
    const StateVector v = fs::basis_vector({2, 0, AtomState::g}, space);
    CHECK((n * v - 2.0 * v).norm() < 1e-14);

    CHECK_THROWS_AS(fs::embed(fs::identity(3), Slot::cavity, space), InvalidDimension);
}

TEST_CASE("two-level conventions") {
    const Operator sz = fs::sigma_z();
    CHECK(sz(1, 1).real() == 1.0);   // |e> = index 1
    CHECK(sz(0, 0).real() == -1.0);
    const Operator sm = fs::sigma_minus();
    CHECK(sm(0, 1).real() == 1.0);   // |g><e|
    CHECK(((sm + sm.adjoint()) - fs::sigma_x()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("displacement") {
    CHECK((fs::displacement(0.0, 8) - fs::identity(8)).cwiseAbs().maxCoeff() < 1e-15);

    // Coherent-state overlap <0|D(alpha)|0> = exp(-alpha^2 / 2).
    const double alpha = 0.05 / 1.05;
    const Operator d = fs::displacement(alpha, 24);
    CHECK(d(0, 0).real() == doctest::Approx(std::exp(-alpha * alpha / 2)).epsilon(1e-12));
    CHECK(d(0, 0).real() == doctest::Approx(0.998867).epsilon(1e-6));

    for (double a : {-1.0, -0.5, 0.1, 0.5, 1.0}) {
        const Operator dp = fs::displacement(a, 20);
        const Operator dm = fs::displacement(-a, 20);
        CHECK((dm - dp.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        if (std::abs(a) <= 0.5) {
            const Operator u = (dp.adjoint() * dp).topLeftCorner(10, 10);
            CHECK((u - fs::identity(10)).cwiseAbs().maxCoeff() < 1e-8);
        }
    }
}

TEST_CASE("basis ordering: photon slowest, atom fastest") {
    const HilbertSpace space(4, 3);
    CHECK(fs::basis_index({0, 0, AtomState::g}, space) == 0);
    CHECK(fs::basis_index({0, 0, AtomState::e}, space) == 1);
    CHECK(fs::basis_index({1, 0, AtomState::g}, space) == 8);
    for (int i = 0; i < space.dim_total(); ++i) {
        CHECK(fs::basis_index(fs::label_of(i, space), space) == i);
    }
    CHECK_THROWS_AS(fs::basis_index({5, 0, AtomState::g}, space), InvalidLabel);
    CHECK_THROWS_AS(fs::basis_index({0, -1, AtomState::g}, space), InvalidLabel);
    CHECK_THROWS_AS(fs::label_of(space.dim_total(), space), InvalidLabel);
}

TEST_CASE("truncation limits") {
    CHECK_THROWS_AS(HilbertSpace(3, 6), InvalidDimension);
    CHECK_THROWS_AS(HilbertSpace(10, 2), InvalidDimension);
    CHECK_NOTHROW(HilbertSpace(4, 3));
}

}
