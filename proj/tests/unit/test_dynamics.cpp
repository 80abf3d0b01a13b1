#include <doctest.h>

#include "markdyn/dynamics.hpp"
#include "markdyn/rng.hpp"
#include "test_support.hpp"

using namespace markdyn;
using namespace testsupport;

TEST_CASE("unitary at t = 0 is the identity") {
    const DynamicalSystem sys{Operator(sigma_y())};
    CHECK(max_abs(sys.unitary(0.0) - Matrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("diagonal Hamiltonian gives diagonal phases") {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    const DynamicalSystem sys{Operator(h)};
    const double t = 0.7;
    const Matrix u = sys.unitary(t);
    CHECK(std::abs(u(0, 0) - Complex(1, 0)) < 1e-14);
    CHECK(std::abs(u(1, 1) - std::exp(Complex(0, -t))) < 1e-14);
    CHECK(std::abs(u(0, 1)) < 1e-14);
}

TEST_CASE("sigma_y generates a real rotation, cross-checked against the series oracle") {
    const DynamicalSystem sys{Operator(sigma_y())};
    for (double t : {0.25, 1.0, -2.2, 7.5}) {
        Matrix expected(2, 2);
        expected << Complex(std::cos(t), 0), Complex(-std::sin(t), 0),
            Complex(std::sin(t), 0), Complex(std::cos(t), 0);
        const Matrix u = sys.unitary(t);
        CHECK(max_abs(u - expected) < 1e-12);
        CHECK(max_abs(u - series_expm(Complex(0, -t) * sigma_y())) < 1e-9);
    }
}

TEST_CASE("heisenberg evolution fixtures") {
    const DynamicalSystem trivial{Operator(sigma_y())};
    const Operator a{sigma_x()};
    CHECK(max_abs(trivial.evolve(a, 0.0).matrix() - a.matrix()) < 1e-15);

    // Under H = diag(0,1) the off-diagonals of sigma_x pick up phases e^{±it}.
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    const DynamicalSystem sys{Operator(h)};
    const double t = 1.3;
    const Matrix evolved = sys.evolve(a, t).matrix();
    CHECK(std::abs(evolved(0, 1) - std::exp(Complex(0, t))) < 1e-13);
    CHECK(std::abs(evolved(1, 0) - std::exp(Complex(0, -t))) < 1e-13);
    CHECK(std::abs(evolved(0, 0)) < 1e-13);

    // tau_t(|0><0|) under sigma_y: U_t|0> = (cos t, sin t).
    const DynamicalSystem rot{Operator(sigma_y())};
    const Operator p0 = Projection::rank_one(ket0()).op();
    const Matrix pt = rot.evolve(p0, t).matrix();
    const double c = std::cos(t);
    const double s = std::sin(t);
    Matrix expected(2, 2);
    expected << Complex(c * c, 0), Complex(c * s, 0), Complex(c * s, 0), Complex(s * s, 0);
    CHECK(max_abs(pt - expected) < 1e-12);
}

TEST_CASE("ground energy") {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = 1.0;
    CHECK(DynamicalSystem{Operator(h)}.ground_energy() == doctest::Approx(0.0));
    CHECK(DynamicalSystem{Operator(sigma_y())}.ground_energy() ==
          doctest::Approx(-1.0).epsilon(1e-12));

    // Shift covariance.
    Rng rng(7);
    const Matrix base = random_hermitian(rng, 4);
    const double c = 2.75;
    const double shifted =
        DynamicalSystem{Operator((base + c * Matrix::Identity(4, 4)).eval())}.ground_energy();
    CHECK(shifted == doctest::Approx(DynamicalSystem{Operator(base)}.ground_energy() + c)
                         .epsilon(1e-10));
}

TEST_CASE("non-selfadjoint Hamiltonian is rejected") {
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(DynamicalSystem{Operator(bad)}, ValidationError);
}

TEST_CASE("group law, isometry, star-homomorphism and norm continuity") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = 2 + trial % 5;
        const Operator h{random_hermitian(rng, dim)};
        const DynamicalSystem sys{h};
        Matrix ga(dim, dim), gb(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                ga(i, j) = rng.cnormal();
                gb(i, j) = rng.cnormal();
            }
        const Operator a{ga};
        const Operator b{gb};
        const double s = rng.uniform(-10.0, 10.0);
        const double t = rng.uniform(-10.0, 10.0);

        CHECK(op_norm(Operator(sys.evolve(sys.evolve(a, t), s).matrix() -
                               sys.evolve(a, s + t).matrix())) < 1e-8);
        CHECK(std::abs(op_norm(sys.evolve(a, t)) - op_norm(a)) < 1e-8);
        CHECK(op_norm(Operator(sys.evolve(Operator(ga * gb), t).matrix() -
                               sys.evolve(a, t).matrix() * sys.evolve(b, t).matrix())) < 1e-8);
        CHECK(op_norm(Operator(sys.evolve(a.adjoint(), t).matrix() -
                               sys.evolve(a, t).matrix().adjoint())) < 1e-8);

        const double step = rng.uniform(-0.1, 0.1);
        const double diff =
            op_norm(Operator(sys.evolve(a, t + step).matrix() - sys.evolve(a, t).matrix()));
        CHECK(diff <= 2.0 * op_norm(h) * op_norm(a) * std::abs(step) + 1e-8);
    }
}

TEST_CASE("process instance validates its parts") {
    const DynamicalSystem sys{Operator(sigma_y())};
    const DensityState w = DensityState::pure(ket_plus());
    CHECK_NOTHROW(ProcessInstance(sys, w, Operator(sigma_x())));

    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(ProcessInstance(sys, w, Operator(bad)), ValidationError);
    CHECK_THROWS_AS(ProcessInstance(sys, DensityState::maximally_mixed(3),
                                    Operator(sigma_x())),
                    DimensionError);
}
