#include <catch2/catch_amalgamated.hpp>

#include "qdh/linalg.hpp"
#include "qdh/named_states.hpp"
#include "qdh/states.hpp"
#include "test_utils.hpp"

using namespace qdh;
using test_utils::random_hermitian;
using test_utils::random_unitary;
using test_utils::random_unit_vector;

TEST_CASE("hermitian_eig on diagonal and textbook inputs", "[linalg]") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    auto eig = hermitian_eig(d);
    REQUIRE(eig.eigenvalues(0) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(eig.eigenvalues(1) == Catch::Approx(2.0).margin(1e-14));
    REQUIRE(std::abs(eig.eigenvectors(0, 0)) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(std::abs(eig.eigenvectors(1, 1)) == Catch::Approx(1.0).margin(1e-12));

    auto pauli = hermitian_eig(pauli_x());
    REQUIRE(pauli.eigenvalues(0) == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE(pauli.eigenvalues(1) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("hermitian_eig reconstructs random 8x8 Hermitian matrices", "[linalg]") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 5; ++t) {
        Matrix h = random_hermitian(rng, 8);
        auto eig = hermitian_eig(h);
        Matrix recon =
            eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
        REQUIRE((h - recon).norm() <= 1e-10 * std::max(1.0, h.norm()));
        Matrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
        REQUIRE((gram - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-10);
        for (int i = 1; i < 8; ++i) REQUIRE(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
    }
}

TEST_CASE("hermitian_eig rejects bad input", "[linalg]") {
    REQUIRE_THROWS_AS(hermitian_eig(Matrix::Zero(2, 3)), DimensionError);
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;  // not Hermitian
    REQUIRE_THROWS_AS(hermitian_eig(m), DomainError);
}

TEST_CASE("matrix_sqrt_psd on exact cases", "[linalg]") {
    REQUIRE((matrix_sqrt_psd(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)).norm() <= 1e-12);

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 9.0;
    Matrix r = matrix_sqrt_psd(d);
    REQUIRE(r(0, 0).real() == Catch::Approx(2.0).margin(1e-12));
    REQUIRE(r(1, 1).real() == Catch::Approx(3.0).margin(1e-12));

    // a projector is its own square root (Werner r=1 is the |psi+> projector)
    const DensityMatrix proj = werner_2qubit_state(1.0);
    REQUIRE((matrix_sqrt_psd(proj.matrix) - proj.matrix).norm() <= 1e-9);
}

TEST_CASE("matrix_sqrt_psd properties and errors", "[linalg]") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 4; ++t) {
        Matrix g = random_hermitian(rng, 6);
        Matrix a = g * g;  // PSD
        Matrix r = matrix_sqrt_psd(a);
        REQUIRE((r * r - a).norm() <= 1e-9 * std::max(1.0, a.norm()));
        Matrix q = matrix_sqrt_psd(matrix_sqrt_psd(a));  // fourth root
        Matrix q2 = q * q;
        REQUIRE((q2 * q2 - a).norm() <= 1e-8 * std::max(1.0, a.norm()));
    }
    Matrix neg = Matrix::Zero(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.5;
    REQUIRE_THROWS_AS(matrix_sqrt_psd(neg), NotPsdError);
}

TEST_CASE("kron basics and associativity", "[linalg]") {
    REQUIRE((kron(Matrix(Matrix::Identity(2, 2)), Matrix(Matrix::Identity(2, 2))) -
             Matrix::Identity(4, 4))
                .norm() == 0.0);

    // bit flips: (sx (x) sx)|00> = |11>
    Vector v00 = Vector::Zero(4);
    v00(0) = 1.0;
    Vector flipped = kron(pauli_x(), pauli_x()) * v00;
    REQUIRE(std::abs(flipped(3) - Complex(1.0)) <= 1e-15);
    REQUIRE(flipped.head(3).norm() <= 1e-15);

    std::mt19937_64 rng(13);
    for (int t = 0; t < 3; ++t) {
        Matrix a = random_hermitian(rng, 2), b = random_hermitian(rng, 2),
               c = random_hermitian(rng, 2);
        REQUIRE((kron(kron(a, b), c) - kron(a, kron(b, c))).norm() <= 1e-12);
    }
}

TEST_CASE("partial_trace on known marginals", "[linalg]") {
    const PureState bell = bell_psi_plus();
    Matrix rho = bell.amplitudes * bell.amplitudes.adjoint();
    Matrix red = partial_trace(rho, {2, 2}, {0});
    REQUIRE((red - 0.5 * Matrix::Identity(2, 2)).norm() <= 1e-12);

    std::mt19937_64 rng(14);
    Matrix a = random_hermitian(rng, 2);
    a = (a * a).eval();
    a /= a.trace().real();
    Matrix b = random_hermitian(rng, 3);
    b = (b * b).eval();
    b /= b.trace().real();
    REQUIRE((partial_trace(kron(a, b), {2, 3}, {0}) - a).norm() <= 1e-12);
    REQUIRE((partial_trace(kron(a, b), {2, 3}, {1}) - b).norm() <= 1e-12);
}

TEST_CASE("partial_trace preserves density-matrix structure", "[linalg]") {
    std::mt19937_64 rng(15);
    Vector psi = random_unit_vector(rng, 2 * 3 * 2);
    Matrix rho = psi * psi.adjoint();
    Matrix red = partial_trace(rho, {2, 3, 2}, {0});
    REQUIRE(std::abs(red.trace().real() - 1.0) <= 1e-12);
    REQUIRE((red - red.adjoint()).norm() <= 1e-12);
    auto eig = hermitian_eig(red);
    REQUIRE(eig.eigenvalues.minCoeff() >= -1e-10);

    REQUIRE_THROWS_AS(partial_trace(rho, {2, 2}, {0}), DimensionError);
    REQUIRE_THROWS_AS(partial_trace(rho, {2, 3, 2}, {3}), DimensionError);
}

TEST_CASE("affinity on pure projectors and the maximally mixed state", "[linalg]") {
    Vector e0 = Vector::Zero(4), e1 = Vector::Zero(4);
    e0(0) = 1.0;
    e1(1) = 1.0;
    Matrix p0 = e0 * e0.adjoint(), p1 = e1 * e1.adjoint();
    REQUIRE(affinity(p0, p0) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(affinity(p0, p1) == Catch::Approx(0.0).margin(1e-12));

    // I/4 against the uniform classical state on any product basis is 1
    std::mt19937_64 rng(16);
    ProductBasis basis = product_basis_from_angles(test_utils::random_angles(rng, 2));
    DensityMatrix sigma = classical_state(basis, RealVector::Constant(4, 0.25));
    Matrix mixed = 0.25 * Matrix::Identity(4, 4);
    REQUIRE(affinity(mixed, sigma.matrix) == Catch::Approx(1.0).margin(1e-10));

    REQUIRE_THROWS_AS(affinity(Matrix(p0), Matrix(Matrix::Identity(2, 2) / 2.0)), DimensionError);
}

TEST_CASE("affinity is symmetric and unitarily invariant", "[linalg]") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 3; ++t) {
        DensityMatrix rho = test_utils::random_density(rng, {2, 2});
        DensityMatrix sig = test_utils::random_density(rng, {2, 2});
        const double ab = affinity(rho.matrix, sig.matrix);
        REQUIRE(std::abs(ab - affinity(sig.matrix, rho.matrix)) <= 1e-10);
        Matrix u = random_unitary(rng, 4);
        const double rotated = affinity(u * rho.matrix * u.adjoint(), u * sig.matrix * u.adjoint());
        REQUIRE(std::abs(ab - rotated) <= 1e-9);
    }
}
