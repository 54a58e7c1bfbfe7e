// test_utils.hpp — seeded random generators shared by the test suites

#pragma once

#include <random>
#include <vector>

#include "qdh/linalg.hpp"
#include "qdh/states.hpp"

namespace test_utils {

using qdh::Complex;
using qdh::Matrix;
using qdh::RealVector;
using qdh::Vector;

inline Vector random_unit_vector(std::mt19937_64& rng, long dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (long i = 0; i < dim; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v / v.norm();
}

inline qdh::PureState random_pure(std::mt19937_64& rng, const std::vector<int>& dims) {
    return qdh::pure_state(random_unit_vector(rng, qdh::product_of(dims)), dims);
}

inline Matrix random_hermitian(std::mt19937_64& rng, long dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (m + m.adjoint()).eval();
}

inline Matrix random_unitary(std::mt19937_64& rng, long dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

/// Random full-rank density matrix from a Wishart draw.
inline qdh::DensityMatrix random_density(std::mt19937_64& rng, const std::vector<int>& dims) {
    const long d = qdh::product_of(dims);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return qdh::density_matrix(0.5 * (rho + rho.adjoint()), dims);
}

inline RealVector random_probabilities(std::mt19937_64& rng, long n) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RealVector p(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        p(i) = -std::log(1.0 - uni(rng));  // exponential -> Dirichlet(1,..,1)
        sum += p(i);
    }
    return p / sum;
}

inline std::vector<qdh::QubitBasisAngles> random_angles(std::mt19937_64& rng, int parties) {
    std::uniform_real_distribution<double> ut(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> up(0.0, 2.0 * std::numbers::pi);
    std::vector<qdh::QubitBasisAngles> a(parties);
    for (auto& x : a) x = {ut(rng), up(rng)};
    return a;
}

}  // namespace test_utils
