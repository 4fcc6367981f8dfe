#include "mesq/gaussian.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace mesq {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kUncertaintyTol = -1e-10;
constexpr double kSymplecticTol = 1e-10;
constexpr double kPurityTol = 1e-8;

void check_finite(const RMatrix& m, const char* what) {
    if (!m.allFinite()) throw std::domain_error(std::string(what) + ": non-finite entries");
}

}  // namespace

RMatrix symplectic_form(int n_modes) {
    RMatrix omega = RMatrix::Zero(2 * n_modes, 2 * n_modes);
    omega.topRightCorner(n_modes, n_modes) = RMatrix::Identity(n_modes, n_modes);
    omega.bottomLeftCorner(n_modes, n_modes) = -RMatrix::Identity(n_modes, n_modes);
    return omega;
}

GaussianState::GaussianState(int n, RVector mu, RMatrix sigma)
    : n_modes(n), mean(std::move(mu)), cov(std::move(sigma)) {
    if (n < 1) throw std::invalid_argument("GaussianState: n_modes must be >= 1");
    if (mean.size() != 2 * n || cov.rows() != 2 * n || cov.cols() != 2 * n)
        throw std::invalid_argument("GaussianState: dimension mismatch");
    check_finite(cov, "GaussianState");
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymTol)
        throw std::invalid_argument("GaussianState: covariance not symmetric");
    // Uncertainty relation: cov + (i/2) Omega must be positive semidefinite.
    CMatrix test = cov.cast<Complex>() +
                   Complex(0.0, 0.5) * symplectic_form(n).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(test, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kUncertaintyTol)
        throw std::invalid_argument("GaussianState: uncertainty relation violated");
}

SymplecticMap::SymplecticMap(int n, RMatrix s, RVector disp)
    : n_modes(n), S(std::move(s)), d(std::move(disp)) {
    if (S.rows() != 2 * n || S.cols() != 2 * n || d.size() != 2 * n)
        throw std::invalid_argument("SymplecticMap: dimension mismatch");
    check_finite(S, "SymplecticMap");
    if (symplectic_residual(S) > kSymplecticTol)
        throw std::invalid_argument("SymplecticMap: S Omega S^T != Omega");
}

QuadraticGenerator::QuadraticGenerator(int n, RMatrix a, RVector bvec, std::string name)
    : n_modes(n), A(std::move(a)), b(std::move(bvec)), label(std::move(name)) {
    if (A.rows() != 2 * n || A.cols() != 2 * n || b.size() != 2 * n)
        throw std::invalid_argument("QuadraticGenerator: dimension mismatch");
    check_finite(A, "QuadraticGenerator");
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > kSymTol)
        throw std::invalid_argument("QuadraticGenerator: A not symmetric");
}

GaussianState vacuum_state(int n_modes) {
    if (n_modes < 1) throw std::invalid_argument("vacuum_state: n_modes must be >= 1");
    return GaussianState(n_modes, RVector::Zero(2 * n_modes),
                         0.5 * RMatrix::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticMap symplectic_of_generator(const QuadraticGenerator& g, double t) {
    if (!std::isfinite(t)) throw std::domain_error("symplectic_of_generator: non-finite time");
    const int dim = 2 * g.n_modes;
    const RMatrix omega = symplectic_form(g.n_modes);
    if (g.b.isZero(0.0)) {
        RMatrix s = (t * omega * g.A).exp();
        return SymplecticMap(g.n_modes, std::move(s), RVector::Zero(dim));
    }
    // Augmented flow picks up the displacement exactly:
    // exp(t [[Omega A, Omega b], [0, 0]]) = [[S, d], [0, 1]].
    RMatrix aug = RMatrix::Zero(dim + 1, dim + 1);
    aug.topLeftCorner(dim, dim) = omega * g.A;
    aug.topRightCorner(dim, 1) = omega * g.b;
    RMatrix expaug = (t * aug).exp();
    return SymplecticMap(g.n_modes, expaug.topLeftCorner(dim, dim),
                         expaug.topRightCorner(dim, 1));
}

GaussianState apply_map(const GaussianState& s, const SymplecticMap& m) {
    if (s.n_modes != m.n_modes) throw std::invalid_argument("apply_map: dimension mismatch");
    return GaussianState(s.n_modes, m.S * s.mean + m.d, m.S * s.cov * m.S.transpose());
}

double quad_variance(const GaussianState& s, const RVector& c) {
    if (c.size() != 2 * s.n_modes) throw std::invalid_argument("quad_variance: dimension mismatch");
    return c.dot(s.cov * c);
}

double overlap(const GaussianState& s1, const GaussianState& s2) {
    if (s1.n_modes != s2.n_modes) throw std::invalid_argument("overlap: dimension mismatch");
    if (std::abs(purity_det(s1) - 1.0) > kPurityTol ||
        std::abs(purity_det(s2) - 1.0) > kPurityTol)
        throw std::domain_error("overlap: mixed-state input unsupported");
    const RMatrix sum = s1.cov + s2.cov;
    const RVector delta = s1.mean - s2.mean;
    Eigen::LDLT<RMatrix> ldlt(sum);
    const double quad = delta.dot(ldlt.solve(delta));
    const double det = sum.determinant();
    return std::exp(-0.5 * quad) / std::sqrt(det);
}

SymplecticMap compose(const SymplecticMap& after, const SymplecticMap& before) {
    if (after.n_modes != before.n_modes) throw std::invalid_argument("compose: dimension mismatch");
    return SymplecticMap(after.n_modes, after.S * before.S, after.S * before.d + after.d);
}

SymplecticMap inverse_map(const SymplecticMap& m) {
    // S^-1 = -Omega S^T Omega for symplectic S.
    const RMatrix omega = symplectic_form(m.n_modes);
    RMatrix sinv = -omega * m.S.transpose() * omega;
    RVector dinv = -(sinv * m.d);
    return SymplecticMap(m.n_modes, std::move(sinv), std::move(dinv));
}

SymplecticMap identity_map(int n_modes) {
    return SymplecticMap(n_modes, RMatrix::Identity(2 * n_modes, 2 * n_modes),
                         RVector::Zero(2 * n_modes));
}

GaussianState tensor_product(const GaussianState& a, const GaussianState& b) {
    const int n = a.n_modes + b.n_modes;
    RVector mean = RVector::Zero(2 * n);
    RMatrix cov = RMatrix::Zero(2 * n, 2 * n);
    // Interleave X and P blocks of both states into the combined ordering.
    mean.segment(0, a.n_modes) = a.mean.segment(0, a.n_modes);
    mean.segment(a.n_modes, b.n_modes) = b.mean.segment(0, b.n_modes);
    mean.segment(n, a.n_modes) = a.mean.segment(a.n_modes, a.n_modes);
    mean.segment(n + a.n_modes, b.n_modes) = b.mean.segment(b.n_modes, b.n_modes);
    auto put = [&](const GaussianState& s, int offset) {
        const int m = s.n_modes;
        cov.block(offset, offset, m, m) = s.cov.block(0, 0, m, m);
        cov.block(offset, n + offset, m, m) = s.cov.block(0, m, m, m);
        cov.block(n + offset, offset, m, m) = s.cov.block(m, 0, m, m);
        cov.block(n + offset, n + offset, m, m) = s.cov.block(m, m, m, m);
    };
    put(a, 0);
    put(b, a.n_modes);
    return GaussianState(n, std::move(mean), std::move(cov));
}

double symplectic_residual(const RMatrix& S) {
    const int n = static_cast<int>(S.rows()) / 2;
    const RMatrix omega = symplectic_form(n);
    return (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
}

double purity_det(const GaussianState& s) {
    return (2.0 * s.cov).determinant();
}

RVector direction_total_P(int n) {
    RVector c = RVector::Zero(2 * n);
    c.segment(n, n).setOnes();
    return c;
}

RVector direction_total_X(int n) {
    RVector c = RVector::Zero(2 * n);
    c.segment(0, n).setOnes();
    return c;
}

RVector direction_collective_X(int n) {
    return direction_total_X(n) / std::sqrt(2.0 * n);
}

RVector direction_collective_Y(int n) {
    return direction_total_P(n) / std::sqrt(2.0 * n);
}

RVector direction_relative_X(int n, int i) {
    if (i < 2 || i > n) throw std::invalid_argument("direction_relative_X: i out of range");
    RVector c = RVector::Zero(2 * n);
    c(0) = 1.0;
    c(i - 1) = -1.0;
    return c;
}

RVector direction_relative_P(int n, int i) {
    if (i < 2 || i > n) throw std::invalid_argument("direction_relative_P: i out of range");
    RVector c = RVector::Zero(2 * n);
    c(n) = 1.0;
    c(n + i - 1) = -1.0;
    return c;
}

std::pair<RVector, RMatrix> fock_moments(const FockVector& v) {
    const int n = v.space.n_modes();
    const double norm2 = v.coeffs.squaredNorm();
    if (norm2 <= 0.0) throw std::domain_error("fock_moments: zero vector");
    std::vector<CVector> rv(2 * n);
    for (int m = 1; m <= n; ++m) {
        auto [x, p] = quadratures(v.space, m);
        rv[m - 1] = x.matrix * v.coeffs;
        rv[n + m - 1] = p.matrix * v.coeffs;
    }
    RVector mean(2 * n);
    for (int i = 0; i < 2 * n; ++i) mean(i) = std::real(v.coeffs.dot(rv[i])) / norm2;
    RMatrix cov(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j)
            cov(i, j) = std::real(rv[i].dot(rv[j])) / norm2 - mean(i) * mean(j);
    cov = 0.5 * (cov + cov.transpose()).eval();
    return {std::move(mean), std::move(cov)};
}

}  // namespace mesq
