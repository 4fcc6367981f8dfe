#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "mesq/fock.hpp"

namespace mesq {

/// Standard symplectic form for the quadrature ordering (X_1..X_n, P_1..P_n):
/// Omega = [[0, I], [-I, 0]].
RMatrix symplectic_form(int n_modes);

/// Pure-Gaussian-state engine. Vacuum has mean 0 and cov = I/2, so a single
/// quadrature has vacuum variance 1/2 (hbar = 1 throughout).
struct GaussianState {
    int n_modes;
    RVector mean;  // length 2n, ordering (X_1..X_n, P_1..P_n)
    RMatrix cov;   // 2n x 2n, symmetric, uncertainty-valid

    GaussianState(int n, RVector mu, RMatrix sigma);
};

/// Linear phase-space map S plus displacement d.
///
/// Convention: applying a map to a state (apply_map) transports statistics of
/// the state evolved by the corresponding Gaussian unitary,
///   mean -> S mean + d,   cov -> S cov S^T.
/// Equivalently S is the matrix of the Heisenberg input-output relation of
/// that unitary, and the image of an observable direction c under the same
/// conjugation is S^T c (conjugate_observable in dynamics).
struct SymplecticMap {
    int n_modes;
    RMatrix S;  // 2n x 2n, S Omega S^T = Omega
    RVector d;  // length 2n

    SymplecticMap(int n, RMatrix s, RVector disp);
};

/// Hermitian quadratic Hamiltonian H = (1/2) r^T A r + b^T r.
struct QuadraticGenerator {
    int n_modes;
    RMatrix A;  // 2n x 2n symmetric
    RVector b;  // length 2n
    std::string label;

    QuadraticGenerator(int n, RMatrix a, RVector bvec, std::string name = "");
};

GaussianState vacuum_state(int n_modes);

/// Flow of the generator for time t: S = exp(t Omega A), d the accumulated
/// displacement from b (zero when b = 0). This is the state map of the
/// unitary generated by g over time t.
SymplecticMap symplectic_of_generator(const QuadraticGenerator& g, double t);

GaussianState apply_map(const GaussianState& s, const SymplecticMap& m);

/// Variance of the linear observable c^T r in state s, i.e. c^T cov c.
double quad_variance(const GaussianState& s, const RVector& c);

/// Fidelity |<psi1|psi2>|^2 for pure states. Requires det(2 cov) = 1 to 1e-8
/// on both inputs.
double overlap(const GaussianState& s1, const GaussianState& s2);

/// compose(after, before): the map applying `before` first.
SymplecticMap compose(const SymplecticMap& after, const SymplecticMap& before);
SymplecticMap inverse_map(const SymplecticMap& m);
SymplecticMap identity_map(int n_modes);

/// Tensor product: `a` occupies the leading modes, `b` the trailing ones.
GaussianState tensor_product(const GaussianState& a, const GaussianState& b);

/// || S Omega S^T - Omega ||_inf, the symplectic-invariant residual.
double symplectic_residual(const RMatrix& S);

/// det(2 cov); equals 1 for pure states.
double purity_det(const GaussianState& s);

// Common observable directions as coefficient vectors (length 2n).
RVector direction_total_P(int n_modes);
RVector direction_total_X(int n_modes);
/// Collective X-hat = (1/sqrt(2n)) sum_k X_k.
RVector direction_collective_X(int n_modes);
/// Collective Y-hat = (1/sqrt(2n)) sum_k P_k.
RVector direction_collective_Y(int n_modes);
/// X_1 - X_i.
RVector direction_relative_X(int n_modes, int i);
/// P_1 - P_i.
RVector direction_relative_P(int n_modes, int i);

/// First and second moments of a truncated Fock state, in the Gaussian
/// ordering. Used for cross-engine agreement checks.
std::pair<RVector, RMatrix> fock_moments(const FockVector& v);

}  // namespace mesq
