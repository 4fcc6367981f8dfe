#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mesq/fock.hpp"
#include "mesq/gaussian.hpp"

namespace mesq {

/// Label of an entangled eigenstate family.
///   PChi: eigenvalues (p; chi_2..chi_n) of (total momentum; relative coordinates X_1 - X_i).
///   ChiP: eigenvalues (chi; p_2..p_n) of (total coordinate; relative momenta P_1 - P_i).
enum class LabelVariant { PChi, ChiP };

struct StateLabel {
    LabelVariant variant;
    double scalar;  // p for PChi, chi for ChiP
    RVector rest;   // chi_2..chi_n or p_2..p_n

    StateLabel(LabelVariant v, double s, RVector r);
    static StateLabel zero(LabelVariant v, int n);
    int n_modes() const { return static_cast<int>(rest.size()) + 1; }
};

/// Mode displacement amplitudes of the exponential state construction:
///   PChi: y_1 = (sqrt(2)/n)(i p + sum_k chi_k),  y_i = y_1 - sqrt(2) chi_i
///   ChiP: y_1 = (sqrt(2)/n)(chi + i sum_k p_k),  y_i = y_1 - i sqrt(2) p_i.
CVector displacement_y(const StateLabel& label, int n);

/// Scalar 1/(sqrt(n) pi^(n/4)) of the closed-form construction. Kept as
/// metadata: the ideal states are non-normalizable, so residual checks never
/// use it; the factorization phase check does.
double ideal_norm_prefactor(int n);

/// Quadratic coefficient matrix of the construction exponent: off-diagonal
/// 2/n and diagonal -(n-2)/n for PChi, negated for ChiP.
RMatrix ideal_quadratic_matrix(LabelVariant variant, int n);

/// Unnormalized truncation of the ideal entangled state: the coefficient
/// vector of exp[-(1/4) sum |y_j|^2] exp[sum_j y_j a_j^+ + (1/2) a^+ M a^+]
/// applied to vacuum. The creation-only series is exact per Fock level; the
/// power series is run to order n(d-1)+2 and the tail asserted to vanish.
FockVector ideal_entangled_vector(const FockSpace& space, const StateLabel& label);

struct ResidualEntry {
    std::string name;
    double ratio;
};

/// Projected eigen-equation residual ratios of an ideal vector:
/// || Pi_k ((O - o) v) || / || Pi_k v || with k = cutoff - 3, for each
/// defining operator O of the label family. Throws when the projected norm
/// falls below 1e-12 (cutoff too small to carry the label).
std::vector<ResidualEntry> eigen_residual(const FockVector& v, const StateLabel& label);

enum class FactorKind { Coordinate, Momentum };

/// Unnormalized ideal single-mode eigenstate embedded on `mode`:
///   coordinate: pi^(-1/4) exp(-x^2/2 + sqrt(2) x a^+ - a^+2/2) |0>
///   momentum:   pi^(-1/4) exp(-p^2/2 + i sqrt(2) p a^+ + a^+2/2) |0>.
FockVector factor_eigenstate_ideal(const FockSpace& space, int mode, double value,
                                   FactorKind kind);

/// Finite-squeezing stand-in: single-mode Gaussian with <X> = value (or
/// <P> = value) and variance e^(-2r)/2 in the squeezed quadrature.
GaussianState factor_eigenstate_gaussian(double value, FactorKind kind, double r);

/// Generator H = X_1 sum_{k>=2} P_k of the entangling interaction.
QuadraticGenerator entangling_generator(int n);

/// Phase-space map sending a product of factor states into the entangled
/// family (X_k -> X_k + X_1 for k >= 2, P_1 -> P_1 - sum_{k>=2} P_k). The
/// flow is nilpotent of index 2, so S = I + Omega A exactly.
SymplecticMap entangling_map(int n);

/// Fock unitary exp(i X_1 sum_{k>=2} P_k); maps the entangled state to the
/// factorized product (up to the label-dependent scalar phase).
FockOperator entangling_unitary(const FockSpace& space);

/// Finitely squeezed Gaussian stand-in for the ideal entangled state. The
/// means reproduce the label eigenvalues exactly, independent of r.
struct RegularizedState {
    GaussianState gaussian;
    double r;
    StateLabel label;
};

RegularizedState regularized_entangled_state(int n, const StateLabel& label, double r);

/// Secondary regularization for n = 2 cross-checks: the construction
/// exponent with its quadratic part scaled by tanh(r). At zero label this is
/// the two-mode squeezed vacuum, up to normalization.
FockVector tanh_scaled_entangled_vector(const FockSpace& space, const StateLabel& label,
                                        double r);

/// Completeness-relation quadrature for n = 2: integrates
/// |p,chi><p,chi| h^2 over the grid [-L,L]^2 of regularized states at
/// squeezing r, calibrates the measure on the vacuum matrix element, and
/// reports the max-abs deviation of the lowest per-mode-occupation <= 1
/// block (|00>,|01>,|10>,|11>) from the identity.
struct CompletenessResult {
    double r;
    double deviation;
    bool grid_warning;  // set when h exceeds half the e^(-r) peak width
};

CompletenessResult completeness_quadrature_check(double r, int cutoff, double extent,
                                                 double step);

}  // namespace mesq
