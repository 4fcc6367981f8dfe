#pragma once

#include <string>
#include <utility>

#include "mesq/fock.hpp"

namespace mesq {

/// Closed-form structure matrices indexed by mode count n:
///   N    (n-1)x(n-1): diag (n-1)/n, off-diag -1/n
///   F    (n-1)x(n-1): diag (n-1)/(2n), off-diag -1/(2n)
///   Finv (n-1)x(n-1): diag 4, off-diag 2;  F * Finv = I
///   G    n x n: diag 1 - 2/n, off-diag -2/n;  G^2 = I
///   Gp   n x n: all entries 1/n;  rank-1 projector
///   Gpp  n x n: diag (n-1)/n, off-diag -1/n;  rank n-1 projector
/// with Gp + Gpp = I and G = I - 2 Gp.
enum class StructureKind { N, F, Finv, G, Gp, Gpp };

RMatrix structure_matrix(StructureKind kind, int n);

/// The three quadratic realizations, named by their structure matrix.
enum class Su11Realization { G, Gp, Gpp };

std::string realization_name(Su11Realization r);
RMatrix realization_matrix(Su11Realization r, int n);

/// K_+ = (1/2) sum_ij M_ij a_i^+ a_j^+ with M in {G, Gp, Gpp}; K_- = K_+^+;
/// K_0 = (1/2) a^+ a~ + n/4      (realization G)
///     = (1/2) a^+ Gp a~ + 1/4   (realization Gp)
///     = (1/2) a^+ Gpp a~ + (n-1)/4  (realization Gpp).
/// The triple closes as [K_-, K_+] = 2 K_0, [K_0, K_+-] = +- K_+-.
struct Su11Triple {
    FockOperator k_plus;
    FockOperator k_minus;
    FockOperator k_zero;
    Su11Realization realization;
};

Su11Triple su11_generators(const FockSpace& space, Su11Realization realization);

/// Additive constant of K_0 for a realization (n/4, 1/4, (n-1)/4).
double su11_k0_constant(Su11Realization realization, int n);

/// Direct and factored forms of the squeeze built from a realization:
///   direct   = exp[sign * lambda (K_+ - K_-)]
///   factored = exp(sign K_+ tanh l) exp(2 K_0 ln sech l) exp(-sign K_- tanh l).
/// Dense evaluation; meant for dimensions up to a few thousand.
/// Requires |lambda| <= 1 (range error otherwise).
std::pair<FockOperator, FockOperator> disentangled_squeeze(const FockSpace& space,
                                                           Su11Realization realization,
                                                           double lambda, int sign);

/// Frobenius norms of the difference between the direct form and the two
/// trailing-sign factored variants, restricted to the box of per-mode
/// occupation <= box_bound, computed column-wise without materializing the
/// full operators. `trailing_minus` is the pattern above; `trailing_plus`
/// flips the sign of the last factor (kept so a verification suite can
/// report which convention closes). The box bound is per-mode because
/// cutoff contamination of the direct exponential is governed by the
/// smallest per-mode headroom, one tanh(lambda) factor per pair raise.
struct DisentangleResiduals {
    double trailing_minus;
    double trailing_plus;
};

DisentangleResiduals disentangle_box_residuals(const FockSpace& space,
                                               Su11Realization realization, double lambda,
                                               int sign, int box_bound);

}  // namespace mesq
