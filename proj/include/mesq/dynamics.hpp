#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mesq/fock.hpp"
#include "mesq/gaussian.hpp"

namespace mesq {

/// Squeeze parameters (lambda_1 .. lambda_n).
struct SqueezeParams {
    RVector lambdas;

    explicit SqueezeParams(RVector l);
    static SqueezeParams uniform(int n, double lambda);
    int n_modes() const { return static_cast<int>(lambdas.size()); }
};

/// Two-mode splitter a_i -> a_i cos t + a_j sin t, a_j -> a_i sin t - a_j cos t
/// (an orthogonal, determinant -1 block acting identically on X and P).
struct BeamSplitterSpec {
    int i;
    int j;
    double theta;

    BeamSplitterSpec(int i_, int j_, double theta_);
};

/// Pairwise down-conversion pump: coupling x amplitude product and time.
struct PumpSpec {
    double beta_chi;
    double t;

    PumpSpec(double bc, double time);
};

SymplecticMap beam_splitter_map(const BeamSplitterSpec& spec, int n_modes);
FockOperator beam_splitter_fock(const FockSpace& space, const BeamSplitterSpec& spec);

/// Distribution network B_{n-1,n}(pi/4) B_{n-2,n-1}(acos 1/sqrt(3)) ... B_{12}(acos 1/sqrt(n)),
/// rightmost factor applied first.
SymplecticMap vlb_network(int n);

/// Which eigenstate family generate_epr approximates at large r.
enum class EprVariant { PChiZero, ChiPZero };

/// Network output for n squeezed inputs at squeezing r. PChiZero squeezes
/// mode 1 in momentum and modes 2..n in position; ChiPZero swaps the roles.
GaussianState generate_epr(int n, double r, EprVariant variant);

/// Quadratic form of the squeeze exponent
///   (1/n) [lambda_1 P sum_k X_k + sum_{k>=2} lambda_k Q_k (n P_k - P)]
/// after Weyl symmetrization (the written products differ from it only by the
/// c-number that cancels against -(1/2) sum lambda_k).
QuadraticGenerator squeeze_generator(const SqueezeParams& params);

/// The n mutually commuting generator pieces, for commutativity checks.
std::vector<QuadraticGenerator> squeeze_generator_pieces(int n);

/// State map of the squeeze unitary: applying it to a state produces the
/// squeezed state's statistics (collective-X variance shrinks for lambda > 0).
/// The conjugation laws of the inverse direction are checked through
/// conjugate_observable on inverse_map.
SymplecticMap squeeze_Sn(const SqueezeParams& params);

/// Exponent of the Fock-engine squeeze with operator products ordered exactly
/// as written in the generator, plus the compensating c-number. Anti-Hermitian
/// away from the truncation lid (assert on an interior box).
FockOperator squeeze_Sn_fock_exponent(const FockSpace& space, const SqueezeParams& params);

/// The same exponent assembled from Weyl-symmetrized products. Coincides with
/// squeeze_Sn_fock_exponent on the interior and is exactly anti-Hermitian
/// even as a truncated matrix, so it is what gets exponentiated.
FockOperator squeeze_Sn_fock_skew(const FockSpace& space, const SqueezeParams& params);

FockOperator squeeze_Sn_fock(const FockSpace& space, const SqueezeParams& params);

/// Matrix-free action of squeeze_Sn_fock_skew on a block of row vectors.
CMatrix squeeze_skew_apply(const FockSpace& space, const SqueezeParams& params,
                           const CMatrix& block);

/// Coefficient vector of the observable c^T r conjugated through the map
/// (S^T c), plus the scalar shift contributed by the displacement (d^T c).
std::pair<RVector, double> conjugate_observable(const SymplecticMap& m, const RVector& c);

/// Variances of the squeezed vacuum built from the all-equal squeeze.
struct SqueezedVacuumStats {
    double lambda;
    double var_collective_X;       // (1/sqrt(2n)) sum X_k
    double var_collective_Y;       // (1/sqrt(2n)) sum P_k
    double uncertainty_product;    // sqrt(var_X var_Y)
    double var_total_X;            // sum X_k, unnormalized
    double var_relative_P;         // P_1 - P_2 (n >= 2)
    std::optional<double> fock_closed_form_norm;  // norm of the closed-form
                                                  // squeezed vacuum at the cutoff
};

SqueezedVacuumStats squeezed_vacuum_stats(int n, double lambda,
                                          std::optional<int> fock_cutoff = std::nullopt);

/// H = -(i/2) rate1 a^+ Gp a~^+ + (i/2) rate2 a^+ Gpp a~^+ + h.c., written as
/// a quadrature generator. rate1 and rate2 are d(lambda_1)/dt and
/// d(lambda_k)/dt for the all-equal tail.
QuadraticGenerator hamiltonian_HI(int n, double rate1, double rate2);

/// Pairwise concurrent down-conversion i beta_chi sum_{i<j} a_i^+ a_j^+ + h.c.
QuadraticGenerator pfister_hamiltonian(int n, double beta_chi);

/// Scaling factors of observable directions under the Heisenberg flow
/// exp(t Omega A), extracted by exact eigen-analysis of (Omega A)^T.
struct RateEntry {
    std::string direction;
    bool is_eigendirection;
    double rate;    // eigenvalue mu when eigendirection
    double factor;  // exp(t mu) when eigendirection
    RVector image;  // full image vector when not
};

struct RateReport {
    double t;
    std::vector<RateEntry> entries;
};

RateReport heisenberg_rates(const QuadraticGenerator& g, const PumpSpec& pump);

}  // namespace mesq
