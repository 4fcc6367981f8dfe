#include "mesq/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "mesq/algebra.hpp"
#include "mesq/dynamics.hpp"
#include "mesq/fock.hpp"
#include "mesq/gaussian.hpp"
#include "mesq/states.hpp"

namespace mesq {

namespace {

CMatrix gather_rows(const CMatrix& m, const std::vector<long>& rows) {
    CMatrix out(static_cast<long>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = m.row(rows[i]);
    return out;
}

CMatrix gather_cols(const CMatrix& m, const std::vector<long>& cols) {
    CMatrix out(m.rows(), static_cast<long>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = m.col(cols[j]);
    return out;
}

CMatrix gather_block(const CMatrix& m, const std::vector<long>& idx) {
    CMatrix out(static_cast<long>(idx.size()), static_cast<long>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

/// Pi [A, B] Pi over the index set: the inner sum is unrestricted, so the
/// projected commutator equals (Pi A)(B Pi) - (Pi B)(A Pi).
CMatrix projected_commutator(const CMatrix& a, const CMatrix& b, const std::vector<long>& idx) {
    return gather_rows(a, idx) * gather_cols(b, idx) -
           gather_rows(b, idx) * gather_cols(a, idx);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(x.size());
    for (int i = 0; i < m; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double tol_or(const SuiteParams& p, double fallback) {
    return p.tol > 0.0 ? p.tol : fallback;
}

StateLabel random_label(LabelVariant variant, int n, SeededRng& rng) {
    RVector rest(n - 1);
    for (int i = 0; i < n - 1; ++i) rest(i) = rng.uniform(-1.5, 1.5);
    return StateLabel(variant, rng.uniform(-1.5, 1.5), std::move(rest));
}

double max_eigen_residual(const FockVector& v, const StateLabel& label) {
    double worst = 0.0;
    for (const auto& entry : eigen_residual(v, label)) worst = std::max(worst, entry.ratio);
    return worst;
}

/// Fock matrix of H = (1/2) r^T A r + b^T r in quadrature operators.
CMatrix fock_hamiltonian(const FockSpace& space, const QuadraticGenerator& g) {
    const int n = space.n_modes();
    std::vector<CMatrix> r(2 * n);
    for (int m = 1; m <= n; ++m) {
        auto [x, pq] = quadratures(space, m);
        r[m - 1] = std::move(x.matrix);
        r[n + m - 1] = std::move(pq.matrix);
    }
    CMatrix h = CMatrix::Zero(space.dimension(), space.dimension());
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j)
            if (g.A(i, j) != 0.0) h += 0.5 * g.A(i, j) * (r[i] * r[j]);
        if (g.b(i) != 0.0) h += g.b(i) * r[i];
    }
    return h;
}

void merge_into(VerificationReport& all, const VerificationReport& part) {
    for (const auto& c : part.checks)
        all.checks.push_back({part.suite + "/" + c.name, c.value, c.tolerance, c.pass,
                              c.provenance});
}

template <typename Fn>
VerificationReport timed(const std::string& suite, const SuiteParams& p, Fn&& body) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.suite = suite;
    report.n = p.n;
    report.cutoff = p.cutoff;
    report.seed = p.seed;
    body(report);
    report.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return report;
}

}  // namespace

VerificationReport suite_matrices(const SuiteParams& p) {
    return timed("matrices", p, [&](VerificationReport& rep) {
        std::vector<int> ns;
        if (p.n >= 2) ns.push_back(p.n);
        else for (int n = 2; n <= 8; ++n) ns.push_back(n);
        const double tol_inv = tol_or(p, 1e-12);
        const double tol_proj = tol_or(p, 1e-14);
        for (int n : ns) {
            const std::string tag = "_n" + std::to_string(n);
            const RMatrix f = structure_matrix(StructureKind::F, n);
            const RMatrix finv = structure_matrix(StructureKind::Finv, n);
            const RMatrix g = structure_matrix(StructureKind::G, n);
            const RMatrix gp = structure_matrix(StructureKind::Gp, n);
            const RMatrix gpp = structure_matrix(StructureKind::Gpp, n);
            const RMatrix big_n = structure_matrix(StructureKind::N, n);
            const RMatrix eye_m = RMatrix::Identity(n - 1, n - 1);
            const RMatrix eye_n = RMatrix::Identity(n, n);
            rep.add("FFinv" + tag, (f * finv - eye_m).cwiseAbs().maxCoeff(), tol_inv,
                    "F*Finv = I");
            rep.add("G_squared" + tag, (g * g - eye_n).cwiseAbs().maxCoeff(), tol_proj,
                    "G^2 = I");
            rep.add("Gp_idempotent" + tag, (gp * gp - gp).cwiseAbs().maxCoeff(), tol_proj,
                    "Gp^2 = Gp");
            rep.add("Gpp_idempotent" + tag, (gpp * gpp - gpp).cwiseAbs().maxCoeff(), tol_proj,
                    "Gpp^2 = Gpp");
            rep.add("Gp_Gpp_orthogonal" + tag, (gp * gpp).cwiseAbs().maxCoeff(), tol_proj,
                    "Gp*Gpp = 0");
            rep.add("Gp_Gpp_resolution" + tag, (gp + gpp - eye_n).cwiseAbs().maxCoeff(),
                    tol_proj, "Gp + Gpp = I");
            rep.add("G_from_Gp" + tag, (g - (eye_n - 2.0 * gp)).cwiseAbs().maxCoeff(),
                    tol_proj, "G = I - 2 Gp");
            rep.add("N_is_2F" + tag, (big_n - 2.0 * f).cwiseAbs().maxCoeff(), tol_proj,
                    "N = 2F");
            // Spectrum of G: +1 with multiplicity n-1 and a single -1.
            Eigen::SelfAdjointEigenSolver<RMatrix> es(g, Eigen::EigenvaluesOnly);
            RVector expected(n);
            expected(0) = -1.0;
            expected.tail(n - 1).setOnes();
            rep.add("G_spectrum" + tag, (es.eigenvalues() - expected).cwiseAbs().maxCoeff(),
                    tol_or(p, 1e-12), "spec(G) = {-1, +1 x (n-1)}");
        }
    });
}

VerificationReport suite_su11(const SuiteParams& p) {
    return timed("su11", p, [&](VerificationReport& rep) {
        std::vector<int> ns;
        if (p.n >= 2) ns.push_back(p.n);
        else { ns.push_back(2); ns.push_back(3); }
        const double tol = tol_or(p, 1e-10);
        for (int n : ns) {
            const int d = p.cutoff > 0 ? p.cutoff : 12;
            const FockSpace space(n, d);
            const auto low = low_subspace_indices(space, d - 4);
            const std::string tag = "_n" + std::to_string(n);
            for (auto realization :
                 {Su11Realization::G, Su11Realization::Gp, Su11Realization::Gpp}) {
                const Su11Triple k = su11_generators(space, realization);
                const std::string rn = realization_name(realization);
                rep.add("adjoint_" + rn + tag,
                        (k.k_minus.matrix - k.k_plus.matrix.adjoint()).cwiseAbs().maxCoeff(),
                        0.0, "K- = K+^dagger");
                rep.add("k0_vacuum_" + rn + tag,
                        std::abs(k.k_zero.matrix(0, 0) -
                                 su11_k0_constant(realization, n)),
                        tol_or(p, 1e-14), "<0|K0|0> = K0 constant");
                const CMatrix c1 = projected_commutator(k.k_minus.matrix, k.k_plus.matrix, low) -
                                   2.0 * gather_block(k.k_zero.matrix, low);
                const CMatrix c2 = projected_commutator(k.k_zero.matrix, k.k_plus.matrix, low) -
                                   gather_block(k.k_plus.matrix, low);
                const CMatrix c3 = projected_commutator(k.k_zero.matrix, k.k_minus.matrix, low) +
                                   gather_block(k.k_minus.matrix, low);
                rep.add("closure_raise_lower_" + rn + tag, c1.norm(), tol,
                        "[K-,K+] = 2K0 (" + rn + ")");
                rep.add("closure_k0_plus_" + rn + tag, c2.norm(), tol,
                        "[K0,K+] = K+ (" + rn + ")");
                rep.add("closure_k0_minus_" + rn + tag, c3.norm(), tol,
                        "[K0,K-] = -K- (" + rn + ")");
            }
        }
    });
}

VerificationReport suite_bch(const SuiteParams& p) {
    return timed("bch", p, [&](VerificationReport& rep) {
        std::vector<int> ns;
        if (p.n >= 2) ns.push_back(p.n);
        else { ns.push_back(2); ns.push_back(3); }
        const double tol = tol_or(p, 1e-8);
        const double lambda = 0.3;
        for (int n : ns) {
            const int d = p.cutoff > 0 ? p.cutoff : 16;
            const FockSpace space(n, d);
            // Comparison box per mode count: each pair raise toward the lid
            // costs one factor of tanh(lambda), so the bound keeps enough
            // headroom for the direct exponential to be converged past tol.
            const int box = n == 2 ? 4 : 3;
            const std::string tag = "_n" + std::to_string(n);
            rep.add("factorization_G" + tag,
                    disentangle_box_residuals(space, Su11Realization::G, lambda, +1, box)
                        .trailing_minus,
                    tol, "exp[l(K+-K-)] = exp(K+ th l) exp(2K0 ln sech l) exp(-K- th l)");
            rep.add("factorization_Gp" + tag,
                    disentangle_box_residuals(space, Su11Realization::Gp, lambda, -1, box)
                        .trailing_minus,
                    tol, "exp[-l(K+-K-)] = exp(-K+ th l) exp(2K0 ln sech l) exp(K- th l) (Gp)");
            const auto gpp =
                disentangle_box_residuals(space, Su11Realization::Gpp, lambda, +1, box);
            rep.add("factorization_Gpp" + tag, gpp.trailing_minus, tol,
                    "exp[l(K+-K-)] factorization with trailing exp(-K- th l) (Gpp)");
            rep.note("factorization_Gpp_alt_sign" + tag, gpp.trailing_plus,
                     "residual of the trailing exp(+K- th l) convention (recorded)");
            rep.note("Gpp_trailing_sign_finding" + tag,
                     gpp.trailing_minus < gpp.trailing_plus ? -1.0 : +1.0,
                     "trailing K- factor sign that closes the factorization");
        }
        // Dense route agrees with the column-wise route at small dimension.
        {
            const FockSpace space(2, 12);
            auto [direct, factored] =
                disentangled_squeeze(space, Su11Realization::G, lambda, +1);
            const auto box = box_subspace_indices(space, 3);
            const double dense_resid =
                gather_block(CMatrix(direct.matrix - factored.matrix), box).norm();
            const double thin_resid =
                disentangle_box_residuals(space, Su11Realization::G, lambda, +1, 3)
                    .trailing_minus;
            rep.add("dense_thin_agreement_n2", std::abs(dense_resid - thin_resid),
                    tol_or(p, 1e-10), "dense and column-wise factorization residuals agree");
        }
    });
}

VerificationReport suite_eigen(const SuiteParams& p) {
    return timed("eigen", p, [&](VerificationReport& rep) {
        std::vector<int> ns;
        if (p.n >= 2) ns.push_back(p.n);
        else { ns.push_back(2); ns.push_back(3); }
        const double tol = tol_or(p, 1e-10);
        SeededRng rng(p.seed);
        for (int n : ns) {
            const int d = p.cutoff > 0 ? p.cutoff : (n == 2 ? 14 : 10);
            const FockSpace space(n, d);
            const std::string tag = "_n" + std::to_string(n);
            for (int trial = 0; trial < 20; ++trial) {
                const StateLabel lp = random_label(LabelVariant::PChi, n, rng);
                rep.add("pchi_label" + std::to_string(trial) + tag,
                        max_eigen_residual(ideal_entangled_vector(space, lp), lp), tol,
                        "P|p,chi> = p|p,chi>, (X1-Xi)|p,chi> = chi_i|p,chi>");
                const StateLabel lc = random_label(LabelVariant::ChiP, n, rng);
                rep.add("chip_label" + std::to_string(trial) + tag,
                        max_eigen_residual(ideal_entangled_vector(space, lc), lc), tol,
                        "sumX|chi,p> = chi|chi,p>, (P1-Pi)|chi,p> = p_i|chi,p>");
            }
            // Negative control: a wrong eigenvalue must leave a large residual.
            const StateLabel good(LabelVariant::PChi, 1.0, RVector::Zero(n - 1));
            const StateLabel bad(LabelVariant::PChi, 2.0, RVector::Zero(n - 1));
            const double wrong = max_eigen_residual(ideal_entangled_vector(space, good), bad);
            rep.add("wrong_label_detected" + tag, std::max(0.0, 0.5 - wrong), 0.0,
                    "non-eigenvalue residual ratio >= 0.5");
        }
    });
}

VerificationReport suite_entangle(const SuiteParams& p) {
    return timed("entangle", p, [&](VerificationReport& rep) {
        const double tol = tol_or(p, 1e-8);
        // Factorization through the entangling unitary, label (p=1, chi2=0.5).
        {
            const StateLabel label(LabelVariant::PChi, 1.0, RVector::Constant(1, 0.5));
            const Complex target = std::exp(Complex(0.0, -1.0 * 0.5 / 2.0));
            // Both sides are non-normalizable ideal states, so their box
            // representations converge to any given tolerance only on blocks
            // with enough headroom below the cutoff.
            auto factorize = [&](int d, int k) {
                const FockSpace space(2, d);
                const FockSpace one(1, d);
                FockVector v = ideal_entangled_vector(space, label);
                v.coeffs *= ideal_norm_prefactor(2);
                const CVector lhs = entangling_unitary(space).matrix * v.coeffs;
                const CVector u1 =
                    factor_eigenstate_ideal(one, 1, 1.0, FactorKind::Momentum).coeffs;
                const CVector u2 =
                    factor_eigenstate_ideal(one, 1, -0.5, FactorKind::Coordinate).coeffs;
                CVector rhs(space.dimension());
                for (int i = 0; i < d; ++i)
                    rhs.segment(static_cast<long>(i) * d, d) = u1(i) * u2;
                const CVector pl = low_subspace_project(FockVector(space, lhs), k).coeffs;
                const CVector pr = low_subspace_project(FockVector(space, rhs), k).coeffs;
                const Complex cross = pr.dot(pl);
                const double deficit = 1.0 - std::abs(cross) / (pl.norm() * pr.norm());
                return std::make_pair(deficit, Complex(cross / pr.squaredNorm()));
            };
            const int d = p.cutoff > 0 ? p.cutoff : 14;
            const auto [deficit14, scalar14] = factorize(d, 1);
            rep.add("factorized_overlap_deficit", deficit14, tol,
                    "exp(i X1 sumP)|p,chi> prop |p>(x)|-chi_2>");
            rep.note("factorization_phase_at_overlap_cutoff", std::abs(scalar14 - target),
                     "phase error at the overlap cutoff (converges ~ e^{-0.7 d}, recorded)");
            // The scalar is checked separately at a cutoff deep enough for
            // the extraction itself to be converged past the tolerance.
            const auto [deficit26, scalar26] = factorize(26, 4);
            rep.add("factorization_phase", std::abs(scalar26 - target), tol,
                    "scalar = exp(-i p/n sum chi_k)");
            rep.add("factorized_overlap_deficit_deep", deficit26, tol,
                    "factorization overlap at the phase-check cutoff");
            const FockSpace space(2, d);
            const FockOperator u_ent = entangling_unitary(space);
            const CMatrix uu = u_ent.matrix.adjoint() * u_ent.matrix;
            rep.add("entangling_unitarity",
                    gather_block(CMatrix(uu - CMatrix::Identity(space.dimension(),
                                                                space.dimension())),
                                 low_subspace_indices(space, d - 4))
                        .norm(),
                    tol_or(p, 1e-9), "U^dagger U = I");
        }
        // The entangling map is the nilpotent Hamiltonian flow.
        for (int n : {2, 3}) {
            const SymplecticMap direct = entangling_map(n);
            const SymplecticMap flowed = symplectic_of_generator(entangling_generator(n), 1.0);
            rep.add("entangling_map_flow_n" + std::to_string(n),
                    (direct.S - flowed.S).cwiseAbs().maxCoeff(), tol_or(p, 1e-13),
                    "X_k -> X_k + X_1, P_1 -> P_1 - sumP under the X1·sumP flow");
        }
        // Variance decay of the network-generated families.
        {
            std::vector<int> ns;
            if (p.n >= 2) ns.push_back(p.n);
            else { ns.push_back(2); ns.push_back(3); ns.push_back(4); }
            std::vector<double> rs;
            for (double r = 0.0; r <= 3.0 + 1e-9; r += 0.5) rs.push_back(r);
            for (int n : ns) {
                const std::string tag = "_n" + std::to_string(n);
                std::vector<double> log_p, log_q, log_x, log_relp;
                for (double r : rs) {
                    const GaussianState pchi = generate_epr(n, r, EprVariant::PChiZero);
                    const GaussianState chip = generate_epr(n, r, EprVariant::ChiPZero);
                    log_p.push_back(std::log(quad_variance(pchi, direction_total_P(n))));
                    log_q.push_back(std::log(quad_variance(pchi, direction_relative_X(n, 2))));
                    log_x.push_back(std::log(quad_variance(chip, direction_total_X(n))));
                    log_relp.push_back(std::log(quad_variance(chip, direction_relative_P(n, 2))));
                }
                rep.add("epr_slope_totalP" + tag, std::abs(fit_slope(rs, log_p) + 2.0), 0.01,
                        "Var(sumP) ~ e^{-2r} at the network output");
                rep.add("epr_slope_Q2" + tag, std::abs(fit_slope(rs, log_q) + 2.0), 0.01,
                        "Var(X1-X2) ~ e^{-2r} at the network output");
                rep.add("epr_slope_totalX" + tag, std::abs(fit_slope(rs, log_x) + 2.0), 0.01,
                        "Var(sumX) ~ e^{-2r} for the conjugate variant");
                rep.add("epr_slope_relP2" + tag, std::abs(fit_slope(rs, log_relp) + 2.0), 0.01,
                        "Var(P1-P2) ~ e^{-2r} for the conjugate variant");
                const GaussianState at0 = generate_epr(n, 0.0, EprVariant::PChiZero);
                rep.add("epr_vacuum_at_r0" + tag,
                        (at0.cov - 0.5 * RMatrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff(),
                        tol_or(p, 1e-12), "passive network maps vacuum to vacuum");
            }
        }
        // Overlap peaking: width of the overlap against one label offset
        // shrinks like e^{-r}, and the profile is Gaussian.
        {
            const double delta = 0.3;
            std::vector<double> rs{0.5, 1.0, 1.5, 2.0, 2.5};
            std::vector<double> log_w;
            for (double r : rs) {
                const StateLabel base = StateLabel::zero(LabelVariant::PChi, 2);
                const StateLabel shifted(LabelVariant::PChi, 0.0, RVector::Constant(1, delta));
                const double f = overlap(regularized_entangled_state(2, base, r).gaussian,
                                         regularized_entangled_state(2, shifted, r).gaussian);
                log_w.push_back(std::log(delta / std::sqrt(-2.0 * std::log(f))));
            }
            rep.add("overlap_width_slope", std::abs(fit_slope(rs, log_w) + 1.0), 0.05,
                    "overlap width in delta-chi2 ~ e^{-r}");
            const StateLabel base = StateLabel::zero(LabelVariant::PChi, 2);
            const StateLabel s1(LabelVariant::PChi, 0.0, RVector::Constant(1, delta));
            const StateLabel s2(LabelVariant::PChi, 0.0, RVector::Constant(1, 2.0 * delta));
            const double f1 = overlap(regularized_entangled_state(2, base, 1.0).gaussian,
                                      regularized_entangled_state(2, s1, 1.0).gaussian);
            const double f2 = overlap(regularized_entangled_state(2, base, 1.0).gaussian,
                                      regularized_entangled_state(2, s2, 1.0).gaussian);
            rep.add("overlap_gaussian_profile", std::abs(f2 - std::pow(f1, 4.0)),
                    tol_or(p, 1e-10), "overlap(2 delta) = overlap(delta)^4");
        }
        // Exact label transport of the regularized construction.
        {
            SeededRng rng(p.seed + 17);
            for (int n : {2, 3}) {
                double worst = 0.0;
                for (int trial = 0; trial < 3; ++trial) {
                    for (double r : {0.0, 0.8}) {
                        const StateLabel lp = random_label(LabelVariant::PChi, n, rng);
                        const RegularizedState sp = regularized_entangled_state(n, lp, r);
                        worst = std::max(worst,
                                         std::abs(direction_total_P(n).dot(sp.gaussian.mean) -
                                                  lp.scalar));
                        for (int i = 2; i <= n; ++i)
                            worst = std::max(worst, std::abs(direction_relative_X(n, i).dot(
                                                                 sp.gaussian.mean) -
                                                             lp.rest(i - 2)));
                        const StateLabel lc = random_label(LabelVariant::ChiP, n, rng);
                        const RegularizedState sc = regularized_entangled_state(n, lc, r);
                        worst = std::max(worst,
                                         std::abs(direction_total_X(n).dot(sc.gaussian.mean) -
                                                  lc.scalar));
                        for (int i = 2; i <= n; ++i)
                            worst = std::max(worst, std::abs(direction_relative_P(n, i).dot(
                                                                 sc.gaussian.mean) -
                                                             lc.rest(i - 2)));
                    }
                }
                rep.add("label_transport_n" + std::to_string(n), worst, tol_or(p, 1e-12),
                        "<P> = p, <X1-Xi> = chi_i (and the conjugate family)");
            }
        }
        // Cross-construction fidelity at r=1 against the closed form.
        {
            const StateLabel zero = StateLabel::zero(LabelVariant::PChi, 2);
            const double fid = overlap(regularized_entangled_state(2, zero, 1.0).gaussian,
                                       generate_epr(2, 1.0, EprVariant::PChiZero));
            const double golden = 8.0 / (9.0 + std::exp(-4.0));
            rep.add("regularized_vs_network_fidelity_r1", std::abs(fid - golden),
                    tol_or(p, 1e-12),
                    "sheared-product and network regularizations: fidelity 8/(9+e^{-4r})");
        }
    });
}

VerificationReport suite_squeeze(const SuiteParams& p) {
    return timed("squeeze", p, [&](VerificationReport& rep) {
        // Conjugation law in the Gaussian engine, (0.7, 0.4, 0.2).
        {
            RVector lambdas(3);
            lambdas << 0.7, 0.4, 0.2;
            const SymplecticMap m = squeeze_Sn(SqueezeParams(lambdas));
            const SymplecticMap minv = inverse_map(m);
            auto check_dir = [&](const std::string& name, const RVector& c, double lam) {
                const RVector image = conjugate_observable(minv, c).first;
                rep.add(name, (image - std::exp(-lam) * c).cwiseAbs().maxCoeff(),
                        tol_or(p, 1e-12),
                        "squeeze conjugation scales the observable by e^{-lambda}");
            };
            check_dir("conjugation_P", direction_total_P(3), 0.7);
            check_dir("conjugation_Q2", direction_relative_X(3, 2), 0.4);
            check_dir("conjugation_Q3", direction_relative_X(3, 3), 0.2);
            // Observable image of the state map itself: the conjugate pair of
            // directions, scaled the opposite way.
            const RVector cx = direction_collective_X(3);
            const RVector img = conjugate_observable(squeeze_Sn(SqueezeParams::uniform(3, 0.5)),
                                                     cx)
                                    .first;
            rep.add("conjugation_collective_X", (img - std::exp(-0.5) * cx).cwiseAbs().maxCoeff(),
                    tol_or(p, 1e-12), "state-map image of collective X scales by e^{-lambda}");
        }
        // Fock engine agreement at half scale.
        {
            const int d = p.cutoff > 0 ? p.cutoff : 10;
            const FockSpace space(3, d);
            RVector lambdas(3);
            lambdas << 0.35, 0.2, 0.1;
            const SqueezeParams params{lambdas};
            const FockOperator exponent = squeeze_Sn_fock_exponent(space, params);
            rep.add("fock_exponent_antihermitian",
                    (exponent.matrix + exponent.matrix.adjoint()).cwiseAbs().maxCoeff(),
                    tol_or(p, 1e-12), "exponent + exponent^dagger = 0");
            const FockOperator neg(space, CMatrix(-exponent.matrix));
            const auto low = low_subspace_indices(space, 4);
            CMatrix block = CMatrix::Zero(space.dimension(), static_cast<long>(low.size()));
            for (std::size_t c = 0; c < low.size(); ++c) block(low[c], c) = 1.0;
            auto conjugated = [&](const CMatrix& obs) {
                // U O U^dagger restricted to the probe block.
                return op_exp_apply(exponent, CMatrix(obs * op_exp_apply(neg, block)));
            };
            auto fock_check = [&](const std::string& name, const CMatrix& obs, double lam) {
                const CMatrix image = conjugated(obs);
                const CMatrix expected = std::exp(-lam) * (obs * block);
                const double scale = gather_rows(CMatrix(obs * block), low).norm();
                rep.add(name, gather_rows(CMatrix(image - expected), low).norm() / scale,
                        tol_or(p, 1e-6), "Fock conjugation matches e^{-lambda} scaling");
            };
            fock_check("fock_conjugation_P", total_momentum_op(space).matrix, 0.35);
            fock_check("fock_conjugation_Q2", relative_coordinate_op(space, 2).matrix, 0.2);
            fock_check("fock_conjugation_Q3", relative_coordinate_op(space, 3).matrix, 0.1);
            // Unitarity on the low subspace via the same column route.
            const CMatrix uu = op_exp_apply(neg, op_exp_apply(exponent, block));
            rep.add("fock_unitarity_low",
                    gather_rows(CMatrix(uu - block), low).norm(), tol_or(p, 1e-8),
                    "U^dagger U = I on the low subspace");
        }
        // Dense unitarity at n=2, d=16, lambda 0.5.
        {
            const FockSpace space(2, 16);
            const FockOperator u = squeeze_Sn_fock(space, SqueezeParams::uniform(2, 0.5));
            const CMatrix uu = u.matrix.adjoint() * u.matrix;
            rep.add("fock_unitarity_dense_n2",
                    gather_block(CMatrix(uu - CMatrix::Identity(space.dimension(),
                                                                space.dimension())),
                                 low_subspace_indices(space, 10))
                        .norm(),
                    tol_or(p, 1e-8), "U^dagger U = I on the low subspace");
        }
        // All-equal case coincides with the quadratic-realization squeeze.
        for (int n : {2, 3}) {
            const double lambda = 0.4;
            const SymplecticMap via_Sn = squeeze_Sn(SqueezeParams::uniform(n, lambda));
            const RMatrix g = structure_matrix(StructureKind::G, n);
            RMatrix a = RMatrix::Zero(2 * n, 2 * n);
            a.topRightCorner(n, n) = -lambda * g;
            a.bottomLeftCorner(n, n) = -lambda * g;
            const SymplecticMap via_k =
                symplectic_of_generator(QuadraticGenerator(n, a, RVector::Zero(2 * n)), -1.0);
            rep.add("all_equal_matches_realization_n" + std::to_string(n),
                    (via_Sn.S - via_k.S).cwiseAbs().maxCoeff(), tol_or(p, 1e-10),
                    "uniform squeeze = exp[l(K+-K-)] flow (realization G)");
        }
        // Inverse composition.
        {
            RVector lambdas(3);
            lambdas << 0.7, 0.4, 0.2;
            const SymplecticMap fwd = squeeze_Sn(SqueezeParams(lambdas));
            const SymplecticMap bwd = squeeze_Sn(SqueezeParams(RVector(-lambdas)));
            rep.add("inverse_composition",
                    (compose(fwd, bwd).S - RMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(),
                    tol_or(p, 1e-10), "squeeze(l) o squeeze(-l) = identity");
        }
        // Mutual commutativity of the generator pieces.
        {
            const int n = 3;
            const auto pieces = squeeze_generator_pieces(n);
            const RMatrix omega = symplectic_form(n);
            double worst = 0.0;
            for (std::size_t i = 0; i < pieces.size(); ++i)
                for (std::size_t j = i + 1; j < pieces.size(); ++j)
                    worst = std::max(worst, (pieces[i].A * omega * pieces[j].A -
                                             pieces[j].A * omega * pieces[i].A)
                                                .cwiseAbs()
                                                .maxCoeff());
            rep.add("pieces_poisson_commute", worst, tol_or(p, 1e-13),
                    "generator pieces Poisson-commute");
            const FockSpace space(2, 10);
            const CMatrix sum_x = total_position_op(space).matrix;
            const CMatrix sum_p = total_momentum_op(space).matrix;
            const CMatrix piece1 = sum_p * sum_x;
            const CMatrix piece2 =
                relative_coordinate_op(space, 2).matrix *
                (2.0 * quadratures(space, 2).second.matrix - sum_p);
            const auto low = low_subspace_indices(space, 6);
            rep.add("pieces_fock_commute",
                    projected_commutator(piece1, piece2, low).norm(), tol_or(p, 1e-10),
                    "generator pieces commute as operators");
        }
        // Squeezed-vacuum statistics across the lambda grid.
        {
            for (double lambda : {0.0, 0.25, 0.5, 1.0}) {
                const auto stats = squeezed_vacuum_stats(3, lambda);
                const std::string tag = "_l" + std::to_string(lambda);
                rep.add("var_collective_X" + tag,
                        std::abs(stats.var_collective_X - 0.25 * std::exp(-2.0 * lambda)),
                        tol_or(p, 1e-12), "Var(collective X) = e^{-2l}/4");
                rep.add("var_collective_Y" + tag,
                        std::abs(stats.var_collective_Y - 0.25 * std::exp(2.0 * lambda)),
                        tol_or(p, 1e-12), "Var(collective Y) = e^{2l}/4");
                rep.add("uncertainty_product" + tag,
                        std::abs(stats.uncertainty_product - 0.25), tol_or(p, 1e-12),
                        "DX DY = 1/4");
            }
            const auto fock_stats = squeezed_vacuum_stats(2, 0.4, 20);
            rep.add("closed_form_norm", std::abs(*fock_stats.fock_closed_form_norm - 1.0),
                    tol_or(p, 1e-6), "sech^{n/2}(l) exp(K+ tanh l)|vac> has unit norm");
        }
        // Cross-engine agreement for seeded Gaussian unitaries.
        {
            SeededRng rng(p.seed + 101);
            const int n = 2;
            const FockSpace space(n, 20);
            const GaussianState vac_g = vacuum_state(n);
            const CVector vac_f = vacuum_vector(space).coeffs;
            for (int trial = 0; trial < 5; ++trial) {
                RMatrix a(2 * n, 2 * n);
                for (int i = 0; i < 2 * n; ++i)
                    for (int j = i; j < 2 * n; ++j) a(i, j) = a(j, i) = rng.uniform(-1.0, 1.0);
                a *= 0.45 / std::max(1e-12, a.cwiseAbs().rowwise().sum().maxCoeff());
                RVector b(2 * n);
                for (int i = 0; i < 2 * n; ++i) b(i) = rng.uniform(-0.5, 0.5);
                const QuadraticGenerator g(n, a, b, "seeded");
                const GaussianState predicted = apply_map(vac_g, symplectic_of_generator(g, 1.0));
                const CMatrix h = fock_hamiltonian(space, g);
                const CVector evolved =
                    op_exp(FockOperator(space, CMatrix(Complex(0.0, -1.0) * h))).matrix * vac_f;
                const auto [mean_f, cov_f] = fock_moments(FockVector(space, evolved));
                const std::string tag = "_seed" + std::to_string(trial);
                rep.add("cross_engine_mean" + tag,
                        (mean_f - predicted.mean).cwiseAbs().maxCoeff(), tol_or(p, 1e-6),
                        "first moments agree across engines");
                rep.add("cross_engine_cov" + tag,
                        (cov_f - predicted.cov).cwiseAbs().maxCoeff(), tol_or(p, 1e-6),
                        "second moments agree across engines");
            }
        }
    });
}

VerificationReport suite_hamiltonian(const SuiteParams& p) {
    return timed("hamiltonian", p, [&](VerificationReport& rep) {
        std::vector<int> ns;
        if (p.n >= 2) ns.push_back(p.n);
        else { ns.push_back(2); ns.push_back(3); ns.push_back(4); }
        for (int n : ns) {
            for (double bc : {0.5, 1.0}) {
                const std::string tag = "_n" + std::to_string(n) + "_bc" + std::to_string(bc);
                const QuadraticGenerator from_rates =
                    hamiltonian_HI(n, -(n - 1) * bc, -bc);
                const QuadraticGenerator pfister = pfister_hamiltonian(n, bc);
                rep.add("interaction_equals_pairwise" + tag,
                        (from_rates.A - pfister.A).cwiseAbs().maxCoeff(), tol_or(p, 1e-12),
                        "rate choice (n-1)d(l2)/dt = d(l1)/dt = -(n-1) bc reproduces the "
                        "pairwise coupling");
                const RateReport rates = heisenberg_rates(pfister, PumpSpec(bc, 1.0));
                for (const auto& entry : rates.entries) {
                    const double expected =
                        entry.direction == "sumP" ? std::exp(-(n - 1) * bc) : std::exp(-bc);
                    rep.add("rate_" + entry.direction + tag,
                            entry.is_eigendirection ? std::abs(entry.factor - expected) : 1.0,
                            tol_or(p, 1e-10),
                            entry.direction == "sumP" ? "sumP(t) = e^{-(n-1) bc t} sumP"
                                                      : "X1-Xj scales by e^{-bc t}");
                }
            }
        }
        // Flow eigenvalues of the pairwise coupling at n=3.
        {
            const QuadraticGenerator g = pfister_hamiltonian(3, 1.0);
            const RMatrix flow = symplectic_form(3) * g.A;
            Eigen::EigenSolver<RMatrix> es(flow);
            RVector real_parts = es.eigenvalues().real();
            std::sort(real_parts.data(), real_parts.data() + real_parts.size());
            RVector expected(6);
            expected << -2.0, -1.0, -1.0, 1.0, 1.0, 2.0;
            rep.add("pairwise_flow_eigenvalues_n3",
                    (real_parts - expected).cwiseAbs().maxCoeff() +
                        es.eigenvalues().imag().cwiseAbs().maxCoeff(),
                    tol_or(p, 1e-10), "flow rates {-(n-1)bc, -bc, -bc, +bc, +bc, +(n-1)bc}");
        }
        // n=2 reduces to the standard two-mode squeezer form.
        {
            const QuadraticGenerator g = pfister_hamiltonian(2, 0.7);
            RMatrix expected = RMatrix::Zero(4, 4);
            expected(0, 3) = expected(3, 0) = 0.7;  // X1 P2
            expected(1, 2) = expected(2, 1) = 0.7;  // X2 P1
            rep.add("two_mode_squeezer_form",
                    (g.A - expected).cwiseAbs().maxCoeff(), tol_or(p, 1e-15),
                    "pairwise coupling at n=2 is bc (X1 P2 + X2 P1)");
        }
    });
}

VerificationReport suite_completeness(const SuiteParams& p) {
    return timed("completeness", p, [&](VerificationReport& rep) {
        const int d = p.cutoff > 0 ? p.cutoff : 8;
        const double extent = 6.0;
        const double step = 0.05;
        double dev1 = 0, dev15 = 0, dev2 = 0;
        for (double r : {1.0, 1.5, 2.0}) {
            const CompletenessResult res = completeness_quadrature_check(r, d, extent, step);
            rep.note("deviation_r" + std::to_string(r), res.deviation,
                     "lowest-block deviation of the resolution of identity");
            if (res.grid_warning)
                rep.note("grid_warning_r" + std::to_string(r), 1.0,
                         "grid step exceeds half the e^{-r} peak width");
            if (r == 1.0) dev1 = res.deviation;
            if (r == 1.5) dev15 = res.deviation;
            if (r == 2.0) dev2 = res.deviation;
        }
        rep.add("deviation_r2", dev2, tol_or(p, 0.05),
                "integral of |p,chi><p,chi| resolves the identity on the lowest block");
        rep.add("deviation_monotone", std::max(dev15 - dev1, dev2 - dev15), 0.0,
                "deviation decreases with increasing squeezing");
    });
}

VerificationReport suite_all(const SuiteParams& p) {
    return timed("all", p, [&](VerificationReport& rep) {
        merge_into(rep, suite_matrices(p));
        merge_into(rep, suite_su11(p));
        merge_into(rep, suite_bch(p));
        merge_into(rep, suite_eigen(p));
        merge_into(rep, suite_entangle(p));
        merge_into(rep, suite_squeeze(p));
        merge_into(rep, suite_hamiltonian(p));
        merge_into(rep, suite_completeness(p));
    });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"matrices", "su11",        "bch",
                                                "eigen",    "entangle",    "squeeze",
                                                "hamiltonian", "completeness", "all"};
    return names;
}

bool is_known_suite(const std::string& name) {
    for (const auto& s : suite_names())
        if (s == name) return true;
    return false;
}

VerificationReport run_suite(const std::string& name, const SuiteParams& p) {
    if (name == "matrices") return suite_matrices(p);
    if (name == "su11") return suite_su11(p);
    if (name == "bch") return suite_bch(p);
    if (name == "eigen") return suite_eigen(p);
    if (name == "entangle") return suite_entangle(p);
    if (name == "squeeze") return suite_squeeze(p);
    if (name == "hamiltonian") return suite_hamiltonian(p);
    if (name == "completeness") return suite_completeness(p);
    if (name == "all") return suite_all(p);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace mesq
