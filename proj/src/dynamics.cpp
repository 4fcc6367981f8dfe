#include "mesq/dynamics.hpp"

#include <cmath>
#include <limits>

#include "mesq/algebra.hpp"

namespace mesq {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// A += coeff * (u v^T + v u^T), i.e. (1/2) r^T A r gains coeff * sym(u.r v.r).
void add_symmetrized_product(RMatrix& a, double coeff, const RVector& u, const RVector& v) {
    a += coeff * (u * v.transpose() + v * u.transpose());
}

/// Quadrature form of H = (i c/2)(a^+ M a~^+ - a M a~) for real symmetric M:
/// A = [[0, cM], [cM, 0]] in the (X, P) block ordering.
RMatrix pair_creation_quadrature_form(const RMatrix& m, double c) {
    const int n = static_cast<int>(m.rows());
    RMatrix a = RMatrix::Zero(2 * n, 2 * n);
    a.topRightCorner(n, n) = c * m;
    a.bottomLeftCorner(n, n) = c * m;
    return a;
}

GaussianState single_mode_squeezed(double r, bool momentum_squeezed) {
    RMatrix cov = RMatrix::Zero(2, 2);
    const double down = 0.5 * std::exp(-2.0 * r);
    const double up = 0.5 * std::exp(2.0 * r);
    cov(0, 0) = momentum_squeezed ? up : down;
    cov(1, 1) = momentum_squeezed ? down : up;
    return GaussianState(1, RVector::Zero(2), std::move(cov));
}

}  // namespace

SqueezeParams::SqueezeParams(RVector l) : lambdas(std::move(l)) {
    if (lambdas.size() < 1 || !lambdas.allFinite())
        throw std::invalid_argument("SqueezeParams: need >= 1 finite lambda");
}

SqueezeParams SqueezeParams::uniform(int n, double lambda) {
    return SqueezeParams(RVector::Constant(n, lambda));
}

BeamSplitterSpec::BeamSplitterSpec(int i_, int j_, double theta_)
    : i(i_), j(j_), theta(theta_) {
    if (i == j) throw std::invalid_argument("BeamSplitterSpec: i and j must differ");
    if (i < 1 || j < 1) throw std::invalid_argument("BeamSplitterSpec: 1-based mode indices");
    if (theta < 0.0 || theta > 2.0 * kPi)
        throw std::invalid_argument("BeamSplitterSpec: theta outside [0, 2pi]");
}

PumpSpec::PumpSpec(double bc, double time) : beta_chi(bc), t(time) {
    if (!std::isfinite(bc) || !std::isfinite(time) || time < 0.0)
        throw std::invalid_argument("PumpSpec: need finite beta_chi and t >= 0");
}

SymplecticMap beam_splitter_map(const BeamSplitterSpec& spec, int n_modes) {
    if (spec.i > n_modes || spec.j > n_modes)
        throw std::invalid_argument("beam_splitter_map: mode index out of range");
    const double c = std::cos(spec.theta);
    const double s = std::sin(spec.theta);
    RMatrix mat = RMatrix::Identity(2 * n_modes, 2 * n_modes);
    for (int block = 0; block < 2; ++block) {
        const int oi = block * n_modes + spec.i - 1;
        const int oj = block * n_modes + spec.j - 1;
        mat(oi, oi) = c;
        mat(oi, oj) = s;
        mat(oj, oi) = s;
        mat(oj, oj) = -c;
    }
    return SymplecticMap(n_modes, std::move(mat), RVector::Zero(2 * n_modes));
}

FockOperator beam_splitter_fock(const FockSpace& space, const BeamSplitterSpec& spec) {
    if (spec.i > space.n_modes() || spec.j > space.n_modes())
        throw std::invalid_argument("beam_splitter_fock: mode index out of range");
    auto [ai, ai_dag] = make_ladder(space, spec.i);
    auto [aj, aj_dag] = make_ladder(space, spec.j);
    CMatrix rot = spec.theta * (ai_dag.matrix * aj.matrix - aj_dag.matrix * ai.matrix);
    CMatrix flip = Complex(0.0, kPi) * (aj_dag.matrix * aj.matrix);
    CMatrix u = op_exp(FockOperator(space, std::move(flip))).matrix *
                op_exp(FockOperator(space, std::move(rot))).matrix;
    return FockOperator(space, std::move(u));
}

SymplecticMap vlb_network(int n) {
    if (n < 2) throw std::invalid_argument("vlb_network: n must be >= 2");
    SymplecticMap net = identity_map(n);
    for (int j = 1; j <= n - 1; ++j) {
        const double theta = std::acos(1.0 / std::sqrt(static_cast<double>(n - j + 1)));
        net = compose(beam_splitter_map(BeamSplitterSpec(j, j + 1, theta), n), net);
    }
    return net;
}

GaussianState generate_epr(int n, double r, EprVariant variant) {
    if (r < 0.0) throw std::invalid_argument("generate_epr: r must be >= 0");
    const bool mode1_momentum = (variant == EprVariant::PChiZero);
    GaussianState in = single_mode_squeezed(r, mode1_momentum);
    for (int k = 2; k <= n; ++k)
        in = tensor_product(in, single_mode_squeezed(r, !mode1_momentum));
    return apply_map(in, vlb_network(n));
}

std::vector<QuadraticGenerator> squeeze_generator_pieces(int n) {
    if (n < 2) throw std::invalid_argument("squeeze_generator_pieces: n must be >= 2");
    std::vector<QuadraticGenerator> pieces;
    const RVector zero = RVector::Zero(2 * n);
    {
        RMatrix a = RMatrix::Zero(2 * n, 2 * n);
        add_symmetrized_product(a, 1.0, direction_total_P(n), direction_total_X(n));
        pieces.emplace_back(n, std::move(a), zero, "P·sumX");
    }
    for (int k = 2; k <= n; ++k) {
        RMatrix a = RMatrix::Zero(2 * n, 2 * n);
        RVector pk = RVector::Zero(2 * n);
        pk(n + k - 1) = static_cast<double>(n);
        add_symmetrized_product(a, 1.0, direction_relative_X(n, k),
                                RVector(pk - direction_total_P(n)));
        pieces.emplace_back(n, std::move(a), zero, "Q" + std::to_string(k) + "·(nP_k-P)");
    }
    return pieces;
}

QuadraticGenerator squeeze_generator(const SqueezeParams& params) {
    const int n = params.n_modes();
    if (n < 2) throw std::invalid_argument("squeeze_generator: n must be >= 2");
    const auto pieces = squeeze_generator_pieces(n);
    RMatrix a = RMatrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) a += params.lambdas(k) / n * pieces[k].A;
    return QuadraticGenerator(n, std::move(a), RVector::Zero(2 * n), "squeeze");
}

SymplecticMap squeeze_Sn(const SqueezeParams& params) {
    // The unitary is exp(+i K); states evolve along the backward flow of K.
    return symplectic_of_generator(squeeze_generator(params), -1.0);
}

FockOperator squeeze_Sn_fock_exponent(const FockSpace& space, const SqueezeParams& params) {
    const int n = space.n_modes();
    if (params.n_modes() != n)
        throw std::invalid_argument("squeeze_Sn_fock_exponent: parameter length mismatch");
    const long dim = space.dimension();
    CMatrix total_p = total_momentum_op(space).matrix;
    CMatrix exponent = params.lambdas(0) * total_p * total_position_op(space).matrix;
    for (int k = 2; k <= n; ++k) {
        CMatrix nk_p = static_cast<double>(n) * quadratures(space, k).second.matrix - total_p;
        exponent += params.lambdas(k - 1) * relative_coordinate_op(space, k).matrix * nk_p;
    }
    exponent *= Complex(0.0, 1.0) / static_cast<double>(n);
    exponent -= 0.5 * params.lambdas.sum() * CMatrix::Identity(dim, dim);
    return FockOperator(space, std::move(exponent));
}

FockOperator squeeze_Sn_fock_skew(const FockSpace& space, const SqueezeParams& params) {
    const int n = space.n_modes();
    if (params.n_modes() != n)
        throw std::invalid_argument("squeeze_Sn_fock_skew: parameter length mismatch");
    CMatrix total_p = total_momentum_op(space).matrix;
    CMatrix total_x = total_position_op(space).matrix;
    CMatrix exponent = 0.5 * params.lambdas(0) * (total_p * total_x + total_x * total_p);
    for (int k = 2; k <= n; ++k) {
        CMatrix nk_p = static_cast<double>(n) * quadratures(space, k).second.matrix - total_p;
        CMatrix q = relative_coordinate_op(space, k).matrix;
        exponent += 0.5 * params.lambdas(k - 1) * (q * nk_p + nk_p * q);
    }
    exponent *= Complex(0.0, 1.0) / static_cast<double>(n);
    return FockOperator(space, std::move(exponent));
}

FockOperator squeeze_Sn_fock(const FockSpace& space, const SqueezeParams& params) {
    return op_exp(squeeze_Sn_fock_skew(space, params));
}

CMatrix squeeze_skew_apply(const FockSpace& space, const SqueezeParams& params,
                           const CMatrix& block) {
    const int n = space.n_modes();
    if (params.n_modes() != n)
        throw std::invalid_argument("squeeze_skew_apply: parameter length mismatch");
    auto apply_total = [&](bool momentum, const CMatrix& v) {
        CMatrix out = CMatrix::Zero(v.rows(), v.cols());
        for (int m = 1; m <= n; ++m) accumulate_quadrature(space, m, momentum, v, 1.0, out);
        return out;
    };
    auto apply_q = [&](int k, const CMatrix& v) {
        CMatrix out = CMatrix::Zero(v.rows(), v.cols());
        accumulate_quadrature(space, 1, false, v, 1.0, out);
        accumulate_quadrature(space, k, false, v, -1.0, out);
        return out;
    };
    auto apply_v = [&](int k, const CMatrix& v) {
        CMatrix out = -apply_total(true, v);
        accumulate_quadrature(space, k, true, v, static_cast<double>(n), out);
        return out;
    };
    CMatrix acc = CMatrix::Zero(block.rows(), block.cols());
    if (params.lambdas(0) != 0.0)
        acc += 0.5 * params.lambdas(0) *
               (apply_total(true, apply_total(false, block)) +
                apply_total(false, apply_total(true, block)));
    for (int k = 2; k <= n; ++k) {
        if (params.lambdas(k - 1) == 0.0) continue;
        acc += 0.5 * params.lambdas(k - 1) *
               (apply_q(k, apply_v(k, block)) + apply_v(k, apply_q(k, block)));
    }
    return Complex(0.0, 1.0) / static_cast<double>(n) * acc;
}

std::pair<RVector, double> conjugate_observable(const SymplecticMap& m, const RVector& c) {
    if (c.size() != 2 * m.n_modes)
        throw std::invalid_argument("conjugate_observable: dimension mismatch");
    return {m.S.transpose() * c, m.d.dot(c)};
}

SqueezedVacuumStats squeezed_vacuum_stats(int n, double lambda,
                                          std::optional<int> fock_cutoff) {
    if (n < 2) throw std::invalid_argument("squeezed_vacuum_stats: n must be >= 2");
    const GaussianState sv = apply_map(vacuum_state(n), squeeze_Sn(SqueezeParams::uniform(n, lambda)));
    SqueezedVacuumStats stats{};
    stats.lambda = lambda;
    stats.var_collective_X = quad_variance(sv, direction_collective_X(n));
    stats.var_collective_Y = quad_variance(sv, direction_collective_Y(n));
    stats.uncertainty_product = std::sqrt(stats.var_collective_X * stats.var_collective_Y);
    stats.var_total_X = quad_variance(sv, direction_total_X(n));
    stats.var_relative_P = quad_variance(sv, direction_relative_P(n, 2));
    if (fock_cutoff) {
        // Norm of sech^(n/2) exp(K_+ tanh l) |vac> at the cutoff; 1 up to the
        // truncation tail.
        const FockSpace space(n, *fock_cutoff);
        const RMatrix g = structure_matrix(StructureKind::G, n);
        const double t = std::tanh(lambda);
        CVector acc = vacuum_vector(space).coeffs;
        CVector term = acc;
        const int max_pairs = n * (space.cutoff() - 1) / 2 + 1;
        for (int k = 1; k <= max_pairs; ++k) {
            term = t / k * apply_quadratic_creation(space, g, term);
            acc += term;
        }
        stats.fock_closed_form_norm =
            std::pow(1.0 / std::cosh(lambda), 0.5 * n) * acc.norm();
    }
    return stats;
}

QuadraticGenerator hamiltonian_HI(int n, double rate1, double rate2) {
    if (n < 2) throw std::invalid_argument("hamiltonian_HI: n must be >= 2");
    const RMatrix b = -rate1 * structure_matrix(StructureKind::Gp, n) +
                      rate2 * structure_matrix(StructureKind::Gpp, n);
    return QuadraticGenerator(n, pair_creation_quadrature_form(b, 1.0),
                              RVector::Zero(2 * n), "interaction");
}

QuadraticGenerator pfister_hamiltonian(int n, double beta_chi) {
    if (n < 2) throw std::invalid_argument("pfister_hamiltonian: n must be >= 2");
    const RMatrix j_minus_i =
        RMatrix::Constant(n, n, 1.0) - RMatrix::Identity(n, n);
    return QuadraticGenerator(n, pair_creation_quadrature_form(j_minus_i, beta_chi),
                              RVector::Zero(2 * n), "pairwise down-conversion");
}

RateReport heisenberg_rates(const QuadraticGenerator& g, const PumpSpec& pump) {
    const int n = g.n_modes;
    const RMatrix flow_t = (symplectic_form(n) * g.A).transpose();
    const SymplecticMap full = symplectic_of_generator(g, pump.t);

    RateReport report;
    report.t = pump.t;
    auto probe = [&](const std::string& name, const RVector& c) {
        const RVector u = flow_t * c;
        const double mu = c.dot(u) / c.dot(c);
        RateEntry entry;
        entry.direction = name;
        entry.rate = mu;
        if ((u - mu * c).norm() <= 1e-12 * std::max(1.0, u.norm())) {
            entry.is_eigendirection = true;
            entry.factor = std::exp(pump.t * mu);
            entry.image = RVector();
        } else {
            entry.is_eigendirection = false;
            entry.factor = std::numeric_limits<double>::quiet_NaN();
            entry.image = conjugate_observable(full, c).first;
        }
        report.entries.push_back(std::move(entry));
    };

    probe("sumP", direction_total_P(n));
    for (int j = 2; j <= n; ++j)
        probe("X1-X" + std::to_string(j), direction_relative_X(n, j));
    return report;
}

}  // namespace mesq
