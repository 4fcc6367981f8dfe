#include "mesq/states.hpp"

#include <cmath>

#include "mesq/algebra.hpp"

namespace mesq {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// v = exp(linear-creation + quadratic-creation) |vac>, exact per Fock level.
/// The series is run to order n(d-1)+2; the tail must vanish identically.
CVector creation_series(const FockSpace& space, const CVector& y, const RMatrix& quad) {
    const int n = space.n_modes();
    CVector acc = CVector::Zero(space.dimension());
    acc(0) = 1.0;
    CVector term = acc;
    const int order = n * (space.cutoff() - 1) + 2;
    for (int k = 1; k <= order; ++k) {
        CVector next = apply_quadratic_creation(space, quad, term);
        for (int m = 1; m <= n; ++m)
            if (y(m - 1) != 0.0) accumulate_create(space, m, term, y(m - 1), next);
        term = next / static_cast<double>(k);
        acc += term;
    }
    if (term.norm() != 0.0)
        throw std::logic_error("creation_series: raising series tail did not terminate");
    return acc;
}

RVector rest_or_zero(const StateLabel& label, int n) {
    if (label.n_modes() != n)
        throw std::invalid_argument("state label length does not match mode count");
    return label.rest;
}

}  // namespace

StateLabel::StateLabel(LabelVariant v, double s, RVector r)
    : variant(v), scalar(s), rest(std::move(r)) {
    if (!std::isfinite(scalar) || !rest.allFinite())
        throw std::invalid_argument("StateLabel: non-finite entries");
}

StateLabel StateLabel::zero(LabelVariant v, int n) {
    return StateLabel(v, 0.0, RVector::Zero(n - 1));
}

CVector displacement_y(const StateLabel& label, int n) {
    const RVector rest = rest_or_zero(label, n);
    CVector y(n);
    const double sq2 = std::sqrt(2.0);
    if (label.variant == LabelVariant::PChi) {
        y(0) = sq2 / n * Complex(rest.sum(), label.scalar);
        for (int i = 2; i <= n; ++i) y(i - 1) = y(0) - sq2 * rest(i - 2);
    } else {
        y(0) = sq2 / n * Complex(label.scalar, rest.sum());
        for (int i = 2; i <= n; ++i) y(i - 1) = y(0) - Complex(0.0, sq2) * rest(i - 2);
    }
    return y;
}

double ideal_norm_prefactor(int n) {
    return 1.0 / (std::sqrt(static_cast<double>(n)) * std::pow(kPi, n / 4.0));
}

RMatrix ideal_quadratic_matrix(LabelVariant variant, int n) {
    // Off-diagonal 2/n, diagonal -(n-2)/n is exactly -G; the conjugate family
    // flips the sign of the whole quadratic form.
    RMatrix g = structure_matrix(StructureKind::G, n);
    return variant == LabelVariant::PChi ? RMatrix(-g) : g;
}

FockVector ideal_entangled_vector(const FockSpace& space, const StateLabel& label) {
    const int n = space.n_modes();
    const CVector y = displacement_y(label, n);
    CVector coeffs = creation_series(space, y, ideal_quadratic_matrix(label.variant, n));
    coeffs *= std::exp(-0.25 * y.squaredNorm());
    return FockVector(space, std::move(coeffs));
}

std::vector<ResidualEntry> eigen_residual(const FockVector& v, const StateLabel& label) {
    const FockSpace& space = v.space;
    const int n = space.n_modes();
    if (label.n_modes() != n)
        throw std::invalid_argument("eigen_residual: label length mismatch");
    const int k = space.cutoff() - 3;
    const FockVector pv = low_subspace_project(v, k);
    const double base = pv.coeffs.norm();
    if (base < 1e-12)
        throw std::domain_error("eigen_residual: projected norm below 1e-12; cutoff too small");

    std::vector<ResidualEntry> out;
    auto push = [&](const std::string& name, CVector resid) {
        const FockVector pr = low_subspace_project(FockVector(space, std::move(resid)), k);
        out.push_back({name, pr.coeffs.norm() / base});
    };

    if (label.variant == LabelVariant::PChi) {
        CVector resid = -label.scalar * v.coeffs;
        for (int m = 1; m <= n; ++m)
            accumulate_quadrature(space, m, true, v.coeffs, 1.0, resid);
        push("P", std::move(resid));
        for (int i = 2; i <= n; ++i) {
            CVector qres = -label.rest(i - 2) * v.coeffs;
            accumulate_quadrature(space, 1, false, v.coeffs, 1.0, qres);
            accumulate_quadrature(space, i, false, v.coeffs, -1.0, qres);
            push("Q" + std::to_string(i), std::move(qres));
        }
    } else {
        CVector resid = -label.scalar * v.coeffs;
        for (int m = 1; m <= n; ++m)
            accumulate_quadrature(space, m, false, v.coeffs, 1.0, resid);
        push("sumX", std::move(resid));
        for (int i = 2; i <= n; ++i) {
            CVector pres = -label.rest(i - 2) * v.coeffs;
            accumulate_quadrature(space, 1, true, v.coeffs, 1.0, pres);
            accumulate_quadrature(space, i, true, v.coeffs, -1.0, pres);
            push("relP" + std::to_string(i), std::move(pres));
        }
    }
    return out;
}

FockVector factor_eigenstate_ideal(const FockSpace& space, int mode, double value,
                                   FactorKind kind) {
    space.check_mode(mode);
    const int n = space.n_modes();
    CVector y = CVector::Zero(n);
    RMatrix quad = RMatrix::Zero(n, n);
    const double sq2 = std::sqrt(2.0);
    if (kind == FactorKind::Coordinate) {
        y(mode - 1) = sq2 * value;
        quad(mode - 1, mode - 1) = -1.0;
    } else {
        y(mode - 1) = Complex(0.0, sq2 * value);
        quad(mode - 1, mode - 1) = 1.0;
    }
    CVector coeffs = creation_series(space, y, quad);
    coeffs *= std::pow(kPi, -0.25) * std::exp(-0.5 * value * value);
    return FockVector(space, std::move(coeffs));
}

GaussianState factor_eigenstate_gaussian(double value, FactorKind kind, double r) {
    if (r < 0.0) throw std::invalid_argument("factor_eigenstate_gaussian: r must be >= 0");
    RVector mean = RVector::Zero(2);
    RMatrix cov = RMatrix::Zero(2, 2);
    const double down = 0.5 * std::exp(-2.0 * r);
    const double up = 0.5 * std::exp(2.0 * r);
    if (kind == FactorKind::Coordinate) {
        mean(0) = value;
        cov(0, 0) = down;
        cov(1, 1) = up;
    } else {
        mean(1) = value;
        cov(0, 0) = up;
        cov(1, 1) = down;
    }
    return GaussianState(1, std::move(mean), std::move(cov));
}

QuadraticGenerator entangling_generator(int n) {
    if (n < 2) throw std::invalid_argument("entangling_generator: n must be >= 2");
    RMatrix a = RMatrix::Zero(2 * n, 2 * n);
    for (int k = 2; k <= n; ++k) {
        a(0, n + k - 1) = 1.0;
        a(n + k - 1, 0) = 1.0;
    }
    return QuadraticGenerator(n, std::move(a), RVector::Zero(2 * n), "X1·sumP");
}

SymplecticMap entangling_map(int n) {
    const QuadraticGenerator g = entangling_generator(n);
    const RMatrix omega = symplectic_form(n);
    RMatrix s = RMatrix::Identity(2 * n, 2 * n) + omega * g.A;
    return SymplecticMap(n, std::move(s), RVector::Zero(2 * n));
}

FockOperator entangling_unitary(const FockSpace& space) {
    const int n = space.n_modes();
    if (n < 2) throw std::invalid_argument("entangling_unitary: n must be >= 2");
    CMatrix sum_p = CMatrix::Zero(space.dimension(), space.dimension());
    for (int k = 2; k <= n; ++k) sum_p += quadratures(space, k).second.matrix;
    CMatrix exponent = Complex(0.0, 1.0) * quadratures(space, 1).first.matrix * sum_p;
    return op_exp(FockOperator(space, std::move(exponent)));
}

RegularizedState regularized_entangled_state(int n, const StateLabel& label, double r) {
    if (r < 0.0) throw std::invalid_argument("regularized_entangled_state: r must be >= 0");
    if (label.n_modes() != n)
        throw std::invalid_argument("regularized_entangled_state: label length mismatch");
    GaussianState prod = [&] {
        if (label.variant == LabelVariant::PChi) {
            GaussianState acc = factor_eigenstate_gaussian(label.scalar, FactorKind::Momentum, r);
            for (int k = 2; k <= n; ++k)
                acc = tensor_product(acc, factor_eigenstate_gaussian(-label.rest(k - 2),
                                                                     FactorKind::Coordinate, r));
            return acc;
        }
        GaussianState acc = factor_eigenstate_gaussian(label.scalar, FactorKind::Coordinate, r);
        for (int k = 2; k <= n; ++k)
            acc = tensor_product(acc, factor_eigenstate_gaussian(-label.rest(k - 2),
                                                                 FactorKind::Momentum, r));
        return acc;
    }();

    SymplecticMap map = [&] {
        if (label.variant == LabelVariant::PChi) return entangling_map(n);
        // Conjugate family: flow of -P_1 sum_{k>=2} X_k sends the product of
        // a coordinate factor on mode 1 and momentum factors on modes 2..n
        // into the (chi; p_2..p_n) family.
        RMatrix a = RMatrix::Zero(2 * n, 2 * n);
        for (int k = 2; k <= n; ++k) {
            a(n, k - 1) = -1.0;
            a(k - 1, n) = -1.0;
        }
        const RMatrix omega = symplectic_form(n);
        RMatrix s = RMatrix::Identity(2 * n, 2 * n) + omega * a;
        return SymplecticMap(n, std::move(s), RVector::Zero(2 * n));
    }();

    return RegularizedState{apply_map(prod, map), r, label};
}

FockVector tanh_scaled_entangled_vector(const FockSpace& space, const StateLabel& label,
                                        double r) {
    if (space.n_modes() != 2)
        throw std::invalid_argument("tanh_scaled_entangled_vector: n = 2 only");
    if (r < 0.0) throw std::invalid_argument("tanh_scaled_entangled_vector: r must be >= 0");
    const CVector y = displacement_y(label, 2);
    const RMatrix quad = std::tanh(r) * ideal_quadratic_matrix(label.variant, 2);
    CVector coeffs = creation_series(space, y, quad);
    coeffs *= std::exp(-0.25 * y.squaredNorm());
    return FockVector(space, std::move(coeffs));
}

CompletenessResult completeness_quadrature_check(double r, int cutoff, double extent,
                                                 double step) {
    if (r < 0.0 || extent <= 0.0 || step <= 0.0)
        throw std::invalid_argument("completeness_quadrature_check: bad parameters");
    const int d = cutoff;
    const FockSpace one(1, d);
    const FockSpace two(2, d);

    // Single-mode squeezers: exp[(xi/2)(a^2 - a^+2)] squeezes X for xi > 0.
    auto [a1, adag1] = make_ladder(one, 1);
    const CMatrix sq_gen = 0.5 * (a1.matrix * a1.matrix - adag1.matrix * adag1.matrix);
    const CVector vac1 = vacuum_vector(one).coeffs;
    const CVector sq_coord = op_exp(FockOperator(one, r * sq_gen)).matrix * vac1;
    const CVector sq_mom = op_exp(FockOperator(one, -r * sq_gen)).matrix * vac1;

    const long grid = static_cast<long>(std::floor(2.0 * extent / step)) + 1;
    std::vector<CVector> mom_family(grid), coord_family(grid);
    for (long i = 0; i < grid; ++i) {
        const double value = -extent + i * step;
        // Coordinate displacement alpha = x/sqrt(2); momentum alpha = i p/sqrt(2).
        const Complex alpha_c(value / std::sqrt(2.0), 0.0);
        const Complex alpha_m(0.0, value / std::sqrt(2.0));
        CMatrix disp_c = alpha_c * adag1.matrix - std::conj(alpha_c) * a1.matrix;
        CMatrix disp_m = alpha_m * adag1.matrix - std::conj(alpha_m) * a1.matrix;
        coord_family[i] = op_exp(FockOperator(one, std::move(disp_c))).matrix * sq_coord;
        mom_family[i] = op_exp(FockOperator(one, std::move(disp_m))).matrix * sq_mom;
    }

    // Rows of the entangling map at the per-mode-occupation <= 1 block.
    CMatrix sum_p2 = quadratures(two, 2).second.matrix;
    CMatrix exponent = Complex(0.0, -1.0) * quadratures(two, 1).first.matrix * sum_p2;
    const CMatrix v_full = op_exp(FockOperator(two, std::move(exponent))).matrix;
    const long block_idx[4] = {0, 1, d, d + 1};
    CMatrix v_rows(4, two.dimension());
    for (int b = 0; b < 4; ++b) v_rows.row(b) = v_full.row(block_idx[b]);

    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    CVector prod(two.dimension());
    for (long ip = 0; ip < grid; ++ip) {
        const CVector& u = mom_family[ip];
        for (long ic = 0; ic < grid; ++ic) {
            // The chi integral runs over a symmetric grid, so the coordinate
            // factor at -chi can be indexed by +chi after a change of variables.
            const CVector& w = coord_family[ic];
            for (long i = 0; i < d; ++i) prod.segment(i * d, d) = u(i) * w;
            const Eigen::Vector4cd c4 = v_rows * prod;
            rho += step * step * c4 * c4.adjoint();
        }
    }

    const Complex vac_elem = rho(0, 0);
    if (std::abs(vac_elem) == 0.0)
        throw std::domain_error("completeness_quadrature_check: vanishing vacuum element");
    rho /= vac_elem;
    const double deviation =
        (rho - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
    const bool warn = step > 0.5 * std::exp(-r);
    return CompletenessResult{r, deviation, warn};
}

}  // namespace mesq
