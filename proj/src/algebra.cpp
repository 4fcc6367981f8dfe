#include "mesq/algebra.hpp"

#include <cmath>

namespace mesq {

namespace {

RMatrix constant_matrix(int rows, double diag, double off) {
    RMatrix m = RMatrix::Constant(rows, rows, off);
    m.diagonal().setConstant(diag);
    return m;
}

/// Dense (1/2) sum_ij M_ij a_i^+ a_j^+.
CMatrix dense_quadratic_creation(const FockSpace& space, const RMatrix& m) {
    const int n = space.n_modes();
    const int d = space.cutoff();
    const long dim = space.dimension();
    CMatrix out = CMatrix::Zero(dim, dim);
    for (long idx = 0; idx < dim; ++idx) {
        for (int j = 1; j <= n; ++j) {
            const int kj = space.occupation(idx, j);
            if (kj + 1 >= d) continue;
            const long mid = idx + space.stride(j);
            const double aj = std::sqrt(static_cast<double>(kj + 1));
            for (int i = 1; i <= n; ++i) {
                const double mij = m(i - 1, j - 1);
                if (mij == 0.0) continue;
                const int ki = space.occupation(mid, i);
                if (ki + 1 >= d) continue;
                out(mid + space.stride(i), idx) +=
                    0.5 * mij * aj * std::sqrt(static_cast<double>(ki + 1));
            }
        }
    }
    return out;
}

/// Dense sum_ij M_ij a_i^+ a_j.
CMatrix dense_number_bilinear(const FockSpace& space, const RMatrix& m) {
    const int n = space.n_modes();
    const int d = space.cutoff();
    const long dim = space.dimension();
    CMatrix out = CMatrix::Zero(dim, dim);
    for (long idx = 0; idx < dim; ++idx) {
        for (int j = 1; j <= n; ++j) {
            const int kj = space.occupation(idx, j);
            if (kj < 1) continue;
            const long mid = idx - space.stride(j);
            const double aj = std::sqrt(static_cast<double>(kj));
            for (int i = 1; i <= n; ++i) {
                const double mij = m(i - 1, j - 1);
                if (mij == 0.0) continue;
                const int ki = space.occupation(mid, i);
                if (ki + 1 >= d) continue;
                out(mid + space.stride(i), idx) +=
                    mij * aj * std::sqrt(static_cast<double>(ki + 1));
            }
        }
    }
    return out;
}

/// Matrix of K_0 without its additive constant.
RMatrix k0_matrix(Su11Realization r, int n) {
    switch (r) {
        case Su11Realization::G: return RMatrix::Identity(n, n);
        case Su11Realization::Gp: return structure_matrix(StructureKind::Gp, n);
        case Su11Realization::Gpp: return structure_matrix(StructureKind::Gpp, n);
    }
    throw std::invalid_argument("k0_matrix: unknown realization");
}

/// Crude spectral-scale estimate of an applier, for choosing Taylor steps.
template <typename Applier>
double applier_norm_estimate(const FockSpace& space, Applier&& op) {
    CVector v = CVector::Zero(space.dimension());
    // Deterministic pseudo-random probe.
    unsigned long long state = 0x9e3779b97f4a7c15ULL;
    for (long i = 0; i < space.dimension(); ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        v(i) = Complex((state >> 11) * 0x1.0p-53 - 0.5, ((state >> 7) & 0x3fffff) * 0x1.0p-22 - 0.5);
    }
    v.normalize();
    double ratio = 0.0;
    for (int it = 0; it < 5; ++it) {
        CVector w = op(v);
        const double nw = w.norm();
        ratio = std::max(ratio, nw);
        if (nw == 0.0) break;
        v = w / nw;
    }
    return ratio;
}

}  // namespace

RMatrix structure_matrix(StructureKind kind, int n) {
    if (n < 2) throw std::invalid_argument("structure_matrix: n must be >= 2");
    const double nd = static_cast<double>(n);
    switch (kind) {
        case StructureKind::N: return constant_matrix(n - 1, (nd - 1.0) / nd, -1.0 / nd);
        case StructureKind::F: return constant_matrix(n - 1, (nd - 1.0) / (2.0 * nd), -1.0 / (2.0 * nd));
        case StructureKind::Finv: return constant_matrix(n - 1, 4.0, 2.0);
        case StructureKind::G: return constant_matrix(n, 1.0 - 2.0 / nd, -2.0 / nd);
        case StructureKind::Gp: return constant_matrix(n, 1.0 / nd, 1.0 / nd);
        case StructureKind::Gpp: return constant_matrix(n, (nd - 1.0) / nd, -1.0 / nd);
    }
    throw std::invalid_argument("structure_matrix: unknown kind");
}

std::string realization_name(Su11Realization r) {
    switch (r) {
        case Su11Realization::G: return "G";
        case Su11Realization::Gp: return "Gp";
        case Su11Realization::Gpp: return "Gpp";
    }
    return "?";
}

RMatrix realization_matrix(Su11Realization r, int n) {
    switch (r) {
        case Su11Realization::G: return structure_matrix(StructureKind::G, n);
        case Su11Realization::Gp: return structure_matrix(StructureKind::Gp, n);
        case Su11Realization::Gpp: return structure_matrix(StructureKind::Gpp, n);
    }
    throw std::invalid_argument("realization_matrix: unknown realization");
}

double su11_k0_constant(Su11Realization realization, int n) {
    switch (realization) {
        case Su11Realization::G: return n / 4.0;
        case Su11Realization::Gp: return 0.25;
        case Su11Realization::Gpp: return (n - 1) / 4.0;
    }
    throw std::invalid_argument("su11_k0_constant: unknown realization");
}

Su11Triple su11_generators(const FockSpace& space, Su11Realization realization) {
    const int n = space.n_modes();
    const RMatrix m = realization_matrix(realization, n);
    CMatrix kp = dense_quadratic_creation(space, m);
    CMatrix km = kp.adjoint();
    CMatrix k0 = 0.5 * dense_number_bilinear(space, k0_matrix(realization, n));
    k0 += su11_k0_constant(realization, n) *
          CMatrix::Identity(space.dimension(), space.dimension());
    return Su11Triple{FockOperator(space, std::move(kp)), FockOperator(space, std::move(km)),
                      FockOperator(space, std::move(k0)), realization};
}

std::pair<FockOperator, FockOperator> disentangled_squeeze(const FockSpace& space,
                                                           Su11Realization realization,
                                                           double lambda, int sign) {
    if (std::abs(lambda) > 1.0)
        throw std::out_of_range("disentangled_squeeze: |lambda| > 1 is outside the "
                                "supported convergence envelope");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("disentangled_squeeze: sign must be +-1");
    Su11Triple k = su11_generators(space, realization);
    const double s = static_cast<double>(sign);
    const double t = std::tanh(lambda);
    const double lnsech = -std::log(std::cosh(lambda));
    FockOperator direct =
        op_exp(FockOperator(space, s * lambda * (k.k_plus.matrix - k.k_minus.matrix)));
    CMatrix factored = op_exp(FockOperator(space, s * t * k.k_plus.matrix)).matrix *
                       op_exp(FockOperator(space, 2.0 * lnsech * k.k_zero.matrix)).matrix *
                       op_exp(FockOperator(space, -s * t * k.k_minus.matrix)).matrix;
    return {std::move(direct), FockOperator(space, std::move(factored))};
}

DisentangleResiduals disentangle_box_residuals(const FockSpace& space,
                                               Su11Realization realization, double lambda,
                                               int sign, int box_bound) {
    if (std::abs(lambda) > 1.0)
        throw std::out_of_range("disentangle_box_residuals: |lambda| > 1 is outside "
                                "the supported convergence envelope");
    const int n = space.n_modes();
    const RMatrix m = realization_matrix(realization, n);
    const RMatrix m0 = k0_matrix(realization, n);
    const double c0 = su11_k0_constant(realization, n);
    const double s = static_cast<double>(sign);
    const double t = std::tanh(lambda);
    const double lnsech = -std::log(std::cosh(lambda));

    const auto box = box_subspace_indices(space, box_bound);
    const long nvec = static_cast<long>(box.size());
    // One probe vector per row.
    CMatrix block(nvec, space.dimension());
    block.setZero();
    for (long c = 0; c < nvec; ++c) block(c, box[c]) = 1.0;

    auto apply_direct = [&](const CMatrix& v) -> CMatrix {
        return s * lambda *
               (apply_quadratic_creation(space, m, v) -
                apply_quadratic_annihilation(space, m, v));
    };
    auto apply_k0 = [&](const CMatrix& v) -> CMatrix {
        return 0.5 * apply_number_bilinear(space, m0, v) + c0 * v;
    };

    // The raising and lowering factors have exactly terminating series and
    // the K0 factor has a small coefficient, so all run unstepped.
    auto factored = [&](double trailing_sign) {
        CMatrix fb = block;
        taylor_exp_inplace(
            [&](const CMatrix& v) -> CMatrix {
                return trailing_sign * s * t * apply_quadratic_annihilation(space, m, v);
            },
            fb, 1);
        taylor_exp_inplace([&](const CMatrix& v) -> CMatrix { return 2.0 * lnsech * apply_k0(v); },
                         fb, 1);
        taylor_exp_inplace(
            [&](const CMatrix& v) -> CMatrix {
                return s * t * apply_quadratic_creation(space, m, v);
            },
            fb, 1);
        return fb;
    };
    const CMatrix factored_minus = factored(-1.0);
    const CMatrix factored_plus = factored(+1.0);

    CMatrix direct_block = block;
    {
        auto probe = [&](const CVector& v) -> CVector {
            return s * lambda *
                   (apply_quadratic_creation(space, m, v) -
                    apply_quadratic_annihilation(space, m, v));
        };
        const double est = applier_norm_estimate(space, probe);
        const int steps = std::max(1, static_cast<int>(std::ceil(est)));
        taylor_exp_inplace(apply_direct, direct_block, steps);
    }

    double frob2_minus = 0.0, frob2_plus = 0.0;
    for (long c = 0; c < nvec; ++c) {
        for (long r = 0; r < nvec; ++r) {
            frob2_minus += std::norm(direct_block(c, box[r]) - factored_minus(c, box[r]));
            frob2_plus += std::norm(direct_block(c, box[r]) - factored_plus(c, box[r]));
        }
    }
    return {std::sqrt(frob2_minus), std::sqrt(frob2_plus)};
}

}  // namespace mesq
