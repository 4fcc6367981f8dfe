#include "mesq/fock.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace mesq {

FockVector vacuum_vector(const FockSpace& space) {
    CVector c = CVector::Zero(space.dimension());
    c(0) = 1.0;
    return FockVector(space, std::move(c));
}

FockOperator identity_op(const FockSpace& space) {
    return FockOperator(space, CMatrix::Identity(space.dimension(), space.dimension()));
}

std::pair<FockOperator, FockOperator> make_ladder(const FockSpace& space, int mode) {
    space.check_mode(mode);
    const long dim = space.dimension();
    const long stride = space.stride(mode);
    CMatrix a = CMatrix::Zero(dim, dim);
    for (long idx = 0; idx < dim; ++idx) {
        const int k = space.occupation(idx, mode);
        if (k >= 1) a(idx - stride, idx) = std::sqrt(static_cast<double>(k));
    }
    CMatrix adag = a.adjoint();
    return {FockOperator(space, std::move(a)), FockOperator(space, std::move(adag))};
}

std::pair<FockOperator, FockOperator> quadratures(const FockSpace& space, int mode) {
    auto [a, adag] = make_ladder(space, mode);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CMatrix x = (a.matrix + adag.matrix) * inv_sqrt2;
    CMatrix p = (a.matrix - adag.matrix) * Complex(0.0, -inv_sqrt2);
    return {FockOperator(space, std::move(x)), FockOperator(space, std::move(p))};
}

FockOperator total_momentum_op(const FockSpace& space) {
    CMatrix sum = CMatrix::Zero(space.dimension(), space.dimension());
    for (int m = 1; m <= space.n_modes(); ++m) sum += quadratures(space, m).second.matrix;
    return FockOperator(space, std::move(sum));
}

FockOperator total_position_op(const FockSpace& space) {
    CMatrix sum = CMatrix::Zero(space.dimension(), space.dimension());
    for (int m = 1; m <= space.n_modes(); ++m) sum += quadratures(space, m).first.matrix;
    return FockOperator(space, std::move(sum));
}

FockOperator relative_coordinate_op(const FockSpace& space, int i) {
    if (i < 2) throw std::invalid_argument("relative_coordinate_op: i must be >= 2");
    space.check_mode(i);
    CMatrix q = quadratures(space, 1).first.matrix - quadratures(space, i).first.matrix;
    return FockOperator(space, std::move(q));
}

FockOperator relative_momentum_op(const FockSpace& space, int i) {
    if (i < 2) throw std::invalid_argument("relative_momentum_op: i must be >= 2");
    space.check_mode(i);
    CMatrix p = quadratures(space, 1).second.matrix - quadratures(space, i).second.matrix;
    return FockOperator(space, std::move(p));
}

FockOperator op_exp(const FockOperator& a) {
    if (!a.matrix.allFinite()) throw std::domain_error("op_exp: non-finite entries");
    return FockOperator(a.space, a.matrix.exp());
}

FockOperator commutator(const FockOperator& a, const FockOperator& b) {
    if (!(a.space == b.space)) throw std::invalid_argument("commutator: space mismatch");
    return FockOperator(a.space, a.matrix * b.matrix - b.matrix * a.matrix);
}

FockVector apply(const FockOperator& a, const FockVector& v) {
    if (!(a.space == v.space)) throw std::invalid_argument("apply: space mismatch");
    return FockVector(a.space, a.matrix * v.coeffs);
}

Complex inner(const FockVector& u, const FockVector& v) {
    if (!(u.space == v.space)) throw std::invalid_argument("inner: space mismatch");
    return u.coeffs.dot(v.coeffs);
}

FockVector low_subspace_project(const FockVector& v, int k) {
    if (k < 0 || k > v.space.n_modes() * (v.space.cutoff() - 1))
        throw std::invalid_argument("low_subspace_project: k out of range");
    CVector out = v.coeffs;
    for (long idx = 0; idx < v.space.dimension(); ++idx)
        if (v.space.total_photons(idx) > k) out(idx) = 0.0;
    return FockVector(v.space, std::move(out));
}

FockOperator low_subspace_project(const FockOperator& a, int k) {
    if (k < 0 || k > a.space.n_modes() * (a.space.cutoff() - 1))
        throw std::invalid_argument("low_subspace_project: k out of range");
    CMatrix out = a.matrix;
    for (long idx = 0; idx < a.space.dimension(); ++idx) {
        if (a.space.total_photons(idx) > k) {
            out.row(idx).setZero();
            out.col(idx).setZero();
        }
    }
    return FockOperator(a.space, std::move(out));
}

std::vector<long> low_subspace_indices(const FockSpace& space, int k) {
    std::vector<long> idx;
    for (long i = 0; i < space.dimension(); ++i)
        if (space.total_photons(i) <= k) idx.push_back(i);
    return idx;
}

std::vector<long> box_subspace_indices(const FockSpace& space, int m) {
    std::vector<long> idx;
    for (long i = 0; i < space.dimension(); ++i) {
        bool inside = true;
        for (int mode = 1; mode <= space.n_modes() && inside; ++mode)
            inside = space.occupation(i, mode) <= m;
        if (inside) idx.push_back(i);
    }
    return idx;
}

void accumulate_create(const FockSpace& space, int mode, const CVector& v,
                       Complex factor, CVector& out) {
    space.check_mode(mode);
    const long stride = space.stride(mode);
    const long dim = space.dimension();
    for (long idx = 0; idx < dim; ++idx) {
        const int k = space.occupation(idx, mode);
        if (k + 1 < space.cutoff() && v(idx) != 0.0)
            out(idx + stride) += factor * std::sqrt(static_cast<double>(k + 1)) * v(idx);
    }
}

void accumulate_annihilate(const FockSpace& space, int mode, const CVector& v,
                           Complex factor, CVector& out) {
    space.check_mode(mode);
    const long stride = space.stride(mode);
    const long dim = space.dimension();
    for (long idx = 0; idx < dim; ++idx) {
        const int k = space.occupation(idx, mode);
        if (k >= 1 && v(idx) != 0.0)
            out(idx - stride) += factor * std::sqrt(static_cast<double>(k)) * v(idx);
    }
}

CVector apply_quadratic_creation(const FockSpace& space, const RMatrix& m, const CVector& v) {
    const int n = space.n_modes();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("apply_quadratic_creation: matrix size mismatch");
    CVector out = CVector::Zero(space.dimension());
    CVector tmp(space.dimension());
    for (int j = 1; j <= n; ++j) {
        tmp.setZero();
        accumulate_create(space, j, v, 1.0, tmp);
        for (int i = 1; i <= n; ++i) {
            const double mij = m(i - 1, j - 1);
            if (mij != 0.0) accumulate_create(space, i, tmp, 0.5 * mij, out);
        }
    }
    return out;
}

CVector apply_quadratic_annihilation(const FockSpace& space, const RMatrix& m, const CVector& v) {
    const int n = space.n_modes();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("apply_quadratic_annihilation: matrix size mismatch");
    CVector out = CVector::Zero(space.dimension());
    CVector tmp(space.dimension());
    for (int j = 1; j <= n; ++j) {
        tmp.setZero();
        accumulate_annihilate(space, j, v, 1.0, tmp);
        for (int i = 1; i <= n; ++i) {
            const double mij = m(i - 1, j - 1);
            if (mij != 0.0) accumulate_annihilate(space, i, tmp, 0.5 * mij, out);
        }
    }
    return out;
}

CVector apply_number_bilinear(const FockSpace& space, const RMatrix& m, const CVector& v) {
    const int n = space.n_modes();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("apply_number_bilinear: matrix size mismatch");
    CVector out = CVector::Zero(space.dimension());
    CVector tmp(space.dimension());
    for (int j = 1; j <= n; ++j) {
        tmp.setZero();
        accumulate_annihilate(space, j, v, 1.0, tmp);
        for (int i = 1; i <= n; ++i) {
            const double mij = m(i - 1, j - 1);
            if (mij != 0.0) accumulate_create(space, i, tmp, mij, out);
        }
    }
    return out;
}

void accumulate_quadrature(const FockSpace& space, int mode, bool momentum,
                           const CVector& v, Complex factor, CVector& out) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (momentum) {
        accumulate_annihilate(space, mode, v, factor * Complex(0.0, -inv_sqrt2), out);
        accumulate_create(space, mode, v, factor * Complex(0.0, inv_sqrt2), out);
    } else {
        accumulate_annihilate(space, mode, v, factor * inv_sqrt2, out);
        accumulate_create(space, mode, v, factor * inv_sqrt2, out);
    }
}

void accumulate_create(const FockSpace& space, int mode, const CMatrix& v,
                       Complex factor, CMatrix& out) {
    space.check_mode(mode);
    const long stride = space.stride(mode);
    const long dim = space.dimension();
    for (long idx = 0; idx < dim; ++idx) {
        const int k = space.occupation(idx, mode);
        if (k + 1 < space.cutoff())
            out.col(idx + stride) +=
                (factor * std::sqrt(static_cast<double>(k + 1))) * v.col(idx);
    }
}

void accumulate_annihilate(const FockSpace& space, int mode, const CMatrix& v,
                           Complex factor, CMatrix& out) {
    space.check_mode(mode);
    const long stride = space.stride(mode);
    const long dim = space.dimension();
    for (long idx = 0; idx < dim; ++idx) {
        const int k = space.occupation(idx, mode);
        if (k >= 1)
            out.col(idx - stride) += (factor * std::sqrt(static_cast<double>(k))) * v.col(idx);
    }
}

namespace {

template <typename First, typename Second>
CMatrix apply_bilinear_block(const FockSpace& space, const RMatrix& m, const CMatrix& v,
                             double half, First&& first, Second&& second) {
    const int n = space.n_modes();
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("bilinear application: matrix size mismatch");
    CMatrix out = CMatrix::Zero(v.rows(), v.cols());
    CMatrix tmp(v.rows(), v.cols());
    for (int j = 1; j <= n; ++j) {
        tmp.setZero();
        first(space, j, v, Complex(1.0), tmp);
        for (int i = 1; i <= n; ++i) {
            const double mij = m(i - 1, j - 1);
            if (mij != 0.0) second(space, i, tmp, Complex(half * mij), out);
        }
    }
    return out;
}

}  // namespace

CMatrix apply_quadratic_creation(const FockSpace& space, const RMatrix& m, const CMatrix& v) {
    auto create = [](const FockSpace& s, int mode, const CMatrix& in, Complex f, CMatrix& o) {
        accumulate_create(s, mode, in, f, o);
    };
    return apply_bilinear_block(space, m, v, 0.5, create, create);
}

CMatrix apply_quadratic_annihilation(const FockSpace& space, const RMatrix& m, const CMatrix& v) {
    auto annihilate = [](const FockSpace& s, int mode, const CMatrix& in, Complex f, CMatrix& o) {
        accumulate_annihilate(s, mode, in, f, o);
    };
    return apply_bilinear_block(space, m, v, 0.5, annihilate, annihilate);
}

CMatrix apply_number_bilinear(const FockSpace& space, const RMatrix& m, const CMatrix& v) {
    auto annihilate = [](const FockSpace& s, int mode, const CMatrix& in, Complex f, CMatrix& o) {
        accumulate_annihilate(s, mode, in, f, o);
    };
    auto create = [](const FockSpace& s, int mode, const CMatrix& in, Complex f, CMatrix& o) {
        accumulate_create(s, mode, in, f, o);
    };
    return apply_bilinear_block(space, m, v, 1.0, annihilate, create);
}

void accumulate_quadrature(const FockSpace& space, int mode, bool momentum,
                           const CMatrix& v, Complex factor, CMatrix& out) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (momentum) {
        accumulate_annihilate(space, mode, v, factor * Complex(0.0, -inv_sqrt2), out);
        accumulate_create(space, mode, v, factor * Complex(0.0, inv_sqrt2), out);
    } else {
        accumulate_annihilate(space, mode, v, factor * inv_sqrt2, out);
        accumulate_create(space, mode, v, factor * inv_sqrt2, out);
    }
}

}  // namespace mesq
