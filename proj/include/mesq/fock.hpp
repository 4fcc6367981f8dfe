#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mesq {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Truncated n-mode Fock space, levels 0..d-1 per mode, dimension d^n.
///
/// Basis index encoding is fixed and must never change: mode 1 is the
/// slowest-varying index (row-major over modes), i.e.
///   index = k_1 d^(n-1) + k_2 d^(n-2) + ... + k_n
/// where k_m is the photon number of mode m.
class FockSpace {
public:
    FockSpace(int n_modes, int cutoff) : n_modes_(n_modes), cutoff_(cutoff) {
        if (n_modes < 1) throw std::invalid_argument("FockSpace: n_modes must be >= 1");
        if (cutoff < 2) throw std::invalid_argument("FockSpace: cutoff must be >= 2");
        dimension_ = 1;
        for (int m = 0; m < n_modes; ++m) {
            dimension_ *= cutoff;
            if (dimension_ > (1L << 26))
                throw std::invalid_argument("FockSpace: dimension exceeds desk scale");
        }
    }

    int n_modes() const { return n_modes_; }
    int cutoff() const { return cutoff_; }
    long dimension() const { return dimension_; }

    /// Index stride of one photon in `mode` (1-based mode numbering).
    long stride(int mode) const {
        check_mode(mode);
        long s = 1;
        for (int m = mode; m < n_modes_; ++m) s *= cutoff_;
        return s;
    }

    /// Photon number of `mode` (1-based) in basis state `index`.
    int occupation(long index, int mode) const {
        return static_cast<int>((index / stride(mode)) % cutoff_);
    }

    /// Sum of all mode occupations in basis state `index`.
    int total_photons(long index) const {
        int t = 0;
        long rest = index;
        for (int m = n_modes_; m >= 1; --m) {
            t += static_cast<int>(rest % cutoff_);
            rest /= cutoff_;
        }
        return t;
    }

    void check_mode(int mode) const {
        if (mode < 1 || mode > n_modes_)
            throw std::invalid_argument("FockSpace: mode index out of range");
    }

    bool operator==(const FockSpace& other) const {
        return n_modes_ == other.n_modes_ && cutoff_ == other.cutoff_;
    }

private:
    int n_modes_;
    int cutoff_;
    long dimension_;
};

/// Dense coefficient vector on a truncated Fock space. May be unnormalized:
/// the ideal eigenstates built on top of this type are non-normalizable and
/// carry meaning coefficient-wise only.
struct FockVector {
    FockSpace space;
    CVector coeffs;

    FockVector(FockSpace s, CVector c) : space(s), coeffs(std::move(c)) {
        if (coeffs.size() != space.dimension())
            throw std::invalid_argument("FockVector: coefficient length mismatch");
    }
};

/// Dense operator matrix on a truncated Fock space.
struct FockOperator {
    FockSpace space;
    CMatrix matrix;

    FockOperator(FockSpace s, CMatrix m) : space(s), matrix(std::move(m)) {
        if (matrix.rows() != space.dimension() || matrix.cols() != space.dimension())
            throw std::invalid_argument("FockOperator: matrix dimension mismatch");
    }
};

FockVector vacuum_vector(const FockSpace& space);
FockOperator identity_op(const FockSpace& space);

/// Ladder pair for one mode, embedded by identity factors on all others.
/// The annihilator has entries sqrt(k) at (index - stride, index); the
/// creator is its exact conjugate transpose.
std::pair<FockOperator, FockOperator> make_ladder(const FockSpace& space, int mode);

/// Quadratures X = (a + a^+)/sqrt(2), P = (a - a^+)/(i sqrt(2)); both Hermitian.
std::pair<FockOperator, FockOperator> quadratures(const FockSpace& space, int mode);

/// Total momentum sum_k P_k.
FockOperator total_momentum_op(const FockSpace& space);
/// Total coordinate sum_k X_k.
FockOperator total_position_op(const FockSpace& space);
/// Relative coordinate X_1 - X_i, i in 2..n.
FockOperator relative_coordinate_op(const FockSpace& space, int i);
/// Relative momentum P_1 - P_i, i in 2..n.
FockOperator relative_momentum_op(const FockSpace& space, int i);

/// Matrix exponential (scaling-and-squaring), target accuracy ~1e-12 in the
/// matrix 1-norm at desk dimensions. Throws on non-finite entries.
FockOperator op_exp(const FockOperator& a);

FockOperator commutator(const FockOperator& a, const FockOperator& b);
FockVector apply(const FockOperator& a, const FockVector& v);
Complex inner(const FockVector& u, const FockVector& v);

/// Zeroes every coefficient whose total photon number exceeds k.
FockVector low_subspace_project(const FockVector& v, int k);
/// Zeroes every row and column whose total photon number exceeds k.
FockOperator low_subspace_project(const FockOperator& a, int k);

/// Basis indices with total photon number <= k, ascending.
std::vector<long> low_subspace_indices(const FockSpace& space, int k);

/// Basis indices with every per-mode occupation <= m, ascending. Truncation
/// headroom is a per-mode affair, so edge-sensitive operator comparisons
/// project onto these boxes.
std::vector<long> box_subspace_indices(const FockSpace& space, int m);

// Matrix-free ladder applications. These are the fast path used by the
// series constructors and the thin-block evaluations; the dense operators
// above remain the reference they are tested against.

/// out += factor * a_mode^+ v
void accumulate_create(const FockSpace& space, int mode, const CVector& v,
                       Complex factor, CVector& out);
/// out += factor * a_mode v
void accumulate_annihilate(const FockSpace& space, int mode, const CVector& v,
                           Complex factor, CVector& out);
/// out += factor * X_mode v (or P_mode v when momentum is set)
void accumulate_quadrature(const FockSpace& space, int mode, bool momentum,
                           const CVector& v, Complex factor, CVector& out);
/// (1/2) sum_ij M_ij a_i^+ a_j^+ v
CVector apply_quadratic_creation(const FockSpace& space, const RMatrix& m, const CVector& v);
/// (1/2) sum_ij M_ij a_i a_j v
CVector apply_quadratic_annihilation(const FockSpace& space, const RMatrix& m, const CVector& v);
/// sum_ij M_ij a_i^+ a_j v
CVector apply_number_bilinear(const FockSpace& space, const RMatrix& m, const CVector& v);

// Batched variants of the same applications. Blocks hold one vector per ROW
// (shape nvecs x dimension), so the per-basis-index updates touch contiguous
// columns.
void accumulate_create(const FockSpace& space, int mode, const CMatrix& v,
                       Complex factor, CMatrix& out);
void accumulate_annihilate(const FockSpace& space, int mode, const CMatrix& v,
                           Complex factor, CMatrix& out);
CMatrix apply_quadratic_creation(const FockSpace& space, const RMatrix& m, const CMatrix& v);
CMatrix apply_quadratic_annihilation(const FockSpace& space, const RMatrix& m, const CMatrix& v);
CMatrix apply_number_bilinear(const FockSpace& space, const RMatrix& m, const CMatrix& v);
void accumulate_quadrature(const FockSpace& space, int mode, bool momentum,
                           const CMatrix& v, Complex factor, CMatrix& out);

/// block <- exp(op) block via a stepped Taylor series; op is any linear
/// applier on blocks. Choose steps of order the spectral scale of op.
template <typename Applier>
void taylor_exp_inplace(Applier&& op, CMatrix& block, int steps) {
    for (int s = 0; s < steps; ++s) {
        CMatrix acc = block;
        CMatrix term = block;
        for (int k = 1; k <= 160; ++k) {
            term = op(term) / (static_cast<double>(steps) * k);
            acc += term;
            if (term.norm() <= 1e-16 * acc.norm()) break;
        }
        block = std::move(acc);
    }
}

}  // namespace mesq
