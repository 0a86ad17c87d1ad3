#pragma once

// Dense complex linear algebra core: structure-preserving matrix exponentials,
// Frobenius diagnostics, Loewdin orthonormalization, seeded randomness, and
// the small value types (HermitianMatrix, Frame, PartialIsometry) the rest of
// the library is written in terms of. Everything here is a pure function of
// its inputs; values are immutable after construction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "holodyn/errors.hpp"

namespace holodyn {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline void require_finite(const ComplexMatrix& m, const char* context) {
    if (!m.allFinite())
        throw NumericError(std::string(context) + ": matrix has non-finite entries");
}

inline double frobenius_norm(const ComplexMatrix& m) {
    require_finite(m, "frobenius_norm");
    return m.norm();
}

namespace detail {

// Plain scaling-and-squaring with a truncated Taylor series; used only for
// generators without Hermitian or anti-Hermitian structure.
inline ComplexMatrix exponential_taylor_scaled(const ComplexMatrix& a) {
    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    ComplexMatrix x = a;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
        x /= std::pow(2.0, squarings);
    }
    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * x / static_cast<double>(k)).eval();
        result += term;
        if (term.norm() <= 1e-18 * result.norm())
            break;
    }
    for (int s = 0; s < squarings; ++s)
        result = (result * result).eval();
    return result;
}

} // namespace detail

// e^A. (Anti-)Hermitian generators go through an eigendecomposition, so for
// anti-Hermitian A the result is unitary to rounding and for Hermitian A it
// is Hermitian positive-definite to rounding; anything else falls back to
// scaling-and-squaring.
inline ComplexMatrix matrix_exponential(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw DimensionError("matrix_exponential: matrix must be square");
    require_finite(a, "matrix_exponential");
    if (a.isZero(0.0))
        return ComplexMatrix::Identity(a.rows(), a.cols());
    const double structure_tol = 1e-13 * std::max(1.0, a.norm());
    if ((a - a.adjoint()).norm() <= structure_tol) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
        const ComplexMatrix& v = es.eigenvectors();
        const RealVector exps = es.eigenvalues().array().exp();
        return v * exps.asDiagonal() * v.adjoint();
    }
    if ((a + a.adjoint()).norm() <= structure_tol) {
        // A = -iB with B Hermitian, so e^A = V e^{-i diag} V†.
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((Complex(0, 1) * a).eval());
        const ComplexMatrix& v = es.eigenvectors();
        const ComplexVector phases =
            (Complex(0, -1) * es.eigenvalues().cast<Complex>().array()).exp();
        return v * phases.asDiagonal() * v.adjoint();
    }
    return detail::exponential_taylor_scaled(a);
}

// (‖v†v - source‖_F, ‖vv† - target‖_F); reported, never assumed.
inline std::pair<double, double> isometry_defect(const ComplexMatrix& v,
                                                 const ComplexMatrix& source,
                                                 const ComplexMatrix& target) {
    if (source.rows() != source.cols() || target.rows() != target.cols() ||
        v.cols() != source.rows() || v.rows() != target.rows())
        throw DimensionError("isometry_defect: nonconformable dimensions");
    return {(v.adjoint() * v - source).norm(), (v * v.adjoint() - target).norm()};
}

// Symmetric (Loewdin) orthonormalization: columns <- columns (C†C)^{-1/2},
// iterated to rounding level so the map is a fixed point on its own output.
// No column is privileged and the column span is preserved.
inline ComplexMatrix loewdin_orthonormalize(const ComplexMatrix& columns,
                                            double rank_tol = 1e-12) {
    if (columns.cols() < 1 || columns.rows() < columns.cols())
        throw DimensionError("loewdin_orthonormalize: need 1 <= cols <= rows");
    require_finite(columns, "loewdin_orthonormalize");
    ComplexMatrix c = columns;
    const Eigen::Index rank = c.cols();
    for (int pass = 0; pass < 4; ++pass) {
        const ComplexMatrix gram = c.adjoint() * c;
        const double defect = (gram - ComplexMatrix::Identity(rank, rank)).norm();
        if (defect <= 1e-15)
            break;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
        const double smallest_sv = std::sqrt(std::max(es.eigenvalues().minCoeff(), 0.0));
        if (smallest_sv < rank_tol)
            throw DegeneracyError(
                "loewdin_orthonormalize: columns numerically rank-deficient (smallest "
                "singular value " +
                std::to_string(smallest_sv) + ")");
        const RealVector inv_sqrt = es.eigenvalues().array().rsqrt();
        const ComplexMatrix& v = es.eigenvectors();
        c = (c * (v * inv_sqrt.asDiagonal() * v.adjoint())).eval();
    }
    return c;
}

// N x N complex Hermitian operator; hermiticity is checked at construction.
class HermitianMatrix {
public:
    explicit HermitianMatrix(ComplexMatrix m) {
        if (m.rows() != m.cols())
            throw DimensionError("HermitianMatrix: matrix must be square");
        require_finite(m, "HermitianMatrix");
        const double defect = (m - m.adjoint()).norm();
        if (defect > 1e-12 * std::max(1.0, m.norm()))
            throw ValidationError("HermitianMatrix: hermiticity defect " +
                                  std::to_string(defect));
        m_ = std::move(m);
    }

    const ComplexMatrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

private:
    ComplexMatrix m_;
};

// N x rank matrix with orthonormal columns.
class Frame {
public:
    explicit Frame(ComplexMatrix columns, double gram_tol = 1e-10) {
        if (columns.cols() < 1 || columns.rows() < columns.cols())
            throw DimensionError("Frame: need 1 <= rank <= dim");
        require_finite(columns, "Frame");
        cols_ = std::move(columns);
        const double defect = gram_defect_of(cols_);
        if (defect > gram_tol)
            throw ValidationError("Frame: gram defect " + std::to_string(defect) +
                                  " exceeds tolerance " + std::to_string(gram_tol));
    }

    // Loewdin-orthonormalizes arbitrary linearly independent columns.
    static Frame orthonormalized(const ComplexMatrix& columns, double rank_tol = 1e-12) {
        return Frame(loewdin_orthonormalize(columns, rank_tol));
    }

    const ComplexMatrix& matrix() const { return cols_; }
    Eigen::Index dim() const { return cols_.rows(); }
    Eigen::Index rank() const { return cols_.cols(); }
    double gram_defect() const { return gram_defect_of(cols_); }

private:
    static double gram_defect_of(const ComplexMatrix& c) {
        return (c.adjoint() * c - ComplexMatrix::Identity(c.cols(), c.cols())).norm();
    }

    ComplexMatrix cols_;
};

inline Frame reorthonormalize(const Frame& f) {
    return Frame(loewdin_orthonormalize(f.matrix()));
}

// V with V†V = source and VV† = target; defects are reported, not enforced.
struct PartialIsometry {
    ComplexMatrix matrix;
    HermitianMatrix source_projector;
    HermitianMatrix target_projector;

    std::pair<double, double> defects() const {
        return isometry_defect(matrix, source_projector.matrix(),
                               target_projector.matrix());
    }
};

inline std::pair<double, double> isometry_defect(const PartialIsometry& v) {
    return v.defects();
}

// Complex Gaussian draws come from mt19937_64 seeded as given, filled
// row-major with the real part drawn before the imaginary part. Deterministic
// within a build; cross-platform bit-exactness is not promised.
inline ComplexMatrix seeded_complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                                             std::uint64_t seed) {
    if (rows < 1 || cols < 1)
        throw DimensionError("seeded_complex_gaussian: dimensions must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
// diagonal phases folded into Q so the factorization is unique.
inline ComplexMatrix seeded_random_unitary(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1)
        throw DimensionError("seeded_random_unitary: dim must be >= 1");
    const ComplexMatrix g = seeded_complex_gaussian(dim, dim, seed);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : Complex(1, 0);
    }
    return q;
}

inline HermitianMatrix seeded_random_hermitian(Eigen::Index dim, std::uint64_t seed) {
    const ComplexMatrix g = seeded_complex_gaussian(dim, dim, seed);
    return HermitianMatrix(0.5 * (g + g.adjoint()));
}

} // namespace holodyn
