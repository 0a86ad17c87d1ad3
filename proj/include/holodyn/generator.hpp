#pragma once

// Coupling generator on the initial subspace: an anti-Hermitian rank x rank
// matrix in the initial-frame basis together with its N x N embedding
// frame0 * matrix * frame0†. Both views are kept because the defining matrix
// elements live in the small basis while the operator identities are stated
// on the full space.

#include "holodyn/linalg.hpp"

namespace holodyn {

// F_{jk}(t) = -i <psi_j(t)| H(t) |psi_k(t)>, anti-Hermitian to rounding.
inline ComplexMatrix coupling_matrix(const Frame& frame_t, const HermitianMatrix& h) {
    if (h.dim() != frame_t.dim())
        throw DimensionError("coupling_matrix: frame and Hamiltonian dimensions differ");
    return Complex(0, -1) *
           (frame_t.matrix().adjoint() * (h.matrix() * frame_t.matrix()));
}

class SubspaceGenerator {
public:
    // Builds the embedding from the small matrix.
    static SubspaceGenerator from_matrix(const ComplexMatrix& m, const Frame& frame0) {
        if (m.rows() != m.cols() || m.rows() != frame0.rank())
            throw DimensionError("SubspaceGenerator: matrix must be rank x rank");
        return SubspaceGenerator(m, frame0.matrix() * m * frame0.matrix().adjoint(),
                                 frame0);
    }

    // Keeps the given full-space operator verbatim and restricts it to get
    // the small matrix; the support check guarantees nothing is lost.
    static SubspaceGenerator from_embedding(const ComplexMatrix& emb,
                                            const Frame& frame0) {
        if (emb.rows() != emb.cols() || emb.rows() != frame0.dim())
            throw DimensionError("SubspaceGenerator: embedding must be dim x dim");
        return SubspaceGenerator(
            frame0.matrix().adjoint() * emb * frame0.matrix(), emb, frame0);
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    const ComplexMatrix& embedding() const { return embedding_; }
    Eigen::Index rank() const { return matrix_.rows(); }
    Eigen::Index dim() const { return embedding_.rows(); }
    double anti_hermiticity_defect() const { return anti_hermiticity_defect_; }
    double support_defect() const { return support_defect_; }

private:
    SubspaceGenerator(ComplexMatrix m, ComplexMatrix emb, const Frame& frame0)
        : matrix_(std::move(m)), embedding_(std::move(emb)) {
        require_finite(matrix_, "SubspaceGenerator");
        require_finite(embedding_, "SubspaceGenerator");
        anti_hermiticity_defect_ = (matrix_ + matrix_.adjoint()).norm();
        if (anti_hermiticity_defect_ > 1e-12)
            throw ValidationError("SubspaceGenerator: anti-hermiticity defect " +
                                  std::to_string(anti_hermiticity_defect_));
        const ComplexMatrix p0 = frame0.matrix() * frame0.matrix().adjoint();
        support_defect_ = (p0 * embedding_ * p0 - embedding_).norm();
        if (support_defect_ > 1e-12)
            throw ValidationError("SubspaceGenerator: support defect " +
                                  std::to_string(support_defect_));
    }

    ComplexMatrix matrix_;
    ComplexMatrix embedding_;
    double anti_hermiticity_defect_ = 0.0;
    double support_defect_ = 0.0;
};

} // namespace holodyn
