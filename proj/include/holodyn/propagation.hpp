#pragma once

// Frame integration and trajectory assembly. The stepping rule is the
// exponential midpoint: frame(t + dt) = exp(-i H(t + dt/2) dt) frame(t).
// Each step multiplies by a matrix that is unitary to rounding, so column
// norms and the Gram matrix drift only at rounding level; a symmetric
// reorthonormalization every reortho_every steps removes the accumulation and
// the pre-cleanup drift is logged in the trajectory metadata.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "holodyn/config.hpp"
#include "holodyn/generator.hpp"
#include "holodyn/models.hpp"

namespace holodyn {

inline HermitianMatrix projector(const Frame& f) {
    const ComplexMatrix p = f.matrix() * f.matrix().adjoint();
    // Symmetrized entrywise so hermiticity is exact, not a rounding accident.
    return HermitianMatrix(0.5 * (p + p.adjoint()));
}

// Pdot = -i[H, P], the Schroedinger-consistent projector derivative. The
// difference M - M† with M = H P is exactly anti-Hermitian entrywise, so the
// result is exactly Hermitian.
inline HermitianMatrix projector_derivative_commutator(const HermitianMatrix& h,
                                                       const HermitianMatrix& p) {
    if (h.dim() != p.dim())
        throw DimensionError("projector_derivative_commutator: dimensions differ");
    const ComplexMatrix m = h.matrix() * p.matrix();
    return HermitianMatrix(Complex(0, -1) * (m - m.adjoint()));
}

struct TrajectoryNode {
    Frame frame;
    HermitianMatrix hamiltonian;
    HermitianMatrix projector;
    HermitianMatrix projector_derivative;
    SubspaceGenerator coupling;
};

struct TrajectoryMeta {
    std::string model;
    double dt = 0.0;
    int integrator_order = 2;
    Eigen::Index reortho_every = 50;
    Eigen::Index reortho_count = 0;
    double max_norm_drift = 0.0;
    double max_gram_drift = 0.0;
};

struct Trajectory {
    HamiltonianModel model;
    std::vector<double> times;
    std::vector<TrajectoryNode> nodes;
    TrajectoryMeta meta;

    Eigen::Index node_count() const { return static_cast<Eigen::Index>(nodes.size()); }
    Eigen::Index step_count() const { return node_count() - 1; }
    double dt() const { return meta.dt; }
    const Frame& initial_frame() const { return nodes.front().frame; }
    const HermitianMatrix& initial_projector() const { return nodes.front().projector; }
};

namespace detail {

inline TrajectoryNode make_node(Frame frame, HermitianMatrix h, const Frame& frame0) {
    HermitianMatrix p = projector(frame);
    HermitianMatrix pdot = projector_derivative_commutator(h, p);
    SubspaceGenerator coupling =
        SubspaceGenerator::from_matrix(coupling_matrix(frame, h), frame0);
    return TrajectoryNode{std::move(frame), std::move(h), std::move(p),
                          std::move(pdot), std::move(coupling)};
}

} // namespace detail

inline Trajectory evolve_frames(const HamiltonianModel& model, const ModelConfig& config,
                                Eigen::Index reortho_every = 50) {
    if (reortho_every < 1)
        throw ValidationError("evolve_frames: reortho_every must be >= 1");
    const Frame frame0 = initial_frame(model);

    Trajectory traj;
    traj.model = model;
    traj.meta.model = model_name(model.kind);
    traj.meta.reortho_every = reortho_every;

    // t_final = 0 degenerates to the single node t = 0.
    const Eigen::Index steps =
        (config.t_final > 0.0) ? static_cast<Eigen::Index>(config.steps) : 0;
    const double dt = (steps > 0) ? config.t_final / static_cast<double>(steps) : 0.0;
    traj.meta.dt = dt;

    traj.times.reserve(static_cast<std::size_t>(steps) + 1);
    traj.nodes.reserve(static_cast<std::size_t>(steps) + 1);
    traj.times.push_back(0.0);
    traj.nodes.push_back(detail::make_node(frame0, hamiltonian_at(model, 0.0), frame0));

    ComplexMatrix columns = frame0.matrix();
    for (Eigen::Index k = 0; k < steps; ++k) {
        const double t = k * dt;
        const double t_next = (k + 1 == steps) ? config.t_final : (k + 1) * dt;
        const HermitianMatrix h_mid = hamiltonian_at(model, t + 0.5 * dt);
        const ComplexMatrix step =
            matrix_exponential((Complex(0, -dt) * h_mid.matrix()).eval());
        columns = (step * columns).eval();

        for (Eigen::Index j = 0; j < columns.cols(); ++j)
            traj.meta.max_norm_drift = std::max(traj.meta.max_norm_drift,
                                                std::abs(columns.col(j).norm() - 1.0));
        const double gram_defect =
            (columns.adjoint() * columns -
             ComplexMatrix::Identity(columns.cols(), columns.cols()))
                .norm();
        traj.meta.max_gram_drift = std::max(traj.meta.max_gram_drift, gram_defect);

        if ((k + 1) % reortho_every == 0 && k + 1 < steps) {
            try {
                columns = loewdin_orthonormalize(columns);
            } catch (const DegeneracyError& e) {
                throw PropagationError("evolve_frames: reorthonormalization failed at t = " +
                                       std::to_string(t_next) + " (" + e.what() + ")");
            }
            ++traj.meta.reortho_count;
        }

        traj.times.push_back(t_next);
        traj.nodes.push_back(
            detail::make_node(Frame(columns), hamiltonian_at(model, t_next), frame0));
    }
    return traj;
}

inline Trajectory evolve_frames(const ModelConfig& config, Eigen::Index reortho_every = 50) {
    return evolve_frames(config.model, config, reortho_every);
}

// U(t_k, 0) = frame(t_k) frame(0)†, a partial isometry with source P(0) and
// target P(t_k).
inline PartialIsometry evolution_operator(const Trajectory& traj, Eigen::Index k) {
    if (k < 0 || k >= traj.node_count())
        throw DimensionError("evolution_operator: node index out of range");
    return PartialIsometry{
        traj.nodes[static_cast<std::size_t>(k)].frame.matrix() *
            traj.initial_frame().matrix().adjoint(),
        traj.initial_projector(),
        traj.nodes[static_cast<std::size_t>(k)].projector,
    };
}

struct ProjectorDerivativeEstimate {
    HermitianMatrix value;
    bool one_sided = false;
};

// Finite-difference cross-check of Pdot: central in the interior, one-sided
// (flagged) at the grid ends.
inline ProjectorDerivativeEstimate projector_derivative_fd(const Trajectory& traj,
                                                           Eigen::Index k) {
    const Eigen::Index last = traj.node_count() - 1;
    if (k < 0 || k > last)
        throw DimensionError("projector_derivative_fd: node index out of range");
    if (last < 1)
        throw GridError("projector_derivative_fd: need at least two nodes");
    const auto p = [&traj](Eigen::Index i) {
        return traj.nodes[static_cast<std::size_t>(i)].projector.matrix();
    };
    if (k == 0)
        return {HermitianMatrix((p(1) - p(0)) / traj.dt()), true};
    if (k == last)
        return {HermitianMatrix((p(last) - p(last - 1)) / traj.dt()), true};
    return {HermitianMatrix((p(k + 1) - p(k - 1)) / (2.0 * traj.dt())), false};
}

} // namespace holodyn
