#pragma once

// Ordered-exponential factors of the evolution operator and the identity
// checks tying them together. The holonomy factor is the path-ordered
// exponential of the projector derivative (later times LEFT, defining ODE
// Wdot = Pdot W); the dynamic factor is the reverse-time-ordered exponential
// of the coupling generator (later times RIGHT, defining ODE Ddot = D F).
// Both products use one exponential of a midpoint-sampled generator per step,
// matching the trajectory integrator's order.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "holodyn/propagation.hpp"

namespace holodyn {

enum class ProductOrdering { standard, reversed };
enum class GeneratorRoute { coupling, evolution_operator };

struct HolonomyOptions {
    bool repolarize = false;
    ProductOrdering ordering = ProductOrdering::standard;
};

struct DynamicOptions {
    GeneratorRoute route = GeneratorRoute::coupling;
    ProductOrdering ordering = ProductOrdering::standard;
};

// Per-node scalar diagnostics (times carry the grid positions).
struct NodeSeries {
    std::vector<double> times;
    std::vector<double> values;

    double max_value() const {
        double worst = 0.0;
        for (double v : values) worst = std::max(worst, v);
        return worst;
    }
};

inline SubspaceGenerator embed_generator(const ComplexMatrix& matrix,
                                         const Frame& frame0) {
    return SubspaceGenerator::from_matrix(matrix, frame0);
}

// F(t,0) = -i U†(t,0) H(t) U(t,0), evaluated literally from the evolution
// operator. Algebraically identical to embedding the coupling matrix; the two
// routes are kept strictly separate so their agreement is a measurement.
inline SubspaceGenerator generator_from_evolution(const ComplexMatrix& u,
                                                  const HermitianMatrix& h,
                                                  const Frame& frame0) {
    if (u.rows() != u.cols() || u.rows() != h.dim() || u.rows() != frame0.dim())
        throw DimensionError("generator_from_evolution: nonconformable dimensions");
    return SubspaceGenerator::from_embedding(
        Complex(0, -1) * (u.adjoint() * (h.matrix() * u)), frame0);
}

// Sample at the midpoint of step k: H(t_k + dt/2) and the node frame carried
// a half step forward by its own midpoint rule.
struct MidpointSample {
    double t;
    Frame frame;
    HermitianMatrix hamiltonian;
};

inline std::vector<MidpointSample> midpoint_samples(const Trajectory& traj) {
    std::vector<MidpointSample> samples;
    const Eigen::Index steps = traj.step_count();
    samples.reserve(static_cast<std::size_t>(std::max<Eigen::Index>(steps, 0)));
    const double dt = traj.dt();
    for (Eigen::Index k = 0; k < steps; ++k) {
        const double t_node = traj.times[static_cast<std::size_t>(k)];
        const HermitianMatrix h_quarter = hamiltonian_at(traj.model, t_node + 0.25 * dt);
        const ComplexMatrix half_step =
            matrix_exponential((Complex(0, -0.5 * dt) * h_quarter.matrix()).eval());
        samples.push_back(MidpointSample{
            t_node + 0.5 * dt,
            Frame(half_step * traj.nodes[static_cast<std::size_t>(k)].frame.matrix()),
            hamiltonian_at(traj.model, t_node + 0.5 * dt)});
    }
    return samples;
}

// Partial-isometry factor of the polar decomposition, truncated to the given
// rank. Used only under the repolarize flag.
inline ComplexMatrix polar_isometry_factor(const ComplexMatrix& m, Eigen::Index rank,
                                           double rank_tol = 1e-12) {
    if (rank < 1 || rank > std::min(m.rows(), m.cols()))
        throw DimensionError("polar_isometry_factor: rank out of range");
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smallest = svd.singularValues()(rank - 1);
    if (smallest < rank_tol)
        throw DecompositionError(
            "polar_isometry_factor: rank collapse (singular value " +
            std::to_string(smallest) + ")");
    return svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
}

// Partial products W_0 = P(0), W_{k+1} = exp(Pdot_mid dt) W_k. The reversed
// ordering exists solely as a negative control for the 𝒫 convention.
inline std::vector<ComplexMatrix> holonomy_partials(const Trajectory& traj,
                                                    const HolonomyOptions& options = {}) {
    const std::vector<MidpointSample> samples = midpoint_samples(traj);
    const double dt = traj.dt();
    std::vector<ComplexMatrix> partials;
    partials.reserve(samples.size() + 1);
    partials.push_back(traj.initial_projector().matrix());
    for (const MidpointSample& s : samples) {
        const HermitianMatrix pdot_mid =
            projector_derivative_commutator(s.hamiltonian, projector(s.frame));
        const ComplexMatrix step =
            matrix_exponential((dt * pdot_mid.matrix()).eval());
        ComplexMatrix next = (options.ordering == ProductOrdering::standard)
                                 ? (step * partials.back()).eval()
                                 : (partials.back() * step).eval();
        if (options.repolarize)
            next = polar_isometry_factor(next, traj.initial_frame().rank());
        partials.push_back(std::move(next));
    }
    return partials;
}

inline PartialIsometry holonomy_factor(const Trajectory& traj,
                                       const HolonomyOptions& options = {}) {
    return PartialIsometry{holonomy_partials(traj, options).back(),
                           traj.initial_projector(), traj.nodes.back().projector};
}

// Partial products of the dynamic factor in the initial-frame basis:
// D_0 = I_rank, D_{k+1} = D_k exp(g_mid dt) with later factors to the right.
// The full-space factor P(0) T̄ e^{∫F} equals frame0 (Π exp(g dt)) frame0†
// exactly (the embedded exponentials telescope through frame0† frame0 = I),
// and the restricted product keeps rounding independent of the complement.
inline std::vector<ComplexMatrix> dynamic_restriction_partials(
    const Trajectory& traj, const DynamicOptions& options = {}) {
    const std::vector<MidpointSample> samples = midpoint_samples(traj);
    const Frame& frame0 = traj.initial_frame();
    const double dt = traj.dt();
    std::vector<ComplexMatrix> partials;
    partials.reserve(samples.size() + 1);
    partials.push_back(ComplexMatrix::Identity(frame0.rank(), frame0.rank()));
    for (const MidpointSample& s : samples) {
        ComplexMatrix g;
        if (options.route == GeneratorRoute::coupling) {
            g = coupling_matrix(s.frame, s.hamiltonian);
        } else {
            const ComplexMatrix u_mid = s.frame.matrix() * frame0.matrix().adjoint();
            g = generator_from_evolution(u_mid, s.hamiltonian, frame0).matrix();
        }
        const ComplexMatrix step = matrix_exponential((dt * g).eval());
        partials.push_back(options.ordering == ProductOrdering::standard
                               ? (partials.back() * step).eval()
                               : (step * partials.back()).eval());
    }
    return partials;
}

inline ComplexMatrix dynamic_factor(const Trajectory& traj,
                                    const DynamicOptions& options = {}) {
    const Frame& frame0 = traj.initial_frame();
    return frame0.matrix() * dynamic_restriction_partials(traj, options).back() *
           frame0.matrix().adjoint();
}

// Largest commutator norm between adjacent midpoint generators of each
// ordered product. The reversed-ordering negative controls are vacuous when
// the generators commute (both orderings give the same product), so callers
// gate those checks on these gauges.
inline double holonomy_generator_noncommutativity(const Trajectory& traj) {
    double worst = 0.0;
    ComplexMatrix previous;
    for (const MidpointSample& s : midpoint_samples(traj)) {
        const ComplexMatrix g =
            projector_derivative_commutator(s.hamiltonian, projector(s.frame)).matrix();
        if (previous.size() > 0)
            worst = std::max(worst, (g * previous - previous * g).norm());
        previous = g;
    }
    return worst;
}

inline double dynamic_generator_noncommutativity(const Trajectory& traj) {
    double worst = 0.0;
    ComplexMatrix previous;
    for (const MidpointSample& s : midpoint_samples(traj)) {
        const ComplexMatrix g = coupling_matrix(s.frame, s.hamiltonian);
        if (previous.size() > 0)
            worst = std::max(worst, (g * previous - previous * g).norm());
        previous = g;
    }
    return worst;
}

// Defining-ODE residual of the holonomy partial products against the
// trajectory's node Pdot, central differences at interior nodes.
inline NodeSeries holonomy_ode_residuals(const Trajectory& traj,
                                         const std::vector<ComplexMatrix>& partials) {
    if (static_cast<Eigen::Index>(partials.size()) != traj.node_count())
        throw DimensionError("holonomy_ode_residuals: partials do not match trajectory");
    if (traj.step_count() < 2)
        throw GridError("holonomy_ode_residuals: need at least two steps");
    const double dt = traj.dt();
    NodeSeries series;
    for (Eigen::Index k = 1; k < traj.node_count() - 1; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const ComplexMatrix derivative = (partials[i + 1] - partials[i - 1]) / (2.0 * dt);
        const ComplexMatrix rhs =
            traj.nodes[i].projector_derivative.matrix() * partials[i];
        series.times.push_back(traj.times[i]);
        series.values.push_back((derivative - rhs).norm());
    }
    return series;
}

// Same for the dynamic factor, in the initial-frame restriction where the
// Frobenius norm coincides with the embedded residual.
inline NodeSeries dynamic_ode_residuals(const Trajectory& traj,
                                        const std::vector<ComplexMatrix>& partials) {
    if (static_cast<Eigen::Index>(partials.size()) != traj.node_count())
        throw DimensionError("dynamic_ode_residuals: partials do not match trajectory");
    if (traj.step_count() < 2)
        throw GridError("dynamic_ode_residuals: need at least two steps");
    const double dt = traj.dt();
    NodeSeries series;
    for (Eigen::Index k = 1; k < traj.node_count() - 1; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const ComplexMatrix derivative = (partials[i + 1] - partials[i - 1]) / (2.0 * dt);
        const ComplexMatrix rhs = partials[i] * traj.nodes[i].coupling.matrix();
        series.times.push_back(traj.times[i]);
        series.values.push_back((derivative - rhs).norm());
    }
    return series;
}

// Central-difference residual of Udot = Pdot U + U F at interior nodes.
inline NodeSeries verify_ode(const Trajectory& traj) {
    if (traj.step_count() < 2)
        throw GridError("verify_ode: need at least two steps");
    const double dt = traj.dt();
    NodeSeries series;
    for (Eigen::Index k = 1; k < traj.node_count() - 1; ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const ComplexMatrix u_prev = evolution_operator(traj, k - 1).matrix;
        const ComplexMatrix u_here = evolution_operator(traj, k).matrix;
        const ComplexMatrix u_next = evolution_operator(traj, k + 1).matrix;
        const ComplexMatrix residual =
            (u_next - u_prev) / (2.0 * dt) -
            traj.nodes[i].projector_derivative.matrix() * u_here -
            u_here * traj.nodes[i].coupling.embedding();
        series.times.push_back(traj.times[i]);
        series.values.push_back(residual.norm());
    }
    return series;
}

// ‖-i U† H U - embedded coupling matrix‖ at every node: an exact operator
// identity, so the residual is rounding-level at any step size.
inline NodeSeries generator_identity_residuals(const Trajectory& traj) {
    NodeSeries series;
    for (Eigen::Index k = 0; k < traj.node_count(); ++k) {
        const std::size_t i = static_cast<std::size_t>(k);
        const SubspaceGenerator direct = generator_from_evolution(
            evolution_operator(traj, k).matrix, traj.nodes[i].hamiltonian,
            traj.initial_frame());
        series.times.push_back(traj.times[i]);
        series.values.push_back(
            (direct.embedding() - traj.nodes[i].coupling.embedding()).norm());
    }
    return series;
}

// ‖D_a - D_b‖ for the dynamic factor built from coupling matrix elements
// (route a) versus from -i U† H U (route b) on the same samples. An exact
// identity: the result stays at rounding level independent of dt.
inline double circularity_equivalence(const Trajectory& traj) {
    const ComplexMatrix d_coupling =
        dynamic_factor(traj, DynamicOptions{GeneratorRoute::coupling,
                                            ProductOrdering::standard});
    const ComplexMatrix d_evolution =
        dynamic_factor(traj, DynamicOptions{GeneratorRoute::evolution_operator,
                                            ProductOrdering::standard});
    return (d_coupling - d_evolution).norm();
}

struct DecompositionOptions {
    bool repolarize_holonomy = false;
};

struct DecompositionResult {
    PartialIsometry holonomy;
    ComplexMatrix dynamic_part;
    ComplexMatrix product;
    double residual_factorization = 0.0;
    NodeSeries residual_ode;
    NodeSeries residual_identity;
    double residual_circularity = 0.0;
    std::pair<double, double> isometry_defect_holonomy{0.0, 0.0};
};

inline DecompositionResult verify_factorization(const Trajectory& traj,
                                                const DecompositionOptions& options = {}) {
    HolonomyOptions holonomy_options;
    holonomy_options.repolarize = options.repolarize_holonomy;

    DecompositionResult result{
        holonomy_factor(traj, holonomy_options),
        dynamic_factor(traj),
        ComplexMatrix(),
        0.0,
        NodeSeries{},
        generator_identity_residuals(traj),
        circularity_equivalence(traj),
        {0.0, 0.0},
    };
    result.product = result.holonomy.matrix * result.dynamic_part;
    result.residual_factorization =
        (evolution_operator(traj, traj.node_count() - 1).matrix - result.product).norm();
    if (traj.step_count() >= 2)
        result.residual_ode = verify_ode(traj);
    result.isometry_defect_holonomy = result.holonomy.defects();

    const auto finite = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!finite(result.residual_factorization) || !finite(result.residual_circularity))
        throw NumericError("verify_factorization: non-finite residual");
    return result;
}

} // namespace holodyn
