#include <catch2/catch_amalgamated.hpp>

#include <holodyn/propagation.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"

using namespace holodyn;
using oracle::diff_norm;

namespace {

ModelConfig make_config(HamiltonianModel model, double t_final, std::int64_t steps) {
    ModelConfig c;
    c.model = std::move(model);
    c.t_final = t_final;
    c.steps = steps;
    return c;
}

HamiltonianModel spin_half_model(std::vector<Eigen::Index> frame = {0}) {
    HamiltonianModel m;
    m.kind = ModelKind::spin_half_rotating;
    m.dim = 2;
    m.params = {{"omega0", 1.0}, {"omega1", 0.3}, {"omega", 1.0}};
    m.frame_spec.basis_indices = std::move(frame);
    return m;
}

HamiltonianModel tripod_model() {
    HamiltonianModel m;
    m.kind = ModelKind::tripod_dark;
    m.dim = 4;
    m.params = {{"omega1", 1.0}, {"omega1_cos", 0.3}, {"omega2", 0.8},
                {"omega2_sin", 0.4}, {"omega3", 0.6}, {"omega3_cos", -0.2},
                {"nu", 1.0}};
    m.frame_spec.use_model_default = true;
    return m;
}

} // namespace

TEST_CASE("projector", "[propagation]") {
    SECTION("single basis vector") {
        ComplexMatrix col = ComplexMatrix::Zero(2, 1);
        col(0, 0) = 1;
        ComplexMatrix expected(2, 2);
        expected << 1, 0, 0, 0;
        REQUIRE(diff_norm(projector(Frame(col)).matrix(), expected) == 0.0);
    }

    SECTION("full basis gives the identity") {
        const Frame f(ComplexMatrix::Identity(3, 3));
        REQUIRE(diff_norm(projector(f).matrix(), ComplexMatrix::Identity(3, 3)) == 0.0);
    }

    SECTION("rank-1 superposition") {
        ComplexMatrix col(2, 1);
        col << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
        ComplexMatrix expected(2, 2);
        expected << 0.5, 0.5, 0.5, 0.5;
        REQUIRE(diff_norm(projector(Frame(col)).matrix(), expected) <= 1e-15);
    }

    SECTION("idempotency and trace for a generic frame") {
        const Frame f = Frame::orthonormalized(seeded_complex_gaussian(5, 2, 51));
        const ComplexMatrix p = projector(f).matrix();
        REQUIRE(diff_norm(p * p, p) <= 1e-12);
        REQUIRE(std::abs(p.trace() - Complex(2, 0)) <= 1e-12);
    }
}

TEST_CASE("projector_derivative_commutator", "[propagation]") {
    SECTION("commuting H and P give zero") {
        ComplexMatrix h(2, 2), p(2, 2);
        h << 1, 0, 0, 2;
        p << 1, 0, 0, 0;
        REQUIRE(projector_derivative_commutator(HermitianMatrix(h), HermitianMatrix(p))
                    .matrix()
                    .norm() == 0.0);
    }

    SECTION("H = sigma_x, P = |0><0| matches the finite-difference oracle") {
        ComplexMatrix sx(2, 2), p0(2, 2);
        sx << 0, 1, 1, 0;
        p0 << 1, 0, 0, 0;
        const HermitianMatrix pdot =
            projector_derivative_commutator(HermitianMatrix(sx), HermitianMatrix(p0));
        ComplexMatrix expected(2, 2);
        expected << 0, Complex(0, 1), Complex(0, -1), 0;
        REQUIRE(diff_norm(pdot.matrix(), expected) <= 1e-15);

        const auto p_of_t = [&](double t) {
            const ComplexMatrix u =
                matrix_exponential((Complex(0, -t) * sx).eval());
            return (u * p0 * u.adjoint()).eval();
        };
        REQUIRE(diff_norm(oracle::fd_derivative(p_of_t, 0.0, 1e-5), pdot.matrix()) <=
                1e-9);
    }

    SECTION("zero Hamiltonian gives zero and the trace always vanishes") {
        const HermitianMatrix h = seeded_random_hermitian(4, 61);
        const Frame f = Frame::orthonormalized(seeded_complex_gaussian(4, 2, 62));
        const HermitianMatrix pdot = projector_derivative_commutator(h, projector(f));
        REQUIRE(std::abs(pdot.matrix().trace()) <= 1e-14);
        REQUIRE(projector_derivative_commutator(HermitianMatrix(ComplexMatrix::Zero(4, 4)),
                                                projector(f))
                    .matrix()
                    .norm() == 0.0);
        REQUIRE_THROWS_AS(projector_derivative_commutator(
                              seeded_random_hermitian(3, 1), projector(f)),
                          DimensionError);
    }
}

TEST_CASE("evolve_frames on closed-form models", "[propagation]") {
    SECTION("zero model leaves the frame constant") {
        HamiltonianModel m;
        m.kind = ModelKind::zero;
        m.dim = 3;
        m.frame_spec.basis_indices = {0, 2};
        const Trajectory traj = evolve_frames(make_config(m, 1.0, 20));
        REQUIRE(traj.node_count() == 21);
        for (const TrajectoryNode& node : traj.nodes)
            REQUIRE(diff_norm(node.frame.matrix(), traj.initial_frame().matrix()) <=
                    1e-14);
    }

    SECTION("static_diagonal eigenstate acquires exactly the eigenphase") {
        HamiltonianModel m;
        m.kind = ModelKind::static_diagonal;
        m.dim = 2;
        m.params = {{"d1", 1.0}, {"d2", 2.0}};
        m.frame_spec.basis_indices = {0};
        const Trajectory traj = evolve_frames(make_config(m, M_PI, 100));
        ComplexMatrix expected(2, 1);
        expected << -1, 0;
        REQUIRE(diff_norm(traj.nodes.back().frame.matrix(), expected) <= 1e-10);
    }

    SECTION("spin_half frame matches the closed-form propagator") {
        const HamiltonianModel m = spin_half_model();
        const Trajectory traj = evolve_frames(make_config(m, 2.0, 2000));
        const ComplexMatrix expected =
            reference_propagator(m, 2.0)->col(0);
        REQUIRE(diff_norm(traj.nodes.back().frame.matrix(), expected) <= 5e-6);
    }

    SECTION("global error shrinks at second order") {
        const HamiltonianModel m = spin_half_model();
        std::vector<double> dts, errs;
        for (std::int64_t steps : {250, 500, 1000, 2000}) {
            const Trajectory traj = evolve_frames(make_config(m, 2.0, steps));
            dts.push_back(traj.dt());
            errs.push_back(diff_norm(traj.nodes.back().frame.matrix(),
                                     reference_propagator(m, 2.0)->col(0)));
        }
        const double slope = oracle::fit_loglog_slope(dts, errs);
        REQUIRE(slope > 1.8);
        REQUIRE(slope < 2.2);
    }
}

TEST_CASE("trajectory invariants", "[propagation]") {
    for (const HamiltonianModel& m : {spin_half_model(), tripod_model()}) {
        const Trajectory traj = evolve_frames(make_config(m, 2.0, 400));

        SECTION("node structure for " + traj.meta.model) {
            REQUIRE(traj.meta.max_norm_drift <= 1e-10);
            REQUIRE(traj.meta.max_gram_drift <= 1e-10);
            for (Eigen::Index k = 0; k < traj.node_count(); ++k) {
                const TrajectoryNode& node = traj.nodes[static_cast<std::size_t>(k)];
                REQUIRE(node.frame.gram_defect() <= 1e-10);
                REQUIRE(diff_norm(node.projector.matrix(),
                                  node.frame.matrix() * node.frame.matrix().adjoint()) <=
                        1e-13);
                REQUIRE(std::abs(node.projector_derivative.matrix().trace()) <= 1e-10);
                REQUIRE(node.coupling.anti_hermiticity_defect() <= 1e-12);
            }
        }

        SECTION("grid is uniform for " + traj.meta.model) {
            for (Eigen::Index k = 1; k < traj.node_count(); ++k)
                REQUIRE(traj.times[static_cast<std::size_t>(k)] -
                            traj.times[static_cast<std::size_t>(k - 1)] ==
                        Catch::Approx(traj.dt()).margin(1e-15));
        }
    }

    SECTION("reorthonormalization cadence is honored and logged") {
        const Trajectory traj =
            evolve_frames(spin_half_model(), make_config(spin_half_model(), 2.0, 200), 50);
        REQUIRE(traj.meta.reortho_every == 50);
        REQUIRE(traj.meta.reortho_count == 3);
    }

    SECTION("t_final = 0 degenerates to a single node") {
        const Trajectory traj = evolve_frames(make_config(spin_half_model(), 0.0, 10));
        REQUIRE(traj.node_count() == 1);
        REQUIRE(traj.times.front() == 0.0);
    }
}

TEST_CASE("evolution_operator", "[propagation]") {
    const Trajectory traj = evolve_frames(make_config(spin_half_model(), 2.0, 200));

    SECTION("U(0,0) is the initial projector") {
        REQUIRE(diff_norm(evolution_operator(traj, 0).matrix,
                          traj.initial_projector().matrix()) <= 1e-14);
    }

    SECTION("every node is a partial isometry that intertwines the projectors") {
        for (Eigen::Index k = 0; k < traj.node_count(); k += 20) {
            const PartialIsometry u = evolution_operator(traj, k);
            const auto [src, tgt] = u.defects();
            REQUIRE(src <= 1e-10);
            REQUIRE(tgt <= 1e-10);
            REQUIRE((u.target_projector.matrix() * u.matrix - u.matrix).norm() <= 1e-10);
            REQUIRE((u.matrix * u.source_projector.matrix() - u.matrix).norm() <= 1e-10);
        }
    }

    SECTION("full-rank frame gives a unitary") {
        const Trajectory full =
            evolve_frames(make_config(spin_half_model({0, 1}), 2.0, 200));
        const ComplexMatrix u = evolution_operator(full, full.node_count() - 1).matrix;
        REQUIRE(diff_norm(u.adjoint() * u, ComplexMatrix::Identity(2, 2)) <= 1e-10);
    }

    SECTION("index bounds") {
        REQUIRE_THROWS_AS(evolution_operator(traj, -1), DimensionError);
        REQUIRE_THROWS_AS(evolution_operator(traj, traj.node_count()), DimensionError);
    }
}

TEST_CASE("projector_derivative_fd", "[propagation]") {
    SECTION("constant projector differences to zero") {
        HamiltonianModel m;
        m.kind = ModelKind::zero;
        m.dim = 2;
        m.frame_spec.basis_indices = {0};
        const Trajectory traj = evolve_frames(make_config(m, 1.0, 10));
        REQUIRE(projector_derivative_fd(traj, 5).value.matrix().norm() <= 1e-13);
    }

    SECTION("agrees with the commutator form at second order") {
        std::vector<double> dts, errs;
        for (std::int64_t steps : {200, 400, 800, 1600}) {
            const Trajectory traj = evolve_frames(make_config(spin_half_model(), 2.0, steps));
            double worst = 0.0;
            for (Eigen::Index k = 1; k < traj.node_count() - 1; ++k)
                worst = std::max(
                    worst,
                    diff_norm(projector_derivative_fd(traj, k).value.matrix(),
                              traj.nodes[static_cast<std::size_t>(k)]
                                  .projector_derivative.matrix()));
            dts.push_back(traj.dt());
            errs.push_back(worst);
        }
        const double slope = oracle::fit_loglog_slope(dts, errs);
        REQUIRE(slope > 1.8);
        REQUIRE(slope < 2.2);
    }

    SECTION("boundary nodes use a flagged one-sided difference") {
        const Trajectory traj = evolve_frames(make_config(spin_half_model(), 1.0, 10));
        REQUIRE(projector_derivative_fd(traj, 0).one_sided);
        REQUIRE(projector_derivative_fd(traj, traj.node_count() - 1).one_sided);
        REQUIRE_FALSE(projector_derivative_fd(traj, 5).one_sided);
        REQUIRE_THROWS_AS(projector_derivative_fd(traj, 99), DimensionError);

        const Trajectory point = evolve_frames(make_config(spin_half_model(), 0.0, 1));
        REQUIRE_THROWS_AS(projector_derivative_fd(point, 0), GridError);
    }
}

TEST_CASE("frame covariance of trajectory quantities", "[propagation][covariance]") {
    const HamiltonianModel m = tripod_model();
    const Frame f0 = initial_frame(m);
    const ComplexMatrix v = seeded_random_unitary(f0.rank(), 2026);

    HamiltonianModel rotated = m;
    rotated.frame_spec.use_model_default = false;
    rotated.frame_spec.columns = f0.matrix() * v;

    const Trajectory a = evolve_frames(make_config(m, 1.0, 100));
    const Trajectory b = evolve_frames(make_config(rotated, 1.0, 100));
    for (Eigen::Index k = 0; k < a.node_count(); k += 10) {
        const auto& na = a.nodes[static_cast<std::size_t>(k)];
        const auto& nb = b.nodes[static_cast<std::size_t>(k)];
        REQUIRE(diff_norm(na.projector.matrix(), nb.projector.matrix()) <= 1e-9);
        REQUIRE(diff_norm(na.projector_derivative.matrix(),
                          nb.projector_derivative.matrix()) <= 1e-9);
        REQUIRE(diff_norm(evolution_operator(a, k).matrix,
                          evolution_operator(b, k).matrix) <= 1e-9);
        REQUIRE(diff_norm(na.coupling.embedding(), nb.coupling.embedding()) <= 1e-9);
    }
}
