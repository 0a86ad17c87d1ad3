#pragma once

// Hamiltonian catalog. Every model is declarative: a kind, a dimension, a
// real-valued parameter map, and an initial-frame specification. hamiltonian_at
// is pure and reentrant; models are immutable once built.
//
// Conventions fixed here so tests are unambiguous:
//   sigma_z = diag(1,-1), sigma_x off-diagonal 1s, sigma_y off-diagonal -i/+i.
//   spin_half_rotating: H = (omega0/2) sz + (omega1/2)(sx cos wt + sy sin wt).
//   tripod_dark: levels 0..2 are ground states, level 3 the excited state,
//     H = sum_i Omega_i(t)/2 (|e><g_i| + |g_i><e|) with each amplitude a
//     truncated Fourier series Omega_i(t) = omega_i + omega_i_cos cos(nu t)
//     + omega_i_sin sin(nu t); the default frame is the two t = 0 dark states.
//   random_smooth: H = A + B cos(nu t) + C sin(nu t) with A, B, C seeded
//     random Hermitian (mt19937_64 seeds seed, seed+1, seed+2).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holodyn/linalg.hpp"

namespace holodyn {

enum class ModelKind { zero, static_diagonal, spin_half_rotating, tripod_dark, random_smooth };

inline ModelKind model_kind_from_name(const std::string& name) {
    if (name == "zero") return ModelKind::zero;
    if (name == "static_diagonal") return ModelKind::static_diagonal;
    if (name == "spin_half_rotating") return ModelKind::spin_half_rotating;
    if (name == "tripod_dark") return ModelKind::tripod_dark;
    if (name == "random_smooth") return ModelKind::random_smooth;
    throw ValidationError("model.name: unknown model '" + name + "'");
}

inline std::string model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::zero: return "zero";
        case ModelKind::static_diagonal: return "static_diagonal";
        case ModelKind::spin_half_rotating: return "spin_half_rotating";
        case ModelKind::tripod_dark: return "tripod_dark";
        case ModelKind::random_smooth: return "random_smooth";
    }
    throw ValidationError("model.name: unknown model kind");
}

// Initial subspace: a list of basis-vector indices, explicit column vectors
// (orthonormalized symmetrically), or the model's default frame.
struct FrameSpec {
    std::vector<Eigen::Index> basis_indices;
    ComplexMatrix columns;
    bool use_model_default = false;
};

struct HamiltonianModel {
    ModelKind kind = ModelKind::zero;
    Eigen::Index dim = 2;
    std::map<std::string, double> params;
    FrameSpec frame_spec;
    std::uint64_t seed = 12345;
};

namespace detail {

inline double require_param(const HamiltonianModel& model, const std::string& key) {
    const auto it = model.params.find(key);
    if (it == model.params.end())
        throw ValidationError("model.params: " + model_name(model.kind) +
                              " requires parameter '" + key + "'");
    return it->second;
}

inline double param_or(const HamiltonianModel& model, const std::string& key,
                       double fallback) {
    const auto it = model.params.find(key);
    return it == model.params.end() ? fallback : it->second;
}

inline ComplexMatrix pauli(int axis) {
    ComplexMatrix s(2, 2);
    switch (axis) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

inline Eigen::Vector3d tripod_amplitudes(const HamiltonianModel& model, double t) {
    const double nu = require_param(model, "nu");
    Eigen::Vector3d omega;
    for (int i = 0; i < 3; ++i) {
        const std::string base = "omega" + std::to_string(i + 1);
        omega(i) = require_param(model, base) +
                   param_or(model, base + "_cos", 0.0) * std::cos(nu * t) +
                   param_or(model, base + "_sin", 0.0) * std::sin(nu * t);
    }
    return omega;
}

// Raw entries before the Hermitian wrapper; every branch constructs an
// exactly Hermitian matrix so the wrapper check is rounding-free.
inline ComplexMatrix hamiltonian_entries(const HamiltonianModel& model, double t) {
    const Eigen::Index n = model.dim;
    switch (model.kind) {
        case ModelKind::zero:
            return ComplexMatrix::Zero(n, n);
        case ModelKind::static_diagonal: {
            ComplexMatrix h = ComplexMatrix::Zero(n, n);
            for (Eigen::Index j = 0; j < n; ++j)
                h(j, j) = require_param(model, "d" + std::to_string(j + 1));
            return h;
        }
        case ModelKind::spin_half_rotating: {
            const double w0 = require_param(model, "omega0");
            const double w1 = require_param(model, "omega1");
            const double w = require_param(model, "omega");
            return 0.5 * w0 * pauli(2) +
                   0.5 * w1 * (std::cos(w * t) * pauli(0) + std::sin(w * t) * pauli(1));
        }
        case ModelKind::tripod_dark: {
            const Eigen::Vector3d omega = tripod_amplitudes(model, t);
            ComplexMatrix h = ComplexMatrix::Zero(4, 4);
            for (Eigen::Index g = 0; g < 3; ++g) {
                h(3, g) = 0.5 * omega(g);
                h(g, 3) = 0.5 * omega(g);
            }
            return h;
        }
        case ModelKind::random_smooth: {
            const double nu = require_param(model, "nu");
            const ComplexMatrix a = seeded_random_hermitian(n, model.seed).matrix();
            const ComplexMatrix b = seeded_random_hermitian(n, model.seed + 1).matrix();
            const ComplexMatrix c = seeded_random_hermitian(n, model.seed + 2).matrix();
            return a + std::cos(nu * t) * b + std::sin(nu * t) * c;
        }
    }
    throw ValidationError("model.name: unknown model kind");
}

} // namespace detail

inline HermitianMatrix hamiltonian_at(const HamiltonianModel& model, double t) {
    if (!std::isfinite(t))
        throw NumericError("hamiltonian_at: time must be finite");
    return HermitianMatrix(detail::hamiltonian_entries(model, t));
}

// Spot check of the Hermiticity invariant on a sampled grid; parse-time guard
// against a sampler whose entries are not exactly conjugate-symmetric.
inline void validate_hermitian_samples(const std::function<ComplexMatrix(double)>& sampler,
                                       const std::string& name, double t_final,
                                       int samples = 100) {
    for (int k = 0; k < samples; ++k) {
        const double t = (samples > 1) ? t_final * k / (samples - 1.0) : 0.0;
        const ComplexMatrix h = sampler(t);
        const double defect = (h - h.adjoint()).norm();
        if (defect > 1e-13 * std::max(1.0, h.norm()))
            throw ValidationError("model: " + name + " sample at t = " +
                                  std::to_string(t) + " is not Hermitian (defect " +
                                  std::to_string(defect) + ")");
    }
}

inline void validate_hermitian_samples(const HamiltonianModel& model, double t_final,
                                       int samples = 100) {
    validate_hermitian_samples(
        [&model](double t) { return detail::hamiltonian_entries(model, t); },
        model_name(model.kind), t_final, samples);
}

// Two t = 0 dark states of the tripod: ground-space directions orthogonal to
// the amplitude vector, chosen as the two largest columns of the
// complementary projector and Loewdin-orthonormalized.
inline Frame tripod_dark_frame(const HamiltonianModel& model) {
    const Eigen::Vector3d omega = detail::tripod_amplitudes(model, 0.0);
    const double norm = omega.norm();
    if (norm <= 0.0)
        throw ValidationError(
            "model.params: tripod_dark amplitudes vanish at t = 0, dark states undefined");
    const Eigen::Vector3d b = omega / norm;
    const Eigen::Matrix3d complement = Eigen::Matrix3d::Identity() - b * b.transpose();
    Eigen::Index first = 0, second = 1;
    for (Eigen::Index j = 0; j < 3; ++j)
        if (complement.col(j).norm() > complement.col(first).norm()) first = j;
    second = (first == 0) ? 1 : 0;
    for (Eigen::Index j = 0; j < 3; ++j)
        if (j != first && complement.col(j).norm() > complement.col(second).norm())
            second = j;
    ComplexMatrix cols = ComplexMatrix::Zero(4, 2);
    cols.col(0).head(3) = complement.col(first).cast<Complex>();
    cols.col(1).head(3) = complement.col(second).cast<Complex>();
    return Frame::orthonormalized(cols);
}

inline Frame initial_frame(const HamiltonianModel& model) {
    const FrameSpec& spec = model.frame_spec;
    if (spec.use_model_default) {
        if (model.kind == ModelKind::tripod_dark)
            return tripod_dark_frame(model);
        throw ValidationError("model.frame: required (only tripod_dark has a default frame)");
    }
    if (!spec.basis_indices.empty()) {
        ComplexMatrix cols = ComplexMatrix::Zero(model.dim,
                                                 static_cast<Eigen::Index>(
                                                     spec.basis_indices.size()));
        std::vector<bool> used(static_cast<std::size_t>(model.dim), false);
        for (std::size_t j = 0; j < spec.basis_indices.size(); ++j) {
            const Eigen::Index idx = spec.basis_indices[j];
            if (idx < 0 || idx >= model.dim)
                throw ValidationError("model.frame: basis index " + std::to_string(idx) +
                                      " outside [0, " + std::to_string(model.dim) + ")");
            if (used[static_cast<std::size_t>(idx)])
                throw ValidationError("model.frame: basis index " + std::to_string(idx) +
                                      " repeated");
            used[static_cast<std::size_t>(idx)] = true;
            cols(idx, static_cast<Eigen::Index>(j)) = Complex(1, 0);
        }
        return Frame(cols);
    }
    if (spec.columns.size() > 0) {
        if (spec.columns.rows() != model.dim)
            throw ValidationError("model.frame: explicit columns must have model.dim rows");
        try {
            return Frame::orthonormalized(spec.columns);
        } catch (const DegeneracyError& e) {
            throw ValidationError(std::string("model.frame: columns not orthonormalizable (") +
                                  e.what() + ")");
        }
    }
    throw ValidationError("model.frame: empty frame specification");
}

// Structural validation: dimension constraints, required parameters, no
// unrecognized parameters, and a well-defined initial frame.
inline void validate_model(const HamiltonianModel& model) {
    if (model.dim < 1)
        throw ValidationError("model.dim: must be >= 1");
    std::vector<std::string> allowed;
    switch (model.kind) {
        case ModelKind::zero:
            break;
        case ModelKind::static_diagonal:
            for (Eigen::Index j = 1; j <= model.dim; ++j)
                allowed.push_back("d" + std::to_string(j));
            break;
        case ModelKind::spin_half_rotating:
            if (model.dim != 2)
                throw ValidationError("model.dim: spin_half_rotating requires dim = 2");
            allowed = {"omega0", "omega1", "omega"};
            break;
        case ModelKind::tripod_dark:
            if (model.dim != 4)
                throw ValidationError("model.dim: tripod_dark requires dim = 4");
            allowed = {"omega1", "omega2", "omega3", "nu"};
            for (int i = 1; i <= 3; ++i) {
                allowed.push_back("omega" + std::to_string(i) + "_cos");
                allowed.push_back("omega" + std::to_string(i) + "_sin");
            }
            break;
        case ModelKind::random_smooth:
            allowed = {"nu"};
            break;
    }
    for (const auto& [key, value] : model.params) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ValidationError("model.params: " + model_name(model.kind) +
                                  " does not take parameter '" + key + "'");
        if (!std::isfinite(value))
            throw ValidationError("model.params: parameter '" + key + "' must be finite");
    }
    hamiltonian_at(model, 0.0);
    initial_frame(model);
}

// Closed-form full-space propagators where they exist; nullopt otherwise.
// spin_half_rotating uses the rotating-frame construction
//   U(t) = exp(-i w t sz / 2) exp(-i [(w0 - w) sz / 2 + w1 sx / 2] t),
// cross-checked against brute-force integration in the test suite.
inline std::optional<ComplexMatrix> reference_propagator(const HamiltonianModel& model,
                                                         double t) {
    if (!std::isfinite(t))
        throw NumericError("reference_propagator: time must be finite");
    switch (model.kind) {
        case ModelKind::zero:
            return ComplexMatrix::Identity(model.dim, model.dim);
        case ModelKind::static_diagonal: {
            ComplexMatrix u = ComplexMatrix::Zero(model.dim, model.dim);
            for (Eigen::Index j = 0; j < model.dim; ++j) {
                const double d = detail::require_param(model, "d" + std::to_string(j + 1));
                u(j, j) = std::exp(Complex(0, -d * t));
            }
            return u;
        }
        case ModelKind::spin_half_rotating: {
            const double w0 = detail::require_param(model, "omega0");
            const double w1 = detail::require_param(model, "omega1");
            const double w = detail::require_param(model, "omega");
            const ComplexMatrix rotation =
                matrix_exponential((Complex(0, -0.5 * w * t) * detail::pauli(2)).eval());
            const ComplexMatrix effective = 0.5 * (w0 - w) * detail::pauli(2) +
                                            0.5 * w1 * detail::pauli(0);
            return rotation *
                   matrix_exponential((Complex(0, -t) * effective).eval());
        }
        case ModelKind::tripod_dark:
        case ModelKind::random_smooth:
            return std::nullopt;
    }
    throw ValidationError("model.name: unknown model kind");
}

} // namespace holodyn
