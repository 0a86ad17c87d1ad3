#pragma once

// Declarative run configuration, parsed from JSON. Keys:
//   model.name, model.dim, model.params.*, model.frame
//   run.t_final, run.steps, run.tolerances.{ode,factorization,identity},
//   run.flags.repolarize_holonomy
// model.frame is either a list of basis indices or a list of explicit column
// vectors whose components are [re, im] pairs; tripod_dark may omit it to get
// the dark-state default. model.params.seed (random_smooth only) feeds the
// random Hamiltonian draw and can be overridden by the HOLODYN_SEED
// environment variable at the CLI layer.

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "holodyn/models.hpp"

namespace holodyn {

struct Tolerances {
    double identity = 1e-12;
    std::optional<double> ode;
    std::optional<double> factorization;
};

struct RunFlags {
    bool repolarize_holonomy = false;
};

struct ModelConfig {
    HamiltonianModel model;
    double t_final = 0.0;
    std::int64_t steps = 1;
    Tolerances tolerances;
    RunFlags flags;
};

namespace detail {

using nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& where,
                                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw ValidationError("config: unknown key '" + where + "." + key + "'");
    }
}

inline double number_at(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key))
        throw ValidationError("config: missing key '" + where + "." + key + "'");
    if (!obj[key].is_number())
        throw ValidationError("config: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

inline FrameSpec parse_frame(const json& frame, Eigen::Index dim) {
    FrameSpec spec;
    if (!frame.is_array() || frame.empty())
        throw ValidationError("model.frame: must be a nonempty list");
    bool all_indices = true;
    for (const auto& el : frame)
        if (!el.is_number_integer()) all_indices = false;
    if (all_indices) {
        for (const auto& el : frame)
            spec.basis_indices.push_back(el.get<Eigen::Index>());
        return spec;
    }
    const Eigen::Index nvec = static_cast<Eigen::Index>(frame.size());
    spec.columns = ComplexMatrix::Zero(dim, nvec);
    for (Eigen::Index j = 0; j < nvec; ++j) {
        const json& vec = frame[static_cast<std::size_t>(j)];
        if (!vec.is_array() || static_cast<Eigen::Index>(vec.size()) != dim)
            throw ValidationError(
                "model.frame: explicit vectors must have model.dim components");
        for (Eigen::Index i = 0; i < dim; ++i) {
            const json& comp = vec[static_cast<std::size_t>(i)];
            if (!comp.is_array() || comp.size() != 2 || !comp[0].is_number() ||
                !comp[1].is_number())
                throw ValidationError(
                    "model.frame: vector components must be [re, im] pairs");
            spec.columns(i, j) = Complex(comp[0].get<double>(), comp[1].get<double>());
        }
    }
    return spec;
}

} // namespace detail

inline ModelConfig parse_config(const std::string& text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object() || !doc.contains("model") || !doc.contains("run"))
        throw ValidationError("config: document must contain 'model' and 'run' objects");
    detail::reject_unknown_keys(doc, "", {"model", "run"});

    const json& model_doc = doc["model"];
    if (!model_doc.is_object())
        throw ValidationError("config: 'model' must be an object");
    detail::reject_unknown_keys(model_doc, "model", {"name", "dim", "params", "frame"});

    ModelConfig config;
    if (!model_doc.contains("name") || !model_doc["name"].is_string())
        throw ValidationError("config: 'model.name' must be a string");
    config.model.kind = model_kind_from_name(model_doc["name"].get<std::string>());
    if (!model_doc.contains("dim") || !model_doc["dim"].is_number_integer() ||
        model_doc["dim"].get<std::int64_t>() < 1)
        throw ValidationError("config: 'model.dim' must be an integer >= 1");
    config.model.dim = model_doc["dim"].get<Eigen::Index>();

    if (model_doc.contains("params")) {
        const json& params = model_doc["params"];
        if (!params.is_object())
            throw ValidationError("config: 'model.params' must be an object");
        for (const auto& [key, value] : params.items()) {
            if (!value.is_number())
                throw ValidationError("config: 'model.params." + key +
                                      "' must be a number");
            if (key == "seed") {
                if (config.model.kind != ModelKind::random_smooth)
                    throw ValidationError("model.params: " +
                                          model_name(config.model.kind) +
                                          " does not take parameter 'seed'");
                if (!value.is_number_integer() || value.get<std::int64_t>() < 0)
                    throw ValidationError(
                        "config: 'model.params.seed' must be a nonnegative integer");
                config.model.seed = value.get<std::uint64_t>();
                continue;
            }
            config.model.params[key] = value.get<double>();
        }
    }

    if (model_doc.contains("frame"))
        config.model.frame_spec = detail::parse_frame(model_doc["frame"], config.model.dim);
    else if (config.model.kind == ModelKind::tripod_dark)
        config.model.frame_spec.use_model_default = true;
    else
        throw ValidationError("model.frame: required (only tripod_dark has a default frame)");

    const json& run_doc = doc["run"];
    if (!run_doc.is_object())
        throw ValidationError("config: 'run' must be an object");
    detail::reject_unknown_keys(run_doc, "run",
                                {"t_final", "steps", "tolerances", "flags"});

    config.t_final = detail::number_at(run_doc, "run", "t_final");
    if (!std::isfinite(config.t_final) || config.t_final < 0.0)
        throw ValidationError("config: 'run.t_final' must be finite and >= 0");
    if (!run_doc.contains("steps") || !run_doc["steps"].is_number_integer())
        throw ValidationError("config: 'run.steps' must be an integer");
    config.steps = run_doc["steps"].get<std::int64_t>();
    if (config.steps < 1)
        throw ValidationError("config: run.steps must be >= 1");

    if (run_doc.contains("tolerances")) {
        const json& tol = run_doc["tolerances"];
        if (!tol.is_object())
            throw ValidationError("config: 'run.tolerances' must be an object");
        detail::reject_unknown_keys(tol, "run.tolerances",
                                    {"identity", "ode", "factorization"});
        const auto positive = [&tol](const char* key) {
            const double v = detail::number_at(tol, "run.tolerances", key);
            if (!(v > 0.0) || !std::isfinite(v))
                throw ValidationError(std::string("config: 'run.tolerances.") + key +
                                      "' must be > 0");
            return v;
        };
        if (tol.contains("identity")) config.tolerances.identity = positive("identity");
        if (tol.contains("ode")) config.tolerances.ode = positive("ode");
        if (tol.contains("factorization"))
            config.tolerances.factorization = positive("factorization");
    }

    if (run_doc.contains("flags")) {
        const json& flags = run_doc["flags"];
        if (!flags.is_object())
            throw ValidationError("config: 'run.flags' must be an object");
        detail::reject_unknown_keys(flags, "run.flags", {"repolarize_holonomy"});
        if (flags.contains("repolarize_holonomy")) {
            if (!flags["repolarize_holonomy"].is_boolean())
                throw ValidationError(
                    "config: 'run.flags.repolarize_holonomy' must be a boolean");
            config.flags.repolarize_holonomy = flags["repolarize_holonomy"].get<bool>();
        }
    }

    validate_model(config.model);
    validate_hermitian_samples(config.model, config.t_final);
    return config;
}

inline ModelConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("config: cannot read file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

// HOLODYN_SEED environment override; value must be a nonnegative integer.
inline void apply_seed_override(ModelConfig& config, const std::string& value) {
    std::size_t consumed = 0;
    std::uint64_t seed = 0;
    try {
        seed = std::stoull(value, &consumed);
    } catch (const std::exception&) {
        throw ValidationError("HOLODYN_SEED: '" + value + "' is not a nonnegative integer");
    }
    if (consumed != value.size() || value.empty() || value[0] == '-')
        throw ValidationError("HOLODYN_SEED: '" + value + "' is not a nonnegative integer");
    config.model.seed = seed;
}

} // namespace holodyn
