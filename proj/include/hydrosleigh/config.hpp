#pragma once

#include <optional>
#include <string>

#include "hydrosleigh/inertia.hpp"
#include "hydrosleigh/lie_se.hpp"
#include "hydrosleigh/sleigh2d.hpp"

namespace hydrosleigh {

enum class ScenarioMode { Sleigh2d, Kirchhoff3dFree, Eps3dSuslov, Eps3dSleigh };

std::string to_string(ScenarioMode mode);

/// Entries of a symmetric 2-D tensor [[J, -L2, L1], [-L2, M, Z], [L1, Z, N]].
struct TensorEntries2 {
    double J = 0.0, M = 0.0, N = 0.0, L1 = 0.0, L2 = 0.0, Z = 0.0;

    friend bool operator==(const TensorEntries2&, const TensorEntries2&) = default;
};

Mat3 to_matrix(const TensorEntries2& e);

/// One scenario: tensor source, initial condition, window, output paths.
///
/// Config text is flat INI-style sections. Exactly one tensor source must be
/// given: either [tensor] (raw total) or [body] plus optional [fluid]
/// (assembled). 3-D modes use a raw 6x6 [tensor] (keys I11..I66, upper
/// triangle) and a [constraint] section.
struct ScenarioConfig {
    ScenarioMode mode = ScenarioMode::Sleigh2d;

    std::optional<BodySpec2> body;
    std::optional<EllipseSpec> fluid_ellipse;
    std::optional<TensorEntries2> fluid_entries;
    std::optional<TensorEntries2> tensor_entries;
    std::optional<Mat6> tensor6;

    ReducedState initial;
    Pose2 pose0;
    Vec3 omega0;  // 3-D initial angular velocity
    Vec3 v0;      // 3-D initial linear velocity
    std::optional<Vec3> constraint_a;
    std::optional<Vec3> constraint_f;

    double t0 = -10.0;
    double t1 = 10.0;
    double dt = 1e-3;

    std::optional<std::string> out_csv;
    std::optional<std::string> out_json;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parse and validate configuration text. Throws ConfigError with the
/// offending section/key path in the message.
ScenarioConfig parse_config(const std::string& text);

/// Inverse of parse_config: parse(emit(c)) == c for every valid config.
std::string emit_config(const ScenarioConfig& config);

/// Total 2-D inertia tensor of a sleigh2d scenario (raw, or body + fluid).
InertiaTensor3 resolve_tensor2(const ScenarioConfig& config);

/// Set one numeric field by path (e.g. "fluid.theta", "sim.dt", "initial.v1").
void apply_override(ScenarioConfig& config, const std::string& path, double value);

}  // namespace hydrosleigh
