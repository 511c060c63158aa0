#pragma once

// Experiment configuration shared by the `verify` and `suite` commands, and
// the JSON schema of suite files.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "simplexgeo/identity.hpp"

namespace simplexgeo::cli {

// Configuration or usage problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RotationSpec {
    enum class Kind { Identity, Random, Matrix } kind = Kind::Identity;
    std::uint64_t seed = 0;
    Matrix matrix;

    std::string label() const;
    // nullopt for the identity preset.
    std::optional<Matrix> resolve(int d) const;
};

struct ExperimentConfig {
    std::string identity;
    int d = 0;
    int k = 0;
    double p = 0.0;
    std::vector<double> semi_axes;
    RotationSpec rotation;
    PointFamily family = PointFamily::UniformBall;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    Policy policy;
    double constant_scale = 1.0;

    // Checks the cross-field invariants; the message names the offending field.
    void validate() const;
    IdentityParams params() const;
};

/// Worker count from SIMPLEXGEO_WORKERS, else 1.
int default_workers();

/// "identity", "random(<seed>)".
RotationSpec parse_rotation_preset(const std::string& text);
/// JSON file holding a d x d array of rows.
RotationSpec read_rotation_file(const std::string& path);

PointFamily parse_family(const std::string& text);

/// Comma-separated reals; throws ConfigError naming `flag` on bad input.
std::vector<double> parse_real_list(const std::string& text, const std::string& flag);

/// Parses the suite document {"entries": [ ... ]}; errors name the entry index and field.
std::vector<ExperimentConfig> parse_suite(const nlohmann::json& document);

}  // namespace simplexgeo::cli
