#include "simplexgeo/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "simplexgeo/errors.hpp"
#include "simplexgeo/sampling.hpp"

namespace simplexgeo::cli {

using nlohmann::json;

std::string RotationSpec::label() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Random: return "random(" + std::to_string(seed) + ")";
        case Kind::Matrix: return "matrix";
    }
    return "identity";
}

std::optional<Matrix> RotationSpec::resolve(int d) const {
    switch (kind) {
        case Kind::Identity: return std::nullopt;
        case Kind::Random: {
            RandomStream stream(seed);
            return haar_orthogonal(stream, d);
        }
        case Kind::Matrix:
            if (matrix.rows() != d || matrix.cols() != d) {
                throw ConfigError("rotation: matrix must be " + std::to_string(d) + "x" + std::to_string(d));
            }
            return matrix;
    }
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    try {
        parse_identity(identity);
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("identity: ") + e.what());
    }
    if (d < 1) throw ConfigError("d: must be >= 1, got " + std::to_string(d));
    if (k < 0 || k > d) {
        throw ConfigError("k: must satisfy 0 <= k <= d, got k=" + std::to_string(k) + ", d=" + std::to_string(d));
    }
    if (static_cast<int>(semi_axes.size()) != d) {
        throw ConfigError("semiaxes: expected " + std::to_string(d) + " values, got " +
                          std::to_string(semi_axes.size()));
    }
    for (double a : semi_axes) {
        if (!(std::isfinite(a) && a > 0.0)) throw ConfigError("semiaxes: values must be positive");
    }
    if (samples < 2) throw ConfigError("n: must be >= 2, got " + std::to_string(samples));
    if (workers < 1) throw ConfigError("workers: must be >= 1, got " + std::to_string(workers));
    if (!(policy.z_threshold > 0.0)) throw ConfigError("z_threshold: must be positive");
    if (!(policy.alpha > 0.0 && policy.alpha < 1.0)) throw ConfigError("alpha: must lie in (0, 1)");
    if (!std::isfinite(p)) throw ConfigError("p: must be finite");
    if (!(std::isfinite(constant_scale) && constant_scale > 0.0)) {
        throw ConfigError("constant_scale: must be positive");
    }
}

IdentityParams ExperimentConfig::params() const {
    IdentityParams out;
    out.d = d;
    out.k = k;
    out.p = p;
    out.semi_axes = semi_axes;
    out.rotation = rotation.resolve(d);
    out.rotation_label = rotation.label();
    out.family = family;
    out.constant_scale = constant_scale;
    return out;
}

int default_workers() {
    if (const char* env = std::getenv("SIMPLEXGEO_WORKERS")) {
        try {
            const int value = std::stoi(env);
            if (value >= 1) return value;
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("SIMPLEXGEO_WORKERS: expected a positive integer, got '") + env + "'");
    }
    return 1;
}

RotationSpec parse_rotation_preset(const std::string& text) {
    RotationSpec spec;
    if (text == "identity") return spec;
    const std::string prefix = "random(";
    if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
        const std::string digits = text.substr(prefix.size(), text.size() - prefix.size() - 1);
        try {
            std::size_t used = 0;
            spec.seed = std::stoull(digits, &used);
            if (used != digits.size()) throw std::invalid_argument(digits);
        } catch (const std::exception&) {
            throw ConfigError("rotation: bad seed in '" + text + "'");
        }
        spec.kind = RotationSpec::Kind::Random;
        return spec;
    }
    throw ConfigError("rotation: expected 'identity' or 'random(<seed>)', got '" + text + "'");
}

namespace {

Matrix matrix_from_json(const json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty()) throw ConfigError(where + ": expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw ConfigError(where + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            const json& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) throw ConfigError(where + ": entries must be numbers");
            m(i, j) = v.get<double>();
        }
    }
    return m;
}

}  // namespace

RotationSpec read_rotation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--rotation-file: cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("--rotation-file: " + std::string(e.what()));
    }
    RotationSpec spec;
    spec.kind = RotationSpec::Kind::Matrix;
    spec.matrix = matrix_from_json(doc, "--rotation-file");
    return spec;
}

PointFamily parse_family(const std::string& text) {
    if (text == "uniform" || text == "uniform-ball") return PointFamily::UniformBall;
    if (text == "gaussian") return PointFamily::Gaussian;
    throw ConfigError("family: expected 'uniform' or 'gaussian', got '" + text + "'");
}

std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ConfigError(flag + ": expected a comma-separated list of numbers");
    return out;
}

namespace {

template <typename T>
T field(const json& entry, const char* name, const std::string& where) {
    const json& v = entry.at(name);
    try {
        if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::uint64_t>) {
            if (!v.is_number_integer()) throw ConfigError("");
            if constexpr (std::is_same_v<T, std::uint64_t>) {
                if (v.is_number_unsigned()) return v.get<std::uint64_t>();
                if (v.get<std::int64_t>() < 0) throw ConfigError("");
            }
            return v.get<T>();
        } else if constexpr (std::is_same_v<T, double>) {
            if (!v.is_number()) throw ConfigError("");
            return v.get<double>();
        } else {
            if (!v.is_string()) throw ConfigError("");
            return v.get<std::string>();
        }
    } catch (const ConfigError&) {
        throw ConfigError(where + ", field " + std::string(name) + ": wrong type");
    }
}

}  // namespace

std::vector<ExperimentConfig> parse_suite(const json& document) {
    if (!document.is_object() || !document.contains("entries") || !document["entries"].is_array()) {
        throw ConfigError("suite: expected an object with an 'entries' array");
    }
    static const std::set<std::string> known = {"identity", "d", "k", "p", "semiaxes", "rotation",
                                                "family", "n", "seed", "workers", "z_threshold",
                                                "alpha", "constant_scale", "comment"};
    std::vector<ExperimentConfig> configs;
    const json& entries = document["entries"];
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const json& entry = entries[i];
        const std::string where = "entry " + std::to_string(i);
        if (!entry.is_object()) throw ConfigError(where + ": expected an object");
        for (const auto& [key, _] : entry.items()) {
            if (!known.count(key)) throw ConfigError(where + ", field " + key + ": unknown field");
        }
        for (const char* required : {"identity", "d", "k", "semiaxes", "seed"}) {
            if (!entry.contains(required)) throw ConfigError(where + ", field " + std::string(required) + ": missing");
        }
        ExperimentConfig cfg;
        cfg.identity = field<std::string>(entry, "identity", where);
        cfg.d = field<int>(entry, "d", where);
        cfg.k = field<int>(entry, "k", where);
        if (entry.contains("p")) cfg.p = field<double>(entry, "p", where);
        const json& axes = entry["semiaxes"];
        if (!axes.is_array()) throw ConfigError(where + ", field semiaxes: expected an array");
        for (const json& a : axes) {
            if (!a.is_number()) throw ConfigError(where + ", field semiaxes: entries must be numbers");
            cfg.semi_axes.push_back(a.get<double>());
        }
        if (entry.contains("rotation")) {
            const json& rot = entry["rotation"];
            try {
                if (rot.is_string()) {
                    cfg.rotation = parse_rotation_preset(rot.get<std::string>());
                } else {
                    cfg.rotation.kind = RotationSpec::Kind::Matrix;
                    cfg.rotation.matrix = matrix_from_json(rot, "rotation");
                }
            } catch (const ConfigError& e) {
                throw ConfigError(where + ", field " + e.what());
            }
        }
        if (entry.contains("family")) {
            try {
                cfg.family = parse_family(field<std::string>(entry, "family", where));
            } catch (const ConfigError& e) {
                throw ConfigError(where + ", field " + e.what());
            }
        }
        cfg.seed = field<std::uint64_t>(entry, "seed", where);
        cfg.workers = entry.contains("workers") ? field<int>(entry, "workers", where) : default_workers();
        if (entry.contains("z_threshold")) cfg.policy.z_threshold = field<double>(entry, "z_threshold", where);
        if (entry.contains("alpha")) cfg.policy.alpha = field<double>(entry, "alpha", where);
        if (entry.contains("constant_scale")) cfg.constant_scale = field<double>(entry, "constant_scale", where);
        try {
            const Identity id = parse_identity(cfg.identity);
            cfg.samples = entry.contains("n") ? field<std::int64_t>(entry, "n", where) : default_sample_count(id);
        } catch (const ValidationError& e) {
            throw ConfigError(where + ", field identity: " + e.what());
        }
        try {
            cfg.validate();
        } catch (const ConfigError& e) {
            throw ConfigError(where + ", field " + e.what());
        }
        configs.push_back(std::move(cfg));
    }
    return configs;
}

}  // namespace simplexgeo::cli
