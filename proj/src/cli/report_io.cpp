#include "simplexgeo/cli/report_io.hpp"

#include <unistd.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace simplexgeo::cli {

using nlohmann::json;

namespace {

json optional_real(const std::optional<double>& value) {
    if (!value) return nullptr;
    // JSON has no infinity; an infinite z is spelled out.
    if (std::isinf(*value)) return *value > 0 ? "inf" : "-inf";
    return *value;
}

std::string optional_text(const std::optional<double>& value) {
    return value ? format_real(*value) : std::string();
}

std::string kind_text(IdentityKind kind) { return kind == IdentityKind::Moment ? "moment" : "distribution"; }

}  // namespace

std::string format_real(double value) {
    std::array<char, 40> buffer{};
    std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
    return buffer.data();
}

json report_to_json(const IdentityReport& r) {
    return json{
        {"identity", r.identity},
        {"description", r.description},
        {"kind", kind_text(r.kind)},
        {"d", r.params.d},
        {"k", r.params.k},
        {"p", r.params.p},
        {"semi_axes", r.params.semi_axes},
        {"rotation", r.params.rotation_label},
        {"family", std::string(to_string(r.params.family))},
        {"constant_scale", r.params.constant_scale},
        {"n", r.n},
        {"seed", r.seed},
        {"workers", r.workers},
        {"z_threshold", r.policy.z_threshold},
        {"alpha", r.policy.alpha},
        {"lhs_value", r.lhs.value},
        {"lhs_stderr", r.lhs.std_error},
        {"lhs_count", r.lhs.count},
        {"lhs_exact", r.lhs.exact},
        {"rhs_value", r.rhs.value},
        {"rhs_stderr", r.rhs.std_error},
        {"rhs_count", r.rhs.count},
        {"rhs_exact", r.rhs.exact},
        {"z_score", optional_real(r.z_score)},
        {"ks_statistic", optional_real(r.ks_statistic)},
        {"ks_p_value", optional_real(r.ks_p_value)},
        {"residual", optional_real(r.residual)},
        {"heavy_tail", r.heavy_tail},
        {"pass", r.pass},
    };
}

json run_metadata() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::array<char, 32> stamp{};
    std::strftime(stamp.data(), stamp.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);
    std::array<char, 256> host{};
    if (gethostname(host.data(), host.size() - 1) != 0) host[0] = '\0';
    return json{{"generated_at", stamp.data()}, {"host", host.data()}, {"tool", "simplexgeo"}};
}

void write_reports_csv(std::ostream& out, const std::vector<IdentityReport>& reports) {
    out << "identity,kind,d,k,p,semi_axes,rotation,family,constant_scale,n,seed,workers,z_threshold,alpha,"
           "lhs_value,lhs_stderr,lhs_count,lhs_exact,rhs_value,rhs_stderr,rhs_count,rhs_exact,"
           "z_score,ks_statistic,ks_p_value,residual,heavy_tail,pass\n";
    for (const auto& r : reports) {
        std::string axes;
        for (std::size_t i = 0; i < r.params.semi_axes.size(); ++i) {
            if (i) axes += ';';
            axes += format_real(r.params.semi_axes[i]);
        }
        out << r.identity << ',' << kind_text(r.kind) << ',' << r.params.d << ',' << r.params.k << ','
            << format_real(r.params.p) << ',' << axes << ',' << r.params.rotation_label << ','
            << to_string(r.params.family) << ',' << format_real(r.params.constant_scale) << ',' << r.n << ','
            << r.seed << ',' << r.workers << ',' << format_real(r.policy.z_threshold) << ','
            << format_real(r.policy.alpha) << ',' << format_real(r.lhs.value) << ','
            << format_real(r.lhs.std_error) << ',' << r.lhs.count << ',' << (r.lhs.exact ? 1 : 0) << ','
            << format_real(r.rhs.value) << ',' << format_real(r.rhs.std_error) << ',' << r.rhs.count << ','
            << (r.rhs.exact ? 1 : 0) << ',' << optional_text(r.z_score) << ',' << optional_text(r.ks_statistic)
            << ',' << optional_text(r.ks_p_value) << ',' << optional_text(r.residual) << ','
            << (r.heavy_tail ? 1 : 0) << ',' << (r.pass ? 1 : 0) << '\n';
    }
}

}  // namespace simplexgeo::cli
