#pragma once

#include "gsvi/surface.hpp"

#include <string>
#include <string_view>

namespace gsvi {

/// Plain-text surface description. Every field maps one-to-one onto a config
/// key of the same dotted name (psi.kind, psi.rho, ...).
struct SurfaceConfig {
    std::string psi_kind = "svi";  // svi | nonsvi_sqrt | nonsvi_power
    double psi_rho = 0.0;
    double psi_nu = 2.0;

    std::string phi_kind = "exp_ratio";  // exp_ratio | constant | power | heston
    double phi_alpha = 1.0;              // alpha, alpha, exponent, lambda respectively

    std::string theta_kind = "linear";  // linear | power | saturating | decay
    double theta_a = 1.0;
    double theta_p = 0.5;
    double theta_lambda = 1.0;
    double theta_inf = 1.0;

    bool operator==(const SurfaceConfig&) const = default;
};

/// Sets one key. Throws ConfigError for an unknown key or an unparsable value.
void set_config_value(SurfaceConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key=value` lines on top of `base`. Blank lines and `#` comments are skipped.
SurfaceConfig parse_config(std::string_view text, SurfaceConfig base = {});
SurfaceConfig load_config_file(const std::string& path, SurfaceConfig base = {});

/// All ten keys, one per line, numbers with 17 significant digits.
std::string to_config_text(const SurfaceConfig& cfg);

/// Throws ConfigError for an unknown kind and ParameterError for out-of-range parameters.
GenSurface build_surface(const SurfaceConfig& cfg);

}  // namespace gsvi
