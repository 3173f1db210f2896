#include "gsvi/config.hpp"

#include "gsvi/catalog.hpp"
#include "gsvi/errors.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace gsvi {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
    double out = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
    }
    return out;
}

}  // namespace

void set_config_value(SurfaceConfig& cfg, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "psi.kind") cfg.psi_kind = std::string(value);
    else if (key == "psi.rho") cfg.psi_rho = parse_number(key, value);
    else if (key == "psi.nu") cfg.psi_nu = parse_number(key, value);
    else if (key == "phi.kind") cfg.phi_kind = std::string(value);
    else if (key == "phi.alpha") cfg.phi_alpha = parse_number(key, value);
    else if (key == "theta.kind") cfg.theta_kind = std::string(value);
    else if (key == "theta.a") cfg.theta_a = parse_number(key, value);
    else if (key == "theta.p") cfg.theta_p = parse_number(key, value);
    else if (key == "theta.lambda") cfg.theta_lambda = parse_number(key, value);
    else if (key == "theta.inf") cfg.theta_inf = parse_number(key, value);
    else throw ConfigError(fmt::format("unknown config key '{}'", key));
}

SurfaceConfig parse_config(std::string_view text, SurfaceConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected key=value", line_no));
        }
        set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

SurfaceConfig load_config_file(const std::string& path, SurfaceConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::string to_config_text(const SurfaceConfig& cfg) {
    std::string out;
    fmt::format_to(std::back_inserter(out), "psi.kind={}\npsi.rho={:.17g}\npsi.nu={:.17g}\n", cfg.psi_kind,
                   cfg.psi_rho, cfg.psi_nu);
    fmt::format_to(std::back_inserter(out), "phi.kind={}\nphi.alpha={:.17g}\n", cfg.phi_kind, cfg.phi_alpha);
    fmt::format_to(std::back_inserter(out),
                   "theta.kind={}\ntheta.a={:.17g}\ntheta.p={:.17g}\ntheta.lambda={:.17g}\ntheta.inf={:.17g}\n",
                   cfg.theta_kind, cfg.theta_a, cfg.theta_p, cfg.theta_lambda, cfg.theta_inf);
    return out;
}

GenSurface build_surface(const SurfaceConfig& cfg) {
    auto psi = [&]() -> PsiShape {
        if (cfg.psi_kind == "svi") return catalog::svi(cfg.psi_rho);
        if (cfg.psi_kind == "nonsvi_sqrt") return catalog::sqrt_kink();
        if (cfg.psi_kind == "nonsvi_power") return catalog::power_norm(cfg.psi_nu);
        throw ConfigError("unknown psi.kind '" + cfg.psi_kind + "'");
    }();
    auto phi = [&]() -> PhiCurve {
        if (cfg.phi_kind == "exp_ratio") return catalog::exp_ratio(cfg.phi_alpha);
        if (cfg.phi_kind == "constant") return catalog::constant(cfg.phi_alpha);
        if (cfg.phi_kind == "power") return catalog::power(cfg.phi_alpha);
        if (cfg.phi_kind == "heston") return catalog::heston_like(cfg.phi_alpha);
        throw ConfigError("unknown phi.kind '" + cfg.phi_kind + "'");
    }();
    auto theta = [&]() -> ThetaCurve {
        if (cfg.theta_kind == "linear") return catalog::linear(cfg.theta_a);
        if (cfg.theta_kind == "power") return catalog::power_law(cfg.theta_a, cfg.theta_p);
        if (cfg.theta_kind == "saturating") return catalog::saturating(cfg.theta_inf, cfg.theta_lambda);
        if (cfg.theta_kind == "decay") return catalog::decaying(cfg.theta_a, cfg.theta_lambda);
        throw ConfigError("unknown theta.kind '" + cfg.theta_kind + "'");
    }();
    return GenSurface(std::move(psi), std::move(phi), std::move(theta));
}

}  // namespace gsvi
