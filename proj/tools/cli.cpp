#include "cli.hpp"

#include "gsvi/butterfly.hpp"
#include "gsvi/check.hpp"
#include "gsvi/config.hpp"
#include "gsvi/density.hpp"
#include "gsvi/errors.hpp"
#include "gsvi/moments.hpp"
#include "gsvi/operator_l.hpp"
#include "gsvi/serialize.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

namespace gsvi::cli {

namespace {

constexpr const char* kEpilog = R"(Outputs:
  check    JSON report: calendar, butterfly, convexity/monotonicity oracles, min pointwise L.
  grid     CSV k,t,w,L,sigma2_loc (L is the worse one-sided value at a kink; sigma2_loc is nan where L <= 0).
  density  CSV k,p_minus,p_plus,cdf with trailing '# atom,k,mass' lines; --format json gives a summary.
  bounds   CSV u,a_star,y,numeric_bound,argmin_z: symmetric-SVI closed forms next to the numeric
           infimum over the positive-curvature region of the configured shape (rows for 0 < u < 4).
  moments  alpha_fit,alpha_wing,m_star,bracket_lo,bracket_hi for the slice at the first --t.
  oracle   convexity at each --t and monotonicity at k in {-2,-1,0,1,2}.
Exit codes: 0 ok, 1 arbitrage found, 2 configuration error.)";

struct Options {
    std::string command;
    std::string surface;
    std::string config_path;
    std::optional<double> rho, nu, alpha, theta_a, theta_p, theta_lambda, theta_inf;
    std::optional<std::string> phi_kind, theta_kind;
    std::optional<double> k_min, k_max;
    std::optional<std::size_t> k_n;
    std::vector<double> t;
    std::vector<double> u;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 1;
    std::optional<double> tol;
    std::size_t samples = 0;
};

SurfaceConfig resolve_config(const Options& o) {
    SurfaceConfig cfg;
    if (!o.config_path.empty()) cfg = load_config_file(o.config_path);
    if (!o.surface.empty()) cfg.psi_kind = o.surface;
    if (o.rho) cfg.psi_rho = *o.rho;
    if (o.nu) cfg.psi_nu = *o.nu;
    if (o.alpha) cfg.phi_alpha = *o.alpha;
    if (o.phi_kind) cfg.phi_kind = *o.phi_kind;
    if (o.theta_kind) cfg.theta_kind = *o.theta_kind;
    if (o.theta_a) cfg.theta_a = *o.theta_a;
    if (o.theta_p) cfg.theta_p = *o.theta_p;
    if (o.theta_lambda) cfg.theta_lambda = *o.theta_lambda;
    if (o.theta_inf) cfg.theta_inf = *o.theta_inf;
    return cfg;
}

Grid k_grid(const Options& o, double lo, double hi, std::size_t n) {
    const double a = o.k_min.value_or(lo);
    const double b = o.k_max.value_or(hi);
    const std::size_t m = o.k_n.value_or(n);
    if (m < 3) throw ConfigError("--k-n must be at least 3");
    if (!(b > a)) throw ConfigError("--k-max must exceed --k-min");
    return Grid::linear(a, b, m);
}

std::vector<double> t_list(const Options& o, std::vector<double> fallback) {
    std::vector<double> t = o.t.empty() ? std::move(fallback) : o.t;
    for (double x : t) {
        if (!(x > 0.0)) throw ConfigError("maturities must be positive");
    }
    require_increasing(t, "--t");
    return t;
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

int cmd_check(const Options& o, const GenSurface& surface, std::ostream& out) {
    CheckOptions opts;
    opts.k_grid = k_grid(o, -5.0, 5.0, 2001);
    opts.t_list = t_list(o, opts.t_list);
    if (o.tol) opts.oracle_tol = *o.tol;
    const SurfaceCheck c = check_surface(surface, opts);
    if (o.format == "csv") {
        out << "item,pass,margin\n";
        out << "calendar," << c.calendar.pass << "," << num(c.calendar.coupling_margin) << "\n";
        out << "butterfly," << c.butterfly.pass << ",\n";
        out << "jumps," << c.butterfly.jumps_ok << "," << num(c.butterfly.min_jump) << "\n";
        out << "lmb," << (c.butterfly.lmb == LmbStatus::ok) << "," << num(c.butterfly.lmb_slope) << "\n";
        out << "convexity_oracle," << c.convexity_ok << ",\n";
        out << "monotonicity_oracle," << c.monotonicity_ok << "," << num(c.monotonicity.min_margin) << "\n";
    } else {
        out << to_json(c).dump(2) << "\n";
    }
    return c.pass ? kOk : kArbitrage;
}

int cmd_grid(const Options& o, const GenSurface& surface, std::ostream& out) {
    const Grid ks = k_grid(o, -5.0, 5.0, 201);
    const auto ts = t_list(o, {0.1, 0.5, 1.0, 2.0, 5.0, 10.0});
    out << "k,t,w,L,sigma2_loc\n";
    for (double t : ts) {
        for (double k : ks.points()) {
            const LResult l = apply_l(surface, k, t);
            const double lv = l.worst();
            const double dt = l.at_knot ? std::nan("") : surface.partials(k, t).dt;
            const double local = lv > 0.0 ? dt / lv : std::nan("");
            out << num(k) << "," << num(t) << "," << num(surface.total_variance(k, t)) << "," << num(lv) << ","
                << num(local) << "\n";
        }
    }
    return kOk;
}

int cmd_density(const Options& o, const GenSurface& surface, std::ostream& out) {
    DensityOptions opts;
    opts.k_grid = k_grid(o, -40.0, 40.0, 16001);
    if (o.tol) opts.l_tol = *o.tol;
    const double t = t_list(o, {1.0}).front();
    const DensitySlice slice = build_density(surface, t, opts);
    std::optional<double> sample_mean;
    if (o.samples > 0) {
        const auto u = uniform_stream(o.samples, o.seed, true);
        double sum = 0.0;
        for (double k : sample_log_moneyness(slice, u)) sum += std::exp(k);
        sample_mean = sum / static_cast<double>(o.samples);
    }
    if (o.format == "json") {
        auto j = to_json(slice);
        j["t"] = t;
        if (sample_mean) j["sample_mean_exp"] = *sample_mean;
        out << j.dump(2) << "\n";
    } else {
        write_density_csv(out, slice);
        if (sample_mean) out << "# samples," << o.samples << "," << num(*sample_mean) << "\n";
    }
    return kOk;
}

int cmd_bounds(const Options& o, const GenSurface& surface, std::ostream& out) {
    const std::vector<double> us = o.u.empty() ? std::vector<double>{0.1, 0.5, 1.0, 2.0, 3.0, 3.9} : o.u;
    out << "u,a_star,y,numeric_bound,argmin_z\n";
    for (double u : us) {
        if (!(u > 0.0 && u < 4.0)) continue;
        const auto b = butterfly_bound(surface.psi(), u, Region::positive_curvature);
        out << num(u) << "," << num(sym_svi_a_star(u)) << "," << num(sym_svi_y(u)) << "," << num(b.bound) << ","
            << num(b.argmin_z) << "\n";
    }
    return kOk;
}

int cmd_moments(const Options& o, const GenSurface& surface, std::ostream& out) {
    const double t = t_list(o, {1.0}).front();
    const SmileSlice slice = SmileSlice::from_surface(surface, t);
    const WingSlopeFit fit = fit_right_wing_slope(slice);
    const double alpha = slice.slope_pos().value_or(fit.alpha);
    const double m_star = critical_moment(alpha);
    const MomentBracket br = bracket_critical_moment(slice);
    if (o.format == "json") {
        nlohmann::json j{{"t", t}, {"alpha_fit", fit.alpha}, {"alpha_wing", alpha}, {"m_star", m_star},
                         {"bracket_lo", br.lo}, {"bracket_hi", br.hi}};
        out << j.dump(2) << "\n";
    } else {
        out << "t,alpha_fit,alpha_wing,m_star,bracket_lo,bracket_hi\n";
        out << num(t) << "," << num(fit.alpha) << "," << num(alpha) << "," << num(m_star) << "," << num(br.lo)
            << "," << num(br.hi) << "\n";
    }
    return kOk;
}

int cmd_oracle(const Options& o, const GenSurface& surface, std::ostream& out) {
    const Grid ks = k_grid(o, -5.0, 5.0, 2001);
    std::vector<double> strikes;
    for (double k : ks.points()) strikes.push_back(std::exp(k));
    const Grid strike_grid = Grid::from_points(std::move(strikes));
    const double tol = o.tol.value_or(1e-10);
    bool pass = true;
    nlohmann::json convexity = nlohmann::json::array();
    nlohmann::json monotonicity = nlohmann::json::array();
    std::string csv = "oracle,pass,min_margin,witness,witness_t\n";
    for (double t : t_list(o, {0.1, 0.5, 1.0, 2.0, 5.0, 10.0})) {
        const auto r = convexity_oracle(surface, t, strike_grid);
        pass = pass && r.passed(tol);
        convexity.push_back(to_json(r));
        csv += fmt::format("convexity,{},{},{},{}\n", r.passed(tol), num(r.min_margin), num(r.witness), num(t));
    }
    for (double k : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const auto r = monotonicity_oracle(surface, k, default_time_grid());
        pass = pass && r.passed(tol);
        monotonicity.push_back(to_json(r));
        csv += fmt::format("monotonicity,{},{},{},{}\n", r.passed(tol), num(r.min_margin), num(k),
                           num(r.witness_t));
    }
    if (o.format == "csv") {
        out << csv;
    } else {
        nlohmann::json j{{"pass", pass}, {"convexity", convexity}, {"monotonicity", monotonicity}};
        out << j.dump(2) << "\n";
    }
    return pass ? kOk : kArbitrage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generalised SVI surface toolkit: arbitrage checks, densities, bounds and moments", "gsvi"};
    app.footer(kEpilog);
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--surface", o.surface, "Smile shape preset")
        ->check(CLI::IsMember({"svi", "nonsvi_sqrt", "nonsvi_power"}));
    app.add_option("--config", o.config_path, "key=value surface file; flags override it");
    app.add_option("--rho", o.rho, "SVI skew");
    app.add_option("--nu", o.nu, "Exponent of the power-norm shape");
    app.add_option("--alpha", o.alpha, "Scale-function parameter (phi.alpha)");
    app.add_option("--phi", o.phi_kind, "Scale function: exp_ratio, constant, power, heston");
    app.add_option("--theta", o.theta_kind, "ATM variance curve: linear, power, saturating, decay");
    app.add_option("--theta-a", o.theta_a);
    app.add_option("--theta-p", o.theta_p);
    app.add_option("--theta-lambda", o.theta_lambda);
    app.add_option("--theta-inf", o.theta_inf);
    app.add_option("--k-min", o.k_min);
    app.add_option("--k-max", o.k_max);
    app.add_option("--k-n", o.k_n);
    app.add_option("--t", o.t, "Maturities");
    app.add_option("--u", o.u, "Variance levels (bounds)");
    app.add_option("--out", o.out_path, "Output file (default stdout)");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", o.seed, "Seed for sampling");
    app.add_option("--tol", o.tol, "Tolerance override");
    app.add_option("--samples", o.samples, "Monte Carlo draws for density");

    const std::pair<const char*, const char*> commands[] = {
        {"check", "Static-arbitrage report for the surface"},
        {"grid", "Total variance, L and local variance on a (k, t) grid"},
        {"density", "Risk-neutral density of one slice"},
        {"bounds", "Butterfly bounds against the symmetric-SVI closed forms"},
        {"moments", "Critical moment of the right wing"},
        {"oracle", "Brute-force convexity and monotonicity checks"},
    };
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->callback([&o, name] { o.command = name; });
    }

    std::vector<std::string> argv_store{"gsvi"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kConfig;
    }

    std::ostringstream buffer;
    int code = kOk;
    try {
        const GenSurface surface = build_surface(resolve_config(o));
        if (o.format.empty()) {
            o.format = (o.command == "check" || o.command == "oracle") ? "json" : "csv";
            if (o.command == "moments") o.format = "csv";
        }
        if (o.command == "check") code = cmd_check(o, surface, buffer);
        else if (o.command == "grid") code = cmd_grid(o, surface, buffer);
        else if (o.command == "density") code = cmd_density(o, surface, buffer);
        else if (o.command == "bounds") code = cmd_bounds(o, surface, buffer);
        else if (o.command == "moments") code = cmd_moments(o, surface, buffer);
        else code = cmd_oracle(o, surface, buffer);
    } catch (const ArbitrageError& e) {
        err << "arbitrage: " << e.what() << "\n";
        return kArbitrage;
    } catch (const TailError& e) {
        err << "density tail: " << e.what() << "\n";
        return kArbitrage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfig;
    }

    if (o.out_path.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.out_path, std::ios::binary);
        if (!file) {
            err << "cannot write " << o.out_path << "\n";
            return kConfig;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace gsvi::cli
