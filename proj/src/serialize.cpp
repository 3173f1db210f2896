#include "gsvi/serialize.hpp"

#include <cmath>

namespace gsvi {

using nlohmann::json;

json json_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json to_json(const OracleReport& r) {
    json out;
    out["min_margin"] = json_number(r.min_margin);
    out["witness_" + r.witness_name] = json_number(r.witness);
    out["witness_t"] = json_number(r.witness_t);
    out["grid"] = {{"variable", r.grid_variable},
                   {"spacing", to_string(r.spacing)},
                   {"lo", json_number(r.grid_lo)},
                   {"hi", json_number(r.grid_hi)},
                   {"n", r.grid_n}};
    return out;
}

json to_json(const CalendarVerdict& v) {
    json witnesses = json::array();
    for (const auto& w : v.witnesses) {
        witnesses.push_back({{"condition", w.condition},
                             {"z", json_number(w.z)},
                             {"u", json_number(w.u)},
                             {"t", json_number(w.t)},
                             {"value", json_number(w.value)}});
    }
    json out{{"pass", v.pass},
             {"theta_monotone", v.theta_monotone},
             {"coupling_margin", json_number(v.coupling_margin)},
             {"compact_margins", {json_number(v.compact.margin_pos), json_number(v.compact.margin_neg)}},
             {"witnesses", witnesses}};
    if (v.uphi) {
        out["uphi_monotone"] = v.uphi->pass;
    }
    return out;
}

json to_json(const ButterflyVerdict& v) {
    json per_u = json::array();
    for (const auto& p : v.per_u) {
        per_u.push_back({{"u", json_number(p.u)},
                         {"lhs", json_number(p.lhs)},
                         {"bound", json_number(p.bound)},
                         {"argmin_z", json_number(p.argmin_z)}});
    }
    json m_inf{{"applicable", v.m_inf.applicable}, {"ok", v.m_inf.ok}};
    if (v.m_inf.applicable) {
        m_inf["branch"] = v.m_inf.finite_branch ? "finite_theta" : "infinite_theta";
        m_inf["lhs"] = json_number(v.m_inf.lhs);
        m_inf["bound"] = json_number(v.m_inf.bound);
        m_inf["witness_z"] = json_number(v.m_inf.argmin_z);
    }
    return json{{"pass", v.pass},
                {"per_u", per_u},
                {"m_inf_condition", m_inf},
                {"jumps_ok", v.jumps_ok},
                {"lmb_ok", v.lmb == LmbStatus::ok},
                {"lmb_status", to_string(v.lmb)},
                {"lmb_slope", json_number(v.lmb_slope)}};
}

json to_json(const WingDiagnostics& d) {
    const auto trend = [](const WingTrend& t) {
        return json{{"k", {t.k[0], t.k[1], t.k[2]}},
                    {"values", {json_number(t.value[0]), json_number(t.value[1]), json_number(t.value[2])}},
                    {"ok", t.ok}};
    };
    return json{{"small_moneyness_d_minus", trend(d.small_moneyness)},
                {"large_moneyness_d_plus", trend(d.large_moneyness)},
                {"amgm_ok", d.amgm_ok},
                {"boundary_left", json_number(d.boundary_left)},
                {"boundary_right", json_number(d.boundary_right)},
                {"boundary_ok", d.boundary_ok}};
}

json to_json(const DensitySlice& s) {
    json atoms = json::array();
    for (const auto& a : s.atoms) {
        atoms.push_back({{"k", json_number(a.k)},
                         {"operator_mass", json_number(a.operator_mass)},
                         {"probability", json_number(a.probability)}});
    }
    return json{{"mass", json_number(s.mass)},
                {"mean_exp", json_number(s.mean_exp)},
                {"tail_left", json_number(s.tail_left)},
                {"tail_right", json_number(s.tail_right)},
                {"k_min", json_number(s.k.front())},
                {"k_max", json_number(s.k.back())},
                {"n", s.k.size()},
                {"atoms", atoms},
                {"diagnostics", to_json(s.diagnostics)}};
}

json to_json(const SurfaceCheck& c) {
    json convexity = json::array();
    for (const auto& r : c.convexity) convexity.push_back(to_json(r));
    return json{{"pass", c.pass},
                {"calendar", to_json(c.calendar)},
                {"butterfly", to_json(c.butterfly)},
                {"convexity_oracle", {{"pass", c.convexity_ok}, {"slices", convexity}}},
                {"monotonicity_oracle", {{"pass", c.monotonicity_ok}, {"worst", to_json(c.monotonicity)}}},
                {"pointwise_l", {{"min", json_number(c.min_pointwise_l)},
                                 {"k", json_number(c.min_l_k)},
                                 {"t", json_number(c.min_l_t)}}}};
}

}  // namespace gsvi
