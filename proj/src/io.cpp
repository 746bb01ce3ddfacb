// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/io.hpp"

#include <cstdio>
#include <fstream>

namespace pointbeam {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace {

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

template <class T>
void take(const json& j, const char* key, T& dst) {
  if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

json to_json(const BeamParams& p) {
  return {{"a", p.a}, {"b", p.b}, {"alpha", p.alpha}, {"beta", p.beta}, {"xi", p.xi},
          {"xi_is_rational_guard", p.xi_is_rational_guard}};
}

BeamParams params_from_json(const json& j, BeamParams base) {
  take(j, "a", base.a);
  take(j, "b", base.b);
  take(j, "alpha", base.alpha);
  take(j, "beta", base.beta);
  take(j, "xi", base.xi);
  return base;
}

json to_json(const RunConfig& c) {
  return {{"command", c.command},   {"params", to_json(c.params)}, {"n_max", c.n_max},
          {"grid", c.grid},         {"modes", c.modes},            {"time", c.time},
          {"samples", c.samples},   {"out", c.out},                {"format", c.format},
          {"jobs", c.jobs},         {"mode", c.mode},              {"sign", c.sign},
          {"n0", c.n0},             {"mu", {c.mu_re, c.mu_im}},    {"sweep_alpha", c.sweep_alpha},
          {"sweep_beta", c.sweep_beta}, {"sweep_xi", c.sweep_xi},  {"sweep_b", c.sweep_b}};
}

RunConfig config_from_json(const json& j, RunConfig c) {
  take(j, "command", c.command);
  if (j.contains("params")) c.params = params_from_json(j.at("params"), c.params);
  take(j, "n_max", c.n_max);
  take(j, "grid", c.grid);
  take(j, "modes", c.modes);
  take(j, "time", c.time);
  take(j, "samples", c.samples);
  take(j, "out", c.out);
  take(j, "format", c.format);
  take(j, "jobs", c.jobs);
  take(j, "mode", c.mode);
  take(j, "sign", c.sign);
  take(j, "n0", c.n0);
  if (j.contains("mu")) {
    c.mu_re = j.at("mu").at(0).get<double>();
    c.mu_im = j.at("mu").at(1).get<double>();
  }
  take(j, "sweep_alpha", c.sweep_alpha);
  take(j, "sweep_beta", c.sweep_beta);
  take(j, "sweep_xi", c.sweep_xi);
  take(j, "sweep_b", c.sweep_b);
  return c;
}

json to_json(const SpectrumResult& r) {
  json ev = json::array();
  for (const auto& e : r.eigenvalues)
    ev.push_back({{"n", e.n},
                  {"sign", to_string(e.sign)},
                  {"mu", cjson(e.point.mu)},
                  {"lambda", cjson(e.point.lambda)},
                  {"residual", e.point.residual},
                  {"multiplicity", e.alg_mult_estimate},
                  {"provenance", to_string(e.provenance)}});
  json tiles = json::array();
  for (const auto& t : r.diagnostics.tiles)
    tiles.push_back({{"im_lo", t.im_lo}, {"im_hi", t.im_hi}, {"contour", t.contour_count},
                     {"found", t.found}});
  const auto& d = r.diagnostics;
  return {{"params", to_json(r.params)},
          {"n_max", r.n_max},
          {"abscissa", r.abscissa},
          {"abscissa_caveat", r.abscissa_caveat},
          {"eigenvalues", ev},
          {"diagnostics",
           {{"tiles", tiles},
            {"contour_total", d.contour_total},
            {"found_in_region", d.found_in_region},
            {"outside_region", d.outside_region},
            {"added_by_search", d.added_by_search},
            {"max_residual", d.max_residual},
            {"region_left", d.region_left},
            {"region_top", d.region_top},
            {"n_effective", d.n_effective}}}};
}

json to_json(const RieszReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"mu", cjson(row.mu)}, {"aligned", row.aligned},
                    {"raw", row.raw}, {"partial_sum", row.partial_sum}});
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  return {{"rows", rows},
          {"exponent", num(r.exponent)},
          {"raw_exponent", num(r.raw_exponent)},
          {"tail_fraction", r.tail_fraction},
          {"trivial", r.trivial},
          {"consistent_with_quadratic_closeness", r.consistent}};
}

json to_json(const ResolventOutput& r) {
  json u = json::array(), v = json::array();
  for (int j = 0; j <= r.u.M; ++j) {
    u.push_back(cjson(r.u[j]));
    v.push_back(cjson(r.v[j]));
  }
  const auto& d = r.diagnostics;
  return {{"lambda", cjson(r.lambda)},
          {"grid", r.u.M},
          {"u_at_xi", cjson(r.u_at_xi)},
          {"det_alpha", {{"mantissa", cjson(r.det.mantissa)}, {"scale_log", r.det.scale_log}}},
          {"diagnostics",
           {{"u_at_0", d.u_at_0},
            {"u_at_1", d.u_at_1},
            {"u2_at_0", d.u2_at_0},
            {"u2_at_1", d.u2_at_1},
            {"continuity2", d.continuity2},
            {"jump", d.jump},
            {"ode", d.ode}}},
          {"u", u},
          {"v", v}};
}

json to_json(const XiReport& r) {
  return {{"alpha_b", r.alpha_b},
          {"roots", r.roots},
          {"stated_threshold", r.stated_threshold},
          {"extremum_threshold", r.extremum_threshold},
          {"thresholds_disagree", r.thresholds_disagree},
          {"limit_roots", r.limit_roots},
          {"limit_threshold", r.limit_threshold}};
}

json to_json(const CriticalAlpha& r) {
  return {{"alpha", r.alpha}, {"r", r.r}, {"admissible", r.admissible},
          {"degenerate", r.degenerate}};
}

json eigenvalues_json(const std::vector<cplx>& mus, const BeamParams& p) {
  json ev = json::array();
  for (const auto& m : mus) ev.push_back({{"mu", cjson(m)}, {"provenance", "oracle"}});
  return {{"params", to_json(p)}, {"eigenvalues", ev}};
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& r) {
  os << "n,sign,re_mu,im_mu,residual,provenance\n";
  for (const auto& e : r.eigenvalues)
    os << e.n << ',' << to_string(e.sign) << ',' << format_double(e.point.mu.real()) << ','
       << format_double(e.point.mu.imag()) << ',' << format_double(e.point.residual) << ','
       << to_string(e.provenance) << '\n';
}

void write_grid_csv(std::ostream& os, const GridFunction& g) {
  os << "x,re,im\n";
  for (int j = 0; j <= g.M; ++j)
    os << format_double(g.x(j)) << ',' << format_double(g[j].real()) << ','
       << format_double(g[j].imag()) << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t, int leading_modes) {
  const int k = std::min<int>(leading_modes, static_cast<int>(t.c.cols()));
  os << "t,E,ut_xi";
  for (int m = 1; m <= k; ++m) os << ",c" << m;
  os << '\n';
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    os << format_double(t.times[i]) << ',' << format_double(t.energy[i]) << ','
       << format_double(t.ut_xi[i]);
    for (int m = 0; m < k; ++m) os << ',' << format_double(t.c(static_cast<Eigen::Index>(i), m));
    os << '\n';
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParams, "cannot open " + path);
  f << text;
}

}  // namespace pointbeam
