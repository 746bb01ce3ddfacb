// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pointbeam/eigenfunctions.hpp"
#include "pointbeam/io.hpp"
#include "pointbeam/resolvent.hpp"
#include "pointbeam/simulator.hpp"
#include "pointbeam/spectrum.hpp"

namespace pb = pointbeam;
namespace fs = std::filesystem;

namespace {

int exit_code(pb::ErrorCode c) {
  switch (c) {
    case pb::ErrorCode::InvalidParams: return 2;
    case pb::ErrorCode::AuditMismatch: return 4;
    default: return 3;
  }
}

std::string path_in(const pb::RunConfig& c, const std::string& name) {
  return (fs::path(c.out) / name).string();
}

void emit_config(const pb::RunConfig& c) {
  pb::write_text(path_in(c, c.command + ".config.json"), pb::to_json(c).dump(2) + "\n");
}

const char* yes_no(bool v) { return v ? "yes" : "no"; }

void validate_config(pb::RunConfig& c) {
  c.params = pb::make_params(c.params.a, c.params.b, c.params.alpha, c.params.beta, c.params.xi);
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw pb::Error(pb::ErrorCode::InvalidParams, msg);
  };
  need(c.n_max >= 1, "n_max must be >= 1");
  need(c.grid >= 16 && c.grid % 2 == 0, "grid must be even and >= 16");
  need(c.modes >= 2, "modes must be >= 2");
  need(c.time > 0, "time must be > 0");
  need(c.samples >= 5, "samples must be >= 5");
  need(c.format == "csv" || c.format == "json", "format must be csv or json");
  need(c.jobs >= 0, "jobs must be >= 0");
  need(c.mode >= 1, "mode must be >= 1");
  need(c.sign == "+" || c.sign == "-", "sign must be + or -");
  need(c.n0 >= 1 && c.n0 <= c.n_max, "need 1 <= n0 <= n_max");
}

int cmd_spectrum(const pb::RunConfig& c) {
  const auto r = pb::compute_spectrum(c.params, c.n_max);
  pb::write_text(path_in(c, "spectrum.json"), pb::to_json(r).dump(2) + "\n");
  std::ostringstream csv;
  pb::write_spectrum_csv(csv, r);
  pb::write_text(path_in(c, "spectrum.csv"), csv.str());
  const auto& p = c.params;
  const int n0 = pb::overdamped_count(p.a, p.b);
  std::cout << "eigenvalues: " << r.eigenvalues.size() << "\n";
  std::cout << "abscissa: " << pb::format_double(r.abscissa)
            << (r.abscissa_caveat ? " (within 1e-6 of -b/2)" : "") << "\n";
  if (n0 > 0) {
    const double bound = 0.5 * (-p.b + std::sqrt(p.b * p.b - 4 * p.a * std::pow(pb::pi, 4)));
    std::cout << "overdamped regime: undamped bound 1/2(-b + sqrt(b^2 - 4 a pi^4)) = "
              << pb::format_double(bound) << "\n";
  } else {
    std::cout << "underdamped regime: undamped bound -b/2 = " << pb::format_double(-p.b / 2) << "\n";
  }
  std::cout << "audit reconciled: yes, max residual " << pb::format_double(r.diagnostics.max_residual)
            << "\n";
  return 0;
}

int cmd_sweep(const pb::RunConfig& c) {
  const auto xis = c.sweep_xi.empty() ? std::vector<double>{c.params.xi} : c.sweep_xi;
  const auto bs = c.sweep_b.empty() ? std::vector<double>{c.params.b} : c.sweep_b;
  const std::size_t total = c.sweep_alpha.size() * c.sweep_beta.size() * xis.size() * bs.size();
  if (total == 0 || total > 100000)
    throw pb::Error(pb::ErrorCode::InvalidParams, "sweep grid must have 1..1e5 points");
  struct Row {
    pb::BeamParams p;
    double abscissa = 0;
    std::string status = "ok";
  };
  std::vector<Row> rows;
  for (double b : bs)
    for (double xi : xis)
      for (double al : c.sweep_alpha)
        for (double be : c.sweep_beta) rows.push_back({{c.params.a, b, al, be, xi, false}});
  pb::for_each_index(pb::Exec::parallel, static_cast<std::ptrdiff_t>(rows.size()),
                     [&](std::ptrdiff_t i) {
                       auto& row = rows[i];
                       try {
                         row.p = pb::make_params(row.p.a, row.p.b, row.p.alpha, row.p.beta, row.p.xi);
                         row.abscissa = pb::compute_spectrum(row.p, c.n_max, pb::Exec::serial).abscissa;
                       } catch (const std::exception& e) {
                         row.abscissa = std::nan("");
                         row.status = e.what();
                         for (auto& ch : row.status)
                           if (ch == ',' || ch == '\n') ch = ';';
                       }
                     });
  std::ostringstream csv;
  csv << "alpha,beta,xi,b,abscissa,status\n";
  const Row* best = nullptr;
  for (const auto& r : rows) {
    csv << pb::format_double(r.p.alpha) << ',' << pb::format_double(r.p.beta) << ','
        << pb::format_double(r.p.xi) << ',' << pb::format_double(r.p.b) << ','
        << (r.status == "ok" ? pb::format_double(r.abscissa) : "nan") << ',' << r.status << '\n';
    if (r.status == "ok" && (!best || r.abscissa < best->abscissa)) best = &r;
  }
  pb::write_text(path_in(c, "sweep.csv"), csv.str());
  if (!best) {
    std::cout << "sweep: no point succeeded\n";
    return 3;
  }
  const auto base = pb::compute_spectrum(
      pb::make_params(c.params.a, best->p.b, 0, 0, best->p.xi), c.n_max, pb::Exec::serial);
  std::cout << "best abscissa " << pb::format_double(best->abscissa) << " at alpha="
            << best->p.alpha << " beta=" << best->p.beta << " xi=" << best->p.xi
            << " b=" << best->p.b << "\n";
  std::cout << "beats undamped-point abscissa " << pb::format_double(base.abscissa) << ": "
            << yes_no(best->abscissa < base.abscissa - 1e-12) << "\n";
  return 0;
}

int cmd_simulate(const pb::RunConfig& c) {
  const auto init = pb::smooth_initial_state(c.modes);
  const auto traj = pb::simulate(c.params, init, c.time, c.samples, c.modes);
  std::ostringstream csv;
  pb::write_trajectory_csv(csv, traj);
  pb::write_text(path_in(c, "trajectory.csv"), csv.str());
  const double omega = pb::fit_decay_rate(traj, 0.5);
  const double absc = pb::compute_spectrum(c.params, c.n_max).abscissa;
  bool monotone = true;
  for (std::size_t k = 1; k < traj.energy.size(); ++k)
    monotone = monotone && traj.energy[k] <= traj.energy[k - 1] * (1 + 1e-9);
  std::cout << "fitted omega: " << pb::format_double(omega) << "\n";
  std::cout << "spectral abscissa: " << pb::format_double(absc) << "\n";
  std::cout << "energy non-increasing: " << yes_no(monotone) << "\n";
  std::cout << "decay fit within 5% of abscissa: "
            << yes_no(std::abs(omega - absc) <= 0.05 * std::abs(absc)) << "\n";
  return 0;
}

int cmd_eigenfunction(const pb::RunConfig& c) {
  const auto spec = pb::compute_spectrum(c.params, std::max(c.n_max, c.mode));
  const pb::Sign s = c.sign == "+" ? pb::Sign::plus : pb::Sign::minus;
  const pb::EigenRecord* rec = nullptr;
  for (const auto& e : spec.eigenvalues)
    if (e.n == c.mode && e.sign == s && (!rec || e.point.mu.imag() > rec->point.mu.imag())) rec = &e;
  if (!rec) throw pb::Error(pb::ErrorCode::AuditMismatch, "requested mode not in the spectrum");
  pb::EigenfunctionPair pair;
  bool limit = false;
  try {
    pair = pb::eval_phi(c.params, rec->point, c.grid);
  } catch (const pb::Error& e) {
    if (e.code() != pb::ErrorCode::DegenerateTrig) throw;
    pair = pb::eval_psi(c.mode, s, c.params, c.grid);
    limit = true;
  }
  std::ostringstream csv;
  pb::write_grid_csv(csv, pair.first);
  pb::write_text(path_in(c, "eigenfunction.csv"), csv.str());
  const auto r = pb::eigen_residuals(c.params, pair);
  const bool ok = r.ode <= 1e-4 && r.boundary <= 1e-8 && r.continuity <= 1e-8 && r.jump <= 1e-4;
  std::cout << "mu: " << pb::format_double(pair.mu.real()) << " " << pb::format_double(pair.mu.imag())
            << "i" << (limit ? " (undamped limit form)" : "") << "\n";
  std::cout << "residuals: ode " << r.ode << ", boundary " << r.boundary << ", continuity "
            << r.continuity << ", jump " << r.jump << "\n";
  std::cout << "eigenfunction residual suite passes: " << yes_no(ok) << "\n";
  return 0;
}

int cmd_resolvent(const pb::RunConfig& c) {
  pb::ResolventInput in;
  in.mu = {c.mu_re, c.mu_im};
  in.u1 = pb::GridFunction::sample(c.grid, [](double x) { return pb::cplx(std::sin(pb::pi * x)); });
  in.v1 = pb::GridFunction(c.grid);
  const auto out = pb::resolvent_apply(c.params, in);
  pb::write_text(path_in(c, "resolvent.json"), pb::to_json(out).dump(2) + "\n");
  std::ostringstream csv;
  pb::write_grid_csv(csv, out.u);
  pb::write_text(path_in(c, "resolvent_u.csv"), csv.str());
  const double m = out.diagnostics.max();
  std::cout << "max residual: " << m << "\n";
  std::cout << "resolvent residual suite within 1e-3: " << yes_no(m <= 1e-3) << "\n";
  return 0;
}

int cmd_riesz(const pb::RunConfig& c) {
  const auto r = pb::riesz_tail_report(c.params, c.n0, c.n_max, c.grid);
  pb::write_text(path_in(c, "riesz.json"), pb::to_json(r).dump(2) + "\n");
  std::cout << "fitted exponent: " << r.exponent << " (raw " << r.raw_exponent << ")\n";
  std::cout << "tail fraction beyond n_max: " << r.tail_fraction << "\n";
  std::cout << "consistent with quadratic closeness: " << yes_no(r.consistent) << "\n";
  return 0;
}

int cmd_critical(const pb::RunConfig& c) {
  const auto& p = c.params;
  const auto ca = pb::critical_alpha_double(p.a, p.b, p.xi);
  pb::json j = {{"critical_alpha", pb::to_json(ca)}};
  std::cout << "alpha*: " << pb::format_double(ca.alpha) << " admissible: " << yes_no(ca.admissible)
            << "\n";
  if (p.alpha > 0) {
    const auto xr = pb::xi_special_report(p.a, p.b, p.alpha);
    j["xi_report"] = pb::to_json(xr);
    std::cout << "xi roots for alpha b = " << xr.alpha_b << ": " << xr.roots.size() << "\n";
    std::cout << "stated threshold 6 disagrees with extremum threshold 24: "
              << yes_no(xr.thresholds_disagree) << "\n";
  } else {
    std::cout << "xi report skipped: needs alpha > 0\n";
  }
  pb::write_text(path_in(c, "critical.json"), j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of a beam with pointwise damping"};
  app.require_subcommand(1);
  app.fallthrough();

  pb::RunConfig flags;
  std::string config_path;
  app.add_option("--config", config_path, "JSON RunConfig; flags override")->check(CLI::ExistingFile);
  auto* o_a = app.add_option("--a", flags.params.a, "stiffness a > 0");
  auto* o_b = app.add_option("--b", flags.params.b, "viscous damping b > 0");
  auto* o_alpha = app.add_option("--alpha", flags.params.alpha, "pointwise damping alpha >= 0");
  auto* o_beta = app.add_option("--beta", flags.params.beta, "pointwise stiffness beta >= 0");
  auto* o_xi = app.add_option("--xi", flags.params.xi, "actuator position in (0,1)");
  auto* o_nmax = app.add_option("--n-max", flags.n_max, "mode index bound");
  auto* o_grid = app.add_option("--grid", flags.grid, "grid intervals");
  auto* o_modes = app.add_option("--modes", flags.modes, "Galerkin modes N");
  auto* o_time = app.add_option("--time", flags.time, "simulation horizon T");
  auto* o_samples = app.add_option("--samples", flags.samples, "trajectory samples");
  auto* o_out = app.add_option("--out", flags.out, "output directory");
  auto* o_format = app.add_option("--format", flags.format, "csv or json");
  auto* o_jobs = app.add_option("--jobs", flags.jobs, "worker threads (0 = all cores)");

  std::vector<CLI::App*> subs;
  subs.push_back(app.add_subcommand("spectrum", "audited spectrum and abscissa"));
  auto* sweep = app.add_subcommand("sweep", "abscissa over a parameter grid");
  subs.push_back(sweep);
  auto* o_sa = sweep->add_option("--sweep-alpha", flags.sweep_alpha, "alpha values");
  auto* o_sbe = sweep->add_option("--sweep-beta", flags.sweep_beta, "beta values");
  auto* o_sx = sweep->add_option("--sweep-xi", flags.sweep_xi, "xi values");
  auto* o_sb = sweep->add_option("--sweep-b", flags.sweep_b, "b values");
  subs.push_back(app.add_subcommand("simulate", "modal simulation and decay fit"));
  auto* eig = app.add_subcommand("eigenfunction", "eigenfunction samples and residuals");
  subs.push_back(eig);
  auto* o_mode = eig->add_option("--mode", flags.mode, "mode index n");
  auto* o_sign = eig->add_option("--sign", flags.sign, "+ or -");
  auto* res = app.add_subcommand("resolvent", "resolvent at mu for F = (sin pi x, 0)");
  subs.push_back(res);
  auto* o_mre = res->add_option("--mu-re", flags.mu_re, "Re mu");
  auto* o_mim = res->add_option("--mu-im", flags.mu_im, "Im mu");
  auto* riesz = app.add_subcommand("riesz", "quadratic closeness report");
  subs.push_back(riesz);
  auto* o_n0 = riesz->add_option("--n0", flags.n0, "first mode index");
  subs.push_back(app.add_subcommand("critical", "double-root damping and xi report"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    pb::RunConfig c;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      c = pb::config_from_json(pb::json::parse(f));
    }
    for (auto* s : subs)
      if (s->parsed()) c.command = s->get_name();
    auto over = [](CLI::Option* o, auto& dst, const auto& src) {
      if (o->count() > 0) dst = src;
    };
    over(o_a, c.params.a, flags.params.a);
    over(o_b, c.params.b, flags.params.b);
    over(o_alpha, c.params.alpha, flags.params.alpha);
    over(o_beta, c.params.beta, flags.params.beta);
    over(o_xi, c.params.xi, flags.params.xi);
    over(o_nmax, c.n_max, flags.n_max);
    over(o_grid, c.grid, flags.grid);
    over(o_modes, c.modes, flags.modes);
    over(o_time, c.time, flags.time);
    over(o_samples, c.samples, flags.samples);
    over(o_out, c.out, flags.out);
    over(o_format, c.format, flags.format);
    over(o_jobs, c.jobs, flags.jobs);
    over(o_sa, c.sweep_alpha, flags.sweep_alpha);
    over(o_sbe, c.sweep_beta, flags.sweep_beta);
    over(o_sx, c.sweep_xi, flags.sweep_xi);
    over(o_sb, c.sweep_b, flags.sweep_b);
    over(o_mode, c.mode, flags.mode);
    over(o_sign, c.sign, flags.sign);
    over(o_mre, c.mu_re, flags.mu_re);
    over(o_mim, c.mu_im, flags.mu_im);
    over(o_n0, c.n0, flags.n0);

    validate_config(c);
    if (c.jobs > 0) pb::set_thread_count(c.jobs);
    fs::create_directories(c.out);
    emit_config(c);

    if (c.command == "spectrum") return cmd_spectrum(c);
    if (c.command == "sweep") return cmd_sweep(c);
    if (c.command == "simulate") return cmd_simulate(c);
    if (c.command == "eigenfunction") return cmd_eigenfunction(c);
    if (c.command == "resolvent") return cmd_resolvent(c);
    if (c.command == "riesz") return cmd_riesz(c);
    return cmd_critical(c);
  } catch (const pb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
