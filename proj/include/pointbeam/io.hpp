// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "pointbeam/beam_model.hpp"
#include "pointbeam/eigenfunctions.hpp"
#include "pointbeam/resolvent.hpp"
#include "pointbeam/simulator.hpp"
#include "pointbeam/spectrum.hpp"

namespace pointbeam {

using json = nlohmann::ordered_json;

// 17 significant digits, scientific.
std::string format_double(double v);

struct RunConfig {
  std::string command = "spectrum";
  BeamParams params;
  int n_max = 16;
  int grid = 1024;
  int modes = 32;
  double time = 40;
  int samples = 4001;
  std::string out = ".";
  std::string format = "csv";
  int jobs = 0;
  // eigenfunction / riesz
  int mode = 1;
  std::string sign = "+";
  int n0 = 4;
  // resolvent
  double mu_re = 1, mu_im = 1;
  // sweep grids
  std::vector<double> sweep_alpha{0.0};
  std::vector<double> sweep_beta{0.0};
  std::vector<double> sweep_xi;
  std::vector<double> sweep_b;
};

json to_json(const BeamParams& p);
BeamParams params_from_json(const json& j, BeamParams base = {});

json to_json(const RunConfig& c);
// Keys absent from j keep the values in base.
RunConfig config_from_json(const json& j, RunConfig base = {});

json to_json(const SpectrumResult& r);
json to_json(const RieszReport& r);
json to_json(const ResolventOutput& r);
json to_json(const XiReport& r);
json to_json(const CriticalAlpha& r);
json eigenvalues_json(const std::vector<cplx>& mus, const BeamParams& p);

void write_spectrum_csv(std::ostream& os, const SpectrumResult& r);
void write_grid_csv(std::ostream& os, const GridFunction& g);
void write_trajectory_csv(std::ostream& os, const Trajectory& t, int leading_modes = 4);

// Writes the whole file in one pass; throws InvalidParams if the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

}  // namespace pointbeam
