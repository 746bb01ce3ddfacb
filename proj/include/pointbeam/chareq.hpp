// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pointbeam/beam_model.hpp"

namespace pointbeam {

struct CharValue {
  cplx value{};
  bool scaled = false;
  double scale_log = 0.0;

  cplx unscaled() const { return scaled ? value * std::exp(scale_log) : value; }
};

// Threshold on |Re lambda| + |Im lambda| above which char_fn returns the stripped form.
inline constexpr double kScaleThreshold = 30.0;

// G(mu) = 2(mu+b) sinh(l) sin(l) + alpha l [sin l sinh(l xi) sinh(l eta) - sinh l sin(l xi) sin(l eta)].
// Uses alpha only; beta is ignored (see char_fn_beta).
CharValue char_fn(const BeamParams& p, cplx mu);

// Same with alpha replaced by alpha + beta/mu.
CharValue char_fn_beta(const BeamParams& p, cplx mu);

// h = S(l) Sh(l) - (alpha mu + beta)/(2 a l^3) Bt(l) with S = 2i sin(l) e^{-|Im l|},
// Sh = 2 sinh(l) e^{-|Re l|}, Bt = 4i Q(l) e^{-|Re l|-|Im l|}.  Satisfies
// h e^{scale_log} 2 a l^3 / (4i) = 2 a l^3 sinh l sin l - (alpha mu + beta) Q(l).
CharValue char_fn_scaled(const BeamParams& p, cplx lambda, cplx mu);

// dG/dmu of char_fn_beta (equal to char_fn's when beta = 0).
cplx char_derivative(const BeamParams& p, cplx mu);

// Sum of term magnitudes of G at mu; the natural scale for |G| and |G'|.
double char_term_scale(const BeamParams& p, cplx mu);

// Entire reduced function D(mu) = 2a P/l^2 - (alpha mu + beta) Q/l^5 and its mu-derivative,
// returned as mantissas sharing exp(scale_log).  Its zeros are the eigenvalues.
struct ReducedValue {
  cplx D{};
  cplx dD{};
  double scale_log = 0.0;
  double scale = 1.0;  // size of the individual terms, used for normalization
  cplx lambda{};

  double normalized() const { return std::abs(D) / scale; }
};

ReducedValue reduced_char(const BeamParams& p, cplx mu);

}  // namespace pointbeam
