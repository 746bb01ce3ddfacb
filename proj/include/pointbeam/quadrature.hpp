// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <vector>

#include "pointbeam/beam_model.hpp"

namespace pointbeam {

// Composite Simpson over n+1 equispaced samples; an odd interval count closes with 3/8.
cplx simpson(const cplx* f, int intervals, double h);
double simpson(const double* f, int intervals, double h);

// Composite Simpson on [0, xi] and [xi, 1] separately, about M intervals in total.
double integrate_split(const std::function<double(double)>& f, double xi, int M);

// Finite-difference weights (Fornberg) for derivative `order` at x0 from the given nodes.
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order);

// Derivative of given order at x from the `count` grid nodes on one side of x
// (side < 0: nodes x_j <= x, side > 0: nodes x_j >= x, side == 0: centered), taking
// every stride-th node.
cplx grid_derivative(const GridFunction& g, double x, int order, int count, int side,
                     int stride = 1);

// Local Lagrange interpolation through `count` nodes around x.
cplx interpolate(const GridFunction& g, double x, int count = 6);

}  // namespace pointbeam
