// Copyright 2026 The pointbeam Authors
// SPDX-License-Identifier: Apache-2.0

#include "pointbeam/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pointbeam {

namespace {

template <class T>
T simpson_impl(const T* f, int n, double h) {
  if (n <= 0) return T(0);
  if (n == 1) return 0.5 * h * (f[0] + f[1]);
  T s(0);
  int even = n % 2 == 0 ? n : n - 3;
  for (int i = 0; i + 2 <= even; i += 2) s += f[i] + 4.0 * f[i + 1] + f[i + 2];
  s *= h / 3;
  if (even != n) {
    const T* g = f + even;
    s += 3.0 * h / 8 * (g[0] + 3.0 * g[1] + 3.0 * g[2] + g[3]);
  }
  return s;
}

}  // namespace

cplx simpson(const cplx* f, int intervals, double h) { return simpson_impl(f, intervals, h); }
double simpson(const double* f, int intervals, double h) { return simpson_impl(f, intervals, h); }

double integrate_split(const std::function<double(double)>& f, double xi, int M) {
  int ml = std::max(2, 2 * static_cast<int>(std::lround(xi * M / 2)));
  int mr = std::max(2, 2 * static_cast<int>(std::lround((1 - xi) * M / 2)));
  std::vector<double> v(static_cast<std::size_t>(std::max(ml, mr)) + 1);
  const double hl = xi / ml, hr = (1 - xi) / mr;
  for (int j = 0; j <= ml; ++j) v[j] = f(j == ml ? xi : j * hl);
  double s = simpson(v.data(), ml, hl);
  for (int j = 0; j <= mr; ++j) v[j] = f(j == 0 ? xi : (j == mr ? 1.0 : xi + j * hr));
  s += simpson(v.data(), mr, hr);
  return s;
}

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0, c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][order];
  return w;
}

cplx grid_derivative(const GridFunction& g, double x, int order, int count, int side,
                     int stride) {
  const double t = x * g.M;
  const int span = stride * (count - 1);
  int first;
  if (side < 0) {
    first = static_cast<int>(std::floor(t + 1e-9)) - span;
  } else if (side > 0) {
    first = static_cast<int>(std::ceil(t - 1e-9));
  } else {
    first = static_cast<int>(std::lround(t)) - stride * (count / 2);
  }
  first = std::clamp(first, 0, g.M - span);
  std::vector<double> nodes(count);
  for (int i = 0; i < count; ++i) nodes[i] = g.x(first + stride * i);
  const auto w = fd_weights(x, nodes, order);
  cplx s = 0;
  for (int i = 0; i < count; ++i) s += w[i] * g.samples[first + stride * i];
  return s;
}

cplx interpolate(const GridFunction& g, double x, int count) {
  const double t = x * g.M;
  int first = static_cast<int>(std::floor(t)) - count / 2 + 1;
  first = std::clamp(first, 0, g.M + 1 - count);
  std::vector<double> nodes(count);
  for (int i = 0; i < count; ++i) nodes[i] = g.x(first + i);
  const auto w = fd_weights(x, nodes, 0);
  cplx s = 0;
  for (int i = 0; i < count; ++i) s += w[i] * g.samples[first + i];
  return s;
}

}  // namespace pointbeam
