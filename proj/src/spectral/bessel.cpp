// Copyright 2026 The hotspots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hotspots/spectral/bessel.hpp"

#include <cmath>
#include <functional>

#include "hotspots/types.hpp"

namespace hotspots::spectral {

namespace {

constexpr double kSeriesLimit = 20;

// Sum of (-1)^k (x/2)^(2k+nu) / (k! Gamma(k+nu+1)), optionally weighted by (2k+nu)/x.
long double series(double nu, double x, bool derivative) {
  const long double half = 0.5L * x;
  long double term = std::pow(half, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1);
  long double sum = 0;
  for (int k = 0; k < 500; ++k) {
    const long double w = derivative ? (2.0L * k + nu) / x : 1.0L;
    sum += w * term;
    term *= -half * half / ((k + 1.0L) * (k + 1.0L + nu));
    if (k > x && std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return sum;
}

void check(double nu, double x) {
  if (!(nu >= 0) || !(x >= 0)) throw DomainError("Bessel functions need nu >= 0 and x >= 0");
}

double find_zero(const std::function<double(double)>& f, int k, double start) {
  if (k < 1) throw DomainError("zero index must be positive");
  constexpr double kStep = 0.01;
  double a = start, fa = f(a);
  int found = 0;
  for (double b = a + kStep; b < 1e4; b += kStep) {
    const double fb = f(b);
    if ((fa < 0) != (fb < 0)) {
      if (++found == k) {
        for (int it = 0; it < 200 && b - a > 4e-16 * b; ++it) {
          const double m = 0.5 * (a + b), fm = f(m);
          ((fm < 0) == (fa < 0) ? a : b) = m;
          if ((fm < 0) == (fa < 0)) fa = fm;
        }
        return 0.5 * (a + b);
      }
    }
    a = b;
    fa = fb;
  }
  throw NumericalError("Bessel zero not bracketed");
}

}  // namespace

double bessel_j(double nu, double x) {
  check(nu, x);
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  if (x > kSeriesLimit) return std::cyl_bessel_j(nu, x);
  return static_cast<double>(series(nu, x, false));
}

double bessel_j_prime(double nu, double x) {
  check(nu, x);
  if (x == 0) {
    if (nu == 1) return 0.5;
    if (nu > 0 && nu < 1) return INFINITY;
    return 0.0;
  }
  if (x > kSeriesLimit) {
    return nu / x * std::cyl_bessel_j(nu, x) - std::cyl_bessel_j(nu + 1, x);
  }
  return static_cast<double>(series(nu, x, true));
}

double bessel_zero(double nu, int k) {
  check(nu, 0);
  return find_zero([nu](double x) { return bessel_j(nu, x); }, k, 1e-3);
}

double bessel_prime_zero(double nu, int k) {
  check(nu, 0);
  return find_zero([nu](double x) { return bessel_j_prime(nu, x); }, k, 1e-3);
}

}  // namespace hotspots::spectral
