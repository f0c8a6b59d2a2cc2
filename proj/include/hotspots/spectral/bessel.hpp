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

#pragma once

namespace hotspots::spectral {

/// J_nu(x) for nu >= 0, x >= 0: power series in long double up to x = 20,
/// the standard library beyond.
double bessel_j(double nu, double x);
/// d/dx J_nu(x), same evaluation strategy.
double bessel_j_prime(double nu, double x);

/// k-th positive zero of J_nu, by a coarse scan and bisection.
double bessel_zero(double nu, int k = 1);
/// k-th positive zero of J'_nu (x = 0 is never counted).
double bessel_prime_zero(double nu, int k = 1);

}  // namespace hotspots::spectral
