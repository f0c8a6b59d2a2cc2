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

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hotspots {

using Complex = std::complex<double>;
/// Planar points are complex numbers z = x + iy.
using Point = Complex;

inline constexpr double kPi = std::numbers::pi;

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of a map (inversion center, |z| > 1, ...).
class SingularInputError : public Error {
 public:
  using Error::Error;
};

/// Geometric hypotheses violated or malformed domain data.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge; carries the residual history.
class IterationError : public Error {
 public:
  IterationError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// A numerical consistency check failed (seam mismatch, bad time change...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Mesh generation failed or a mesh violates its invariants.
class MeshError : public Error {
 public:
  using Error::Error;
};

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
inline double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

}  // namespace hotspots
