// Copyright 2026 The byzsim Authors
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

#ifndef BYZSIM_GRADIENT_VECTOR_HPP
#define BYZSIM_GRADIENT_VECTOR_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace byzsim {

/// Dense d-dimensional vector of 64-bit reals. Every entry is finite; a
/// construction or operation that would produce NaN/Inf throws NumericError.
/// Immutable after construction.
class GradientVector {
 public:
  GradientVector() = default;
  explicit GradientVector(std::vector<double> values);
  GradientVector(std::initializer_list<double> values);

  static GradientVector zeros(std::size_t d);

  std::size_t dimension() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const GradientVector& other) const = default;

 private:
  std::vector<double> values_;
};

GradientVector add(const GradientVector& a, const GradientVector& b);
GradientVector sub(const GradientVector& a, const GradientVector& b);
GradientVector scale(const GradientVector& a, double s);

double inner_product(const GradientVector& a, const GradientVector& b);
double l2_norm_sq(const GradientVector& a);
double l2_norm(const GradientVector& a);

/// Arithmetic mean of a nonempty list of equal-dimension vectors.
GradientVector mean_of(const std::vector<GradientVector>& vectors);

}  // namespace byzsim

#endif  // BYZSIM_GRADIENT_VECTOR_HPP
