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

#include "byzsim/gradient_vector.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "byzsim/errors.hpp"

namespace byzsim {
namespace {

void check_finite(const std::vector<double>& values, const char* where) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NumericError(std::string("non-finite value in ") + where);
    }
  }
}

void check_same_dimension(const GradientVector& a, const GradientVector& b,
                          const char* where) {
  if (a.dimension() != b.dimension()) {
    throw ConfigError(std::string("dimension mismatch in ") + where + ": " +
                      std::to_string(a.dimension()) + " vs " +
                      std::to_string(b.dimension()));
  }
}

}  // namespace

GradientVector::GradientVector(std::vector<double> values)
    : values_(std::move(values)) {
  check_finite(values_, "GradientVector construction");
}

GradientVector::GradientVector(std::initializer_list<double> values)
    : GradientVector(std::vector<double>(values)) {}

GradientVector GradientVector::zeros(std::size_t d) {
  return GradientVector(std::vector<double>(d, 0.0));
}

GradientVector add(const GradientVector& a, const GradientVector& b) {
  check_same_dimension(a, b, "add");
  std::vector<double> out(a.dimension());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] + b[j];
  return GradientVector(std::move(out));
}

GradientVector sub(const GradientVector& a, const GradientVector& b) {
  check_same_dimension(a, b, "sub");
  std::vector<double> out(a.dimension());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] - b[j];
  return GradientVector(std::move(out));
}

GradientVector scale(const GradientVector& a, double s) {
  if (!std::isfinite(s)) throw NumericError("non-finite scale factor");
  std::vector<double> out(a.dimension());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] * s;
  return GradientVector(std::move(out));
}

double inner_product(const GradientVector& a, const GradientVector& b) {
  check_same_dimension(a, b, "inner_product");
  double acc = 0.0;
  for (std::size_t j = 0; j < a.dimension(); ++j) acc += a[j] * b[j];
  if (!std::isfinite(acc)) throw NumericError("non-finite inner product");
  return acc;
}

double l2_norm_sq(const GradientVector& a) { return inner_product(a, a); }

double l2_norm(const GradientVector& a) { return std::sqrt(l2_norm_sq(a)); }

GradientVector mean_of(const std::vector<GradientVector>& vectors) {
  if (vectors.empty()) throw ConfigError("mean_of: empty list");
  std::vector<double> acc(vectors.front().dimension(), 0.0);
  for (const auto& v : vectors) {
    check_same_dimension(vectors.front(), v, "mean_of");
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v[j];
  }
  const double inv = 1.0 / static_cast<double>(vectors.size());
  for (double& x : acc) x *= inv;
  return GradientVector(std::move(acc));
}

}  // namespace byzsim
