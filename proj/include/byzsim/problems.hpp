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

#ifndef BYZSIM_PROBLEMS_HPP
#define BYZSIM_PROBLEMS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "byzsim/gradient_vector.hpp"
#include "byzsim/rng.hpp"

namespace byzsim {

enum class ProblemKind { kGaussianQuadratic, kLogisticRegression };

/// Stochastic differentiable objective exposing minibatch gradients, the
/// exact full gradient, loss, and (when known) the minimizer. Immutable
/// after construction; gradient sampling is pure given an RngStream.
class Problem {
 public:
  /// f(x; z) = 0.5 ||x - z||^2 with z ~ Normal(x_star, sigma^2 I).
  /// Full gradient is exactly x - x_star; an n-sample minibatch gradient has
  /// per-coordinate variance sigma^2 / n.
  static Problem gaussian_quadratic(std::size_t d, double sigma,
                                    GradientVector x_star);

  /// Fixed synthetic dataset of n_points labeled examples drawn from a
  /// ground-truth separator with label-flip noise; loss is mean cross
  /// entropy plus (ridge/2) ||x||^2 so the minimizer is unique.
  static Problem logistic_regression(std::size_t d, std::size_t n_points,
                                     double ridge, double label_noise,
                                     std::uint64_t dataset_seed);

  ProblemKind kind() const;
  std::size_t dimension() const;
  std::optional<GradientVector> minimizer() const;

  /// Average gradient over n fresh samples. Quadratic: exact Gaussian with
  /// variance sigma^2/n per coordinate. Logistic: uniform with replacement
  /// from the dataset, except n == n_points which uses every point once
  /// (full batch, equal to full_gradient exactly).
  GradientVector sample_gradient(const GradientVector& x, std::size_t n,
                                 RngStream& rng) const;

  GradientVector full_gradient(const GradientVector& x) const;

  double loss(const GradientVector& x) const;

  /// Dataset rows as "feature,...,feature,label" (logistic only).
  void export_dataset_csv(std::ostream& out) const;

  std::size_t dataset_size() const;  // logistic only

  double noise_sigma() const;  // quadratic only

 private:
  struct Quadratic {
    double sigma;
    GradientVector x_star;
  };
  struct Logistic {
    std::size_t d;
    double ridge;
    std::vector<double> features;  // n_points x d, row-major
    std::vector<double> labels;    // 0 or 1
  };

  explicit Problem(Quadratic q) : impl_(std::move(q)) {}
  explicit Problem(Logistic l) : impl_(std::move(l)) {}

  std::variant<Quadratic, Logistic> impl_;
};

}  // namespace byzsim

#endif  // BYZSIM_PROBLEMS_HPP
