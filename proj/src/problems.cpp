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

#include "byzsim/problems.hpp"

#include <cmath>
#include <ostream>

#include "byzsim/errors.hpp"

namespace byzsim {
namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + e^z), overflow-safe.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

}  // namespace

Problem Problem::gaussian_quadratic(std::size_t d, double sigma,
                                    GradientVector x_star) {
  if (d < 1) throw ConfigError("gaussian_quadratic: d must be >= 1");
  if (sigma < 0.0 || !std::isfinite(sigma)) {
    throw ConfigError("gaussian_quadratic: sigma must be finite and >= 0");
  }
  if (x_star.dimension() != d) {
    throw ConfigError("gaussian_quadratic: x_star dimension mismatch");
  }
  return Problem(Quadratic{sigma, std::move(x_star)});
}

Problem Problem::logistic_regression(std::size_t d, std::size_t n_points,
                                     double ridge, double label_noise,
                                     std::uint64_t dataset_seed) {
  if (d < 1 || n_points < 1) {
    throw ConfigError("logistic_regression: d and n_points must be >= 1");
  }
  if (ridge <= 0.0) {
    throw ConfigError("logistic_regression: ridge must be > 0");
  }
  if (label_noise < 0.0 || label_noise >= 0.5) {
    throw ConfigError("logistic_regression: label_noise must be in [0, 0.5)");
  }

  Logistic impl;
  impl.d = d;
  impl.ridge = ridge;
  impl.features.resize(n_points * d);
  impl.labels.resize(n_points);

  RngStream rng(dataset_seed, StreamPurpose::kDatasetGeneration);
  // Ground-truth separator scaled so logits have O(1) spread.
  std::vector<double> w_true(d);
  const double w_scale = 2.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) w_true[j] = w_scale * rng.next_normal();

  for (std::size_t i = 0; i < n_points; ++i) {
    double logit = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double f = rng.next_normal();
      impl.features[i * d + j] = f;
      logit += w_true[j] * f;
    }
    double y = rng.next_unit() < sigmoid(logit) ? 1.0 : 0.0;
    if (rng.next_unit() < label_noise) y = 1.0 - y;
    impl.labels[i] = y;
  }
  return Problem(std::move(impl));
}

ProblemKind Problem::kind() const {
  return std::holds_alternative<Quadratic>(impl_)
             ? ProblemKind::kGaussianQuadratic
             : ProblemKind::kLogisticRegression;
}

std::size_t Problem::dimension() const {
  if (const auto* q = std::get_if<Quadratic>(&impl_)) {
    return q->x_star.dimension();
  }
  return std::get<Logistic>(impl_).d;
}

std::optional<GradientVector> Problem::minimizer() const {
  if (const auto* q = std::get_if<Quadratic>(&impl_)) return q->x_star;
  return std::nullopt;
}

GradientVector Problem::sample_gradient(const GradientVector& x, std::size_t n,
                                        RngStream& rng) const {
  if (x.dimension() != dimension()) {
    throw ConfigError("sample_gradient: dimension mismatch");
  }
  if (n < 1) throw ConfigError("sample_gradient: n must be >= 1");

  if (const auto* q = std::get_if<Quadratic>(&impl_)) {
    // Mean of n i.i.d. Normal(x_star, sigma^2 I) samples is
    // Normal(x_star, sigma^2/n I); draw it directly.
    const double noise = q->sigma / std::sqrt(static_cast<double>(n));
    std::vector<double> out(x.dimension());
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] = x[j] - q->x_star[j] - noise * rng.next_normal();
    }
    return GradientVector(std::move(out));
  }

  const auto& l = std::get<Logistic>(impl_);
  const std::size_t n_points = l.labels.size();
  std::vector<double> grad(l.d, 0.0);
  auto accumulate_point = [&](std::size_t i) {
    double z = 0.0;
    for (std::size_t j = 0; j < l.d; ++j) z += x[j] * l.features[i * l.d + j];
    const double residual = sigmoid(z) - l.labels[i];
    for (std::size_t j = 0; j < l.d; ++j) {
      grad[j] += residual * l.features[i * l.d + j];
    }
  };
  if (n == n_points) {
    for (std::size_t i = 0; i < n_points; ++i) accumulate_point(i);
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      accumulate_point(static_cast<std::size_t>(rng.next_below(n_points)));
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < l.d; ++j) {
    grad[j] = grad[j] * inv + l.ridge * x[j];
  }
  return GradientVector(std::move(grad));
}

GradientVector Problem::full_gradient(const GradientVector& x) const {
  if (x.dimension() != dimension()) {
    throw ConfigError("full_gradient: dimension mismatch");
  }
  if (const auto* q = std::get_if<Quadratic>(&impl_)) {
    return sub(x, q->x_star);
  }
  const auto& l = std::get<Logistic>(impl_);
  const std::size_t n_points = l.labels.size();
  std::vector<double> grad(l.d, 0.0);
  for (std::size_t i = 0; i < n_points; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < l.d; ++j) z += x[j] * l.features[i * l.d + j];
    const double residual = sigmoid(z) - l.labels[i];
    for (std::size_t j = 0; j < l.d; ++j) {
      grad[j] += residual * l.features[i * l.d + j];
    }
  }
  const double inv = 1.0 / static_cast<double>(n_points);
  for (std::size_t j = 0; j < l.d; ++j) {
    grad[j] = grad[j] * inv + l.ridge * x[j];
  }
  return GradientVector(std::move(grad));
}

double Problem::loss(const GradientVector& x) const {
  if (x.dimension() != dimension()) {
    throw ConfigError("loss: dimension mismatch");
  }
  if (const auto* q = std::get_if<Quadratic>(&impl_)) {
    // E_z[0.5||x - z||^2] = 0.5||x - x*||^2 + (d/2) sigma^2.
    return 0.5 * l2_norm_sq(sub(x, q->x_star)) +
           0.5 * static_cast<double>(x.dimension()) * q->sigma * q->sigma;
  }
  const auto& l = std::get<Logistic>(impl_);
  const std::size_t n_points = l.labels.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < l.d; ++j) z += x[j] * l.features[i * l.d + j];
    acc += softplus(z) - l.labels[i] * z;
  }
  return acc / static_cast<double>(n_points) + 0.5 * l.ridge * l2_norm_sq(x);
}

void Problem::export_dataset_csv(std::ostream& out) const {
  const auto* l = std::get_if<Logistic>(&impl_);
  if (l == nullptr) {
    throw ConfigError("export_dataset_csv: problem has no dataset");
  }
  for (std::size_t j = 0; j < l->d; ++j) out << "f" << j << ",";
  out << "label\n";
  for (std::size_t i = 0; i < l->labels.size(); ++i) {
    for (std::size_t j = 0; j < l->d; ++j) out << l->features[i * l->d + j] << ",";
    out << static_cast<int>(l->labels[i]) << "\n";
  }
}

std::size_t Problem::dataset_size() const {
  const auto* l = std::get_if<Logistic>(&impl_);
  if (l == nullptr) throw ConfigError("dataset_size: problem has no dataset");
  return l->labels.size();
}

double Problem::noise_sigma() const {
  const auto* q = std::get_if<Quadratic>(&impl_);
  if (q == nullptr) throw ConfigError("noise_sigma: not a quadratic problem");
  return q->sigma;
}

}  // namespace byzsim
