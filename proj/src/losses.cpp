/*
 * Copyright 2026 The flsched Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "flsched/losses.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace flsched {

namespace {

constexpr double kDomainEps = 1e-12;
constexpr double kDomainSlack = 1e-9;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// Ridge

double RidgeLoss::value(double margin, double label) const {
  const double r = margin - label;
  return 0.5 * r * r;
}

double RidgeLoss::conjugate(double u, double label) const { return 0.5 * u * u + u * label; }

double RidgeLoss::conjugate_grad(double u, double label) const { return u + label; }

double RidgeLoss::solve_coordinate(double tau, double label, double linear, double quad) const {
  // Stationarity of g: conjugate_grad(-(tau + step)) = linear + quad*step.
  return (label - tau - linear) / (1.0 + quad);
}

// ---------------------------------------------------------------------------
// Logistic

double LogisticLoss::value(double margin, double label) const {
  const double t = -label * margin;
  // log1p(exp(t)) without overflow for large |t|.
  return t > 30.0 ? t : std::log1p(std::exp(t));
}

double LogisticLoss::conjugate(double u, double label) const {
  const double s = -u * label;
  if (s < -kDomainSlack || s > 1.0 + kDomainSlack)
    return std::numeric_limits<double>::infinity();
  const double sc = std::min(1.0, std::max(0.0, s));
  return xlogx(sc) + xlogx(1.0 - sc);
}

double LogisticLoss::conjugate_grad(double u, double label) const {
  double s = -u * label;
  s = std::min(1.0 - kDomainEps, std::max(kDomainEps, s));
  return label * (std::log(1.0 - s) - std::log(s));
}

double LogisticLoss::clamp_dual(double theta, double label) const {
  // f*(-theta) is finite for theta*label in [0, 1].
  double s = theta * label;
  s = std::min(1.0 - kDomainEps, std::max(kDomainEps, s));
  return s * label;
}

double LogisticLoss::solve_coordinate(double tau, double label, double linear, double quad) const {
  // Parameterize by s = (tau + step) * label in (0, 1). The scaled gradient
  // h(s) = label * g'(step(s)) is strictly decreasing, so bisection finds the
  // unique interior maximizer.
  const auto scaled_grad = [&](double s) {
    const double step = s * label - tau;
    // conjugate_grad(-(tau+step)) with -(tau+step)*label = -s already interior
    const double grad = label * (std::log(1.0 - s) - std::log(s));
    return label * (grad - linear - quad * step);
  };
  double lo = kDomainEps, hi = 1.0 - kDomainEps;
  if (scaled_grad(lo) <= 0.0) return lo * label - tau;
  if (scaled_grad(hi) >= 0.0) return hi * label - tau;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (scaled_grad(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi) * label - tau;
}

std::unique_ptr<LossModel> make_loss(std::string_view name, double regularization) {
  if (regularization <= 0.0) throw std::invalid_argument("loss: regularization must be > 0");
  if (name == "ridge") return std::make_unique<RidgeLoss>(regularization);
  if (name == "logistic") return std::make_unique<LogisticLoss>(regularization);
  throw std::invalid_argument("loss: unknown loss '" + std::string(name) + "'");
}

}  // namespace flsched
