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

#pragma once

#include <memory>
#include <string_view>

#include "flsched/types.hpp"

namespace flsched {

// Convex per-sample loss f(margin; label) together with its Fenchel
// conjugate, used by the dual training core. The regularizer is fixed to the
// Tikhonov form rho(w) = |w|^2 / 2, whose conjugate is itself and whose
// conjugate gradient is the identity.
class LossModel {
 public:
  explicit LossModel(double regularization) : regularization_(regularization) {}
  virtual ~LossModel() = default;

  double regularization() const { return regularization_; }
  virtual std::string_view name() const = 0;

  /// f(margin; label).
  virtual double value(double margin, double label) const = 0;
  /// f*(u; label); +infinity outside the conjugate domain.
  virtual double conjugate(double u, double label) const = 0;
  /// d/du f*(u; label), evaluated with boundary clamping where needed.
  virtual double conjugate_grad(double u, double label) const = 0;

  /// Maximizer step of g(step) = -f*(-(tau + step)) - linear*step
  /// - 0.5*quad*step^2 over the conjugate domain; `tau` is the current dual
  /// coordinate and quad >= 0. This is the scalar subproblem of one dual
  /// coordinate-ascent update.
  virtual double solve_coordinate(double tau, double label, double linear, double quad) const = 0;

  /// Projects a dual coordinate into the domain where f*(-theta) is finite.
  virtual double clamp_dual(double theta, double label) const = 0;

  static double regularizer(const Vector& w) { return 0.5 * w.squaredNorm(); }
  static double regularizer_conjugate(const Vector& v) { return 0.5 * v.squaredNorm(); }
  static Vector regularizer_conjugate_grad(const Vector& v) { return v; }

 private:
  double regularization_;
};

/// Squared loss f(a; y) = (a - y)^2 / 2 with conjugate u^2/2 + u*y.
class RidgeLoss final : public LossModel {
 public:
  using LossModel::LossModel;
  std::string_view name() const override { return "ridge"; }
  double value(double margin, double label) const override;
  double conjugate(double u, double label) const override;
  double conjugate_grad(double u, double label) const override;
  double solve_coordinate(double tau, double label, double linear, double quad) const override;
  double clamp_dual(double theta, double /*label*/) const override { return theta; }
};

/// Binary logistic loss f(a; y) = log(1 + exp(-y*a)), y in {-1, +1}. The
/// conjugate is the negative entropy s*log(s) + (1-s)*log(1-s) with
/// s = -u*y in [0, 1]; evaluation clamps at the boundary.
class LogisticLoss final : public LossModel {
 public:
  using LossModel::LossModel;
  std::string_view name() const override { return "logistic"; }
  double value(double margin, double label) const override;
  double conjugate(double u, double label) const override;
  double conjugate_grad(double u, double label) const override;
  double solve_coordinate(double tau, double label, double linear, double quad) const override;
  double clamp_dual(double theta, double label) const override;
};

std::unique_ptr<LossModel> make_loss(std::string_view name, double regularization);

}  // namespace flsched
