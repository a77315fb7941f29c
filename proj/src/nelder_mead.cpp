#include "sgim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgim {

NelderMead::NelderMead(std::vector<double> start, const std::vector<double>& steps, std::vector<double> lower,
                       std::vector<double> upper, Coefficients coeffs)
    : c_(coeffs), lower_(std::move(lower)), upper_(std::move(upper)) {
  const std::size_t n = start.size();
  if (n == 0 || steps.size() != n || lower_.size() != n || upper_.size() != n) {
    throw std::invalid_argument("NelderMead: dimension mismatch");
  }
  simplex_.resize(n + 1);
  simplex_[0].x = start;
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> v = start;
    v[d] += steps[d];
    if (v[d] > upper_[d]) v[d] = start[d] - steps[d];
    simplex_[d + 1].x = std::move(v);
  }
  phase_ = Phase::Init;
  cursor_ = 0;
  propose(simplex_[0].x);
  best_point_ = pending_;
}

NelderMead::NelderMead(std::vector<std::vector<double>> vertices, std::vector<double> lower,
                       std::vector<double> upper, Coefficients coeffs)
    : c_(coeffs), lower_(std::move(lower)), upper_(std::move(upper)) {
  const std::size_t n = lower_.size();
  if (n == 0 || upper_.size() != n || vertices.size() != n + 1) {
    throw std::invalid_argument("NelderMead: need dimension + 1 vertices");
  }
  simplex_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    if (vertices[i].size() != n) throw std::invalid_argument("NelderMead: dimension mismatch");
    simplex_[i].x = std::move(vertices[i]);
  }
  phase_ = Phase::Init;
  cursor_ = 0;
  propose(simplex_[0].x);
  best_point_ = pending_;
}

void NelderMead::propose(std::vector<double> raw) {
  trial_ = std::move(raw);
  pending_ = trial_;
  clamp(pending_);
}

void NelderMead::clamp(std::vector<double>& x) const {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], lower_[d], upper_[d]);
}

void NelderMead::order() {
  std::stable_sort(simplex_.begin(), simplex_.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
}

std::vector<double> NelderMead::along(double t) const {
  const std::vector<double>& worst = simplex_.back().x;
  std::vector<double> x(centroid_.size());
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = centroid_[d] + t * (centroid_[d] - worst[d]);
  return x;
}

void NelderMead::start_iteration() {
  order();
  const std::size_t n = dimension();
  centroid_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < n; ++d) centroid_[d] += simplex_[i].x[d];
  }
  for (double& v : centroid_) v /= static_cast<double>(n);
  reflected_ = along(c_.reflection);
  propose(reflected_);
  phase_ = Phase::Reflect;
}

void NelderMead::start_shrink() {
  const std::vector<double>& best = simplex_.front().x;
  for (std::size_t i = 1; i < simplex_.size(); ++i) {
    for (std::size_t d = 0; d < best.size(); ++d) {
      simplex_[i].x[d] = best[d] + c_.shrink * (simplex_[i].x[d] - best[d]);
    }
  }
  phase_ = Phase::Shrink;
  cursor_ = 1;
  propose(simplex_[1].x);
}

void NelderMead::replace_worst(std::vector<double> x, double f) {
  simplex_.back().x = std::move(x);
  simplex_.back().f = f;
  start_iteration();
}

void NelderMead::tell(double value) {
  if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
  ++evaluations_;
  if (value < best_value_) {
    best_value_ = value;
    best_point_ = pending_;
  }
  // The simplex sees the objective plus a quadratic penalty on how far the
  // unconstrained trial point sits outside the box.
  for (std::size_t d = 0; d < trial_.size(); ++d) {
    const double w = upper_[d] - lower_[d];
    const double out = (trial_[d] - pending_[d]) / (w > 0.0 ? w : 1.0);
    value += out * out;
  }

  const std::size_t n = dimension();
  switch (phase_) {
    case Phase::Init:
      simplex_[cursor_].f = value;
      if (++cursor_ <= n) {
        propose(simplex_[cursor_].x);
      } else {
        start_iteration();
      }
      return;

    case Phase::Reflect: {
      f_reflected_ = value;
      const double f_best = simplex_.front().f;
      const double f_second_worst = simplex_[n - 1].f;
      const double f_worst = simplex_.back().f;
      if (value < f_best) {
        propose(along(c_.reflection * c_.expansion));
        phase_ = Phase::Expand;
      } else if (value < f_second_worst) {
        replace_worst(reflected_, value);
      } else if (value < f_worst) {
        propose(along(c_.reflection * c_.contraction));
        phase_ = Phase::ContractOutside;
      } else {
        propose(along(-c_.contraction));
        phase_ = Phase::ContractInside;
      }
      return;
    }

    case Phase::Expand:
      if (value < f_reflected_) {
        replace_worst(trial_, value);
      } else {
        replace_worst(reflected_, f_reflected_);
      }
      return;

    case Phase::ContractOutside:
      if (value <= f_reflected_) {
        replace_worst(trial_, value);
      } else {
        start_shrink();
      }
      return;

    case Phase::ContractInside:
      if (value < simplex_.back().f) {
        replace_worst(trial_, value);
      } else {
        start_shrink();
      }
      return;

    case Phase::Shrink:
      simplex_[cursor_].f = value;
      if (++cursor_ <= n) {
        propose(simplex_[cursor_].x);
      } else {
        start_iteration();
      }
      return;
  }
}

double NelderMead::simplex_spread() const {
  double spread = 0.0;
  const std::vector<double>& ref = simplex_.front().x;
  for (std::size_t i = 1; i < simplex_.size(); ++i) {
    for (std::size_t d = 0; d < ref.size(); ++d) {
      const double w = upper_[d] - lower_[d];
      spread = std::max(spread, std::abs(simplex_[i].x[d] - ref[d]) / (w > 0.0 ? w : 1.0));
    }
  }
  return spread;
}

}  // namespace sgim
