#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace sgim {

/// Ask/tell Nelder-Mead simplex minimiser with box clamping.
///
/// The caller drives evaluation: ask() yields the next point, tell() reports
/// its objective value. Vertices move freely; only the points handed out by
/// ask() are clamped, so the simplex does not collapse onto the box faces.
/// Trial points outside the box are ranked with a quadratic penalty on their
/// distance to it.
class NelderMead {
 public:
  struct Coefficients {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;

    static Coefficients standard() { return {}; }
    /// Dimension-dependent coefficients (Gao & Han); they keep the simplex
    /// from stalling in more than a handful of dimensions.
    static Coefficients adaptive(std::size_t n) {
      const double d = static_cast<double>(n);
      return {1.0, 1.0 + 2.0 / d, 0.75 - 1.0 / (2.0 * d), 1.0 - 1.0 / d};
    }
  };

  /// The initial simplex is `start` plus one vertex per dimension offset by
  /// steps[d] (flipped inward when it would leave the box).
  NelderMead(std::vector<double> start, const std::vector<double>& steps, std::vector<double> lower,
             std::vector<double> upper, Coefficients coeffs);
  NelderMead(std::vector<double> start, const std::vector<double>& steps, std::vector<double> lower,
             std::vector<double> upper)
      : NelderMead(start, steps, std::move(lower), std::move(upper), Coefficients::adaptive(start.size())) {}

  /// Explicit initial simplex: n + 1 vertices, the first one evaluated first.
  NelderMead(std::vector<std::vector<double>> vertices, std::vector<double> lower, std::vector<double> upper,
             Coefficients coeffs);

  const std::vector<double>& ask() const { return pending_; }
  void tell(double value);

  const std::vector<double>& best_point() const { return best_point_; }
  double best_value() const { return best_value_; }
  std::size_t evaluations() const { return evaluations_; }
  std::size_t dimension() const { return lower_.size(); }

  /// Largest vertex offset from the best vertex, per dimension relative to
  /// the box width.
  double simplex_spread() const;

 private:
  enum class Phase { Init, Reflect, Expand, ContractOutside, ContractInside, Shrink };

  struct Vertex {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
  };

  void clamp(std::vector<double>& x) const;
  void propose(std::vector<double> raw);
  void order();
  void start_iteration();
  void start_shrink();
  void replace_worst(std::vector<double> x, double f);
  std::vector<double> along(double t) const;  // centroid + t * (centroid - worst)

  Coefficients c_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Vertex> simplex_;
  std::vector<double> centroid_;
  std::vector<double> trial_;    // unconstrained trial point
  std::vector<double> pending_;  // trial_ clamped into the box
  Phase phase_ = Phase::Init;
  std::size_t cursor_ = 0;  // vertex being (re)evaluated during Init/Shrink
  std::vector<double> reflected_;
  double f_reflected_ = 0.0;

  std::vector<double> best_point_;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::size_t evaluations_ = 0;
};

}  // namespace sgim
