#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace sgim {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits, so streams are
/// identical across standard libraries.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  auto i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
  return i < n ? i : n - 1;
}

class ParameterDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ModelColdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kSegments = 7;
inline constexpr std::size_t kPolicyDim = 2 * kSegments;

/// Motor primitive parameters: seven (angular acceleration, duration) pairs,
/// stored flattened as [a1, t1, a2, t2, ..., a7, t7].
class PolicyParams {
 public:
  PolicyParams() { values_.fill(0.0); }
  explicit PolicyParams(const std::array<double, kPolicyDim>& values) : values_(values) {}

  double accel(std::size_t segment) const { return values_[2 * segment]; }
  double duration(std::size_t segment) const { return values_[2 * segment + 1]; }
  void set_accel(std::size_t segment, double a) { values_[2 * segment] = a; }
  void set_duration(std::size_t segment, double t) { values_[2 * segment + 1] = t; }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  static constexpr std::size_t size() { return kPolicyDim; }

  const std::array<double, kPolicyDim>& values() const { return values_; }
  std::span<const double, kPolicyDim> span() const { return values_; }

  bool operator==(const PolicyParams&) const = default;

 private:
  std::array<double, kPolicyDim> values_;
};

/// Box bounds on the policy parameters.
struct ParamBounds {
  double a_max = 5.0;
  double t_min = 0.05;
  double t_max = 0.3;

  double lower(std::size_t i) const { return i % 2 == 0 ? -a_max : t_min; }
  double upper(std::size_t i) const { return i % 2 == 0 ? a_max : t_max; }
  double range(std::size_t i) const { return upper(i) - lower(i); }

  bool contains(const PolicyParams& p) const;
  PolicyParams clamp(const PolicyParams& p) const;
  PolicyParams sample(Rng& rng) const;
};

enum class OutcomeKind : std::uint8_t { Throw = 0, Place = 1 };

inline constexpr std::size_t kSubspaces = 2;

inline std::size_t subspace_of(OutcomeKind k) { return static_cast<std::size_t>(k); }
inline std::size_t subspace_dims(OutcomeKind k) { return k == OutcomeKind::Throw ? 2 : 1; }
const char* kind_name(OutcomeKind k);

/// A point of the composite outcome space: a throw (x, h) or a placement phi.
struct Outcome {
  OutcomeKind kind = OutcomeKind::Throw;
  std::array<double, 2> v{0.0, 0.0};

  static Outcome throw_at(double x, double h) { return {OutcomeKind::Throw, {x, h}}; }
  static Outcome place_at(double phi) { return {OutcomeKind::Place, {phi, 0.0}}; }

  std::size_t dims() const { return subspace_dims(kind); }
  double x() const { return v[0]; }
  double h() const { return v[1]; }
  double phi() const { return v[0]; }

  bool operator==(const Outcome&) const = default;
};

std::string to_string(const Outcome& o);

struct OutcomeBox {
  OutcomeKind kind = OutcomeKind::Throw;
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{0.0, 0.0};

  std::size_t dims() const { return subspace_dims(kind); }
  double width(std::size_t d) const { return hi[d] - lo[d]; }
  double diagonal() const;
  double volume() const;
  bool contains(const Outcome& o) const;
  Outcome clamp(const Outcome& o) const;
};

struct OutcomeSpace {
  std::array<OutcomeBox, kSubspaces> boxes;
  const OutcomeBox& box(OutcomeKind k) const { return boxes[subspace_of(k)]; }
};

/// Normalized outcome distance: Euclidean distance divided by the subspace
/// diagonal for same-kind outcomes, 1.0 for outcomes of different kinds.
double distance_j(const Outcome& a, const Outcome& b, const OutcomeSpace& space);

/// Wraps an angle into [-pi, pi).
double wrap_angle(double phi);

/// What one policy execution produced: always a throw, a placement only when
/// the arm ended slow enough.
struct Observation {
  Outcome thrown;
  std::optional<Outcome> placed;

  const Outcome* find(OutcomeKind k) const {
    if (k == OutcomeKind::Throw) return &thrown;
    return placed ? &*placed : nullptr;
  }
};

enum class StrategyKind : std::uint8_t { Intrinsic, Mimic, Emulate };

struct StrategyId {
  StrategyKind kind = StrategyKind::Intrinsic;
  int teacher = 0;  // 1..3 for Mimic/Emulate, 0 for Intrinsic

  static StrategyId intrinsic() { return {}; }
  static StrategyId mimic(int t) { return {StrategyKind::Mimic, t}; }
  static StrategyId emulate(int t) { return {StrategyKind::Emulate, t}; }

  bool social() const { return kind != StrategyKind::Intrinsic; }
  bool operator==(const StrategyId&) const = default;
};

/// "intrinsic", "mimic_t2", "emulate_t3", ...
std::string to_string(const StrategyId& s);
StrategyId parse_strategy(const std::string& name);

struct Episode {
  PolicyParams theta;
  Observation observed;
  Outcome goal;
  StrategyId strategy;
  std::int64_t tick = 0;
};

}  // namespace sgim
