#include "sgim/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sgim {

bool ParamBounds::contains(const PolicyParams& p) const {
  for (std::size_t i = 0; i < kPolicyDim; ++i) {
    if (!(p[i] >= lower(i) && p[i] <= upper(i))) return false;
  }
  return true;
}

PolicyParams ParamBounds::clamp(const PolicyParams& p) const {
  PolicyParams out = p;
  for (std::size_t i = 0; i < kPolicyDim; ++i) out[i] = std::clamp(p[i], lower(i), upper(i));
  return out;
}

PolicyParams ParamBounds::sample(Rng& rng) const {
  PolicyParams out;
  for (std::size_t i = 0; i < kPolicyDim; ++i) out[i] = uniform(rng, lower(i), upper(i));
  return out;
}

const char* kind_name(OutcomeKind k) { return k == OutcomeKind::Throw ? "throw" : "place"; }

std::string to_string(const Outcome& o) {
  if (o.kind == OutcomeKind::Throw) {
    return "Throw(" + std::to_string(o.x()) + ", " + std::to_string(o.h()) + ")";
  }
  return "Place(" + std::to_string(o.phi()) + ")";
}

double OutcomeBox::diagonal() const {
  double s = 0.0;
  for (std::size_t d = 0; d < dims(); ++d) s += width(d) * width(d);
  return std::sqrt(s);
}

double OutcomeBox::volume() const {
  double v = 1.0;
  for (std::size_t d = 0; d < dims(); ++d) v *= width(d);
  return v;
}

bool OutcomeBox::contains(const Outcome& o) const {
  if (o.kind != kind) return false;
  for (std::size_t d = 0; d < dims(); ++d) {
    if (o.v[d] < lo[d] || o.v[d] > hi[d]) return false;
  }
  return true;
}

Outcome OutcomeBox::clamp(const Outcome& o) const {
  Outcome out = o;
  for (std::size_t d = 0; d < dims(); ++d) out.v[d] = std::clamp(o.v[d], lo[d], hi[d]);
  return out;
}

double distance_j(const Outcome& a, const Outcome& b, const OutcomeSpace& space) {
  if (a.kind != b.kind) return 1.0;
  const OutcomeBox& box = space.box(a.kind);
  double s = 0.0;
  for (std::size_t d = 0; d < a.dims(); ++d) {
    const double diff = a.v[d] - b.v[d];
    s += diff * diff;
  }
  return std::sqrt(s) / box.diagonal();
}

double wrap_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi + std::numbers::pi, two_pi);
  if (r < 0.0) r += two_pi;
  r -= std::numbers::pi;
  // fmod can round up to exactly +pi for inputs just below an odd multiple
  if (r >= std::numbers::pi) r -= two_pi;
  return r;
}

std::string to_string(const StrategyId& s) {
  switch (s.kind) {
    case StrategyKind::Intrinsic:
      return "intrinsic";
    case StrategyKind::Mimic:
      return "mimic_t" + std::to_string(s.teacher);
    case StrategyKind::Emulate:
      return "emulate_t" + std::to_string(s.teacher);
  }
  return "unknown";
}

StrategyId parse_strategy(const std::string& name) {
  if (name == "intrinsic") return StrategyId::intrinsic();
  auto teacher_of = [&](std::size_t prefix) {
    if (name.size() != prefix + 1) throw ConfigError("unknown strategy: " + name);
    const int t = name[prefix] - '0';
    if (t < 1 || t > 3) throw ConfigError("unknown strategy: " + name);
    return t;
  };
  if (name.starts_with("mimic_t")) return StrategyId::mimic(teacher_of(7));
  if (name.starts_with("emulate_t")) return StrategyId::emulate(teacher_of(9));
  throw ConfigError("unknown strategy: " + name);
}

}  // namespace sgim
