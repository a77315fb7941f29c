#pragma once

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgim/config.hpp"
#include "sgim/exploration.hpp"
#include "sgim/types.hpp"

namespace sgim {

struct DemoEntry {
  PolicyParams theta;
  Outcome outcome;
};

using DemoSet = std::vector<DemoEntry>;

/// What the learner gets from a teacher: the policy as it perceives it, the
/// policy the teacher really ran, and the demonstrated outcome.
struct Demonstration {
  PolicyParams theta_observed;
  PolicyParams theta_true;
  Outcome outcome;
};

/// Largest |phi| the analytic placer can reach: three bang-bang pairs at
/// full acceleration and maximal duration.
double placer_range(const Config& cfg);

/// Analytic placing policy: three (+a, t_max, -a, t_max) pairs then an idle
/// segment. Ends at rest at phi_target (clamped into placer_range).
PolicyParams teacher2_place_policy(double phi_target, const Config& cfg);

/// Runs an intrinsically motivated learner offline, then keeps, per cell of a
/// grid over the throw box, the throw closest to the cell centre (dropping
/// cells with nothing within half a cell diagonal).
DemoSet build_teacher1_demoset(const Config& cfg);

nlohmann::json demoset_to_json(const DemoSet& demos);
DemoSet demoset_from_json(const nlohmann::json& j);
void save_demoset(const std::string& path, const DemoSet& demos);
DemoSet load_demoset(const std::string& path);

/// Uses cfg.teacher_cache when it exists, otherwise builds the set (and
/// writes the cache when a path is configured).
DemoSet load_or_build_teacher1(const Config& cfg, bool rebuild = false);

class Teacher {
 public:
  enum class Source { Dataset, Placer };

  static Teacher thrower(DemoSet demos);
  static Teacher placer(int id, DemoEncoding observed_as);

  int id() const { return id_; }
  Source source() const { return source_; }
  DemoEncoding encoding() const { return encoding_; }
  const DemoSet& dataset() const { return demos_; }

  Demonstration request_demo(const Outcome& goal, const Config& cfg) const;

 private:
  int id_ = 1;
  Source source_ = Source::Dataset;
  DemoEncoding encoding_ = DemoEncoding::Matching;
  DemoSet demos_;
};

/// Teacher 1 throws from its dataset, teacher 2 places, teacher 3 places but
/// is observed with segments 6-7 accelerations sign-flipped.
struct TeacherSet {
  std::array<Teacher, 3> teachers;
  const Teacher& operator[](int id) const { return teachers.at(static_cast<std::size_t>(id - 1)); }
};

TeacherSet make_teachers(DemoSet teacher1_demos);

}  // namespace sgim
