#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "msel/dcsel.hpp"
#include "msel/error.hpp"
#include "msel/graph.hpp"

namespace msel {

/// One dynamic-constraint change.
struct ScheduleEvent {
  enum class Kind { SizeSet, SizeDelta, SimilaritySet, SimilarityDelta, Augment };

  Kind kind = Kind::SizeDelta;
  long long size = 0;       // SizeSet / SizeDelta (signed)
  double similarity = 0.0;  // SimilaritySet / SimilarityDelta (signed)
  std::filesystem::path graph_path;    // Augment
  std::filesystem::path bridges_path;  // Augment, optional
  std::string source;  // text as written in the schedule file, if any

  static ScheduleEvent size_set(long long p);
  static ScheduleEvent size_delta(long long dp);
  static ScheduleEvent similarity_set(double s);
  static ScheduleEvent similarity_delta(double ds);
  static ScheduleEvent augment(std::filesystem::path graph,
                               std::filesystem::path bridges = {});

  /// Canonical one-line form, e.g. "p += 3" or "s = 0.4".
  std::string text() const;
};

struct Schedule {
  ConstraintPair initial;
  std::vector<ScheduleEvent> events;

  std::string init_text() const;
};

/// Grammar, one event per line, `#` starts a comment:
///   init p=<int> s=<real>          (first line)
///   p += <int> | p -= <int> | p = <int>
///   s += <real> | s -= <real> | s = <real>
///   augment <path> [bridges <path>]
/// Relative augment paths resolve against `base_dir`.
Schedule parse_schedule(std::istream& in, const std::string& name = "<schedule>",
                        const std::filesystem::path& base_dir = {});
Schedule load_schedule(const std::filesystem::path& path);

/// Applies the constraint part of `event` to `c`; throws Error(Parameter)
/// when the result leaves the valid range. Augment events leave `c` alone.
void apply_to_constraints(ConstraintPair& c, const ScheduleEvent& event);

struct StepRecord {
  std::size_t step = 0;
  std::string event;
  std::string algo;
  double alpha = 0.0;
  std::size_t size = 0;
  bool feasible = false;
  std::int64_t wall_ns = 1;
};

/// A schedule step that could not be applied.
class ScheduleError : public Error {
 public:
  ScheduleError(std::size_t step, const std::string& what)
      : Error(ErrorKind::Parameter, "step " + std::to_string(step) + ": " + what),
        step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Applies events in order to the session. Records are numbered from
/// `first_step`; the first failing event throws ScheduleError.
std::vector<StepRecord> run_schedule(Session& session, std::span<const ScheduleEvent> events,
                                     std::size_t first_step = 1);

}  // namespace msel
