#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsched/model.hpp"

namespace rsched {

/// Simulator state at the start of a slot.
struct SystemState {
    Slot slot = 0;
    std::vector<Rational> remaining;  // indexed by job id; ℓ_i(t)
    std::vector<JobId> alive;         // released, unfinished; ascending id
};

/// Per-job completion uses the convention C_i = (slot in which the job's
/// cumulative processing reaches its size) + 1, so the job is in the system
/// during slots r_i <= t < C_i.
struct Metrics {
    std::vector<Slot> completion;  // indexed by job id
    Rational weighted_flow{0};
    Rational fractional_flow{0};
    Rational weighted_completion{0};
    Slot makespan = 0;

    Slot flow(const Instance& inst, JobId id) const { return completion.at(id) - inst.job(id).release; }
};

/// One slot's decision. Receives the state, the instance and the speed; must
/// return rates obeying per-node capacity speed*d_v and remaining-size caps.
using StepFunction = std::function<SlotAssignment(const SystemState&, const Instance&, const Rational&)>;

struct SimulationResult {
    Schedule schedule;
    Metrics metrics;
};

/// Runs slots 0,1,2,... until every job finishes. Throws std::logic_error if
/// the step function returns an infeasible assignment or the loop exceeds its
/// horizon guard; throws InputError on non-positive speed.
SimulationResult simulate(const Instance& inst, const StepFunction& step, const Rational& speed);

struct ScheduleViolation {
    enum class Kind { capacity, before_release, over_processing, incomplete, unknown_job, slot_order };

    Kind kind;
    std::string subject;  // node id or "job <id>"
    Slot slot = 0;
    Rational amount{0};

    std::string message() const;
};

using FeasibilityReport = std::vector<ScheduleViolation>;

FeasibilityReport verify_schedule(const Instance& inst, const Schedule& sched);

/// Throws InputError naming the first job whose processing never reaches its size.
Metrics compute_metrics(const Instance& inst, const Schedule& sched);

Json metrics_to_json(const Instance& inst, const Metrics& m);
Json feasibility_to_json(const FeasibilityReport& report);

}  // namespace rsched
