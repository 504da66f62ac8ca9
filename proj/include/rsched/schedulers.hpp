#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "rsched/engine.hpp"

namespace rsched {

enum class Policy { release_greedy, hdf };

std::string_view policy_name(Policy p);
std::optional<Policy> parse_policy(std::string_view name);

/// Greedy saturating assignment: walks `order` and gives each job
/// min(residual capacity at src, residual capacity at dst, remaining size),
/// with residual capacities starting at speed * d_v.
SlotAssignment saturate_in_order(std::span<const JobId> order, const SystemState& state, const Instance& inst,
                                 const Rational& speed);

/// Maximal matching in release order (release ascending, then id).
SlotAssignment release_greedy_step(const SystemState& state, const Instance& inst, const Rational& speed);

/// Highest-density-first: density descending, then release, then id.
SlotAssignment hdf_step(const SystemState& state, const Instance& inst, const Rational& speed);

StepFunction step_function(Policy p);

inline SimulationResult simulate(const Instance& inst, Policy p, const Rational& speed) {
    return simulate(inst, step_function(p), speed);
}

}  // namespace rsched
