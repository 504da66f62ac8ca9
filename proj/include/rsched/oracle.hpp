#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rsched/generators.hpp"
#include "rsched/model.hpp"

namespace rsched {

enum class Objective { weighted_flow, weighted_completion };

std::string_view objective_name(Objective o);
std::optional<Objective> parse_objective(std::string_view name);

struct OracleResult {
    Rational cost;
    Schedule witness;  // speed 1, integral unit rates
};

inline constexpr std::size_t kDefaultOracleJobCap = 8;

/// Exact speed-1 optimum for unit-size instances by exhaustive search over
/// per-slot maximal degree-feasible job sets, memoized on (slot, finished set).
/// `horizon` defaults to max release + n. Throws InputError for non-unit sizes
/// or when the instance has more than `job_cap` jobs.
OracleResult brute_force_opt(const Instance& inst, Objective objective, std::optional<Slot> horizon = std::nullopt,
                             std::size_t job_cap = kDefaultOracleJobCap);

/// Hand-built speed-1 schedule for gen_lower_bound(L, variant): first drain
/// the conflicting early group alone, then pair the other early group with
/// the late arrivals, then serve late arrivals on release. Weighted flow is
/// 3L + sqrt(L) <= 4L.
Schedule explicit_lb_opt_schedule(std::int64_t L, LbVariant variant);

}  // namespace rsched
