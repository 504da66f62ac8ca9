#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsched/engine.hpp"

namespace rsched {

enum class DualMode { simple, general };

std::string_view mode_name(DualMode m);
std::optional<DualMode> parse_mode(std::string_view name);

/// Alive set and per-node incidence of one slot.
struct SlotSnapshot {
    Slot slot = 0;
    std::vector<JobId> alive;            // S(t), ascending id
    std::vector<std::int64_t> degree;    // d_v(t), indexed like Instance::nodes
    std::vector<Rational> weight;        // ω_v(t), indexed like Instance::nodes
};

/// Jobs alive at the start of slot r_i (including every job released in that
/// slot) that share an endpoint with i. i itself is never included.
struct ArrivalPeers {
    std::vector<JobId> at_src;  // U_i(r_i)
    std::vector<JobId> at_dst;  // V_i(r_i)
};

struct Trace {
    std::vector<SlotSnapshot> slots;  // slots 0 .. makespan-1
    std::vector<ArrivalPeers> peers;  // indexed by job id
    std::vector<Slot> completion;     // indexed by job id
    Rational speed{1};

    const SlotSnapshot* at(Slot t) const;
};

/// Replays a feasible schedule and records the alive sets under the engine's
/// completion convention.
Trace build_trace(const Instance& inst, const Schedule& sched);
Json trace_to_json(const Instance& inst, const Trace& trace);

struct DualSolution {
    std::vector<Rational> alpha;              // indexed by job id
    std::vector<std::vector<Rational>> beta;  // [slot][node index]; zero past the end
    Rational speed{1};
    DualMode mode = DualMode::simple;

    Rational beta_at(std::size_t node, Slot t) const;
    Rational sum_alpha() const;
    Rational sum_beta() const;
    Rational objective() const { return sum_alpha() - sum_beta(); }
};

/// alpha_i = (d_u(r_i) + d_v(r_i)) / 2s with i counted, beta_{v,t} = d_v(t) / 2s.
/// Requires all degrees, sizes and weights equal to 1.
DualSolution build_dual_simple(const Instance& inst, const Trace& trace);

/// Weighted variant for unit-size instances: alpha charges i for every
/// strictly heavier arrival peer and each strictly lighter peer's weight,
/// scaled by 1/d per endpoint; beta_{v,t} = ω_v(t) / 2s.
DualSolution build_dual_general(const Instance& inst, const Trace& trace);

struct DualViolation {
    JobId job;
    Slot slot;
    Rational slack;  // rhs - lhs, negative when violated
};

struct DualFeasibilityReport {
    std::vector<DualViolation> violations;
    Slot horizon = 0;
    Rational sum_alpha{0};
    Rational sum_beta{0};

    bool feasible() const { return violations.empty(); }
    Rational dual_objective() const { return sum_alpha - sum_beta; }
};

/// Checks every dual constraint for t in [r_i, horizon]. The automatic horizon
/// is max_i (r_i + ceil(alpha_i / w_i)) + 1, beyond which the left side can
/// never exceed the right side.
DualFeasibilityReport verify_dual_feasibility(const DualSolution& dual, const Instance& inst,
                                              std::optional<Slot> horizon = std::nullopt);
Json dual_report_to_json(const DualFeasibilityReport& report);

struct DualBoundsReport {
    Rational alg{0};  // weighted flow of the run
    Rational sum_alpha{0};
    Rational sum_beta{0};
    bool alpha_bound = false;    // sum_alpha >= alg / 2
    bool beta_bound = false;     // sum_beta <= alg / s
    bool beta_identity = false;  // sum_beta == alg / s
    std::optional<Rational> certified_alg_bound;  // 2s/(s-2) * (sum_alpha - sum_beta), only for s > 2
    bool certified_holds = false;
    std::string note;
};

DualBoundsReport check_dual_bounds(const DualSolution& dual, const Metrics& metrics);
Json bounds_report_to_json(const DualBoundsReport& report);

}  // namespace rsched
