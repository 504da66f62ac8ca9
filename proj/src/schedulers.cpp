#include "rsched/schedulers.hpp"

#include <algorithm>
#include <map>

namespace rsched {

std::string_view policy_name(Policy p) {
    switch (p) {
        case Policy::release_greedy: return "release-greedy";
        case Policy::hdf: return "hdf";
    }
    return "?";
}

std::optional<Policy> parse_policy(std::string_view name) {
    if (name == "release-greedy") return Policy::release_greedy;
    if (name == "hdf") return Policy::hdf;
    return std::nullopt;
}

SlotAssignment saturate_in_order(std::span<const JobId> order, const SystemState& state, const Instance& inst,
                                 const Rational& speed) {
    SlotAssignment out;
    out.slot = state.slot;
    std::map<std::string_view, Rational> residual;
    for (const auto& n : inst.nodes) residual.emplace(n.id, speed * n.degree_bound);

    for (const JobId id : order) {
        const Request& r = inst.job(id);
        Rational& at_src = residual.at(r.src);
        Rational& at_dst = residual.at(r.dst);
        const Rational rate = std::min({at_src, at_dst, state.remaining[id]});
        if (rate <= 0) continue;
        at_src -= rate;
        at_dst -= rate;
        out.rates.emplace(id, rate);
    }
    return out;
}

SlotAssignment release_greedy_step(const SystemState& state, const Instance& inst, const Rational& speed) {
    std::vector<JobId> order = state.alive;
    std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
        const auto& ja = inst.job(a);
        const auto& jb = inst.job(b);
        return ja.release != jb.release ? ja.release < jb.release : a < b;
    });
    return saturate_in_order(order, state, inst, speed);
}

SlotAssignment hdf_step(const SystemState& state, const Instance& inst, const Rational& speed) {
    std::vector<std::pair<Rational, JobId>> keyed;
    keyed.reserve(state.alive.size());
    for (const JobId id : state.alive) keyed.emplace_back(inst.job(id).density(), id);
    std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        const auto ra = inst.job(a.second).release;
        const auto rb = inst.job(b.second).release;
        return ra != rb ? ra < rb : a.second < b.second;
    });
    std::vector<JobId> order;
    order.reserve(keyed.size());
    for (const auto& k : keyed) order.push_back(k.second);
    return saturate_in_order(order, state, inst, speed);
}

StepFunction step_function(Policy p) {
    switch (p) {
        case Policy::release_greedy: return release_greedy_step;
        case Policy::hdf: return hdf_step;
    }
    throw std::logic_error("unknown policy");
}

}  // namespace rsched
