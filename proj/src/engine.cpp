#include "rsched/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace rsched {

namespace {

bool known_job(const Instance& inst, JobId id) { return id >= 0 && static_cast<std::size_t>(id) < inst.size(); }

std::string job_subject(JobId id) { return "job " + std::to_string(id); }

// Largest slot the simulation may reach. Every non-empty slot either finishes
// a job or processes at least min(speed, 1) units of work.
Slot horizon_guard(const Instance& inst, const Rational& speed) {
    Slot max_release = 0;
    Rational total{0};
    for (const auto& r : inst.requests) {
        max_release = std::max(max_release, r.release);
        total += r.size;
    }
    const Rational per_slot = speed < 1 ? speed : Rational(1);
    return max_release + static_cast<Slot>(inst.size()) + to_int64(ceil_div(total / per_slot)) + 1;
}

void check_step(const Instance& inst, const SystemState& state, const SlotAssignment& a, const Rational& speed) {
    if (a.slot != state.slot) throw std::logic_error("scheduler returned an assignment for the wrong slot");
    std::map<std::string_view, Rational> load;
    for (const auto& [id, rate] : a.rates) {
        if (!std::binary_search(state.alive.begin(), state.alive.end(), id))
            throw std::logic_error("scheduler assigned non-alive " + job_subject(id));
        if (rate <= 0 || rate > state.remaining[id])
            throw std::logic_error("scheduler assigned out-of-range rate to " + job_subject(id));
        const Request& r = inst.job(id);
        load[r.src] += rate;
        load[r.dst] += rate;
    }
    for (const auto& [node, amount] : load)
        if (amount > speed * inst.degree(node))
            throw std::logic_error("scheduler exceeded capacity at node " + std::string(node));
}

}  // namespace

SimulationResult simulate(const Instance& inst, const StepFunction& step, const Rational& speed) {
    if (speed <= 0) throw InputError("speed must be positive", "speed");

    const std::size_t n = inst.size();
    SystemState state;
    state.remaining.reserve(n);
    for (const auto& r : inst.requests) state.remaining.emplace_back(r.size);

    std::vector<JobId> by_release(n);
    std::iota(by_release.begin(), by_release.end(), JobId{0});
    std::stable_sort(by_release.begin(), by_release.end(),
                     [&](JobId a, JobId b) { return inst.job(a).release < inst.job(b).release; });

    Schedule schedule;
    schedule.speed = speed;
    const Slot guard = horizon_guard(inst, speed);
    std::size_t released = 0;
    std::size_t finished = 0;
    std::vector<JobId> alive;

    for (Slot t = 0; finished < n; ++t) {
        if (t > guard) throw std::logic_error("simulation exceeded its horizon guard");
        while (released < n && inst.job(by_release[released]).release <= t) {
            alive.push_back(by_release[released]);
            ++released;
        }
        if (alive.empty()) {
            t = inst.job(by_release[released]).release - 1;
            continue;
        }
        std::sort(alive.begin(), alive.end());
        state.slot = t;
        state.alive = alive;

        SlotAssignment a = step(state, inst, speed);
        check_step(inst, state, a, speed);
        for (const auto& [id, rate] : a.rates) {
            state.remaining[id] -= rate;
            if (state.remaining[id] == 0) {
                alive.erase(std::find(alive.begin(), alive.end(), id));
                ++finished;
            }
        }
        if (!a.rates.empty()) schedule.slots.push_back(std::move(a));
    }

    Metrics metrics = compute_metrics(inst, schedule);
    return {std::move(schedule), std::move(metrics)};
}

std::string ScheduleViolation::message() const {
    switch (kind) {
        case Kind::capacity:
            return "capacity exceeded at (" + subject + "," + std::to_string(slot) + ") by " + format_rational(amount);
        case Kind::before_release:
            return "processed before release: " + subject + " at slot " + std::to_string(slot);
        case Kind::over_processing:
            return "over-processed: " + subject + " exceeds its size by " + format_rational(amount) + " at slot " +
                   std::to_string(slot);
        case Kind::incomplete:
            return "incomplete: " + subject + " misses " + format_rational(amount) + " units";
        case Kind::unknown_job:
            return "unknown job: " + subject + " at slot " + std::to_string(slot);
        case Kind::slot_order:
            return "slot indices not strictly increasing at slot " + std::to_string(slot);
    }
    return {};
}

FeasibilityReport verify_schedule(const Instance& inst, const Schedule& sched) {
    using Kind = ScheduleViolation::Kind;
    FeasibilityReport report;
    std::vector<Rational> done(inst.size(), Rational{0});
    std::vector<bool> over_reported(inst.size(), false);
    std::optional<Slot> previous;

    for (const auto& a : sched.slots) {
        if (previous && a.slot <= *previous) report.push_back({Kind::slot_order, "schedule", a.slot, 0});
        previous = a.slot;

        std::map<std::string_view, Rational> load;
        for (const auto& [id, rate] : a.rates) {
            if (!known_job(inst, id)) {
                report.push_back({Kind::unknown_job, job_subject(id), a.slot, rate});
                continue;
            }
            const Request& r = inst.job(id);
            if (a.slot < r.release) report.push_back({Kind::before_release, job_subject(id), a.slot, rate});
            load[r.src] += rate;
            load[r.dst] += rate;
            done[id] += rate;
            if (done[id] > r.size && !over_reported[id]) {
                report.push_back({Kind::over_processing, job_subject(id), a.slot, done[id] - r.size});
                over_reported[id] = true;
            }
        }
        // Iterate nodes in instance order so reports are deterministic.
        for (const auto& node : inst.nodes) {
            auto it = load.find(node.id);
            if (it == load.end()) continue;
            const Rational cap = sched.speed * node.degree_bound;
            if (it->second > cap) report.push_back({Kind::capacity, node.id, a.slot, it->second - cap});
        }
    }
    for (const auto& r : inst.requests)
        if (done[r.id] < r.size) report.push_back({Kind::incomplete, job_subject(r.id), 0, r.size - done[r.id]});
    return report;
}

Metrics compute_metrics(const Instance& inst, const Schedule& sched) {
    const std::size_t n = inst.size();
    std::vector<std::vector<std::pair<Slot, Rational>>> events(n);
    for (const auto& a : sched.slots) {
        for (const auto& [id, rate] : a.rates) {
            if (!known_job(inst, id)) throw InputError("schedule references " + job_subject(id));
            events[id].emplace_back(a.slot, rate);
        }
    }

    Metrics m;
    m.completion.assign(n, 0);
    for (const auto& r : inst.requests) {
        auto& ev = events[r.id];
        std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

        // Σ_{t=r}^{C-1} ℓ_i(t), accumulated piecewise between processing slots.
        Rational left(r.size);
        Rational remaining_sum{0};
        Slot from = r.release;
        std::optional<Slot> finish;
        for (const auto& [slot, rate] : ev) {
            remaining_sum += left * (slot - from + 1);
            left -= rate;
            from = slot + 1;
            if (left <= 0) {
                finish = slot;
                break;
            }
        }
        if (!finish) throw InputError(job_subject(r.id) + " is incomplete in the schedule");

        const Slot c = *finish + 1;
        m.completion[r.id] = c;
        m.weighted_flow += r.weight * (c - r.release);
        m.weighted_completion += r.weight * c;
        m.fractional_flow += r.weight * remaining_sum / r.size;
        m.makespan = std::max(m.makespan, c);
    }
    return m;
}

Json metrics_to_json(const Instance& inst, const Metrics& m) {
    Json per_job = Json::array();
    for (const auto& r : inst.requests)
        per_job.push_back(Json{{"id", r.id}, {"completion", m.completion[r.id]}, {"flow", m.flow(inst, r.id)}});
    return Json{{"weighted_flow", format_rational(m.weighted_flow)},
                {"fractional_flow", format_rational(m.fractional_flow)},
                {"weighted_completion", format_rational(m.weighted_completion)},
                {"makespan", m.makespan},
                {"per_job", std::move(per_job)}};
}

Json feasibility_to_json(const FeasibilityReport& report) {
    Json violations = Json::array();
    for (const auto& v : report) violations.push_back(v.message());
    return Json{{"feasible", report.empty()}, {"violations", std::move(violations)}};
}

}  // namespace rsched
