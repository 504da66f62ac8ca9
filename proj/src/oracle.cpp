#include "rsched/oracle.hpp"

#include <algorithm>
#include <map>

namespace rsched {

std::string_view objective_name(Objective o) { return o == Objective::weighted_flow ? "wflow" : "wcompletion"; }

std::optional<Objective> parse_objective(std::string_view name) {
    if (name == "wflow") return Objective::weighted_flow;
    if (name == "wcompletion") return Objective::weighted_completion;
    return std::nullopt;
}

namespace {

using Mask = std::uint32_t;

class Search {
public:
    Search(const Instance& inst, Objective objective, Slot horizon)
        : inst_(inst), objective_(objective), horizon_(horizon), all_((Mask{1} << inst.size()) - 1) {
        for (const auto& r : inst.requests) {
            src_.push_back(node_index(r.src));
            dst_.push_back(node_index(r.dst));
        }
    }

    std::optional<Rational> solve(Slot t, Mask done) {
        if (done == all_) return Rational{0};
        if (t >= horizon_) return std::nullopt;
        const auto key = std::make_pair(t, done);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second.cost;

        std::vector<JobId> alive;
        Slot next_release = horizon_;
        for (const auto& r : inst_.requests) {
            if (done & bit(r.id)) continue;
            if (r.release <= t) alive.push_back(r.id);
            else next_release = std::min(next_release, r.release);
        }

        Entry best;
        if (alive.empty()) {
            best.cost = solve(next_release, done);
            best.next_slot = next_release;
        } else {
            std::vector<Mask> choices;
            std::vector<std::int64_t> load(inst_.nodes.size(), 0);
            enumerate_maximal(alive, 0, 0, load, choices);
            for (const Mask chosen : choices) {
                auto rest = solve(t + 1, done | chosen);
                if (!rest) continue;
                Rational total = *rest + slot_cost(t, chosen);
                if (!best.cost || total < *best.cost) {
                    best.cost = std::move(total);
                    best.chosen = chosen;
                }
            }
            best.next_slot = t + 1;
        }
        memo_[key] = best;
        return best.cost;
    }

    Schedule witness(Slot t, Mask done) const {
        Schedule out;
        while (done != all_) {
            const Entry& e = memo_.at({t, done});
            if (e.chosen != 0) {
                SlotAssignment a;
                a.slot = t;
                for (const auto& r : inst_.requests)
                    if (e.chosen & bit(r.id)) a.rates.emplace(r.id, Rational{1});
                out.slots.push_back(std::move(a));
            }
            done |= e.chosen;
            t = e.next_slot;
        }
        return out;
    }

private:
    struct Entry {
        std::optional<Rational> cost;
        Mask chosen = 0;
        Slot next_slot = 0;
    };

    static Mask bit(JobId id) { return Mask{1} << id; }

    std::size_t node_index(const std::string& id) const {
        for (std::size_t k = 0; k < inst_.nodes.size(); ++k)
            if (inst_.nodes[k].id == id) return k;
        throw InputError("unknown node '" + id + "'");
    }

    bool fits(JobId id, const std::vector<std::int64_t>& load) const {
        return load[src_[id]] < inst_.nodes[src_[id]].degree_bound &&
               load[dst_[id]] < inst_.nodes[dst_[id]].degree_bound;
    }

    void enumerate_maximal(const std::vector<JobId>& alive, std::size_t pos, Mask chosen,
                           std::vector<std::int64_t>& load, std::vector<Mask>& out) const {
        if (pos == alive.size()) {
            for (const JobId id : alive)
                if (!(chosen & bit(id)) && fits(id, load)) return;
            out.push_back(chosen);
            return;
        }
        const JobId id = alive[pos];
        if (fits(id, load)) {
            ++load[src_[id]];
            ++load[dst_[id]];
            enumerate_maximal(alive, pos + 1, chosen | bit(id), load, out);
            --load[src_[id]];
            --load[dst_[id]];
        }
        enumerate_maximal(alive, pos + 1, chosen, load, out);
    }

    Rational slot_cost(Slot t, Mask chosen) const {
        Rational cost{0};
        for (const auto& r : inst_.requests) {
            if (!(chosen & bit(r.id))) continue;
            const Slot completion = t + 1;
            cost += r.weight * (objective_ == Objective::weighted_flow ? completion - r.release : completion);
        }
        return cost;
    }

    const Instance& inst_;
    Objective objective_;
    Slot horizon_;
    Mask all_;
    std::vector<std::size_t> src_;
    std::vector<std::size_t> dst_;
    std::map<std::pair<Slot, Mask>, Entry> memo_;
};

}  // namespace

OracleResult brute_force_opt(const Instance& inst, Objective objective, std::optional<Slot> horizon,
                             std::size_t job_cap) {
    if (!inst.is_unit_size()) throw InputError("oracle requires unit-size jobs");
    if (inst.size() > job_cap || inst.size() > 30)
        throw InputError("instance has " + std::to_string(inst.size()) + " jobs, oracle cap is " +
                         std::to_string(job_cap) + "; use a smaller instance");

    Slot first_release = 0;
    Slot max_release = 0;
    if (!inst.requests.empty()) {
        first_release = inst.requests.front().release;
        for (const auto& r : inst.requests) {
            first_release = std::min(first_release, r.release);
            max_release = std::max(max_release, r.release);
        }
    }
    const Slot limit = horizon.value_or(max_release + static_cast<Slot>(inst.size()));

    Search search(inst, objective, limit);
    auto cost = search.solve(first_release, 0);
    if (!cost) throw InputError("no schedule completes within horizon " + std::to_string(limit), "horizon");
    OracleResult out{*cost, search.witness(first_release, 0)};
    out.witness.speed = 1;
    return out;
}

Schedule explicit_lb_opt_schedule(std::int64_t L, LbVariant variant) {
    const auto root = exact_sqrt(L);
    if (!root || L < 4) throw InputError("L must be a perfect square >= 4 (got " + std::to_string(L) + ")", "L");
    const std::int64_t q = *root;

    // Ids follow gen_lower_bound: group A = [0,q) on (v1,v2), group B = [q,2q)
    // on (v3,v2), late jobs [2q, 2q+L) released at q+1 .. q+L.
    // t1: late jobs conflict with B at v3, so B goes first. t2: symmetric with A.
    const JobId first_group = variant == LbVariant::t1 ? q : 0;
    const JobId second_group = variant == LbVariant::t1 ? 0 : q;
    const JobId late = 2 * q;

    Schedule sched;
    sched.speed = 1;
    for (std::int64_t k = 0; k < q; ++k) sched.slots.push_back({1 + k, {{first_group + k, Rational{1}}}});
    for (std::int64_t k = 0; k < L; ++k) {
        SlotAssignment a;
        a.slot = q + 1 + k;
        if (k < q) a.rates.emplace(second_group + k, Rational{1});
        a.rates.emplace(late + k, Rational{1});
        sched.slots.push_back(std::move(a));
    }
    return sched;
}

}  // namespace rsched
