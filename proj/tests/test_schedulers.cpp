#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "rsched/generators.hpp"
#include "rsched/schedulers.hpp"

using namespace rsched;
using rsched::testing::make_instance;
using rsched::testing::q;

namespace {

SystemState state_of(const Instance& inst, Slot t, std::vector<JobId> alive) {
    SystemState st;
    st.slot = t;
    for (const auto& r : inst.requests) st.remaining.emplace_back(r.size);
    st.alive = std::move(alive);
    return st;
}

struct Recorded {
    SystemState state;
    SlotAssignment assignment;
};

std::vector<Recorded> record(const Instance& inst, Policy p, const Rational& speed) {
    std::vector<Recorded> out;
    const StepFunction inner = step_function(p);
    const StepFunction spy = [&](const SystemState& st, const Instance& i, const Rational& s) {
        SlotAssignment a = inner(st, i, s);
        out.push_back({st, a});
        return a;
    };
    simulate(inst, spy, speed);
    return out;
}

std::map<std::string, Rational> node_load(const Instance& inst, const SlotAssignment& a, std::span<const JobId> only) {
    std::map<std::string, Rational> load;
    for (const JobId id : only) {
        auto it = a.rates.find(id);
        if (it == a.rates.end()) continue;
        load[inst.job(id).src] += it->second;
        load[inst.job(id).dst] += it->second;
    }
    return load;
}

std::vector<JobId> release_order(const Instance& inst, std::vector<JobId> alive) {
    std::sort(alive.begin(), alive.end(), [&](JobId a, JobId b) {
        return std::pair(inst.job(a).release, a) < std::pair(inst.job(b).release, b);
    });
    return alive;
}

RandomSpec spec_for(std::uint64_t seed, std::int64_t size_max) {
    return {.nodes = 2 + static_cast<std::int64_t>(seed % 7), .degree_max = 3, .jobs = 1 + static_cast<std::int64_t>(seed % 20),
            .size_max = size_max, .weight_max = 8, .release_window = 10, .seed = seed};
}

}  // namespace

TEST_CASE("release-greedy blocks a job at a used endpoint") {
    const Instance inst = make_instance({{"v1", 1}, {"v2", 1}, {"v3", 1}, {"v4", 1}},
                                        {{"v1", "v2", 1, 0}, {"v2", "v3", 1, 0}, {"v3", "v4", 1, 1}});
    const SlotAssignment a = release_greedy_step(state_of(inst, 1, {0, 1, 2}), inst, q(1));
    CHECK(a.slot == 1);
    CHECK(a.rates == std::map<JobId, Rational>{{0, q(1)}, {2, q(1)}});
}

TEST_CASE("empty alive set gives an empty assignment") {
    const Instance inst = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 1, 0}});
    CHECK(release_greedy_step(state_of(inst, 3, {}), inst, q(1)).rates.empty());
    CHECK(hdf_step(state_of(inst, 3, {}), inst, q(1)).rates.empty());
}

TEST_CASE("rate is capped by remaining size") {
    const Instance inst = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 1, 0}});
    CHECK(release_greedy_step(state_of(inst, 0, {0}), inst, q(2)).rates.at(0) == 1);
}

TEST_CASE("HDF serves heavier jobs first") {
    const Instance inst = make_instance({{"a", 1}, {"b", 2}, {"c", 1}},
                                        {{"a", "b", 1, 0, q(5)}, {"b", "c", 1, 0, q(3)}, {"a", "b", 1, 0, q(2)}});
    const SlotAssignment a = hdf_step(state_of(inst, 0, {0, 1, 2}), inst, q(1));
    CHECK(a.rates == std::map<JobId, Rational>{{0, q(1)}, {1, q(1)}});

    // release-greedy ignores weights: job 2 is blocked only by job 0 at a
    const SlotAssignment g = release_greedy_step(state_of(inst, 0, {0, 1, 2}), inst, q(1));
    CHECK(g.rates == std::map<JobId, Rational>{{0, q(1)}, {1, q(1)}});
}

TEST_CASE("HDF ranks by density, not weight") {
    // job 0: w=4, l=4 (density 1); job 1: w=3, l=1 (density 3)
    const Instance inst = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 4, 0, q(4)}, {"a", "b", 1, 0, q(3)}});
    const SlotAssignment a = hdf_step(state_of(inst, 0, {0, 1}), inst, q(1));
    CHECK(a.rates == std::map<JobId, Rational>{{1, q(1)}});
}

TEST_CASE("single alive job: both policies agree") {
    const Instance inst = make_instance({{"a", 3}, {"b", 2}}, {{"a", "b", 7, 0, q(5, 3)}});
    const auto st = state_of(inst, 0, {0});
    for (const Rational& s : {q(1), q(5, 2)})
        CHECK(hdf_step(st, inst, s) == release_greedy_step(st, inst, s));
}

TEST_CASE("unit-size HDF order is weight order") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Instance inst = gen_random(spec_for(seed, 1));
        for (const auto& rec : record(inst, Policy::hdf, q(1))) {
            // Replaying the order "weight desc, release, id" must reproduce HDF.
            std::vector<JobId> order = rec.state.alive;
            std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
                const auto& ja = inst.job(a);
                const auto& jb = inst.job(b);
                if (ja.weight != jb.weight) return ja.weight > jb.weight;
                return std::pair(ja.release, a) < std::pair(jb.release, b);
            });
            CHECK(saturate_in_order(order, rec.state, inst, q(1)) == rec.assignment);
        }
    }
}

TEST_CASE("policy invariants on random instances") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        for (const std::int64_t size_max : {1, 4}) {
            const Instance inst = gen_random(spec_for(seed, size_max));
            for (const Policy p : {Policy::release_greedy, Policy::hdf}) {
                for (const Rational& speed : {q(1), q(5, 2), q(3)}) {
                    const auto recorded = record(inst, p, speed);
                    for (const auto& [state, a] : recorded) {
                        // determinism
                        CHECK(step_function(p)(state, inst, speed) == a);

                        // maximality: every alive job is finished or touches a saturated node
                        const auto load = node_load(inst, a, state.alive);
                        auto saturated = [&](const std::string& v) {
                            auto it = load.find(v);
                            return it != load.end() && it->second == speed * inst.degree(v);
                        };
                        for (const JobId id : state.alive) {
                            auto it = a.rates.find(id);
                            const Rational rate = it == a.rates.end() ? Rational{0} : it->second;
                            const auto& r = inst.job(id);
                            CHECK((rate == state.remaining[id] || saturated(r.src) || saturated(r.dst)));
                        }
                        if (!state.alive.empty()) CHECK(!a.rates.empty());
                    }
                }
            }
        }
    }
}

TEST_CASE("release-greedy: a starved job is blocked by strictly earlier jobs") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const Instance inst = gen_random(spec_for(seed, 1));
        for (const Rational& speed : {q(1), q(2)}) {
            for (const auto& [state, a] : record(inst, Policy::release_greedy, speed)) {
                const auto order = release_order(inst, state.alive);
                for (std::size_t k = 0; k < order.size(); ++k) {
                    if (a.rates.contains(order[k])) continue;
                    const auto earlier = node_load(inst, a, std::span(order).first(k));
                    const auto& r = inst.job(order[k]);
                    auto full = [&](const std::string& v) {
                        auto it = earlier.find(v);
                        return it != earlier.end() && it->second >= speed * inst.degree(v);
                    };
                    CHECK((full(r.src) || full(r.dst)));
                }
            }
        }
    }
}

TEST_CASE("policy names") {
    CHECK(parse_policy("hdf") == Policy::hdf);
    CHECK(parse_policy("release-greedy") == Policy::release_greedy);
    CHECK_FALSE(parse_policy("srpt").has_value());
    CHECK(policy_name(Policy::release_greedy) == "release-greedy");
}
