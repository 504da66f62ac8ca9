#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "rsched/oracle.hpp"
#include "rsched/schedulers.hpp"

using namespace rsched;
using rsched::testing::make_instance;
using rsched::testing::q;

namespace {

// Plain DP over every degree-feasible subset (not only maximal ones), no
// idle-stretch skipping. Cost counts each job from its release.
class AllSubsets {
public:
    AllSubsets(const Instance& inst, Objective obj) : inst_(inst), obj_(obj) {
        for (const auto& r : inst.requests) horizon_ = std::max(horizon_, r.release);
        horizon_ += static_cast<Slot>(inst.size()) + 1;
    }

    Rational solve() { return best(0, 0); }

private:
    Rational best(Slot t, unsigned done) {
        const unsigned all = (1u << inst_.size()) - 1;
        if (done == all) return 0;
        if (t > horizon_) return Rational(1000000);
        const auto key = std::pair(t, done);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        unsigned alive = 0;
        for (const auto& r : inst_.requests)
            if (!(done >> r.id & 1) && r.release <= t) alive |= 1u << r.id;

        Rational out{-1};
        for (unsigned sub = alive;; sub = (sub - 1) & alive) {
            if (feasible(sub)) {
                Rational here{0};
                for (const auto& r : inst_.requests) {
                    if (!(sub >> r.id & 1)) continue;
                    const Slot c = t + 1;
                    here += r.weight * (obj_ == Objective::weighted_flow ? c - r.release : c);
                }
                const Rational total = here + best(t + 1, done | sub);
                if (out < 0 || total < out) out = total;
            }
            if (sub == 0) break;
        }
        memo_[key] = out;
        return out;
    }

    bool feasible(unsigned sub) const {
        std::map<std::string, std::int64_t> used;
        for (const auto& r : inst_.requests) {
            if (!(sub >> r.id & 1)) continue;
            if (++used[r.src] > inst_.degree(r.src)) return false;
            if (++used[r.dst] > inst_.degree(r.dst)) return false;
        }
        return true;
    }

    const Instance& inst_;
    Objective obj_;
    Slot horizon_ = 0;
    std::map<std::pair<Slot, unsigned>, Rational> memo_;
};

RandomSpec small_spec(std::uint64_t seed, std::int64_t jobs) {
    return {.nodes = 2 + static_cast<std::int64_t>(seed % 4), .degree_max = 2, .jobs = jobs, .size_max = 1,
            .weight_max = 6, .release_window = 4, .seed = seed};
}

}  // namespace

TEST_CASE("tiny optima") {
    const Instance one = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 1, 5, q(3)}});
    CHECK(brute_force_opt(one, Objective::weighted_flow).cost == 3);
    CHECK(brute_force_opt(one, Objective::weighted_completion).cost == 18);

    const Instance pair = make_instance({{"a", 1}, {"b", 1}, {"c", 1}}, {{"a", "b", 1, 0}, {"b", "c", 1, 0}});
    CHECK(brute_force_opt(pair, Objective::weighted_flow).cost == 3);

    const Instance weighted = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 1, 0, q(1)}, {"a", "b", 1, 0, q(5)}});
    CHECK(brute_force_opt(weighted, Objective::weighted_completion).cost == 7);
    CHECK(brute_force_opt(weighted, Objective::weighted_flow).cost == 7);
}

TEST_CASE("optimum of the smallest lower-bound instances") {
    for (const LbVariant v : {LbVariant::t1, LbVariant::t2}) {
        const Instance inst = gen_lower_bound(4, v);
        const OracleResult res = brute_force_opt(inst, Objective::weighted_flow);
        CHECK(res.cost == 14);
        CHECK(verify_schedule(inst, res.witness).empty());
        CHECK(compute_metrics(inst, res.witness).weighted_flow == 14);
    }
}

TEST_CASE("maximal-set search agrees with all-subset DP") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
        const Instance inst = gen_random(small_spec(seed, 1 + static_cast<std::int64_t>(seed % 5)));
        for (const Objective obj : {Objective::weighted_flow, Objective::weighted_completion}) {
            const OracleResult res = brute_force_opt(inst, obj);
            CHECK(res.cost == AllSubsets(inst, obj).solve());
            REQUIRE(verify_schedule(inst, res.witness).empty());
            const Metrics m = compute_metrics(inst, res.witness);
            CHECK(res.cost == (obj == Objective::weighted_flow ? m.weighted_flow : m.weighted_completion));
        }
    }
}

TEST_CASE("optimum never exceeds either policy at speed 1") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const Instance inst = gen_random(small_spec(seed, 1 + static_cast<std::int64_t>(seed % 8)));
        const Rational opt = brute_force_opt(inst, Objective::weighted_flow).cost;
        for (const Policy p : {Policy::release_greedy, Policy::hdf})
            CHECK(opt <= simulate(inst, p, q(1)).metrics.weighted_flow);
    }
}

TEST_CASE("explicit schedule for the lower-bound family") {
    for (const std::int64_t L : {4, 16, 64, 256}) {
        const std::int64_t root = *exact_sqrt(L);
        for (const LbVariant v : {LbVariant::t1, LbVariant::t2}) {
            const Instance inst = gen_lower_bound(L, v);
            const Schedule s = explicit_lb_opt_schedule(L, v);
            REQUIRE(verify_schedule(inst, s).empty());
            const Rational cost = compute_metrics(inst, s).weighted_flow;
            CHECK(cost == 3 * L + root);
            CHECK(cost <= 4 * L);
        }
    }
    CHECK_THROWS_AS(explicit_lb_opt_schedule(8, LbVariant::t1), InputError);
}

TEST_CASE("oracle preconditions") {
    const Instance big = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 2, 0}});
    CHECK_THROWS_WITH_AS(brute_force_opt(big, Objective::weighted_flow), "oracle requires unit-size jobs", InputError);

    const Instance many = gen_random({.nodes = 4, .jobs = 9, .seed = 1});
    CHECK_THROWS_AS(brute_force_opt(many, Objective::weighted_flow), InputError);
    CHECK_NOTHROW(brute_force_opt(many, Objective::weighted_flow, std::nullopt, 9));

    const Instance two = make_instance({{"a", 1}, {"b", 1}}, {{"a", "b", 1, 0}, {"a", "b", 1, 0}});
    CHECK_THROWS_AS(brute_force_opt(two, Objective::weighted_flow, 1), InputError);
    CHECK(brute_force_opt(two, Objective::weighted_flow, 2).cost == 3);
}

TEST_CASE("objective names") {
    CHECK(parse_objective("wflow") == Objective::weighted_flow);
    CHECK(parse_objective("wcompletion") == Objective::weighted_completion);
    CHECK_FALSE(parse_objective("makespan").has_value());
    CHECK(objective_name(Objective::weighted_flow) == "wflow");
}
