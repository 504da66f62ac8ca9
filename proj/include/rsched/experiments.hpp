#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsched/generators.hpp"
#include "rsched/oracle.hpp"
#include "rsched/schedulers.hpp"

namespace rsched {

/// One lower-bound row. `variant` is "t1", "t2", or "max" (the worse of the
/// two for this policy, which is what the backlog argument bounds).
struct LbSweepRow {
    std::int64_t L = 0;
    std::string variant;
    Policy algo = Policy::hdf;
    Rational speed{1};
    std::size_t n_jobs = 0;
    Rational weighted_flow{0};
    Rational opt_bound{0};  // weighted flow of explicit_lb_opt_schedule
    Rational ratio{0};
    bool check_backlog = false;  // weighted_flow >= L * sqrt(L) / 2
    bool check_opt_ub = false;   // opt_bound <= 4L
};

std::vector<LbSweepRow> lb_sweep(std::span<const std::int64_t> Ls, Policy policy);
std::string lb_sweep_csv(std::span<const LbSweepRow> rows);

struct NamedInstance {
    std::string name;
    Instance instance;
};

struct CompetitiveRow {
    std::string instance;
    Policy algo = Policy::hdf;
    Rational speed{3};
    Rational alg_cost{0};
    std::optional<Rational> opt_cost;  // empty when the instance was skipped
    Rational bound_factor{0};          // (2 eps + 4) / eps
    std::optional<bool> within_bound;
};

/// HDF at `speed` against the brute-force optimum. Instances that are not
/// unit-size or exceed `job_cap` are marked skipped.
std::vector<CompetitiveRow> competitive_check(std::span<const NamedInstance> corpus, const Rational& speed,
                                              const Rational& epsilon, std::size_t job_cap = kDefaultOracleJobCap);
std::string competitive_csv(std::span<const CompetitiveRow> rows);

}  // namespace rsched
