#include "rsched/experiments.hpp"

#include <sstream>

namespace rsched {

namespace {

Metrics verified_metrics(const Instance& inst, const Schedule& sched) {
    const FeasibilityReport report = verify_schedule(inst, sched);
    if (!report.empty()) throw std::logic_error("infeasible schedule in experiment: " + report.front().message());
    return compute_metrics(inst, sched);
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::vector<LbSweepRow> lb_sweep(std::span<const std::int64_t> Ls, Policy policy) {
    std::vector<LbSweepRow> rows;
    for (const std::int64_t L : Ls) {
        const std::int64_t q = exact_sqrt(L).value_or(0);
        const Rational backlog_floor = Rational(L * q, 2);

        LbSweepRow worst;
        for (const LbVariant v : {LbVariant::t1, LbVariant::t2}) {
            const Instance inst = gen_lower_bound(L, v);
            const SimulationResult run = simulate(inst, policy, Rational{1});
            const Metrics alg = verified_metrics(inst, run.schedule);
            const Metrics opt = verified_metrics(inst, explicit_lb_opt_schedule(L, v));

            LbSweepRow row;
            row.L = L;
            row.variant = std::string(variant_name(v));
            row.algo = policy;
            row.n_jobs = inst.size();
            row.weighted_flow = alg.weighted_flow;
            row.opt_bound = opt.weighted_flow;
            row.ratio = row.weighted_flow / row.opt_bound;
            row.check_backlog = row.weighted_flow >= backlog_floor;
            row.check_opt_ub = row.opt_bound <= 4 * L;
            if (worst.variant.empty() || row.weighted_flow > worst.weighted_flow) worst = row;
            rows.push_back(std::move(row));
        }
        worst.variant = "max";
        rows.push_back(std::move(worst));
    }
    return rows;
}

std::string lb_sweep_csv(std::span<const LbSweepRow> rows) {
    std::ostringstream out;
    out << "L,variant,algo,speed,n_jobs,weighted_flow,opt_bound,ratio,check_backlog,check_opt_ub\n";
    for (const auto& r : rows) {
        out << r.L << ',' << r.variant << ',' << policy_name(r.algo) << ',' << format_rational(r.speed) << ','
            << r.n_jobs << ',' << format_rational(r.weighted_flow) << ',' << format_rational(r.opt_bound) << ','
            << format_rational(r.ratio) << ',' << yes_no(r.check_backlog) << ',' << yes_no(r.check_opt_ub) << '\n';
    }
    return out.str();
}

std::vector<CompetitiveRow> competitive_check(std::span<const NamedInstance> corpus, const Rational& speed,
                                              const Rational& epsilon, std::size_t job_cap) {
    if (epsilon <= 0) throw InputError("epsilon must be positive", "epsilon");
    std::vector<CompetitiveRow> rows;
    for (const auto& [name, inst] : corpus) {
        CompetitiveRow row;
        row.instance = name;
        row.speed = speed;
        row.bound_factor = (2 * epsilon + 4) / epsilon;
        const SimulationResult run = simulate(inst, Policy::hdf, speed);
        row.alg_cost = verified_metrics(inst, run.schedule).weighted_flow;
        if (inst.is_unit_size() && inst.size() <= job_cap) {
            const OracleResult opt = brute_force_opt(inst, Objective::weighted_flow, std::nullopt, job_cap);
            row.opt_cost = opt.cost;
            row.within_bound = row.alg_cost <= row.bound_factor * opt.cost;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string competitive_csv(std::span<const CompetitiveRow> rows) {
    std::ostringstream out;
    out << "instance,algo,speed,alg_cost,opt_cost,bound_factor,within_bound\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << policy_name(r.algo) << ',' << format_rational(r.speed) << ','
            << format_rational(r.alg_cost) << ',' << (r.opt_cost ? format_rational(*r.opt_cost) : "skipped") << ','
            << format_rational(r.bound_factor) << ','
            << (r.within_bound ? yes_no(*r.within_bound) : "skipped") << '\n';
    }
    return out.str();
}

}  // namespace rsched
