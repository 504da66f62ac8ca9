#include "rsched/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rsched/dualfit.hpp"
#include "rsched/experiments.hpp"
#include "rsched/transforms.hpp"

namespace rsched {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot write '" + path + "'");
    file << text;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Rational positive_speed(const std::string& text) {
    const Rational s = parse_rational(text);
    if (s <= 0) throw InputError("speed must be positive", "speed");
    return s;
}

Policy require_policy(const std::string& name) {
    if (auto p = parse_policy(name)) return *p;
    throw InputError("unknown algorithm '" + name + "' (expected release-greedy or hdf)", "algo");
}

LbVariant require_variant(const std::string& name) {
    if (auto v = parse_variant(name)) return *v;
    throw InputError("unknown variant '" + name + "' (expected t1 or t2)", "variant");
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Online scheduling of degree-constrained reconfigurable topologies", "rsched"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate instances");
    gen->require_subcommand(1);
    std::string out_path;

    auto* gen_lb = gen->add_subcommand("lb", "Lower-bound family instance");
    std::int64_t lb_L = 0;
    std::string lb_variant = "t1";
    gen_lb->add_option("--L", lb_L, "Perfect square >= 4")->required();
    gen_lb->add_option("--variant", lb_variant, "t1 or t2");
    gen_lb->add_option("-o,--output", out_path);

    auto* gen_rand = gen->add_subcommand("random", "Seeded random instance");
    RandomSpec rspec;
    rspec.release_window = 10;
    gen_rand->add_option("--nodes", rspec.nodes)->required();
    gen_rand->add_option("--jobs", rspec.jobs)->required();
    gen_rand->add_option("--max-degree", rspec.degree_max);
    gen_rand->add_option("--max-size", rspec.size_max);
    gen_rand->add_option("--max-weight", rspec.weight_max);
    gen_rand->add_option("--window", rspec.release_window);
    gen_rand->add_option("--seed", rspec.seed);
    gen_rand->add_option("-o,--output", out_path);

    // run
    auto* run = app.add_subcommand("run", "Simulate a policy and print metrics");
    std::string instance_path;
    std::string schedule_path;
    std::string algo = "hdf";
    std::string speed_text = "1";
    std::string emit_schedule;
    std::string emit_trace;
    run->add_option("--instance", instance_path)->required();
    run->add_option("--algo", algo, "release-greedy or hdf");
    run->add_option("--speed", speed_text, "Rational p/q");
    run->add_option("--emit-schedule", emit_schedule, "Write the schedule JSON here");
    run->add_option("--emit-trace", emit_trace, "Write the alive-set trace JSON here");

    // verify
    auto* verify = app.add_subcommand("verify", "Check schedules and dual certificates");
    verify->require_subcommand(1);
    auto* verify_sched = verify->add_subcommand("schedule", "Check feasibility of a schedule");
    verify_sched->add_option("--instance", instance_path)->required();
    verify_sched->add_option("--schedule", schedule_path)->required();

    auto* verify_dual = verify->add_subcommand("dual", "Build and check the dual solution of a run");
    std::string mode_text = "general";
    std::string dual_speed;
    std::optional<Slot> horizon;
    verify_dual->add_option("--instance", instance_path)->required();
    verify_dual->add_option("--schedule", schedule_path)->required();
    verify_dual->add_option("--speed", dual_speed, "Must match the schedule's speed if given");
    verify_dual->add_option("--mode", mode_text, "simple or general");
    verify_dual->add_option("--horizon", horizon, "Last slot to check (default: automatic)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "Brute-force optimum for small unit-size instances");
    std::string objective_text = "wflow";
    std::size_t max_jobs = kDefaultOracleJobCap;
    std::optional<Slot> oracle_horizon;
    oracle->add_option("--instance", instance_path)->required();
    oracle->add_option("--objective", objective_text, "wflow or wcompletion");
    oracle->add_option("--max-jobs", max_jobs);
    oracle->add_option("--horizon", oracle_horizon);

    // transform
    auto* transform = app.add_subcommand("transform", "Analysis transforms");
    transform->require_subcommand(1);
    auto* tr_unit = transform->add_subcommand("unit", "Split jobs into unit-size fragments");
    std::string mapping_path;
    tr_unit->add_option("--instance", instance_path)->required();
    tr_unit->add_option("-o,--output", out_path);
    tr_unit->add_option("--mapping", mapping_path, "Write original id -> fragment ids here");
    auto* tr_stretch = transform->add_subcommand("stretch", "Stretch a sped-up schedule to speed 1");
    std::int64_t factor = 0;
    tr_stretch->add_option("--schedule", schedule_path)->required();
    tr_stretch->add_option("--factor", factor)->required();
    tr_stretch->add_option("-o,--output", out_path);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "Batch experiments emitting CSV");
    experiment->require_subcommand(1);
    auto* ex_lb = experiment->add_subcommand("lb-sweep", "Lower-bound separation sweep");
    std::vector<std::int64_t> Ls;
    ex_lb->add_option("--L", Ls, "Comma-separated perfect squares")->delimiter(',');
    ex_lb->add_option("--algo", algo);
    ex_lb->add_option("-o,--output", out_path);
    auto* ex_comp = experiment->add_subcommand("competitive", "HDF vs brute-force optimum");
    std::vector<std::string> corpus_paths;
    std::size_t random_count = 0;
    std::uint64_t corpus_seed = 1;
    std::string epsilon_text = "1";
    speed_text = "";
    ex_comp->add_option("--instance", corpus_paths, "Instance files (repeatable)");
    ex_comp->add_option("--random", random_count, "Also generate this many unit instances (4 nodes, d=1, <= 7 jobs)");
    ex_comp->add_option("--seed", corpus_seed);
    ex_comp->add_option("--speed", speed_text, "Default 2 + epsilon");
    ex_comp->add_option("--epsilon", epsilon_text);
    ex_comp->add_option("--max-jobs", max_jobs);
    ex_comp->add_option("-o,--output", out_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (gen_lb->parsed()) {
            emit(dump(instance_to_json(gen_lower_bound(lb_L, require_variant(lb_variant)))), out_path, out);
        } else if (gen_rand->parsed()) {
            emit(dump(instance_to_json(gen_random(rspec))), out_path, out);
        } else if (run->parsed()) {
            const Instance inst = load_instance(instance_path);
            const Rational speed = positive_speed(speed_text.empty() ? "1" : speed_text);
            const SimulationResult result = simulate(inst, require_policy(algo), speed);
            if (!emit_schedule.empty()) emit(dump(schedule_to_json(result.schedule)), emit_schedule, out);
            if (!emit_trace.empty()) emit(dump(trace_to_json(inst, build_trace(inst, result.schedule))), emit_trace, out);
            out << dump(metrics_to_json(inst, result.metrics));
        } else if (verify_sched->parsed()) {
            const Instance inst = load_instance(instance_path);
            const FeasibilityReport report = verify_schedule(inst, parse_schedule(read_file(schedule_path)));
            out << dump(feasibility_to_json(report));
            return report.empty() ? kOk : kCheckFailed;
        } else if (verify_dual->parsed()) {
            const Instance inst = load_instance(instance_path);
            const Schedule sched = parse_schedule(read_file(schedule_path));
            if (!dual_speed.empty() && positive_speed(dual_speed) != sched.speed)
                throw InputError("--speed " + dual_speed + " differs from schedule speed " + format_rational(sched.speed),
                                 "speed");
            const auto mode = parse_mode(mode_text);
            if (!mode) throw InputError("unknown mode '" + mode_text + "' (expected simple or general)", "mode");
            const FeasibilityReport feasibility = verify_schedule(inst, sched);
            if (!feasibility.empty()) throw InputError("schedule is infeasible: " + feasibility.front().message());

            const Trace trace = build_trace(inst, sched);
            const DualSolution dual =
                *mode == DualMode::simple ? build_dual_simple(inst, trace) : build_dual_general(inst, trace);
            const DualFeasibilityReport report = verify_dual_feasibility(dual, inst, horizon);
            Json doc = dual_report_to_json(report);
            doc["bounds"] = bounds_report_to_json(check_dual_bounds(dual, compute_metrics(inst, sched)));
            out << dump(doc);
            return report.feasible() ? kOk : kCheckFailed;
        } else if (oracle->parsed()) {
            const auto objective = parse_objective(objective_text);
            if (!objective) throw InputError("unknown objective '" + objective_text + "'", "objective");
            const OracleResult result =
                brute_force_opt(load_instance(instance_path), *objective, oracle_horizon, max_jobs);
            out << dump(Json{{"objective", objective_text},
                             {"cost", format_rational(result.cost)},
                             {"schedule", schedule_to_json(result.witness)}});
        } else if (tr_unit->parsed()) {
            const UnitReduction reduction = unit_reduction(load_instance(instance_path));
            emit(dump(instance_to_json(reduction.instance)), out_path, out);
            if (!mapping_path.empty()) emit(dump(fragments_to_json(reduction)), mapping_path, out);
        } else if (tr_stretch->parsed()) {
            emit(dump(schedule_to_json(stretch_schedule(parse_schedule(read_file(schedule_path)), factor))), out_path,
                 out);
        } else if (ex_lb->parsed()) {
            emit(lb_sweep_csv(lb_sweep(Ls, require_policy(algo))), out_path, out);
        } else if (ex_comp->parsed()) {
            const Rational epsilon = parse_rational(epsilon_text);
            if (epsilon <= 0) throw InputError("epsilon must be positive", "epsilon");
            const Rational speed = speed_text.empty() ? 2 + epsilon : positive_speed(speed_text);

            std::vector<NamedInstance> corpus;
            for (const auto& path : corpus_paths) corpus.push_back({path, load_instance(path)});
            for (std::size_t k = 0; k < random_count; ++k) {
                RandomSpec spec;
                spec.nodes = 4;
                spec.jobs = 1 + static_cast<std::int64_t>((corpus_seed + k) % 7);
                spec.seed = corpus_seed + k;
                corpus.push_back({"random-" + std::to_string(spec.seed), gen_random(spec)});
            }
            const auto rows = competitive_check(corpus, speed, epsilon, max_jobs);
            emit(competitive_csv(rows), out_path, out);
            for (const auto& r : rows)
                if (r.within_bound && !*r.within_bound) return kCheckFailed;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInputError;
    }
    return kOk;
}

}  // namespace rsched
