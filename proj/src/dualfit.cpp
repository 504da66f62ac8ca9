#include "rsched/dualfit.hpp"

#include <algorithm>

namespace rsched {

std::string_view mode_name(DualMode m) { return m == DualMode::simple ? "simple" : "general"; }

std::optional<DualMode> parse_mode(std::string_view name) {
    if (name == "simple") return DualMode::simple;
    if (name == "general") return DualMode::general;
    return std::nullopt;
}

namespace {

std::size_t node_index(const Instance& inst, std::string_view id) {
    for (std::size_t k = 0; k < inst.nodes.size(); ++k)
        if (inst.nodes[k].id == id) return k;
    throw InputError("unknown node '" + std::string(id) + "'");
}

bool counted_at_arrival(const Request& peer, const Trace& trace, const Request& job) {
    if (peer.id == job.id) return false;
    return peer.release <= job.release && trace.completion[peer.id] > job.release;
}

std::vector<std::vector<Rational>> beta_from_trace(const Instance& inst, const Trace& trace, DualMode mode) {
    const Rational half_inv_speed = Rational(1) / (2 * trace.speed);
    std::vector<std::vector<Rational>> beta;
    beta.reserve(trace.slots.size());
    for (const auto& snap : trace.slots) {
        std::vector<Rational> row(inst.nodes.size());
        for (std::size_t v = 0; v < row.size(); ++v)
            row[v] = (mode == DualMode::simple ? Rational(snap.degree[v]) : snap.weight[v]) * half_inv_speed;
        beta.push_back(std::move(row));
    }
    return beta;
}

// w_i * #{peers heavier than i} + Σ{w_j : peers lighter than i}; equal weights
// contribute nothing.
Rational arrival_charge(const Instance& inst, const Request& job, const std::vector<JobId>& peers) {
    Rational charge{0};
    for (const JobId j : peers) {
        const Rational& wj = inst.job(j).weight;
        if (wj > job.weight) charge += job.weight;
        else if (wj < job.weight) charge += wj;
    }
    return charge;
}

}  // namespace

const SlotSnapshot* Trace::at(Slot t) const {
    if (t < 0 || static_cast<std::size_t>(t) >= slots.size()) return nullptr;
    return &slots[static_cast<std::size_t>(t)];
}

Trace build_trace(const Instance& inst, const Schedule& sched) {
    const Metrics metrics = compute_metrics(inst, sched);
    Trace trace;
    trace.speed = sched.speed;
    trace.completion = metrics.completion;

    std::vector<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& r : inst.requests) ends.emplace_back(node_index(inst, r.src), node_index(inst, r.dst));

    for (Slot t = 0; t < metrics.makespan; ++t) {
        SlotSnapshot snap;
        snap.slot = t;
        snap.degree.assign(inst.nodes.size(), 0);
        snap.weight.assign(inst.nodes.size(), Rational{0});
        for (const auto& r : inst.requests) {
            if (r.release > t || metrics.completion[r.id] <= t) continue;
            snap.alive.push_back(r.id);
            for (const std::size_t v : {ends[r.id].first, ends[r.id].second}) {
                ++snap.degree[v];
                snap.weight[v] += r.weight;
            }
        }
        trace.slots.push_back(std::move(snap));
    }

    trace.peers.resize(inst.size());
    for (const auto& job : inst.requests) {
        for (const auto& peer : inst.requests) {
            if (!counted_at_arrival(peer, trace, job)) continue;
            if (peer.touches(job.src)) trace.peers[job.id].at_src.push_back(peer.id);
            if (peer.touches(job.dst)) trace.peers[job.id].at_dst.push_back(peer.id);
        }
    }
    return trace;
}

Json trace_to_json(const Instance& inst, const Trace& trace) {
    Json slots = Json::array();
    for (const auto& snap : trace.slots) {
        Json degree = Json::object();
        Json weight = Json::object();
        for (std::size_t v = 0; v < inst.nodes.size(); ++v) {
            if (snap.degree[v] == 0) continue;
            degree[inst.nodes[v].id] = snap.degree[v];
            weight[inst.nodes[v].id] = format_rational(snap.weight[v]);
        }
        slots.push_back(Json{{"t", snap.slot}, {"alive", snap.alive}, {"degree", degree}, {"weight", weight}});
    }
    Json jobs = Json::array();
    for (const auto& r : inst.requests) {
        jobs.push_back(Json{{"id", r.id},
                            {"completion", trace.completion[r.id]},
                            {"src_peers", trace.peers[r.id].at_src},
                            {"dst_peers", trace.peers[r.id].at_dst}});
    }
    return Json{{"speed", format_rational(trace.speed)}, {"slots", std::move(slots)}, {"jobs", std::move(jobs)}};
}

Rational DualSolution::beta_at(std::size_t node, Slot t) const {
    if (t < 0 || static_cast<std::size_t>(t) >= beta.size()) return Rational{0};
    return beta[static_cast<std::size_t>(t)][node];
}

Rational DualSolution::sum_alpha() const {
    Rational sum{0};
    for (const auto& a : alpha) sum += a;
    return sum;
}

Rational DualSolution::sum_beta() const {
    Rational sum{0};
    for (const auto& row : beta)
        for (const auto& b : row) sum += b;
    return sum;
}

DualSolution build_dual_simple(const Instance& inst, const Trace& trace) {
    const bool unit = std::all_of(inst.nodes.begin(), inst.nodes.end(), [](const Node& n) { return n.degree_bound == 1; }) &&
                      std::all_of(inst.requests.begin(), inst.requests.end(),
                                  [](const Request& r) { return r.size == 1 && r.weight == 1; });
    if (!unit) throw InputError("simple mode requires unit instance");

    DualSolution dual;
    dual.speed = trace.speed;
    dual.mode = DualMode::simple;
    for (const auto& r : inst.requests) {
        const auto& p = trace.peers[r.id];
        const auto with_self = static_cast<std::int64_t>(p.at_src.size() + p.at_dst.size()) + 2;
        dual.alpha.push_back(Rational(with_self) / (2 * trace.speed));
    }
    dual.beta = beta_from_trace(inst, trace, DualMode::simple);
    return dual;
}

DualSolution build_dual_general(const Instance& inst, const Trace& trace) {
    if (!inst.is_unit_size()) throw InputError("general mode requires unit-size jobs; apply unit_reduction first");

    DualSolution dual;
    dual.speed = trace.speed;
    dual.mode = DualMode::general;
    for (const auto& r : inst.requests) {
        const auto& p = trace.peers[r.id];
        const Rational total = arrival_charge(inst, r, p.at_src) / inst.degree(r.src) +
                               arrival_charge(inst, r, p.at_dst) / inst.degree(r.dst);
        dual.alpha.push_back(total / (2 * trace.speed));
    }
    dual.beta = beta_from_trace(inst, trace, DualMode::general);
    return dual;
}

DualFeasibilityReport verify_dual_feasibility(const DualSolution& dual, const Instance& inst,
                                              std::optional<Slot> horizon) {
    DualFeasibilityReport report;
    report.sum_alpha = dual.sum_alpha();
    report.sum_beta = dual.sum_beta();

    if (horizon) {
        report.horizon = *horizon;
    } else {
        for (const auto& r : inst.requests) {
            const Rational wait = ceil_div(dual.alpha[r.id] / r.weight);
            report.horizon = std::max(report.horizon, r.release + to_int64(wait) + 1);
        }
    }

    for (const auto& r : inst.requests) {
        const std::size_t u = node_index(inst, r.src);
        const std::size_t v = node_index(inst, r.dst);
        for (Slot t = r.release; t <= report.horizon; ++t) {
            Rational lhs = dual.alpha[r.id];
            Rational rhs;
            if (dual.mode == DualMode::simple) {
                lhs -= dual.beta_at(u, t) + dual.beta_at(v, t);
                rhs = Rational(t - r.release);
            } else {
                lhs -= dual.beta_at(u, t) / inst.nodes[u].degree_bound + dual.beta_at(v, t) / inst.nodes[v].degree_bound;
                rhs = r.weight * (t - r.release);
            }
            if (lhs > rhs) report.violations.push_back({r.id, t, rhs - lhs});
        }
    }
    return report;
}

Json dual_report_to_json(const DualFeasibilityReport& report) {
    Json violations = Json::array();
    for (const auto& v : report.violations)
        violations.push_back(Json{{"job", v.job}, {"slot", v.slot}, {"slack", format_rational(v.slack)}});
    return Json{{"feasible", report.feasible()},
                {"violations", std::move(violations)},
                {"sum_alpha", format_rational(report.sum_alpha)},
                {"sum_beta", format_rational(report.sum_beta)},
                {"dual_objective", format_rational(report.dual_objective())},
                {"horizon", report.horizon}};
}

DualBoundsReport check_dual_bounds(const DualSolution& dual, const Metrics& metrics) {
    DualBoundsReport out;
    out.alg = metrics.weighted_flow;
    out.sum_alpha = dual.sum_alpha();
    out.sum_beta = dual.sum_beta();
    out.alpha_bound = out.sum_alpha * 2 >= out.alg;
    out.beta_bound = out.sum_beta * dual.speed <= out.alg;
    out.beta_identity = out.sum_beta * dual.speed == out.alg;
    if (dual.speed > 2) {
        out.certified_alg_bound = 2 * dual.speed / (dual.speed - 2) * (out.sum_alpha - out.sum_beta);
        out.certified_holds = out.alg <= *out.certified_alg_bound;
    } else {
        out.note = "speed <= 2: no certified bound (dual objective may be non-positive)";
    }
    return out;
}

Json bounds_report_to_json(const DualBoundsReport& report) {
    Json out{{"alg", format_rational(report.alg)},
             {"sum_alpha", format_rational(report.sum_alpha)},
             {"sum_beta", format_rational(report.sum_beta)},
             {"alpha_bound", report.alpha_bound},
             {"beta_bound", report.beta_bound},
             {"beta_identity", report.beta_identity}};
    if (report.certified_alg_bound) {
        out["certified_alg_bound"] = format_rational(*report.certified_alg_bound);
        out["certified_holds"] = report.certified_holds;
    } else {
        out["note"] = report.note;
    }
    return out;
}

}  // namespace rsched
