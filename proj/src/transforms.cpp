#include "rsched/transforms.hpp"

namespace rsched {

UnitReduction unit_reduction(const Instance& inst) {
    UnitReduction out;
    out.instance.nodes = inst.nodes;
    out.fragments.resize(inst.size());
    JobId next = 0;
    for (const auto& r : inst.requests) {
        const Rational piece = r.weight / r.size;
        for (std::int64_t k = 0; k < r.size; ++k) {
            out.fragments[r.id].push_back(next);
            out.instance.requests.push_back({next++, r.src, r.dst, 1, r.release, piece});
        }
    }
    return out;
}

Json fragments_to_json(const UnitReduction& reduction) {
    Json out = Json::object();
    for (std::size_t id = 0; id < reduction.fragments.size(); ++id) out[std::to_string(id)] = reduction.fragments[id];
    return out;
}

Schedule stretch_schedule(const Schedule& sched, std::int64_t k) {
    if (k < 1) throw InputError("stretch factor must be a positive integer", "factor");
    if (Rational(k) < sched.speed) throw InputError("stretch factor below speed", "factor");

    Schedule out;
    out.speed = 1;
    for (const auto& a : sched.slots) {
        for (std::int64_t sub = 0; sub < k; ++sub) {
            SlotAssignment piece;
            piece.slot = k * a.slot + sub;
            for (const auto& [id, rate] : a.rates) piece.rates.emplace(id, rate / k);
            out.slots.push_back(std::move(piece));
        }
    }
    return out;
}

}  // namespace rsched
