#pragma once

#include <cstdint>
#include <vector>

#include "rsched/model.hpp"

namespace rsched {

struct UnitReduction {
    Instance instance;
    std::vector<std::vector<JobId>> fragments;  // original id -> fragment ids (consecutive)
};

/// Splits each job (u,v,l,r,w) into l jobs (u,v,1,r,w/l). Fragments of a job
/// get consecutive ids, in original id order, so densities and HDF tie-break
/// order are preserved.
UnitReduction unit_reduction(const Instance& inst);

Json fragments_to_json(const UnitReduction& reduction);

/// Maps slot t of a speed-s schedule to slots k*t .. k*t+k-1, each carrying
/// rate/k. The result runs at speed 1 and finishes each job at exactly k times
/// its original completion. Throws InputError if k < 1 or k < s.
Schedule stretch_schedule(const Schedule& sched, std::int64_t k);

}  // namespace rsched
