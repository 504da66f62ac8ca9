#pragma once

#include <initializer_list>
#include <string>
#include <tuple>

#include "rsched/model.hpp"

namespace rsched::testing {

struct JobSpec {
    std::string src;
    std::string dst;
    std::int64_t size = 1;
    std::int64_t release = 0;
    Rational weight{1};
};

inline Instance make_instance(std::initializer_list<std::pair<std::string, std::int64_t>> nodes,
                              std::initializer_list<JobSpec> jobs) {
    Instance inst;
    for (const auto& [id, d] : nodes) inst.nodes.push_back({id, d});
    JobId next = 0;
    for (const auto& j : jobs) inst.requests.push_back({next++, j.src, j.dst, j.size, j.release, j.weight});
    return inst;
}

inline Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }

}  // namespace rsched::testing
