#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "rsched/model.hpp"

namespace rsched {

enum class LbVariant { t1, t2 };

std::string_view variant_name(LbVariant v);
std::optional<LbVariant> parse_variant(std::string_view name);

/// Exact integer square root, or nullopt when `value` is not a perfect square.
std::optional<std::int64_t> exact_sqrt(std::int64_t value);

/// The two-branch adversarial family on nodes v1..v4 (all degree 1, all jobs
/// unit size and unit weight). With q = sqrt(L):
///   ids [0, q)        (v1,v2) released at 1
///   ids [q, 2q)       (v3,v2) released at 1
///   ids [2q, 2q+L)    (v3,v4) for t1 or (v1,v4) for t2, released at q+1 .. q+L
/// Throws InputError unless L is a perfect square >= 4.
Instance gen_lower_bound(std::int64_t L, LbVariant variant);

struct RandomSpec {
    std::int64_t nodes = 4;
    std::int64_t degree_max = 1;
    std::int64_t jobs = 8;
    std::int64_t size_max = 1;
    std::int64_t weight_max = 1;
    std::int64_t release_window = 4;  // releases drawn from [0, release_window)
    std::uint64_t seed = 0;
};

/// Deterministic for a given spec. Node ids are v1..vN.
Instance gen_random(const RandomSpec& spec);

}  // namespace rsched
