#include "rsched/generators.hpp"

#include <random>

namespace rsched {

std::string_view variant_name(LbVariant v) { return v == LbVariant::t1 ? "t1" : "t2"; }

std::optional<LbVariant> parse_variant(std::string_view name) {
    if (name == "t1") return LbVariant::t1;
    if (name == "t2") return LbVariant::t2;
    return std::nullopt;
}

std::optional<std::int64_t> exact_sqrt(std::int64_t value) {
    if (value < 0) return std::nullopt;
    std::int64_t lo = 0;
    std::int64_t hi = std::min<std::int64_t>(value, 3037000499);  // floor(sqrt(INT64_MAX))
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (mid * mid <= value) lo = mid;
        else hi = mid - 1;
    }
    if (lo * lo != value) return std::nullopt;
    return lo;
}

Instance gen_lower_bound(std::int64_t L, LbVariant variant) {
    const auto root = exact_sqrt(L);
    if (!root || L < 4) throw InputError("L must be a perfect square >= 4 (got " + std::to_string(L) + ")", "L");
    const std::int64_t q = *root;

    Instance inst;
    for (const char* id : {"v1", "v2", "v3", "v4"}) inst.nodes.push_back({id, 1});

    JobId next = 0;
    auto add = [&](const char* src, const char* dst, std::int64_t release) {
        inst.requests.push_back({next++, src, dst, 1, release, Rational{1}});
    };
    for (std::int64_t k = 0; k < q; ++k) add("v1", "v2", 1);
    for (std::int64_t k = 0; k < q; ++k) add("v3", "v2", 1);
    const char* late_src = variant == LbVariant::t1 ? "v3" : "v1";
    for (std::int64_t i = 1; i <= L; ++i) add(late_src, "v4", q + i);
    return inst;
}

Instance gen_random(const RandomSpec& spec) {
    if (spec.nodes < 2) throw InputError("need at least 2 nodes", "nodes");
    if (spec.degree_max < 1 || spec.jobs < 1 || spec.size_max < 1 || spec.weight_max < 1 || spec.release_window < 1)
        throw InputError("all generator parameters must be positive");

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };

    Instance inst;
    for (std::int64_t v = 1; v <= spec.nodes; ++v)
        inst.nodes.push_back({"v" + std::to_string(v), uniform(1, spec.degree_max)});

    for (JobId id = 0; id < spec.jobs; ++id) {
        const auto src = uniform(0, spec.nodes - 1);
        auto dst = uniform(0, spec.nodes - 2);
        if (dst >= src) ++dst;
        Request r;
        r.id = id;
        r.src = inst.nodes[src].id;
        r.dst = inst.nodes[dst].id;
        r.size = uniform(1, spec.size_max);
        r.release = uniform(0, spec.release_window - 1);
        r.weight = Rational(uniform(1, spec.weight_max));
        inst.requests.push_back(std::move(r));
    }
    return inst;
}

}  // namespace rsched
