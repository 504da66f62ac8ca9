#include "rsched/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace rsched {

namespace {

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && s.front() == '-') s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string field(std::string_view base, std::size_t index, std::string_view name) {
    return std::string(base) + "[" + std::to_string(index) + "]." + std::string(name);
}

std::int64_t require_int(const Json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) throw InputError("missing field", path);
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) throw InputError("expected an integer", path);
    return v.get<std::int64_t>();
}

std::string require_string(const Json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) throw InputError("missing field", path);
    const Json& v = obj.at(key);
    if (!v.is_string()) throw InputError("expected a string", path);
    return v.get<std::string>();
}

Rational rational_from_json(const Json& v, const std::string& path) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_string()) {
        try {
            return parse_rational(v.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(e.what(), path);
        }
    }
    throw InputError("expected an integer or a \"p/q\" string", path);
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num)) throw InputError("invalid rational literal '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return Rational(boost::multiprecision::cpp_int(std::string(num)));

    const std::string_view den = text.substr(slash + 1);
    if (den.empty() || den.front() == '-' || !is_integer_literal(den))
        throw InputError("invalid rational literal '" + std::string(text) + "'");
    const boost::multiprecision::cpp_int d(std::string{den});
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rational(boost::multiprecision::cpp_int(std::string(num)), d);
}

std::string format_rational(const Rational& value) {
    const auto num = boost::multiprecision::numerator(value);
    const auto den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational ceil_div(const Rational& value) {
    using boost::multiprecision::cpp_int;
    const cpp_int num = boost::multiprecision::numerator(value);
    const cpp_int den = boost::multiprecision::denominator(value);
    cpp_int q = num / den;  // truncates toward zero
    if (num % den != 0 && num > 0) ++q;
    return Rational(q);
}

std::int64_t to_int64(const Rational& integral_value) {
    if (boost::multiprecision::denominator(integral_value) != 1)
        throw std::logic_error("to_int64 on non-integral value " + format_rational(integral_value));
    return boost::multiprecision::numerator(integral_value).convert_to<std::int64_t>();
}

const Node* Instance::find_node(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

std::int64_t Instance::degree(std::string_view id) const {
    const Node* n = find_node(id);
    if (n == nullptr) throw InputError("unknown node '" + std::string(id) + "'");
    return n->degree_bound;
}

bool Instance::is_unit_size() const {
    return std::all_of(requests.begin(), requests.end(), [](const Request& r) { return r.size == 1; });
}

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    std::set<std::string> node_ids;
    for (std::size_t k = 0; k < inst.nodes.size(); ++k) {
        const Node& n = inst.nodes[k];
        if (n.degree_bound < 1) report.push_back({field("nodes", k, "degree"), "degree bound must be ≥ 1"});
        if (!node_ids.insert(n.id).second) report.push_back({field("nodes", k, "id"), "duplicate node id '" + n.id + "'"});
    }

    std::vector<int> seen(inst.requests.size(), 0);
    for (std::size_t k = 0; k < inst.requests.size(); ++k) {
        const Request& r = inst.requests[k];
        if (r.id < 0 || static_cast<std::size_t>(r.id) >= inst.requests.size())
            report.push_back({field("jobs", k, "id"), "job id " + std::to_string(r.id) + " outside 0..n-1"});
        else if (seen[static_cast<std::size_t>(r.id)]++ > 0)
            report.push_back({field("jobs", k, "id"), "duplicate job id " + std::to_string(r.id)});
        if (!node_ids.contains(r.src)) report.push_back({field("jobs", k, "src"), "unknown node '" + r.src + "'"});
        if (!node_ids.contains(r.dst)) report.push_back({field("jobs", k, "dst"), "unknown node '" + r.dst + "'"});
        if (r.src == r.dst) report.push_back({field("jobs", k, "dst"), "self-loop request"});
        if (r.size < 1) report.push_back({field("jobs", k, "size"), "size must be ≥ 1"});
        if (r.release < 0) report.push_back({field("jobs", k, "release"), "release must be ≥ 0"});
        if (r.weight <= 0) report.push_back({field("jobs", k, "weight"), "weight must be > 0"});
    }
    return report;
}

Instance instance_from_json(const Json& doc) {
    if (!doc.is_object()) throw InputError("instance must be a JSON object");
    if (!doc.contains("nodes") || !doc.at("nodes").is_array()) throw InputError("expected an array", "nodes");
    if (!doc.contains("jobs") || !doc.at("jobs").is_array()) throw InputError("expected an array", "jobs");

    Instance inst;
    const Json& nodes = doc.at("nodes");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const Json& n = nodes[k];
        if (!n.is_object()) throw InputError("expected an object", "nodes[" + std::to_string(k) + "]");
        inst.nodes.push_back({require_string(n, "id", field("nodes", k, "id")),
                              require_int(n, "degree", field("nodes", k, "degree"))});
    }
    const Json& jobs = doc.at("jobs");
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        const Json& j = jobs[k];
        if (!j.is_object()) throw InputError("expected an object", "jobs[" + std::to_string(k) + "]");
        Request r;
        r.id = require_int(j, "id", field("jobs", k, "id"));
        r.src = require_string(j, "src", field("jobs", k, "src"));
        r.dst = require_string(j, "dst", field("jobs", k, "dst"));
        r.size = require_int(j, "size", field("jobs", k, "size"));
        r.release = require_int(j, "release", field("jobs", k, "release"));
        if (!j.contains("weight")) throw InputError("missing field", field("jobs", k, "weight"));
        r.weight = rational_from_json(j.at("weight"), field("jobs", k, "weight"));
        inst.requests.push_back(std::move(r));
    }

    const ValidationReport report = validate_instance(inst);
    if (!report.empty()) throw InputError(report.front().message, report.front().path);

    std::sort(inst.requests.begin(), inst.requests.end(),
              [](const Request& a, const Request& b) { return a.id < b.id; });
    return inst;
}

Instance parse_instance(std::string_view text) { return instance_from_json(parse_json(text)); }

Json instance_to_json(const Instance& inst) {
    Json nodes = Json::array();
    for (const auto& n : inst.nodes) nodes.push_back(Json{{"id", n.id}, {"degree", n.degree_bound}});
    Json jobs = Json::array();
    for (const auto& r : inst.requests) {
        jobs.push_back(Json{{"id", r.id},
                            {"src", r.src},
                            {"dst", r.dst},
                            {"size", r.size},
                            {"release", r.release},
                            {"weight", format_rational(r.weight)}});
    }
    return Json{{"nodes", std::move(nodes)}, {"jobs", std::move(jobs)}};
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(); }

Schedule schedule_from_json(const Json& doc) {
    if (!doc.is_object()) throw InputError("schedule must be a JSON object");
    Schedule sched;
    if (!doc.contains("speed")) throw InputError("missing field", "speed");
    sched.speed = rational_from_json(doc.at("speed"), "speed");
    if (sched.speed <= 0) throw InputError("speed must be positive", "speed");
    if (!doc.contains("slots") || !doc.at("slots").is_array()) throw InputError("expected an array", "slots");

    const Json& slots = doc.at("slots");
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const std::string base = "slots[" + std::to_string(k) + "]";
        const Json& s = slots[k];
        if (!s.is_object()) throw InputError("expected an object", base);
        SlotAssignment a;
        a.slot = require_int(s, "t", base + ".t");
        if (!s.contains("rates") || !s.at("rates").is_object()) throw InputError("expected an object", base + ".rates");
        for (const auto& [key, value] : s.at("rates").items()) {
            const std::string path = base + ".rates." + key;
            if (!is_integer_literal(key)) throw InputError("job id key must be an integer", path);
            const Rational rate = rational_from_json(value, path);
            if (rate < 0) throw InputError("rate must be non-negative", path);
            if (rate > 0) a.rates[std::stoll(key)] = rate;
        }
        sched.slots.push_back(std::move(a));
    }
    return sched;
}

Schedule parse_schedule(std::string_view text) { return schedule_from_json(parse_json(text)); }

Json schedule_to_json(const Schedule& sched) {
    Json slots = Json::array();
    for (const auto& a : sched.slots) {
        Json rates = Json::object();
        for (const auto& [id, rate] : a.rates) rates[std::to_string(id)] = format_rational(rate);
        slots.push_back(Json{{"t", a.slot}, {"rates", std::move(rates)}});
    }
    return Json{{"speed", format_rational(sched.speed)}, {"slots", std::move(slots)}};
}

}  // namespace rsched
