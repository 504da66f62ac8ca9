#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace rsched {

/// Exact rational scalar. Always stored in canonical reduced form with a
/// positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Json = nlohmann::ordered_json;

using JobId = std::int64_t;
using Slot = std::int64_t;

/// Malformed or invalid user input. `path` names the offending field
/// (e.g. `jobs[2].src`) when one applies.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& message, std::string path = {})
        : std::runtime_error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Parses "p/q", "-p/q" or a bare integer. No floating point forms.
Rational parse_rational(std::string_view text);
/// Canonical text: "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

Rational ceil_div(const Rational& value);  // ceiling, as a Rational with denominator 1
std::int64_t to_int64(const Rational& integral_value);

struct Node {
    std::string id;
    std::int64_t degree_bound = 1;

    bool operator==(const Node&) const = default;
};

struct Request {
    JobId id = 0;
    std::string src;
    std::string dst;
    std::int64_t size = 1;
    std::int64_t release = 0;
    Rational weight{1};

    Rational density() const { return weight / size; }
    bool touches(std::string_view node) const { return src == node || dst == node; }

    bool operator==(const Request&) const = default;
};

/// Nodes plus requests. After parse_instance the requests are sorted so that
/// `requests[i].id == i`.
struct Instance {
    std::vector<Node> nodes;
    std::vector<Request> requests;

    const Node* find_node(std::string_view id) const;
    std::int64_t degree(std::string_view id) const;  // throws InputError if unknown
    const Request& job(JobId id) const { return requests.at(static_cast<std::size_t>(id)); }
    std::size_t size() const { return requests.size(); }

    bool is_unit_size() const;

    bool operator==(const Instance&) const = default;
};

struct SlotAssignment {
    Slot slot = 0;
    std::map<JobId, Rational> rates;  // zero rates omitted

    bool operator==(const SlotAssignment&) const = default;
};

struct Schedule {
    std::vector<SlotAssignment> slots;
    Rational speed{1};

    bool operator==(const Schedule&) const = default;
};

struct ValidationIssue {
    std::string path;
    std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

ValidationReport validate_instance(const Instance& inst);

Instance parse_instance(std::string_view text);
Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& inst);
std::string serialize_instance(const Instance& inst);

Schedule parse_schedule(std::string_view text);
Schedule schedule_from_json(const Json& doc);
Json schedule_to_json(const Schedule& sched);

}  // namespace rsched
