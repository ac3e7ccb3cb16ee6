#pragma once

// Schedules (one coded transmission per used RRB), their feasibility check
// against the scheduling constraints, and throughput accounting.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cranidnc/channel.hpp"
#include "cranidnc/clique.hpp"
#include "cranidnc/side_info.hpp"

namespace cranidnc {

/// Everything a scheduler needs for one frame.
struct Instance {
    NetworkDims dims;
    CapacityMatrix capacities;
    SideInformation side_info;
    double file_size_bits = 1.0e6;
};

struct RrbKey {
    std::size_t b = 0;
    std::size_t z = 0;
    auto operator<=>(const RrbKey&) const = default;
};

struct ScheduleEntry {
    FileSet kappa;
    double rate = 0.0;
    std::vector<std::size_t> targeted; // ascending user ids
    bool operator==(const ScheduleEntry&) const = default;
};

/// RRBs without an entry stay silent.
using Schedule = std::map<RrbKey, ScheduleEntry>;

enum class ViolationKind {
    index_out_of_range,
    empty_combination,
    file_out_of_range,
    no_targeted_users,
    nonpositive_rate,
    multiple_rrhs,
    rate_above_capacity,
    not_decodable,
};

inline const char* to_string(ViolationKind kind)
{
    switch (kind) {
    case ViolationKind::index_out_of_range: return "index_out_of_range";
    case ViolationKind::empty_combination: return "empty_combination";
    case ViolationKind::file_out_of_range: return "file_out_of_range";
    case ViolationKind::no_targeted_users: return "no_targeted_users";
    case ViolationKind::nonpositive_rate: return "nonpositive_rate";
    case ViolationKind::multiple_rrhs: return "multiple_rrhs";
    case ViolationKind::rate_above_capacity: return "rate_above_capacity";
    case ViolationKind::not_decodable: return "not_decodable";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    RrbKey rrb;
    std::size_t user = 0;
    std::string detail;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const
    {
        for (const auto& v : violations) {
            if (v.kind == kind) {
                return true;
            }
        }
        return false;
    }
    std::string summary() const
    {
        std::string out;
        for (const auto& v : violations) {
            out += std::string(to_string(v.kind)) + " at rrb (" + std::to_string(v.rrb.b) + "," +
                   std::to_string(v.rrb.z) + ") user " + std::to_string(v.user) + ": " + v.detail + "\n";
        }
        return out;
    }
};

struct ValidationOptions {
    // RLNC full mixes are credited without instant decodability.
    bool check_decodability = true;
};

/// Collects every violation of the connectivity, rate, decodability and
/// nonempty-combination constraints.
inline ValidationResult validate_schedule(const Schedule& s, const CapacityMatrix& cm, const SideInformation& si,
                                          ValidationOptions options = {})
{
    const NetworkDims& dims = cm.dims();
    ValidationResult result;
    auto report = [&](ViolationKind kind, RrbKey key, std::size_t u, std::string text) {
        result.violations.push_back(Violation{kind, key, u, std::move(text)});
    };
    std::vector<std::vector<std::size_t>> rrhs_of_user(dims.num_users);

    for (const auto& [key, entry] : s) {
        if (key.b >= dims.num_rrhs || key.z >= dims.num_rrbs_per_rrh) {
            report(ViolationKind::index_out_of_range, key, 0, "rrh/rrb outside the network");
            continue;
        }
        if (entry.kappa.empty()) {
            report(ViolationKind::empty_combination, key, 0, "combination is empty");
        } else if (!entry.kappa.is_subset_of(FileSet::first(si.num_files()))) {
            report(ViolationKind::file_out_of_range, key, 0, "combination references an unknown file");
        }
        if (entry.targeted.empty()) {
            report(ViolationKind::no_targeted_users, key, 0, "entry targets nobody");
        }
        if (!(entry.rate > 0.0)) {
            report(ViolationKind::nonpositive_rate, key, 0, "rate must be positive");
        }
        for (std::size_t u : entry.targeted) {
            if (u >= dims.num_users) {
                report(ViolationKind::index_out_of_range, key, u, "unknown user");
                continue;
            }
            auto& rrhs = rrhs_of_user[u];
            if (std::find(rrhs.begin(), rrhs.end(), key.b) == rrhs.end()) {
                rrhs.push_back(key.b);
            }
            const double cap = cm.rate(key.b, key.z, u);
            if (entry.rate > cap) {
                report(ViolationKind::rate_above_capacity, key, u,
                       "rate " + detail::format_double(entry.rate) + " exceeds capacity " + detail::format_double(cap));
            }
            if (options.check_decodability && !entry.kappa.empty() &&
                !is_instantly_decodable(EncodedFile(entry.kappa), u, si)) {
                report(ViolationKind::not_decodable, key, u, "combination is not instantly decodable");
            }
        }
    }
    for (std::size_t u = 0; u < rrhs_of_user.size(); ++u) {
        if (rrhs_of_user[u].size() > 1) {
            report(ViolationKind::multiple_rrhs, RrbKey{rrhs_of_user[u][1], 0}, u,
                   "user served by " + std::to_string(rrhs_of_user[u].size()) + " rrhs");
        }
    }
    return result;
}

/// Objective: sum over entries of |targeted| * rate, in bits/s/Hz.
inline double sum_rate(const Schedule& s)
{
    double total = 0.0;
    for (const auto& [key, entry] : s) {
        total += static_cast<double>(entry.targeted.size()) * entry.rate;
    }
    return total;
}

struct ThroughputReport {
    double sum_rate = 0.0;          // bits/s/Hz
    double delivered_bits = 0.0;    // file_size bits per (user, RRB) delivery
    std::vector<double> per_user;   // bits/s/Hz per user
};

inline ThroughputReport throughput_report(const Schedule& s, std::size_t num_users, double file_size_bits)
{
    ThroughputReport r;
    r.per_user.assign(num_users, 0.0);
    std::size_t deliveries = 0;
    for (const auto& [key, entry] : s) {
        deliveries += entry.targeted.size();
        for (std::size_t u : entry.targeted) {
            if (u < num_users) {
                r.per_user[u] += entry.rate;
            }
        }
    }
    r.sum_rate = sum_rate(s);
    r.delivered_bits = static_cast<double>(deliveries) * file_size_bits;
    return r;
}

namespace detail {

inline std::string join_indices(const std::vector<std::size_t>& ids)
{
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(ids[i]);
    }
    return out;
}

inline std::vector<std::size_t> split_indices(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        const unsigned long long value = std::stoull(item, &pos);
        if (pos != item.size()) {
            throw std::invalid_argument("bad index '" + item + "'");
        }
        out.push_back(static_cast<std::size_t>(value));
    }
    return out;
}

} // namespace detail

/// One line per entry: `b z rate file,file,... user,user,...`, 0-based.
inline void write_schedule(std::ostream& out, const Schedule& s)
{
    for (const auto& [key, entry] : s) {
        out << key.b << ' ' << key.z << ' ' << detail::format_double(entry.rate) << ' '
            << detail::join_indices(entry.kappa.to_vector()) << ' ' << detail::join_indices(entry.targeted) << '\n';
    }
}

inline Schedule read_schedule(std::istream& in)
{
    Schedule s;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ss(line);
        RrbKey key;
        std::string rate, files, users;
        if (!(ss >> key.b >> key.z >> rate >> files >> users)) {
            throw std::invalid_argument("malformed schedule line: '" + line + "'");
        }
        ScheduleEntry entry;
        entry.rate = detail::parse_double(rate);
        for (std::size_t f : detail::split_indices(files)) {
            entry.kappa.insert(f);
        }
        entry.targeted = detail::split_indices(users);
        if (!s.emplace(key, std::move(entry)).second) {
            throw std::invalid_argument("duplicate rrb in schedule: '" + line + "'");
        }
    }
    return s;
}

} // namespace cranidnc
