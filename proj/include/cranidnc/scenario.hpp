#pragma once

// Random CRAN instances: hexagonal cell, RRHs on a fixed ring, users uniform
// in the cell, log-distance path loss with lognormal shadowing drawn per RRB,
// and Bernoulli Has sets with uniformly drawn Wants.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cranidnc/channel.hpp"
#include "cranidnc/clique.hpp"
#include "cranidnc/schedule.hpp"
#include "cranidnc/side_info.hpp"

namespace cranidnc {

/// Free-space loss in dB at distance d for a carrier frequency.
inline double free_space_loss_db(double distance_m, double carrier_hz)
{
    constexpr double kSpeedOfLight = 299792458.0;
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * carrier_hz / kSpeedOfLight);
}

struct PathLossModel {
    double reference_distance_m = 100.0;
    double exponent = 4.0;
    double reference_loss_db = free_space_loss_db(100.0, 2.0e9);
    double shadowing_std_db = 8.0;

    /// Deterministic part of the loss, in dB.
    double mean_loss_db(double distance_m) const
    {
        return reference_loss_db + 10.0 * exponent * std::log10(distance_m / reference_distance_m);
    }
};

struct ScenarioConfig {
    NetworkDims dims{3, 4, 15, 10};
    double cell_diameter_m = 500.0;
    double tx_psd_dbm_hz = -42.60;
    double noise_psd_dbm_hz = -168.60;
    double bandwidth_hz = 1.0e7;
    double file_size_bits = 1.0e6;
    double has_prob = 0.5;
    std::size_t wants_per_user = 1;
    std::uint64_t rng_seed = 1;
    PathLossModel path_loss;
    // Links shorter than this are evaluated at this distance.
    double min_distance_m = 100.0;

    void validate() const
    {
        dims.validate();
        if (dims.num_files > kMaxFiles) {
            throw std::invalid_argument("num_files must be <= 64");
        }
        if (!(has_prob >= 0.0 && has_prob <= 1.0)) {
            throw std::invalid_argument("has_prob must be in [0, 1]");
        }
        if (wants_per_user < 1) {
            throw std::invalid_argument("wants_per_user must be >= 1");
        }
        if (!(cell_diameter_m > 0.0)) {
            throw std::invalid_argument("cell_diameter_m must be > 0");
        }
        if (!(bandwidth_hz > 0.0)) {
            throw std::invalid_argument("bandwidth_hz must be > 0");
        }
        if (!(file_size_bits > 0.0)) {
            throw std::invalid_argument("file_size_bits must be > 0");
        }
        if (!(path_loss.reference_distance_m > 0.0) || !(path_loss.shadowing_std_db >= 0.0) ||
            !(min_distance_m > 0.0)) {
            throw std::invalid_argument("path loss distances must be > 0 and shadowing std >= 0");
        }
    }
};

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Regular hexagon centred at the origin with vertices at 0, 60, ... degrees.
inline bool inside_hexagon(Point p, double circumradius)
{
    const double ax = std::abs(p.x);
    const double ay = std::abs(p.y);
    return ay <= circumradius * std::sqrt(3.0) / 2.0 && ax <= circumradius - ay / std::sqrt(3.0);
}

struct Scenario {
    ScenarioConfig config;
    std::vector<Point> rrh_positions;
    std::vector<Point> user_positions;
    ChannelState channel;
    CapacityMatrix capacities;
    SideInformation side_info;

    Instance instance() const { return Instance{config.dims, capacities, side_info, config.file_size_bits}; }
};

/// RRHs: one at the centre, or evenly spaced on a circle of radius D/4
/// starting at 90 degrees. Users: uniform over the hexagon by rejection.
template <typename Rng>
std::pair<std::vector<Point>, std::vector<Point>> place_nodes(const ScenarioConfig& config, Rng& rng)
{
    const std::size_t rrhs = config.dims.num_rrhs;
    const double radius = config.cell_diameter_m / 2.0;
    std::vector<Point> rrh(rrhs);
    if (rrhs > 1) {
        const double ring = config.cell_diameter_m / 4.0;
        for (std::size_t b = 0; b < rrhs; ++b) {
            const double angle = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(b) /
                                                              static_cast<double>(rrhs);
            rrh[b] = Point{ring * std::cos(angle), ring * std::sin(angle)};
        }
    }
    std::uniform_real_distribution<double> ux(-radius, radius);
    std::uniform_real_distribution<double> uy(-radius * std::sqrt(3.0) / 2.0, radius * std::sqrt(3.0) / 2.0);
    std::vector<Point> users(config.dims.num_users);
    for (auto& p : users) {
        do {
            p = Point{ux(rng), uy(rng)};
        } while (!inside_hexagon(p, radius));
    }
    return {std::move(rrh), std::move(users)};
}

/// Linear power gain 10^(-PL/10) with PL = A + 10 gamma log10(d/d0) + X,
/// X ~ N(0, sigma^2) in dB.
template <typename Rng>
double channel_gain(double distance_m, const PathLossModel& model, Rng& rng)
{
    if (!(distance_m > 0.0)) {
        throw std::domain_error("channel_gain needs a positive distance");
    }
    double loss = model.mean_loss_db(distance_m);
    if (model.shadowing_std_db > 0.0) {
        std::normal_distribution<double> shadow(0.0, model.shadowing_std_db);
        loss += shadow(rng);
    }
    return std::pow(10.0, -loss / 10.0);
}

template <typename Rng>
SideInformation sample_side_info(const ScenarioConfig& config, Rng& rng)
{
    const std::size_t files = config.dims.num_files;
    std::bernoulli_distribution holds(config.has_prob);
    std::vector<FileSet> has(config.dims.num_users);
    std::vector<FileSet> wants(config.dims.num_users);
    for (std::size_t u = 0; u < config.dims.num_users; ++u) {
        std::vector<std::size_t> missing;
        for (std::size_t f = 0; f < files; ++f) {
            if (holds(rng)) {
                has[u].insert(f);
            } else {
                missing.push_back(f);
            }
        }
        // partial Fisher-Yates over the files the user lacks
        const std::size_t count = std::min(config.wants_per_user, missing.size());
        for (std::size_t k = 0; k < count; ++k) {
            std::uniform_int_distribution<std::size_t> pick(k, missing.size() - 1);
            std::swap(missing[k], missing[pick(rng)]);
            wants[u].insert(missing[k]);
        }
    }
    return SideInformation(files, std::move(has), std::move(wants));
}

/// SplitMix64 finalizer; the stable hash behind every derived seed.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) { return splitmix64(seed ^ splitmix64(salt)); }

/// Placement, channel draws and side information use separate streams, so
/// changing the RRB count leaves positions and Has/Wants untouched.
inline Scenario generate_scenario(const ScenarioConfig& config)
{
    config.validate();
    std::mt19937_64 placement_rng(mix_seed(config.rng_seed, 1));
    std::mt19937_64 rng(mix_seed(config.rng_seed, 2));
    std::mt19937_64 side_rng(mix_seed(config.rng_seed, 3));
    auto [rrhs, users] = place_nodes(config, placement_rng);
    const NetworkDims& dims = config.dims;
    std::vector<double> gains(dims.num_links());
    for (std::size_t b = 0; b < dims.num_rrhs; ++b) {
        for (std::size_t z = 0; z < dims.num_rrbs_per_rrh; ++z) {
            for (std::size_t u = 0; u < dims.num_users; ++u) {
                const double d = std::max(distance(rrhs[b], users[u]), config.min_distance_m);
                gains[link_index(dims, b, z, u)] = channel_gain(d, config.path_loss, rng);
            }
        }
    }
    ChannelState channel(dims, std::move(gains));
    const PowerProfile power =
        PowerProfile::uniform_psd(dims, config.tx_psd_dbm_hz, config.noise_psd_dbm_hz, config.bandwidth_hz);
    CapacityMatrix capacities = capacity_matrix(channel, power, dims);
    SideInformation side_info = sample_side_info(config, side_rng);
    return Scenario{config, std::move(rrhs), std::move(users), std::move(channel), std::move(capacities),
                    std::move(side_info)};
}

// ---------------------------------------------------------------------------
// Flat `key = value` config files.

/// Parsed key/value pairs; `#` starts a comment. Tracks which keys were read
/// so unknown keys can be reported.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::istream& in)
    {
        KeyValueConfig cfg;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            const std::string trimmed = trim(line);
            if (trimmed.empty()) {
                continue;
            }
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos) {
                throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
            }
            std::string key = trim(trimmed.substr(0, eq));
            std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty()) {
                throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
            }
            if (!cfg.values_.emplace(key, value).second) {
                throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
            }
        }
        return cfg;
    }

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    bool contains(const std::string& key) const { return values_.count(key) != 0; }

    const std::string* find(const std::string& key)
    {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return nullptr;
        }
        used_.insert(key);
        return &it->second;
    }

    void read(const std::string& key, double& out)
    {
        if (const auto* v = find(key)) {
            out = detail::parse_double(*v);
        }
    }
    template <std::unsigned_integral T>
    void read(const std::string& key, T& out)
    {
        if (const auto* v = find(key)) {
            out = static_cast<T>(parse_unsigned(key, *v));
        }
    }

    std::vector<std::string> unused_keys() const
    {
        std::vector<std::string> out;
        for (const auto& [key, value] : values_) {
            if (used_.count(key) == 0) {
                out.push_back(key);
            }
        }
        return out;
    }

    static std::uint64_t parse_unsigned(const std::string& key, const std::string& text)
    {
        std::uint64_t value = 0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
            throw std::invalid_argument("config key '" + key + "': not an unsigned integer: '" + text + "'");
        }
        return value;
    }

    static std::string trim(const std::string& s)
    {
        const auto first = s.find_first_not_of(" \t\r");
        if (first == std::string::npos) {
            return {};
        }
        const auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

/// Reads scenario keys, leaving others for the caller. Missing keys keep
/// their defaults.
inline ScenarioConfig scenario_config_from(KeyValueConfig& kv, ScenarioConfig base = {})
{
    ScenarioConfig c = std::move(base);
    kv.read("num_rrhs", c.dims.num_rrhs);
    kv.read("num_rrbs", c.dims.num_rrbs_per_rrh);
    kv.read("num_users", c.dims.num_users);
    kv.read("num_files", c.dims.num_files);
    kv.read("cell_diameter_m", c.cell_diameter_m);
    kv.read("tx_psd_dbm_hz", c.tx_psd_dbm_hz);
    kv.read("noise_psd_dbm_hz", c.noise_psd_dbm_hz);
    kv.read("bandwidth_hz", c.bandwidth_hz);
    kv.read("file_size_bits", c.file_size_bits);
    kv.read("has_prob", c.has_prob);
    kv.read("wants_per_user", c.wants_per_user);
    kv.read("seed", c.rng_seed);
    kv.read("pathloss_reference_distance_m", c.path_loss.reference_distance_m);
    kv.read("pathloss_exponent", c.path_loss.exponent);
    kv.read("pathloss_reference_loss_db", c.path_loss.reference_loss_db);
    kv.read("shadowing_std_db", c.path_loss.shadowing_std_db);
    kv.read("min_distance_m", c.min_distance_m);
    c.validate();
    return c;
}

/// Text snapshot of a scenario for regression comparison. Doubles use the
/// shortest round-trip representation.
inline void write_snapshot(std::ostream& out, const Scenario& s)
{
    using detail::format_double;
    const NetworkDims& d = s.config.dims;
    out << "dims " << d.num_rrhs << ' ' << d.num_rrbs_per_rrh << ' ' << d.num_users << ' ' << d.num_files << '\n';
    out << "seed " << s.config.rng_seed << '\n';
    for (std::size_t b = 0; b < s.rrh_positions.size(); ++b) {
        out << "rrh " << b << ' ' << format_double(s.rrh_positions[b].x) << ' ' << format_double(s.rrh_positions[b].y)
            << '\n';
    }
    for (std::size_t u = 0; u < s.user_positions.size(); ++u) {
        out << "user " << u << ' ' << format_double(s.user_positions[u].x) << ' '
            << format_double(s.user_positions[u].y) << " has " << detail::join_indices(s.side_info.has(u).to_vector())
            << " wants " << detail::join_indices(s.side_info.wants(u).to_vector()) << '\n';
    }
    for (std::size_t b = 0; b < d.num_rrhs; ++b) {
        for (std::size_t z = 0; z < d.num_rrbs_per_rrh; ++z) {
            for (std::size_t u = 0; u < d.num_users; ++u) {
                out << "link " << b << ' ' << z << ' ' << u << ' ' << format_double(s.channel.gain(b, z, u)) << ' '
                    << format_double(s.capacities.rate(b, z, u)) << '\n';
            }
        }
    }
}

} // namespace cranidnc
