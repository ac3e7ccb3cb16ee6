#pragma once

// Physical layer: SINR with same-index inter-RRH interference, Shannon
// capacity per link and the capacity matrix over every (RRH, RRB, user).

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cranidnc/errors.hpp"

namespace cranidnc {

struct NetworkDims {
    std::size_t num_rrhs = 1;
    std::size_t num_rrbs_per_rrh = 1;
    std::size_t num_users = 1;
    std::size_t num_files = 1;

    std::size_t total_rrbs() const { return num_rrhs * num_rrbs_per_rrh; }
    std::size_t num_links() const { return total_rrbs() * num_users; }

    void validate() const
    {
        if (num_rrhs == 0 || num_rrbs_per_rrh == 0 || num_users == 0 || num_files == 0) {
            throw std::invalid_argument("network dimensions must all be >= 1");
        }
    }

    bool operator==(const NetworkDims&) const = default;
};

/// Flat index of an (RRH, RRB) pair.
inline std::size_t rrb_index(const NetworkDims& dims, std::size_t b, std::size_t z)
{
    detail::check_index(b, dims.num_rrhs, "rrh");
    detail::check_index(z, dims.num_rrbs_per_rrh, "rrb");
    return b * dims.num_rrbs_per_rrh + z;
}

/// Flat index of an (RRH, RRB, user) triple.
inline std::size_t link_index(const NetworkDims& dims, std::size_t b, std::size_t z, std::size_t u)
{
    const std::size_t bz = rrb_index(dims, b, z);
    detail::check_index(u, dims.num_users, "user");
    return bz * dims.num_users + u;
}

/// Converts a power spectral density in dBm/Hz to total linear power in watts
/// over the given bandwidth.
inline double psd_dbm_per_hz_to_watts(double psd_dbm_per_hz, double bandwidth_hz)
{
    return std::pow(10.0, (psd_dbm_per_hz - 30.0) / 10.0) * bandwidth_hz;
}

/// Per-RRB transmit powers and the receiver noise power, both linear (W).
class PowerProfile {
public:
    PowerProfile(NetworkDims dims, std::vector<double> tx_power_w, double noise_power_w)
        : dims_(dims), tx_power_w_(std::move(tx_power_w)), noise_power_w_(noise_power_w)
    {
        dims_.validate();
        if (tx_power_w_.size() != dims_.total_rrbs()) {
            throw MissingData("power profile needs one transmit power per (rrh, rrb): expected " +
                              std::to_string(dims_.total_rrbs()) + ", got " +
                              std::to_string(tx_power_w_.size()));
        }
        for (double p : tx_power_w_) {
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw std::domain_error("transmit powers must be finite and nonnegative");
            }
        }
        if (!(noise_power_w_ >= 0.0) || !std::isfinite(noise_power_w_)) {
            throw std::domain_error("noise power must be finite and nonnegative");
        }
    }

    /// Builds the profile from PSDs: one PSD per (rrh, rrb), a noise PSD and the bandwidth.
    static PowerProfile from_psd(NetworkDims dims, const std::vector<double>& tx_psd_dbm_hz,
                                 double noise_psd_dbm_hz, double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0)) {
            throw std::invalid_argument("bandwidth must be > 0");
        }
        std::vector<double> tx;
        tx.reserve(tx_psd_dbm_hz.size());
        for (double psd : tx_psd_dbm_hz) {
            tx.push_back(psd_dbm_per_hz_to_watts(psd, bandwidth_hz));
        }
        return PowerProfile(dims, std::move(tx), psd_dbm_per_hz_to_watts(noise_psd_dbm_hz, bandwidth_hz));
    }

    /// Same PSD on every RRB.
    static PowerProfile uniform_psd(NetworkDims dims, double tx_psd_dbm_hz, double noise_psd_dbm_hz,
                                    double bandwidth_hz)
    {
        return from_psd(dims, std::vector<double>(dims.total_rrbs(), tx_psd_dbm_hz), noise_psd_dbm_hz,
                        bandwidth_hz);
    }

    const NetworkDims& dims() const { return dims_; }
    double tx_power(std::size_t b, std::size_t z) const { return tx_power_w_[rrb_index(dims_, b, z)]; }
    double noise_power() const { return noise_power_w_; }

private:
    NetworkDims dims_;
    std::vector<double> tx_power_w_;
    double noise_power_w_;
};

/// Linear power gains |h|^2 for every (rrh, rrb, user).
class ChannelState {
public:
    ChannelState(NetworkDims dims, std::vector<double> gains) : dims_(dims), gains_(std::move(gains))
    {
        dims_.validate();
        if (gains_.size() != dims_.num_links()) {
            throw MissingData("channel state needs one gain per (rrh, rrb, user): expected " +
                              std::to_string(dims_.num_links()) + ", got " + std::to_string(gains_.size()));
        }
        for (double g : gains_) {
            if (!(g >= 0.0) || !std::isfinite(g)) {
                throw std::domain_error("channel gains must be finite and nonnegative");
            }
        }
    }

    const NetworkDims& dims() const { return dims_; }
    double gain(std::size_t b, std::size_t z, std::size_t u) const { return gains_[link_index(dims_, b, z, u)]; }
    const std::vector<double>& raw() const { return gains_; }

private:
    NetworkDims dims_;
    std::vector<double> gains_;
};

/// Spectral efficiency (bits/s/Hz) every user could sustain on every RRB.
class CapacityMatrix {
public:
    CapacityMatrix(NetworkDims dims, std::vector<double> rates) : dims_(dims), rates_(std::move(rates))
    {
        dims_.validate();
        if (rates_.size() != dims_.num_links()) {
            throw MissingData("capacity matrix needs one rate per (rrh, rrb, user): expected " +
                              std::to_string(dims_.num_links()) + ", got " + std::to_string(rates_.size()));
        }
        for (double r : rates_) {
            if (!(r >= 0.0) || !std::isfinite(r)) {
                throw std::domain_error("capacities must be finite and nonnegative");
            }
        }
    }

    /// Every link at the same rate.
    static CapacityMatrix uniform(NetworkDims dims, double rate)
    {
        return CapacityMatrix(dims, std::vector<double>(dims.num_links(), rate));
    }

    const NetworkDims& dims() const { return dims_; }
    double rate(std::size_t b, std::size_t z, std::size_t u) const { return rates_[link_index(dims_, b, z, u)]; }
    const std::vector<double>& raw() const { return rates_; }

    bool operator==(const CapacityMatrix&) const = default;

private:
    NetworkDims dims_;
    std::vector<double> rates_;
};

/// Signal over noise plus interference from the RRBs with the same index z on
/// every other RRH.
inline double sinr(const ChannelState& channel, const PowerProfile& power, std::size_t b, std::size_t z,
                   std::size_t u)
{
    const NetworkDims& dims = channel.dims();
    if (power.dims() != dims) {
        throw std::invalid_argument("channel and power profile dimensions differ");
    }
    const double signal = power.tx_power(b, z) * channel.gain(b, z, u);
    double interference = 0.0;
    for (std::size_t other = 0; other < dims.num_rrhs; ++other) {
        if (other != b) {
            interference += power.tx_power(other, z) * channel.gain(other, z, u);
        }
    }
    const double denominator = power.noise_power() + interference;
    if (denominator <= 0.0) {
        throw std::domain_error("SINR undefined: zero noise and zero interference");
    }
    return signal / denominator;
}

inline double capacity(double sinr_linear)
{
    if (!(sinr_linear >= 0.0)) {
        throw std::domain_error("capacity of a negative SINR");
    }
    return std::log2(1.0 + sinr_linear);
}

inline CapacityMatrix capacity_matrix(const ChannelState& channel, const PowerProfile& power,
                                      const NetworkDims& dims)
{
    if (channel.dims() != dims || power.dims() != dims) {
        throw MissingData("channel state or power profile does not cover the network dimensions");
    }
    std::vector<double> rates(dims.num_links(), 0.0);
    for (std::size_t b = 0; b < dims.num_rrhs; ++b) {
        for (std::size_t z = 0; z < dims.num_rrbs_per_rrh; ++z) {
            for (std::size_t u = 0; u < dims.num_users; ++u) {
                rates[link_index(dims, b, z, u)] = capacity(sinr(channel, power, b, z, u));
            }
        }
    }
    return CapacityMatrix(dims, std::move(rates));
}

} // namespace cranidnc
