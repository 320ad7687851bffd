#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vfcsim/core/rng.hpp"

namespace vfc {

/// WINNER-style log-distance path loss fit. Defaults are the B1 urban set.
struct PathLossParams {
    double A = 22.7;
    double B = 41.0;
    double C = 20.0;
    double D = 5.0;
    double fc_ghz = 2.0;
    double d_min = 1.0;  // clamp to avoid the log singularity at d -> 0

    void validate() const {
        if (A <= 0 || C <= 0 || D <= 0 || fc_ghz <= 0 || d_min <= 0) {
            throw std::invalid_argument("path loss parameters must be positive");
        }
    }
};

/// PL = A*log10(d) + B + C*log10(fc/D), fc in GHz. Distances below d_min are
/// clamped; the caller is responsible for logging the clamp.
inline double path_loss_db(double distance_m, const PathLossParams& p) {
    const double d = std::max(distance_m, p.d_min);
    return p.A * std::log10(d) + p.B + p.C * std::log10(p.fc_ghz / p.D);
}

/// Distance-correlated shadow fading state, in dB.
struct ShadowState {
    double s_db = 0.0;
    double d_corr = 10.0;   // decorrelation distance, meters
    double sigma_db = 3.0;  // standard deviation of the innovation, dB
};

/// Autoregressive shadowing update. Mixing happens in the linear domain:
///   new = exp(-dd/dcorr) * 10^(S/10) + sqrt(1 - exp(-2 dd/dcorr)) * 10^(N(0,sigma)/10)
/// and the result is returned in dB. With dd = 0 the state is unchanged.
/// Note the mixture preserves sigma in the linear sense only: the dB-domain
/// standard deviation approaches sigma_db as dd/d_corr grows and is fully
/// refreshed (independent N(0, sigma)) once dd >= ~20 * d_corr.
inline double update_shadowing(const ShadowState& state, double delta_d, RngStream& rng) {
    if (delta_d < 0.0) throw std::invalid_argument("delta_d must be >= 0");
    const double w = std::exp(-delta_d / state.d_corr);
    if (delta_d == 0.0) return state.s_db;
    const double n_db = rng.normal(0.0, state.sigma_db);
    const double lin = w * std::pow(10.0, state.s_db / 10.0) +
                       std::sqrt(1.0 - w * w) * std::pow(10.0, n_db / 10.0);
    return 10.0 * std::log10(lin);
}

/// Rayleigh fast fading power gain: exponential with unit mean.
inline double sample_fast_fading(RngStream& rng) { return rng.exponential(1.0); }

/// g = S / PL * h with S and PL given in dB and h linear.
inline double channel_gain_linear(double shadow_db, double path_loss_db_value, double fading_h) {
    return std::pow(10.0, (shadow_db - path_loss_db_value) / 10.0) * fading_h;
}

/// Shannon capacity over an allocated bandwidth, gated by the link indicator.
inline double link_capacity_bps(bool active, double bandwidth_hz, double sinr_linear) {
    if (!active || bandwidth_hz <= 0.0) return 0.0;
    return bandwidth_hz * std::log2(1.0 + sinr_linear);
}

}  // namespace vfc
