/*
 * model.hpp — the periodic Ising chain in a longitudinal field, and the
 * spin-coherent-state overlaps that map configurations to phase-space
 * weights.
 *
 * Conventions used throughout the library:
 *
 *   H = -J * sum_{k=1..N} S_k S_{k+1}  +  B * sum_{k=1..N} S_k,
 *   site N+1 is identified with site 1 (the chain is a ring, so N >= 2).
 *
 *   Spin labels are the S_z eigenvalues i_k = +1 or -1 — NOT ±1/2. All
 *   closed forms downstream (transfer matrix, correlators, distributions)
 *   assume this normalization.
 *
 *   A per-site coherent state is parameterized by angles (theta, phi):
 *     |theta, phi> = sin(theta/2) e^{-i phi} |+>  +  cos(theta/2) |->
 *   with theta in [0, pi], phi in [0, 2 pi). The phase-space coordinate is
 *   u = cos(theta) in [-1, +1]; theta = 0 (u = +1) is the |-> state.
 *
 *   Chain coherent states are site-wise tensor products, so the overlap
 *   with a configuration |i_1 ... i_N> factorizes:
 *     |<z|i>|^2 = prod_k [ sin^2(theta_k/2)  if i_k = +1
 *                          cos^2(theta_k/2)  if i_k = -1 ]
 *               = prod_k (1 - i_k u_k) / 2,
 *   which is independent of every phi_k.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isingq {

/// Physical configuration consumed by every other module.
struct ModelParams {
    double J;           // bond coupling (energy units)
    double B;           // longitudinal field (energy units)
    double beta;        // inverse temperature, >= 0
    std::int64_t N;     // number of sites on the ring, >= 2

    ModelParams(double coupling, double field, double inverse_temperature,
                std::int64_t num_sites)
        : J(coupling), B(field), beta(inverse_temperature), N(num_sites) {
        if (!(std::isfinite(J) && std::isfinite(B) && std::isfinite(beta)))
            throw std::invalid_argument("ModelParams: J, B, beta must be finite");
        if (beta < 0.0)
            throw std::invalid_argument("ModelParams: beta must be >= 0");
        if (N < 2)
            throw std::invalid_argument(
                "ModelParams: N must be >= 2 (a periodic single site bonds to itself)");
    }
};

/// Length-N vector of spin labels, every entry exactly +1 or -1.
struct SpinConfiguration {
    std::vector<int> spins;

    explicit SpinConfiguration(std::vector<int> s) : spins(std::move(s)) {
        if (spins.empty())
            throw std::invalid_argument("SpinConfiguration: empty");
        for (int v : spins)
            if (v != 1 && v != -1)
                throw std::invalid_argument(
                    "SpinConfiguration: entries must be +1 or -1, got " + std::to_string(v));
    }

    // Bitmask decoding used by the enumeration code: bit k (zero-based)
    // carries site k+1, a set bit meaning spin +1.
    static SpinConfiguration from_mask(std::uint64_t mask, int num_sites) {
        std::vector<int> s(static_cast<std::size_t>(num_sites));
        for (int k = 0; k < num_sites; ++k)
            s[static_cast<std::size_t>(k)] = (mask >> k) & 1u ? +1 : -1;
        return SpinConfiguration(std::move(s));
    }

    std::size_t size() const { return spins.size(); }
};

/// Length-N vector of per-site coherent-state angles.
struct PhasePoint {
    struct Angle {
        double theta;   // [0, pi]
        double phi;     // [0, 2 pi)
    };

    std::vector<Angle> angles;

    explicit PhasePoint(std::vector<Angle> a) : angles(std::move(a)) {
        if (angles.empty())
            throw std::invalid_argument("PhasePoint: empty");
        for (const Angle& ang : angles) {
            if (!(ang.theta >= 0.0 && ang.theta <= std::numbers::pi))
                throw std::invalid_argument("PhasePoint: theta must lie in [0, pi]");
            if (!(ang.phi >= 0.0 && ang.phi < 2.0 * std::numbers::pi))
                throw std::invalid_argument("PhasePoint: phi must lie in [0, 2 pi)");
        }
    }

    /// Point with the given u = cos(theta) coordinates and phi = 0.
    static PhasePoint from_u(std::span<const double> u) {
        std::vector<Angle> a;
        a.reserve(u.size());
        for (double v : u) {
            if (!(v >= -1.0 && v <= 1.0))
                throw std::invalid_argument("PhasePoint::from_u: u must lie in [-1, 1]");
            a.push_back(Angle{std::acos(v), 0.0});
        }
        return PhasePoint(std::move(a));
    }

    std::size_t size() const { return angles.size(); }

    /// Phase-space coordinate u_k = cos(theta_k), zero-based site index.
    double u(std::size_t k) const { return std::cos(angles[k].theta); }
};

namespace detail {

inline void require_equal_length(std::size_t got, std::size_t want, const char* who) {
    if (got != want)
        throw std::invalid_argument(std::string(who) + ": length mismatch (" +
                                    std::to_string(got) + " vs " + std::to_string(want) + ")");
}

}  // namespace detail

/// Configuration energy -J sum_k i_k i_{k+1} + B sum_k i_k with the ring wrap.
inline double energy(const SpinConfiguration& config, const ModelParams& params) {
    detail::require_equal_length(config.size(), static_cast<std::size_t>(params.N), "energy");
    const std::size_t n = config.size();
    // Bond and field sums are small integers; accumulate exactly, scale once.
    long long bond = 0, field = 0;
    for (std::size_t k = 0; k < n; ++k) {
        bond += config.spins[k] * config.spins[(k + 1) % n];
        field += config.spins[k];
    }
    return -params.J * static_cast<double>(bond) + params.B * static_cast<double>(field);
}

///// |<z|i>|^2: probability of the configuration in the coherent state.
/// Independent of every phi_k.
inline double overlap_weight(const PhasePoint& point, const SpinConfiguration& config) {
    detail::require_equal_length(config.size(), point.size(), "overlap_weight");
    double w = 1.0;
    for (std::size_t k = 0; k < config.size(); ++k) {
        const double half = 0.5 * point.angles[k].theta;
        const double s = std::sin(half);
        const double c = std::cos(half);
        w *= (config.spins[k] == +1) ? s * s : c * c;
    }
    return w;
}

///// <z|i>: complex amplitude whose squared magnitude is overlap_weight.
inline std::complex<double> overlap_amplitude(const PhasePoint& point,
                                              const SpinConfiguration& config) {
    detail::require_equal_length(config.size(), point.size(), "overlap_amplitude");
    std::complex<double> amp(1.0, 0.0);
    for (std::size_t k = 0; k < config.size(); ++k) {
        const double half = 0.5 * point.angles[k].theta;
        if (config.spins[k] == +1)
            amp *= std::sin(half) * std::polar(1.0, -point.angles[k].phi);
        else
            amp *= std::cos(half);
    }
    return amp;
}

}  // namespace isingq
