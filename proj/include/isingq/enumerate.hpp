/*
 * enumerate.hpp — exhaustive-summation reference for small chains.
 *
 * Everything here walks all 2^N spin configurations explicitly; it is the
 * ground truth the closed-form code is validated against. Configurations
 * are indexed by bitmask (bit k, zero-based, carries site k+1; a set bit
 * means spin +1), so results and golden files are reproducible.
 *
 * Boltzmann sums subtract the largest exponent before exponentiating, so
 * the oracle stays valid at large beta*|J|*N where e^{-beta E} overflows
 * naively.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"

namespace isingq {

/// Thrown when a brute-force routine is asked for a chain it refuses to
/// enumerate.
struct EnumerationRefused : std::domain_error {
    using std::domain_error::domain_error;
};

/// Cap on the chain length the enumeration routines accept.
struct OracleLimit {
    int max_sites = 20;

    OracleLimit() = default;
    explicit OracleLimit(int cap) : max_sites(cap) {
        if (cap < 2 || cap > 30)
            throw std::invalid_argument("OracleLimit: max_sites must lie in [2, 30]");
    }
};

namespace detail {

inline int checked_sites(const ModelParams& params, const OracleLimit& limit,
                         const char* who) {
    if (params.N > limit.max_sites)
        throw EnumerationRefused(std::string(who) + ": N = " + std::to_string(params.N) +
                                 " exceeds the enumeration cap " +
                                 std::to_string(limit.max_sites));
    return static_cast<int>(params.N);
}

// Energy of the configuration encoded by `mask`; identical arithmetic to
// energy(SpinConfiguration::from_mask(mask, n), params).
inline double mask_energy(std::uint64_t mask, int n, const ModelParams& params) {
    long long bond = 0, field = 0;
    for (int k = 0; k < n; ++k) {
        const int ik = (mask >> k) & 1u ? +1 : -1;
        const int ik1 = (mask >> ((k + 1) % n)) & 1u ? +1 : -1;
        bond += ik * ik1;
        field += ik;
    }
    return -params.J * static_cast<double>(bond) + params.B * static_cast<double>(field);
}

// Largest value of -beta*E over all configurations; subtracted before
// exponentiating in every Boltzmann sum below.
inline double max_log_weight(int n, const ModelParams& params) {
    const std::uint64_t count = std::uint64_t{1} << n;
    double m = -std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < count; ++mask)
        m = std::max(m, -params.beta * mask_energy(mask, n, params));
    return m;
}

inline void check_sites_list(std::span<const int> sites, int n, const char* who) {
    if (sites.empty())
        throw std::invalid_argument(std::string(who) + ": empty site list");
    int prev = 0;
    for (int s : sites) {
        if (s < 1 || s > n)
            throw std::invalid_argument(std::string(who) + ": site index " +
                                        std::to_string(s) + " out of range [1, " +
                                        std::to_string(n) + "]");
        if (s <= prev)
            throw std::invalid_argument(std::string(who) +
                                        ": site indices must be strictly increasing");
        prev = s;
    }
}

}  // namespace detail

/// log Z by direct summation over all 2^N configurations.
inline double log_partition_brute(const ModelParams& params, const OracleLimit& limit = {}) {
    const int n = detail::checked_sites(params, limit, "log_partition_brute");
    const std::uint64_t count = std::uint64_t{1} << n;
    const double m = detail::max_log_weight(n, params);
    double acc = 0.0;
    for (std::uint64_t mask = 0; mask < count; ++mask)
        acc += std::exp(-params.beta * detail::mask_energy(mask, n, params) - m);
    return m + std::log(acc);
}

/// Thermal expectation <S_{r1} ... S_{rm}> by direct summation. Site
/// indices are 1-based, strictly increasing.
inline double correlator_brute(const ModelParams& params, std::span<const int> sites,
                               const OracleLimit& limit = {}) {
    const int n = detail::checked_sites(params, limit, "correlator_brute");
    detail::check_sites_list(sites, n, "correlator_brute");
    const std::uint64_t count = std::uint64_t{1} << n;
    const double m = detail::max_log_weight(n, params);
    double num = 0.0, den = 0.0;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        const double w = std::exp(-params.beta * detail::mask_energy(mask, n, params) - m);
        int prod = 1;
        for (int s : sites)
            prod *= (mask >> (s - 1)) & 1u ? +1 : -1;
        num += prod * w;
        den += w;
    }
    return num / den;
}

/// Husimi density by its definition: (1/Z) sum_i e^{-beta E_i} |<z|i>|^2.
inline double husimi_brute(const ModelParams& params, const PhasePoint& point,
                           const OracleLimit& limit = {}) {
    const int n = detail::checked_sites(params, limit, "husimi_brute");
    detail::require_equal_length(point.size(), static_cast<std::size_t>(n), "husimi_brute");

    // Per-site overlap factors; phi never enters.
    std::vector<double> up(static_cast<std::size_t>(n)), down(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double half = 0.5 * point.angles[static_cast<std::size_t>(k)].theta;
        const double s = std::sin(half);
        const double c = std::cos(half);
        up[static_cast<std::size_t>(k)] = s * s;
        down[static_cast<std::size_t>(k)] = c * c;
    }

    const std::uint64_t count = std::uint64_t{1} << n;
    const double m = detail::max_log_weight(n, params);
    double num = 0.0, den = 0.0;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        const double w = std::exp(-params.beta * detail::mask_energy(mask, n, params) - m);
        double overlap = 1.0;
        for (int k = 0; k < n; ++k)
            overlap *= (mask >> k) & 1u ? up[static_cast<std::size_t>(k)]
                                        : down[static_cast<std::size_t>(k)];
        num += w * overlap;
        den += w;
    }
    return num / den;
}

/// Husimi density through its correlator expansion:
///   mu = 2^{-N} sum over subsets S of (-1)^{|S|} <prod_{k in S} S_k> prod_{k in S} u_k.
/// Exists to validate the expansion against husimi_brute; cost is 4^N.
inline double husimi_expansion(const ModelParams& params, const PhasePoint& point,
                               const OracleLimit& limit = {}) {
    const int n = detail::checked_sites(params, limit, "husimi_expansion");
    detail::require_equal_length(point.size(), static_cast<std::size_t>(n), "husimi_expansion");

    std::vector<double> u(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        u[static_cast<std::size_t>(k)] = point.u(static_cast<std::size_t>(k));

    const std::uint64_t count = std::uint64_t{1} << n;
    double acc = 0.0;
    std::vector<int> sites;
    for (std::uint64_t subset = 0; subset < count; ++subset) {
        double term = std::popcount(subset) % 2 == 0 ? 1.0 : -1.0;
        if (subset != 0) {
            sites.clear();
            for (int k = 0; k < n; ++k)
                if ((subset >> k) & 1u) {
                    sites.push_back(k + 1);
                    term *= u[static_cast<std::size_t>(k)];
                }
            term *= correlator_brute(params, sites, limit);
        }
        acc += term;
    }
    return std::ldexp(acc, -n);
}

/// Marginal of husimi_brute onto the listed sites (1-based, strictly
/// increasing; empty list integrates everything and returns the total
/// mass). The integrated dimensions use the two-node Gauss-Legendre rule,
/// which is exact here because the density is multilinear in the u_k.
inline double husimi_marginal_brute(const ModelParams& params, std::span<const int> sites,
                                    std::span<const double> u, const OracleLimit& limit = {}) {
    const int n = detail::checked_sites(params, limit, "husimi_marginal_brute");
    if (!sites.empty())
        detail::check_sites_list(sites, n, "husimi_marginal_brute");
    detail::require_equal_length(u.size(), sites.size(), "husimi_marginal_brute");

    // Two-node rule on [-1, 1]: nodes ±1/sqrt(3), weights both 1.
    const double node = 0.57735026918962573;

    std::vector<int> free_sites;
    for (int k = 1; k <= n; ++k)
        if (std::find(sites.begin(), sites.end(), k) == sites.end())
            free_sites.push_back(k);

    std::vector<double> full(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < sites.size(); ++i)
        full[static_cast<std::size_t>(sites[i] - 1)] = u[i];

    const std::uint64_t combos = std::uint64_t{1} << free_sites.size();
    double acc = 0.0;
    for (std::uint64_t c = 0; c < combos; ++c) {
        for (std::size_t i = 0; i < free_sites.size(); ++i)
            full[static_cast<std::size_t>(free_sites[i] - 1)] = (c >> i) & 1u ? node : -node;
        acc += husimi_brute(params, PhasePoint::from_u(full), limit);
    }
    return acc;  // every weight product is 1
}

}  // namespace isingq
