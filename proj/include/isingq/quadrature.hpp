/*
 * quadrature.hpp — recovering spin correlators from Husimi densities.
 *
 * The correlator expansion of the density (see husimi.hpp) makes each
 * site enter through the two monomials 1 and u_k. Against the flat
 * measure du over [-1, 1],
 *
 *     integral of 1 du = 2,    integral of u du = 0,
 *     integral of u * (1 - i u)/2 du = -i/3   for a spin value i = ±1,
 *
 * so attaching one factor u_k to the integrand projects out exactly the
 * terms whose subset contains site k and divides by -3 per projected
 * site. Inverting that gives the moment identity realized here:
 *
 *     <S_{r1} ... S_{rm}> = (-3)^m * integral of u_{r1}...u_{rm} mu d^m u.
 *
 * Concretely for the closed-form marginals: the one-site density
 * (1 + s*u)/2 has first moment s/3, and -3 * s/3 = -s = <S_z> since
 * s = -<S_z>; the pair density has mixed moment pair_coeff/9 plus
 * slope-squared pieces that the odd integrals kill, and 9 * that returns
 * <S_i S_j>.
 *
 * Every integrand is a polynomial of degree at most one per variable
 * times one extra factor of u per extracted site, so any Gauss-Legendre
 * rule with two or more nodes integrates it exactly; rule independence
 * beyond n = 2 is a test invariant rather than a numerical necessity.
 *
 * Nodes and weights: closed forms for n <= 2, Newton iteration on the
 * Legendre recurrence for larger n.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "husimi.hpp"

namespace isingq {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// The n-node Gauss-Legendre rule, exact for polynomials of degree
/// 2n - 1. Supports 1 <= n <= 64.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("gauss_legendre: node count must lie in [1, 64], got " +
                                    std::to_string(n));
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
        return rule;
    }
    if (n == 2) {
        const double x = 0.57735026918962576451;  // 1/sqrt(3)
        rule.nodes = {-x, x};
        rule.weights = {1.0, 1.0};
        return rule;
    }

    // Roots of P_n by Newton iteration from the Chebyshev-like initial
    // guess; the recurrence evaluates P_n and P_{n-1}, giving the
    // derivative via (1 - x^2) P_n' = n (P_{n-1} - x P_n).
    const auto legendre_pair = [n](double x) {
        // Returns {P_n(x), P_{n-1}(x)} by the three-term recurrence.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair<double, double>{p1, p0};
    };
    const auto derivative = [n](double x, double pn, double pn1) {
        return n * (pn1 - x * pn) / (1.0 - x * x);
    };

    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [pn, pn1] = legendre_pair(x);
            const double step = pn / derivative(x, pn, pn1);
            x -= step;
            if (std::fabs(step) < 1e-15)
                break;
        }
        // The guess sequence walks from the highest root down; odd n has
        // its middle root at exactly 0.
        if (n % 2 == 1 && i == (n - 1) / 2)
            x = 0.0;
        const auto [pn, pn1] = legendre_pair(x);
        const double dp = derivative(x, pn, pn1);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

namespace detail {

inline void check_correlator_rule(const QuadratureRule& rule, const char* who) {
    if (rule.size() < 2)
        throw std::invalid_argument(std::string(who) +
                                    ": rule needs at least 2 nodes for exactness");
}

}  // namespace detail

/// <S_k> from a one-site density: -3 times its first moment.
inline double extract_correlator(const MarginalDensity& density, std::span<const int> sites,
                                 const QuadratureRule& rule) {
    if (sites.size() != 1)
        throw std::invalid_argument(
            "extract_correlator: a one-site density takes exactly one site, got " +
            std::to_string(sites.size()));
    detail::check_correlator_rule(rule, "extract_correlator");
    double acc = 0.0;
    for (std::size_t a = 0; a < rule.size(); ++a)
        acc += rule.weights[a] * rule.nodes[a] * density.value(rule.nodes[a]);
    return -3.0 * acc;
}

/// <S_i S_j> from a two-site density: 9 times its mixed moment.
inline double extract_correlator(const JointDensity& density, std::span<const int> sites,
                                 const QuadratureRule& rule) {
    if (sites.size() != 2)
        throw std::invalid_argument(
            "extract_correlator: a two-site density takes exactly two sites, got " +
            std::to_string(sites.size()));
    if (sites[0] >= sites[1])
        throw std::invalid_argument("extract_correlator: sites must be strictly increasing");
    detail::check_correlator_rule(rule, "extract_correlator");
    double acc = 0.0;
    for (std::size_t a = 0; a < rule.size(); ++a)
        for (std::size_t b = 0; b < rule.size(); ++b)
            acc += rule.weights[a] * rule.weights[b] * rule.nodes[a] * rule.nodes[b] *
                   density.value(rule.nodes[a], rule.nodes[b]);
    return 9.0 * acc;
}

/// <prod_{k in sites} S_k> from any dim-variable density evaluated as
/// density(span of u values). Tensor-product quadrature over all dim
/// variables; cost rule.size()^dim evaluations, intended for small
/// chains where the full density itself is affordable. Sites are
/// 1-based, strictly increasing, within 1..dim.
template <typename Density>
double extract_correlator(const Density& density, std::size_t dim, std::span<const int> sites,
                          const QuadratureRule& rule) {
    if (sites.empty())
        throw std::invalid_argument("extract_correlator: empty site list");
    int prev = 0;
    for (int s : sites) {
        if (s < 1 || static_cast<std::size_t>(s) > dim)
            throw std::invalid_argument("extract_correlator: site index " + std::to_string(s) +
                                        " out of range [1, " + std::to_string(dim) + "]");
        if (s <= prev)
            throw std::invalid_argument("extract_correlator: sites must be strictly increasing");
        prev = s;
    }
    detail::check_correlator_rule(rule, "extract_correlator");

    std::vector<std::size_t> idx(dim, 0);
    std::vector<double> u(dim);
    double acc = 0.0;
    for (;;) {
        double w = 1.0;
        for (std::size_t k = 0; k < dim; ++k) {
            u[k] = rule.nodes[idx[k]];
            w *= rule.weights[idx[k]];
        }
        double moment = 1.0;
        for (int s : sites)
            moment *= u[static_cast<std::size_t>(s - 1)];
        acc += w * moment * density(std::span<const double>(u));

        // Odometer over the index vector.
        std::size_t k = 0;
        while (k < dim && ++idx[k] == rule.size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == dim)
            break;
    }

    double prefactor = 1.0;
    for (std::size_t k = 0; k < sites.size(); ++k)
        prefactor *= -3.0;
    return prefactor * acc;
}

}  // namespace isingq
