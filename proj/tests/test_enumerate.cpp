// Exhaustive-summation oracle. These tests pin the oracle itself to
// hand-computable cases; everything closed-form elsewhere is judged
// against this code, so it gets independent scrutiny first.

#include <catch2/catch_amalgamated.hpp>

#include <isingq/enumerate.hpp>
#include <isingq/random.hpp>

#include <array>
#include <cmath>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("enumeration cap validates and refuses oversized chains") {
    CHECK_NOTHROW(isingq::OracleLimit(2));
    CHECK_NOTHROW(isingq::OracleLimit(30));
    CHECK_THROWS_AS(isingq::OracleLimit(1), std::invalid_argument);
    CHECK_THROWS_AS(isingq::OracleLimit(31), std::invalid_argument);

    const isingq::ModelParams big(1.0, 0.0, 1.0, 21);
    CHECK_THROWS_AS(isingq::log_partition_brute(big), isingq::EnumerationRefused);
    const isingq::ModelParams small(1.0, 0.0, 1.0, 6);
    CHECK_THROWS_AS(isingq::log_partition_brute(small, isingq::OracleLimit(4)),
                    isingq::EnumerationRefused);
    CHECK_NOTHROW(isingq::log_partition_brute(small));
}

TEST_CASE("brute partition function matches hand enumeration at N = 2") {
    // Configurations and ring energies at J=1, B=0.5 (the single edge
    // counts twice): ++ -> -1, +- and -+ -> +2, -- -> -3.
    const isingq::ModelParams p(1.0, 0.5, 1.0, 2);
    const double z = std::exp(1.0) + 2.0 * std::exp(-2.0) + std::exp(3.0);
    CHECK_THAT(isingq::log_partition_brute(p), WithinRel(std::log(z), 1e-14));
}

TEST_CASE("brute partition function factorizes for decoupled spins") {
    // J = 0: Z = (2 cosh(beta B))^N.
    const isingq::ModelParams p(0.0, 1.0, 1.0, 3);
    CHECK_THAT(isingq::log_partition_brute(p),
               WithinRel(3.0 * std::log(2.0 * std::cosh(1.0)), 1e-14));
}

TEST_CASE("brute partition function counts states at infinite temperature") {
    const isingq::ModelParams p(1.3, -0.7, 0.0, 5);
    CHECK_THAT(isingq::log_partition_brute(p), WithinRel(5.0 * std::log(2.0), 1e-15));
}

TEST_CASE("brute partition function survives large exponents") {
    // The naive sum of e^{-beta E} overflows here; the max-subtracted
    // sum must not. The all-down ground state has E = -10J - 10B = -400,
    // the nearest excited level sits 140 higher, so at beta = 5 the sum
    // is e^2000 (1 + O(e^-700)) and log Z = 2000 to full precision.
    const isingq::ModelParams p(30.0, 10.0, 5.0, 10);
    const double lz = isingq::log_partition_brute(p);
    CHECK(std::isfinite(lz));
    CHECK_THAT(lz, WithinRel(2000.0, 1e-13));
}

TEST_CASE("brute correlators reproduce decoupled-spin values") {
    // Independent spins in a field: <S_k> = -tanh(beta B) and
    // <S_i S_j> = tanh^2(beta B).
    const isingq::ModelParams p(0.0, 1.0, 1.0, 4);
    const std::array<int, 1> site2 = {2};
    CHECK_THAT(isingq::correlator_brute(p, site2), WithinAbs(-std::tanh(1.0), 1e-14));
    const std::array<int, 2> pair = {1, 3};
    CHECK_THAT(isingq::correlator_brute(p, pair),
               WithinAbs(std::tanh(1.0) * std::tanh(1.0), 1e-14));
    const std::array<int, 3> triple = {1, 2, 4};
    CHECK_THAT(isingq::correlator_brute(p, triple),
               WithinAbs(-std::pow(std::tanh(1.0), 3.0), 1e-14));
}

TEST_CASE("brute correlators vanish by symmetry at zero field") {
    const isingq::ModelParams p(0.8, 0.0, 1.5, 6);
    const std::array<int, 1> site = {4};
    CHECK_THAT(isingq::correlator_brute(p, site), WithinAbs(0.0, 1e-14));
    const std::array<int, 3> triple = {1, 2, 5};
    CHECK_THAT(isingq::correlator_brute(p, triple), WithinAbs(0.0, 1e-14));
}

TEST_CASE("brute correlators validate their site lists") {
    const isingq::ModelParams p(1.0, 0.0, 1.0, 4);
    CHECK_THROWS_AS(isingq::correlator_brute(p, std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(isingq::correlator_brute(p, std::vector<int>{0}), std::invalid_argument);
    CHECK_THROWS_AS(isingq::correlator_brute(p, std::vector<int>{5}), std::invalid_argument);
    CHECK_THROWS_AS(isingq::correlator_brute(p, std::vector<int>{2, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(isingq::correlator_brute(p, std::vector<int>{3, 1}),
                    std::invalid_argument);
}

TEST_CASE("brute Husimi density at a pole picks out one configuration") {
    // theta = 0 at every site puts all coherent weight on the all-down
    // configuration, so the density is its Boltzmann probability.
    const isingq::ModelParams p(1.0, 0.5, 1.0, 2);
    const auto pole = isingq::PhasePoint::from_u(std::vector<double>{1.0, 1.0});
    const double z = std::exp(1.0) + 2.0 * std::exp(-2.0) + std::exp(3.0);
    CHECK_THAT(isingq::husimi_brute(p, pole), WithinRel(std::exp(3.0) / z, 1e-13));
}

TEST_CASE("brute Husimi density has unit total mass") {
    const isingq::ModelParams p(0.9, -0.4, 1.7, 3);
    const double mass =
        isingq::husimi_marginal_brute(p, std::vector<int>{}, std::vector<double>{});
    CHECK_THAT(mass, WithinAbs(1.0, 1e-13));
}

TEST_CASE("correlator expansion reproduces the brute Husimi density") {
    isingq::UniformSampler rng(0x5eedbeef);
    for (int n = 2; n <= 5; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const isingq::ModelParams p(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0),
                                        rng.range(0.0, 3.0), n);
            std::vector<double> u(static_cast<std::size_t>(n));
            for (double& v : u)
                v = rng.range(-1.0, 1.0);
            const auto point = isingq::PhasePoint::from_u(u);
            CHECK_THAT(isingq::husimi_expansion(p, point),
                       WithinAbs(isingq::husimi_brute(p, point), 1e-13));
        }
    }
}

TEST_CASE("keeping every site turns the marginal into the density itself") {
    const isingq::ModelParams p(1.1, 0.3, 0.8, 3);
    const std::vector<int> all = {1, 2, 3};
    const std::vector<double> u = {0.2, -0.7, 0.5};
    CHECK_THAT(isingq::husimi_marginal_brute(p, all, u),
               WithinAbs(isingq::husimi_brute(p, isingq::PhasePoint::from_u(u)), 1e-15));
}

TEST_CASE("marginalization validates kept-site lists") {
    const isingq::ModelParams p(1.0, 0.0, 1.0, 4);
    const std::vector<double> u1 = {0.5};
    CHECK_THROWS_AS(isingq::husimi_marginal_brute(p, std::vector<int>{0}, u1),
                    std::invalid_argument);
    CHECK_THROWS_AS(isingq::husimi_marginal_brute(p, std::vector<int>{1, 2}, u1),
                    std::invalid_argument);
}
