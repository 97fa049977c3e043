// Gauss-Legendre rules and the moment identity that recovers spin
// correlators from phase-space densities: node/weight structure,
// polynomial exactness, round trips against the closed-form observables,
// and rule independence.

#include <catch2/catch_amalgamated.hpp>

#include <isingq/enumerate.hpp>
#include <isingq/husimi.hpp>
#include <isingq/model.hpp>
#include <isingq/quadrature.hpp>
#include <isingq/random.hpp>

#include <array>
#include <cmath>
#include <span>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("small rules have their textbook closed forms") {
    const auto one = isingq::gauss_legendre(1);
    REQUIRE(one.size() == 1);
    CHECK(one.nodes[0] == 0.0);
    CHECK(one.weights[0] == 2.0);

    const auto two = isingq::gauss_legendre(2);
    REQUIRE(two.size() == 2);
    CHECK_THAT(two.nodes[1], WithinAbs(std::sqrt(1.0 / 3.0), 1e-15));
    CHECK(two.nodes[0] == -two.nodes[1]);
    CHECK(two.weights[0] == 1.0);
    CHECK(two.weights[1] == 1.0);

    const auto three = isingq::gauss_legendre(3);
    REQUIRE(three.size() == 3);
    CHECK_THAT(three.nodes[0], WithinAbs(-std::sqrt(0.6), 1e-15));
    CHECK(three.nodes[1] == 0.0);
    CHECK_FALSE(std::signbit(three.nodes[1]));
    CHECK_THAT(three.weights[0], WithinAbs(5.0 / 9.0, 1e-15));
    CHECK_THAT(three.weights[1], WithinAbs(8.0 / 9.0, 1e-15));

    CHECK_THROWS_AS(isingq::gauss_legendre(0), std::invalid_argument);
    CHECK_THROWS_AS(isingq::gauss_legendre(-3), std::invalid_argument);
    CHECK_THROWS_AS(isingq::gauss_legendre(65), std::invalid_argument);
}

TEST_CASE("rules are symmetric, ordered, and normalized") {
    for (int n = 1; n <= 64; ++n) {
        const auto rule = isingq::gauss_legendre(n);
        REQUIRE(rule.size() == static_cast<std::size_t>(n));
        CAPTURE(n);

        double mass = 0.0;
        for (int i = 0; i < n; ++i) {
            mass += rule.weights[static_cast<std::size_t>(i)];
            CHECK(rule.weights[static_cast<std::size_t>(i)] > 0.0);
            CHECK(rule.nodes[static_cast<std::size_t>(i)] > -1.0);
            CHECK(rule.nodes[static_cast<std::size_t>(i)] < 1.0);
            if (i > 0)
                CHECK(rule.nodes[static_cast<std::size_t>(i)] >
                      rule.nodes[static_cast<std::size_t>(i - 1)]);
            // Exact reflection symmetry, node and weight alike.
            CHECK(rule.nodes[static_cast<std::size_t>(i)] ==
                  -rule.nodes[static_cast<std::size_t>(n - 1 - i)]);
            CHECK(rule.weights[static_cast<std::size_t>(i)] ==
                  rule.weights[static_cast<std::size_t>(n - 1 - i)]);
        }
        CHECK_THAT(mass, WithinAbs(2.0, 1e-14));

        if (n % 2 == 1)
            CHECK(rule.nodes[static_cast<std::size_t>(n / 2)] == 0.0);
    }
}

TEST_CASE("rules integrate polynomials up to degree 2n - 1 exactly") {
    // Even monomials have integral 2/(k+1); odd ones vanish.
    const auto moment = [](const isingq::QuadratureRule& rule, int k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], k);
        return acc;
    };

    const auto two = isingq::gauss_legendre(2);
    CHECK_THAT(moment(two, 2), WithinRel(2.0 / 3.0, 1e-15));
    CHECK_THAT(moment(two, 3), WithinAbs(0.0, 1e-15));

    const auto five = isingq::gauss_legendre(5);
    CHECK_THAT(moment(five, 8), WithinRel(2.0 / 9.0, 1e-14));
    CHECK_THAT(moment(five, 9), WithinAbs(0.0, 1e-14));

    const auto big = isingq::gauss_legendre(64);
    CHECK_THAT(moment(big, 126), WithinRel(2.0 / 127.0, 1e-11));
    CHECK_THAT(moment(big, 127), WithinAbs(0.0, 1e-14));

    // One degree past exactness the n = 2 rule must visibly miss:
    // integral of u^4 is 2/5, the rule gives 2/9.
    CHECK_THAT(moment(two, 4), WithinRel(2.0 / 9.0, 1e-14));
}

TEST_CASE("moment identity inverts the coefficient records") {
    const auto rule = isingq::gauss_legendre(4);
    const std::array<int, 1> one_site = {1};
    const std::array<int, 2> two_sites = {1, 2};

    // (1 + s u)/2 has first moment s/3, so the extraction returns -s.
    CHECK_THAT(isingq::extract_correlator(isingq::MarginalDensity{0.4}, one_site, rule),
               WithinAbs(-0.4, 1e-15));
    CHECK_THAT(isingq::extract_correlator(isingq::MarginalDensity{0.0}, one_site, rule),
               WithinAbs(0.0, 1e-15));
    // Linearity in the slope.
    const double a = isingq::extract_correlator(isingq::MarginalDensity{0.25}, one_site, rule);
    const double b = isingq::extract_correlator(isingq::MarginalDensity{0.75}, one_site, rule);
    CHECK_THAT(b, WithinAbs(3.0 * a, 1e-14));

    // The mixed moment of the joint record returns pair_coeff, with the
    // slope pieces killed by parity.
    CHECK_THAT(isingq::extract_correlator(isingq::JointDensity{0.3, 0.5}, two_sites, rule),
               WithinAbs(0.5, 1e-13));
    CHECK_THAT(isingq::extract_correlator(isingq::JointDensity{-0.9, 0.0}, two_sites, rule),
               WithinAbs(0.0, 1e-13));
}

TEST_CASE("extraction round-trips the closed-form observables") {
    isingq::UniformSampler rng(0x6A0552);
    const auto rule = isingq::gauss_legendre(3);
    for (int rep = 0; rep < 100; ++rep) {
        const isingq::ModelParams p(rng.range(-2.0, 2.0), rng.range(-2.0, 2.0),
                                    rng.range(0.0, 4.0), 2 + static_cast<std::int64_t>(
                                                                 rng.integer(0, 10)));
        CAPTURE(p.J, p.B, p.beta, p.N);
        const std::array<int, 1> one_site = {1};
        CHECK_THAT(isingq::extract_correlator(isingq::one_point(p), one_site, rule),
                   WithinAbs(isingq::magnetization(p), 1e-12));

        const std::int64_t j = 2 + rng.integer(0, p.N - 2);
        const std::array<int, 2> two_sites = {1, static_cast<int>(j)};
        CHECK_THAT(isingq::extract_correlator(isingq::joint(p, 1, j), two_sites, rule),
                   WithinAbs(isingq::two_point(p, 1, j), 1e-12));
    }
}

TEST_CASE("extraction is independent of the rule size") {
    const isingq::ModelParams p(1.2, -0.8, 1.7, 9);
    const std::array<int, 1> one_site = {1};
    const std::array<int, 2> two_sites = {1, 4};
    const auto r2 = isingq::gauss_legendre(2);

    const double m2 = isingq::extract_correlator(isingq::one_point(p), one_site, r2);
    const double c2 = isingq::extract_correlator(isingq::joint(p, 1, 4), two_sites, r2);
    for (int n : {4, 8}) {
        const auto rule = isingq::gauss_legendre(n);
        CHECK_THAT(isingq::extract_correlator(isingq::one_point(p), one_site, rule),
                   WithinAbs(m2, 1e-12));
        CHECK_THAT(isingq::extract_correlator(isingq::joint(p, 1, 4), two_sites, rule),
                   WithinAbs(c2, 1e-12));
    }
}

TEST_CASE("tensor-product extraction recovers correlators from the full density") {
    // Wrap the exhaustively computed N-site density as a callable and
    // pull one-, two-, three- and four-point functions back out. This
    // exercises the full (-3)^m prefactor chain against the independent
    // configuration-sum oracle.
    const isingq::ModelParams p(0.9, 0.6, 1.1, 4);
    const auto density = [&p](std::span<const double> u) {
        return isingq::husimi_brute(p, isingq::PhasePoint::from_u(u));
    };
    const auto rule = isingq::gauss_legendre(2);

    const auto expect = [&p](std::span<const int> sites) {
        return isingq::correlator_brute(p, sites);
    };

    const std::array<int, 1> s1 = {2};
    const std::array<int, 2> s2 = {1, 3};
    const std::array<int, 3> s3 = {1, 2, 4};
    const std::array<int, 4> s4 = {1, 2, 3, 4};
    CHECK_THAT(isingq::extract_correlator(density, 4, s1, rule), WithinAbs(expect(s1), 1e-10));
    CHECK_THAT(isingq::extract_correlator(density, 4, s2, rule), WithinAbs(expect(s2), 1e-10));
    CHECK_THAT(isingq::extract_correlator(density, 4, s3, rule), WithinAbs(expect(s3), 1e-10));
    CHECK_THAT(isingq::extract_correlator(density, 4, s4, rule), WithinAbs(expect(s4), 1e-10));

    // A larger rule must agree: the density is multilinear.
    const auto rule8 = isingq::gauss_legendre(8);
    CHECK_THAT(isingq::extract_correlator(density, 4, s3, rule8),
               WithinAbs(isingq::extract_correlator(density, 4, s3, rule), 1e-12));
}

TEST_CASE("extraction validates sites and rules") {
    const auto rule = isingq::gauss_legendre(3);
    const auto tiny = isingq::gauss_legendre(1);
    const isingq::MarginalDensity md{0.2};
    const isingq::JointDensity jd{0.2, 0.1};

    const std::array<int, 1> one_site = {1};
    const std::array<int, 2> two_sites = {1, 2};
    const std::array<int, 2> descending = {3, 1};
    const std::array<int, 2> repeated = {2, 2};

    CHECK_THROWS_AS(isingq::extract_correlator(md, two_sites, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(jd, one_site, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(jd, descending, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(jd, repeated, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(md, one_site, tiny), std::invalid_argument);

    const auto flat = [](std::span<const double>) { return 0.125; };
    const std::array<int, 1> zero_site = {0};
    const std::array<int, 1> beyond = {4};
    const std::array<int, 0> empty = {};
    CHECK_THROWS_AS(isingq::extract_correlator(flat, 3, zero_site, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(flat, 3, beyond, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(flat, 3, empty, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(flat, 3, descending, rule), std::invalid_argument);
    CHECK_THROWS_AS(isingq::extract_correlator(flat, 3, one_site, tiny), std::invalid_argument);
}
