#include "doctest.h"

#include "iris/privacy.hpp"

#include <algorithm>
#include <cmath>

using namespace iris;

namespace {

// The walkthrough trace: 55 asked for 65, 62 for 70, 69 for 73, target 75.
QueryTrace walkthrough_trace() {
    QueryTrace trace;
    trace.requester = 44;
    trace.target = 75;
    trace.terminal = 76;
    trace.steps = {
        {55, 68, 65, 62, 20},
        {62, 73, 70, 69, 13},
        {69, 74, 73, 76, 6},
    };
    return trace;
}

IrisParams walkthrough_params() {
    IrisParams params;
    params.alpha = 0.25;
    params.delta = 22;
    return params;
}

} // namespace

TEST_CASE("lone observers") {
    RingParams ring{7};
    PrivacyReport report =
        analyze_trace(walkthrough_trace(), walkthrough_params(), ColluderModel{}, ring);
    REQUIRE(report.observations.size() == 3);

    const PrivacyObservation& first = report.observations[0];
    CHECK(first.node == 55);
    CHECK_FALSE(first.is_colluder);
    CHECK(first.upper_bound == 77);
    CHECK(first.prior == 22);
    CHECK(first.posterior == 12); // cw(65, 77)
    CHECK(first.ratio == doctest::Approx(12.0 / 22.0));
    CHECK(first.correct_estimate);
    CHECK(first.ratio >= 0.25);

    for (const PrivacyObservation& obs : report.observations) {
        CHECK(obs.posterior <= obs.prior);
        CHECK(obs.correct_estimate);
        CHECK(obs.ratio >= 0.25);
    }
    REQUIRE(report.min_ratio.has_value());
}

TEST_CASE("colluders inherit the first colluder's bound") {
    RingParams ring{7};
    ColluderModel model;
    model.colluders = {55, 62};
    PrivacyReport report =
        analyze_trace(walkthrough_trace(), walkthrough_params(), model, ring);

    const PrivacyObservation& at62 = report.observations[1];
    CHECK(at62.is_colluder);
    CHECK(at62.upper_bound == 77);     // bound of the first colluder, node 55
    CHECK(at62.prior == 15);           // 22 - cw(55, 62)
    CHECK(at62.posterior == 7);        // cw(70, 77)
    CHECK(at62.ratio == doctest::Approx(7.0 / 15.0));
}

TEST_CASE("maximal delta yields the maximal anonymity set") {
    RingParams ring{7};
    QueryTrace trace;
    trace.target = 75;
    trace.steps = {{55, 68, 65, 62, 20}};
    IrisParams params;
    params.alpha = 0.25;
    params.delta = ring.size() - 1;
    PrivacyReport report = analyze_trace(trace, params, ColluderModel{}, ring);
    REQUIRE(report.observations.size() == 1);
    CHECK(report.observations[0].prior == ring.size() - 1);
}

TEST_CASE("adding colluders never increases a prior or ratio") {
    Network net = generate_network(RingParams{16}, 64, 0.0, 5);
    IrisParams params;
    params.alpha = 0.25;
    params.delta = net.ring.size() / 4;
    SeededSource rng(6);
    for (int i = 0; i < 30; ++i) {
        Id requester = net.nodes[rng.uniform_below(net.nodes.size())];
        Id target = rng.uniform_below(net.ring.size());
        auto [data, trace] = iris_retrieve(net, requester, target, params, rng);
        (void)data;

        PrivacyReport lone = analyze_trace(trace, params, ColluderModel{}, net.ring);
        ColluderModel all;
        all.colluders.insert(net.nodes.begin(), net.nodes.end());
        PrivacyReport shared = analyze_trace(trace, params, all, net.ring);
        REQUIRE(lone.observations.size() == shared.observations.size());
        for (std::size_t s = 0; s < lone.observations.size(); ++s) {
            CHECK(shared.observations[s].prior <= lone.observations[s].prior);
            CHECK(shared.observations[s].ratio <= lone.observations[s].ratio + 1e-12);
        }
    }
}

TEST_CASE("every correct-estimate ratio respects the alpha floor") {
    Network net = generate_network(RingParams{23}, 1000, 0.5, 8);
    IrisParams params;
    params.alpha = 0.25;
    params.delta = net.ring.size() / 4;
    ColluderModel model;
    model.colluders.insert(net.adversaries.begin(), net.adversaries.end());
    SeededSource rng(12);
    for (int i = 0; i < 60; ++i) {
        Id requester;
        do {
            requester = net.nodes[rng.uniform_below(net.nodes.size())];
        } while (net.is_adversary(requester));
        Id target = rng.uniform_below(net.ring.size());
        auto [data, trace] = iris_retrieve(net, requester, target, params, rng);
        (void)data;
        PrivacyReport report = analyze_trace(trace, params, model, net.ring);
        for (const PrivacyObservation& obs : report.observations)
            if (obs.correct_estimate)
                CHECK(obs.ratio >= params.alpha);
    }
}

TEST_CASE("minimum ratio across reports") {
    PrivacyReport a;
    a.min_ratio = 0.5;
    PrivacyReport b;
    b.min_ratio = 0.3;
    PrivacyReport c;
    c.min_ratio = 0.9;
    CHECK(min_privacy_ratio({a}) == doctest::Approx(0.5));
    CHECK(min_privacy_ratio({a, b, c}) == doctest::Approx(0.3));
    CHECK_THROWS_AS(min_privacy_ratio({}), std::invalid_argument);
}

TEST_CASE("analytic probabilities") {
    CHECK(analytic_probability(Cond::eq, Cond::eq, 15, 10, 22) == doctest::Approx(1.0 / 12.0));
    CHECK(analytic_probability(Cond::le, Cond::eq, 22, 10, 22) == doctest::Approx(1.0));
    CHECK(analytic_probability(Cond::le, Cond::le, 35, 1, 100) ==
          doctest::Approx(68.0 / 198.0));
    CHECK_THROWS_AS(analytic_probability(Cond::eq, Cond::eq, 5, 9, 22), std::domain_error);
    CHECK_THROWS_AS(analytic_probability(Cond::eq, Cond::eq, 30, 9, 22), std::domain_error);
}

TEST_CASE("cumulative kind is monotone in o and reaches one") {
    std::uint64_t delta = 64;
    for (std::uint64_t x : {std::uint64_t{1}, std::uint64_t{5}, std::uint64_t{20}}) {
        double prev = 0.0;
        for (std::uint64_t o = x + 1; o <= delta; ++o) {
            double p = analytic_probability(Cond::le, Cond::le, o, x, delta);
            CHECK(p >= prev);
            prev = p;
        }
        CHECK(prev == doctest::Approx(1.0));
        CHECK(analytic_probability(Cond::le, Cond::eq, delta, x, delta) == doctest::Approx(1.0));
    }
}

TEST_CASE("analytic values match exhaustive enumeration") {
    // Enumerate every (target, reference) pair with 1 <= r < target <= delta,
    // the population the closed forms describe.
    std::uint64_t delta = 60;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> population;
    for (std::uint64_t t = 1; t <= delta; ++t)
        for (std::uint64_t r = 1; r < t; ++r)
            population.emplace_back(t, r);

    for (std::uint64_t x : {std::uint64_t{1}, std::uint64_t{7}, std::uint64_t{25}}) {
        for (std::uint64_t o : {x + 1, x + 5, delta - 1}) {
            for (Cond tc : {Cond::eq, Cond::le}) {
                for (Cond rc : {Cond::eq, Cond::le}) {
                    auto emp = empirical_probability(population, tc, rc, o, x);
                    REQUIRE(emp.has_value());
                    // eq-ref kinds condition on a uniform slice, le-ref on the
                    // triangular population the closed forms assume.
                    CHECK(*emp == doctest::Approx(analytic_probability(tc, rc, o, x, delta))
                                      .epsilon(0.02));
                }
            }
        }
    }
}

TEST_CASE("empirical estimates on large enumerated populations are tight") {
    std::uint64_t delta = 500;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> population;
    for (std::uint64_t t = 1; t <= delta; ++t)
        for (std::uint64_t r = 1; r < t; ++r)
            population.emplace_back(t, r);
    REQUIRE(population.size() >= 100000);

    for (std::uint64_t x : {std::uint64_t{3}, std::uint64_t{50}}) {
        std::uint64_t o = 175;
        auto eq_eq = empirical_probability(population, Cond::eq, Cond::eq, o, x);
        auto eq_le = empirical_probability(population, Cond::eq, Cond::le, o, x);
        REQUIRE(eq_eq.has_value());
        REQUIRE(eq_le.has_value());
        CHECK(std::abs(*eq_eq - analytic_probability(Cond::eq, Cond::eq, o, x, delta)) < 0.01);
        CHECK(std::abs(*eq_le - analytic_probability(Cond::eq, Cond::le, o, x, delta)) < 0.01);
    }
}

TEST_CASE("empty conditioning event is reported as undefined") {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> samples = {{10, 5}, {20, 7}};
    CHECK_FALSE(empirical_probability(samples, Cond::eq, Cond::eq, 15, 99).has_value());
    auto one = empirical_probability(samples, Cond::eq, Cond::eq, 10, 5);
    REQUIRE(one.has_value());
    CHECK(*one == doctest::Approx(1.0));
}
