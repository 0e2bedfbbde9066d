#include <doctest.h>

#include "raman3d/protocol.hpp"

using namespace raman3d;

namespace {

NoiseBudget budget_with(double p_spon, double p_mode) {
    NoiseBudget b{};
    b.p_spon = p_spon;
    b.p_mode = p_mode;
    b.chi = p_mode / (1.0 - p_mode);
    b.strategy = MatchingStrategy::exact();
    return b;
}

} // namespace

TEST_CASE("required_pc") {
    CHECK(required_pc(0.01, 0.0) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(required_pc(0.01, 0.666) == doctest::Approx(3.34e-3).epsilon(1e-12));
    CHECK(required_pc(0.01, 0.004) == doctest::Approx(9.96e-3).epsilon(1e-12));
    // round-trip: delivered imperfection p_c/(1-p_spon) equals delta_f
    for (double ps : {0.0, 0.3, 0.95})
        CHECK(required_pc(0.02, ps) / (1.0 - ps) == doctest::Approx(0.02).epsilon(1e-14));
    CHECK_THROWS_AS(required_pc(0.0, 0.1), DomainError);
    CHECK_THROWS_AS(required_pc(0.5, 0.1), DomainError);
    CHECK_THROWS_AS(required_pc(0.01, 1.0), DomainError);
}

TEST_CASE("mixed_state_fidelity") {
    CHECK(mixed_state_fidelity(0.0) == 1.0);
    CHECK(mixed_state_fidelity(1.0) == 0.5);
    CHECK_THROWS_AS(mixed_state_fidelity(-0.1), DomainError);
}

TEST_CASE("success_metrics: ideal budget") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    const ProtocolMetrics m = success_metrics(pp, budget_with(0.0, 0.0));
    CHECK(m.p_click_per_round == doctest::Approx(0.02).epsilon(1e-15));
    CHECK(m.expected_rounds == doctest::Approx(50.0).epsilon(1e-12));
    CHECK(m.c0 == 0.0);
    CHECK(m.state_fidelity == 1.0);
}

TEST_CASE("success_metrics: repetition overhead scales as 1/(1-p_spon)") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    const ProtocolMetrics lossless = success_metrics(pp, budget_with(0.0, 0.0));
    const ProtocolMetrics lossy = success_metrics(pp, budget_with(0.666, 0.0092));
    CHECK(lossy.expected_rounds / lossless.expected_rounds ==
          doctest::Approx(1.0 / (1.0 - 0.666)).epsilon(1e-12));
    CHECK(lossy.expected_rounds / lossless.expected_rounds ==
          doctest::Approx(2.994).epsilon(1e-3));

    const ProtocolMetrics heavy = success_metrics(pp, budget_with(0.903, 0.0478));
    CHECK(heavy.expected_rounds / lossless.expected_rounds ==
          doctest::Approx(10.31).epsilon(1e-3));
}

TEST_CASE("success_metrics: vacuum coefficient and fidelity") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    const ProtocolMetrics m = success_metrics(pp, budget_with(0.666, 0.0092));
    CHECK(m.c0 == doctest::Approx(9.285e-3).epsilon(1e-3));
    CHECK(m.state_fidelity == doctest::Approx(0.99080).epsilon(1e-4));
    CHECK(m.state_fidelity == doctest::Approx(1.0 / (1.0 + m.c0)).epsilon(1e-15));

    ProtocolParams extra = pp;
    extra.c0_extra = 0.05;
    CHECK(success_metrics(extra, budget_with(0.666, 0.0092)).c0 ==
          doctest::Approx(m.c0 + 0.05).epsilon(1e-12));
}

TEST_CASE("success_metrics: independent of the channel phase") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    const NoiseBudget b = budget_with(0.4, 0.05);
    const double ref = success_metrics(pp, b).state_fidelity;
    for (int i = 0; i < 8; ++i) {
        pp.phase_phi = i * 0.785;
        CHECK(success_metrics(pp, b).state_fidelity == ref);
    }
}

TEST_CASE("success_metrics: monotone figures of merit") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    double prev_fid = 1.1, prev_rounds = 0.0;
    // a theta_D-like sweep: p_mode rising, p_spon falling
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const ProtocolMetrics m = success_metrics(pp, budget_with(0.9 * (1.0 - x), 0.3 * x));
        CHECK(m.state_fidelity < prev_fid);
        prev_fid = m.state_fidelity;
        (void)prev_rounds;
    }
    // expected_rounds strictly increasing in p_spon
    prev_rounds = 0.0;
    for (double ps : {0.0, 0.2, 0.5, 0.8, 0.95}) {
        const ProtocolMetrics m = success_metrics(pp, budget_with(ps, 0.01));
        CHECK(m.expected_rounds > prev_rounds);
        prev_rounds = m.expected_rounds;
    }
}

TEST_CASE("success_metrics: documented double-loss toggle") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    pp.double_loss_factor = true;
    const ProtocolMetrics m = success_metrics(pp, budget_with(0.5, 0.0));
    CHECK(m.p_click_per_round == doctest::Approx(2.0 * 0.01 * 0.25).epsilon(1e-12));
}

TEST_CASE("success_metrics: degenerate budgets rejected") {
    ProtocolParams pp;
    pp.fidelity_imperfection_target = 0.01;
    CHECK_THROWS_AS(success_metrics(pp, budget_with(1.0, 0.0)), DomainError);
    NoiseBudget bad = budget_with(0.1, 0.0);
    bad.p_mode = 1.0;
    CHECK_THROWS_AS(success_metrics(pp, bad), DomainError);
    ProtocolParams badp;
    badp.fidelity_imperfection_target = 0.6;
    CHECK_THROWS_AS(success_metrics(badp, budget_with(0.1, 0.1)), DomainError);
}
