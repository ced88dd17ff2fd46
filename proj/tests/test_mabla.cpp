#include <doctest.h>

#include <cmath>

#include "mecsim/channel.hpp"
#include "mecsim/mabla.hpp"
#include "mecsim/rates.hpp"
#include "test_util.hpp"

using namespace mecsim;
using mecsim::test::make_channel;
using mecsim::test::make_topology;

namespace {

// user midway between two edges that both cache its file; joint transmission
// roughly doubles its spectral efficiency at these SNRs
struct OverlapScenario {
    SimConfig cfg;
    NetworkTopology topo;
    CacheState cache;
    RequestState req;
    ChannelSnapshot ch;

    OverlapScenario() {
        cfg.num_edges = 2;
        cfg.num_files = 2;
        cfg.cache_slots = 1;
        cache = CacheState::init(2, 2, 1, {{1}, {1}});
        topo = make_topology({{0, 0}, {50, 0}}, {{25, 0}}, 100.0);
        req.requested_file = {1};
        ch = make_channel(topo, {{1e-4}, {1e-4}}, {1e-9}, {{1.0}, {1.0}}, {0.0});
    }
};

}  // namespace

TEST_CASE("selection follows a lopsided posterior") {
    RngStream rng(51);
    AutomatonState prefer_st{1000.0, 1.0, 1.0, 1000.0};
    int st = 0;
    for (int i = 0; i < 2000; ++i)
        if (bla_select(prefer_st, rng) == Arm::St) ++st;
    CHECK(st > 1990);

    AutomatonState prefer_jt{1.0, 1000.0, 1000.0, 1.0};
    int jt = 0;
    for (int i = 0; i < 2000; ++i)
        if (bla_select(prefer_jt, rng) == Arm::Jt) ++jt;
    CHECK(jt > 1990);
}

TEST_CASE("uninformed posteriors select both arms evenly") {
    RngStream rng(53);
    AutomatonState fresh;
    int st = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
        if (bla_select(fresh, rng) == Arm::St) ++st;
    CHECK(std::abs(st / static_cast<double>(n) - 0.5) < 0.02);
}

TEST_CASE("updates move one pseudo-count on the chosen arm") {
    AutomatonState s;
    ArmOutcome o;
    o.participated = true;
    o.chosen_arm = Arm::St;
    o.reward = true;
    bla_update(s, o);
    CHECK(s.alpha0 == 2.0);
    CHECK(s.beta0 == 1.0);
    CHECK(s.alpha1 == 1.0);

    o.chosen_arm = Arm::Jt;
    o.reward = false;
    bla_update(s, o);
    CHECK(s.beta1 == 2.0);
    CHECK(s.alpha1 == 1.0);

    o.degenerate = true;
    const AutomatonState before = s;
    bla_update(s, o);
    CHECK(s.alpha0 == before.alpha0);
    CHECK(s.beta1 == before.beta1);
}

TEST_CASE("posterior mean reflects the counts") {
    AutomatonState s{3.0, 1.0, 2.0, 2.0};
    CHECK(s.posterior_mean(Arm::St) == doctest::Approx(0.75));
    CHECK(s.posterior_mean(Arm::Jt) == doctest::Approx(0.5));
}

TEST_CASE("no covering holder degenerates the feedback") {
    OverlapScenario sc;
    sc.req.requested_file = {2};  // nobody caches file 2
    const auto out = evaluate_feedback(0, Arm::Jt, sc.topo, sc.cache, sc.req, sc.ch, sc.cfg,
                                       {Arm::Jt});
    CHECK(out.degenerate);
    CHECK(!out.participated);
}

TEST_CASE("joint transmission wins in the overlap scenario") {
    OverlapScenario sc;
    const auto jt = evaluate_feedback(0, Arm::Jt, sc.topo, sc.cache, sc.req, sc.ch, sc.cfg,
                                      {Arm::Jt});
    REQUIRE(jt.participated);
    CHECK(jt.chosen_delay_s < jt.counterfactual_delay_s);
    CHECK(jt.reward);
    CHECK(jt.optimal_arm() == Arm::Jt);

    const auto st = evaluate_feedback(0, Arm::St, sc.topo, sc.cache, sc.req, sc.ch, sc.cfg,
                                      {Arm::St});
    REQUIRE(st.participated);
    CHECK(!st.reward);
    CHECK(st.optimal_arm() == Arm::Jt);
}

TEST_CASE("the two feedback evaluations mirror each other") {
    OverlapScenario sc;
    const auto jt = evaluate_feedback(0, Arm::Jt, sc.topo, sc.cache, sc.req, sc.ch, sc.cfg,
                                      {Arm::Jt});
    const auto st = evaluate_feedback(0, Arm::St, sc.topo, sc.cache, sc.req, sc.ch, sc.cfg,
                                      {Arm::Jt});
    CHECK(jt.chosen_delay_s == doctest::Approx(st.counterfactual_delay_s).epsilon(1e-12));
    CHECK(jt.counterfactual_delay_s == doctest::Approx(st.chosen_delay_s).epsilon(1e-12));
}

TEST_CASE("equal delays count as a reward") {
    // degenerate geometry is hard to produce exactly; drive the comparison
    // directly through an outcome with equal delays via a single-holder user,
    // where the joint choice silently degrades to the same single link
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 2;
    cfg.cache_slots = 1;
    const auto cache = CacheState::init(2, 2, 1, {{1}, {2}});
    const auto topo = make_topology({{0, 0}, {50, 0}}, {{25, 0}}, 100.0);
    RequestState req{{1}};
    const auto ch = make_channel(topo, {{1e-4}, {1e-4}}, {1e-9}, {{1.0}, {1.0}}, {0.0});
    const auto out = evaluate_feedback(0, Arm::Jt, topo, cache, req, ch, cfg, {Arm::Jt});
    REQUIRE(out.participated);
    CHECK(out.chosen_delay_s == doctest::Approx(out.counterfactual_delay_s));
    CHECK(out.reward);
}

TEST_CASE("rounds drive the posterior toward the better arm") {
    OverlapScenario sc;
    std::vector<AutomatonState> automata(1);
    RngStream rng(55);
    int jt_recent = 0;
    const int rounds = 400;
    for (int i = 0; i < rounds; ++i) {
        auto ch = sc.ch;  // powers get reallocated inside
        const auto result = mabla_round(sc.topo, sc.cache, sc.req, ch, sc.cfg, automata, rng);
        if (i >= rounds - 100 && result.arms[0] == Arm::Jt) ++jt_recent;
    }
    CHECK(automata[0].posterior_mean(Arm::Jt) > 0.9);
    CHECK(automata[0].posterior_mean(Arm::Jt) > automata[0].posterior_mean(Arm::St));
    CHECK(jt_recent > 90);
}

TEST_CASE("single-covered users never update their automata") {
    SimConfig cfg;
    cfg.num_edges = 2;
    cfg.num_files = 2;
    cfg.cache_slots = 1;
    const auto cache = CacheState::init(2, 2, 1, {{1}, {1}});
    // both users covered by exactly one edge
    const auto topo = make_topology({{0, 0}, {500, 0}}, {{10, 0}, {510, 0}}, 100.0);
    RequestState req{{1, 1}};
    auto ch = make_channel(topo, {{1e-4, 0.0}, {0.0, 1e-4}}, {1e-9, 1e-9}, {{1.0, 0.0}, {0.0, 1.0}},
                           {0.0, 0.0});
    std::vector<AutomatonState> automata(2);
    RngStream rng(57);
    const auto result = mabla_round(topo, cache, req, ch, cfg, automata, rng);
    CHECK(result.arms[0] == Arm::St);
    CHECK(result.arms[1] == Arm::St);
    for (const auto& a : automata) {
        CHECK(a.alpha0 == 1.0);
        CHECK(a.beta0 == 1.0);
        CHECK(a.alpha1 == 1.0);
        CHECK(a.beta1 == 1.0);
    }
    CHECK(!result.outcomes[0].participated);
}

TEST_CASE("convergence diagnostics summarize posteriors and history") {
    std::vector<AutomatonState> automata = {{1.0, 1.0, 9.0, 1.0}};
    std::vector<std::vector<ArmOutcome>> history;
    for (int i = 0; i < 10; ++i) {
        ArmOutcome o;
        o.participated = true;
        o.chosen_arm = Arm::Jt;
        o.reward = i < 8;  // the chosen arm was optimal 8 of 10 rounds
        history.push_back({o});
    }
    const auto diag = convergence_report(automata, history);
    REQUIRE(diag.posterior_mean.size() == 1);
    CHECK(diag.posterior_mean[0][1] == doctest::Approx(0.9));
    CHECK(diag.optimal_arm_frequency[0] == doctest::Approx(0.8));
    CHECK(diag.p_star == doctest::Approx(0.8));
}
