#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "vfcsim/channel/link.hpp"
#include "vfcsim/channel/propagation.hpp"
#include "vfcsim/channel/wired.hpp"
#include "vfcsim/core/rng.hpp"

using namespace vfc;

TEST_CASE("path loss closed form") {
    PathLossParams b1;  // defaults A=22.7 B=41 C=20 D=5
    b1.fc_ghz = 5.0;
    CHECK(path_loss_db(1.0, b1) == doctest::Approx(41.0).epsilon(1e-12));

    b1.fc_ghz = 2.0;
    CHECK(path_loss_db(100.0, b1) == doctest::Approx(78.441).epsilon(1e-5));
    CHECK(path_loss_db(1000.0, b1) == doctest::Approx(101.141).epsilon(1e-5));
}

TEST_CASE("path loss clamps below d_min") {
    PathLossParams p;
    CHECK(path_loss_db(0.0, p) == doctest::Approx(path_loss_db(p.d_min, p)));
    CHECK(path_loss_db(1e-6, p) == doctest::Approx(path_loss_db(p.d_min, p)));
}

TEST_CASE("shadowing: zero displacement keeps the state") {
    ShadowState st{4.2, 10.0, 3.0};
    RngStream rng(11, "channel");
    CHECK(update_shadowing(st, 0.0, rng) == 4.2);
    CHECK(rng.draw_count() == 0);  // no draw consumed
}

TEST_CASE("shadowing: sigma=0 reduces to the deterministic mix") {
    ShadowState st{6.0, 10.0, 0.0};
    RngStream rng(11, "channel");
    const double dd = 5.0;
    const double w = std::exp(-dd / st.d_corr);
    const double expected =
        10.0 * std::log10(w * std::pow(10.0, st.s_db / 10.0) + std::sqrt(1.0 - w * w));
    CHECK(update_shadowing(st, dd, rng) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("shadowing: strong decorrelation gives a fresh normal in dB") {
    // with dd >= 20*d_corr the old state's weight is ~exp(-20); the output is
    // distributed as N(0, sigma) and decorrelated from the previous state
    const double sigma = 3.0;
    ShadowState st{0.0, 10.0, sigma};
    RngStream rng(17, "channel");
    const double dd = 20.0 * st.d_corr;
    const int n = 100000;
    double sum = 0.0, sq = 0.0, cross = 0.0;
    double prev = st.s_db;
    for (int i = 0; i < n; ++i) {
        ShadowState cur{prev, st.d_corr, sigma};
        const double next = update_shadowing(cur, dd, rng);
        sum += next;
        sq += next * next;
        cross += next * prev;
        prev = next;
    }
    const double mean = sum / n;
    const double stddev = std::sqrt(sq / n - mean * mean);
    CHECK(std::abs(mean) < 0.05);
    CHECK(stddev == doctest::Approx(sigma).epsilon(0.05));
    const double corr = (cross / n - mean * mean) / (stddev * stddev);
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("shadowing: small displacements compress the dB spread") {
    // the linear-domain mixture is variance-preserving in the linear sense;
    // in dB the stationary spread sits well below sigma for small dd/d_corr
    const double sigma = 3.0;
    RngStream rng(23, "channel");
    double s = 0.0;
    const int n = 60000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        ShadowState cur{s, 10.0, sigma};
        s = update_shadowing(cur, 5.0, rng);  // dd/d_corr = 0.5
        if (i >= 10000) {
            sum += s;
            sq += s * s;
        }
    }
    const int m = n - 10000;
    const double mean = sum / m;
    const double stddev = std::sqrt(sq / m - mean * mean);
    CHECK(stddev < 0.75 * sigma);
    CHECK(stddev > 0.25 * sigma);
}

TEST_CASE("fast fading is unit-mean exponential") {
    RngStream rng(29, "channel");
    const int n = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double h = sample_fast_fading(rng);
        REQUIRE(h >= 0.0);
        sum += h;
        sq += h * h;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sq / n - mean * mean == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("channel gain composition") {
    CHECK(channel_gain_linear(0.0, 0.0, 1.0) == doctest::Approx(1.0));
    CHECK(channel_gain_linear(0.0, 10.0, 1.0) == doctest::Approx(0.1));
    CHECK(channel_gain_linear(3.0103, 10.0, 2.0) == doctest::Approx(0.4).epsilon(1e-4));
    RngStream rng(31, "channel");
    for (int i = 0; i < 100; ++i) {
        const double s = rng.uniform(-10, 10), pl = rng.uniform(40, 120), h = rng.uniform(0, 5);
        CHECK(channel_gain_linear(s, pl, 1.0) * h ==
              doctest::Approx(channel_gain_linear(s, pl, h)).epsilon(1e-12));
    }
}

namespace {

LinkState make_link(int tx, int rx, double gain, double power_dbm) {
    LinkState l;
    l.tx_id = tx;
    l.rx_id = rx;
    l.gain_linear = gain;
    l.tx_power_dbm = power_dbm;
    return l;
}

}  // namespace

TEST_CASE("sole RB occupancy degenerates to SNR") {
    RbPlan plan{20e6, 20};
    const double noise_dbm = -104.0;
    const double noise_w = dbm_to_watts(noise_dbm);
    // pick gain so p*g == N0 exactly -> SINR 1
    const double p_w = dbm_to_watts(23.0);
    std::vector<LinkState> links = {make_link(1, 2, noise_w / p_w, 23.0)};
    links[0].rb_set = {0};
    compute_sinr_capacity(links, plan, noise_dbm);
    CHECK(links[0].sinr_linear == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(links[0].capacity_bps == doctest::Approx(plan.rb_bandwidth_hz()).epsilon(1e-12));
}

TEST_CASE("two symmetric co-channel links get SINR 1/2") {
    RbPlan plan{20e6, 20};
    const double noise_dbm = -104.0;
    const double noise_w = dbm_to_watts(noise_dbm);
    const double p_w = dbm_to_watts(23.0);
    std::vector<LinkState> links = {make_link(1, 2, noise_w / p_w, 23.0),
                                    make_link(3, 4, noise_w / p_w, 23.0)};
    links[0].rb_set = {5};
    links[1].rb_set = {5};
    compute_sinr_capacity(links, plan, noise_dbm);
    CHECK(links[0].sinr_linear == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(links[1].sinr_linear == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero-gain interferer leaves SNR untouched; removing an interferer never hurts") {
    RbPlan plan{20e6, 20};
    const double noise_dbm = -104.0;
    const double noise_w = dbm_to_watts(noise_dbm);
    const double p_w = dbm_to_watts(23.0);
    std::vector<LinkState> links = {make_link(1, 2, noise_w / p_w, 23.0),
                                    make_link(3, 4, 0.0, 23.0)};
    links[0].rb_set = {0};
    links[1].rb_set = {0};
    compute_sinr_capacity(links, plan, noise_dbm);
    CHECK(links[0].sinr_linear == doctest::Approx(1.0).epsilon(1e-12));

    // with a real interferer, dropping it can only raise the victim's SINR
    RngStream rng(37, "channel");
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<LinkState> pair = {make_link(1, 2, rng.uniform(1e-12, 1e-8), 23.0),
                                       make_link(3, 4, rng.uniform(1e-12, 1e-8), 26.0)};
        pair[0].rb_set = {3};
        pair[1].rb_set = {3};
        compute_sinr_capacity(pair, plan, noise_dbm);
        const double with_interferer = pair[0].sinr_linear;
        std::vector<LinkState> solo = {pair[0]};
        solo[0].rb_set = {3};
        compute_sinr_capacity(solo, plan, noise_dbm);
        CHECK(solo[0].sinr_linear >= with_interferer - 1e-15);
    }
}

TEST_CASE("capacity is monotone in SINR and bandwidth; empty rb_set means zero") {
    CHECK(link_capacity_bps(true, 1e6, 1.0) == doctest::Approx(1e6));
    CHECK(link_capacity_bps(true, 1e6, 3.0) == doctest::Approx(2e6));
    CHECK(link_capacity_bps(false, 1e6, 3.0) == 0.0);
    double prev = -1.0;
    for (double g = 0.0; g < 50.0; g += 0.5) {
        const double c = link_capacity_bps(true, 5e6, g);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(link_capacity_bps(true, 2e6, 7.0) > link_capacity_bps(true, 1e6, 7.0));

    std::vector<LinkState> links = {make_link(1, 2, 1e-9, 23.0)};
    links[0].rb_set = {};
    RbPlan plan{20e6, 20};
    compute_sinr_capacity(links, plan, -104.0);
    CHECK(links[0].capacity_bps == 0.0);
}

TEST_CASE("rb assignment: round robin when overloaded, disjoint otherwise") {
    // 3 equal shares over 20 RBs -> 7+7+6, disjoint
    auto sets = assign_rbs({1.0 / 3, 1.0 / 3, 1.0 / 3}, 20);
    CHECK(sets[0].size() + sets[1].size() + sets[2].size() == 20);
    std::vector<int> seen(20, 0);
    for (const auto& s : sets) {
        for (int rb : s) ++seen[rb];
    }
    for (int c : seen) CHECK(c == 1);

    // 25 transmitters over 20 RBs -> wrap-around sharing
    std::vector<double> shares(25, 1.0 / 25);
    auto crowded = assign_rbs(shares, 20);
    for (const auto& s : crowded) CHECK(s.size() == 1);
    std::vector<int> occ(20, 0);
    for (const auto& s : crowded) ++occ[s[0]];
    int shared = 0;
    for (int c : occ) {
        if (c > 1) ++shared;
    }
    CHECK(shared == 5);

    // zero-share links get nothing
    auto with_idle = assign_rbs({0.5, 0.0, 0.5}, 20);
    CHECK(with_idle[1].empty());
    CHECK(with_idle[0].size() == 10);
    CHECK(with_idle[2].size() == 10);
}

TEST_CASE("M/M/1 sojourn formula and instability") {
    CHECK(wired_expected_sojourn_s(0.0, 10.0) == doctest::Approx(0.1));
    CHECK(wired_expected_sojourn_s(5.0, 10.0) == doctest::Approx(0.2));
    CHECK_THROWS_AS(wired_expected_sojourn_s(10.0, 10.0), UnstableQueueError);
    CHECK_THROWS_AS(wired_expected_sojourn_s(12.0, 10.0), UnstableQueueError);
}

TEST_CASE("M/M/1 sojourn matches a discrete-event queue simulation") {
    // independent oracle: simulate the queue (Poisson arrivals, exponential
    // service, FIFO) and compare the mean sojourn with 1/(mu-lambda)
    const double lambda = 5.0, mu = 10.0;
    RngStream rng(41, "mm1");
    double t = 0.0, server_free = 0.0, total = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        t += rng.exponential(1.0 / lambda);
        const double start = std::max(t, server_free);
        const double dep = start + rng.exponential(1.0 / mu);
        server_free = dep;
        total += dep - t;
    }
    CHECK(total / n == doctest::Approx(0.2).epsilon(0.03));

    // sampled per-message delays follow Exp(mu - lambda)
    double s = 0.0;
    for (int i = 0; i < 100000; ++i) s += wired_sample_sojourn_s(lambda, mu, rng);
    CHECK(s / 100000 == doctest::Approx(0.2).epsilon(0.03));
}
