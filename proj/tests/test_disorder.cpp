#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "topopass/disorder.hpp"
#include "topopass/errors.hpp"
#include "topopass/parallel.hpp"

using namespace topopass;

namespace {

SystemSpec system4() {
    SystemSpec s;
    s.chain.cells = 4;
    return s;
}

// short sweep through the topological segment keeps the ensemble tests quick
const SweepSchedule kQuick{2e-3, 0.0, kPi};

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
    // the first three outputs of the reference generator seeded with 0
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
    CHECK(splitmix64(2 * 0x9e3779b97f4a7c15ULL) == 0x06c45d188009454fULL);
}

TEST_CASE("zero widths give the clean system") {
    const DisorderSpec spec{0.0, 0.0, 5, 42};
    for (int i = 0; i < 5; ++i) {
        const auto r = sample_realization(spec, i, 4);
        CHECK(r.onsite.size() == 16);
        CHECK(r.bonds.size() == 14);
        for (double x : r.onsite) CHECK(x == 0.0);
        for (double x : r.bonds) CHECK(x == 0.0);
    }
}

TEST_CASE("offsets stay inside the window and fill it") {
    const DisorderSpec spec{1e-3, 2e-3, 200, 7};
    double lo = 1.0, hi = -1.0, sum = 0.0;
    int count = 0;
    for (int i = 0; i < spec.realizations; ++i) {
        const auto r = sample_realization(spec, i, 4);
        for (double x : r.onsite) {
            CHECK(x >= -1e-3);
            CHECK(x <= 1e-3);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            sum += x;
            ++count;
        }
        for (double x : r.bonds) {
            CHECK(x >= -2e-3);
            CHECK(x <= 2e-3);
        }
    }
    CHECK(lo < -0.99e-3);
    CHECK(hi > 0.99e-3);
    // mean of 3200 uniform draws: standard error ~ 1e-3 / sqrt(3 * 3200)
    CHECK(std::abs(sum / count) < 5e-5);
}

TEST_CASE("realizations depend only on seed and index") {
    const DisorderSpec spec{1e-3, 1e-3, 10, 2024};
    const auto a = sample_realization(spec, 3, 4);
    const auto b = sample_realization(spec, 3, 4);
    for (std::size_t i = 0; i < a.onsite.size(); ++i) CHECK(bitwise_equal(a.onsite[i], b.onsite[i]));
    for (std::size_t i = 0; i < a.bonds.size(); ++i) CHECK(bitwise_equal(a.bonds[i], b.bonds[i]));

    // the same index drawn from a larger ensemble is identical
    DisorderSpec bigger = spec;
    bigger.realizations = 100;
    const auto c = sample_realization(bigger, 3, 4);
    CHECK(c.onsite == a.onsite);

    const auto other = sample_realization(spec, 4, 4);
    CHECK(other.onsite != a.onsite);
    DisorderSpec reseeded = spec;
    reseeded.master_seed = 2025;
    CHECK(sample_realization(reseeded, 3, 4).onsite != a.onsite);

    CHECK_THROWS_AS(sample_realization(spec, 10, 4), std::out_of_range);
    CHECK_THROWS_AS(sample_realization(spec, -1, 4), std::out_of_range);
    CHECK_THROWS_AS((DisorderSpec{-1.0, 0.0, 1, 0}).validate(), ConfigError);
    CHECK_THROWS_AS((DisorderSpec{0.0, 0.0, 0, 0}).validate(), ConfigError);
}

TEST_CASE("summary statistics") {
    std::vector<RealizationOutcome> o(4);
    const double v[4] = {0.9, 0.8, 0.0, 0.7};
    for (int i = 0; i < 4; ++i) {
        o[i].index = i;
        o[i].value = v[i];
    }
    o[2].failed = true;
    o[2].value = std::nan("");
    o[2].error = "boom";
    const auto s = summarize(o);
    CHECK(s.succeeded == 3);
    CHECK(s.mean == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(s.stddev == doctest::Approx(0.1).epsilon(1e-12));  // sample deviation, n - 1
    CHECK(s.realizations.size() == 4);
    CHECK(s.realizations[2].error == "boom");

    std::vector<RealizationOutcome> one(1);
    one[0].value = 0.5;
    CHECK(summarize(one).stddev == 0.0);
}

TEST_CASE("single clean realization reproduces the clean run exactly") {
    const auto sys = system4();
    const auto clean = propagate(sys, kQuick, atom_excited(4));
    const double f_clean = fidelity(clean.final_state(), end_site_target(sys.coupling, 4));
    const auto stats = ensemble_fidelity(sys, kQuick, DisorderSpec{0.0, 0.0, 1, 5});
    CHECK(stats.succeeded == 1);
    CHECK(bitwise_equal(stats.mean, f_clean));
    CHECK(stats.stddev == 0.0);

    const auto three = ensemble_fidelity(sys, kQuick, DisorderSpec{0.0, 0.0, 3, 5});
    CHECK(bitwise_equal(three.mean, f_clean));
    CHECK(three.stddev == 0.0);
}

TEST_CASE("ensemble statistics do not depend on thread count") {
    const auto sys = system4();
    const DisorderSpec spec{1e-3, 1e-3, 6, 99};
    const auto serial = ensemble_fidelity(sys, kQuick, spec, {}, 1);
    const auto threaded = ensemble_fidelity(sys, kQuick, spec, {}, 4);
    CHECK(bitwise_equal(serial.mean, threaded.mean));
    CHECK(bitwise_equal(serial.stddev, threaded.stddev));
    for (int i = 0; i < 6; ++i) {
        CHECK(serial.realizations[i].index == i);
        CHECK(serial.realizations[i].key == realization_key(99, i));
        CHECK(bitwise_equal(serial.realizations[i].value, threaded.realizations[i].value));
    }
}

TEST_CASE("failed realizations are reported, not resampled") {
    auto sys = system4();
    const DisorderSpec spec{1e-3, 0.0, 3, 1};
    ComplexVector bad_target = ComplexVector::Zero(17);  // not unit norm
    const auto stats = ensemble_fidelity(sys, kQuick, spec, bad_target, {}, 1);
    CHECK(stats.succeeded == 0);
    CHECK(std::isnan(stats.mean));
    for (const auto& r : stats.realizations) {
        CHECK(r.failed);
        CHECK(!r.error.empty());
        CHECK(r.key == realization_key(1, r.index));
    }
}

TEST_CASE("parallel_for") {
    std::vector<int> hits(100, 0);
    parallel_for(hits.size(), 3, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);

    std::atomic<int> ran{0};
    CHECK_THROWS_AS(parallel_for(50, 2,
                                 [&](std::size_t i) {
                                     ++ran;
                                     if (i == 7) throw std::runtime_error("seven");
                                 }),
                    std::runtime_error);
    parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}
