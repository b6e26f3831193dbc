#include <doctest.h>

#include "helpers.hpp"
#include "lamsim/errors.hpp"
#include "lamsim/matching.hpp"

using namespace lamsim;
using lamsim::testing::reference_params;

TEST_CASE("rate mismatch at the bare limit equals +kappa in the nesting regime") {
    const SystemParams p = reference_params(4.87);
    const double mism = rate_mismatch(p, MatchLevel::Four);
    CHECK(mism == doctest::Approx(p.kappa).epsilon(0.02));
}

TEST_CASE("rate mismatch under strong drive approaches -kappa") {
    const SystemParams p = with_rabi(reference_params(4.87), mhz(300.0));
    const double mism = rate_mismatch(p, MatchLevel::Four);
    CHECK(mism == doctest::Approx(-p.kappa).epsilon(0.10));
}

TEST_CASE("matching power sits at 19 +- 1 MHz with a tight residual") {
    const SystemParams p = reference_params(4.87);
    const MatchPoint mp = find_matching_power(p, MatchLevel::Four, 0.0, mhz(50.0));
    CHECK(to_mhz(mp.rabi) >= 18.0);
    CHECK(to_mhz(mp.rabi) <= 20.0);
    CHECK(mp.residual <= 1e-4);
    CHECK(mp.regime.kind == Regime::Nesting);
    CHECK(mp.drive_amp == doctest::Approx(mp.rabi / std::sqrt(p.gamma)));

    // residual recomputed from scratch agrees
    const double again = std::abs(rate_mismatch(with_rabi(p, mp.rabi), MatchLevel::Four));
    CHECK(std::abs(again / p.kappa - mp.residual) <= 1e-6);
}

TEST_CASE("level three crossing lands within 2 MHz of the level four crossing") {
    const SystemParams p = reference_params(4.87);
    const MatchPoint four = find_matching_power(p, MatchLevel::Four, 0.0, mhz(50.0));
    const MatchPoint three = find_matching_power(p, MatchLevel::Three, 0.0, mhz(50.0));
    CHECK(std::abs(to_mhz(four.rabi) - to_mhz(three.rabi)) <= 2.0);
}

TEST_CASE("matching is rejected in the unnesting regime") {
    const SystemParams p = reference_params(4.83);
    CHECK_THROWS_WITH_AS(find_matching_power(p, MatchLevel::Four, 0.0, mhz(50.0)),
                         doctest::Contains("NotNested"), SimError);
}

TEST_CASE("no sign change on a bracket that stops short of the crossing") {
    const SystemParams p = reference_params(4.87);
    CHECK_THROWS_WITH_AS(find_matching_power(p, MatchLevel::Four, 0.0, mhz(5.0)),
                         doctest::Contains("NoSignChange"), SimError);
}

TEST_CASE("matching search is deterministic") {
    const SystemParams p = reference_params(4.87);
    const MatchPoint a = find_matching_power(p, MatchLevel::Four, 0.0, mhz(50.0));
    const MatchPoint b = find_matching_power(p, MatchLevel::Four, 0.0, mhz(50.0));
    CHECK(a.rabi == b.rabi);
    CHECK(a.residual == b.residual);
}
