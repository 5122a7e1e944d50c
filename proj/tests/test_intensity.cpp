#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/intensity.hpp"
#include "core/numeric.hpp"
#include "core/rng.hpp"

using namespace hawkes;

namespace {

HawkesParams two_label_params() {
  HawkesParams params;
  params.emotions = EmotionSet({"x", "y"});
  params.shape = ShapeConfig::default_lognormal();
  params.per_emotion.resize(2);
  params.per_emotion[0] = {0.4, 0.8, {0.5, 0.2}, {0.3, 0.1}};
  params.per_emotion[1] = {0.2, 1.5, {0.1, 0.6}, {0.05, 0.4}};
  return params;
}

VideoSession small_session() {
  VideoSession s;
  s.id = "s";
  s.duration = 10.0;
  s.chat = {{1.0, 2.5, 6.0}, {0.5, 2.5, 7.25}};
  s.subtitles = {{0.25, 4.0}, {1.5}};
  return s;
}

// Quadrature of the intensity split at its discontinuity points.
double integrate_intensity(size_t target, const HawkesParams& params,
                           const VideoSession& session, double lo, double hi) {
  std::vector<double> cuts{lo, hi};
  for (const auto& list : session.chat) {
    for (double t : list) {
      if (t > lo && t < hi) cuts.push_back(t);
    }
  }
  for (const auto& list : session.subtitles) {
    for (double t : list) {
      if (t > lo && t < hi) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += integrate_adaptive_simpson(
        [&](double t) { return total_intensity(t, target, params, session); },
        cuts[i], cuts[i + 1], 1e-10);
  }
  return total;
}

}  // namespace

TEST_CASE("background_S basics") {
  const auto shape = ShapeConfig::lognormal(std::log(10.0), 1.2686362411795196);
  SUBCASE("no subtitles means zero") {
    CHECK(background_S(3.0, {}, shape) == 0.0);
  }
  SUBCASE("single subtitle at 0 evaluated 10 s later (seconds config)") {
    CHECK(background_S(10.0, {0.0}, shape) ==
          doctest::Approx(0.03144654609823495).epsilon(1e-10));
  }
  SUBCASE("coincident subtitles add linearly") {
    const double one = background_S(7.0, {2.0}, shape);
    CHECK(background_S(7.0, {2.0, 2.0}, shape) == doctest::Approx(2.0 * one));
  }
  SUBCASE("subtitles at or after t are excluded") {
    CHECK(background_S(2.0, {2.0, 3.0}, shape) == 0.0);
  }
}

TEST_CASE("exo_rate composition") {
  auto params = two_label_params();
  auto session = small_session();
  SUBCASE("all nu zero gives mu0") {
    params.per_emotion[0].nu = {0.0, 0.0};
    CHECK(exo_rate(5.0, 0, params, session) == doctest::Approx(0.4));
  }
  SUBCASE("nu scales the background linearly") {
    params.per_emotion[0].mu0 = 0.0;
    params.per_emotion[0].nu = {2.0, 0.0};
    const double s = background_S(5.0, session.subtitles[0], params.shape);
    CHECK(exo_rate(5.0, 0, params, session) == doctest::Approx(2.0 * s));
  }
  SUBCASE("cross influence alone raises the rate") {
    // Only y-subtitles; x still gains exogenous rate through nu[x][y].
    params.per_emotion[0].mu0 = 0.0;
    params.per_emotion[0].nu = {0.0, 1.5};
    session.subtitles[0].clear();
    CHECK(exo_rate(5.0, 0, params, session) > 0.0);
  }
}

TEST_CASE("total_intensity follows the kernel sum with strict history") {
  auto params = two_label_params();
  VideoSession session;
  session.id = "s";
  session.duration = 10.0;
  session.chat = {{}, {}};
  session.subtitles = {{}, {}};
  SUBCASE("no history and no subtitles gives mu0") {
    CHECK(total_intensity(3.0, 0, params, session) == doctest::Approx(0.4));
  }
  SUBCASE("one past event a decay-time away") {
    params.per_emotion[0] = {1.0, 0.5, {0.0, 0.0}, {1.0, 0.0}};
    session.chat[0] = {2.0};
    CHECK(total_intensity(2.5, 0, params, session) ==
          doctest::Approx(1.0 + (1.0 / 0.5) * std::exp(-1.0)).epsilon(1e-12));
  }
  SUBCASE("an event does not excite itself") {
    params.per_emotion[0] = {1.0, 0.5, {0.0, 0.0}, {1.0, 1.0}};
    session.chat[0] = {2.0};
    session.chat[1] = {2.0};
    CHECK(total_intensity(2.0, 0, params, session) == doctest::Approx(1.0));
  }
}

TEST_CASE("total_intensity jumps by alpha/gamma times multiplicity at events") {
  auto params = two_label_params();
  auto session = small_session();
  session.chat[1] = {0.5, 2.5, 2.5, 7.25};  // two coincident y-events at 2.5
  const auto& p = params.per_emotion[0];
  const double before = total_intensity(2.5, 0, params, session);
  const double after = total_intensity(2.5 + 1e-10, 0, params, session);
  // At t=2.5 one x-event and two y-events fire together.
  const double expected_jump = p.alpha[0] / p.gamma + 2.0 * p.alpha[1] / p.gamma;
  CHECK(after - before == doctest::Approx(expected_jump).epsilon(1e-6));
}

TEST_CASE("intensity never drops below mu0") {
  const auto params = two_label_params();
  const auto session = small_session();
  for (double t = 0.05; t < 10.0; t += 0.173) {
    CHECK(total_intensity(t, 0, params, session) >= params.per_emotion[0].mu0);
    CHECK(total_intensity(t, 0, params, session) > 0.0);
  }
}

TEST_CASE("M1 values") {
  const auto shape = ShapeConfig::default_lognormal();
  const double median = std::exp(shape.mu);
  SUBCASE("far past subtitle carries unit mass") {
    CHECK(background_mass_M1({0.0}, 1e9, shape) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("subtitle a median before the horizon carries half its mass") {
    CHECK(background_mass_M1({0.0}, median, shape) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("coincident subtitles scale linearly") {
    const double one = background_mass_M1({1.0}, 5.0, shape);
    CHECK(background_mass_M1({1.0, 1.0, 1.0}, 5.0, shape) ==
          doctest::Approx(3.0 * one).epsilon(1e-12));
  }
}

TEST_CASE("closed-form M1 agrees with quadrature of background_S") {
  for (const auto shape : {ShapeConfig::default_lognormal(),
                           ShapeConfig::powerlaw(2.5, 1.0 / 60.0)}) {
    const std::vector<double> subtitles{0.4, 1.1, 1.1, 3.7, 9.2};
    const double T = 11.0;
    std::vector<double> cuts{0.0};
    for (double tau : subtitles) {
      if (tau < T) cuts.push_back(tau);
    }
    cuts.push_back(T);
    std::sort(cuts.begin(), cuts.end());
    double quad = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      quad += integrate_adaptive_simpson(
          [&](double t) { return background_S(t, subtitles, shape); }, cuts[i],
          cuts[i + 1], 1e-10);
    }
    CHECK(background_mass_M1(subtitles, T, shape) ==
          doctest::Approx(quad).epsilon(1e-6));
  }
}

TEST_CASE("compensator closed forms") {
  auto params = two_label_params();
  auto session = small_session();
  SUBCASE("pure Poisson") {
    params.per_emotion[0] = {1.7, 1.0, {0.0, 0.0}, {0.0, 0.0}};
    CHECK(compensator(0, params, session, 8.0) == doctest::Approx(1.7 * 8.0));
  }
  SUBCASE("endogenous mass saturates at alpha") {
    params.per_emotion[0] = {0.0, 0.3, {0.0, 0.0}, {0.8, 0.0}};
    session.chat = {{1.0}, {}};
    session.subtitles = {{}, {}};
    session.duration = 1e6;
    CHECK(compensator(0, params, session, 1e6) == doctest::Approx(0.8).epsilon(1e-12));
  }
  SUBCASE("single subtitle at the median horizon contributes nu/2") {
    params.per_emotion[0] = {0.0, 1.0, {0.9, 0.0}, {0.0, 0.0}};
    session.chat = {{}, {}};
    session.subtitles = {{0.0}, {}};
    const double median = std::exp(params.shape.mu);
    CHECK(compensator(0, params, session, median) ==
          doctest::Approx(0.9 * 0.5).epsilon(1e-12));
  }
}

TEST_CASE("compensator increments equal the integrated intensity") {
  const auto params = two_label_params();
  const auto session = small_session();
  const std::vector<std::pair<double, double>> windows{
      {0.0, 10.0}, {0.7, 3.1}, {2.5, 2.6}, {5.0, 9.5}};
  for (size_t e = 0; e < 2; ++e) {
    for (const auto& [lo, hi] : windows) {
      const double closed =
          compensator(e, params, session, hi) - compensator(e, params, session, lo);
      const double quad = integrate_intensity(e, params, session, lo, hi);
      CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
    }
  }
}

TEST_CASE("compensator is nondecreasing in t") {
  const auto params = two_label_params();
  const auto session = small_session();
  double previous = 0.0;
  for (double t = 0.0; t <= 10.0; t += 0.37) {
    const double value = compensator(0, params, session, t);
    CHECK(value >= previous);
    previous = value;
  }
}

TEST_CASE("background cache matches direct evaluation") {
  const auto params = two_label_params();
  const auto session = small_session();
  const auto cache = BackgroundCache::build(session, params.shape);
  for (size_t e = 0; e < 2; ++e) {
    for (size_t f = 0; f < 2; ++f) {
      for (size_t i = 0; i < session.chat[e].size(); ++i) {
        CHECK(cache.S_at_chat[e][f][i] ==
              doctest::Approx(background_S(session.chat[e][i], session.subtitles[f],
                                           params.shape))
                  .epsilon(1e-15));
      }
    }
  }
  for (size_t f = 0; f < 2; ++f) {
    CHECK(cache.M1[f] == doctest::Approx(background_mass_M1(
                             session.subtitles[f], session.duration, params.shape)));
  }
}
