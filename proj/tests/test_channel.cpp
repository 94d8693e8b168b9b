#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "smiet/channel.hpp"
#include "smiet/errors.hpp"
#include "smiet/numerics.hpp"

using namespace smiet;
using namespace smiet::channel;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
const LinkGeometry kRelayGeom{1e-3, 0.2e-3};
const DiffusionMedium kRelayMedium{1e-9, 0.0};
}  // namespace

TEST_CASE("first passage density vanishes at t -> 0+") {
  const LinkGeometry g{1.0, 1.0};
  const DiffusionMedium m{1.0, 0.0};
  CHECK(first_passage_density(g, m, 1e-6) == doctest::Approx(0.0));
  CHECK(first_passage_density(g, m, 1e-3) < 1e-100);
  CHECK(first_passage_density(g, m, 1e12) < 1e-18);
}

TEST_CASE("first passage density matches the closed form") {
  for (double t : {0.01, 0.3, 1.0, 17.0}) {
    CHECK(first_passage_density({2.0, 0.5}, {0.7, 0.0}, t) == doctest::Approx(oracle::hc(2.0, 0.5, 0.7, t)).epsilon(1e-13));
  }
}

TEST_CASE("mode of h_c is d^2 / (6D)") {
  const LinkGeometry geoms[] = {{1e-3, 0.2e-3}, {10e-6, 5e-6}, {2.0, 0.1}, {0.05, 3.0}};
  const DiffusionMedium meds[] = {{1e-9, 0.0}, {1e-10, 0.0}, {0.3, 0.0}, {4e-5, 0.0}};
  for (int i = 0; i < 4; ++i) {
    const auto& g = geoms[i];
    const auto& m = meds[i];
    const double scale = g.d * g.d / m.D;
    const double t_grid =
        oracle::grid_argmax([&](double t) { return first_passage_density(g, m, t); }, 1e-3 * scale, 1e2 * scale, 400001);
    CHECK(peak_time(g, m) == doctest::Approx(t_grid).epsilon(1e-4));
    // Stationarity: centred difference of log h_c at the mode.
    const double t0 = peak_time(g, m);
    const double e = 1e-5 * t0;
    const double slope = (std::log(first_passage_density(g, m, t0 + e)) - std::log(first_passage_density(g, m, t0 - e))) / (2 * e);
    CHECK(std::abs(slope * t0) < 1e-8);
  }
}

TEST_CASE("integral of h_c up to T = d^2/D equals F_c") {
  const LinkGeometry geoms[] = {{1e-3, 0.2e-3}, {10e-6, 5e-6}, {1.0, 1.0}, {3.0, 0.01}};
  const DiffusionMedium meds[] = {{1e-9, 0.0}, {1e-10, 0.0}, {1.0, 0.0}, {0.2, 0.0}};
  for (int i = 0; i < 4; ++i) {
    const auto& g = geoms[i];
    const auto& m = meds[i];
    const double T = g.d * g.d / m.D;
    const double q = oracle::integrate([&](double t) { return oracle::hc(g.d, g.R, m.D, t); }, 0.0, T, {peak_time(g, m)});
    CHECK(capture_fraction(g, m, T) == doctest::Approx(q).epsilon(1e-8));
  }
}

TEST_CASE("decay multiplies h_c and the closed form matches quadrature") {
  const LinkGeometry g{1e-3, 0.2e-3};
  const DiffusionMedium m{1e-9, 2e-3};
  const double t = 300.0;
  CHECK(first_passage_density(g, m, t) ==
        doctest::Approx(first_passage_density(g, kRelayMedium, t) * std::exp(-2e-3 * t)).epsilon(1e-13));
  for (double T : {50.0, 500.0, 5000.0, 1e5}) {
    const double q = oracle::integrate([&](double s) { return oracle::hc(g.d, g.R, m.D, s, m.decay_rate); }, 0.0, T,
                                       {166.0, 1000.0, 1e4});
    CHECK(capture_fraction(g, m, T) == doctest::Approx(q).epsilon(1e-8));
  }
  const double q_inf = oracle::integrate([&](double s) { return oracle::hc(g.d, g.R, m.D, s, m.decay_rate); }, 0.0, 1e5,
                                         {166.0, 1000.0, 1e4});
  CHECK(capture_fraction(g, m, kInf) == doctest::Approx(q_inf).epsilon(1e-8));
  CHECK(capture_fraction(g, m, kInf) < asymptotic_capture(g));
}

TEST_CASE("capture fraction limits and the 0.15 target") {
  CHECK(capture_fraction(kRelayGeom, kRelayMedium, kInf) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(capture_fraction({0.3, 0.3}, {1e-9, 0.0}, kInf) == doctest::Approx(0.5));
  CHECK(capture_fraction(kRelayGeom, kRelayMedium, 0.0) == 0.0);
  const double T = oracle::time_for_erfc(kRelayGeom.d, kRelayMedium.D, 0.9);
  CHECK(capture_fraction(kRelayGeom, kRelayMedium, T) == doctest::Approx(0.15).epsilon(1e-10));
  CHECK_THROWS_AS(capture_fraction(kRelayGeom, kRelayMedium, -1.0), DomainError);
}

TEST_CASE("capture fraction monotonicity and bound") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const LinkGeometry g{std::pow(10.0, -4 + u(gen)), std::pow(10.0, -4.5 + u(gen))};
    const DiffusionMedium m{std::pow(10.0, -9 + u(gen)), 0.0};
    const double T = std::pow(10.0, 2 + 2 * u(gen));
    const double f = capture_fraction(g, m, T);
    CHECK(f >= 0.0);
    CHECK(f < asymptotic_capture(g));
    CHECK(capture_fraction(g, m, 1.5 * T) >= f);
    CHECK(capture_fraction({g.d, 1.5 * g.R}, m, T) >= f);
    CHECK(capture_fraction({1.5 * g.d, g.R}, m, T) <= f);
    CHECK(first_passage_density(g, m, T) >= 0.0);
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(first_passage_density(kRelayGeom, kRelayMedium, 0.0), DomainError);
  CHECK_THROWS_AS(first_passage_density({0.0, 1.0}, kRelayMedium, 1.0), DomainError);
  CHECK_THROWS_AS(first_passage_density({1.0, -1.0}, kRelayMedium, 1.0), DomainError);
  CHECK_THROWS_AS(first_passage_density(kRelayGeom, {0.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(capture_fraction(kRelayGeom, {1e-9, -1.0}, 1.0), DomainError);
}

TEST_CASE("asymptotic capture") {
  CHECK(asymptotic_capture(kRelayGeom) == doctest::Approx(1.0 / 6.0));
  CHECK(asymptotic_capture({1e-9, 1.0}) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(asymptotic_capture({0.1, 0.1}) == doctest::Approx(0.5));
}

TEST_CASE("interval for a capture ratio") {
  const double T = interval_for_capture_ratio(kRelayGeom, kRelayMedium, 0.5);
  CHECK(T == doctest::Approx(oracle::time_for_erfc(kRelayGeom.d, kRelayMedium.D, 0.5)).epsilon(1e-9));
  CHECK(capture_fraction(kRelayGeom, kRelayMedium, T) / asymptotic_capture(kRelayGeom) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("erfc helpers against the C library") {
  for (double x : {-3.0, -0.5, 0.0, 0.1, 1.0, 4.0, 10.0, 26.0}) {
    CHECK(numerics::erfcx(x) == doctest::Approx(std::exp(x * x) * std::erfc(x)).epsilon(1e-12));
  }
  for (double y : {1e-10, 0.1, 0.5, 0.9, 1.0, 1.7}) {
    CHECK(std::erfc(numerics::erfc_inverse(y)) == doctest::Approx(y).epsilon(1e-12));
  }
}

TEST_CASE("EM received fraction") {
  EmLinkParams p;
  CHECK(em_received_fraction(p, 10.0) / em_received_fraction(p, 20.0) == doctest::Approx(4.0));
  CHECK(em_received_fraction(p, 10.0) == doctest::Approx(0.56 * kPi * 0.01 / 100.0));
  CHECK(em_received_fraction(p, 1e-3) == 1.0);
  CHECK_THROWS_AS(em_received_fraction(p, 0.0), DomainError);
  CHECK_THROWS_AS(em_received_fraction(p, -1.0), DomainError);

  EmLinkParams air = p;
  air.k = 1e-5;
  air.f = 10.0;
  CHECK(transmittance(air, 1.0) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(transmittance(air, 1.0) <= 1.0);
  CHECK(transmittance(air, 2.0) <= transmittance(air, 1.0));

  for (double alpha : {2.0, 3.0, 4.0}) {
    p.alpha = alpha;
    for (double d : {1.0, 10.0, 100.0}) {
      const double h = 1e-4 * d;
      const double slope = (std::log(em_received_fraction(p, d + h)) - std::log(em_received_fraction(p, d - h))) /
                           (std::log(d + h) - std::log(d - h));
      CHECK(slope == doctest::Approx(-alpha).epsilon(1e-6));
      CHECK(em_received_fraction(p, d * 1.01) < em_received_fraction(p, d));
    }
  }
}

TEST_CASE("MCvD efficiency") {
  const double phi = MoleculeSpec::kDefaultBondCost;
  auto eff = mcvd_efficiency({2, phi}, {0.5, 0.5});
  REQUIRE_FALSE(eff.unbounded);
  CHECK(eff.molecules_per_joule == doctest::Approx(0.5 / 202.88e-21));
  CHECK(mcvd_efficiency({3, phi}, kRelayGeom).molecules_per_joule == doctest::Approx((1.0 / 6.0) / (2 * 202.88e-21)));
  CHECK(mcvd_efficiency({5, phi}, kRelayGeom).molecules_per_joule ==
        doctest::Approx(mcvd_efficiency({3, phi}, kRelayGeom).molecules_per_joule / 2));
  CHECK(mcvd_efficiency({1, phi}, kRelayGeom).unbounded);
}

TEST_CASE("synthesis cost") {
  const double phi = 202.88e-21;
  CHECK(synthesis_cost({1, phi}, 1e6) == 0.0);
  CHECK(synthesis_cost({2, phi}, 1) == doctest::Approx(202.88e-21));
  CHECK(synthesis_cost({5, phi}, 10) == doctest::Approx(40 * phi));
  CHECK(synthesis_cost({7, phi}, 3 + 11) == doctest::Approx(synthesis_cost({7, phi}, 3) + synthesis_cost({7, phi}, 11)));
  CHECK_THROWS_AS(MoleculeSpec({0, phi}).validate(), DomainError);
  CHECK_THROWS_AS(MoleculeSpec({2, -1.0}).validate(), DomainError);
}

TEST_CASE("Stokes-Einstein size scaling") {
  CHECK(diffusivity_for_size(1e-9, 10, 10) == doctest::Approx(1e-9));
  CHECK(diffusivity_for_size(1e-9, 10, 80) == doctest::Approx(0.5e-9));
  CHECK(diffusivity_for_size(1e-9, 80, 10) == doctest::Approx(2e-9));
  const double there = diffusivity_for_size(3.3e-10, 7, 29);
  CHECK(diffusivity_for_size(there, 29, 7) == doctest::Approx(3.3e-10).epsilon(1e-14));
}
