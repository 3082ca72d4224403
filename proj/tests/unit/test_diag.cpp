#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "imlab/errors.hpp"
#include "imlab/imethod_diag.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/rough_data.hpp"
#include "imlab/wave_dynamics.hpp"

using namespace imlab::spectral;
using namespace imlab::diag;
using imlab::paramlab::Extended;
using imlab::paramlab::PdeParams;
using imlab::paramlab::TripleMQR;
using doctest::Approx;

namespace {

const PdeParams kParams = PdeParams::make(4.0, 0.95);

WaveState rough(const Grid& g, std::uint64_t seed, double k_max) {
  imlab::roughdata::DataRecipe r;
  r.seed = seed;
  r.k_max = k_max;
  return imlab::roughdata::synthesize(r, g);
}

/// Translate by x0 (any real vector): c_k ← c_k e^{-ik·x0}.
WaveState shifted(const WaveState& w, std::array<double, 3> x0) {
  const Grid& g = w.grid();
  auto shift = [&](const SpectralField& f) {
    std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto m = g.modes(i);
      double phase = 0.0;
      for (int a = 0; a < 3; ++a) phase -= g.fundamental() * m[a] * x0[a];
      c[i] *= std::polar(1.0, phase);
    }
    return SpectralField(g, c);
  };
  return WaveState(shift(w.u), shift(w.v), w.t);
}

}  // namespace

TEST_CASE("modified energy basics") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  const auto z = modified_energy(WaveState::zero(g), 2.0, 0.95, 4.0);
  CHECK(z.total == 0.0);
  const auto w = rough(g, 1, 7.0);
  const auto e = modified_energy(w, 2.0, 0.95, 4.0);
  CHECK(e.kinetic >= 0);
  CHECK(e.gradient >= 0);
  CHECK(e.potential >= 0);
  CHECK(std::abs(e.total - (e.kinetic + e.gradient + e.potential)) <= 1e-12 * e.total);
}

TEST_CASE("modified energy of a band-limited state equals the true energy") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  const WaveState w(testutil::random_lowpass(g, 3, 3.0), testutil::random_lowpass(g, 4, 3.0));
  const double e_true = imlab::dynamics::energy(w, 4.0).total();
  CHECK(modified_energy(w, 3.0, 0.95, 4.0).total == Approx(e_true).epsilon(1e-14));
  // N beyond the band: I is the identity for every state.
  const auto r = rough(g, 2, 7.0);
  CHECK(modified_energy(r, 2 * g.nyquist(), 0.95, 4.0).total ==
        Approx(imlab::dynamics::energy(r, 4.0).total()).epsilon(1e-14));
  // And it approaches the true energy monotonically from below in the gradient part.
  double prev = 0.0;
  for (double N : {1.0, 2.0, 4.0, 8.0}) {
    const double gN = modified_energy(r, N, 0.95, 4.0).gradient;
    CHECK(gN >= prev);
    prev = gN;
  }
}

TEST_CASE("single cosine mode, cubic nonlinearity: closed form") {
  const Grid g(3, 16, 4.0);
  const double a = 0.7;
  const WaveState w(SpectralField::cosine_mode(g, {1, 2, 0}, a), SpectralField(g));
  const double k0 = g.fundamental() * std::sqrt(5.0);
  const double L3 = g.volume();
  const auto e = modified_energy(w, 100.0, 0.95, 3.0);
  CHECK(e.gradient == Approx(a * a * k0 * k0 * L3 / 4).epsilon(1e-12));
  CHECK(e.potential == Approx(a * a * a * a * 3.0 / 8.0 * L3 / 4).epsilon(1e-8));
  CHECK(e.kinetic == 0.0);
}

TEST_CASE("modified energy is translation invariant") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  const auto w = rough(g, 5, 5.0);
  const double e0 = modified_energy(w, 2.0, 0.95, 4.0).total;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> lattice(0, 31);
  const double h = g.length() / 32.0;  // spacing of the refined quadrature grid
  for (int i = 0; i < 10; ++i) {
    const auto x = shifted(w, {h * lattice(rng), h * lattice(rng), h * lattice(rng)});
    CHECK(std::abs(modified_energy(x, 2.0, 0.95, 4.0).total - e0) < 1e-10 * e0);
  }
}

TEST_CASE("time combination") {
  const std::vector<double> c{2.0, 2.0, 2.0, 2.0, 2.0};
  CHECK(combine_in_time(c, 0.25, Extended::finite(4.0)) == Approx(2.0 * std::pow(1.0, 0.25)));
  CHECK(combine_in_time(c, 0.5, Extended::finite(2.0)) == Approx(2.0 * std::sqrt(2.0)));
  const std::vector<double> ramp{0.0, 1.0, 3.0, 2.0};
  CHECK(combine_in_time(ramp, 0.1, Extended::infinity()) == 3.0);
  // Trapezoid on the square: (0 + 2·1 + 2·9 + 4)/2 · 0.1 = 1.2.
  CHECK(combine_in_time(ramp, 0.1, Extended::finite(2.0)) == Approx(std::sqrt(1.2)));
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(combine_in_time(one, 0.1, Extended::finite(2.0)), imlab::PreconditionError);
}

TEST_CASE("Z norms") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  imlab::dynamics::StepperConfig cfg;
  cfg.dt = 1.0 / 32;

  SUBCASE("zero trajectory") {
    const auto traj = imlab::dynamics::evolve_collect(WaveState::zero(g), 0.5, cfg, {0.125});
    const auto rep = z_sup(traj, kParams, 4.0);
    CHECK(rep.z_max == 0.0);
  }

  SUBCASE("constant single mode, q = infinity") {
    const auto u = SpectralField::cosine_mode(g, {3, 0, 0}, 1.0);
    std::vector<WaveState> timed;
    for (int i = 0; i < 3; ++i) timed.emplace_back(u, SpectralField(g), 0.1 * i);
    const TripleMQR t{0.95, Extended::infinity(), 6.0 / (3.0 - 1.9), "m_s_energy"};
    const double N = 1.0;
    const auto Du = apply_multiplier(apply_multiplier(u, MultiplierSpec::i_operator(N, 0.95)),
                                     MultiplierSpec::fractional_power(0.05));
    CHECK(z_norm(timed, t, kParams, N) == Approx(lebesgue_norm(Du, t.r)).epsilon(1e-13));
  }

  SUBCASE("report, refinement and nesting") {
    const auto traj = imlab::dynamics::evolve_collect(rough(g, 2, 6.0), 1.0, cfg, {1.0 / 32});
    const auto rep = z_sup(traj, kParams, 4.0);
    CHECK(rep.values.size() == imlab::paramlab::proof_triples(kParams).size());
    for (double v : rep.values) CHECK(std::isfinite(v));
    CHECK(rep.z_max == Approx(*std::max_element(rep.values.begin(), rep.values.end())));

    std::vector<WaveState> coarse;
    for (std::size_t i = 0; i < traj.size(); i += 2) coarse.push_back(traj[i]);
    const auto rc = z_sup(coarse, kParams, 4.0);
    for (std::size_t k = 0; k < rep.values.size(); ++k)
      CHECK(std::abs(rc.values[k] - rep.values[k]) < 0.01 * rep.values[k]);

    double prev = 0.0;
    for (std::size_t len : {5u, 9u, 17u, 33u}) {
      const std::vector<WaveState> part(traj.begin(), traj.begin() + static_cast<long>(len));
      const double z = z_sup(part, kParams, 4.0).z_max;
      CHECK(z >= prev);
      prev = z;
    }
  }

  SUBCASE("disallowed triples are rejected") {
    const auto traj = imlab::dynamics::evolve_collect(rough(g, 2, 6.0), 0.25, cfg, {0.125});
    const TripleMQR bad{1.0, Extended::infinity(), 2.0, "bad"};
    CHECK_THROWS_AS(z_norm(traj, bad, kParams, 4.0), imlab::PreconditionError);
  }
}

TEST_CASE("linear flow: Z(m=0, inf, 2) over the transformed data norm is exactly 1 for one mode") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  const WaveState w(SpectralField::cosine_mode(g, {2, 1, 0}, 1.0), SpectralField(g));
  std::vector<WaveState> traj;
  for (int j = 0; j <= 16; ++j) traj.push_back(imlab::dynamics::linear_propagate(w, j / 16.0));
  const TripleMQR t{0.0, Extended::infinity(), 2.0, "energy_l2"};
  const double N = 2.0;
  const auto e = modified_energy(w, N, 0.95, 4.0, 1);
  const double data = std::sqrt(2.0 * (e.gradient + e.kinetic));
  CHECK(z_norm(traj, t, kParams, N) / data == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("ACL drift") {
  const std::vector<double> e{1.0, 1.1, 0.8, 1.05};
  const auto d = acl_drift(e);
  CHECK(d.drift == Approx(0.2));
  CHECK(d.e_sup == Approx(1.1));
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(acl_drift(one), imlab::PreconditionError);
}

TEST_CASE("ACL drift of a linear evolution is the potential fluctuation") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  imlab::dynamics::StepperConfig cfg;
  cfg.dt = 1.0 / 32;
  cfg.nonlinearity = imlab::dynamics::Nonlinearity::none;
  const auto traj = imlab::dynamics::evolve_collect(rough(g, 3, 6.0), 1.0, cfg, {1.0 / 8});
  const double N = 2 * g.nyquist();
  const auto d = acl_drift(traj, N, 0.95, 4.0);
  double pot = 0.0;
  const double p0 = modified_energy(traj.front(), N, 0.95, 4.0).potential;
  for (const auto& x : traj) pot = std::max(pot, std::abs(modified_energy(x, N, 0.95, 4.0).potential - p0));
  CHECK(d.drift == Approx(pot).epsilon(1e-9));
}

TEST_CASE("ACL drift for band-limited data sits at solver tolerance") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  imlab::roughdata::DataRecipe r;
  r.seed = 4;
  r.k_max = 1.9;
  r.window = false;
  const auto w = imlab::roughdata::synthesize(r, g);
  imlab::dynamics::StepperConfig cfg;
  cfg.dt = 1.0 / 64;
  const auto traj = imlab::dynamics::evolve_collect(w, 1.0, cfg, {1.0 / 8});
  std::vector<double> true_e;
  for (const auto& x : traj) true_e.push_back(imlab::dynamics::energy(x, 4.0).total());
  const double solver = acl_drift(true_e).drift;
  for (double N : {2.0, 4.0, 8.0}) CHECK(acl_drift(traj, N, 0.95, 4.0).drift <= 10 * solver);
}

TEST_CASE("Lemma A ratios") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  CHECK_THROWS_AS(lemma_a_ratios(WaveState::zero(g), 2.0, 0.95, 4.0), imlab::PreconditionError);

  // Data on |k| ≤ 1: the gradient ratio is ‖∇u‖/(N^{1-s}‖u‖_{Ḣ^s}) ≤ 1.
  imlab::roughdata::DataRecipe low;
  low.k_max = 1.0;
  low.window = false;
  const auto wl = imlab::roughdata::synthesize(low, g);
  for (double N : {1.0, 2.0, 4.0}) CHECK(lemma_a_ratios(wl, N, 0.95, 4.0).gradient <= 1.0 + 1e-14);

  // The first bound holds with constant 2 on 1000 random fields (symbolically ≤ 2^{1-s}).
  const Grid h(3, 16, 2.0);
  imlab::roughdata::DataRecipe r;
  r.k_min = 3.0;
  r.k_max = 24.0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    r.seed = seed;
    const auto w = imlab::roughdata::synthesize(r, h);
    const double hs = sobolev_norm(w.u, 0.95);
    for (double N : {2.0, 4.0, 8.0, 16.0}) {
      const auto Iu = apply_multiplier(w.u, MultiplierSpec::i_operator(N, 0.95));
      worst = std::max(worst, sobolev_norm(Iu, 1.0) / (std::pow(N, 0.05) * hs));
    }
  }
  CHECK(worst <= 2.0);
  CHECK(worst <= std::pow(2.0, 0.05) + 1e-12);

  // Zero velocity gives a zero velocity ratio.
  const WaveState still(wl.u, SpectralField(g));
  CHECK(lemma_a_ratios(still, 2.0, 0.95, 4.0).velocity == 0.0);
}

TEST_CASE("Lemma B ratio") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  imlab::dynamics::StepperConfig cfg;
  cfg.dt = 1.0 / 32;
  const auto zero = imlab::dynamics::evolve_collect(WaveState::zero(g), 0.5, cfg, {0.125});
  CHECK(lemma_b_ratio(zero, kParams, 4.0) == 0.0);

  cfg.nonlinearity = imlab::dynamics::Nonlinearity::none;
  const auto lin = imlab::dynamics::evolve_collect(rough(g, 6, 6.0), 1.0, cfg, {0.125});
  CHECK(std::abs(pair_norm(lin.back(), 0.95) - pair_norm(lin.front(), 0.95)) < 1e-13 * pair_norm(lin.front(), 0.95));
  CHECK(lemma_b_ratio(lin, kParams, 4.0) <= 1e-12);

  LemmaBInputs in;
  in.norm_T = 2.0;
  in.norm_0 = 1.0;
  in.e_sup = 1.0;
  in.T = 1.0;
  in.z = 0.0;
  CHECK(lemma_b_ratio(in, 4.0, 0.95, 4.0) == Approx(0.5));
  in = LemmaBInputs{};
  in.norm_T = 1.0;
  CHECK_THROWS_AS(lemma_b_ratio(in, 4.0, 0.95, 4.0), imlab::PreconditionError);
}

TEST_CASE("log-log fit") {
  const std::vector<double> xs{1, 2, 4, 8, 16};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(std::pow(x, -2.0));
  const auto f = fit_loglog_slope(xs, ys);
  CHECK(f.slope == Approx(-2.0).epsilon(1e-14));
  CHECK(f.residual < 1e-12);
  const std::vector<double> flat(5, 3.0);
  CHECK(fit_loglog_slope(xs, flat).slope == Approx(0.0).scale(1.0).epsilon(1e-14));

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  std::vector<double> nx, ny;
  for (double x = 1; x <= 1024; x *= 2) {
    nx.push_back(x);
    ny.push_back(3 * std::pow(x, -0.5) * (1 + 0.01 * noise(rng)));
  }
  CHECK(std::abs(fit_loglog_slope(nx, ny).slope + 0.5) < 0.02);

  const std::vector<double> two{1, 2};
  CHECK_THROWS_AS(fit_loglog_slope(two, two), imlab::PreconditionError);
  const std::vector<double> three{1, 2, 3};
  const std::vector<double> neg{1, -2, 3};
  CHECK_THROWS_AS(fit_loglog_slope(three, neg), imlab::PreconditionError);
}

TEST_CASE("scaling data to a target modified energy") {
  const Grid g(3, 16, 2 * std::numbers::pi);
  const auto w = rough(g, 7, 6.0);
  for (double target : {0.01, 0.5, 3.0}) {
    const auto x = scale_to_modified_energy(w, target, 4.0, 0.95, 4.0);
    CHECK(modified_energy(x, 4.0, 0.95, 4.0).total == Approx(target).epsilon(1e-12));
  }
  CHECK_THROWS_AS(scale_to_modified_energy(WaveState::zero(g), 1.0, 4.0, 0.95, 4.0), imlab::PreconditionError);
}
