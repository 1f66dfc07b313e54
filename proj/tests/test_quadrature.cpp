#include <cmath>
#include <Eigen/Eigenvalues>
#include <random>

#include "doctest.h"
#include "oamq/errors.hpp"
#include "oamq/quadrature.hpp"
#include "oracles.hpp"

using namespace oamq;

namespace {

OamQubit random_qubit(std::mt19937_64& rng, int k = 2) {
  std::normal_distribution<double> g;
  cplx a{g(rng), g(rng)}, b{g(rng), g(rng)};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  return make_qubit(k, a / n, b / n);
}

const char* kLabels[] = {"l", "r", "h", "v", "d", "a"};

}  // namespace

TEST_CASE("inner products of modes") {
  const GridSpec grid{};
  const auto p2 = render_mode({2, 0, 1.0}, grid);
  CHECK(std::abs(inner_product(p2, p2) - 1.0) < 1e-6);
  CHECK(std::abs(inner_product(p2, render_mode({-2, 0, 1.0}, grid))) < 1e-6);
  CHECK(std::abs(inner_product(p2, render_mode({2, 1, 1.0}, grid))) < 1e-6);
  CHECK_THROWS_AS(inner_product(p2, render_mode({2, 0, 1.0}, {6.0, 512})), InputError);
  CHECK_THROWS_AS(inner_product(p2, render_mode({2, 0, 1.0}, {5.0, 1024})), InputError);
}

TEST_CASE("centered knife on l") {
  const GridSpec grid{};
  const auto r = clip_report(canonical_state("l"), Aperture::knife(0.0), grid);
  CHECK(std::abs(r.T - 0.5) < 1e-4);
  CHECK(std::abs(r.kappa_psi - 0.5) < 1e-3);
  CHECK(std::abs(r.kappa_perp) < 1e-3);
  CHECK(std::abs(r.P_o2 - 0.25) < 1e-3);
  REQUIRE(r.F.has_value());
  CHECK(std::abs(*r.F - 1.0) < 1e-3);

  // Monte Carlo cross-check
  const auto mc = oracle::monte_carlo_kappas(2, {{1.0, 0.0, 0.0}}, 1'000'000, 17);
  CHECK(std::abs(r.kappa_psi - mc.kappa_psi[0].mean) < 4 * mc.kappa_psi[0].std_error);
  CHECK(std::abs(r.kappa_perp - mc.kappa_perp[0].mean) < 4 * mc.kappa_perp[0].std_error);
}

TEST_CASE("iris on l against the incomplete gamma closed form") {
  const GridSpec grid{};
  const auto r = clip_report(canonical_state("l"), Aperture::iris(1.0), grid);
  const double T = 1.0 - 5.0 * std::exp(-2.0);
  CHECK(std::abs(oracle::iris_transmittance(2, 1.0) - T) < 1e-14);
  CHECK(std::abs(r.T - T) < 1e-3);
  CHECK(std::abs(r.kappa_perp) < 1e-3);
  CHECK(std::abs(r.P_o2 - T * T) < 1e-3);
  CHECK(std::abs(*r.F - 1.0) < 1e-3);
  // tighter, several radii and windings, with second-order convergence
  for (int k : {1, 2, 3, 5})
    for (double r0 : {0.3, 0.5, 1.0, 1.7, 2.5}) {
      const double ref = oracle::iris_transmittance(k, r0);
      const auto K = aperture_response(Aperture::iris(r0), k, grid);
      const auto K2 = aperture_response(Aperture::iris(r0), k, {6.0, 2 * grid.n});
      const double e1 = std::abs(K(0, 0).real() - ref), e2 = std::abs(K2(0, 0).real() - ref);
      CHECK(e1 < 2e-5);
      CHECK(std::abs(K(1, 1).real() - ref) < 2e-5);
      if (e1 > 1e-8) CHECK(e2 < e1 / 3.0);
      // |+k> and |-k> differ by 2k in l; the square grid cancels that exactly unless 4 | 2k
      CHECK(std::abs(K(0, 1)) < (k % 2 ? 1e-14 : 1e-8));
    }
}

TEST_CASE("open aperture") {
  const auto r = clip_report(canonical_state("d"), Aperture::knife(50.0), GridSpec{});
  CHECK(std::abs(r.T - 1.0) < 1e-6);
  CHECK(std::abs(r.P_o2 - 1.0) < 1e-6);
  CHECK(std::abs(*r.F - 1.0) < 1e-6);
}

TEST_CASE("fully blocked leaves F undefined") {
  const auto r = clip_report(canonical_state("h"), Aperture::knife(-7.0), GridSpec{6.0, 128});
  CHECK(r.T == 0.0);
  CHECK(!r.F.has_value());
}

TEST_CASE("report invariants hold for random states and apertures") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  const GridSpec grid{6.0, 256};
  for (int t = 0; t < 30; ++t) {
    const auto q = random_qubit(rng, 1 + t % 4);
    const auto ap = t % 2 ? Aperture::knife(u(rng)) : Aperture::iris(std::abs(u(rng)) + 0.1);
    const auto r = clip_report(q, ap, grid);
    CHECK(r.T >= 0.0);
    CHECK(r.T <= 1.0 + 1e-9);
    CHECK(std::abs(r.P_psi - std::norm(r.kappa_psi)) < 1e-15);
    CHECK(std::abs(r.P_perp - std::norm(r.kappa_perp)) < 1e-15);
    CHECK(std::abs(r.P_o2 - r.P_psi - r.P_perp) < 1e-15);
    CHECK(r.P_o2 <= r.T + 1e-9);
    if (r.F) CHECK(std::abs(*r.F * (r.P_psi + r.P_perp) - r.P_psi) < 1e-14);
  }
}

TEST_CASE("field route and response route agree") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const GridSpec grid{6.0, 512};
  for (int t = 0; t < 12; ++t) {
    const auto q = random_qubit(rng);
    const auto ap = t % 3 == 0 ? Aperture::iris(std::abs(u(rng)) + 0.2) : Aperture::knife(u(rng));
    const auto a = clip_report(q, ap, grid);
    const auto b = report_from_response(q, aperture_response(ap, q.k, grid));
    // the routes only differ in where straddling cells are sampled
    CHECK(std::abs(a.T - b.T) < 2e-4);
    CHECK(std::abs(a.kappa_psi - b.kappa_psi) < 2e-4);
    CHECK(std::abs(a.kappa_perp - b.kappa_perp) < 2e-4);
  }
  // on a cell-aligned edge they coincide
  const auto q = random_qubit(rng);
  const auto a = clip_report(q, Aperture::knife(0.0), grid);
  const auto b = report_from_response(q, aperture_response(Aperture::knife(0.0), 2, grid));
  CHECK(std::abs(a.kappa_perp - b.kappa_perp) < 1e-12);
  CHECK(std::abs(a.T - b.T) < 1e-12);
}

TEST_CASE("response matches tensor Gauss-Legendre at generic knife edges") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 6; ++t) {
    const double x0 = u(rng);
    const auto K = converge_response(Aperture::knife(x0), 2, GridSpec{6.0, 512}).m;
    const cplx d = oracle::knife_overlap(2, 1.0, 0.0, 1.0, 0.0, x0);
    const cplx off = oracle::knife_overlap(2, 1.0, 0.0, 0.0, 1.0, x0);
    CHECK(std::abs(K(0, 0) - d) < 5e-5);
    CHECK(std::abs(K(1, 1) - d) < 5e-5);
    CHECK(std::abs(K(0, 1) - off) < 5e-5);
  }
}

TEST_CASE("response is Hermitian and contractive") {
  for (auto ap : {Aperture::knife(0.7), Aperture::iris(0.9), Aperture::none()}) {
    const auto K = aperture_response(ap, 2, GridSpec{6.0, 256});
    CHECK((K - K.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(K);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
  }
}

TEST_CASE("state pairing and monotone P_psi under the knife") {
  const GridSpec grid{6.0, 512};
  double last[6] = {-1, -1, -1, -1, -1, -1};
  for (int i = -25; i <= 25; ++i) {
    const double x0 = 0.1 * i + 0.013;
    const auto K = aperture_response(Aperture::knife(x0), 2, grid);
    double P[6];
    for (int s = 0; s < 6; ++s) {
      const auto r = report_from_response(canonical_state(kLabels[s]), K);
      P[s] = r.P_o2;
      CHECK(r.P_psi >= last[s] - 1e-12);
      last[s] = r.P_psi;
    }
    CHECK(std::abs(P[0] - P[1]) < 1e-6);
    CHECK(std::abs(P[4] - P[5]) < 1e-6);
  }
}

TEST_CASE("iris fidelity and universality") {
  const GridSpec grid{6.0, 512};
  for (double r0 = 0.1; r0 < 3.0001; r0 += 0.15) {
    const auto K = aperture_response(Aperture::iris(r0), 2, grid);
    const auto ref = report_from_response(canonical_state("l"), K);
    for (const char* s : kLabels) {
      const auto r = report_from_response(canonical_state(s), K);
      CHECK(std::abs(*r.F - 1.0) < 1e-5);
      CHECK(std::abs(r.T - ref.T) < 1e-5);
      CHECK(std::abs(r.P_o2 - ref.P_o2) < 1e-5);
    }
  }
}

TEST_CASE("converge") {
  SUBCASE("centered knife from n = 256") {
    const auto c = converge(canonical_state("l"), Aperture::knife(0.0), {6.0, 256});
    CHECK(c.converged);
    CHECK(c.grid.n <= 1024);
    CHECK(std::abs(c.report.T - 0.5) < 1e-4);
    CHECK(std::abs(c.report.P_o2 - 0.25) < 1e-3);
  }
  SUBCASE("open aperture converges at once") {
    const auto c = converge(canonical_state("l"), Aperture::none(), {6.0, 256});
    CHECK(c.converged);
    CHECK(c.grid.n == 512);
    CHECK(c.deltas.size() == 1);
  }
  SUBCASE("small iris on h") {
    const auto c = converge(canonical_state("h"), Aperture::iris(0.2), {6.0, 256});
    CHECK(c.converged);
    CHECK(std::abs(*c.report.F - 1.0) < 1e-5);
  }
  SUBCASE("cap hit is flagged but the result is returned") {
    const auto c = converge(canonical_state("d"), Aperture::knife(0.37), {6.0, 64}, 1e-14, 256);
    CHECK(!c.converged);
    CHECK(c.grid.n == 256);
    CHECK(c.report.T > 0.0);
  }
  SUBCASE("states share one refinement") {
    std::vector<OamQubit> qs;
    for (const char* s : kLabels) qs.push_back(canonical_state(s));
    const auto set = converge_states(qs, Aperture::knife(0.45), {6.0, 256});
    CHECK(set.converged);
    REQUIRE(set.reports.size() == 6);
    const auto single = converge(qs[4], Aperture::knife(0.45), set.grid);
    CHECK(std::abs(set.reports[4].P_o2 - single.report.P_o2) < 1e-4);
  }
}
