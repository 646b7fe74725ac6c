#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/dynamics.hpp"

using namespace qcorr;

namespace {

std::vector<StateSpec> family_grid() {
  std::vector<StateSpec> out;
  for (double g : {0.0, 0.2, 0.4, 2.0 / 3.0, 0.8, 1.0}) {
    StateSpec s;
    s.family = Family::MEMS;
    s.gamma = g;
    out.push_back(s);
  }
  for (const auto& [c, theta] : {std::pair{0.3, 0.0}, std::pair{0.5, 1.2},
                                 std::pair{0.8, 0.7}}) {
    StateSpec s;
    s.family = Family::RhoN;
    s.c = c;
    s.theta = theta;
    out.push_back(s);
  }
  for (const auto& [sv, phi, theta] :
       {std::tuple{0.125, 0.6, 0.0}, std::tuple{0.5, 1.0, 0.9},
        std::tuple{0.7, 2.0, 0.0}}) {
    StateSpec s;
    s.family = Family::RhoM;
    s.c = 0.5;
    s.s = sv;
    s.phi = phi;
    s.theta = theta;
    out.push_back(s);
  }
  return out;
}

Mat4 mems_printed_evolution(double gamma, double j, double b, double t) {
  // Eq.-style reference built directly in the test
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = 1.0 / 3.0;
  m(1, 1) = std::cos(j * t) * std::cos(j * t) / 3.0;
  m(2, 2) = std::sin(j * t) * std::sin(j * t) / 3.0;
  m(1, 2) = Scalar(0, 1.0 / 6.0) * std::sin(2.0 * j * t);
  m(2, 1) = -m(1, 2);
  m(0, 3) = 0.5 * gamma * std::exp(Scalar(0, -4.0 * b * t));
  m(3, 0) = std::conj(m(0, 3));
  return m;
}

}  // namespace

TEST_CASE("build_hamiltonian") {
  CHECK(build_hamiltonian({0.0, 0.0}).norm() == 0.0);

  const Mat4 h10 = build_hamiltonian({1.0, 0.0});
  const Vec4 e10 = herm_eig(h10).values;
  CHECK(e10(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(e10(1)) < 1e-14);
  CHECK(std::abs(e10(2)) < 1e-14);
  CHECK(e10(3) == doctest::Approx(1.0).epsilon(1e-14));

  const Vec4 e11 = herm_eig(build_hamiltonian({1.0, 1.0})).values;
  CHECK(e11(0) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(e11(1) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e11(2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e11(3) == doctest::Approx(2.0).epsilon(1e-14));

  // diag(2B, 0, 0, -2B) with the inner J block
  const Mat4 h = build_hamiltonian({0.7, 0.3});
  CHECK(h(0, 0).real() == doctest::Approx(0.6));
  CHECK(h(3, 3).real() == doctest::Approx(-0.6));
  CHECK(h(1, 2).real() == doctest::Approx(0.7));
  CHECK(std::abs(h(0, 3)) == 0.0);

  // the global rescale knob
  HamiltonianSpec scaled{1.0, 0.0};
  scaled.j_scale = 2.0;
  CHECK((build_hamiltonian(scaled) - build_hamiltonian({2.0, 0.0})).norm() ==
        0.0);
}

TEST_CASE("evolve basics") {
  const DensityMatrix rho = make_mems(0.4);
  const HamiltonianSpec ham{1.3, 0.8};
  CHECK((evolve(rho, ham, 0.0).matrix() - rho.matrix()).norm() < 1e-13);
  CHECK_THROWS_AS(
      evolve(rho, ham, std::numeric_limits<double>::quiet_NaN()),
      ParamOutOfRange);
}

TEST_CASE("evolved MEMS matches the printed matrix entrywise") {
  for (double gamma : {0.2, 0.6}) {
    for (double b : {0.0, 1.0}) {
      const HamiltonianSpec ham{1.0, b};
      const DensityMatrix rho0 = make_mems(gamma);
      for (int k = 0; k < 20; ++k) {
        const double t = 2.0 * M_PI * k / 19;
        const Mat4 ev = evolve(rho0, ham, t).matrix();
        CHECK((ev - mems_printed_evolution(gamma, 1.0, b, t))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("purity is preserved") {
  const StateSpec spec{Family::RhoM, {}, 0.5, 0.125, 0.6, 0.0};
  const DensityMatrix rho0 = build_state(spec);
  const double p0 = purity(rho0.matrix());
  for (double t : {0.3, 1.7, 5.0}) {
    CHECK(std::abs(purity(evolve(rho0, {1.0, 0.5}, t).matrix()) - p0) <
          1e-12);
  }
}

TEST_CASE("closed_form_evolve equals evolve on the family grid") {
  double worst = 0;
  for (const StateSpec& state : family_grid()) {
    const DensityMatrix rho0 = build_state(state);
    for (double j : {0.5, 1.0, 2.0}) {
      for (double b : {0.0, 1.0}) {
        const HamiltonianSpec ham{j, b};
        for (int k = 0; k < 20; ++k) {
          const double t = 2.0 * M_PI * k / 19;
          const Mat4 a = closed_form_evolve(state, ham, t).matrix();
          const Mat4 e = evolve(rho0, ham, t).matrix();
          worst = std::max(worst, (a - e).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("closed_form_evolve rejects Werner") {
  StateSpec spec;
  spec.family = Family::Werner;
  spec.gamma = 0.5;
  CHECK_THROWS_AS(closed_form_evolve(spec, {1.0, 0.0}, 0.5),
                  UnsupportedFamily);
  // Werner under evolve(): only the corner phase moves
  const DensityMatrix w = make_werner(0.5);
  const Mat4 ev = evolve(w, {1.0, 0.7}, 1.3).matrix();
  CHECK(std::abs(ev(1, 1) - w.matrix()(1, 1)) < 1e-13);
  CHECK(std::abs(std::abs(ev(0, 3)) - std::abs(w.matrix()(0, 3))) < 1e-13);
  CHECK(std::abs(ev(0, 3) -
                 w.matrix()(0, 3) * std::exp(-kImag * 4.0 * 0.7 * 1.3)) <
        1e-13);
}

TEST_CASE("X form is closed under evolution") {
  std::mt19937 rng(211);
  for (int trial = 0; trial < 25; ++trial) {
    const Mat4 m = oracle::random_x_state(rng, false);
    const Mat4 ev = evolve_matrix(m, {1.7, 0.9}, 0.3 + trial * 0.21);
    CHECK(is_x_form(ev, 1e-13));
  }
}

TEST_CASE("inner block rotation has period pi/J at B = 0") {
  for (const StateSpec& state : family_grid()) {
    const DensityMatrix rho0 = build_state(state);
    for (double j : {0.5, 2.0}) {
      const HamiltonianSpec ham{j, 0.0};
      for (double t : {0.4, 1.9}) {
        const Mat4 a = evolve(rho0, ham, t).matrix();
        const Mat4 b = evolve(rho0, ham, t + M_PI / j).matrix();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-11);
      }
    }
  }
}

TEST_CASE("correlations are field independent") {
  for (const StateSpec& state : family_grid()) {
    const DensityMatrix rho0 = build_state(state);
    for (double t : {0.7, 2.9}) {
      const CorrelationReport base = report(evolve(rho0, {1.0, 0.0}, t));
      for (double b : {0.5, 2.0}) {
        const CorrelationReport r = report(evolve(rho0, {1.0, b}, t));
        CHECK(std::abs(r.concurrence - base.concurrence) < 1e-9);
        CHECK(std::abs(r.discord - base.discord) < 1e-9);
        CHECK(std::abs(r.linear_entropy - base.linear_entropy) < 1e-9);
        CHECK(r.bell_violated == base.bell_violated);
      }
    }
  }
  // Werner as well (evolve() route only)
  const DensityMatrix w = make_werner(0.8);
  const CorrelationReport base = report(evolve(w, {1.0, 0.0}, 1.1));
  for (double b : {0.5, 2.0}) {
    const CorrelationReport r = report(evolve(w, {1.0, b}, 1.1));
    CHECK(std::abs(r.concurrence - base.concurrence) < 1e-9);
    CHECK(std::abs(r.discord - base.discord) < 1e-9);
  }
}

TEST_CASE("paper_evolved_state transcriptions") {
  StateSpec mems;
  mems.family = Family::MEMS;
  mems.gamma = 0.4;

  // at t = 0 the printed evolution reproduces the corrected low branch
  CHECK((paper_evolved_state(mems, {1.0, 0.0}, 0.0) - mems_matrix(0.4))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  // and matches evolve() at later times (it is the true dynamics)
  const DensityMatrix rho0 = make_mems(0.4);
  for (double t : {0.35, 1.4}) {
    CHECK((paper_evolved_state(mems, {1.0, 1.0}, t) -
           evolve(rho0, {1.0, 1.0}, t).matrix())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }

  StateSpec r1m;
  r1m.family = Family::RhoM;
  r1m.c = 0.5;
  r1m.s = 0.125;
  r1m.phi = 0.6;
  // t = 0: printed form differs from the constructed state only in the
  // imaginary part of the inner coherence (stale cos(2Jt) factor)
  const Mat4 printed0 = paper_evolved_state(r1m, {1.0, 0.0}, 0.0);
  const Mat4 built = rho_m_matrix(0.5, 0.125, 0.6, 0.0);
  Mat4 diff = printed0 - built;
  const double im_leak = std::sqrt(129.0) / 24.0 * std::cos(0.6);
  CHECK(std::abs(diff(1, 2) - kImag * im_leak) < 1e-14);
  diff(1, 2) = diff(2, 1) = 0;
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-14);

  StateSpec r2m = r1m;
  r2m.s = 0.5;
  const Mat4 p2 = paper_evolved_state(r2m, {1.0, 0.0}, 0.0);
  CHECK(std::abs(p2(3, 3)) == 0.0);  // printed (4,4) entry is zero
  const StateDiagnostics d2 = diagnose(p2);
  CHECK(d2.trace_error == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(validate_state(p2), TraceNotOne);
  // non-Hermitian whenever sin(2Jt) != 0
  CHECK(diagnose(paper_evolved_state(r2m, {1.0, 0.0}, 0.4))
            .hermiticity_error > 0.1);

  StateSpec r3m = r1m;
  r3m.s = 0.7;
  const Mat4 p3 = paper_evolved_state(r3m, {1.0, 0.0}, 0.3);
  CHECK(std::abs(p3(3, 3)) == 0.0);
  CHECK(diagnose(p3).hermiticity_error < 1e-15);

  StateSpec rn;
  rn.family = Family::RhoN;
  rn.c = 0.5;
  CHECK_THROWS_AS(paper_evolved_state(rn, {1.0, 0.0}, 0.1),
                  UnsupportedFamily);
  StateSpec odd = r1m;
  odd.s = 0.3;
  CHECK_THROWS_AS(paper_evolved_state(odd, {1.0, 0.0}, 0.1),
                  UnsupportedFamily);
}

TEST_CASE("paper_linear_entropy closed forms") {
  StateSpec mems;
  mems.family = Family::MEMS;
  mems.gamma = 0.4;
  CHECK(paper_linear_entropy(mems, 0.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(paper_linear_entropy(mems, M_PI / 4) ==
        doctest::Approx(26.0 / 36.0).epsilon(1e-14));

  StateSpec r1m;
  r1m.family = Family::RhoM;
  r1m.c = 0.5;
  r1m.s = 0.125;
  r1m.phi = 0.6;
  CHECK(paper_linear_entropy(r1m, 0.0) ==
        doctest::Approx(21.0 / 96.0).epsilon(1e-14));

  StateSpec r2m = r1m;
  r2m.s = 0.5;
  CHECK(paper_linear_entropy(r2m, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));  // consistent at t = 0

  StateSpec r3m = r1m;
  r3m.s = 0.7;
  // the chosen reading gives 39/60 at t = 0, not the target 7/10
  CHECK(paper_linear_entropy(r3m, 0.0) ==
        doctest::Approx(39.0 / 60.0).epsilon(1e-14));

  StateSpec werner;
  werner.family = Family::Werner;
  werner.gamma = 0.3;
  CHECK_THROWS_AS(paper_linear_entropy(werner, 0.1), UnsupportedFamily);
}
