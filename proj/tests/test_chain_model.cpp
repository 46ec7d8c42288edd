#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtransfer/chain_model.hpp"

#include <cmath>
#include <sstream>

using namespace qtransfer;

namespace {

ChainSpec chain(int n, double j0) {
  ChainSpec s;
  s.n_total = n;
  s.j0 = j0;
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("build_couplings") {
  const auto p7 = build_couplings(chain(7, 0.1));
  CHECK(p7.couplings == std::vector<double>{1, 1, 0.1, 0.1, 1, 1});

  const auto p19 = build_couplings(chain(19, 0.01));
  REQUIRE(p19.couplings.size() == 18);
  int weak = 0;
  for (std::size_t i = 0; i < 18; ++i) {
    if (i == 2 || i == 15)
      CHECK(p19.couplings[i] == 0.01);
    else
      CHECK(p19.couplings[i] == 1.0);
    weak += p19.couplings[i] != 1.0;
  }
  CHECK(weak == 2);

  CHECK_THROWS_AS(build_couplings(chain(6, 0.01)), std::invalid_argument);
  CHECK_THROWS_AS(build_couplings(chain(5, 0.01)), std::invalid_argument);
  CHECK_THROWS_AS(build_couplings(chain(20, 0.01)), std::invalid_argument);
  CHECK_THROWS_AS(build_couplings(chain(19, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(build_couplings(chain(19, 1.5)), std::invalid_argument);
}

TEST_CASE("resonance condition is a warning") {
  CHECK(chain(19, 0.01).resonant());
  CHECK(chain(23, 0.01).resonant());
  CHECK_FALSE(chain(21, 0.01).resonant());
  CHECK(chain(21, 0.01).resonance_warning().has_value());
  CHECK_FALSE(chain(19, 0.01).resonance_warning().has_value());
  CHECK_NOTHROW(build_couplings(chain(21, 0.01)));
}

TEST_CASE("small uniform spectra") {
  const auto s2 = diagonalize(uniform_couplings(2));
  CHECK(s2.omegas[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(s2.omegas[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto s3 = diagonalize(uniform_couplings(3));
  CHECK(std::abs(s3.omegas[0] + std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s3.omegas[1]) < 1e-15);
  CHECK(std::abs(s3.omegas[2] - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("spectrum invariants for chain patterns") {
  for (int n : {7, 11, 15, 19, 23, 27})
    for (double j0 : {0.01, 0.05, 0.3, 1.0}) {
      CAPTURE(n);
      CAPTURE(j0);
      const auto pattern = build_couplings(chain(n, j0));
      const auto s = diagonalize(pattern);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      CHECK((s.modes.transpose() * s.modes - id).cwiseAbs().maxCoeff() < 1e-12);
      const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(s.omegas.data(), n);
      CHECK((s.modes * w.asDiagonal() * s.modes.transpose() - hopping_matrix(pattern))
                .cwiseAbs()
                .maxCoeff() < 1e-10);
      for (int k = 0; k < n; ++k) CHECK(std::abs(s.omegas[k] + s.omegas[n - 1 - k]) < 1e-12);
      for (int k = 1; k < n; ++k) CHECK(s.omegas[k - 1] <= s.omegas[k]);
    }
}

// Reference values from LAPACK dsyevd in double precision (numpy.linalg.eigh).
TEST_CASE("perturbative frequencies against a LAPACK reference") {
  struct Row {
    int n;
    double j0, omega5, minus, plus;
  };
  const Row rows[] = {
      {7, 0.01, 0.009999749996875704, 1.7678332425830057e-05, 1.4142312407055209},
      {11, 0.05, 0.028859495820385783, 0.00044180371769775295, 1.4146553660907926},
      {19, 0.01, 0.0037795637395375515, 1.76756813717871e-05, 1.4142312380544664},
      {19, 0.02, 0.0075586415797083868, 7.0678895378040174e-05, 0},
      {23, 0.01, 0.0033332376571087482, 1.7674798040046014e-05, 0},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CAPTURE(r.j0);
    const auto spec = chain(r.n, r.j0);
    const auto f = perturbative_frequencies(diagonalize(build_couplings(spec)), spec);
    CHECK(rel(f.omega5, r.omega5) < 1e-12);
    CHECK(rel(f.omega76_minus, r.minus) < 1e-9);
    if (r.plus > 0) CHECK(rel(f.omega76_plus, r.plus) < 1e-13);
    CHECK(f.omega76_minus < f.omega5);
    CHECK(f.omega5 < f.omega76_plus);
    CHECK(f.t_slow == doctest::Approx(2 * M_PI / f.omega76_minus));
    CHECK(f.t_fast == doctest::Approx(2 * M_PI / f.omega5));
    CHECK(f.tau_estimate == doctest::Approx(f.t_slow / 4));
  }
}

TEST_CASE("frequency scaling with J0 at N = 19") {
  const auto f1 = perturbative_frequencies(diagonalize(build_couplings(chain(19, 0.01))),
                                           chain(19, 0.01));
  const auto f2 = perturbative_frequencies(diagonalize(build_couplings(chain(19, 0.02))),
                                           chain(19, 0.02));
  CHECK(f1.omega5 / f1.omega76_minus > 100);
  CHECK(f2.omega5 / f1.omega5 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(f2.omega76_minus / f1.omega76_minus == doctest::Approx(4.0).epsilon(0.10));
}

TEST_CASE("ordering omega76- < omega5 < omega76+ for all J0 <= 0.1") {
  for (int n : {11, 19, 23})
    for (double j0 = 0.005; j0 <= 0.1 + 1e-12; j0 += 0.005) {
      const auto spec = chain(n, j0);
      const auto f = cluster_frequencies(diagonalize(build_couplings(spec)));
      CHECK(f.omega76_minus < f.omega5);
      CHECK(f.omega5 < f.omega76_plus);
    }
}

TEST_CASE("perturbative_frequencies regime errors") {
  const auto strong = chain(23, 0.3);
  CHECK_THROWS_AS(perturbative_frequencies(diagonalize(build_couplings(strong)), strong),
                  std::domain_error);
  const auto off = chain(21, 0.01);
  CHECK_THROWS_AS(perturbative_frequencies(diagonalize(build_couplings(off)), off),
                  std::invalid_argument);
  CHECK_NOTHROW(cluster_frequencies(diagonalize(build_couplings(strong))));
}

TEST_CASE("spectrum CSV") {
  std::ostringstream out;
  write_spectrum_csv(out, diagonalize(uniform_couplings(3)));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,omega,phi_1,phi_2,phi_3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  CHECK(out.str().find('\r') == std::string::npos);
}
