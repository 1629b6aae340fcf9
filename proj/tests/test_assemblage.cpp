#include <catch_amalgamated.hpp>
#include <cmath>
#include <complex>

#include "tsteer/assemblage.hpp"

using namespace tsteer;

TEST_CASE("assemblage from the maximally mixed input", "[assemblage]") {
  const std::complex<double> f(0.55, 0.35);
  const MeasurementSet meas = build_measurements(0.8, 1.3, 3);
  const Assemblage a = build_assemblage(f, meas, maximally_mixed());
  REQUIRE(a.n == 3);
  CHECK_NOTHROW(a.validate());

  Mat2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << std::complex<double>(0, 0), std::complex<double>(0, -1), std::complex<double>(0, 1),
      std::complex<double>(0, 0);
  sz << 1, 0, 0, -1;
  for (int i = 1; i <= 3; ++i) {
    const Eigen::Vector3d n = meas.directions[i - 1].axis;
    const Eigen::Vector3d shrunk(f.real() * n(0) - f.imag() * n(1),
                                 f.imag() * n(0) + f.real() * n(1), n(2));
    for (int out : {1, -1}) {
      const Mat2 expect =
          0.25 * (Mat2::Identity() + static_cast<double>(out) *
                                         (shrunk(0) * sx + shrunk(1) * sy + shrunk(2) * sz));
      CHECK((a.at(i, out) - expect).cwiseAbs().maxCoeff() <= 1e-13);
    }
    CHECK((a.marginal(i) - Mat2::Identity() / 2.0).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("assemblage invariant checks", "[assemblage]") {
  Assemblage bad;
  bad.n = 2;
  bad.entries.resize(2);
  Mat2 neg;
  neg << -0.1, 0.0, 0.0, 0.6;
  bad.entries[0] = {neg, (Mat2::Identity() / 2.0 - neg).eval()};
  bad.entries[1] = {(Mat2::Identity() / 4.0).eval(), (Mat2::Identity() / 4.0).eval()};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  Assemblage mism;
  mism.n = 2;
  mism.entries.resize(2);
  mism.entries[0] = {(Mat2::Identity() / 4.0).eval(), (Mat2::Identity() / 4.0).eval()};
  Mat2 shifted;
  shifted << 0.4, 0.0, 0.0, 0.1;
  mism.entries[1] = {shifted, shifted};
  CHECK_THROWS_AS(mism.validate(), std::invalid_argument);  // marginals disagree

  Assemblage wrong_trace;
  wrong_trace.n = 2;
  wrong_trace.entries.resize(2);
  wrong_trace.entries[0] = {(Mat2::Identity() / 2.0).eval(), (Mat2::Identity() / 2.0).eval()};
  wrong_trace.entries[1] = {(Mat2::Identity() / 2.0).eval(), (Mat2::Identity() / 2.0).eval()};
  CHECK_THROWS_AS(wrong_trace.validate(), std::invalid_argument);
}

TEST_CASE("deterministic strategies enumerate outcome assignments", "[assemblage]") {
  const StrategySet two = deterministic_strategies(2);
  REQUIRE(two.size() == 4);
  CHECK(two.outcome(0, 1) == 1);
  CHECK(two.outcome(0, 2) == 1);
  CHECK(two.outcome(1, 1) == -1);
  CHECK(two.outcome(1, 2) == 1);
  CHECK(two.outcome(2, 1) == 1);
  CHECK(two.outcome(2, 2) == -1);
  CHECK(two.outcome(3, 1) == -1);
  CHECK(two.outcome(3, 2) == -1);
  CHECK(deterministic_strategies(3).size() == 8);
  CHECK_THROWS_AS(deterministic_strategies(1), std::invalid_argument);
}

TEST_CASE("zero dephasing keeps the raw conditional states", "[assemblage]") {
  const MeasurementSet meas = build_measurements(0.0, 0.0, 2);
  const Assemblage a = build_assemblage(1.0, meas, maximally_mixed());
  // Direction 1 is z: outcome +1 collapses onto the up state.
  Mat2 up = Mat2::Zero();
  up(0, 0) = 0.5;
  CHECK((a.at(1, 1) - up).cwiseAbs().maxCoeff() <= 1e-14);
}
