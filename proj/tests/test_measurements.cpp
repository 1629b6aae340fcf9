#include <catch_amalgamated.hpp>
#include <cmath>

#include "tsteer/measurements.hpp"

using namespace tsteer;
using Catch::Matchers::WithinAbs;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("projector structure for arbitrary angles", "[measurements]") {
  for (auto [theta, phi] : {std::pair{0.3, 1.2}, std::pair{2.1, 0.4}, std::pair{1.0, 2.9}}) {
    const MeasurementSet set = build_measurements(theta, phi, 3);
    REQUIRE(set.n == 3);
    for (int i = 1; i <= 3; ++i) {
      const Mat2& p = set.projector(i, 1);
      const Mat2& q = set.projector(i, -1);
      CHECK((p + q - Mat2::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK(std::abs(p.trace() - 1.0) <= 1e-14);  // rank one
      CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK_THAT(set.directions[i - 1].axis.norm(), WithinAbs(1.0, 1e-13));
    }
    // Mutually unbiased: Bloch axes pairwise orthogonal.
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j)
        CHECK_THAT(set.directions[i - 1].axis.dot(set.directions[j - 1].axis),
                   WithinAbs(0.0, 1e-13));
  }
}

TEST_CASE("canonical families", "[measurements]") {
  // theta = phi = 0: directions along z, y, x.
  const MeasurementSet zp = build_measurements(0.0, 0.0, 3);
  CHECK((zp.directions[0].axis - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-14);
  CHECK((zp.directions[1].axis - Eigen::Vector3d(0, 1, 0)).norm() <= 1e-14);
  CHECK((zp.directions[2].axis - Eigen::Vector3d(1, 0, 0)).norm() <= 1e-14);

  // Equatorial: first two axes have no z component, third is z itself.
  const MeasurementSet eq = build_measurements(0.0, pi / 2.0, 3);
  CHECK_THAT(eq.directions[0].axis(2), WithinAbs(0.0, 1e-14));
  CHECK_THAT(eq.directions[1].axis(2), WithinAbs(0.0, 1e-14));
  CHECK((eq.directions[2].axis - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-14);
}

TEST_CASE("observable from projectors", "[measurements]") {
  const MeasurementSet set = build_measurements(0.0, 0.0, 2);
  Mat2 sz;
  sz << 1.0, 0.0, 0.0, -1.0;
  CHECK((set.observable(1) - sz).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("argument validation", "[measurements]") {
  CHECK_THROWS_AS(build_measurements(0.0, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_measurements(0.0, 0.0, 4), std::invalid_argument);
  const MeasurementSet set = build_measurements(0.0, 0.0, 2);
  CHECK_THROWS_AS(set.projector(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(set.projector(1, 0), std::invalid_argument);
}
