#include "doctest.h"

#include "tempered/gallery.hpp"

#include <cmath>
#include <set>

using namespace tempered;

namespace {

// Brute-force cut-and-project enumeration over a square of (m, n).
std::vector<double> fibonacci_oracle(double radius) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<double> out;
  for (long m = -200; m <= 200; ++m)
    for (long n = -200; n <= 200; ++n) {
      const double star = m - n / phi;
      const double x = m + n * phi;
      if (star >= -1.0 && star < phi - 1.0 - 1e-12 && std::abs(x) < radius) out.push_back(x);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("fibonacci window matches enumeration") {
  const auto got = fibonacci_points(50.0);
  const auto want = fibonacci_oracle(50.0);
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  for (std::size_t i = 1; i < got.size(); ++i) {
    const double g = got[i] - got[i - 1];
    CHECK((std::abs(g - 1.0) < 1e-12 || std::abs(g - phi) < 1e-12));
  }
}

TEST_CASE("entries build deterministically") {
  for (const auto& name : gallery_names()) {
    const auto a = gallery(name);
    const auto b = gallery(name);
    CHECK(a.points.size() == b.points.size());
    CHECK(a.points.size() > 0);
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points.points()[i] == b.points.points()[i]);
  }
  CHECK(gallery("remark", {{"J", 5}}).distribution->series()->truncation == 5);
  CHECK(gallery("zd-comb").crystal->cosets.size() == 1);
  CHECK_THROWS_AS(gallery("nope"), ContractError);
  CHECK_THROWS_AS(gallery("zd-comb", {{"d", 7}}), ContractError);
  CHECK_THROWS_AS(gallery("zd-comb", {{"bogus", 1}}), ContractError);
}

TEST_CASE("seeded crystal properties") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sc = seeded_crystal(seed, 2, 4, 2);
    const Eigen::JacobiSVD<Matrix> svd(sc.crystal.lattice.basis());
    CHECK(svd.singularValues()(0) / svd.singularValues()(1) <= 10.0 + 1e-9);
    CHECK(sc.crystal.cosets.size() == 4);
    CHECK(sc.distribution.generators().size() == 4 * 6);
  }
  const auto a = seeded_crystal(4, 2, 3, 1);
  const auto b = seeded_crystal(4, 2, 3, 1);
  CHECK(a.distribution.generators()[2].coeff == b.distribution.generators()[2].coeff);
}
