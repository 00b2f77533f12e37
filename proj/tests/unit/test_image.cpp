#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "smm/diskopt.hpp"
#include "smm/image.hpp"

using namespace smm;
using smm::testing::pt;

TEST_CASE("cruciform field on the pentagon") {
  const Eigen::MatrixXd Q = objective_hyperplane_basis(pt({0, 1}));
  const auto f = make_receptive_field(pt({0.5, 0.75}), Q, 0.1, 3, FieldKind::Cruciform);
  REQUIRE(f.size() == 3);
  const double xs[] = {0.4, 0.5, 0.6};
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(f.points[j][0] == doctest::Approx(xs[j]));
    CHECK(f.points[j][1] == 0.75);
  }
  CHECK(f.axis == std::vector<int>{0, -1, 0});
  CHECK(f.shape == std::vector<Index>{3});
}

TEST_CASE("field cardinalities and placement") {
  std::mt19937_64 rng(8);
  for (Index n : {2, 3, 4}) {
    Vector c = smm::testing::gaussian_point(rng, n, 1.0);
    const Eigen::MatrixXd Q = objective_hyperplane_basis(c);
    const Point u = smm::testing::gaussian_point(rng, n, 2.0);
    for (int eta : {1, 3, 5, 9}) {
      const auto lat = make_receptive_field(u, Q, 0.3, eta, FieldKind::Lattice);
      const auto cru = make_receptive_field(u, Q, 0.3, eta, FieldKind::Cruciform);
      CHECK(lat.size() == static_cast<Index>(std::pow(eta, n - 1)));
      CHECK(cru.size() == static_cast<Index>((eta - 1) * (n - 1) + 1));
      Index prod = 1;
      for (Index s : lat.shape) prod *= s;
      CHECK(prod == lat.size());
      for (const auto* f : {&lat, &cru}) {
        for (const Point& z : f->points) {
          CHECK((z - u).norm() <= 0.3 + 1e-12);
          CHECK(std::abs(c.dot(z - u)) <= 1e-12 * c.norm() * (1.0 + u.norm()));
        }
      }
    }
  }
}

TEST_CASE("lattice layout") {
  const Eigen::MatrixXd Q = objective_hyperplane_basis(pt({0, 0, 1}));
  const auto f = make_receptive_field(pt({0, 0, 0}), Q, 1.0, 3, FieldKind::Lattice);
  REQUIRE(f.size() == 9);
  CHECK(f.shape == std::vector<Index>{3, 3});
  // Row-major, last axis fastest; corners are clamped onto the unit circle.
  CHECK(f.tangent[1][0] == doctest::Approx(-1.0));
  CHECK(f.tangent[1][1] == doctest::Approx(0.0));
  CHECK(f.tangent[3][0] == doctest::Approx(0.0));
  CHECK(f.tangent[3][1] == doctest::Approx(-1.0));
  CHECK(f.tangent[0].norm() == doctest::Approx(1.0));
  CHECK(f.tangent[0][0] == doctest::Approx(-std::sqrt(0.5)));
  CHECK(f.tangent[4].norm() == 0.0);
}

TEST_CASE("field argument checks") {
  const Eigen::MatrixXd Q = objective_hyperplane_basis(pt({0, 1}));
  CHECK_THROWS_AS(make_receptive_field(pt({0, 0}), Q, 0.1, 0, FieldKind::Lattice), LpError);
  CHECK_THROWS_AS(make_receptive_field(pt({0, 0}), Q, 0.1, 4, FieldKind::Cruciform), LpError);
  CHECK_NOTHROW(make_receptive_field(pt({0, 0}), Q, 0.1, 4, FieldKind::Lattice));
  CHECK_THROWS_AS(make_receptive_field(pt({0, 0, 0}), Q, 0.1, 3, FieldKind::Lattice), LpError);
  CHECK(parse_field_kind("lattice") == FieldKind::Lattice);
  CHECK(std::string(to_string(FieldKind::Cruciform)) == "cruciform");
  CHECK_THROWS_AS(parse_field_kind("star"), LpError);
}

TEST_CASE("local image of the pentagon") {
  const LpProblem p = smm::testing::pentagon();
  const auto img = local_image(p, pt({0.5, 0.75}), 3, 0.1, FieldKind::Cruciform);
  REQUIRE(img.values.size() == 3);
  CHECK(img.values[0] == doctest::Approx(0.05));
  CHECK(std::abs(img.values[1]) <= 1e-15);
  CHECK(img.values[2] == doctest::Approx(-0.05));

  const auto one = local_image(p, pt({0.5, 0.75}), 1, 0.1, FieldKind::Lattice);
  REQUIRE(one.values.size() == 1);
  CHECK(std::abs(one.values[0]) <= 1e-15);

  std::mt19937_64 rng(4);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const LpProblem q = gen_random(2 + s % 3, s % 7, s);
    const auto im = local_image(q, *q.interior_point(), 5, 0.5, FieldKind::Lattice);
    for (double v : im.values) CHECK(std::isfinite(v));
  }
}

TEST_CASE("training records") {
  const LpProblem p = smm::testing::pentagon();
  const Point u = pt({0.5, 0.75});
  const auto img = local_image(p, u, 3, 0.1, FieldKind::Cruciform);
  const auto rec = emit_training_record(p, u, img, 7);
  CHECK_FALSE(rec.terminal);
  CHECK(rec.label[0] == doctest::Approx(-2.0 / std::sqrt(5.0)));
  CHECK(rec.label[1] == doctest::Approx(1.0 / std::sqrt(5.0)));
  CHECK(rec.label[0] == doctest::Approx(-0.894).epsilon(1e-3));
  CHECK(rec.label_tangent.norm() == doctest::Approx(1.0));

  const auto j = to_json(rec);
  CHECK(j["image"]["values"].size() == 3);
  CHECK(j["meta"]["seed"] == 7);
  CHECK(j["meta"]["eta"] == 3);
  CHECK(j["terminal"] == false);
  CHECK(to_json(emit_training_record(p, u, img, 7)).dump() == j.dump());

  const Point opt = pt({0, 1});
  const auto term = emit_training_record(p, opt, local_image(p, opt, 3, 0.1, FieldKind::Cruciform));
  CHECK(term.terminal);
  CHECK(term.label.norm() == 0.0);
  CHECK(to_json(term)["meta"]["seed"].is_null());
}

TEST_CASE("lattice image argmax approaches the exact disk argmax") {
  std::mt19937_64 rng(12);
  for (std::uint64_t k = 0; k < 10; ++k) {
    const LpProblem p = gen_random(2 + k % 2, k % 9, 500 + k);
    const Point u = lift_to_surface(p, smm::testing::random_feasible_point(p, rng));
    const double r = 0.5;
    const auto img = local_image(p, u, 33, r, FieldKind::Lattice);
    const double best = *std::max_element(img.values.begin(), img.values.end());
    const double exact = disk_argmax_exact(p, make_disk(p, u, r)).bias;
    CHECK(best <= exact + 1e-9);
    CHECK(exact - best <= 5e-3 * r * smm::testing::max_bias_slope(p));
  }
}
