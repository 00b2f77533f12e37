#include <doctest.h>

#include <random>
#include <string>

#include "helpers.hpp"

using namespace smm;
using smm::testing::pt;

namespace {

ErrorKind parse_error_kind(const std::string& text) {
  try {
    (void)parse_problem(text);
  } catch (const LpError& e) {
    return e.kind();
  }
  FAIL("expected an LpError");
  return ErrorKind::Parse;
}

std::string parse_error_message(const std::string& text) {
  try {
    (void)parse_problem(text);
  } catch (const LpError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("pentagon file parses with recessive rows 0 and 1") {
  const LpProblem p = smm::testing::pentagon();
  CHECK(p.n() == 2);
  CHECK(p.m() == 5);
  CHECK(p.recessive() == IndexSet{0, 1});
  CHECK_FALSE(p.interior_point().has_value());
  CHECK(p.c_norm() == doctest::Approx(1.0));
}

TEST_CASE("parse errors carry their kind") {
  const std::string good_rows = R"("A": [[1, 2], [2, 1]], "b": [2, 2])";
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, )" + good_rows + R"(, "c": [0, 0]})") == ErrorKind::ZeroObjective);
  CHECK(parse_error_message(R"({"n": 2, "m": 2, )" + good_rows + R"(, "c": [0, 0]})").find("zero objective gradient") !=
        std::string::npos);

  const std::string zero_row = R"({"n": 2, "m": 2, "A": [[1, 2], [0, 0]], "b": [2, 2], "c": [0, 1]})";
  CHECK(parse_error_kind(zero_row) == ErrorKind::ZeroConstraintRow);
  CHECK(parse_error_message(zero_row).find("zero constraint row") != std::string::npos);

  CHECK(parse_error_kind(R"({"n": 2, "m": 1, "A": [[1, 2]], "b": [2], "c": [0, 1]})") == ErrorKind::TooFewConstraints);
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, "A": [[1, 2], [2, 1]], "b": [2], "c": [0, 1]})") ==
        ErrorKind::DimensionMismatch);
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, "A": [[1, 2], [2, 1, 3]], "b": [2, 2], "c": [0, 1]})") ==
        ErrorKind::DimensionMismatch);
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, "A": [[1, 2], [2, 1]], "b": [2, 2], "c": [0, 1, 0]})") ==
        ErrorKind::DimensionMismatch);
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, "A": [[1, 2], [2, 1]], "b": [2, 2]})") == ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, "A": [[1, "x"], [2, 1]], "b": [2, 2], "c": [0, 1]})") ==
        ErrorKind::Parse);
  CHECK(parse_error_kind("{\"n\": 2, ") == ErrorKind::Parse);
  CHECK(parse_error_kind("[1, 2]") == ErrorKind::Parse);
  CHECK(parse_error_kind(R"({"n": 2, "m": 2, )" + good_rows + R"(, "c": [0, 1], "interior_point": [1]})") ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("recessive classification") {
  SUBCASE("single downward row has no recessive half-space") {
    Eigen::MatrixXd A(1, 2);
    A << 0, -1;
    CHECK(recessive_indices(A, pt({0, 1})).empty());
  }
  SUBCASE("slab fixture keeps the two slanted rows") {
    const LpProblem p = smm::testing::slab3d();
    CHECK(recessive_indices(p) == IndexSet{0, 1});
  }
  SUBCASE("a row orthogonal to c is not recessive") {
    const LpProblem p = smm::testing::pentagon();
    CHECK_FALSE(p.is_recessive(3));
    CHECK(p.c_dot(3) == 0.0);
  }
  SUBCASE("membership agrees with a hand-rolled dot product on generated problems") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const LpProblem p = gen_random(2 + seed % 5, seed % 9, seed);
      for (Index i = 0; i < p.m(); ++i) {
        double dot = 0.0;
        for (Index j = 0; j < p.n(); ++j) dot += p.A()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * p.c()[static_cast<Eigen::Index>(j)];
        const bool listed = std::find(p.recessive().begin(), p.recessive().end(), i) != p.recessive().end();
        CHECK(listed == (dot > 0.0));
      }
    }
  }
  SUBCASE("no recessive rows is reported through objective_unbounded") {
    Eigen::MatrixXd A(2, 2);
    A << -1, 0, 0, -1;
    const LpProblem p(A, Eigen::Vector2d(0, 0), pt({1, 1}));
    CHECK(p.objective_unbounded());
  }
}

TEST_CASE("feasibility on the pentagon") {
  const LpProblem p = smm::testing::pentagon();
  CHECK(is_feasible(p, pt({0.5, 0.5})));
  CHECK_FALSE(is_feasible(p, pt({0, 0})));
  CHECK(is_feasible(p, pt({0, 1})));
  CHECK(is_feasible(p, pt({2.0 / 3.0, 2.0 / 3.0})));
  CHECK_FALSE(is_feasible(p, pt({0, 1.01})));
  CHECK(is_feasible(p, pt({0, 1 + 1e-10})));
  Tolerances strict;
  strict.feas = 1e-12;
  CHECK_FALSE(is_feasible(p, pt({0, 1 + 1e-10}), strict));
  CHECK_THROWS_AS(is_feasible(p, pt({0, 1, 0})), LpError);
}

TEST_CASE("active sets on the pentagon") {
  const LpProblem p = smm::testing::pentagon();
  CHECK(active_set(p, pt({2.0 / 3.0, 2.0 / 3.0})) == IndexSet{0, 1});
  CHECK(active_set(p, pt({0, 1})) == IndexSet{0, 2, 3});
  CHECK(active_set(p, pt({0.5, 0.6})).empty());
  CHECK(active_set(p, pt({1, 0})) == IndexSet{1, 2, 4});
}

TEST_CASE("active constraints of a feasible point can be relaxed without changing membership") {
  Tolerances exact;
  exact.feas = 1e-300;
  const LpProblem p = smm::testing::pentagon();
  for (const Point& x : {pt({0, 1}), pt({1, 0}), pt({0.5, 0.75})}) {
    REQUIRE(is_feasible(p, x, exact));
    for (Index i : active_set(p, x)) {
      Eigen::VectorXd b = p.b();
      b[static_cast<Eigen::Index>(i)] += 1.0;
      CHECK(is_feasible(LpProblem(p.A(), b, p.c()), x, exact));
    }
  }
}

TEST_CASE("gen_random is deterministic and well formed") {
  CHECK(gen_random(4, 8, 42) == gen_random(4, 8, 42));
  CHECK_FALSE(gen_random(4, 8, 42) == gen_random(4, 8, 43));

  const LpProblem box = gen_random(2, 0, 3);
  CHECK(box.m() == 4);
  CHECK(is_feasible(box, pt({5, 5})));
  CHECK(is_feasible(box, pt({10, 0})));
  CHECK_FALSE(is_feasible(box, pt({10.5, 0})));

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index n = 2 + seed % 5;
    const LpProblem p = gen_random(n, seed % 12, seed);
    REQUIRE(p.interior_point().has_value());
    CHECK(is_feasible(p, *p.interior_point()));
    CHECK_FALSE(recessive_indices(p).empty());
    CHECK(p.m() == 2 * n + seed % 12);
    for (Index i = 0; i < p.m(); ++i) CHECK(p.A().row(static_cast<Eigen::Index>(i)).norm() == doctest::Approx(1.0));
    CHECK(p.c_norm() == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(gen_random(1, 0, 0), LpError);
}

TEST_CASE("tolerances must be positive") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.active = 0.0;
  CHECK_THROWS_AS(t.validate(), LpError);
  t = Tolerances{};
  t.feas = -1.0;
  CHECK_THROWS_AS(t.validate(), LpError);
  CHECK(Tolerances{}.active_band(-1.0) == doctest::Approx(2e-9));
}
