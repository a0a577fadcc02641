#include <doctest.h>

#include "shiftpred/classes.hpp"
#include "shiftpred/errors.hpp"

using namespace shiftpred;

TEST_CASE("predicted limits for lambda = 2") {
  const LambdaParam l = LambdaParam::parse("2");
  CHECK(predicted_limit(ClassLabel::point(3), l) == Scalar::rational(1, 4));
  CHECK(predicted_limit(ClassLabel::cls(0, 2), l) == Scalar::rational(1, 4));
  CHECK(predicted_limit(ClassLabel::cls(-1, 1), l).is_zero());
  CHECK(predicted_limit(ClassLabel::infinity(), l).is_zero());
  CHECK_THROWS(ClassLabel::cls(0, 0));
}

TEST_CASE("class sequences evaluate to their limit") {
  const LambdaParam l = LambdaParam::parse("2");
  for (Index t = 0; t <= 9; ++t) {
    for (unsigned k = 1; k <= 3; ++k) {
      const ClassLabel c = ClassLabel::cls(t, k);
      for (Wide n : class_sequence(c, 60, 4)) CHECK(x0_eval(l, n) == predicted_limit(c, l));
    }
  }
  for (Wide n : class_sequence(ClassLabel::infinity(), 40, 4)) {
    CHECK(x0_eval(l, n).abs() <= std::pow(2.0, -20));
  }
  CHECK_THROWS_AS(class_sequence(ClassLabel::cls(0, 3), 120, 8), GuardError);
}

TEST_CASE("limit laws along 2^n + t") {
  const LambdaParam l = LambdaParam::parse("2");
  for (Index t : {-7, -1, 0, 1, 5, 12}) CHECK(limit_law_check(l, t, 40).passed());
  CHECK(class_limit_check(l, 10, 2, 60).status == Status::Pass);
  CHECK(class_limit_check(LambdaParam::parse("1.5,0.5"), 10, 2, 60).status == Status::Pass);
}

TEST_CASE("x0 for one lambda fails the limit law of another") {
  // The lambda = 3 law asks x(2^n + 1) -> x(1) / 3 = 1/6; x0 for 2 gives 1/4.
  const LambdaParam two = LambdaParam::parse("2");
  const LambdaParam three = LambdaParam::parse("3");
  const Scalar along = x0_eval(two, (Index{1} << 30) + 1);
  CHECK(along == Scalar::rational(1, 4));
  CHECK(along != three.inverse() * x0_eval(two, Index{1}));
}

TEST_CASE("class disjointness") {
  CHECK(class_disjointness_check(0, 3, 1, 2, 2, 10).status == Status::Pass);
  CHECK(class_disjointness_grid(4, 2, 10).status == Status::Pass);
  CHECK_THROWS_AS(class_disjointness_check(0, 0, 5, 1, 1, 10), GuardError);
}

TEST_CASE("measure to l1 and pairing") {
  const LambdaParam l = LambdaParam::parse("2");
  ClassMeasure mu;
  mu.point_mass = FinSeq::delta(1, Scalar(2));
  mu.add(ClassLabel::cls(1, 2), Scalar(4));
  mu.add(ClassLabel::infinity(), Scalar(7));
  const FinSeq a = measure_to_l1(mu, l);
  CHECK(a == FinSeq::delta(1, Scalar(3)));
  CHECK(pairing_check(mu, GeneratorBattery::standard(4, 2, 256), l).status == Status::Pass);
  CHECK(generator_pairing(FinSeq{{-3, Scalar(1)}, {5, Scalar::rational(2, 3)}}, l).status == Status::Pass);
}
