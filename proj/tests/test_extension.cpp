#include <doctest.h>

#include "helpers.hpp"
#include "shiftpred/errors.hpp"
#include "shiftpred/extension.hpp"

using namespace shiftpred;
using testing_helpers::random_complex;
using testing_helpers::random_rational;

TEST_CASE("closed form agrees with the brute-force sum") {
  std::mt19937_64 rng(3);
  const LambdaParam l = LambdaParam::parse("2");
  for (int trial = 0; trial < 10; ++trial) {
    const FinSeq y = random_rational(rng, -5, 20, 5);
    if (y.empty()) continue;
    const ExtensionMap e(y, l);
    for (Index n = -200; n <= 200; ++n) CHECK(e.value_at(n) == e.value_by_sum(n));
  }
}

TEST_CASE("extension restricts to y and obeys the tail bound") {
  std::mt19937_64 rng(5);
  for (const char* lam : {"2", "3", "1.2,0.9"}) {
    const LambdaParam l = LambdaParam::parse(lam);
    for (int trial = 0; trial < 5; ++trial) {
      const FinSeq y = l.is_exact() ? random_rational(rng, 1, 64, 6) : random_complex(rng, 1, 64, 6);
      if (y.empty()) continue;
      const Extension e = extend(y, l, Window::radius(2048));
      CHECK(e.certificate.ok);
      CHECK(e.certificate.off_support_max <= e.certificate.bound + 1e-12);
      if (l.is_exact()) CHECK(e.certificate.support_error == 0.0);
    }
  }
}

TEST_CASE("extension is linear on a fixed hull and shift-equivariant") {
  std::mt19937_64 rng(9);
  const LambdaParam l = LambdaParam::parse("2");
  for (int trial = 0; trial < 6; ++trial) {
    FinSeq y = random_rational(rng, 2, 15, 4);
    FinSeq z = random_rational(rng, 2, 15, 4);
    y.set(1, Scalar(1));
    y.set(16, Scalar(2));
    z.set(1, Scalar(3));
    z.set(16, Scalar(-1));
    const ExtensionMap ey(y, l);
    const ExtensionMap ez(z, l);
    const ExtensionMap es(y + z, l);
    const ExtensionMap esh(shift(y, 37), l);
    REQUIRE(ey.k() == es.k());
    REQUIRE(ez.k() == es.k());
    for (Index n = -300; n <= 300; ++n) {
      CHECK(es.value_at(n) == ey.value_at(n) + ez.value_at(n));
      CHECK(esh.value_at(n + 37) == ey.value_at(n));
    }
  }
}

TEST_CASE("extend rejects windows that miss the support") {
  const FinSeq y{{100, Scalar(1)}};
  CHECK_THROWS_AS(extend(y, LambdaParam::parse("2"), Window::radius(50)), WindowError);
}

TEST_CASE("isometry witness") {
  const FinSeq a{{0, Scalar(2)}, {3, Scalar(-1)}, {7, Scalar::rational(1, 2)}};
  const Report r = isometry_witness(a, LambdaParam::parse("2"), 1e-12);
  CHECK(r.status == Status::Pass);
}
