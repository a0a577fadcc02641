#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "shiftpred/errors.hpp"
#include "shiftpred/finseq.hpp"
#include "shiftpred/window_seq.hpp"

using namespace shiftpred;
using testing_helpers::random_complex;
using testing_helpers::random_rational;

TEST_CASE("scalar parsing keeps integers and fractions exact") {
  CHECK(Scalar::parse_real("3").is_exact());
  CHECK(Scalar::parse_real("-3/4") == Scalar::rational(-3, 4));
  CHECK_FALSE(Scalar::parse_real("0.25").is_exact());
  CHECK(Scalar::rational(2, 4) == Scalar::rational(1, 2));
  CHECK_THROWS_AS(Scalar::parse_real("x"), ParseError);
}

TEST_CASE("mixed arithmetic falls back to floating point") {
  const Scalar a = Scalar::rational(1, 3) + Scalar::real(0.5);
  CHECK_FALSE(a.is_exact());
  CHECK(a.real_part() == doctest::Approx(5.0 / 6));
  CHECK(pow(Scalar(2), 10) == Scalar(1024));
}

TEST_CASE("convolution by hand") {
  const FinSeq a{{0, Scalar(1)}, {1, Scalar(2)}};
  const FinSeq b{{-1, Scalar(3)}, {2, Scalar(-1)}};
  // (1 + 2z)(3/z - z^2) = 3/z + 6 - z^2 - 2z^3
  const FinSeq want{{-1, Scalar(3)}, {0, Scalar(6)}, {2, Scalar(-1)}, {3, Scalar(-2)}};
  CHECK(convolve(a, b) == want);
  CHECK(convolve(a, FinSeq::delta(0)) == a);
  CHECK(convolve(a, FinSeq{}).empty());
}

TEST_CASE("zeros are never stored") {
  FinSeq a{{0, Scalar(1)}};
  a.add(0, Scalar(-1));
  CHECK(a.empty());
  a.set(4, Scalar(0));
  CHECK(a.size() == 0);
}

TEST_CASE("binomial powers are exact") {
  const FinSeq a{{0, Scalar(1)}, {1, Scalar(1)}};
  const FinSeq p = power(a, 10);
  CHECK(p[5] == Scalar(252));
  CHECK(p[0] == Scalar(1));
  CHECK(*l1_norm_exact(p) == mpq_class(1024));
  CHECK(power(a, 0) == FinSeq::delta(0));
}

TEST_CASE("convolution properties on random rational elements") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const FinSeq a = random_rational(rng, -10, 10, 5);
    const FinSeq b = random_rational(rng, -10, 10, 5);
    const FinSeq c = random_rational(rng, -10, 10, 5);
    CHECK(convolve(a, b) == convolve(b, a));
    CHECK(convolve(convolve(a, b), c) == convolve(a, convolve(b, c)));
    CHECK(convolve(a, b + c) == convolve(a, b) + convolve(a, c));
    CHECK(*l1_norm_exact(convolve(a, b)) <= *l1_norm_exact(a) * *l1_norm_exact(b));
    CHECK(shift(convolve(a, b), 3) == convolve(shift(a, 3), b));
    CHECK(involution(convolve(a, b)) == convolve(involution(a), involution(b)));
    CHECK(involution(involution(a)) == a);
    CHECK(shift(shift(a, 5), -5) == a);
  }
}

TEST_CASE("complex elements: submultiplicativity and the Fourier transform") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const FinSeq a = random_complex(rng, -6, 6, 4);
    const FinSeq b = random_complex(rng, -6, 6, 4);
    CHECK(l1_norm(convolve(a, b)) <= l1_norm(a) * l1_norm(b) + 1e-12);
    const double th = 0.37 * trial;
    const auto lhs = fourier_eval(convolve(a, b), th);
    const auto rhs = fourier_eval(a, th) * fourier_eval(b, th);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("window sequences") {
  const Window w(-4, 4);
  WindowSeq x = WindowSeq::from_function(w, [](Index n) { return Scalar(n); });
  CHECK(x.at(-4) == Scalar(-4));
  CHECK_THROWS_AS(x.at(5), WindowError);
  const WindowSeq s = shift_window(x, 1, Window(-3, 4));
  CHECK(s.at(0) == Scalar(-1));
  const WindowSeq t = tau_apply(x, Window(-8, 8));
  CHECK(t.at(6) == Scalar(3));
  CHECK(t.at(5) == Scalar(0));
  CHECK_THROWS_AS(Window(3, 2), WindowError);
}

TEST_CASE("index arithmetic guards overflow") {
  CHECK(floor_div(-3, 2) == -2);
  CHECK(ceil_div(-3, 2) == -1);
  CHECK_THROWS_AS(checked_add(kIndexLimit, 1), OverflowError);
}
