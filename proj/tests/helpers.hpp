#pragma once

#include <random>

#include "shiftpred/finseq.hpp"

namespace testing_helpers {

inline shiftpred::FinSeq random_rational(std::mt19937_64& rng, shiftpred::Index lo, shiftpred::Index hi,
                                         unsigned terms) {
  std::uniform_int_distribution<shiftpred::Index> pos(lo, hi);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 6);
  shiftpred::FinSeq a;
  for (unsigned i = 0; i < terms; ++i) a.add(pos(rng), shiftpred::Scalar::rational(num(rng), den(rng)));
  return a;
}

inline shiftpred::FinSeq random_complex(std::mt19937_64& rng, shiftpred::Index lo, shiftpred::Index hi,
                                        unsigned terms) {
  std::uniform_int_distribution<shiftpred::Index> pos(lo, hi);
  std::uniform_real_distribution<double> u(-1, 1);
  shiftpred::FinSeq a;
  for (unsigned i = 0; i < terms; ++i) a.add(pos(rng), shiftpred::Scalar::complex(u(rng), u(rng)));
  return a;
}

}  // namespace testing_helpers
