#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "shiftpred/finseq.hpp"
#include "shiftpred/report.hpp"

namespace shiftpred {

struct PowerRow {
  unsigned m = 0;
  double l1 = 0;
  double sup = 0;
};

struct PowerTable {
  FinSeq element;
  std::vector<PowerRow> rows;  // m = 1..M

  void write_csv(std::ostream& out) const;
  Json to_json() const;
};

/// Norms of a^m for m = 1..max_m, by repeated convolution.
PowerTable power_norm_table(const FinSeq& a, unsigned max_m);

/// For a = (delta_0 + delta_1)/2: ||a^m||_1 = 1 and
/// ||a^m||_inf = 2^{-m} C(m, floor(m/2)) exactly for m <= max_m, and the
/// ratio of ||a^{2n}||_inf to 1/sqrt(pi n).
Report central_binomial_check(unsigned max_m);

/// Midpoint rule for (1/2pi) int |f(e^{i theta})|^m d theta, f the Fourier
/// transform of a. Throws ResolutionError unless samples >= 4 m width(a).
double fourier_sup_bound(const FinSeq& a, unsigned m, unsigned samples);

/// 5^{-1/2}(delta_0 + delta_1 - delta_2).
FinSeq newman_element();

/// ||a^m||_inf for the element above, m = 1..max_m, from the integer
/// coefficients of (1 + z - z^2)^m.
std::vector<double> newman_sup_norms(unsigned max_m);

/// ||a||_1 = 3/sqrt(5) and |f(e^{i theta})|^2 = 1 - (4/5) cos^2 theta at
/// `samples` equally spaced theta.
Report newman_modulus_check(unsigned samples);

/// Decay of ||a^m||_inf up to max_m: the first m below `threshold`, the
/// point after which it stays below, and whether the sequence is strictly
/// decreasing from some onset m0 <= max_m / 2 on.
Report newman_decay_check(unsigned max_m, double threshold = 0.05);

/// max_{m <= max_m} ||a^m||_1 against K. Finite evidence only.
Report power_bounded_probe(const FinSeq& a, unsigned max_m, double bound_k);

}  // namespace shiftpred
