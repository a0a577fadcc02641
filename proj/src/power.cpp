#include "shiftpred/power.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gmpxx.h>

namespace shiftpred {

void PowerTable::write_csv(std::ostream& out) const {
  out << "m,l1,sup\n";
  out.precision(17);
  for (const auto& row : rows) out << row.m << ',' << row.l1 << ',' << row.sup << '\n';
}

Json PowerTable::to_json() const {
  Json rows_json = Json::array();
  for (const auto& row : rows) rows_json.push_back({row.m, row.l1, row.sup});
  return {{"columns", {"m", "l1", "sup"}}, {"rows", rows_json}};
}

PowerTable power_norm_table(const FinSeq& a, unsigned max_m) {
  if (max_m == 0) throw PreconditionError("max_m must be positive");
  if (!a.empty()) {
    // Support of a^m spans m * (width - 1) + 1 indices starting at m * min.
    checked_add(static_cast<Index>(max_m) * a.min_index(), 0);
    checked_add(static_cast<Index>(max_m) * a.max_index(), 0);
  }
  PowerTable table{a, {}};
  FinSeq p = a;
  for (unsigned m = 1; m <= max_m; ++m) {
    if (m > 1) p = convolve(p, a);
    table.rows.push_back({m, l1_norm(p), sup_norm(p)});
  }
  return table;
}

Report central_binomial_check(unsigned max_m) {
  if (max_m < 2) throw PreconditionError("central binomial check needs max_m >= 2");
  Report r("central_binomial_check");
  r.parameters = {{"max_m", max_m}};
  const FinSeq a{{0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 2)}};
  FinSeq p = a;
  Json ratios = Json::object();
  for (unsigned m = 1; m <= max_m; ++m) {
    if (m > 1) p = convolve(p, a);
    const mpq_class l1 = *l1_norm_exact(p);
    const mpq_class sup = *sup_norm_exact(p);
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), m, m / 2);
    mpz_class two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, m);
    mpq_class expected(binom, two_m);
    expected.canonicalize();
    r.require(l1 == 1, {{"m", m}, {"l1", l1.get_str()}});
    r.require(sup == expected, {{"m", m}, {"sup", sup.get_str()}, {"expected", expected.get_str()}});
    if (m % 2 == 0) {
      const unsigned n = m / 2;
      const double ratio = sup.get_d() * std::sqrt(std::numbers::pi * n);
      if ((n & (n - 1)) == 0) ratios[std::to_string(n)] = ratio;
      if (n == 64) {
        r.details["ratio_n64"] = ratio;
        r.note_error(std::abs(ratio - 1.0));
        r.require(std::abs(ratio - 1.0) <= 0.01, {{"n", n}, {"ratio", ratio}});
      }
    }
  }
  r.details["ratio_to_inverse_sqrt_pi_n"] = ratios;
  return r;
}

double fourier_sup_bound(const FinSeq& a, unsigned m, unsigned samples) {
  const auto need = 4ULL * m * static_cast<unsigned long long>(std::max<Index>(a.width(), 1));
  if (samples < need) {
    throw ResolutionError("fourier_sup_bound needs at least " + std::to_string(need) + " samples");
  }
  double sum = 0;
  for (unsigned j = 0; j < samples; ++j) {
    const double theta = 2 * std::numbers::pi * (j + 0.5) / samples;
    sum += std::pow(std::abs(fourier_eval(a, theta)), m);
  }
  return sum / samples;
}

FinSeq newman_element() {
  const double c = 1 / std::sqrt(5.0);
  return FinSeq{{0, Scalar::real(c)}, {1, Scalar::real(c)}, {2, Scalar::real(-c)}};
}

std::vector<double> newman_sup_norms(unsigned max_m) {
  std::vector<double> out;
  out.reserve(max_m);
  std::vector<mpz_class> coeff{1};
  mpz_class five_m = 1;
  for (unsigned m = 1; m <= max_m; ++m) {
    std::vector<mpz_class> next(coeff.size() + 2);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i] += coeff[i];
      next[i + 1] += coeff[i];
      next[i + 2] -= coeff[i];
    }
    coeff.swap(next);
    five_m *= 5;
    mpz_class best = 0;
    for (const auto& c : coeff) best = std::max<mpz_class>(best, abs(c));
    // ||a^m||_inf^2 = best^2 / 5^m, formed exactly before the square root.
    const mpq_class sq(best * best, five_m);
    out.push_back(std::sqrt(sq.get_d()));
  }
  return out;
}

Report newman_modulus_check(unsigned samples) {
  Report r("newman_modulus_check");
  r.parameters = {{"samples", samples}};
  const FinSeq a = newman_element();
  const double l1 = l1_norm(a);
  const double l1_error = std::abs(l1 - 3 / std::sqrt(5.0));
  r.details["l1_norm"] = l1;
  r.details["l1_error"] = l1_error;
  r.require(l1_error <= 1e-12, {{"l1_norm", l1}});
  double worst = 0;
  for (unsigned j = 0; j < samples; ++j) {
    const double theta = 2 * std::numbers::pi * j / samples;
    const double c = std::cos(theta);
    const double d = std::abs(std::norm(fourier_eval(a, theta)) - (1 - 0.8 * c * c));
    if (d > worst) worst = d;
    r.require(d <= 1e-12, {{"theta", theta}, {"error", d}});
  }
  r.details["modulus_error"] = worst;
  r.note_error(std::max(worst, l1_error));
  return r;
}

Report newman_decay_check(unsigned max_m, double threshold) {
  if (max_m < 2) throw PreconditionError("decay check needs max_m >= 2");
  Report r("newman_decay_check");
  r.parameters = {{"max_m", max_m}, {"threshold", threshold}};
  const auto sup = newman_sup_norms(max_m);
  std::optional<unsigned> first_below;
  std::optional<unsigned> last_above;
  for (unsigned m = 1; m <= max_m; ++m) {
    if (sup[m - 1] < threshold) {
      if (!first_below) first_below = m;
    } else {
      last_above = m;
    }
  }
  // Onset of strict decrease: least m0 with sup strictly decreasing on [m0, max_m].
  unsigned onset = max_m;
  while (onset > 1 && sup[onset - 2] > sup[onset - 1]) --onset;
  std::size_t rises = 0;
  for (unsigned m = 2; m <= max_m; ++m) rises += sup[m - 1] >= sup[m - 2] ? 1 : 0;

  Json samples = Json::object();
  for (unsigned m : {1u, 2u, 4u, 8u, 16u, 32u, 64u, 128u, 256u, 512u, 1024u}) {
    if (m <= max_m) samples[std::to_string(m)] = sup[m - 1];
  }
  r.details["sup_samples"] = samples;
  r.details["non_decreasing_steps"] = rises;
  r.details["strict_decrease_onset"] = onset;
  if (first_below) r.details["first_m_below_threshold"] = *first_below;
  if (last_above) r.details["last_m_at_or_above_threshold"] = *last_above;

  r.require(first_below.has_value(), {{"clause", "threshold"}, {"reason", "never below threshold"}});
  r.require(last_above.value_or(0) < max_m,
            {{"clause", "threshold"}, {"reason", "not below threshold at the horizon"}});
  r.require(onset <= max_m / 2,
            {{"clause", "strict_decrease"}, {"onset", onset}, {"horizon", max_m},
             {"example_rise", [&] {
                for (unsigned m = max_m; m >= 2; --m) {
                  if (sup[m - 1] >= sup[m - 2]) {
                    return Json{{"m", m}, {"sup_m_minus_1", sup[m - 2]}, {"sup_m", sup[m - 1]}};
                  }
                }
                return Json::object();
              }()}});
  return r;
}

Report power_bounded_probe(const FinSeq& a, unsigned max_m, double bound_k) {
  Report r("power_bounded_probe");
  r.parameters = {{"max_m", max_m}, {"K", bound_k}};
  r.details["note"] = "finite evidence, not a proof";
  const auto table = power_norm_table(a, max_m);
  double best = 0;
  unsigned at = 0;
  for (const auto& row : table.rows) {
    if (row.l1 > best) {
      best = row.l1;
      at = row.m;
    }
    if (row.l1 > bound_k * (1 + 1e-12)) {
      if (r.passed()) r.fail({{"m", row.m}, {"l1", row.l1}});
    }
  }
  r.details["max_l1"] = best;
  r.details["argmax_m"] = at;
  r.mark_evidence_only();
  return r;
}

}  // namespace shiftpred
