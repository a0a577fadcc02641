#include "shiftpred/cli.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "shiftpred/classes.hpp"
#include "shiftpred/config.hpp"
#include "shiftpred/errors.hpp"
#include "shiftpred/extension.hpp"
#include "shiftpred/power.hpp"
#include "shiftpred/semigroup.hpp"
#include "shiftpred/sparse.hpp"
#include "shiftpred/szlenk.hpp"
#include "shiftpred/topology.hpp"
#include "shiftpred/xzero.hpp"

namespace shiftpred {

namespace {

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string lambda = "2";
  std::optional<Index> window;
  std::optional<unsigned> max_m;
  std::optional<Index> bound;
  std::string epsilon = "1";
  std::optional<unsigned> depth;
  std::string config;
  std::string csv;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string element;
  std::string set = "powers 2";
  std::optional<Index> t_range;
  unsigned r_max = 3;
  unsigned s_max = 3;
  bool timing = false;
};

Report error_report(const std::string& name, const std::exception& e) {
  Report r(name);
  r.fail({{"error", e.what()}});
  return r;
}

Scalar random_coefficient(std::mt19937_64& rng, bool exact) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 8);
  long p = 0;
  while (p == 0) p = num(rng);
  if (exact) return Scalar::rational(p, den(rng));
  std::uniform_real_distribution<double> u(-1, 1);
  return Scalar::complex(u(rng), u(rng));
}

FinSeq random_element(std::mt19937_64& rng, Index lo, Index hi, unsigned terms, bool exact) {
  std::uniform_int_distribution<Index> pos(lo, hi);
  FinSeq a;
  for (unsigned i = 0; i < terms; ++i) a.add(pos(rng), random_coefficient(rng, exact));
  if (a.empty()) a.set(lo, Scalar(1));
  return a;
}

Config config_for(const Options& o) {
  try {
    return load_config(o.config.empty() ? "default" : o.config);
  } catch (const ParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw FileError(e.what());
  }
}

Report x0_prefix_report(const LambdaParam& lambda) {
  Report r("x0_prefix");
  r.parameters = {{"lambda", lambda.to_string()}, {"positions", "0..8"}};
  Json values = Json::array();
  for (Index n = 0; n <= 8; ++n) {
    const Scalar got = x0_eval(lambda, n);
    const Scalar want = lambda.inverse_power(static_cast<unsigned>(std::popcount(static_cast<std::uint64_t>(n))));
    values.push_back(got.to_string());
    const double d = distance(got, want);
    r.note_error(d);
    r.require(d <= identity_tolerance(lambda), {{"n", n}, {"value", got.to_string()}, {"expected", want.to_string()}});
  }
  r.details["values"] = values;
  return r;
}

Report pairing_sample(const LambdaParam& lambda, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const bool exact = lambda.is_exact();
  ClassMeasure mu;
  mu.point_mass = random_element(rng, -4, 4, 4, exact);
  for (Index t = -2; t <= 2; ++t) {
    for (unsigned k = 1; k <= 2; ++k) mu.add(ClassLabel::cls(t, k), random_coefficient(rng, exact));
  }
  mu.add(ClassLabel::infinity(), random_coefficient(rng, exact));
  return pairing_check(mu, GeneratorBattery::standard(), lambda);
}

std::vector<Task> verify_xzero_tasks(const Options& o, const LambdaParam& lambda) {
  const Window w = Window::radius(o.window.value_or(Index{1} << 12));
  const unsigned depth = o.depth.value_or(60);
  const Index t_max = o.t_range.value_or(50);
  const unsigned bound = static_cast<unsigned>(o.bound.value_or(14));
  const std::uint64_t seed = o.seed;
  return {
      {"x0_prefix", [=] { return x0_prefix_report(lambda); }},
      {"intertwine", [=] { return verify_intertwine(lambda, w, seed); }},
      {"x0_identities", [=] { return verify_x0_identities(lambda, w); }},
      {"class_limits", [=] { return class_limit_check(lambda, t_max, 3, depth); }},
      {"class_disjointness", [=] { return class_disjointness_grid(20, 3, bound); }},
      {"pairing", [=] { return pairing_sample(lambda, seed); }},
      {"generator_pairing",
       [=] {
         std::mt19937_64 rng(seed);
         return generator_pairing(random_element(rng, -16, 16, 8, lambda.is_exact()), lambda);
       }},
  };
}

std::vector<Task> extend_tasks(const Options& o, const LambdaParam& lambda) {
  const Window w = Window::radius(o.window.value_or(Index{1} << 14));
  std::vector<FinSeq> ys;
  if (!o.element.empty()) {
    ys.push_back(parse_entries(o.element));
  } else {
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < 8; ++i) ys.push_back(random_element(rng, 1, 64, 6, lambda.is_exact()));
  }
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const FinSeq y = ys[i];
    tasks.push_back({"extend", [=] {
                       Report r("extend");
                       r.parameters = {{"lambda", lambda.to_string()}, {"window", w.to_string()},
                                       {"sample", i}};
                       const Extension e = extend(y, lambda, w);
                       r.details["certificate"] = e.certificate.to_json();
                       r.note_error(e.certificate.support_error);
                       r.require(e.certificate.ok, e.certificate.to_json());
                       return r;
                     }});
    tasks.push_back({"isometry_witness", [=] { return isometry_witness(y, lambda, 1e-9); }});
  }
  return tasks;
}

FinSeq element_for(const std::string& name) {
  if (name == "newman") return newman_element();
  if (name == "binomial" || name.empty()) return FinSeq{{0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 2)}};
  return parse_entries(name);
}

std::vector<Task> power_tasks(const Options& o) {
  const unsigned m = o.max_m.value_or(128);
  const std::string name = o.element.empty() ? "binomial" : o.element;
  const FinSeq a = element_for(name);
  const std::string csv = o.csv;
  std::vector<Task> tasks;
  tasks.push_back({"power_table", [=] {
                     Report r("power_table");
                     r.parameters = {{"element", name}, {"max_m", m}};
                     const PowerTable t = power_norm_table(a, m);
                     if (!csv.empty()) {
                       std::ofstream f(csv);
                       if (!f) throw FileError("cannot write csv file '" + csv + "'");
                       t.write_csv(f);
                       r.details["csv"] = csv;
                     }
                     r.details["rows"] = t.rows.size();
                     double worst = 0;
                     for (const auto& row : t.rows) worst = std::max(worst, row.l1);
                     r.details["max_l1"] = worst;
                     if (!t.rows.empty()) r.details["last_sup"] = t.rows.back().sup;
                     r.mark_evidence_only();
                     return r;
                   }});
  if (name == "binomial") tasks.push_back({"central_binomial", [=] { return central_binomial_check(std::max(m, 128u)); }});
  if (name == "newman") {
    tasks.push_back({"newman_modulus", [] { return newman_modulus_check(10000); }});
    tasks.push_back({"newman_decay", [=] { return newman_decay_check(std::max(m, 1024u)); }});
  }
  tasks.push_back({"fourier_sup_bound", [=] {
                     Report r("fourier_sup_bound");
                     const unsigned top = std::min(m, 32u);
                     r.parameters = {{"element", name}, {"max_m", top}};
                     for (unsigned k = 1; k <= top; ++k) {
                       const double exact = sup_norm(power(a, k));
                       const unsigned samples = 4 * k * static_cast<unsigned>(std::max<Index>(a.width(), 1)) + 64;
                       const double bound = fourier_sup_bound(a, k, samples);
                       r.require(exact <= bound + 1e-12, {{"m", k}, {"sup", exact}, {"bound", bound}});
                     }
                     return r;
                   }});
  tasks.push_back({"power_bounded_probe", [=] { return power_bounded_probe(a, m, 2.0); }});
  return tasks;
}

std::vector<Task> sparse_tasks(const Options& o) {
  const SparseSet j = parse_set(o.set);
  const Index bound = o.bound.value_or(Index{1} << 16);
  const auto params = SparseCheckParams::grid(o.t_range.value_or(100), o.r_max, o.s_max, bound);
  std::vector<Task> tasks;
  tasks.push_back({"additively_sparse", [=] { return additively_sparse_check(j, params); }});
  tasks.push_back({"hausdorff", [=] {
                     return hausdorff_condition_check(disjoint_family(j, 2), 10, 2, bound);
                   }});
  return tasks;
}

ProjectionSpec factorial_spec() {
  ProjectionSpec s;
  s.images.push_back(FinSeq{{-1, Scalar::rational(1, 4)}, {0, Scalar::rational(1, 2)}, {1, Scalar::rational(1, 4)}});
  s.family.sets.push_back(SparseSet::factorials());
  s.search_bound = 3628800;
  return s;
}

std::vector<SemiElem> sample_gammas(std::size_t k, bool with_infinity) {
  std::vector<SemiElem> out;
  if (with_infinity) out.push_back(SemiElem::infinity());
  for (Index t = -3; t <= 3; ++t) {
    for (unsigned e = 0; e <= 3; ++e) {
      std::vector<unsigned> g(k, 0);
      for (auto& v : g) v = e;
      out.push_back(SemiElem::finite(t, g));
    }
  }
  return out;
}

std::vector<Task> semigroup_tasks(const Options& o, const LambdaParam& lambda) {
  const Config cfg = config_for(o);
  if (!cfg.spec) throw ParseError("config has no [projection] section");
  const ProjectionSpec spec = *cfg.spec;
  const std::uint64_t seed = o.seed;
  std::vector<Task> tasks;
  tasks.push_back({"spec_probe", [=] { return spec_probe(spec); }});
  tasks.push_back({"theta_homomorphism", [=] { return theta_homomorphism_check(spec, 100, seed); }});
  tasks.push_back({"kernel", [=] { return kernel_check(spec, sample_gammas(spec.k(), false)); }});
  tasks.push_back({"idempotents", [=] { return idempotent_scan(spec, sample_gammas(spec.k(), true)); }});
  tasks.push_back({"example_spec", [=] {
                     Report r("example_spec");
                     r.parameters = {{"lambda", lambda.to_string()}};
                     const ProjectionSpec ex = example_spec(lambda.inverse());
                     Theta th(ex);
                     const FinSeq got = th.of(SemiElem::generator(1, 1));
                     const FinSeq want = FinSeq::delta(0, lambda.inverse());
                     const double d = max_difference(got, want);
                     r.note_error(d);
                     r.require(d <= identity_tolerance(lambda), {{"gamma", "(0,1)"}, {"error", d}});
                     r.require(th.of(SemiElem::infinity()).empty(), {{"gamma", "inf"}});
                     return r;
                   }});
  tasks.push_back({"involution", [=] {
                     try {
                       return involution_check(spec, 100, seed);
                     } catch (const PreconditionError& e) {
                       Report r("involution_check");
                       r.details["skipped"] = e.what();
                       r.mark_evidence_only();
                       return r;
                     }
                   }});
  tasks.push_back({"involution_factorials", [=] { return involution_check(factorial_spec(), 100, seed); }});
  return tasks;
}

std::vector<Task> limit_tasks(const Options& o) {
  const Config cfg = config_for(o);
  if (!cfg.spec) throw ParseError("config has no [projection] section");
  const ProjectionSpec spec = *cfg.spec;
  const std::uint64_t seed = o.seed;
  return {
      {"limit", [=] { return limit_check(spec); }},
      {"neighborhoods", [=] { return neighborhood_property_check(spec.family, 500, seed); }},
  };
}

ShrinkParams shrink_params(const LambdaParam& lambda, const Scalar& eps) {
  return ShrinkParams{lambda, eps, Scalar(1), std::nullopt, 16};
}

std::vector<Task> szlenk_tasks(const Options& o, const LambdaParam& lambda) {
  const Scalar eps = Scalar::parse_real(o.epsilon);
  const Config cfg = config_for(o);
  const unsigned depth = o.depth.value_or(20);
  const Index t_range = o.t_range.value_or(4);
  std::vector<Task> tasks;
  tasks.push_back({"shrink_radius", [=] {
                     Report r("shrink_radius");
                     r.parameters = {{"lambda", lambda.to_string()}, {"epsilon", eps.to_string()}, {"r", "1"}};
                     r.details["r_prime"] = shrink_radius(shrink_params(lambda, eps)).to_string();
                     const auto alpha = shrink_iteration_bound(lambda, eps);
                     r.details["iteration_bound"] = alpha ? Json(*alpha) : Json(nullptr);
                     return r;
                   }});
  tasks.push_back({"canonical_family", [=] {
                     Report r = shrink_witness_check(canonical_family(lambda), shrink_params(lambda, eps));
                     r.parameters["family"] = "canonical";
                     return r;
                   }});
  for (const auto& [name, fam] : cfg.families) {
    tasks.push_back({"family_" + name, [=, name = name, fam = fam] {
                       Scalar r_norm(0);
                       for (const auto& a : fam.approximants) {
                         const auto n = l1_norm_exact(a);
                         const Scalar v = n ? Scalar(*n) : Scalar::real(l1_norm(a));
                         if (v.real_part() > r_norm.real_part()) r_norm = v;
                       }
                       ShrinkParams p = shrink_params(lambda, eps);
                       p.r = r_norm;
                       Report r = shrink_witness_check(fam, p);
                       r.parameters["family"] = name;
                       return r;
                     }});
  }
  if (cfg.spec && cfg.spec->k() == 1) {
    const ProjectionSpec spec = *cfg.spec;
    const double e = eps.real_part();
    tasks.push_back({"witness_chain", [=] { return witness_chain_check(spec, e, depth, t_range); }});
  }
  return tasks;
}

std::vector<Task> tasks_for(const std::string& command, const Options& o, const LambdaParam& lambda) {
  if (command == "verify-xzero") return verify_xzero_tasks(o, lambda);
  if (command == "extend") return extend_tasks(o, lambda);
  if (command == "power-table") return power_tasks(o);
  if (command == "sparse-check") return sparse_tasks(o);
  if (command == "semigroup-theta") return semigroup_tasks(o, lambda);
  if (command == "limit-sim") return limit_tasks(o);
  if (command == "szlenk-probe") return szlenk_tasks(o, lambda);
  std::vector<Task> all;
  for (const char* c : {"verify-xzero", "extend", "power-table", "sparse-check", "semigroup-theta", "limit-sim",
                        "szlenk-probe"}) {
    auto part = tasks_for(c, o, lambda);
    all.insert(all.end(), part.begin(), part.end());
  }
  if (o.element.empty()) {
    Options newman = o;
    newman.element = "newman";
    newman.csv.clear();
    auto part = power_tasks(newman);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace

std::vector<Report> run_tasks(const std::vector<Task>& tasks, unsigned workers, bool timing) {
  std::vector<std::optional<Report>> out(tasks.size());
  auto one = [&](std::size_t i) {
    try {
      const auto start = std::chrono::steady_clock::now();
      Report r = tasks[i].run();
      if (timing) {
        r.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                           .count();
      }
      out[i] = std::move(r);
    } catch (const Error& e) {
      out[i] = error_report(tasks[i].name, e);
    }
  };
  if (workers <= 1 || tasks.size() <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(workers, tasks.size()); ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) one(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<Report> reports;
  reports.reserve(out.size());
  for (auto& r : out) reports.push_back(std::move(*r));
  return reports;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shift-invariant predual toolkit"};
  Options o;
  app.add_option("command", o.command, "verify-xzero | extend | power-table | sparse-check | "
                                       "semigroup-theta | limit-sim | szlenk-probe | suite")
      ->required()
      ->check(CLI::IsMember({"verify-xzero", "extend", "power-table", "sparse-check", "semigroup-theta",
                             "limit-sim", "szlenk-probe", "suite"}));
  app.add_option("--lambda", o.lambda, "RE[,IM]");
  app.add_option("--window", o.window, "window radius");
  app.add_option("--max-m", o.max_m, "largest power");
  app.add_option("--bound", o.bound, "search bound");
  app.add_option("--epsilon", o.epsilon, "Szlenk epsilon");
  app.add_option("--depth", o.depth, "class depth or chain length");
  app.add_option("--config", o.config, "config file or 'default'");
  app.add_option("--csv", o.csv, "power table output");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--workers", o.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--element", o.element, "newman | binomial | (idx, re, im) ...");
  app.add_option("--set", o.set, "powers N | factorials | explicit ...");
  app.add_option("--t-range", o.t_range, "|t| bound");
  app.add_option("--r-max", o.r_max, "left tuple size")->check(CLI::Range(0u, 5u));
  app.add_option("--s-max", o.s_max, "right tuple size")->check(CLI::Range(0u, 5u));
  app.add_flag("--timing", o.timing, "fill runtime_ms");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::vector<Task> tasks;
  try {
    const LambdaParam lambda = LambdaParam::parse(o.lambda);
    tasks = tasks_for(o.command, o, lambda);
  } catch (const FileError& e) {
    err << "file error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  std::vector<Report> reports;
  try {
    reports = run_tasks(tasks, o.workers, o.timing);
  } catch (const FileError& e) {
    err << "file error: " << e.what() << "\n";
    return 3;
  }
  bool ok = true;
  for (const auto& r : reports) {
    out << r.to_json().dump() << "\n";
    ok = ok && r.passed();
  }
  out.flush();
  return ok ? 0 : 1;
}

}  // namespace shiftpred
