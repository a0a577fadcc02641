#pragma once

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shiftpred/finseq.hpp"
#include "shiftpred/semigroup.hpp"
#include "shiftpred/sparse.hpp"
#include "shiftpred/szlenk.hpp"

namespace shiftpred {

/// Plain-text configuration:
///
///   [projection]
///   k = 1
///   probe_depth = 64
///   probe_bound = 2
///   search_bound = 65536
///
///   [image 1]
///   entries = (0, 1/2, 0) (1, 1/2, 0)
///
///   [set 1]
///   generator = powers 2        # or: factorials, explicit 3 -5 7
///   split = 2 0                 # optional: residue 0 of a split into 2
///
///   [family canonical]
///   limit = (0, 1/2, 0)
///   approximant = (1024, 1, 0)
///   coordinate_limit =
///
/// Lines starting with # or ; are comments. Real and imaginary parts are
/// exact when written as integers or p/q and the imaginary part is 0.
struct Config {
  std::optional<ProjectionSpec> spec;
  std::vector<std::pair<std::string, WitnessFamily>> families;
};

Config parse_config(std::istream& in);
Config load_config(const std::string& path);
/// The configuration used by `suite --config default`.
std::string default_config_text();

/// "(idx, re, im) (idx, re, im) ..." -> FinSeq.
FinSeq parse_entries(std::string_view text);
/// "powers 2", "factorials", "explicit 1 2 3".
SparseSet parse_set(std::string_view text);

}  // namespace shiftpred
