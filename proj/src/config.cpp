#include "shiftpred/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace shiftpred {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Index parse_index(const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw ParseError("bad integer '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + text + "'");
  }
}

struct Section {
  std::string kind;
  std::string label;
  std::vector<std::pair<std::string, std::string>> entries;
  int line = 0;

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : entries) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

std::vector<Section> split_sections(std::istream& in) {
  std::vector<Section> out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("line " + std::to_string(line_no) + ": unterminated section");
      std::istringstream head(line.substr(1, line.size() - 2));
      Section s;
      head >> s.kind;
      std::getline(head, s.label);
      s.label = trim(s.label);
      s.line = line_no;
      out.push_back(std::move(s));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || out.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key = value inside a section");
    }
    std::string value = line.substr(eq + 1);
    if (const auto hash = value.find('#'); hash != std::string::npos) value.erase(hash);
    out.back().entries.emplace_back(trim(line.substr(0, eq)), trim(value));
  }
  return out;
}

Scalar parse_component_pair(const std::string& re_text, const std::string& im_text) {
  const Scalar re = Scalar::parse_real(re_text);
  const Scalar im = Scalar::parse_real(im_text);
  if (im.is_exact() && im.is_zero()) return re;
  return Scalar::complex(re.real_part(), im.real_part());
}

}  // namespace

FinSeq parse_entries(std::string_view text) {
  FinSeq out;
  std::size_t pos = 0;
  while (true) {
    const auto open = text.find('(', pos);
    if (open == std::string_view::npos) break;
    const auto close = text.find(')', open);
    if (close == std::string_view::npos) throw ParseError("unterminated entry in '" + std::string(text) + "'");
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text.substr(open + 1, close - open - 1)) {
      if (c == ',') {
        parts.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(trim(cur));
    if (parts.size() != 3) throw ParseError("entry needs (index, re, im): '" + std::string(text) + "'");
    out.add(parse_index(parts[0]), parse_component_pair(parts[1], parts[2]));
    pos = close + 1;
  }
  if (trim(text.substr(pos)).size() != 0 && text.find('(') == std::string_view::npos) {
    throw ParseError("expected entries like (index, re, im), got '" + std::string(text) + "'");
  }
  return out;
}

SparseSet parse_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string name;
  in >> name;
  if (name == "powers") {
    std::string base;
    if (!(in >> base)) throw ParseError("powers needs a base");
    return SparseSet::powers(parse_index(base));
  }
  if (name == "factorials") return SparseSet::factorials();
  if (name == "explicit") {
    std::vector<Index> members;
    std::string tok;
    while (in >> tok) members.push_back(parse_index(tok));
    return SparseSet::explicit_list(std::move(members));
  }
  throw ParseError("unknown set generator '" + name + "'");
}

Config parse_config(std::istream& in) {
  const auto sections = split_sections(in);
  Config cfg;
  std::map<std::size_t, FinSeq> images;
  std::map<std::size_t, SparseSet> sets;
  std::optional<ProjectionSpec> spec;
  std::size_t k = 0;
  auto label_index = [](const Section& s) {
    const Index i = parse_index(s.label);
    if (i < 1) throw ParseError("line " + std::to_string(s.line) + ": index must be >= 1");
    return static_cast<std::size_t>(i);
  };
  for (const auto& s : sections) {
    if (s.kind == "projection") {
      spec.emplace();
      k = static_cast<std::size_t>(parse_index(s.get("k").value_or("1")));
      if (auto v = s.get("probe_depth")) spec->probe_depth = static_cast<unsigned>(parse_index(*v));
      if (auto v = s.get("probe_bound")) spec->probe_bound = Scalar::parse_real(*v).real_part();
      if (auto v = s.get("search_bound")) spec->search_bound = parse_index(*v);
    } else if (s.kind == "image") {
      images[label_index(s)] = parse_entries(s.get("entries").value_or(""));
    } else if (s.kind == "set") {
      const auto gen = s.get("generator");
      if (!gen) throw ParseError("line " + std::to_string(s.line) + ": set needs a generator");
      SparseSet set = parse_set(*gen);
      if (auto split = s.get("split")) {
        std::istringstream sp(*split);
        unsigned mod = 0;
        unsigned res = 0;
        if (!(sp >> mod >> res)) throw ParseError("split needs 'modulus residue'");
        set = SparseSet::residue(set, mod, res);
      }
      sets.insert_or_assign(label_index(s), std::move(set));
    } else if (s.kind == "family") {
      WitnessFamily w;
      for (const auto& [key, value] : s.entries) {
        if (key == "limit") {
          w.limit = parse_entries(value);
        } else if (key == "approximant") {
          w.approximants.push_back(parse_entries(value));
        } else if (key == "coordinate_limit") {
          w.coordinate_limit = parse_entries(value);
        } else {
          throw ParseError("unknown family key '" + key + "'");
        }
      }
      cfg.families.emplace_back(s.label, std::move(w));
    } else {
      throw ParseError("line " + std::to_string(s.line) + ": unknown section '" + s.kind + "'");
    }
  }
  if (spec) {
    for (std::size_t i = 1; i <= k; ++i) {
      if (!images.count(i)) throw ParseError("missing [image " + std::to_string(i) + "]");
      if (!sets.count(i)) throw ParseError("missing [set " + std::to_string(i) + "]");
      spec->images.push_back(images.at(i));
      spec->family.sets.push_back(sets.at(i));
    }
    cfg.spec = std::move(spec);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  if (path == "default") {
    std::istringstream in(default_config_text());
    return parse_config(in);
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::string default_config_text() {
  return R"(# a_1 = (delta_0 + delta_1)/2 along the powers of 2
[projection]
k = 1
probe_depth = 64
probe_bound = 2
search_bound = 65536

[image 1]
entries = (0, 1/2, 0) (1, 1/2, 0)

[set 1]
generator = powers 2

[family shifted]
limit = (0, 1, 0) (3, -1/2, 0)
approximant = (1099511627776, 2, 0) (1099511627779, -1, 0)
approximant = (2199023255552, 2, 0) (2199023255555, -1, 0)
coordinate_limit =
)";
}

}  // namespace shiftpred
