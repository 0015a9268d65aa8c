#include "ufg/group.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ufg/errors.hpp"

namespace ufg {

GeneratingSet::GeneratingSet(std::vector<Generator> generators, bool allow_identity) : gens_(std::move(generators)) {
  if (gens_.empty()) throw InvalidInput("generating set is empty");
  if (gens_.size() > 0x7fff) throw InvalidInput("too many generators");
  std::set<std::string> names;
  for (const Generator& g : gens_) {
    if (g.name.empty()) throw InvalidInput("generator name is empty");
    if (g.name.find_first_of(" ^") != std::string::npos) throw InvalidInput("generator name '" + g.name + "' contains ' ' or '^'");
    if (!names.insert(g.name).second) throw InvalidInput("duplicate generator name '" + g.name + "'");
    if (!allow_identity && g.matrix.is_identity()) throw InvalidInput("generator '" + g.name + "' is the identity");
    inverses_.push_back(inverse(g.matrix));
  }
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (bool inv : {false, true}) {
      const Letter l{static_cast<std::uint16_t>(i), inv};
      const Isometry& m = matrix(l);
      bool seen = false;
      for (const Isometry& x : closure_matrices_) seen = seen || x == m;
      if (seen) continue;
      closure_letters_.push_back(l);
      closure_matrices_.push_back(m);
    }
  }
}

const Isometry& GeneratingSet::matrix(Letter l) const {
  if (l.gen >= gens_.size()) throw InvalidInput("letter out of range");
  return l.inverse ? inverses_[l.gen] : gens_[l.gen].matrix;
}

std::string GeneratingSet::letter_name(Letter l) const {
  if (l.gen >= gens_.size()) throw InvalidInput("letter out of range");
  return gens_[l.gen].name + (l.inverse ? "^-1" : "");
}

std::vector<std::string> GeneratingSet::word_names(const Word& w) const {
  std::vector<std::string> out;
  out.reserve(w.size());
  for (Letter l : w) out.push_back(letter_name(l));
  return out;
}

std::string GeneratingSet::word_string(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += ' ';
    s += letter_name(l);
  }
  return s;
}

Isometry GeneratingSet::evaluate(const Word& w) const {
  Isometry r;
  for (Letter l : w) r = compose(r, matrix(l));
  return r;
}

Word GeneratingSet::parse_word(const std::vector<std::string>& names) const {
  Word w;
  for (const std::string& n : names) {
    std::string base = n;
    bool inv = false;
    if (base.size() > 3 && base.compare(base.size() - 3, 3, "^-1") == 0) {
      base.resize(base.size() - 3);
      inv = true;
    }
    bool found = false;
    for (std::size_t i = 0; i < gens_.size() && !found; ++i) {
      if (gens_[i].name == base) {
        w.push_back({static_cast<std::uint16_t>(i), inv});
        found = true;
      }
    }
    if (!found) throw InvalidInput("unknown generator '" + base + "' in word");
  }
  return w;
}

std::uint64_t GeneratingSet::hash() const {
  std::uint64_t h = fnv1a("generating-set");
  for (const Generator& g : gens_) {
    h = fnv1a(g.name, h);
    h = fnv1a(g.matrix.to_string(), h);
  }
  return h;
}

// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
  throw InvalidInput(origin + ": " + where + ": " + what);
}

Rational entry(const json& v, const std::string& origin, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InvalidInput& e) {
      fail(origin, where, e.what());
    }
  }
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  fail(origin, where, "matrix entry must be a rational string or an integer");
}

}  // namespace

GroupDescription parse_group_description(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(origin + ": byte " + std::to_string(e.byte) + ": JSON syntax error");
  }
  if (!j.is_object()) fail(origin, "$", "group description must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() != "model" && it.key() != "generators" && it.key() != "horoballs") {
      fail(origin, "$." + it.key(), "unknown key");
    }
  }
  GroupDescription d;
  if (j.contains("model")) {
    if (!j["model"].is_string()) fail(origin, "$.model", "must be a string");
    d.model = j["model"].get<std::string>();
    try {
      make_space(d.model);
    } catch (const InvalidInput& e) {
      fail(origin, "$.model", e.what());
    }
  }
  if (!j.contains("generators") || !j["generators"].is_array()) fail(origin, "$.generators", "must be an array");
  const json& gens = j["generators"];
  if (d.model != "H2" && !gens.empty()) {
    fail(origin, "$.generators", "generators are only supported for the H2 model");
  }
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string at = "$.generators[" + std::to_string(i) + "]";
    const json& g = gens[i];
    if (!g.is_object()) fail(origin, at, "must be an object");
    if (!g.contains("name") || !g["name"].is_string()) fail(origin, at + ".name", "must be a string");
    if (!g.contains("matrix")) fail(origin, at + ".matrix", "missing");
    const json& m = g["matrix"];
    if (!m.is_array() || m.size() != 2) fail(origin, at + ".matrix", "must be a 2x2 array");
    Rational e[4];
    for (int r = 0; r < 2; ++r) {
      const std::string row = at + ".matrix[" + std::to_string(r) + "]";
      if (!m[r].is_array() || m[r].size() != 2) fail(origin, row, "must have two entries");
      for (int c = 0; c < 2; ++c) e[2 * r + c] = entry(m[r][c], origin, row + "[" + std::to_string(c) + "]");
    }
    try {
      d.generators.push_back({g["name"].get<std::string>(), Isometry::from_entries(e[0], e[1], e[2], e[3])});
    } catch (const InvalidInput& ex) {
      fail(origin, at + ".matrix", ex.what());
    }
  }
  if (d.model == "H2") {
    if (d.generators.empty()) fail(origin, "$.generators", "must not be empty");
    try {
      GeneratingSet check(d.generators);
    } catch (const InvalidInput& ex) {
      fail(origin, "$.generators", ex.what());
    }
  }
  if (j.contains("horoballs")) {
    const json& hs = j["horoballs"];
    if (!hs.is_array()) fail(origin, "$.horoballs", "must be an array");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string at = "$.horoballs[" + std::to_string(i) + "]";
      const json& h = hs[i];
      if (!h.is_object() || !h.contains("center") || !h["center"].is_string()) {
        fail(origin, at + ".center", "must be \"inf\" or a rational string");
      }
      if (!h.contains("level") || !h["level"].is_number()) fail(origin, at + ".level", "must be a number");
      try {
        d.horoballs.push_back({parse_ideal_center(h["center"].get<std::string>()), h["level"].get<double>()});
      } catch (const InvalidInput& ex) {
        fail(origin, at + ".center", ex.what());
      }
    }
  }
  return d;
}

GroupDescription load_group_description(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_description(ss.str(), path);
}

}  // namespace ufg
