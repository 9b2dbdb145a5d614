#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "logforms/algebra/error.hpp"
#include "logforms/algebra/text.hpp"

namespace logforms {

/// A list of variable names with optional nonnegative weights.
struct VarBlock {
  std::vector<std::string> vars;
  std::optional<Weights> weights;

  bool empty() const noexcept { return vars.empty(); }
  bool positive() const {
    if (!weights) return false;
    return std::all_of(weights->begin(), weights->end(), [](long w) { return w > 0; });
  }
  friend bool operator==(const VarBlock&, const VarBlock&) = default;
};

struct JobOptions {
  long degree_bound = 20;
  std::string order = "wdegrevlex";
  unsigned seed = 0;
  /// Form degree for omega-check, de-rham-check and torsion-length.
  std::optional<std::size_t> k;
  /// Exponent cap for weight-zero variables in de Rham slices.
  int secondary_cap = 6;
  friend bool operator==(const JobOptions&, const JobOptions&) = default;
};

struct JobSpec {
  std::string command;
  VarBlock ring, params, extension, target, germ_target, unfolding_ring;
  std::optional<Poly> divisor;
  std::vector<Poly> map;
  std::vector<std::vector<Poly>> fields;
  std::vector<Poly> germ;
  std::vector<Poly> inclusion;
  std::vector<Poly> unfolding;
  JobOptions options;

  /// ring, then params, then extension.
  std::vector<std::string> source_vars() const {
    std::vector<std::string> v = ring.vars;
    v.insert(v.end(), params.vars.begin(), params.vars.end());
    v.insert(v.end(), extension.vars.begin(), extension.vars.end());
    return v;
  }
  /// Present only when every non-empty block of the source carries weights.
  std::optional<Weights> source_weights() const {
    Weights w;
    for (const VarBlock* b : {&ring, &params, &extension}) {
      if (b->empty()) continue;
      if (!b->weights) return std::nullopt;
      w.insert(w.end(), b->weights->begin(), b->weights->end());
    }
    return w;
  }
  /// The space the divisor lives in: the target when one is declared.
  VarBlock ambient() const {
    if (!target.empty()) return target;
    return VarBlock{source_vars(), source_weights()};
  }

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

inline const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> c{"is-free",       "derlog",         "saito-check", "omega-check",
                                          "de-rham-check", "torsion-length", "kev-codim",   "t1-log",
                                          "critical-ideal", "mu-e",          "ae-codim",    "fitting-reduced"};
  return c;
}

namespace detail {

struct RawLine {
  std::string value;
  int line = 0;
  int column = 0;  // 0-based column where the value starts
};

struct Item {
  std::string text;
  int column = 0;
};

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

/// Splits on a separator, trimming blanks and tracking each item's column.
inline std::vector<Item> split_items(const RawLine& r, char sep) {
  std::vector<Item> out;
  std::size_t start = 0;
  const std::string& s = r.value;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] != sep) continue;
    std::size_t a = start, b = i;
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    out.push_back({s.substr(a, b - a), r.column + static_cast<int>(a)});
    start = i + 1;
  }
  return out;
}

class JobParser {
 public:
  explicit JobParser(std::string_view text) { scan(text); }

  JobSpec parse() {
    JobSpec j;
    const auto& cmd = required("command", 1);
    j.command = cmd.value;
    auto& cmds = job_commands();
    if (std::find(cmds.begin(), cmds.end(), j.command) == cmds.end())
      throw ParseError("unknown command '" + j.command + "'", cmd.line, cmd.column + 1);
    command_line_ = cmd.line;

    j.ring = block("ring", "weights");
    j.params = block("params", "param-weights");
    j.extension = block("extension", "extension-weights");
    j.target = block("target", "target-weights");
    j.germ_target = block("germ-target", "germ-target-weights");
    j.unfolding_ring = block("unfolding-ring", "");
    distinct({{"ring", &j.ring}, {"params", &j.params}, {"extension", &j.extension}});

    auto src = j.source_vars();
    auto amb = j.ambient().vars;
    if (auto r = find("divisor")) j.divisor = poly(*r, amb);
    if (auto r = find("map")) j.map = polys(*r, src, j.target.vars.size(), "map");
    for (const auto& r : fields_) {
      if (amb.empty()) throw ParseError("field given before any variables", r.line, r.column + 1);
      j.fields.push_back(polys(r, amb, amb.size(), "field"));
    }
    if (auto r = find("germ")) j.germ = polys(*r, j.ring.vars, j.germ_target.vars.size(), "germ");
    if (auto r = find("inclusion")) j.inclusion = polys(*r, j.germ_target.vars, j.target.vars.size(), "inclusion");
    if (auto r = find("unfolding"))
      j.unfolding = polys(*r, j.unfolding_ring.vars, j.target.vars.size(), "unfolding");
    if (auto r = find("options")) j.options = options(*r);
    for (const auto& [key, r] : lines_)
      if (!used_.count(key)) throw ParseError("unknown key '" + key + "'", r.line, 1);
    requirements(j);
    return j;
  }

 private:
  std::map<std::string, RawLine> lines_;
  std::vector<RawLine> fields_;
  std::set<std::string> used_{"field"};
  int command_line_ = 1;

  void scan(std::string_view text) {
    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string s(text.substr(pos, end - pos));
      ++line;
      pos = end + 1;
      if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
      if (!s.empty() && s.back() == '\r') s.pop_back();
      if (std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }))
        continue;
      auto colon = s.find(':');
      if (colon == std::string::npos) throw ParseError("expected 'key: value'", line, 1);
      std::size_t a = 0;
      while (std::isspace(static_cast<unsigned char>(s[a]))) ++a;
      std::string key = s.substr(a, colon - a);
      while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
      std::size_t v = colon + 1;
      while (v < s.size() && std::isspace(static_cast<unsigned char>(s[v]))) ++v;
      std::size_t e = s.size();
      while (e > v && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
      RawLine r{s.substr(v, e - v), line, static_cast<int>(v)};
      if (key == "field") {
        fields_.push_back(std::move(r));
      } else if (!lines_.emplace(key, r).second) {
        throw ParseError("duplicate key '" + key + "'", line, static_cast<int>(a) + 1);
      }
    }
  }

  const RawLine* find(const std::string& key) {
    used_.insert(key);
    auto it = lines_.find(key);
    return it == lines_.end() ? nullptr : &it->second;
  }

  const RawLine& required(const std::string& key, int line) {
    if (auto r = find(key)) return *r;
    throw ParseError("missing key '" + key + "'", line, 1);
  }

  /// Source blocks share one namespace.
  void distinct(std::initializer_list<std::pair<std::string, const VarBlock*>> blocks) const {
    std::set<std::string> seen;
    for (const auto& [key, b] : blocks)
      for (const auto& v : b->vars)
        if (!seen.insert(v).second)
          throw ParseError("variable '" + v + "' declared twice", lines_.at(key).line, 1);
  }

  VarBlock block(const std::string& key, const std::string& wkey) {
    VarBlock b;
    const RawLine* r = find(key);
    const RawLine* w = wkey.empty() ? nullptr : find(wkey);
    if (!r) {
      if (w) throw ParseError("'" + wkey + "' without '" + key + "'", w->line, 1);
      return b;
    }
    std::set<std::string> seen;
    for (const auto& it : split_items(*r, ',')) {
      if (!is_identifier(it.text)) throw ParseError("malformed variable name '" + it.text + "'", r->line, it.column + 1);
      if (!seen.insert(it.text).second)
        throw ParseError("variable '" + it.text + "' declared twice", r->line, it.column + 1);
      b.vars.push_back(it.text);
    }
    if (w) {
      Weights ws;
      for (const auto& it : split_items(*w, ',')) {
        long x = 0;
        std::istringstream in(it.text);
        if (!(in >> x) || !in.eof()) throw ParseError("malformed weight '" + it.text + "'", w->line, it.column + 1);
        if (x < 0) throw ParseError("negative weight", w->line, it.column + 1);
        ws.push_back(x);
      }
      if (ws.size() != b.vars.size()) throw ParseError("weight count differs from variable count", w->line, 1);
      b.weights = std::move(ws);
    }
    return b;
  }

  static Poly poly(const RawLine& r, const std::vector<std::string>& vars) {
    return parse_poly(r.value, vars, r.line, r.column);
  }

  static std::vector<Poly> polys(const RawLine& r, const std::vector<std::string>& vars, std::size_t expect,
                                 const std::string& what) {
    std::vector<Poly> out;
    for (const auto& it : split_items(r, ',')) out.push_back(parse_poly(it.text, vars, r.line, it.column));
    if (out.size() != expect)
      throw ParseError(what + " has " + std::to_string(out.size()) + " components, expected " + std::to_string(expect),
                       r.line, 1);
    return out;
  }

  static JobOptions options(const RawLine& r) {
    JobOptions o;
    for (const auto& it : split_items(r, ' ')) {
      if (it.text.empty()) continue;
      auto eq = it.text.find('=');
      if (eq == std::string::npos) throw ParseError("expected option=value", r.line, it.column + 1);
      std::string key = it.text.substr(0, eq), val = it.text.substr(eq + 1);
      int col = it.column + static_cast<int>(eq) + 2;
      auto number = [&]() -> long {
        long x = 0;
        std::istringstream in(val);
        if (!(in >> x) || !in.eof() || x < 0) throw ParseError("malformed value for " + key, r.line, col);
        return x;
      };
      if (key == "degree-bound") o.degree_bound = number();
      else if (key == "seed") o.seed = static_cast<unsigned>(number());
      else if (key == "k") o.k = static_cast<std::size_t>(number());
      else if (key == "secondary-cap") o.secondary_cap = static_cast<int>(number());
      else if (key == "order") {
        if (val != "wdegrevlex" && val != "lex") throw ParseError("unknown order '" + val + "'", r.line, col);
        o.order = val;
      } else {
        throw ParseError("unknown option '" + key + "'", r.line, it.column + 1);
      }
    }
    return o;
  }

  void need(bool ok, const std::string& what) const {
    if (!ok) throw ParseError("command needs " + what, command_line_, 1);
  }

  void requirements(const JobSpec& j) const {
    const std::string& c = j.command;
    bool has_target = !j.target.empty();
    if (c != "ae-codim") {
      need(!j.ring.empty(), "'ring'");
      need(j.divisor.has_value(), "'divisor'");
      if (has_target) need(!j.map.empty(), "'map' into the target");
      if (!j.map.empty()) need(has_target, "'target' for the map");
    }
    if (c == "is-free" || c == "derlog" || c == "saito-check") {
      need(!has_target && j.params.empty() && j.extension.empty(), "a divisor on 'ring' only");
      if (c == "saito-check") need(!j.fields.empty(), "at least one 'field'");
    }
    if (c == "kev-codim") need(has_target, "'target' and 'map'");
    if (c == "t1-log" || c == "critical-ideal" || c == "fitting-reduced")
      need(has_target && !j.params.empty(), "'target', 'map' and 'params'");
    if (c == "mu-e") need(has_target, "'target' and 'map'");
    if (c == "ae-codim") {
      need(!j.ring.empty() && !j.germ_target.empty() && !j.germ.empty(), "'ring', 'germ-target' and 'germ'");
      if (j.divisor) need(has_target && !j.inclusion.empty(), "'target' and 'inclusion' with the discriminant");
      if (!j.unfolding.empty()) need(j.divisor.has_value(), "'divisor' with the unfolding");
    }
  }
};

inline std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline std::string join_weights(const Weights& w) {
  std::vector<std::string> s;
  for (long x : w) s.push_back(std::to_string(x));
  return join(s);
}

inline std::string join_polys(const std::vector<Poly>& ps, const std::vector<std::string>& vars) {
  std::vector<std::string> s;
  for (const auto& p : ps) s.push_back(format_poly(p, vars));
  return join(s);
}

}  // namespace detail

/// Reads the job format: one `key: value` per line, `#` starts a comment.
inline JobSpec parse_job(std::string_view text) { return detail::JobParser(text).parse(); }

/// Canonical text of a job; parse_job(format_job(j)) == j.
inline std::string format_job(const JobSpec& j) {
  std::string out = "command: " + j.command + "\n";
  auto block = [&](const VarBlock& b, const std::string& key, const std::string& wkey) {
    if (b.empty()) return;
    out += key + ": " + detail::join(b.vars) + "\n";
    if (b.weights) out += wkey + ": " + detail::join_weights(*b.weights) + "\n";
  };
  block(j.ring, "ring", "weights");
  block(j.params, "params", "param-weights");
  block(j.extension, "extension", "extension-weights");
  block(j.target, "target", "target-weights");
  block(j.germ_target, "germ-target", "germ-target-weights");
  block(j.unfolding_ring, "unfolding-ring", "");
  auto amb = j.ambient().vars;
  if (j.divisor) out += "divisor: " + format_poly(*j.divisor, amb) + "\n";
  if (!j.map.empty()) out += "map: " + detail::join_polys(j.map, j.source_vars()) + "\n";
  for (const auto& f : j.fields) out += "field: " + detail::join_polys(f, amb) + "\n";
  if (!j.germ.empty()) out += "germ: " + detail::join_polys(j.germ, j.ring.vars) + "\n";
  if (!j.inclusion.empty()) out += "inclusion: " + detail::join_polys(j.inclusion, j.germ_target.vars) + "\n";
  if (!j.unfolding.empty()) out += "unfolding: " + detail::join_polys(j.unfolding, j.unfolding_ring.vars) + "\n";
  const auto& o = j.options;
  out += "options: degree-bound=" + std::to_string(o.degree_bound) + " order=" + o.order +
         " seed=" + std::to_string(o.seed) + " secondary-cap=" + std::to_string(o.secondary_cap);
  if (o.k) out += " k=" + std::to_string(*o.k);
  out += "\n";
  return out;
}

}  // namespace logforms
