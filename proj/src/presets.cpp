#include "sawlab/presets.hpp"

#include <charconv>
#include <map>
#include <optional>

#include <json.hpp>

#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

using nlohmann::ordered_json;

std::optional<long> numeric_suffix(std::string_view name, std::string_view prefix) {
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return std::nullopt;
  long value = 0;
  auto digits = name.substr(prefix.size());
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

std::string repeat(const std::string& sym, long times) {
  std::string out;
  for (long i = 0; i < times; ++i) out += (i ? " " : "") + sym;
  return out;
}

// Generator names of Z^n: x,y,z,X,Y,Z for n <= 3, else x1..xn, X1..Xn.
std::vector<std::string> lattice_symbols(long n, bool upper) {
  std::vector<std::string> out;
  for (long i = 0; i < n; ++i) {
    if (n <= 3) {
      std::string s(1, "xyz"[i]);
      if (upper) s[0] = static_cast<char>(s[0] - 'a' + 'A');
      out.push_back(s);
    } else {
      out.push_back(std::string(upper ? "X" : "x") + std::to_string(i + 1));
    }
  }
  return out;
}

std::string zd_document(long n) {
  if (n < 1) throw InputError("zd dimension must be >= 1");
  auto lo = lattice_symbols(n, false);
  auto up = lattice_symbols(n, true);
  ordered_json doc;
  std::vector<std::string> gens = lo;
  gens.insert(gens.end(), up.begin(), up.end());
  doc["generators"] = gens;
  auto pairs = ordered_json::array();
  std::vector<std::string> rels;
  for (long i = 0; i < n; ++i) {
    pairs.push_back({lo[i], up[i]});
    rels.push_back(lo[i] + " " + up[i]);
  }
  for (long i = 0; i < n; ++i) {
    for (long j = i + 1; j < n; ++j) rels.push_back(lo[i] + " " + lo[j] + " " + up[i] + " " + up[j]);
  }
  doc["inverse_pairs"] = pairs;
  doc["relators"] = rels;
  return doc.dump(2);
}

std::string cylinder_document(long m) {
  if (m < 3) throw InputError("cyclic factor needs m >= 3");
  ordered_json doc;
  doc["generators"] = {"x", "X", "a", "b"};
  doc["inverse_pairs"] = ordered_json::array({ordered_json::array({"x", "X"}), ordered_json::array({"a", "b"})});
  doc["relators"] = {"x X", "a b", repeat("a", m), "x a X b"};
  return doc.dump(2);
}

std::string ladder_document(long m) {
  if (m < 3) throw InputError("cyclic factor needs m >= 3");
  ordered_json doc;
  doc["generators"] = {"s1", "s2", "a", "b"};
  doc["inverse_pairs"] = ordered_json::array(
      {ordered_json::array({"s1", "s1"}), ordered_json::array({"s2", "s2"}), ordered_json::array({"a", "b"})});
  doc["relators"] = {"s1 s1", "s2 s2", "a b", repeat("a", m), "s1 a s1 b", "s2 a s2 b"};
  return doc.dump(2);
}

const std::map<std::string, std::string, std::less<>>& fixed_presentations() {
  static const std::map<std::string, std::string, std::less<>> docs = {
      {"free2", R"({
  "generators": ["a", "b", "A", "B"],
  "inverse_pairs": [["a", "A"], ["b", "B"]],
  "relators": ["a A", "b B"]
})"},
      {"dihedral", R"({
  "generators": ["s1", "s2"],
  "inverse_pairs": [["s1", "s1"], ["s2", "s2"]],
  "relators": ["s1 s1", "s2 s2"]
})"},
      {"tree3", R"({
  "generators": ["s1", "s2", "t"],
  "inverse_pairs": [["s1", "t"], ["s2", "s2"]],
  "relators": ["s1 t", "s2 s2"]
})"},
      // [x,y] = z with z central.
      {"heisenberg", R"({
  "generators": ["x", "y", "z", "X", "Y", "Z"],
  "inverse_pairs": [["x", "X"], ["y", "Y"], ["z", "Z"]],
  "relators": ["x X", "y Y", "z Z", "X Y x y Z", "x z X Z", "y z Y Z"]
})"},
      // s1, s2 alternate around each square; s3 joins squares.
      {"square_octagon", R"({
  "generators": ["s1", "s2", "s3"],
  "inverse_pairs": [["s1", "s1"], ["s2", "s2"], ["s3", "s3"]],
  "relators": ["s1 s1", "s2 s2", "s3 s3", "s1 s2 s1 s2", "s3 s2 s3 s1 s3 s2 s3 s1"]
})"},
      {"hexagonal", R"({
  "generators": ["s1", "s2", "s3"],
  "inverse_pairs": [["s1", "s1"], ["s2", "s3"]],
  "relators": ["s1 s1", "s2 s3", "s1 s2 s2 s1 s3 s3"]
})"},
      {"higman", R"({
  "generators": ["a", "b", "c", "d", "a'", "b'", "c'", "d'"],
  "inverse_pairs": [["a", "a'"], ["b", "b'"], ["c", "c'"], ["d", "d'"]],
  "relators": ["a a'", "b b'", "c c'", "d d'",
               "a' b a b' b'", "b' c b c' c'", "c' d c d' d'", "d' a d a' a'"]
})"},
      {"sl2z", R"({
  "generators": ["x", "y", "u", "v"],
  "inverse_pairs": [["x", "u"], ["y", "v"]],
  "relators": ["x u", "y v", "x x x x", "x x v v v"]
})"},
      // [a, t^n a u^n] = a (t^n a u^n) a (t^n a u^n) since a = a^-1, u = t^-1.
      {"lamplighter", R"({
  "generators": ["a", "t", "u"],
  "inverse_pairs": [["a", "a"], ["t", "u"]],
  "relators": ["a a", "t u"],
  "relator_families": [{"u0": {"a": 4}, "u1": {"t": 2, "u": 2}}]
})"},
  };
  return docs;
}

const std::map<std::string, std::string, std::less<>>& fixed_periodic() {
  static const std::map<std::string, std::string, std::less<>> docs = {
      {"zd1", R"({"orbits": 1, "dim": 1, "labels": ["x", "X"],
  "edges": [[1, 1, [1], "x", "X"]]})"},
      {"zd2", R"({"orbits": 1, "dim": 2, "labels": ["x", "y", "X", "Y"],
  "edges": [[1, 1, [1, 0], "x", "X"], [1, 1, [0, 1], "y", "Y"]]})"},
      // Position 2x is (A, x), 2x + 1 is (B, x); H = even shifts.
      {"dihedral_line", R"({"orbits": 2, "dim": 1, "labels": ["s1", "s2"],
  "edges": [[1, 2, [0], "s1"], [2, 1, [1], "s2"]]})"},
      // Honeycomb with orbit A = 1, B = 2; s1 is the level edge, s2 goes up.
      {"hexagonal", R"({"orbits": 2, "dim": 2, "labels": ["s1", "s2", "s3"],
  "edges": [[1, 2, [0, 0], "s1", "s1"], [1, 2, [-1, 0], "s2", "s3"], [1, 2, [0, -1], "s3", "s2"]]})"},
      // Orbits N, E, S, W of the square at each lattice point.
      {"square_octagon", R"({"orbits": 4, "dim": 2, "labels": ["s1", "s2", "s3"],
  "edges": [[1, 2, [0, 0], "s1"], [2, 3, [0, 0], "s2"], [3, 4, [0, 0], "s1"], [4, 1, [0, 0], "s2"],
            [2, 4, [1, 0], "s3"], [1, 3, [0, 1], "s3"]]})"},
  };
  return docs;
}

}  // namespace

std::vector<std::string> presentation_preset_names() {
  std::vector<std::string> names{"zd<n>", "cylinder<m>", "ladder<m>"};
  for (const auto& [k, v] : fixed_presentations()) names.push_back(k);
  return names;
}

std::string presentation_document(std::string_view name) {
  auto& fixed = fixed_presentations();
  if (auto it = fixed.find(name); it != fixed.end()) return it->second;
  if (auto n = numeric_suffix(name, "zd")) return zd_document(*n);
  if (auto m = numeric_suffix(name, "cylinder")) return cylinder_document(*m);
  if (auto m = numeric_suffix(name, "ladder")) return ladder_document(*m);
  throw InputError("unknown presentation preset '" + std::string(name) + "'");
}

Presentation presentation_preset(std::string_view name) {
  return Presentation::parse(presentation_document(name));
}

std::vector<std::string> periodic_preset_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : fixed_periodic()) names.push_back(k);
  return names;
}

std::string periodic_document(std::string_view name) {
  auto& fixed = fixed_periodic();
  if (auto it = fixed.find(name); it != fixed.end()) return it->second;
  throw InputError("unknown periodic graph preset '" + std::string(name) + "'");
}

PeriodicGraph periodic_preset(std::string_view name) {
  return PeriodicGraph::parse(periodic_document(name));
}

}  // namespace sawlab
