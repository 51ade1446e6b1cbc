#include "sawlab/presentation.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sawlab/errors.hpp"
#include "sawlab/graph.hpp"

namespace sawlab {

namespace {

constexpr std::string_view kIdentityToken = "1";

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Presentation::Presentation(std::vector<std::string> generators,
                           std::vector<std::pair<std::string, std::string>> inverse_pairs,
                           std::vector<std::string> relators,
                           std::vector<ParamRelatorFamily> families)
    : generators_(std::move(generators)), families_(std::move(families)) {
  if (generators_.empty()) throw InputError("presentation has no generators");
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty() || g == kIdentityToken) throw InputError("invalid generator symbol '" + g + "'");
    if (g.find_first_of(" \t\n") != std::string::npos) {
      throw InputError("generator symbol contains whitespace: '" + g + "'");
    }
    if (!seen.insert(g).second) throw InputError("duplicate generator '" + g + "'");
  }

  std::vector<bool> paired(generators_.size(), false);
  for (const auto& [a, b] : inverse_pairs) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib) throw InputError("inverse pair names unknown symbol: " + a + "," + b);
    if (paired[*ia] || (ia != ib && paired[*ib])) {
      throw InputError("symbol appears in more than one inverse pair: " + a + "," + b);
    }
    paired[*ia] = paired[*ib] = true;
    inverse_pairs_.emplace_back(*ia, *ib);
  }

  for (const auto& r : relators) {
    Word w = parse_word(r);
    if (w.empty()) throw InputError("empty relator");
    relators_.push_back(std::move(w));
  }

  for (const auto& f : families_) {
    if (f.u0.size() != generators_.size() || f.u1.size() != generators_.size()) {
      throw InputError("relator family count vector has wrong length");
    }
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (f.u0[i] < 0 || f.u1[i] < 0) throw InputError("relator family counts must be >= 0");
    }
  }
}

Presentation Presentation::parse(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("presentation document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("presentation document must be a JSON object");

  try {
    auto generators = doc.at("generators").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> pairs;
    if (doc.contains("inverse_pairs")) {
      for (const auto& p : doc.at("inverse_pairs")) {
        if (!p.is_array() || p.size() != 2) throw InputError("inverse pair must have two symbols");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
    std::vector<std::string> relators;
    if (doc.contains("relators")) relators = doc.at("relators").get<std::vector<std::string>>();

    std::vector<ParamRelatorFamily> families;
    if (doc.contains("relator_families")) {
      for (const auto& f : doc.at("relator_families")) {
        ParamRelatorFamily fam{std::vector<std::int64_t>(generators.size(), 0),
                               std::vector<std::int64_t>(generators.size(), 0)};
        for (const auto* key : {"u0", "u1"}) {
          auto& target = std::string_view(key) == "u0" ? fam.u0 : fam.u1;
          if (!f.contains(key)) continue;
          const auto& counts = f.at(key);
          if (!counts.is_object()) throw InputError("family counts must be an object");
          for (const auto& [sym, val] : counts.items()) {
            auto it = std::find(generators.begin(), generators.end(), sym);
            if (it == generators.end()) {
              throw InputError("relator family names unknown symbol '" + sym + "'");
            }
            if (!val.is_number_integer()) throw InputError("family count for '" + sym + "' is not an integer");
            target[static_cast<std::size_t>(it - generators.begin())] = val.get<std::int64_t>();
          }
        }
        families.push_back(std::move(fam));
      }
    }
    return Presentation(std::move(generators), std::move(pairs), std::move(relators),
                        std::move(families));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed presentation document: ") + e.what());
  }
}

std::optional<std::size_t> Presentation::index_of(std::string_view symbol) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i] == symbol) return i;
  }
  return std::nullopt;
}

Word Presentation::parse_word(std::string_view text) const {
  Word w;
  for (const auto& tok : split_words(text)) {
    auto i = index_of(tok);
    if (!i) throw InputError("unknown symbol '" + tok + "' in word \"" + std::string(text) + "\"");
    w.push_back(*i);
  }
  return w;
}

std::string Presentation::format_word(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += generators_.at(w[i]);
  }
  return out;
}

std::optional<std::size_t> Presentation::inverse_of(std::size_t i) const {
  for (const auto& [a, b] : inverse_pairs_) {
    if (a == i) return b;
    if (b == i) return a;
  }
  return std::nullopt;
}

std::string Presentation::to_json() const {
  nlohmann::ordered_json doc;
  doc["generators"] = generators_;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [a, b] : inverse_pairs_) pairs.push_back({generators_[a], generators_[b]});
  doc["inverse_pairs"] = pairs;
  auto rels = nlohmann::ordered_json::array();
  for (const auto& r : relators_) rels.push_back(format_word(r));
  doc["relators"] = rels;
  auto fams = nlohmann::ordered_json::array();
  for (const auto& f : families_) {
    nlohmann::ordered_json u0 = nlohmann::ordered_json::object();
    nlohmann::ordered_json u1 = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (f.u0[i]) u0[generators_[i]] = f.u0[i];
      if (f.u1[i]) u1[generators_[i]] = f.u1[i];
    }
    fams.push_back({{"u0", u0}, {"u1", u1}});
  }
  doc["relator_families"] = fams;
  return doc.dump(2);
}

CoefficientMatrix coefficient_matrix(const Presentation& p) {
  CoefficientMatrix c;
  c.columns = p.generators().size();
  for (const auto& r : p.relators()) {
    std::vector<std::int64_t> row(c.columns, 0);
    for (auto s : r) ++row[s];
    c.rows.push_back(std::move(row));
    c.row_labels.push_back(p.format_word(r));
  }
  for (std::size_t k = 0; k < p.families().size(); ++k) {
    c.rows.push_back(p.families()[k].u0);
    c.row_labels.push_back("family " + std::to_string(k) + ": u0");
    c.rows.push_back(p.families()[k].u1);
    c.row_labels.push_back("family " + std::to_string(k) + ": u1");
  }
  return c;
}

std::size_t rank_exact(const CoefficientMatrix& c) {
  return rank(RationalMatrix::from_integers(c.rows, c.columns));
}

KernelBasis integer_kernel_basis(const CoefficientMatrix& c) {
  KernelBasis k;
  for (const auto& v : nullspace(RationalMatrix::from_integers(c.rows, c.columns))) {
    k.vectors.push_back(primitive(v));
  }
  return k;
}

bool ghf_exists(const Presentation& p) {
  return rank_exact(coefficient_matrix(p)) < p.generators().size();
}

std::size_t betti(const Presentation& p) {
  return p.generators().size() - rank_exact(coefficient_matrix(p));
}

GroupHeightSpec make_group_height(const Presentation& p, std::vector<std::int64_t> gamma) {
  if (gamma.size() != p.generators().size()) throw InputError("gamma has wrong length");
  if (std::all_of(gamma.begin(), gamma.end(), [](auto g) { return g == 0; })) {
    throw InputError("gamma must be non-zero");
  }
  GroupHeightSpec spec{std::move(gamma)};
  auto report = verify_well_defined(spec, p);
  if (!report.ok) throw InputError("gamma is not in the null space: violates " + *report.witness);
  return spec;
}

std::optional<GroupHeightSpec> primitive_group_height(const Presentation& p) {
  auto basis = integer_kernel_basis(coefficient_matrix(p));
  if (basis.vectors.empty()) return std::nullopt;
  std::vector<std::int64_t> gamma;
  for (const auto& x : basis.vectors.front()) {
    auto v = to_int64(x);
    if (!v) throw InputError("kernel vector entry exceeds 64 bits");
    gamma.push_back(*v);
  }
  return GroupHeightSpec{std::move(gamma)};
}

std::int64_t evaluate_ghf(const GroupHeightSpec& spec, const Word& word) {
  std::int64_t h = 0;
  for (auto s : word) h += spec.gamma.at(s);
  return h;
}

std::int64_t evaluate_ghf(const GroupHeightSpec& spec, const Presentation& p,
                          std::string_view word) {
  return evaluate_ghf(spec, p.parse_word(word));
}

WellDefinedReport verify_well_defined(const GroupHeightSpec& spec, const Presentation& p,
                                      int depth, const GraphOracle* model) {
  WellDefinedReport report;
  const auto c = coefficient_matrix(p);
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    std::int64_t dot = 0;
    for (std::size_t s = 0; s < c.columns; ++s) dot += c.rows[r][s] * spec.gamma.at(s);
    if (dot != 0) {
      report.ok = false;
      report.witness = c.row_labels[r];
      return report;
    }
  }
  if (!model) return report;

  if (model->labels() != p.generators()) {
    report.ok = false;
    report.witness = "model " + model->name() + " is not labelled by this presentation";
    return report;
  }
  // Heights along a BFS tree; every ball edge must then agree with gamma.
  Vertex root = model->root();
  VertexMap<std::pair<std::int64_t, int>> seen;  // height, distance
  seen.emplace(root, std::make_pair(std::int64_t{0}, 0));
  std::deque<Vertex> queue{root};
  std::vector<Arc> arcs;
  while (!queue.empty()) {
    Vertex v = std::move(queue.front());
    queue.pop_front();
    const auto [hv, dv] = seen.at(v);
    ++report.vertices_checked;
    arcs.clear();
    model->neighbors(v, arcs);
    for (const auto& a : arcs) {
      const std::int64_t expect = hv + spec.gamma.at(static_cast<std::size_t>(a.label));
      auto it = seen.find(a.to);
      if (it == seen.end()) {
        if (dv == depth) continue;
        seen.emplace(a.to, std::make_pair(expect, dv + 1));
        queue.push_back(a.to);
      } else if (it->second.first != expect) {
        report.ok = false;
        report.witness = "spellings disagree at " + format_vertex(a.to) + " via " +
                         p.generators()[static_cast<std::size_t>(a.label)];
        return report;
      }
    }
  }
  return report;
}

std::int64_t d_of_ghf(const GroupHeightSpec& spec) {
  return *std::max_element(spec.gamma.begin(), spec.gamma.end());
}

}  // namespace sawlab
