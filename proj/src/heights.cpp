#include "sawlab/heights.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "sawlab/catalog.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/presets.hpp"

namespace sawlab {

namespace {

Rational dot(const RationalVector& lambda, const Shift& t) {
  Rational s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) s += lambda[i] * static_cast<long>(t[i]);
  return s;
}

std::int64_t checked_int64(const Rational& q, const char* what) {
  if (q.get_den() != 1) throw NoSolution(std::string(what) + " is not an integer");
  auto v = to_int64(q.get_num());
  if (!v) throw NoSolution(std::string(what) + " overflows 64 bits");
  return *v;
}

}  // namespace

Rational HarmonicSolution::value(const Vertex& v) const {
  Rational s = offsets.at(static_cast<std::size_t>(v.at(0)));
  for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * static_cast<long>(v.at(i + 1));
  return s;
}

Rational HarmonicSolution::increment(const VoltageEdge& e) const {
  return offsets[e.to] - offsets[e.from] + dot(lambda, e.shift);
}

RationalVector harmonic_residuals(const PeriodicGraph& pg, const HarmonicSolution& s) {
  RationalVector out(pg.orbit_count());
  for (std::size_t o = 0; o < pg.orbit_count(); ++o) {
    Rational r = s.offsets[o] * static_cast<long>(pg.degree(o));
    for (auto i : pg.out_edges(o)) {
      const auto& e = pg.edges()[i];
      r -= s.offsets[e.to] + dot(s.lambda, e.shift);
    }
    out[o] = r;
  }
  return out;
}

bool is_harmonic(const PeriodicGraph& pg, const HarmonicSolution& s) {
  for (const auto& r : harmonic_residuals(pg, s)) {
    if (r != 0) return false;
  }
  return true;
}

BoundaryData fit_boundary(std::size_t dim, const std::vector<std::pair<Shift, Rational>>& samples) {
  RationalMatrix m(0, dim + 1);
  RationalVector rhs;
  for (const auto& [x, value] : samples) {
    if (x.size() != dim) throw InputError("boundary sample has the wrong dimension");
    RationalVector row{Rational(1)};
    for (auto c : x) row.emplace_back(static_cast<long>(c));
    m.append_row(row);
    rhs.push_back(value);
  }
  if (rank(m) < dim + 1) throw InputError("boundary samples do not determine an affine function");
  auto sol = solve(m, rhs);
  if (!sol) throw InputError("boundary data is not difference-invariant on the base orbit");
  BoundaryData out;
  out.offset = (*sol)[0];
  out.lambda.assign(sol->begin() + 1, sol->end());
  return out;
}

HarmonicSolution harmonic_extension(const PeriodicGraph& pg, std::size_t base_orbit,
                                    const BoundaryData& boundary) {
  const std::size_t M = pg.orbit_count();
  if (base_orbit >= M) throw InputError("base orbit out of range");
  if (boundary.lambda.size() != pg.dim()) throw InputError("lambda has the wrong dimension");

  // Unknowns: f(o) for o != base, in orbit order.
  auto column = [&](std::size_t o) { return o < base_orbit ? o : o - 1; };
  RationalMatrix a(M, M - 1);
  RationalVector b(M);
  for (std::size_t o = 0; o < M; ++o) {
    const long deg = static_cast<long>(pg.degree(o));
    if (o == base_orbit) {
      b[o] -= boundary.offset * deg;
    } else {
      a(o, column(o)) += deg;
    }
    for (auto i : pg.out_edges(o)) {
      const auto& e = pg.edges()[i];
      b[o] += dot(boundary.lambda, e.shift);
      if (e.to == base_orbit) {
        b[o] += boundary.offset;
      } else {
        a(o, column(e.to)) -= 1;
      }
    }
  }
  if (M > 1 && rank(a) < M - 1) throw NoSolution("harmonic extension is not unique");
  auto sol = solve(a, b);
  if (!sol) throw NoSolution("orbit equations are inconsistent for this lambda");

  HarmonicSolution out;
  out.lambda = boundary.lambda;
  out.offsets.resize(M);
  for (std::size_t o = 0; o < M; ++o) {
    out.offsets[o] = o == base_orbit ? boundary.offset : (*sol)[column(o)];
  }
  return out;
}

std::vector<HarmonicSolution> solution_space(const PeriodicGraph& pg) {
  std::vector<HarmonicSolution> basis;
  std::string failed;
  for (std::size_t i = 0; i < pg.dim(); ++i) {
    BoundaryData bd;
    bd.lambda.assign(pg.dim(), Rational(0));
    bd.lambda[i] = 1;
    bd.offset = 0;
    try {
      basis.push_back(harmonic_extension(pg, 0, bd));
    } catch (const NoSolution& e) {
      failed += (failed.empty() ? "" : "; ") + ("e" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (!failed.empty()) throw NoSolution("no harmonic solution for direction(s) " + failed);
  return basis;
}

namespace {

// Visits integer vectors with max-norm exactly `norm`, ordered by L1 norm and
// then descending lexicographically. Stops when visit returns true.
template <class Visit>
bool for_each_coefficients(std::size_t k, int norm, Visit&& visit) {
  std::vector<std::int64_t> c(k);
  for (long l1 = norm; l1 <= static_cast<long>(k) * norm; ++l1) {
    auto rec = [&](auto& self, std::size_t pos, long left, bool hit) -> bool {
      if (pos == k) return left == 0 && hit && visit(c);
      const long slots = static_cast<long>(k - pos - 1);
      for (long v = norm; v >= -norm; --v) {
        const long rest = left - std::labs(v);
        if (rest < 0 || rest > slots * norm) continue;
        const bool now = hit || std::labs(v) == norm;
        if (!now && slots == 0) continue;
        c[pos] = v;
        if (self(self, pos + 1, rest, now)) return true;
      }
      return false;
    };
    if (rec(rec, 0, l1, false)) return true;
  }
  return false;
}

}  // namespace

RepairResult increase_repair(const PeriodicGraph& pg, const std::vector<HarmonicSolution>& basis,
                             int max_norm) {
  if (basis.empty()) throw NoSolution("no height function found via this method: empty basis");
  const std::size_t M = pg.orbit_count();
  const std::size_t d = pg.dim();
  bool any_nonconstant = false;
  for (const auto& s : basis) {
    for (const auto& l : s.lambda) any_nonconstant |= l != 0;
    for (const auto& f : s.offsets) any_nonconstant |= f != 0;
  }
  if (!any_nonconstant) throw NoSolution("no height function found via this method: all solutions constant");

  std::optional<RepairResult> found;
  for (int norm = 1; norm <= max_norm && !found; ++norm) {
    for_each_coefficients(basis.size(), norm, [&](const std::vector<std::int64_t>& c) {
      HarmonicSolution psi;
      psi.lambda.assign(d, Rational(0));
      psi.offsets.assign(M, Rational(0));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (c[j] == 0) continue;
        const Rational w(static_cast<long>(c[j]));
        for (std::size_t i = 0; i < d; ++i) psi.lambda[i] += w * basis[j].lambda[i];
        for (std::size_t o = 0; o < M; ++o) psi.offsets[o] += w * basis[j].offsets[o];
      }
      std::vector<IncreaseWitness> witnesses;
      for (std::size_t o = 0; o < M; ++o) {
        std::optional<std::size_t> lo, hi;
        for (auto i : pg.out_edges(o)) {
          const Rational inc = psi.increment(pg.edges()[i]);
          if (inc < 0 && !lo) lo = i;
          if (inc > 0 && !hi) hi = i;
        }
        if (!lo || !hi) return false;
        const auto& el = pg.edges()[*lo];
        const auto& eh = pg.edges()[*hi];
        witnesses.push_back({o, cover_vertex(pg, el.to, el.shift), cover_vertex(pg, eh.to, eh.shift)});
      }
      RationalVector all = psi.lambda;
      all.insert(all.end(), psi.offsets.begin(), psi.offsets.end());
      RepairResult r;
      r.coefficients = c;
      r.scale = common_denominator(all);
      for (std::size_t i = 0; i < d; ++i) {
        r.height.lambda.push_back(checked_int64(psi.lambda[i] * r.scale, "scaled lambda"));
      }
      for (std::size_t o = 0; o < M; ++o) {
        r.height.offsets.push_back(checked_int64(psi.offsets[o] * r.scale, "scaled offset"));
      }
      r.combined = std::move(psi);
      r.witnesses = std::move(witnesses);
      found = std::move(r);
      return true;
    });
  }
  if (!found) {
    throw NoSolution("no height function found via this method: no increasing combination with max-norm <= " +
                     std::to_string(max_norm));
  }
  return *found;
}

HeightFunction affine_height(const IntegerAffineHeight& h, std::string name) {
  return HeightFunction{std::move(name), [h](const Vertex& v) {
                          std::int64_t s = h.offsets.at(static_cast<std::size_t>(v[0]));
                          for (std::size_t i = 0; i < h.lambda.size(); ++i) s += h.lambda[i] * v[i + 1];
                          return s;
                        }};
}

std::string export_height_json(const PeriodicGraph& pg, const RepairResult& r) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["orbits"] = pg.orbit_count();
  doc["dim"] = pg.dim();
  auto fractions = [](const RationalVector& v) {
    auto a = ordered_json::array();
    for (const auto& q : v) a.push_back(to_string(q));
    return a;
  };
  doc["lambda"] = fractions(r.combined.lambda);
  doc["offsets"] = fractions(r.combined.offsets);
  doc["coefficients"] = r.coefficients;
  doc["scale"] = to_string(r.scale);
  doc["integer_lambda"] = r.height.lambda;
  doc["integer_offsets"] = r.height.offsets;
  auto w = ordered_json::array();
  for (const auto& x : r.witnesses) {
    // Vertices are rendered with 1-based orbits, as in the graph documents.
    auto shown = [](Vertex v) {
      v[0] += 1;
      return v;
    };
    w.push_back({{"orbit", x.orbit + 1}, {"lower", shown(x.lower)}, {"higher", shown(x.higher)}});
  }
  doc["witnesses"] = w;
  return doc.dump(2);
}

std::string HeightAxiomReport::summary() const {
  if (ok()) return "height axioms hold on " + std::to_string(vertices_checked) + " vertices";
  std::ostringstream s;
  if (!root_zero) s << "h(root) != 0; ";
  if (no_lower) s << "no lower neighbour at " << format_vertex(*no_lower) << "; ";
  if (no_higher) s << "no higher neighbour at " << format_vertex(*no_higher) << "; ";
  if (invariance_failure) s << *invariance_failure << "; ";
  auto out = s.str();
  return out.substr(0, out.size() - 2);
}

HeightAxiomReport verify_height_axioms(const GraphOracle& g, const HeightFunction& h, int radius) {
  HeightAxiomReport rep;
  const Ball b = ball(g, radius);
  rep.vertices_checked = b.size();
  const Vertex root = g.root();
  rep.root_zero = h(root) == 0;

  const auto syms = g.symmetries();
  for (std::size_t j = 0; j < syms.size() && !rep.invariance_failure; ++j) {
    const std::int64_t shift = h(syms[j](root)) - h(root);
    for (const auto& v : b.vertices) {
      const std::int64_t diff = h(syms[j](v)) - h(v);
      if (diff != shift) {
        rep.invariance_failure = "symmetry " + std::to_string(j) + " moves h by " + std::to_string(diff) +
                                 " at " + format_vertex(v) + " but by " + std::to_string(shift) + " at the root";
        break;
      }
    }
  }

  std::vector<Arc> arcs;
  for (const auto& v : b.vertices) {
    const auto hv = h(v);
    bool lower = false, higher = false;
    arcs.clear();
    g.neighbors(v, arcs);
    for (const auto& a : arcs) {
      const auto hu = h(a.to);
      lower |= hu < hv;
      higher |= hu > hv;
    }
    if (!lower && !rep.no_lower) rep.no_lower = v;
    if (!higher && !rep.no_higher) rep.no_higher = v;
  }
  return rep;
}

bool HarmonicReport::harmonic() const {
  return std::all_of(defects.begin(), defects.end(), [](const Rational& q) { return q == 0; });
}

std::optional<Rational> HarmonicReport::uniform_defect() const {
  if (defects.empty()) return std::nullopt;
  for (const auto& q : defects) {
    if (q != defects.front()) return std::nullopt;
  }
  return defects.front();
}

HarmonicReport verify_harmonic(const GraphOracle& g, const HeightFunction& h, int radius) {
  HarmonicReport rep;
  const Ball b = ball(g, radius);
  std::vector<Arc> arcs;
  for (const auto& v : b.vertices) {
    arcs.clear();
    g.neighbors(v, arcs);
    Integer sum = 0;
    for (const auto& a : arcs) sum += static_cast<long>(h(a.to));
    Rational mean(sum, Integer(static_cast<long>(arcs.size())));
    mean.canonicalize();
    rep.vertices.push_back(v);
    rep.defects.push_back(Rational(static_cast<long>(h(v))) - mean);
  }
  return rep;
}

std::int64_t compute_d(const GraphOracle& g, const HeightFunction& h, int radius) {
  const Ball b = ball(g, radius);
  std::int64_t d = 0;
  std::vector<Arc> arcs;
  for (const auto& v : b.vertices) {
    arcs.clear();
    g.neighbors(v, arcs);
    const auto hv = h(v);
    for (const auto& a : arcs) d = std::max<std::int64_t>(d, std::llabs(h(a.to) - hv));
  }
  return d;
}

std::optional<int> compute_r(const GraphOracle& g, const HeightFunction& h,
                             const std::vector<Vertex>& orbit_reps, int bound) {
  if (bound < 1) throw InputError("compute_r needs bound >= 1");
  const std::size_t orbits = g.orbit_count();
  if (orbits <= 1) return 0;

  int r = 0;
  for (const auto& u : orbit_reps) {
    const std::size_t ou = g.orbit_of(u);
    const std::int64_t hu = h(u);
    std::vector<int> best(orbits, bound + 1);
    VertexMap<bool> on_path;
    on_path.emplace(u, true);
    // Interior vertices stay above h(u); an endpoint counts if it is above
    // every interior vertex too.
    auto dfs = [&](auto& self, const Vertex& x, int len, std::int64_t interior_max) -> void {
      if (len == bound) return;
      for (const auto& a : g.neighbors(x)) {
        if (on_path.contains(a.to)) continue;
        const auto hy = h(a.to);
        if (hy <= hu) continue;
        const auto oy = g.orbit_of(a.to);
        if (hy > interior_max && len + 1 < best[oy]) best[oy] = len + 1;
        on_path.emplace(a.to, true);
        self(self, a.to, len + 1, std::max(interior_max, hy));
        on_path.erase(a.to);
      }
    };
    dfs(dfs, u, 0, hu);
    for (std::size_t o = 0; o < orbits; ++o) {
      if (o == ou) continue;
      if (best[o] > bound) return std::nullopt;
      r = std::max(r, best[o]);
    }
  }
  return r;
}

IntegerAffineHeight ghf_affine(const PeriodicCover& cover, const GroupHeightSpec& spec) {
  const auto& pg = cover.periodic();
  if (!pg.labelled()) throw InputError("group height function needs a labelled periodic graph");
  if (spec.gamma.size() != cover.labels().size()) {
    throw InputError("gamma length does not match the edge label alphabet");
  }
  const std::size_t M = pg.orbit_count();
  const std::size_t d = pg.dim();
  // Unknowns f(1..M-1), lambda(0..d-1); f(0) = 0.
  RationalMatrix a(0, M - 1 + d);
  RationalVector b;
  for (std::size_t i = 0; i < pg.edges().size(); ++i) {
    const auto& e = pg.edges()[i];
    RationalVector row(M - 1 + d, Rational(0));
    if (e.to != 0) row[e.to - 1] += 1;
    if (e.from != 0) row[e.from - 1] -= 1;
    for (std::size_t k = 0; k < d; ++k) row[M - 1 + k] = static_cast<long>(e.shift[k]);
    a.append_row(row);
    b.emplace_back(static_cast<long>(spec.gamma[static_cast<std::size_t>(cover.edge_label(i))]));
  }
  auto sol = solve(a, b);
  if (!sol) throw InputError("gamma is not realised on this periodic graph");
  IntegerAffineHeight out;
  out.offsets.push_back(0);
  for (std::size_t o = 1; o < M; ++o) out.offsets.push_back(checked_int64((*sol)[o - 1], "offset"));
  for (std::size_t k = 0; k < d; ++k) out.lambda.push_back(checked_int64((*sol)[M - 1 + k], "lambda"));
  return out;
}

HeightFunction ghf_height(const GraphOracle& model, const GroupHeightSpec& spec) {
  if (const auto* cover = dynamic_cast<const PeriodicCover*>(&model)) {
    return affine_height(ghf_affine(*cover, spec), "ghf");
  }
  if (spec.gamma.size() != model.labels().size()) {
    throw InputError("gamma length does not match the labels of model " + model.name());
  }
  if (!model.spell(model.root())) throw InputError("model " + model.name() + " cannot spell its vertices");
  const GraphOracle* g = &model;
  auto gamma = spec.gamma;
  return HeightFunction{"ghf", [g, gamma](const Vertex& v) {
                          std::int64_t s = 0;
                          const auto word = g->spell(v);
                          for (int l : *word) s += gamma[static_cast<std::size_t>(l)];
                          return s;
                        }};
}

HeightFunction coordinate_height(std::size_t index, std::string name) {
  return HeightFunction{std::move(name), [index](const Vertex& v) { return v.at(index); }};
}

HeightFunction level_height() {
  return HeightFunction{"level", [](const Vertex& v) { return grandparent_level(v); }};
}

namespace {

bool has_prefix_number(std::string_view id, std::string_view prefix) {
  if (!id.starts_with(prefix) || id.size() == prefix.size()) return false;
  return std::all_of(id.begin() + static_cast<long>(prefix.size()), id.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::vector<std::int64_t> parse_gamma(std::string_view text) {
  std::vector<std::int64_t> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad gamma entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

HeightFunction named_height(const GraphOracle& model, std::string_view model_id,
                            std::string_view height_id) {
  const auto* cover = dynamic_cast<const PeriodicCover*>(&model);
  const bool line_like = has_prefix_number(model_id, "zd") || has_prefix_number(model_id, "cylinder") ||
                         has_prefix_number(model_id, "ladder") || model_id == "dihedral";

  if (height_id == "default") {
    if (model_id == "grandparent") return level_height();
    if (cover) return named_height(model, model_id, "harmonic");
    if (line_like) return named_height(model, model_id, "x");
    return named_height(model, model_id, "ghf");
  }
  if (height_id == "x" || height_id == "identity") {
    if (line_like) return coordinate_height(0, std::string(height_id));
    if (cover) {
      auto h = named_height(model, model_id, "harmonic");
      h.name = std::string(height_id);
      return h;
    }
    throw InputError("height '" + std::string(height_id) + "' is not defined on " + std::string(model_id));
  }
  if (height_id == "level") {
    if (model_id != "grandparent") throw InputError("the level height is only defined on grandparent");
    return level_height();
  }
  if (height_id == "harmonic") {
    if (!cover) throw InputError("the harmonic height needs a periodic model");
    const auto& pg = cover->periodic();
    return affine_height(increase_repair(pg, solution_space(pg)).height, "harmonic");
  }
  if (height_id == "ghf" || height_id.starts_with("ghf:")) {
    auto preset = presentation_for_model(model_id);
    if (!preset) throw InputError("model " + std::string(model_id) + " has no presentation");
    const Presentation p = presentation_preset(*preset);
    std::optional<GroupHeightSpec> spec;
    if (height_id == "ghf") {
      spec = primitive_group_height(p);
      if (!spec) throw NoSolution("no group height function for " + *preset);
    } else {
      spec = make_group_height(p, parse_gamma(height_id.substr(4)));
    }
    auto h = ghf_height(model, *spec);
    h.name = std::string(height_id);
    return h;
  }
  throw InputError("unknown height '" + std::string(height_id) + "'");
}

}  // namespace sawlab
