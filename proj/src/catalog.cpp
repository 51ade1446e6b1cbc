#include "sawlab/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "sawlab/errors.hpp"
#include "sawlab/periodic.hpp"
#include "sawlab/presets.hpp"

namespace sawlab {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

void append_power(std::vector<int>& word, int up, int down, std::int64_t n) {
  for (std::int64_t i = 0; i < std::abs(n); ++i) word.push_back(n > 0 ? up : down);
}

class ZdModel final : public GraphOracle {
 public:
  explicit ZdModel(std::size_t d) : d_(d) {
    auto p = presentation_preset("zd" + std::to_string(d));
    labels_ = p.generators();
  }
  std::string name() const override { return "zd" + std::to_string(d_); }
  Vertex root() const override { return Vertex(d_, 0); }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    for (int sign : {1, -1}) {
      for (std::size_t i = 0; i < d_; ++i) {
        Vertex w = v;
        w[i] += sign;
        out.push_back(Arc{std::move(w), static_cast<int>(sign > 0 ? i : d_ + i)});
      }
    }
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    std::vector<Symmetry> out;
    for (std::size_t i = 0; i < d_; ++i) {
      out.push_back([i](const Vertex& v) {
        Vertex w = v;
        w[i] += 1;
        return w;
      });
    }
    return out;
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override {
    std::vector<int> word;
    for (std::size_t i = 0; i < d_; ++i) append_power(word, static_cast<int>(i), static_cast<int>(d_ + i), v[i]);
    return word;
  }

 private:
  std::size_t d_;
  std::vector<std::string> labels_;
};

// Element n of D_inf: n > 0 is s1 s2 s1 ... (n letters), n < 0 is s2 s1 ...
std::int64_t dihedral_step(std::int64_t n, int generator) {
  const bool even = mod(n, 2) == 0;
  if (generator == 0) return even ? n + 1 : n - 1;
  return even ? n - 1 : n + 1;
}

std::vector<int> dihedral_word(std::int64_t n) {
  std::vector<int> word;
  const int first = n > 0 ? 0 : 1;
  for (std::int64_t i = 0; i < std::abs(n); ++i) word.push_back((first + static_cast<int>(i % 2)) % 2);
  return word;
}

class DihedralModel final : public GraphOracle {
 public:
  std::string name() const override { return "dihedral"; }
  Vertex root() const override { return {0}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    out.push_back(Arc{{dihedral_step(v[0], 0)}, 0});
    out.push_back(Arc{{dihedral_step(v[0], 1)}, 1});
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    return {[](const Vertex& v) { return Vertex{v[0] + 1}; }};
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override { return dihedral_word(v[0]); }

 private:
  std::vector<std::string> labels_{"s1", "s2"};
};

class Tree3Model final : public GraphOracle {
 public:
  std::string name() const override { return "tree3"; }
  Vertex root() const override { return {}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    for (int g = 0; g < 3; ++g) {
      Vertex w = v;
      if (!w.empty() && w.back() == inverse(g)) {
        w.pop_back();
      } else {
        w.push_back(g);
      }
      out.push_back(Arc{std::move(w), g});
    }
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    std::vector<Symmetry> out;
    for (int g = 0; g < 3; ++g) {
      out.push_back([g](const Vertex& v) {
        Vertex w = v;
        if (!w.empty() && w.front() == inverse(g)) {
          w.erase(w.begin());
        } else {
          w.insert(w.begin(), g);
        }
        return w;
      });
    }
    return out;
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override {
    return std::vector<int>(v.begin(), v.end());
  }

 private:
  // s1 <-> t, s2 is an involution.
  static int inverse(int g) { return g == 1 ? 1 : 2 - g; }
  std::vector<std::string> labels_{"s1", "s2", "t"};
};

// (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b').
class HeisenbergModel final : public GraphOracle {
 public:
  std::string name() const override { return "heisenberg"; }
  Vertex root() const override { return {0, 0, 0}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    const auto a = v[0], b = v[1], c = v[2];
    out.push_back(Arc{{a + 1, b, c}, 0});
    out.push_back(Arc{{a, b + 1, c + a}, 1});
    out.push_back(Arc{{a, b, c + 1}, 2});
    out.push_back(Arc{{a - 1, b, c}, 3});
    out.push_back(Arc{{a, b - 1, c - a}, 4});
    out.push_back(Arc{{a, b, c - 1}, 5});
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    return {[](const Vertex& v) { return Vertex{v[0] + 1, v[1], v[2] + v[1]}; },
            [](const Vertex& v) { return Vertex{v[0], v[1] + 1, v[2]}; },
            [](const Vertex& v) { return Vertex{v[0], v[1], v[2] + 1}; }};
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override {
    std::vector<int> word;
    append_power(word, 0, 3, v[0]);
    append_power(word, 1, 4, v[1]);
    append_power(word, 2, 5, v[2] - v[0] * v[1]);
    return word;
  }

 private:
  std::vector<std::string> labels_{"x", "y", "z", "X", "Y", "Z"};
};

// Vertex {marker, lamp_1 < lamp_2 < ...}.
class LamplighterModel final : public GraphOracle {
 public:
  std::string name() const override { return "lamplighter"; }
  Vertex root() const override { return {0}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    out.push_back(Arc{toggle(v, v[0]), 0});
    Vertex t = v;
    t[0] += 1;
    out.push_back(Arc{std::move(t), 1});
    Vertex u = v;
    u[0] -= 1;
    out.push_back(Arc{std::move(u), 2});
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    return {[](const Vertex& v) { return toggle(v, 0); },
            [](const Vertex& v) {
              Vertex w = v;
              for (auto& x : w) x += 1;
              return w;
            }};
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override {
    std::vector<int> word;
    std::int64_t at = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      append_power(word, 1, 2, v[i] - at);
      word.push_back(0);
      at = v[i];
    }
    append_power(word, 1, 2, v[0] - at);
    return word;
  }

 private:
  static Vertex toggle(const Vertex& v, std::int64_t pos) {
    Vertex w{v[0]};
    bool present = false;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i] == pos) {
        present = true;
        continue;
      }
      w.push_back(v[i]);
    }
    if (!present) {
      w.push_back(pos);
      std::sort(w.begin() + 1, w.end());
    }
    return w;
  }
  std::vector<std::string> labels_{"a", "t", "u"};
};

class CylinderModel final : public GraphOracle {
 public:
  explicit CylinderModel(std::int64_t m) : m_(m) {
    if (m < 3) throw InputError("cylinder needs m >= 3");
  }
  std::string name() const override { return "cylinder" + std::to_string(m_); }
  Vertex root() const override { return {0, 0}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    out.push_back(Arc{{v[0] + 1, v[1]}, 0});
    out.push_back(Arc{{v[0] - 1, v[1]}, 1});
    out.push_back(Arc{{v[0], mod(v[1] + 1, m_)}, 2});
    out.push_back(Arc{{v[0], mod(v[1] - 1, m_)}, 3});
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    const auto m = m_;
    return {[](const Vertex& v) { return Vertex{v[0] + 1, v[1]}; },
            [m](const Vertex& v) { return Vertex{v[0], mod(v[1] + 1, m)}; }};
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override {
    std::vector<int> word;
    append_power(word, 0, 1, v[0]);
    append_power(word, 2, 3, v[1]);
    return word;
  }

 private:
  std::int64_t m_;
  std::vector<std::string> labels_{"x", "X", "a", "b"};
};

// D_inf x J_m: vertex {n, k}. H is generated by the line shift and the
// cyclic rotation, so it acts transitively.
class LadderModel final : public GraphOracle {
 public:
  explicit LadderModel(std::int64_t m) : m_(m) {
    if (m < 3) throw InputError("ladder needs m >= 3");
  }
  std::string name() const override { return "ladder" + std::to_string(m_); }
  Vertex root() const override { return {0, 0}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    out.push_back(Arc{{dihedral_step(v[0], 0), v[1]}, 0});
    out.push_back(Arc{{dihedral_step(v[0], 1), v[1]}, 1});
    out.push_back(Arc{{v[0], mod(v[1] + 1, m_)}, 2});
    out.push_back(Arc{{v[0], mod(v[1] - 1, m_)}, 3});
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    const auto m = m_;
    return {[](const Vertex& v) { return Vertex{v[0] + 1, v[1]}; },
            [m](const Vertex& v) { return Vertex{v[0], mod(v[1] + 1, m)}; }};
  }
  std::optional<std::vector<int>> spell(const Vertex& v) const override {
    auto word = dihedral_word(v[0]);
    append_power(word, 2, 3, v[1]);
    return word;
  }

 private:
  std::int64_t m_;
  std::vector<std::string> labels_{"s1", "s2", "a", "b"};
};

// Vertex {k, w_1, ..., w_j}: from the root go k steps towards the end, then
// down through children w_1..w_j. The root is child 0 of each of its
// ancestors, so a canonical vertex never has k > 0 with w_1 = 0.
class GrandparentModel final : public GraphOracle {
 public:
  std::string name() const override { return "grandparent"; }
  Vertex root() const override { return {0}; }
  void neighbors(const Vertex& v, std::vector<Arc>& out) const override {
    const Vertex p = up(v);
    out.push_back(Arc{p, 0});
    out.push_back(Arc{down(v, 0), 1});
    out.push_back(Arc{down(v, 1), 2});
    out.push_back(Arc{up(p), 3});
    int label = 4;
    for (int a : {0, 1}) {
      const Vertex c = down(v, a);
      for (int b : {0, 1}) out.push_back(Arc{down(c, b), label++});
    }
  }
  const std::vector<std::string>& labels() const override { return labels_; }
  std::vector<Symmetry> symmetries() const override {
    const Vertex r = root();
    return {shift_to(up(r), 0), shift_to(down(r, 1), 0), shift_to(r, 1)};
  }

  static Vertex up(const Vertex& v) {
    if (v.size() == 1) return {v[0] + 1};
    Vertex w = v;
    w.pop_back();
    return w;
  }
  static Vertex down(const Vertex& v, std::int64_t bit) {
    if (v.size() == 1 && v[0] > 0 && bit == 0) return {v[0] - 1};
    Vertex w = v;
    w.push_back(bit);
    return w;
  }

 private:
  // The end-preserving automorphism taking the root to x, optionally swapping
  // the two subtrees below the image of the root.
  static Symmetry shift_to(Vertex x, std::int64_t swap) {
    return [x = std::move(x), swap](const Vertex& v) {
      const auto k = v[0];
      std::vector<Vertex> chain{x};
      for (std::int64_t i = 0; i < k; ++i) chain.push_back(up(chain.back()));
      Vertex out = chain.back();
      for (std::size_t i = 1; i < v.size(); ++i) {
        std::int64_t bit = v[i];
        if (i == 1) {
          if (k == 0) {
            bit ^= swap;
          } else {
            const auto& below = chain[static_cast<std::size_t>(k - 1)];
            bit ^= (down(out, 0) == below) ? 0 : 1;
          }
        }
        out = down(out, bit);
      }
      return out;
    };
  }
  std::vector<std::string> labels_{"parent", "child0", "child1", "grandparent",
                                   "gc00",   "gc01",   "gc10",   "gc11"};
};

std::optional<long> suffix_number(std::string_view id, std::string_view prefix) {
  if (!id.starts_with(prefix) || id.size() == prefix.size()) return std::nullopt;
  long value = 0;
  auto digits = id.substr(prefix.size());
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

OraclePtr periodic_model(const std::string& id, const std::string& preset) {
  return std::make_shared<PeriodicCover>(id, periodic_preset(preset));
}

}  // namespace

std::int64_t grandparent_level(const Vertex& v) {
  return v.at(0) - static_cast<std::int64_t>(v.size() - 1);
}

OraclePtr model(std::string_view id) {
  if (id == "dihedral") return std::make_shared<DihedralModel>();
  if (id == "dihedral_line") return periodic_model("dihedral_line", "dihedral_line");
  if (id == "tree3") return std::make_shared<Tree3Model>();
  if (id == "heisenberg") return std::make_shared<HeisenbergModel>();
  if (id == "lamplighter") return std::make_shared<LamplighterModel>();
  if (id == "hexagonal") return periodic_model("hexagonal", "hexagonal");
  if (id == "square_octagon") return periodic_model("square_octagon", "square_octagon");
  if (id == "grandparent") return std::make_shared<GrandparentModel>();
  if (id.starts_with("pg:")) {
    const std::string preset(id.substr(3));
    return periodic_model(std::string(id), preset);
  }
  if (auto d = suffix_number(id, "zd")) {
    if (*d < 1 || *d > 16) throw InputError("zd dimension must be in 1..16");
    return std::make_shared<ZdModel>(static_cast<std::size_t>(*d));
  }
  if (auto m = suffix_number(id, "cylinder")) return std::make_shared<CylinderModel>(*m);
  if (auto m = suffix_number(id, "ladder")) return std::make_shared<LadderModel>(*m);
  throw InputError("unknown model '" + std::string(id) + "'");
}

OraclePtr catalog(std::string_view name, std::optional<long> param) {
  auto need = [&](const char* what) {
    if (!param) throw InputError(std::string(what) + " needs a parameter");
    return std::to_string(*param);
  };
  if (name == "zd") return model("zd" + need("zd"));
  if (name == "cylinder_zd" || name == "cylinder") return model("cylinder" + need("cylinder_zd"));
  if (name == "ladder_dihedral" || name == "ladder") return model("ladder" + need("ladder_dihedral"));
  return model(name);
}

std::vector<std::string> model_names() {
  std::vector<std::string> names{"zd<d>",       "dihedral",       "dihedral_line", "tree3",
                                 "heisenberg",  "lamplighter",    "hexagonal",     "square_octagon",
                                 "cylinder<m>", "ladder<m>",      "grandparent"};
  for (const auto& p : periodic_preset_names()) names.push_back("pg:" + p);
  return names;
}

std::optional<std::string> presentation_for_model(std::string_view id) {
  if (id == "dihedral_line") return "dihedral";
  if (id == "grandparent" || id.starts_with("pg:")) return std::nullopt;
  if (suffix_number(id, "zd") || suffix_number(id, "cylinder") || suffix_number(id, "ladder")) {
    return std::string(id);
  }
  for (const auto* n : {"dihedral", "tree3", "heisenberg", "lamplighter", "hexagonal", "square_octagon"}) {
    if (id == n) return std::string(n);
  }
  return std::nullopt;
}

}  // namespace sawlab
