#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sawlab/catalog.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/presentation.hpp"
#include "sawlab/presets.hpp"

using namespace sawlab;

namespace {

const char* kZ2 = R"({"generators": ["x","y","X","Y"], "inverse_pairs": [["x","X"],["y","Y"]],
                      "relators": ["x X","y Y","x y X Y"]})";

std::vector<std::int64_t> as_int64(const IntegerVector& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

std::size_t rank_of(const std::string& preset) { return rank_exact(coefficient_matrix(presentation_preset(preset))); }

}  // namespace

TEST_CASE("parse the Z^2 document") {
  auto p = Presentation::parse(kZ2);
  CHECK(p.generators().size() == 4);
  CHECK(p.relators().size() == 3);
  CHECK(p.inverse_of(0) == std::optional<std::size_t>(2));
  CHECK(p.format_word(p.parse_word("x y X")) == "x y X");
  auto again = Presentation::parse(p.to_json());
  CHECK(again.generators() == p.generators());
  CHECK(again.relators() == p.relators());
}

TEST_CASE("parse accepts a free group and rejects bad documents") {
  CHECK(Presentation::parse(R"({"generators": ["a"], "relators": []})").relators().empty());
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": ["a"], "relators": ["a w"]})"), InputError);
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": ["a","a"], "relators": []})"), InputError);
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": ["1"], "relators": []})"), InputError);
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": [], "relators": []})"), InputError);
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": ["a","b"], "inverse_pairs": [["a","b"],["b","b"]]})"),
                  InputError);
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": ["a"], "relator_families": [{"u0": {"a": -1}, "u1": {}}]})"),
                  InputError);
  CHECK_THROWS_AS(Presentation::parse(R"({"generators": ["a"], "relator_families": [{"u0": {"b": 1}, "u1": {}}]})"),
                  InputError);
  CHECK_THROWS_AS(Presentation::parse("not json"), InputError);
}

TEST_CASE("coefficient matrix rows") {
  auto dih = coefficient_matrix(presentation_preset("dihedral"));
  CHECK(dih.rows == std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 2}});
  auto hex = coefficient_matrix(presentation_preset("hexagonal"));
  CHECK(hex.rows == std::vector<std::vector<std::int64_t>>{{2, 0, 0}, {0, 1, 1}, {2, 2, 2}});
  auto lamp = coefficient_matrix(presentation_preset("lamplighter"));
  REQUIRE(lamp.rows.size() == 4);
  CHECK(lamp.rows[0] == std::vector<std::int64_t>{2, 0, 0});
  CHECK(lamp.rows[1] == std::vector<std::int64_t>{0, 1, 1});
  CHECK(lamp.rows[3][1] == lamp.rows[3][2]);
  CHECK(lamp.rows[3][1] > 0);
}

TEST_CASE("lamplighter family counts match the expanded commutators") {
  auto p = presentation_preset("lamplighter");
  const auto& fam = p.families().at(0);
  for (int n = 0; n <= 3; ++n) {
    // [a, t^n a u^n] = a (t^n a u^n) a^-1 (t^n a u^n)^-1 with a^-1 = a and
    // (t^n a u^n)^-1 = t^n a u^n.
    std::string conj;
    for (int i = 0; i < n; ++i) conj += "t ";
    conj += "a";
    for (int i = 0; i < n; ++i) conj += " u";
    const auto word = p.parse_word("a " + conj + " a " + conj);
    std::vector<std::int64_t> counts(3, 0);
    for (auto s : word) ++counts[s];
    for (std::size_t s = 0; s < 3; ++s) CHECK(counts[s] == fam.u0[s] + n * fam.u1[s]);
  }
}

TEST_CASE("exact ranks") {
  CHECK(rank_of("zd2") == 2);
  CHECK(rank_of("zd3") == 3);
  CHECK(rank_of("tree3") == 2);
  CHECK(rank_of("heisenberg") == 4);
  CHECK(rank_of("square_octagon") == 3);
  CHECK(rank_of("hexagonal") == 2);
  CHECK(rank_of("sl2z") == 4);
  CHECK(rank_of("lamplighter") == 2);
}

TEST_CASE("integer kernel bases") {
  auto z2 = integer_kernel_basis(coefficient_matrix(presentation_preset("zd2")));
  REQUIRE(z2.vectors.size() == 2);
  CHECK(as_int64(z2.vectors[0]) == std::vector<std::int64_t>{1, 0, -1, 0});
  CHECK(as_int64(z2.vectors[1]) == std::vector<std::int64_t>{0, 1, 0, -1});
  CHECK(integer_kernel_basis(coefficient_matrix(presentation_preset("dihedral"))).vectors.empty());
  auto hex = integer_kernel_basis(coefficient_matrix(presentation_preset("hexagonal")));
  REQUIRE(hex.vectors.size() == 1);
  CHECK(as_int64(hex.vectors[0]) == std::vector<std::int64_t>{0, 1, -1});
  auto heis = integer_kernel_basis(coefficient_matrix(presentation_preset("heisenberg")));
  REQUIRE(heis.vectors.size() == 2);
  CHECK(as_int64(heis.vectors[0]) == std::vector<std::int64_t>{1, 0, 0, -1, 0, 0});
  CHECK(as_int64(heis.vectors[1]) == std::vector<std::int64_t>{0, 1, 0, 0, -1, 0});
}

TEST_CASE("existence and Betti numbers") {
  CHECK_FALSE(ghf_exists(presentation_preset("higman")));
  CHECK(betti(presentation_preset("higman")) == 0);
  CHECK(ghf_exists(presentation_preset("free2")));
  CHECK(betti(presentation_preset("free2")) == 2);
  CHECK(ghf_exists(presentation_preset("lamplighter")));
  CHECK(betti(presentation_preset("lamplighter")) == 1);
  CHECK_FALSE(ghf_exists(presentation_preset("dihedral")));
  CHECK_FALSE(ghf_exists(presentation_preset("sl2z")));
  CHECK_FALSE(ghf_exists(presentation_preset("square_octagon")));
  CHECK(ghf_exists(presentation_preset("tree3")));
}

TEST_CASE("kernel invariants hold on every preset") {
  for (const auto& name : presentation_preset_names()) {
    if (name.find('<') != std::string::npos) continue;
    auto p = presentation_preset(name);
    auto c = coefficient_matrix(p);
    auto k = integer_kernel_basis(c);
    CAPTURE(name);
    CHECK(k.vectors.size() == p.generators().size() - rank_exact(c));
    CHECK(betti(p) == k.vectors.size());
    for (const auto& v : k.vectors) {
      Integer g = 0;
      for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      CHECK(g == 1);
      for (const auto& row : c.rows) {
        Integer dot = 0;
        for (std::size_t s = 0; s < row.size(); ++s) dot += v[s] * static_cast<long>(row[s]);
        CHECK(dot == 0);
      }
    }
  }
}

TEST_CASE("rank agrees with float and fraction-free oracles on random matrices") {
  std::mt19937 rng(20260917);
  std::uniform_int_distribution<int> dim(1, 6), entry(0, 4);
  for (int t = 0; t < 500; ++t) {
    const int rows = dim(rng), cols = dim(rng);
    CoefficientMatrix c;
    c.columns = static_cast<std::size_t>(cols);
    std::vector<std::vector<double>> f;
    std::vector<std::vector<mpz_class>> z;
    for (int r = 0; r < rows; ++r) {
      std::vector<std::int64_t> row;
      for (int k = 0; k < cols; ++k) row.push_back(entry(rng));
      f.emplace_back(row.begin(), row.end());
      z.emplace_back();
      for (auto x : row) z.back().emplace_back(static_cast<long>(x));
      c.rows.push_back(row);
    }
    const auto r = rank_exact(c);
    CHECK(r == oracle::float_rank(f));
    CHECK(r == oracle::bareiss_rank(z));
    CHECK(integer_kernel_basis(c).vectors.size() == c.columns - r);
  }
}

TEST_CASE("evaluation") {
  auto z2 = Presentation::parse(kZ2);
  auto spec = make_group_height(z2, {1, 0, -1, 0});
  CHECK(evaluate_ghf(spec, z2, "x y x X") == 1);
  CHECK(evaluate_ghf(spec, z2, "") == 0);
  CHECK_THROWS_AS(evaluate_ghf(spec, z2, "x q"), InputError);
  auto hex = presentation_preset("hexagonal");
  CHECK(evaluate_ghf(make_group_height(hex, {0, 1, -1}), hex, "s2 s2 s3") == 1);
}

TEST_CASE("evaluation is additive and kills inverse pairs") {
  std::mt19937 rng(7);
  for (const auto& name : {"zd2", "zd3", "tree3", "heisenberg", "hexagonal", "lamplighter", "free2"}) {
    auto p = presentation_preset(name);
    auto spec = *primitive_group_height(p);
    std::uniform_int_distribution<std::size_t> letter(0, p.generators().size() - 1), len(0, 12);
    for (int t = 0; t < 50; ++t) {
      Word a, b;
      for (std::size_t i = len(rng); i > 0; --i) a.push_back(letter(rng));
      for (std::size_t i = len(rng); i > 0; --i) b.push_back(letter(rng));
      Word ab = a;
      ab.insert(ab.end(), b.begin(), b.end());
      CHECK(evaluate_ghf(spec, ab) == evaluate_ghf(spec, a) + evaluate_ghf(spec, b));
    }
    for (const auto& [s, t] : p.inverse_pairs()) CHECK(evaluate_ghf(spec, Word{s, t}) == 0);
  }
}

TEST_CASE("well-definedness") {
  auto z2 = Presentation::parse(kZ2);
  CHECK(verify_well_defined(GroupHeightSpec{{1, 0, -1, 0}}, z2).ok);
  auto bad = verify_well_defined(GroupHeightSpec{{1, 0, 0, 0}}, z2);
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness == std::optional<std::string>("x X"));
  CHECK_THROWS_AS(make_group_height(z2, {1, 0, 0, 0}), InputError);
  CHECK_THROWS_AS(make_group_height(z2, {0, 0, 0, 0}), InputError);

  auto lamp = presentation_preset("lamplighter");
  CHECK(verify_well_defined(GroupHeightSpec{{0, 1, -1}}, lamp).ok);
  CHECK_FALSE(verify_well_defined(GroupHeightSpec{{1, 0, -1}}, lamp).ok);

  // Spellings on the catalog model.
  auto g = model("zd2");
  auto rep = verify_well_defined(GroupHeightSpec{{1, 0, -1, 0}}, presentation_preset("zd2"), 4, g.get());
  CHECK(rep.ok);
  CHECK(rep.vertices_checked == 41);
  auto heis = model("heisenberg");
  CHECK(verify_well_defined(*primitive_group_height(presentation_preset("heisenberg")),
                            presentation_preset("heisenberg"), 3, heis.get())
            .ok);
}

TEST_CASE("d of a group height function") {
  CHECK(d_of_ghf(GroupHeightSpec{{1, 0, -1, 0}}) == 1);
  CHECK(d_of_ghf(GroupHeightSpec{{0, 1, -1}}) == 1);
  CHECK(d_of_ghf(GroupHeightSpec{{2, 0, -2, 0}}) == 2);
}
