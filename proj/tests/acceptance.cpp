// One PASS/FAIL line per acceptance criterion. All value checks are exact
// (integer or rational equality, tolerance zero); the wall-clock limits are
// the per-criterion budgets below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sawlab/catalog.hpp"
#include "sawlab/heights.hpp"
#include "sawlab/locality.hpp"
#include "sawlab/periodic.hpp"
#include "sawlab/presentation.hpp"
#include "sawlab/presets.hpp"
#include "sawlab/report.hpp"
#include "sawlab/saw.hpp"

using namespace sawlab;

namespace {

constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 5.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit4 = 60.0;
constexpr double kLimit5 = 600.0;
constexpr double kLimit6 = 5.0;
constexpr double kLimit7 = 5.0;
constexpr double kLimit8 = 600.0;
constexpr double kLimit9 = 600.0;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& what) {
    if (!ok) detail << "; ";
    else detail.str("");
    ok = false;
    detail << what;
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit) + " s");
  if (!o.ok) ++failures;
  std::printf("%s %d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs, o.detail.str().empty() ? "" : ": ",
              o.detail.str().c_str());
  std::fflush(stdout);
}

EnumerationOptions opts(int n_max, unsigned threads = 0) {
  EnumerationOptions o;
  o.n_max = n_max;
  o.threads = threads;
  return o;
}

// Brute-force Z^2 walker over coordinate pairs, kept apart from the library.
void z2_oracle(int n_max, std::vector<Integer>& sigma) {
  sigma.assign(n_max + 1, 0);
  std::set<std::pair<int, int>> seen{{0, 0}};
  std::function<void(int, int, int)> go = [&](int x, int y, int len) {
    ++sigma[len];
    if (len == n_max) return;
    const int dx[] = {1, -1, 0, 0}, dy[] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      if (!seen.insert({x + dx[k], y + dy[k]}).second) continue;
      go(x + dx[k], y + dy[k], len + 1);
      seen.erase({x + dx[k], y + dy[k]});
    }
  };
  go(0, 0, 0);
}

// Count tables behind criteria 3-5, rendered as CSV.
std::string tables_3_to_5(unsigned threads) {
  std::string out;
  const auto h = coordinate_height(0);
  auto z1 = model("zd1"), t3 = model("tree3"), z2 = model("zd2");
  const auto z1s = count_saws(*z1, opts(10, threads));
  const auto z1b = count_bridges(*z1, h, opts(10, threads));
  const auto t3s = count_saws(*t3, opts(10, threads));
  const auto z2s = count_saws(*z2, opts(12, threads));
  const auto z2b = count_bridges(*z2, h, opts(12, threads));
  const auto bounds = mu_bounds(z2s, z2b);
  out += counts_csv(&z1s, &z1b, nullptr);
  out += counts_csv(&t3s, nullptr, nullptr);
  out += counts_csv(&z2s, &z2b, &bounds);
  return out;
}

}  // namespace

int main() {
  criterion(1, "rank and GHF verdict table", kLimit1, [](Outcome& o) {
    struct Row {
      const char* preset;
      int rank;  // -1: not asserted
      bool exists;
      int betti;  // -1: not asserted
    };
    const std::vector<Row> table = {
        {"zd2", 2, true, -1},          {"zd3", 3, true, -1},       {"tree3", 2, true, -1},
        {"heisenberg", 4, true, -1},   {"square_octagon", 3, false, -1}, {"hexagonal", 2, true, -1},
        {"dihedral", -1, false, -1},   {"higman", -1, false, -1},  {"sl2z", -1, false, -1},
        {"lamplighter", 2, true, 1}};
    for (const auto& r : table) {
      const auto p = presentation_preset(r.preset);
      const auto rank = rank_exact(coefficient_matrix(p));
      if (r.rank >= 0 && rank != static_cast<std::size_t>(r.rank)) {
        o.fail(std::string(r.preset) + " rank " + std::to_string(rank));
      }
      if (ghf_exists(p) != r.exists) o.fail(std::string(r.preset) + " existence");
      if (ghf_exists(p) != (rank < p.generators().size())) o.fail(std::string(r.preset) + " rank criterion");
      if (r.betti >= 0 && betti(p) != static_cast<std::size_t>(r.betti)) o.fail(std::string(r.preset) + " betti");
    }
    if (rank_exact(coefficient_matrix(presentation_preset("square_octagon"))) !=
        presentation_preset("square_octagon").generators().size()) {
      o.fail("square_octagon rank != |S|");
    }
  });

  criterion(2, "emitted GHFs are well defined and harmonic on radius-4 balls", kLimit2, [](Outcome& o) {
    std::size_t checked = 0, emitted = 0;
    for (const std::string id : {"zd1", "zd2", "zd3", "dihedral", "dihedral_line", "tree3", "heisenberg", "lamplighter",
                                 "hexagonal", "square_octagon", "cylinder4", "cylinder7", "ladder4"}) {
      const auto p = presentation_preset(*presentation_for_model(id));
      auto g = model(id);
      for (const auto& v : integer_kernel_basis(coefficient_matrix(p)).vectors) {
        std::vector<std::int64_t> gamma;
        for (const auto& x : v) gamma.push_back(x.get_si());
        const auto spec = make_group_height(p, gamma);
        if (!verify_well_defined(spec, p, 4, g.get()).ok) o.fail(id + " not well defined");
        const auto rep = verify_harmonic(*g, ghf_height(*g, spec), 4);
        for (const auto& d : rep.defects) {
          if (d != 0) {
            o.fail(id + " harmonic defect");
            break;
          }
        }
        checked += rep.vertices.size();
        ++emitted;
      }
    }
    if (emitted == 0) o.fail("no GHF emitted");
    if (o.ok) o.detail << emitted << " GHFs, " << checked << " vertex checks";
  });

  criterion(3, "SAW counts and submultiplicativity", kLimit3, [](Outcome& o) {
    const auto z1 = count_saws(*model("zd1"), opts(10));
    for (int n = 1; n <= 10; ++n) {
      if (z1.counts[n] != 2) o.fail("zd1 sigma_" + std::to_string(n));
    }
    const auto t3 = count_saws(*model("tree3"), opts(10));
    for (int n = 1; n <= 10; ++n) {
      if (t3.counts[n] != Integer(3) * (Integer(1) << (n - 1))) o.fail("tree3 sigma_" + std::to_string(n));
    }
    std::vector<Integer> expect;
    z2_oracle(10, expect);
    const auto z2 = count_saws(*model("zd2"), opts(10));
    if (z2.partial || z2.counts != expect) o.fail("zd2 differs from the oracle");
    for (const auto* t : {&z1, &t3, &z2}) {
      const auto rep = check_multiplicativity(*t, Multiplicativity::Sub);
      if (!rep.ok()) o.fail(t->model + ": " + std::to_string(rep.violations.size()) + " violations");
    }
    if (o.ok) o.detail << "zd2 sigma_10 = " << z2.counts[10].get_str();
  });

  criterion(4, "bridge counts and super-multiplicativity", kLimit4, [](Outcome& o) {
    auto z2 = model("zd2");
    const auto h = coordinate_height(0);
    const auto s = count_saws(*z2, opts(10));
    const auto b = count_bridges(*z2, h, opts(10));
    for (int n = 0; n <= 10; ++n) {
      if (b.counts[n] > s.counts[n]) o.fail("b_" + std::to_string(n) + " > sigma_" + std::to_string(n));
    }
    const auto rep = check_multiplicativity(b, Multiplicativity::Super);
    if (!rep.ok()) o.fail(std::to_string(rep.violations.size()) + " super-multiplicativity violations");
    const auto z1 = count_bridges(*model("zd1"), h, opts(10));
    for (int n = 0; n <= 10; ++n) {
      if (z1.counts[n] != 1) o.fail("zd1 b_" + std::to_string(n));
    }
    if (auto n = doubling_violation(b)) o.fail("doubling sequence drops at n = " + std::to_string(*n));
    if (o.ok) o.detail << rep.pairs_checked << " pairs, b_10 = " << b.counts[10].get_str();
  });

  criterion(5, "bound sandwich on Z^2", kLimit5, [](Outcome& o) {
    auto z2 = model("zd2");
    const auto h = coordinate_height(0);
    const auto s12 = count_saws(*z2, opts(12));
    const auto b12 = count_bridges(*z2, h, opts(12));
    auto cut = [](CountTable t, int n) {
      t.counts.resize(n + 1);
      return t;
    };
    const unsigned p = 10;
    const Integer two = Integer(2) * Integer(10000000000), three = Integer(3) * Integer(10000000000);
    const auto r10 = mu_bounds(cut(s12, 10), cut(b12, 10), p);
    const auto lower = r10.rows[r10.best_lower_n - 1].lower_scaled;
    const auto upper = r10.rows[r10.best_upper_n - 1].upper_scaled;
    if (!(lower < upper)) o.fail("best_lower >= best_upper");
    if (!(lower > two && lower < three)) o.fail("best_lower " + r10.best_lower + " outside (2, 3)");
    if (!(upper > two && upper < three)) o.fail("best_upper " + r10.best_upper + " outside (2, 3)");
    const auto r6 = mu_bounds(cut(s12, 6), cut(b12, 6), p);
    const auto r12 = mu_bounds(s12, b12, p);
    if (!(r12.gap_scaled < r6.gap_scaled)) o.fail("gap(12) " + r12.gap + " not below gap(6) " + r6.gap);
    o.detail << "n_max 10: [" << r10.best_lower << ", " << r10.best_upper << "]; gap 6: " << r6.gap
             << ", gap 12: " << r12.gap;
  });

  criterion(6, "harmonic extension and repair", kLimit6, [](Outcome& o) {
    // The dihedral line as a periodic graph: site (o, x) is the integer 2x + o.
    const auto line = periodic_preset("dihedral_line");
    const auto psi = harmonic_extension(line, 0, BoundaryData{{Rational(2)}, Rational(0)});
    for (std::int64_t x = -50; x <= 50; ++x) {
      for (std::int64_t orbit = 0; orbit < 2; ++orbit) {
        if (psi.value({orbit, x}) != Rational(2 * x + orbit)) o.fail("psi is not the identity");
      }
    }
    if (!is_harmonic(line, psi)) o.fail("dihedral psi not harmonic");

    const auto pg = periodic_preset("square_octagon");
    const auto rep = increase_repair(pg, solution_space(pg));
    if (!is_harmonic(pg, rep.combined)) o.fail("combined solution not harmonic");
    for (std::size_t orbit = 0; orbit < pg.orbit_count(); ++orbit) {
      // Integer values: the scaled combination matches the integer height exactly.
      if (rep.combined.offsets[orbit] * rep.scale != Rational(rep.height.offsets[orbit])) o.fail("non-integer offset");
    }
    auto g = model("square_octagon");
    const auto h = affine_height(rep.height);
    const auto axioms = verify_height_axioms(*g, h, 4);
    if (!axioms.ok()) o.fail("axioms: " + axioms.summary());
    if (!verify_harmonic(*g, h, 4).harmonic()) o.fail("square_octagon height not harmonic");
    if (rep.witnesses.size() != pg.orbit_count()) o.fail("missing increase witnesses");
    if (o.ok) {
      o.detail << "square_octagon lambda (" << rep.height.lambda[0] << ", " << rep.height.lambda[1] << "), offsets";
      for (auto f : rep.height.offsets) o.detail << ' ' << f;
    }
  });

  criterion(7, "grandparent graph", kLimit7, [](Outcome& o) {
    auto g = model("grandparent");
    const auto h = level_height();
    const auto axioms = verify_height_axioms(*g, h, 4);
    if (!axioms.ok()) o.fail("axioms: " + axioms.summary());
    const auto rep = verify_harmonic(*g, h, 4);
    const Rational seven_eighths(7, 8);
    for (const auto& d : rep.defects) {
      if (d != seven_eighths) {
        o.fail("defect " + d.get_str());
        break;
      }
    }
    const auto d = compute_d(*g, h, 4);
    if (d != 2) o.fail("d = " + std::to_string(d));
    if (o.ok) o.detail << rep.vertices.size() << " vertices, defect 7/8, d = 2";
  });

  criterion(8, "locality on Z^2 versus cylinders", kLimit8, [](Outcome& o) {
    const std::vector<long> ms{4, 5, 6, 7, 8, 9};
    EnumerationOptions opt;
    const auto scan = locality_scan("zd2", "cylinder", 10, ms, opt);
    std::ostringstream ks;
    for (const auto& r : scan.records) {
      const int expected = static_cast<int>((r.m - 1) / 2);
      ks << " m=" << r.m << ":K=" << r.iso.K;
      if (r.iso.K != expected) {
        o.fail("m=" + std::to_string(r.m) + " K=" + std::to_string(r.iso.K) + " expected " + std::to_string(expected));
      }
      if (!r.discrepancies.empty()) o.fail("m=" + std::to_string(r.m) + " count discrepancy below K");
    }
    if (!scan.precondition || !scan.precondition->satisfied) o.fail("rank precondition not satisfied");
    if (scan.precondition) {
      ks << "; rank " << scan.precondition->rank << " < " << scan.precondition->generators << " - 1";
    }
    ks << "; discrepancies " << scan.total_discrepancies();
    if (o.ok) o.detail.str("");
    else o.detail << " |";
    o.detail << ks.str();
  });

  criterion(9, "1 and 8 threads give byte-identical tables", kLimit9, [](Outcome& o) {
    const auto one = tables_3_to_5(1);
    const auto eight = tables_3_to_5(8);
    if (one != eight) o.fail("tables differ");
    if (o.ok) o.detail << one.size() << " bytes compared";
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
