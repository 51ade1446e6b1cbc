#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sawlab/catalog.hpp"
#include "sawlab/errors.hpp"
#include "sawlab/heights.hpp"
#include "sawlab/locality.hpp"
#include "sawlab/presentation.hpp"
#include "sawlab/presets.hpp"
#include "sawlab/report.hpp"
#include "sawlab/saw.hpp"

using namespace sawlab;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kNegative = 3;
constexpr int kBudget = 4;

struct RunConfig {
  std::string model;
  std::string input;
  std::string height = "default";
  std::string family = "cylinder";
  std::string a, b;
  std::string output;
  std::string format;
  std::string m_list = "4,5,6,7,8,9";
  int n_max = -1;
  int radius = 4;
  int bound = 6;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t budget = 0;
  unsigned precision = 10;
  bool no_timestamp = false;
  long seed = 0;  // reserved; every path here is exact
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const RunConfig& cfg, const std::string& content) {
  if (cfg.output.empty()) {
    std::cout << content;
  } else {
    write_atomic(cfg.output, content);
    std::cerr << "wrote " << cfg.output << "\n";
  }
}

std::optional<std::string> stamp(const RunConfig& cfg) {
  if (cfg.no_timestamp) return std::nullopt;
  return timestamp_utc();
}

std::string format_or(const RunConfig& cfg, const std::string& fallback) {
  const std::string f = cfg.format.empty() ? fallback : cfg.format;
  if (f != "csv" && f != "json") throw InputError("format must be csv or json");
  return f;
}

std::string vector_text(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

std::string vector_text(const IntegerVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::string vector_text(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

void require_model(const RunConfig& cfg) {
  if (cfg.model.empty()) throw InputError("--model is required");
}

// Degree-3 models get two extra steps by default.
int default_n_max(const GraphOracle& g, const RunConfig& cfg) {
  if (cfg.n_max >= 0) return cfg.n_max;
  return g.neighbors(g.root()).size() <= 3 ? 14 : 12;
}

EnumerationOptions enumeration(const GraphOracle& g, const RunConfig& cfg) {
  EnumerationOptions opt;
  opt.n_max = default_n_max(g, cfg);
  opt.threads = cfg.threads;
  opt.max_nodes = cfg.budget;
  return opt;
}

int report_partial(const CountTable& t) {
  if (!t.partial) return kOk;
  std::cerr << "budget exceeded: table for " << t.model << " stops at n = " << t.n_max() << " (requested "
            << t.requested_n_max << ", " << t.high_water << " nodes)\n";
  return kBudget;
}

int cmd_presets() {
  std::cout << "presentations:";
  for (const auto& n : presentation_preset_names()) std::cout << ' ' << n;
  std::cout << "\nperiodic graphs:";
  for (const auto& n : periodic_preset_names()) std::cout << ' ' << n;
  std::cout << "\nmodels:";
  for (const auto& n : model_names()) std::cout << ' ' << n;
  std::cout << "\nheights: default x identity ghf ghf:<gamma,...> level harmonic\n";
  return kOk;
}

int cmd_ghf(const RunConfig& cfg) {
  if (cfg.input.empty() == cfg.model.empty()) throw InputError("give exactly one of --input or --model");
  const Presentation p = cfg.input.empty() ? presentation_preset(cfg.model) : Presentation::parse(read_file(cfg.input));
  const auto c = coefficient_matrix(p);
  const auto r = rank_exact(c);
  const auto kernel = integer_kernel_basis(c);
  const auto spec = primitive_group_height(p);

  std::optional<WellDefinedReport> check;
  if (spec) {
    OraclePtr g;
    if (!cfg.model.empty() && presentation_for_model(cfg.model) == cfg.model) g = model(cfg.model);
    check = verify_well_defined(*spec, p, g ? cfg.radius : 0, g.get());
  }

  if (format_or(cfg, "csv") == "json") {
    nlohmann::ordered_json doc;
    doc["generators"] = p.generators();
    doc["relators"] = p.relators().size();
    doc["families"] = p.families().size();
    doc["rank"] = r;
    doc["betti"] = p.generators().size() - r;
    auto basis = nlohmann::ordered_json::array();
    for (const auto& v : kernel.vectors) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& x : v) row.push_back(to_string(x));
      basis.push_back(row);
    }
    doc["kernel_basis"] = basis;
    doc["exists"] = spec.has_value();
    if (spec) {
      doc["gamma"] = spec->gamma;
      doc["d"] = d_of_ghf(*spec);
      doc["well_defined"] = check->ok;
    }
    emit(cfg, doc.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "generators: " << p.generators().size() << " (";
    for (std::size_t i = 0; i < p.generators().size(); ++i) out << (i ? " " : "") << p.generators()[i];
    out << ")\nrelators: " << p.relators().size();
    if (!p.families().empty()) out << " + " << p.families().size() << " famil" << (p.families().size() == 1 ? "y" : "ies");
    out << "\nrank: " << r << "\nbetti: " << p.generators().size() - r << "\nkernel basis:";
    if (kernel.vectors.empty()) out << " (empty)";
    out << "\n";
    for (const auto& v : kernel.vectors) out << "  " << vector_text(v) << "\n";
    if (spec) {
      out << "gamma: " << vector_text(spec->gamma) << "\nd: " << d_of_ghf(*spec) << "\nwell-defined: "
          << (check->ok ? "yes" : "no") << " (" << check->vertices_checked << " model vertices checked)\n";
      out << "verdict: group height function exists\n";
    } else {
      out << "verdict: no group height function\n";
    }
    emit(cfg, out.str());
  }
  if (!spec) return kNegative;
  return check->ok ? kOk : kNegative;
}

int cmd_count(const RunConfig& cfg) {
  require_model(cfg);
  const auto g = model(cfg.model);
  const auto sigma = count_saws(*g, enumeration(*g, cfg));
  if (format_or(cfg, "csv") == "json") {
    emit(cfg, counts_json(&sigma, nullptr, nullptr, stamp(cfg)));
  } else {
    emit(cfg, counts_csv(&sigma, nullptr, nullptr));
  }
  return report_partial(sigma);
}

int cmd_bridges(const RunConfig& cfg) {
  require_model(cfg);
  const auto g = model(cfg.model);
  const auto h = named_height(*g, cfg.model, cfg.height);
  const auto b = count_bridges(*g, h, enumeration(*g, cfg));
  if (format_or(cfg, "csv") == "json") {
    emit(cfg, counts_json(nullptr, &b, nullptr, stamp(cfg)));
  } else {
    emit(cfg, counts_csv(nullptr, &b, nullptr));
  }
  const auto super = check_multiplicativity(b, Multiplicativity::Super);
  if (!super.ok()) std::cerr << "warning: " << super.violations.size() << " super-multiplicativity violations\n";
  return report_partial(b);
}

int cmd_bounds(const RunConfig& cfg) {
  require_model(cfg);
  if (cfg.precision < 1) throw InputError("precision must be at least 1");
  const auto g = model(cfg.model);
  const auto h = named_height(*g, cfg.model, cfg.height);
  const auto opt = enumeration(*g, cfg);
  const auto sigma = count_saws(*g, opt);
  const auto b = count_bridges(*g, h, opt);
  const auto bounds = mu_bounds(sigma, b, cfg.precision);
  if (format_or(cfg, "csv") == "json") {
    emit(cfg, counts_json(&sigma, &b, &bounds, stamp(cfg)));
  } else {
    emit(cfg, counts_csv(&sigma, &b, &bounds));
  }
  std::cerr << "best lower " << bounds.best_lower << " (n = " << bounds.best_lower_n << "), best upper "
            << bounds.best_upper << " (n = " << bounds.best_upper_n << "), gap " << bounds.gap << "\n";
  const int a = report_partial(sigma);
  return a != kOk ? a : report_partial(b);
}

int cmd_harmonic(const RunConfig& cfg) {
  std::string text;
  if (!cfg.input.empty()) {
    text = read_file(cfg.input);
  } else if (!cfg.model.empty()) {
    text = periodic_document(cfg.model);
  } else {
    throw InputError("give --pg/--input FILE or --model PRESET");
  }
  const auto pg = PeriodicGraph::parse(text);
  const auto basis = solution_space(pg);
  const auto rep = increase_repair(pg, basis);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::cerr << "basis " << i + 1 << ": lambda = " << vector_text(basis[i].lambda)
              << ", f = " << vector_text(basis[i].offsets) << "\n";
  }
  std::cerr << "repaired: lambda = " << vector_text(rep.combined.lambda) << ", f = "
            << vector_text(rep.combined.offsets) << ", scale " << to_string(rep.scale) << "\n";
  emit(cfg, export_height_json(pg, rep) + "\n");
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  require_model(cfg);
  const auto g = model(cfg.model);
  const auto h = named_height(*g, cfg.model, cfg.height);
  const auto axioms = verify_height_axioms(*g, h, cfg.radius);
  const auto harm = verify_harmonic(*g, h, cfg.radius);
  const auto d = compute_d(*g, h, cfg.radius);
  const auto r = compute_r(*g, h, g->orbit_representatives(), std::max(1, cfg.bound));

  std::ostringstream out;
  out << "model: " << g->name() << "\nheight: " << h.name << "\nradius: " << cfg.radius << "\naxioms: "
      << (axioms.ok() ? "pass" : "fail") << " (" << axioms.summary() << ")\n";
  if (harm.harmonic()) {
    out << "harmonic: yes (defect 0 on " << harm.vertices.size() << " vertices)\n";
  } else if (auto u = harm.uniform_defect()) {
    out << "harmonic: no (defect " << to_string(*u) << " at all " << harm.vertices.size() << " vertices)\n";
  } else {
    std::size_t bad = 0;
    for (const auto& q : harm.defects) bad += q != 0;
    out << "harmonic: no (non-zero defect at " << bad << " of " << harm.vertices.size() << " vertices)\n";
  }
  out << "d: " << d << "\nr: " << (r ? std::to_string(*r) : "> " + std::to_string(cfg.bound)) << "\n";
  emit(cfg, out.str());
  return axioms.ok() ? kOk : kNegative;
}

int cmd_ball_iso(const RunConfig& cfg) {
  if (cfg.a.empty() || cfg.b.empty()) throw InputError("--a and --b are required");
  const auto ga = model(cfg.a);
  const auto gb = model(cfg.b);
  const auto res = iso_radius(*ga, *gb, cfg.bound);
  std::ostringstream out;
  out << cfg.a << " vs " << cfg.b << ": " << res.describe() << "\nverdicts:";
  for (std::size_t k = 0; k < res.verdicts.size(); ++k) out << ' ' << k << ':' << (res.verdicts[k] ? "iso" : "differ");
  out << "\n";
  emit(cfg, out.str());
  return res.budget_hit ? kBudget : kOk;
}

std::vector<long> parse_m_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad m-list entry '" + item + "'");
    }
  }
  return out;
}

int cmd_locality(const RunConfig& cfg) {
  const std::string base = cfg.model.empty() ? "zd2" : cfg.model;
  EnumerationOptions opt;
  opt.threads = cfg.threads;
  opt.max_nodes = cfg.budget;
  const int n_max = cfg.n_max >= 0 ? cfg.n_max : 8;
  const auto rep = locality_scan(base, cfg.family, n_max, parse_m_list(cfg.m_list), opt);
  if (format_or(cfg, "json") == "json") {
    emit(cfg, scan_json(rep, stamp(cfg)));
  } else {
    emit(cfg, scan_csv(rep));
  }
  if (rep.precondition) {
    const auto& p = *rep.precondition;
    std::cerr << "rank precondition (" << p.presentation << "): rank " << p.rank << " < |S| - 1 = "
              << p.generators - 1 << ": " << (p.satisfied ? "satisfied" : "not satisfied") << "\n";
  }
  bool partial = rep.base_sigma.partial || rep.base_bridges.partial;
  for (const auto& r : rep.records) partial |= r.sigma.partial || r.bridges.partial || r.iso.budget_hit;
  if (partial) return kBudget;
  return rep.total_discrepancies() == 0 ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact self-avoiding walk and height function laboratory"};
  app.require_subcommand(0, 1);
  RunConfig cfg;
  bool preset_list = false;
  app.add_flag("--preset-list", preset_list, "List shipped presets and models");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "Node budget (SAWLAB_BUDGET overrides the default)");
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--output", cfg.output, "Write the artifact here (atomically)");
    sub->add_flag("--no-timestamp", cfg.no_timestamp, "Omit timestamps from JSON artifacts");
    sub->add_option("--seed", cfg.seed, "Reserved; all computations are exact");
  };

  auto* presets = app.add_subcommand("presets", "List shipped presets and models");
  auto* ghf = app.add_subcommand("ghf", "Coefficient matrix rank, kernel and group height function");
  ghf->add_option("--input", cfg.input, "Presentation document");
  ghf->add_option("--model", cfg.model, "Presentation preset");
  ghf->add_option("--radius", cfg.radius, "Model ball radius for the spelling check");
  common(ghf);

  std::vector<CLI::App*> tables;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"count", "SAW counts sigma_n"}, {"bridges", "Bridge counts b_n"}, {"bounds", "Connective constant bounds"}}) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--model", cfg.model, "Catalog model")->required();
    sub->add_option("--n-max", cfg.n_max, "Largest walk length")->check(CLI::NonNegativeNumber);
    if (name != "count") sub->add_option("--height", cfg.height, "Height function");
    if (name == "bounds") sub->add_option("--precision", cfg.precision, "Decimal digits")->check(CLI::PositiveNumber);
    common(sub);
    tables.push_back(sub);
  }

  auto* harmonic = app.add_subcommand("harmonic", "Harmonic height function of a periodic graph");
  harmonic->add_option("--pg,--input", cfg.input, "Periodic graph document");
  harmonic->add_option("--model", cfg.model, "Periodic graph preset");
  common(harmonic);

  auto* verify = app.add_subcommand("verify", "Check height axioms, harmonicity, d and r");
  verify->add_option("--model", cfg.model, "Catalog model")->required();
  verify->add_option("--height", cfg.height, "Height function");
  verify->add_option("--radius", cfg.radius, "Ball radius")->check(CLI::NonNegativeNumber);
  verify->add_option("--bound", cfg.bound, "Search bound for r");
  common(verify);

  auto* iso = app.add_subcommand("ball-iso", "Largest radius with isomorphic rooted balls");
  iso->add_option("--a", cfg.a, "First model")->required();
  iso->add_option("--b", cfg.b, "Second model")->required();
  iso->add_option("--bound", cfg.bound, "Largest radius tested")->check(CLI::NonNegativeNumber);
  common(iso);

  auto* locality = app.add_subcommand("locality", "Compare a model with a cylinder or ladder family");
  locality->add_option("--model", cfg.model, "Base model (default zd2)");
  locality->add_option("--family", cfg.family, "cylinder or ladder");
  locality->add_option("--n-max", cfg.n_max, "Largest walk length (default 8)")->check(CLI::NonNegativeNumber);
  locality->add_option("--m-list", cfg.m_list, "Comma-separated family parameters");
  common(locality);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (preset_list || presets->parsed()) return cmd_presets();
    if (ghf->parsed()) return cmd_ghf(cfg);
    if (tables[0]->parsed()) return cmd_count(cfg);
    if (tables[1]->parsed()) return cmd_bridges(cfg);
    if (tables[2]->parsed()) return cmd_bounds(cfg);
    if (harmonic->parsed()) return cmd_harmonic(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (iso->parsed()) return cmd_ball_iso(cfg);
    if (locality->parsed()) return cmd_locality(cfg);
    std::cout << app.help();
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (high water " << e.high_water() << ")\n";
    return kBudget;
  } catch (const NoSolution& e) {
    std::cerr << "no solution: " << e.what() << "\n";
    return kNegative;
  }
}
