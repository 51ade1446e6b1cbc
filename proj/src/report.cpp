#include "sawlab/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "sawlab/errors.hpp"

namespace sawlab {

namespace {

using nlohmann::ordered_json;

std::string cell(const CountTable* t, int n) {
  if (!t || n > t->n_max()) return "";
  return to_string(t->counts[n]);
}

const BoundsRow* bounds_row(const BoundsReport* b, int n) {
  if (!b || n < 1 || n > static_cast<int>(b->rows.size())) return nullptr;
  return &b->rows[n - 1];
}

int rows_of(const CountTable* sigma, const CountTable* bridges) {
  int n = -1;
  if (sigma) n = std::max(n, sigma->n_max());
  if (bridges) n = std::max(n, bridges->n_max());
  return n;
}

ordered_json table_meta(const CountTable& t) {
  ordered_json j;
  j["n_max"] = t.n_max();
  j["partial"] = t.partial;
  if (t.partial) j["requested_n_max"] = t.requested_n_max;
  return j;
}

ordered_json bounds_json(const BoundsReport& b) {
  ordered_json j;
  j["precision"] = b.precision;
  j["best_lower"] = b.best_lower;
  j["best_lower_n"] = b.best_lower_n;
  j["best_upper"] = b.best_upper;
  j["best_upper_n"] = b.best_upper_n;
  j["gap"] = b.gap;
  return j;
}

}  // namespace

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot rename onto " + path + ": " + ec.message());
  }
}

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string counts_csv(const CountTable* sigma, const CountTable* bridges, const BoundsReport* bounds) {
  std::ostringstream out;
  out << "n,sigma_n,b_n,lower_root,upper_root\n";
  for (int n = 0; n <= rows_of(sigma, bridges); ++n) {
    const auto* row = bounds_row(bounds, n);
    out << n << ',' << cell(sigma, n) << ',' << cell(bridges, n) << ',' << (row ? row->lower : "") << ','
        << (row ? row->upper : "") << '\n';
  }
  return out.str();
}

std::string counts_json(const CountTable* sigma, const CountTable* bridges, const BoundsReport* bounds,
                        const std::optional<std::string>& timestamp) {
  ordered_json doc;
  doc["model"] = sigma ? sigma->model : bridges ? bridges->model : "";
  if (bridges) doc["height"] = bridges->height;
  if (sigma) doc["sigma"] = table_meta(*sigma);
  if (bridges) doc["bridges"] = table_meta(*bridges);
  auto rows = ordered_json::array();
  for (int n = 0; n <= rows_of(sigma, bridges); ++n) {
    ordered_json r;
    r["n"] = n;
    r["sigma_n"] = cell(sigma, n);
    r["b_n"] = cell(bridges, n);
    const auto* row = bounds_row(bounds, n);
    r["lower_root"] = row ? row->lower : "";
    r["upper_root"] = row ? row->upper : "";
    rows.push_back(r);
  }
  doc["rows"] = rows;
  if (bounds) doc["bounds"] = bounds_json(*bounds);
  if (timestamp) doc["timestamp"] = *timestamp;
  return doc.dump(2) + "\n";
}

std::string scan_json(const ScanReport& r, const std::optional<std::string>& timestamp) {
  ordered_json doc;
  doc["base_model"] = r.base_model;
  doc["family"] = r.family;
  doc["n_max"] = r.n_max;
  if (r.precondition) {
    const auto& p = *r.precondition;
    doc["rank_precondition"] = {{"presentation", p.presentation},
                                {"rank", p.rank},
                                {"generators", p.generators},
                                {"satisfied", p.satisfied}};
  }
  doc["base"] = {{"table_digest", table_digest(r.base_sigma, r.base_bridges)},
                 {"d", r.base_d},
                 {"r", r.base_r ? ordered_json(*r.base_r) : ordered_json(nullptr)},
                 {"lower_bound", r.base_bounds.best_lower},
                 {"upper_bound", r.base_bounds.best_upper}};
  auto records = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json j;
    j["m"] = rec.m;
    j["model"] = rec.model;
    j["K"] = rec.iso.K;
    j["K_is_lower_bound"] = rec.iso.reached_bound || rec.iso.budget_hit;
    j["table_digest"] = rec.table_digest;
    j["agree_up_to"] = rec.agree_up_to;
    j["discrepancies"] = rec.discrepancies;
    j["lower_bound"] = rec.bounds.best_lower;
    j["upper_bound"] = rec.bounds.best_upper;
    j["gap"] = rec.bounds.gap;
    j["d"] = rec.d;
    j["r"] = rec.r ? ordered_json(*rec.r) : ordered_json(nullptr);
    records.push_back(j);
  }
  doc["records"] = records;
  doc["total_discrepancies"] = r.total_discrepancies();
  if (timestamp) doc["timestamp"] = *timestamp;
  return doc.dump(2) + "\n";
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "m,model,K,table_digest,agree_up_to,discrepancies,lower_bound,upper_bound\n";
  for (const auto& rec : r.records) {
    out << rec.m << ',' << rec.model << ',' << rec.iso.K << (rec.iso.reached_bound ? "+" : "") << ','
        << rec.table_digest << ',' << rec.agree_up_to << ',' << rec.discrepancies.size() << ','
        << rec.bounds.best_lower << ',' << rec.bounds.best_upper << '\n';
  }
  return out.str();
}

}  // namespace sawlab
