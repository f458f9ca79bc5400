#pragma once

// Command layer behind the CLI. Each command returns its exit code and the
// exact text it would emit, so callers can compare runs byte for byte.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dirac/extensions.hpp"
#include "dirac/io.hpp"
#include "dirac/scattering.hpp"
#include "dirac/spectrum.hpp"
#include "dirac/topology.hpp"
#include "dirac/waveop.hpp"
#include "dirac/weyl_green.hpp"

namespace dirac {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  double mass = 1.0;
  struct {
    double arithmetic = kArithmeticTol;
    double klass = kClassTol;
    double loop_closure = kClosureTol;
  } tolerances;
  struct {
    int count = 500;
    std::uint64_t seed = 7;
  } sweep;
  struct {
    double L = 40.0;
    int N = 4096;
  } grid;
  struct {
    OutputFormat format = OutputFormat::Json;
    std::string path;
  } output;
  int threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
    if (sweep.count < 1) throw Error(ErrorKind::InvalidArgument, "sweep count must be >= 1");
    if (grid.N < 2 || !std::has_single_bit(static_cast<unsigned>(grid.N))) {
      throw Error(ErrorKind::InvalidArgument, "grid N must be a power of two");
    }
    if (!(grid.L > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid L must be positive");
  }
};

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw Error(ErrorKind::InvalidArgument, "unknown output format '" + s + "'");
}

// Overlays the keys present in a JSON config file onto `cfg`.
inline void apply_config_json(RunConfig& cfg, const Json& j) {
  try {
    if (j.contains("mass")) cfg.mass = j.at("mass").get<double>();
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (t.contains("arithmetic")) cfg.tolerances.arithmetic = t.at("arithmetic").get<double>();
      if (t.contains("class")) cfg.tolerances.klass = t.at("class").get<double>();
      if (t.contains("loop_closure")) cfg.tolerances.loop_closure = t.at("loop_closure").get<double>();
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      if (s.contains("count")) cfg.sweep.count = s.at("count").get<int>();
      if (s.contains("seed")) cfg.sweep.seed = s.at("seed").get<std::uint64_t>();
    }
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("L")) cfg.grid.L = g.at("L").get<double>();
      if (g.contains("N")) cfg.grid.N = g.at("N").get<int>();
    }
    if (j.contains("output")) {
      const auto& o = j.at("output");
      if (o.contains("format")) cfg.output.format = parse_format(o.at("format").get<std::string>());
      if (o.contains("path")) cfg.output.path = o.at("path").get<std::string>();
    }
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
  }
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  RunConfig cfg;
  apply_config_json(cfg, parse_json(ss.str()));
  return cfg;
}

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kParse = 2;
inline constexpr int kInvalid = 3;
inline constexpr int kVerification = 4;
inline constexpr int kDegeneracy = 5;
}  // namespace exit_code

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return exit_code::kParse;
    case ErrorKind::InvalidArgument:
    case ErrorKind::NotUnitary:
    case ErrorKind::OnSpectrum:
    case ErrorKind::AtThreshold:
    case ErrorKind::PoleAtMinusM:
    case ErrorKind::InGap:
    case ErrorKind::OriginEvaluation:
    case ErrorKind::DiagonalPoint:
    case ErrorKind::OriginOrThreshold: return exit_code::kInvalid;
    default: return exit_code::kDegeneracy;
  }
}

struct CommandResult {
  int exit_code = 0;
  std::string text;
};

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline CommandResult error_result(const Error& e) {
  Json j{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
  return {exit_code_for(e.kind()), dump(j)};
}

inline CommandResult require_json(const RunConfig& cfg, const char* command) {
  if (cfg.output.format == OutputFormat::Csv) {
    return error_result(Error(ErrorKind::InvalidArgument, std::string(command) + " has no CSV output"));
  }
  return {};
}

// ---------------------------------------------------------------------------

inline CommandResult cmd_admissible(const Mat2C& c, const Mat2C& d, const RunConfig& cfg) {
  if (auto r = require_json(cfg, "admissible"); !r.text.empty()) return r;
  const auto rep = admissibility(c, d);
  const bool ok = admissible_relative(c, d);
  Json j;
  j["admissible"] = ok;
  if (ok) {
    try {
      j["class"] = std::string(class_name(classify(BoundaryPair::make(c, d, cfg.mass), cfg.tolerances.klass)));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ClassificationAmbiguous) throw;
      j["class"] = "ClassificationAmbiguous";
    }
  } else {
    j["class"] = nullptr;
  }
  j["hermiticity_defect"] = rep.hermiticity_defect;
  j["det_ccdd"] = rep.det_ccdd;
  return {exit_code::kOk, dump(j)};
}

// Distinct closed-form locations against the singular-value scan.
inline bool oracle_agrees(const SpectralReport& rep, const std::vector<double>& scan, double tol = 1e-8) {
  if (scan.size() != rep.eigenvalues.size()) return false;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (std::abs(scan[i] - rep.eigenvalues[i].lambda) > tol) return false;
  }
  return true;
}

inline CommandResult cmd_eigs(const BoundaryPair& pair, bool verify, const RunConfig& cfg) {
  if (auto r = require_json(cfg, "eigs"); !r.text.empty()) return r;
  const SpectralReport rep = eigenvalues_closed_form(pair);
  Json eigs = Json::array();
  for (const auto& e : rep.eigenvalues) {
    eigs.push_back(Json{{"lambda", e.lambda}, {"multiplicity", e.multiplicity}, {"t", e.t_root}});
  }
  Json j{{"eigenvalues", eigs}, {"count", rep.total_count}, {"class", std::string(class_name(rep.pair_class))}};
  int code = exit_code::kOk;
  if (verify) {
    const bool agree = oracle_agrees(rep, eigenvalue_oracle_scan(pair));
    j["oracle_agreement"] = agree;
    if (!agree) code = exit_code::kVerification;
  }
  return {code, dump(j)};
}

inline CommandResult cmd_smatrix(const BoundaryPair& pair, int points, const RunConfig& cfg) {
  if (points < 2) throw Error(ErrorKind::InvalidArgument, "smatrix needs at least 2 points per branch");
  const BoundaryGamma g(pair);
  const double m = pair.mass();
  struct Row {
    Branch branch;
    double s;
    double lambda;
    Mat2C t0;
    Mat2C s_matrix;
    double defect;
  };
  std::vector<Row> rows;
  for (const Branch b : {Branch::Negative, Branch::Positive}) {
    const Mat2C n = N_matrix(b);
    for (int i = 0; i < points; ++i) {
      const ContinuumPoint p{b, static_cast<double>(i) / (points - 1)};
      const Mat2C t0 = g.t0(p);
      const Mat2C s = Mat2C::identity() + n.adjoint() * t0 * n;
      rows.push_back({b, p.s, p.lambda(m), t0, s, unitarity_defect(s)});
    }
  }

  if (cfg.output.format == OutputFormat::Json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"branch", std::string(branch_name(r.branch))},
                         {"s", r.s},
                         {"lambda", format_double(r.lambda)},
                         {"T0", matrix_to_json(r.t0)},
                         {"S", matrix_to_json(r.s_matrix)},
                         {"unitarity_defect", r.defect}});
    }
    return {exit_code::kOk, dump(Json{{"pair", pair_to_json(pair)}, {"rows", arr}})};
  }

  std::string out = "branch,s,lambda";
  for (const char* name : {"T0", "S"}) {
    for (const char* idx : {"11", "12", "21", "22"}) {
      out += std::string(",") + name + "_" + idx + "_re," + name + "_" + idx + "_im";
    }
  }
  out += ",unitarity_defect\n";
  for (const auto& r : rows) {
    out += std::string(branch_name(r.branch)) + "," + format_double(r.s) + "," + format_double(r.lambda);
    for (const Mat2C* mat : {&r.t0, &r.s_matrix}) {
      for (const Complex& z : {mat->a11, mat->a12, mat->a21, mat->a22}) {
        out += "," + format_double(z.real()) + "," + format_double(z.imag());
      }
    }
    out += "," + format_double(r.defect) + "\n";
  }
  return {exit_code::kOk, out};
}

inline Json levinson_json(const LevinsonReport& r) {
  return Json{{"winding", r.winding},
              {"eigen_count", r.eigen_count},
              {"holds", r.holds},
              {"closure_residual", r.closure_residual},
              {"samples", r.samples_used}};
}

inline CommandResult cmd_levinson(const BoundaryPair& pair, const RunConfig& cfg) {
  if (auto r = require_json(cfg, "levinson"); !r.text.empty()) return r;
  const LevinsonReport rep = levinson_verdict(pair);
  Json j = levinson_json(rep);
  j["pair"] = pair_to_json(pair);
  return {rep.holds ? exit_code::kOk : exit_code::kVerification, dump(j)};
}

struct SweepItem {
  std::size_t index = 0;
  enum class Status { Holds, Fails, Degenerate } status = Status::Holds;
  LevinsonReport report;
  std::string reason;
};

inline SweepItem sweep_one(std::uint64_t seed, std::size_t index, double mass) {
  SweepItem item;
  item.index = index;
  try {
    const BoundaryPair pair = random_admissible(seed, mass, index);
    item.report = levinson_verdict(pair);
    item.status = item.report.holds ? SweepItem::Status::Holds : SweepItem::Status::Fails;
    if (!item.report.holds) item.reason = "winding != -eigen_count";
  } catch (const Error& e) {
    const bool degenerate =
        e.kind() == ErrorKind::DegenerateLimit || e.kind() == ErrorKind::ClassificationAmbiguous;
    item.status = degenerate ? SweepItem::Status::Degenerate : SweepItem::Status::Fails;
    item.reason = std::string(to_string(e.kind()));
  }
  return item;
}

// Runs the sweep on a worker pool; items come back sorted by index.
inline std::vector<SweepItem> run_sweep(std::uint64_t seed, int count, double mass, int threads = 0) {
  std::vector<SweepItem> items(static_cast<std::size_t>(count));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) items[i] = sweep_one(seed, i, mass);
  };
  unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return items;
}

inline CommandResult cmd_sweep(const RunConfig& cfg) {
  cfg.validate();
  const auto items = run_sweep(cfg.sweep.seed, cfg.sweep.count, cfg.mass, cfg.threads);
  int holds = 0;
  Json skipped = Json::array();
  Json failures = Json::array();
  for (const auto& it : items) {
    switch (it.status) {
      case SweepItem::Status::Holds: ++holds; break;
      case SweepItem::Status::Degenerate: skipped.push_back(Json{{"index", it.index}, {"reason", it.reason}}); break;
      case SweepItem::Status::Fails:
        failures.push_back(Json{{"index", it.index},
                                {"reason", it.reason},
                                {"winding", it.report.winding},
                                {"eigen_count", it.report.eigen_count}});
        break;
    }
  }
  const int code = failures.empty() ? exit_code::kOk : exit_code::kVerification;

  if (cfg.output.format == OutputFormat::Csv) {
    std::string out = "index,status,winding,eigen_count,closure_residual\n";
    for (const auto& it : items) {
      const char* st = it.status == SweepItem::Status::Holds ? "holds"
                       : it.status == SweepItem::Status::Fails ? "fails" : "degenerate";
      out += std::to_string(it.index) + "," + st + "," + std::to_string(it.report.winding) + "," +
             std::to_string(it.report.eigen_count) + "," + format_double(it.report.closure_residual) + "\n";
    }
    return {code, out};
  }

  Json verdicts = Json::array();
  for (const auto& it : items) {
    if (it.status == SweepItem::Status::Degenerate) continue;
    verdicts.push_back(Json{{"index", it.index},
                            {"winding", it.report.winding},
                            {"eigen_count", it.report.eigen_count},
                            {"holds", it.status == SweepItem::Status::Holds}});
  }
  Json j{{"seed", cfg.sweep.seed},
         {"total", cfg.sweep.count},
         {"holds", holds},
         {"degenerate_skipped", skipped.size()},
         {"skipped", skipped},
         {"failures", failures},
         {"verdicts", verdicts}};
  return {code, dump(j)};
}

inline constexpr const char* kTraceCaveat =
    "exploratory: periodic discretization of a non-periodic symbol; slow convergence, no hard tolerance";

inline CommandResult cmd_waveop(const BoundaryPair& pair, const RunConfig& cfg, bool with_trace = false,
                                double trace_L = 60.0, int trace_N = 1024) {
  cfg.validate();
  const GridSpec grid = GridSpec::make(cfg.grid.L, cfg.grid.N);
  const GridFunction f = gaussian_probe(grid);
  const GridFunction wf = wave_operator_apply(pair, f, grid);
  const double nf = l2_norm(f, grid);
  const double defect = std::abs(l2_norm(wf, grid) - nf) / nf;

  if (cfg.output.format == OutputFormat::Csv) {
    std::string out = "x,f_density,wf_density\n";
    for (std::size_t j = 0; j < f.size(); ++j) {
      out += format_double(grid.x_nodes[j]) + "," + format_double(std::norm(f[j][0]) + std::norm(f[j][1])) + "," +
             format_double(std::norm(wf[j][0]) + std::norm(wf[j][1])) + "\n";
    }
    return {exit_code::kOk, out};
  }

  Json j{{"defect", defect}, {"L", cfg.grid.L}, {"N", cfg.grid.N}, {"pair", pair_to_json(pair)}};
  if (with_trace) {
    const GridSpec tg = GridSpec::make(trace_L, trace_N);
    j["exploratory"] = Json{{"bound_state_trace", bound_state_trace(pair, tg)},
                            {"eigen_count", eigenvalues_closed_form(pair).total_count},
                            {"L", trace_L},
                            {"N", trace_N},
                            {"caveat", kTraceCaveat}};
  }
  return {exit_code::kOk, dump(j)};
}

inline CommandResult cmd_green(const BoundaryPair& pair, double x, double y, Complex z, const RunConfig& cfg) {
  if (auto r = require_json(cfg, "green"); !r.text.empty()) return r;
  const Json j{{"x", x},
               {"y", y},
               {"z", complex_to_json(z)},
               {"G", matrix_to_json(green_perturbed(x, y, z, pair))},
               {"G0", matrix_to_json(green_free(x, y, z, pair.mass()))}};
  return {exit_code::kOk, dump(j)};
}

}  // namespace dirac
