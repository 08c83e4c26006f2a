#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "cremona/parser.hpp"
#include "cremona/report.hpp"

namespace cremona {

enum class Verb { kAnalyze, kClassify, kReduce, kStabilize, kAdjoint, kGenus };

enum class ReportFormat { kText, kJson };

struct Command {
  Verb verb = Verb::kClassify;
  std::string input;  // the polynomial text, already read from its source
  std::uint64_t seed = 1;
  int grid_bound = 6;
  ReportFormat format = ReportFormat::kText;
  bool timings = false;
};

struct CommandResult {
  Json report;
  int exit_code = 0;
  std::string rendered() const;
  ReportFormat format = ReportFormat::kText;
};

inline std::string CommandResult::rendered() const {
  return format == ReportFormat::kJson ? render_json_line(report) : render_text(report);
}

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kOther = 1;
inline constexpr int kParse = 2;
inline constexpr int kUnsupported = 3;
inline constexpr int kBudget = 4;
inline constexpr int kUndetermined = 5;
}  // namespace exit_code

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::kParse: return exit_code::kParse;
    case ErrorKind::kUnsupportedFieldExtension: return exit_code::kUnsupported;
    case ErrorKind::kResourceLimit: return exit_code::kBudget;
    case ErrorKind::kUndetermined: return exit_code::kUndetermined;
    case ErrorKind::kInvalidInput: return exit_code::kOther;
  }
  return exit_code::kOther;
}

inline std::string verb_name(Verb v) {
  switch (v) {
    case Verb::kAnalyze: return "analyze";
    case Verb::kClassify: return "classify";
    case Verb::kReduce: return "reduce";
    case Verb::kStabilize: return "stabilize";
    case Verb::kAdjoint: return "adjoint";
    case Verb::kGenus: return "genus";
  }
  return "?";
}

/// Plane-curve verbs read forms in x0..x2, surface verbs in x0..x3.
inline int ring_size(Verb v) { return v == Verb::kAdjoint || v == Verb::kGenus ? 3 : 4; }

namespace detail {

inline Json error_json(const std::string& input, const std::string& kind, const std::string& message) {
  Json j;
  j["input"] = input;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  return j;
}

inline std::string error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidInput: return "INVALID_INPUT";
    case ErrorKind::kParse: return "PARSE";
    case ErrorKind::kUnsupportedFieldExtension: return "UNSUPPORTED_FIELD_EXTENSION";
    case ErrorKind::kResourceLimit: return "RESOURCE_LIMIT";
    case ErrorKind::kUndetermined: return "UNDETERMINED";
  }
  return "?";
}

inline int certificate_exit(const CremonaCertificate& c) {
  if (c.failure) return exit_code_for(*c.failure);
  return c.sigma ? exit_code::kOk : exit_code::kUndetermined;
}

inline CommandResult run_surface(const Command& cmd, const MultiPoly& f) {
  CommandResult r;
  PipelineOptions opt;
  opt.seed = cmd.seed;
  switch (cmd.verb) {
    case Verb::kAnalyze: {
      if (f.total_degree() > 4) throw InvalidInput("degree at most 4 supported");
      SurfaceAnalysis a = analyze_surface(f, cmd.seed);
      r.report = analysis_json(a, cmd.seed);
      return r;
    }
    case Verb::kClassify: {
      CremonaCertificate c = minimal_cremona_degree(f, opt);
      r.report = certificate_json(c, cmd.seed);
      r.exit_code = certificate_exit(c);
      return r;
    }
    case Verb::kReduce: {
      CremonaCertificate c = minimal_cremona_degree(f, opt);
      r.report = certificate_json(c, cmd.seed);
      if (auto t = c.terminal_form()) {
        r.report["final_degree"] = t->total_degree();
        r.report["final_form"] = t->to_string();
      } else {
        r.report["final_degree"] = c.chain.empty() ? f.total_degree() : c.chain.back().image_dd.degree;
      }
      r.exit_code = certificate_exit(c);
      return r;
    }
    case Verb::kStabilize: {
      CremonaCertificate c = minimal_cremona_degree(f, opt);
      r.report = certificate_json(c, cmd.seed);
      r.report["stabilizer"] = stabilizer_json(stabilizer_certificate(c, cmd.seed));
      r.exit_code = certificate_exit(c);
      return r;
    }
    default:
      break;
  }
  throw InvalidInput("not a surface command");
}

inline CommandResult run_curve(const Command& cmd, const MultiPoly& f) {
  CommandResult r;
  Cluster cluster = resolve_cluster(f);
  Json& j = r.report;
  j["input"] = f.to_string();
  j["seed"] = cmd.seed;
  j["degree"] = cluster.degree;
  j["cluster"] = cluster_json(cluster);
  Json caveats = Json::array();
  if (!cluster.proximity_violations.empty())
    caveats.push_back("proximity inequality violated at " +
                      std::to_string(cluster.proximity_violations.size()) + " cluster point(s)");
  if (cmd.verb == Verb::kGenus) {
    DeltaGenus dg = delta_genus(cluster);
    j["delta"] = dg.delta;
    j["genus"] = dg.genus;
  } else {
    if (cmd.grid_bound < 1) throw InvalidInput("grid bound must be at least 1");
    GridVerdict v = coolidge_grid_test(cluster, cmd.grid_bound);
    j["grid_bound"] = cmd.grid_bound;
    j["verdict"] = v.to_string();
    if (!v.passes) {
      j["failing_pair"] = {v.n, v.m};
      j["failing_dim"] = adjoint_dim(cluster, v.n, v.m);
    }
    if (!cluster.points.empty())
      caveats.push_back("virtual multiplicities max(0, n*m_p - m) are clamped at 0");
  }
  j["caveats"] = caveats;
  return r;
}

}  // namespace detail

/// Parses the input of `cmd`, runs the verb and builds the report. Errors
/// become an error report with the matching exit status.
inline CommandResult run(const Command& cmd) {
  CommandResult r;
  const auto start = std::chrono::steady_clock::now();
  try {
    MultiPoly f = parse_form(cmd.input, ring_size(cmd.verb));
    r = ring_size(cmd.verb) == 3 ? detail::run_curve(cmd, f) : detail::run_surface(cmd, f);
  } catch (const Error& e) {
    r.report = detail::error_json(cmd.input, detail::error_kind_name(e.kind()), e.what());
    r.exit_code = exit_code_for(e.kind());
  } catch (const std::exception& e) {
    r.report = detail::error_json(cmd.input, "INTERNAL", e.what());
    r.exit_code = exit_code::kOther;
  }
  r.format = cmd.format;
  if (cmd.timings) {
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.report["timings"]["total_ms"] = ms;
  }
  return r;
}

}  // namespace cremona
