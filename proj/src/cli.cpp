#include "aeq/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "aeq/bounds.hpp"
#include "aeq/constructions.hpp"
#include "aeq/geometry.hpp"
#include "aeq/io.hpp"
#include "aeq/kernels.hpp"
#include "aeq/search.hpp"
#include "aeq/spectral.hpp"
#include "aeq/tdgraph.hpp"

namespace aeq::cli {

namespace {

enum class Outcome { pass, fail, infeasible, error };

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::infeasible: return "infeasible";
    case Outcome::error: return "error";
  }
  return "error";
}

int exit_code(Outcome o) { return o == Outcome::pass ? 0 : o == Outcome::error ? 2 : 1; }

struct Report {
  std::string command;
  Json inputs = Json::object();
  Outcome outcome = Outcome::pass;
  Json payload = Json::object();
  std::string diagnostic;
  // Rows emitted instead of the JSON report under --format csv.
  std::optional<std::string> csv;

  Json to_json() const {
    return Json{{"command", command},
                {"inputs", inputs},
                {"outcome", cli::to_string(outcome)},
                {"payload", payload},
                {"diagnostic", diagnostic}};
  }
};

struct Globals {
  std::optional<double> dist_tol;
  std::optional<double> eig_tol;
  bool exact = false;
  std::string format = "json";
  int threads = 0;
};

Json nullable(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json certificate_json(const SpectralCertificate& c) {
  return Json{{"n", c.n},
              {"dim", c.dim},
              {"trace_u", c.trace_u},
              {"trace_u3", c.trace_u3},
              {"count_eq_one", c.count_eq_one},
              {"count_gt_one", c.count_gt_one},
              {"lambda_max", c.lambda_max},
              {"lambda_min", c.lambda_min},
              {"lemma1_holds", c.lemma1_holds},
              {"exact_counts", c.exact_counts},
              {"corollary_applies", c.corollary_applies},
              {"corollary_holds", c.corollary_holds},
              {"eigenvalues", c.spectrum.values}};
}

Json bound_json(const BoundReport& b) {
  return Json{{"theorem", b.theorem},     {"dim", b.dim},
              {"params", Json(b.params)}, {"bound", nullable(b.bound)},
              {"n_observed", nullable(b.n_observed)}, {"satisfied", b.satisfied},
              {"detail", Json(b.detail)}, {"notes", b.notes}};
}

Json pipeline_json(const PipelineReport& p) {
  Json stages = Json::array();
  for (const auto& s : p.stages) {
    stages.push_back(Json{{"name", s.name},
                          {"passed", s.passed},
                          {"values", Json(s.values)},
                          {"bound", nullable(s.bound)},
                          {"message", s.message}});
  }
  return Json{{"stages", std::move(stages)}, {"completed", p.completed}, {"report", bound_json(p.report)}};
}

Json search_json(const SearchResult& r) {
  return Json{{"best_points", aeq::to_json(r.best_points)},
              {"best_penalty", r.best_penalty},
              {"feasible", r.feasible},
              {"iterations_used", r.iterations_used},
              {"best_restart", r.best_restart},
              {"restarts_run", r.restarts_run},
              {"certificate", r.certificate ? certificate_json(*r.certificate) : Json(nullptr)}};
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back(Json::array({u, v}));
  return Json{{"n", g.size()}, {"edges", std::move(edges)}};
}

class InputSource {
 public:
  InputSource(const std::string& path, std::istream& stdin_stream) {
    if (path == "-") {
      stream_ = &stdin_stream;
    } else {
      file_.open(path);
      if (!file_) throw InputError("cannot open '" + path + "'");
      stream_ = &file_;
    }
  }
  std::istream& get() { return *stream_; }

 private:
  std::ifstream file_;
  std::istream* stream_ = nullptr;
};

class Context {
 public:
  Context(const Globals& g, std::istream& in) : globals_(g), in_(in) {}

  AnyPointSet load_points(const std::string& path) {
    InputSource src(path, in_);
    return read_point_set(src.get(), InputFormat::automatic, globals_.exact);
  }

  std::vector<std::vector<double>> load_matrix(const std::string& path) {
    InputSource src(path, in_);
    return read_matrix(src.get());
  }

  std::vector<Graph> load_graphs(const std::string& path) {
    InputSource src(path, in_);
    return read_graphs(src.get());
  }

  Tolerance tolerance(bool exact_mode) const {
    Tolerance tol = exact_mode ? Tolerance::exact() : Tolerance::floating();
    if (globals_.dist_tol) tol.dist_tol = *globals_.dist_tol;
    if (globals_.eig_tol) tol.eig_tol = *globals_.eig_tol;
    tol.validate(exact_mode);
    return tol;
  }

  const Globals& globals() const { return globals_; }

 private:
  const Globals& globals_;
  std::istream& in_;
};

bool is_exact(const AnyPointSet& s) { return std::holds_alternative<ExactPointSet>(s); }

Json witness_json(const EquidistanceCheck& check, const AnyPointSet& s) {
  if (!check.witness) return nullptr;
  const auto& w = *check.witness;
  Json sq = Json::array();
  std::visit(
      [&](const auto& p) {
        using T = typename std::decay_t<decltype(p)>::Scalar;
        for (auto [a, b] : {std::pair{w[0], w[1]}, std::pair{w[0], w[2]}, std::pair{w[1], w[2]}}) {
          const T d2 = squared_distance<T>(p[a], p[b]);
          if constexpr (is_exact_v<T>) sq.push_back(aeq::to_string(d2));
          else sq.push_back(d2);
        }
      },
      s);
  return Json{{"triple", Json::array({w[0], w[1], w[2]})}, {"squared_distances", std::move(sq)}};
}

Report cmd_verify(Context& ctx, const std::string& input) {
  Report r;
  const auto pts = ctx.load_points(input);
  const bool exact = is_exact(pts);
  const auto tol = ctx.tolerance(exact);
  const auto check = std::visit([&](const auto& s) { return is_almost_equidistant(s, tol); }, pts);
  const std::size_t n = std::visit([](const auto& s) { return s.size(); }, pts);
  const std::size_t dim = std::visit([](const auto& s) { return s.dim(); }, pts);
  r.payload = Json{{"n", n},
                   {"dim", dim},
                   {"mode", exact ? "exact" : "float"},
                   {"almost_equidistant", check.holds},
                   {"witness", witness_json(check, pts)}};
  r.outcome = check.holds ? Outcome::pass : Outcome::fail;
  if (!check.holds) r.diagnostic = "some triple has no pair at unit distance";
  return r;
}

Report cmd_certify(Context& ctx, const std::string& input) {
  Report r;
  const auto pts = ctx.load_points(input);
  const bool exact = is_exact(pts);
  const auto tol = ctx.tolerance(exact);
  const auto check = std::visit([&](const auto& s) { return is_almost_equidistant(s, tol); }, pts);
  if (!check) {
    r.outcome = Outcome::fail;
    r.diagnostic = "not almost-equidistant; the spectral certificate needs the triple condition";
    r.payload = Json{{"almost_equidistant", false}, {"witness", witness_json(check, pts)}};
    return r;
  }
  const auto cert = std::visit([&](const auto& s) { return certify(s, tol); }, pts);
  const auto traces = std::visit(
      [&](const auto& s) { return trace_identities(build_u(s), s, tol); }, pts);
  r.payload = certificate_json(cert);
  r.payload["trace_identities_hold"] = traces.holds;
  try {
    const auto l2 = lemma_two_check(cert.spectrum);
    r.payload["lemma_two"] = Json{{"k", l2.k},
                                  {"case1", Json{{"hypothesis", l2.case1.hypothesis}, {"conclusion", l2.case1.conclusion}}},
                                  {"case2", Json{{"hypothesis", l2.case2.hypothesis}, {"conclusion", l2.case2.conclusion}}},
                                  {"case3", Json{{"hypothesis", l2.case3.hypothesis},
                                                 {"conclusion", l2.case3.conclusion},
                                                 {"lhs", l2.case3_lhs},
                                                 {"rhs", l2.case3_rhs}}}};
  } catch (const PreconditionError& e) {
    r.payload["lemma_two"] = nullptr;
  }
  const bool ok = cert.lemma1_holds && cert.corollary_holds && traces.holds;
  r.outcome = ok ? Outcome::pass : Outcome::fail;
  if (!ok) r.diagnostic = "certificate violates the eigenvalue or trace pattern";
  return r;
}

void require_floating(const Globals& g, const std::string& command) {
  if (g.exact) throw InputError(command + " produces irrational coordinates; --exact is not supported here");
}

Report cmd_construct(Context& ctx, const std::string& kind_name, std::size_t dim, std::size_t k, bool lift) {
  require_floating(ctx.globals(), "construct");
  Report r;
  const auto kind = parse_construction_kind(kind_name);
  const auto built = construct(kind, dim, k, lift);
  const auto summary = summarize(built.points);
  r.payload = Json{{"kind", aeq::to_string(kind)},
                   {"dim", built.points.dim()},
                   {"n", built.points.size()},
                   {"lifted", lift},
                   {"radius", summary.mer_radius},
                   {"diameter", summary.diameter},
                   {"warnings", built.warnings},
                   {"point_set", aeq::to_json(built.points)}};
  if (ctx.globals().format == "csv") {
    std::ostringstream os;
    write_csv(os, built.points);
    r.csv = os.str();
  }
  return r;
}

Report cmd_bounds(Context& ctx, const std::string& theorem, std::optional<std::size_t> dim,
                  std::optional<double> radius, std::optional<double> c0, const std::string& input) {
  Report r;
  std::optional<AnyPointSet> pts;
  if (!input.empty()) {
    pts = ctx.load_points(input);
    const std::size_t actual = std::visit([](const auto& s) { return s.dim(); }, *pts);
    if (dim && *dim != actual) throw InputError("--dim does not match the input dimension");
    dim = actual;
  }
  if (!dim) throw InputError("--dim is required without --input");
  if (*dim == 0) throw InputError("--dim must be positive");

  if (theorem == "general") {
    if (!pts) {
      BoundReport b;
      b.theorem = "general";
      b.dim = *dim;
      b.notes.push_back("O(d^(4/3)) is asymptotic; pass --input to run the auditable chain on a configuration");
      r.payload = bound_json(b);
      return r;
    }
    const auto tol = ctx.tolerance(is_exact(*pts));
    const auto rep = std::visit([&](const auto& s) { return general_bound_pipeline(s, tol); }, *pts);
    r.payload = bound_json(rep.report);
    r.payload["pipeline"] = pipeline_json(rep);
    r.outcome = rep.completed && rep.report.satisfied ? Outcome::pass : Outcome::fail;
    if (r.outcome == Outcome::fail) r.diagnostic = "pipeline halted or the bound was exceeded";
    return r;
  }

  BoundReport b;
  if (pts) {
    const auto tol = ctx.tolerance(false);
    const PointSet s = std::visit([](const auto& p) { return to_floating(p); }, *pts);
    if (theorem == "sphere") b = check_sphere(s, radius, tol);
    else if (theorem == "diameter") b = check_diameter(s, tol);
    else if (theorem == "ball") b = check_ball(s, c0, tol);
    else throw InputError("unknown theorem '" + theorem + "'");
  } else {
    const auto tol = ctx.tolerance(false);
    if (theorem == "sphere") {
      if (!radius) throw InputError("--radius is required for the sphere bound");
      b = sphere_bound(*dim, *radius, tol.dist_tol);
    } else if (theorem == "diameter") {
      b = diameter_bound(*dim);
    } else if (theorem == "ball") {
      if (!c0) throw InputError("--c0 is required for the ball bound");
      b = ball_bound(*dim, *c0);
    } else {
      throw InputError("unknown theorem '" + theorem + "'");
    }
  }
  r.payload = bound_json(b);
  r.outcome = b.satisfied ? Outcome::pass : Outcome::fail;
  if (!b.satisfied) r.diagnostic = "configuration exceeds the bound or violates its hypotheses";
  return r;
}

struct SearchArgs {
  std::size_t dim = 2;
  std::size_t n = 3;
  bool diameter_le_1 = false;
  std::optional<double> sphere_radius;
  std::size_t restarts = 16;
  std::uint64_t seed = 1;
  std::size_t max_iters = 3000;
  double penalty_tol = 1e-18;
  double softmin = 0.0;
  bool probe = false;
};

std::string probe_csv(const ProbeTable& t) {
  std::ostringstream os;
  os << "n,feasible,best_penalty\n";
  char buf[32];
  for (const auto& row : t.rows) {
    std::snprintf(buf, sizeof buf, "%.17g", row.best_penalty);
    os << row.n << ',' << (row.feasible ? "true" : "false") << ',' << buf << '\n';
  }
  return os.str();
}

Report cmd_search(Context& ctx, const SearchArgs& a) {
  require_floating(ctx.globals(), "search");
  Report r;
  SearchConfig cfg;
  cfg.dim = a.dim;
  cfg.target_n = a.n;
  cfg.restarts = a.restarts;
  cfg.seed = a.seed;
  cfg.max_iters = a.max_iters;
  cfg.penalty_tol = a.penalty_tol;
  cfg.softmin_temperature = a.softmin;
  cfg.diameter_le_1 = a.diameter_le_1;
  cfg.sphere_radius = a.sphere_radius;
  cfg.validate();

  if (a.probe) {
    const auto table = conjecture1_probe(a.dim, cfg);
    Json rows = Json::array();
    for (const auto& row : table.rows) {
      rows.push_back(Json{{"n", row.n}, {"feasible", row.feasible}, {"best_penalty", row.best_penalty}});
    }
    Json found = Json::array();
    for (const auto& res : table.feasible_results) found.push_back(search_json(res));
    r.payload = Json{{"dim", table.dim},
                     {"rows", std::move(rows)},
                     {"largest_feasible", table.largest_feasible},
                     {"conjectured_bound", table.conjectured_bound},
                     {"theorem_bound", 2 * table.dim + 4},
                     {"feasible_results", std::move(found)}};
    if (ctx.globals().format == "csv") r.csv = probe_csv(table);
    r.outcome = table.largest_feasible <= 2 * table.dim + 4 ? Outcome::pass : Outcome::fail;
    return r;
  }

  const auto res = optimize(cfg);
  r.payload = search_json(res);
  if (ctx.globals().format == "csv") {
    std::ostringstream os;
    write_csv(os, res.best_points);
    r.csv = os.str();
  }
  r.outcome = res.feasible ? Outcome::pass : Outcome::infeasible;
  if (!res.feasible) r.diagnostic = "no almost-equidistant configuration found within the budget";
  return r;
}

Report cmd_tdrank(Context& ctx, std::size_t n, const std::string& graphs_path, bool exact,
                  const std::string& table_path) {
  Report r;
  const auto all = ctx.load_graphs(graphs_path);
  std::vector<Graph> stream;
  std::vector<std::size_t> file_index;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].size() == n) {
      stream.push_back(all[i]);
      file_index.push_back(i);
    }
  }
  if (stream.empty()) throw InputError("no graph on " + std::to_string(n) + " vertices in the input");
  const auto tol = ctx.tolerance(false);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (auto tri = is_triangle_free(stream[i]); !tri) {
      const auto& w = *tri.witness;
      throw InputError("graph #" + std::to_string(file_index[i]) + " in the file is not triangle-free: triangle (" +
                       std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " + std::to_string(w[2]) + ")");
    }
  }
  const auto scan = min_rank_scan(n, stream, tol, exact || ctx.globals().exact);

  std::ostringstream csv;
  csv << "index,lambda2,multiplicity,rank,lambda2_positive\n";
  Json table = Json::array();
  char buf[32];
  for (std::size_t i = 0; i < scan.records.size(); ++i) {
    const auto& rec = scan.records[i];
    std::snprintf(buf, sizeof buf, "%.17g", rec.lambda2);
    csv << file_index[i] << ',' << buf << ',' << rec.multiplicity << ',' << rec.rank << ','
        << (rec.lambda2_positive ? "true" : "false") << '\n';
    table.push_back(Json{{"index", file_index[i]},
                         {"lambda2", rec.lambda2},
                         {"multiplicity", rec.multiplicity},
                         {"numeric_multiplicity", rec.numeric_multiplicity},
                         {"exact_multiplicity", nullable(rec.exact_multiplicity)},
                         {"rank", rec.rank},
                         {"lambda2_positive", rec.lambda2_positive}});
  }
  Json argmin = Json::array();
  for (std::size_t k = 0; k < scan.argmin.size(); ++k) {
    argmin.push_back(Json{{"index", file_index[scan.argmin_indices[k]]}, {"graph", graph_json(scan.argmin[k].graph)}});
  }
  r.payload = Json{{"n", n},
                   {"graphs_scanned", scan.records.size()},
                   {"skipped", scan.skipped},
                   {"exact", exact || ctx.globals().exact},
                   {"min_rank", nullable(scan.min_rank)},
                   {"argmin", std::move(argmin)},
                   {"table", std::move(table)}};
  if (!table_path.empty()) {
    std::ofstream f(table_path);
    if (!f) throw InputError("cannot write '" + table_path + "'");
    f << csv.str();
  }
  if (ctx.globals().format == "csv") r.csv = csv.str();
  return r;
}

Report cmd_pipeline(Context& ctx, const std::string& input, bool diameter) {
  Report r;
  const auto pts = ctx.load_points(input);
  const auto tol = ctx.tolerance(is_exact(pts));
  const auto rep = std::visit([&](const auto& s) { return general_bound_pipeline(s, tol, diameter); }, pts);
  r.payload = pipeline_json(rep);
  r.outcome = rep.completed && rep.report.satisfied ? Outcome::pass : Outcome::fail;
  if (!rep.completed) {
    const auto& last = rep.stages.back();
    r.diagnostic = "stage " + last.name + " failed: " + last.message;
  } else if (!rep.report.satisfied) {
    r.diagnostic = "the configuration exceeds the computed bound";
  }
  return r;
}

Eigen::MatrixXd to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Report cmd_weyl(Context& ctx, const std::string& a_path, const std::string& b_path) {
  Report r;
  const auto a = to_matrix(ctx.load_matrix(a_path));
  const auto b = to_matrix(ctx.load_matrix(b_path));
  if (a.rows() != b.rows()) throw InputError("matrices must have the same size");
  const auto w = weyl_check(a, b, ctx.tolerance(false).eig_tol);
  r.payload = Json{{"alpha", w.alpha}, {"beta", w.beta}, {"gamma", w.gamma}, {"holds", w.holds}};
  r.outcome = w.holds ? Outcome::pass : Outcome::fail;
  if (!w.holds) r.diagnostic = "largest eigenvalue of the sum exceeds alpha + beta";
  return r;
}

Report cmd_perron(Context& ctx, const std::string& path) {
  Report r;
  const auto m = to_matrix(ctx.load_matrix(path));
  const auto p = perron_frobenius_check(m, ctx.tolerance(false).eig_tol);
  r.payload = Json{{"rho", p.rho}, {"attained", p.attained}};
  r.outcome = p.attained ? Outcome::pass : Outcome::fail;
  if (!p.attained) r.diagnostic = "spectral radius is not attained by a real eigenvalue";
  return r;
}

Report cmd_gershgorin(Context& ctx, const std::string& path) {
  Report r;
  const auto m = to_matrix(ctx.load_matrix(path));
  const double bound = gershgorin_bound(m);
  const double radius = m.eigenvalues().cwiseAbs().maxCoeff();
  const bool holds = radius <= bound + ctx.tolerance(false).eig_tol;
  r.payload = Json{{"bound", bound}, {"spectral_radius", radius}, {"holds", holds}};
  r.outcome = holds ? Outcome::pass : Outcome::fail;
  return r;
}

int emit(const Report& r, const Globals& g, std::ostream& out, std::ostream& err, const std::string& out_path) {
  const std::string json = dump_json(r.to_json()) + "\n";
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      err << "aeq: cannot write '" << out_path << "'\n";
      return 2;
    }
    f << json;
  }
  if (g.format == "csv" && r.csv) out << *r.csv;
  else out << json;
  if (!r.diagnostic.empty()) err << "aeq " << r.command << ": " << r.diagnostic << '\n';
  return exit_code(r.outcome);
}

int emit_error(const std::string& command, const Json& inputs, Outcome outcome, const std::string& message,
               std::ostream& out, std::ostream& err) {
  Report r;
  r.command = command.empty() ? "aeq" : command;
  r.inputs = inputs;
  r.outcome = outcome;
  r.diagnostic = message.empty() ? "unspecified failure" : message;
  out << dump_json(r.to_json()) << '\n';
  err << "aeq " << r.command << ": " << r.diagnostic << '\n';
  return outcome == Outcome::error ? 2 : 1;
}

int resolve_threads(int flag) {
  if (const char* env = std::getenv("AEQ_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0) throw InputError("AEQ_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  if (flag > 0) return flag;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Almost-equidistant point sets: verification, spectral certificates, bounds and search", "aeq"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol", g.dist_tol, "tolerance on squared distances (default 1e-9; 0 in exact mode)");
  app.add_option("--eig-tol", g.eig_tol, "eigenvalue tolerance (default 1e-8; 0 in exact mode)");
  app.add_flag("--exact", g.exact, "rational arithmetic");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "OpenMP threads (default: logical cores; AEQ_THREADS overrides)")
      ->check(CLI::PositiveNumber);

  Json inputs = Json::object();
  std::function<Report(Context&)> action;
  std::string command, out_path;

  std::string input;
  auto* verify = app.add_subcommand("verify", "check the almost-equidistant condition");
  verify->add_option("--input", input, "point set (JSON or CSV, '-' for stdin)")->required();
  verify->callback([&] {
    inputs["input"] = input;
    action = [&](Context& c) { return cmd_verify(c, input); };
  });

  auto* certify_cmd = app.add_subcommand("certify", "spectral certificate of U");
  certify_cmd->add_option("--input", input, "point set (JSON or CSV, '-' for stdin)")->required();
  certify_cmd->callback([&] {
    inputs["input"] = input;
    action = [&](Context& c) { return cmd_certify(c, input); };
  });

  std::string kind;
  std::size_t dim = 0, k = 0;
  bool lift = false;
  auto* construct_cmd = app.add_subcommand("construct", "build an extremal configuration");
  construct_cmd->add_option("--kind", kind, "simplex, two-simplices or rosenfeld")->required();
  construct_cmd->add_option("--dim", dim, "ambient dimension")->required()->check(CLI::PositiveNumber);
  construct_cmd->add_option("--k", k, "simplex vertex count (default dim + 1)");
  construct_cmd->add_flag("--lift", lift, "lift onto the radius 1/sqrt(2) sphere in one dimension more");
  construct_cmd->add_option("--out", out_path, "also write the report here");
  construct_cmd->callback([&] {
    inputs = Json{{"kind", kind}, {"dim", dim}, {"k", k}, {"lift", lift}};
    action = [&](Context& c) { return cmd_construct(c, kind, dim, k, lift); };
  });

  std::string theorem;
  std::optional<std::size_t> bdim;
  std::optional<double> radius, c0;
  auto* bounds_cmd = app.add_subcommand("bounds", "cardinality bounds, optionally checked on a configuration");
  bounds_cmd->add_option("--theorem", theorem, "sphere, diameter, ball or general")
      ->required()
      ->check(CLI::IsMember({"sphere", "diameter", "ball", "general"}));
  bounds_cmd->add_option("--dim", bdim, "ambient dimension");
  bounds_cmd->add_option("--radius", radius, "sphere radius");
  bounds_cmd->add_option("--c0", c0, "ball radius parameter: radius^2 = 1/2 + c0 / (d+1)^(2/3)");
  bounds_cmd->add_option("--input", input, "configuration to check");
  bounds_cmd->callback([&] {
    inputs = Json{{"theorem", theorem},
                  {"dim", nullable(bdim)},
                  {"radius", radius ? Json(*radius) : Json(nullptr)},
                  {"c0", c0 ? Json(*c0) : Json(nullptr)},
                  {"input", input}};
    action = [&](Context& c) { return cmd_bounds(c, theorem, bdim, radius, c0, input); };
  });

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search", "multistart penalty search for almost-equidistant sets");
  search_cmd->add_option("--dim", sa.dim, "ambient dimension")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--n", sa.n, "target number of points (ignored with --probe)");
  search_cmd->add_flag("--diameter-le-1", sa.diameter_le_1, "penalize squared distances above 1");
  search_cmd->add_option("--sphere-radius", sa.sphere_radius, "keep points on the origin-centred sphere");
  search_cmd->add_option("--restarts", sa.restarts, "number of restarts")->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", sa.seed, "PRNG seed");
  search_cmd->add_option("--max-iters", sa.max_iters, "descent iterations per restart");
  search_cmd->add_option("--penalty-tol", sa.penalty_tol, "feasibility threshold on the penalty");
  search_cmd->add_option("--softmin", sa.softmin, "softmin temperature (0 = exact minimum)");
  search_cmd->add_flag("--probe", sa.probe, "tabulate n = d+1 .. floor(3(d+1)/2)+2 under diameter <= 1");
  search_cmd->add_option("--out", out_path, "also write the report here");
  search_cmd->callback([&] {
    inputs = Json{{"dim", sa.dim},
                  {"n", sa.n},
                  {"diameter_le_1", sa.diameter_le_1},
                  {"sphere_radius", sa.sphere_radius ? Json(*sa.sphere_radius) : Json(nullptr)},
                  {"restarts", sa.restarts},
                  {"seed", sa.seed},
                  {"max_iters", sa.max_iters},
                  {"penalty_tol", sa.penalty_tol},
                  {"softmin", sa.softmin},
                  {"probe", sa.probe}};
    action = [&](Context& c) { return cmd_search(c, sa); };
  });

  std::size_t tn = 0;
  std::string graphs, table;
  bool exact_rank = false;
  auto* tdrank_cmd = app.add_subcommand("tdrank", "minimum rank of A - lambda2 I over triangle-free graphs");
  tdrank_cmd->add_option("--n", tn, "vertex count; other graphs in the file are ignored")->required();
  tdrank_cmd->add_option("--graphs", graphs, "graph file, one 'n m u1 v1 ...' line per graph")->required();
  tdrank_cmd->add_flag("--exact", exact_rank, "multiplicities from the factored characteristic polynomial");
  tdrank_cmd->add_option("--table", table, "write the per-graph CSV table here");
  tdrank_cmd->callback([&] {
    inputs = Json{{"n", tn}, {"graphs", graphs}, {"exact", exact_rank}, {"table", table}};
    action = [&](Context& c) { return cmd_tdrank(c, tn, graphs, exact_rank, table); };
  });

  bool diameter = false;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "chained bound audit on a configuration");
  pipeline_cmd->add_option("--input", input, "point set (JSON or CSV, '-' for stdin)")->required();
  pipeline_cmd->add_flag("--diameter", diameter, "halt when the diameter exceeds 1");
  pipeline_cmd->callback([&] {
    inputs = Json{{"input", input}, {"diameter", diameter}};
    action = [&](Context& c) { return cmd_pipeline(c, input, diameter); };
  });

  std::string ma, mb;
  auto* weyl_cmd = app.add_subcommand("weyl", "check lambda_max(A + B) <= lambda_max(A) + lambda_max(B)");
  weyl_cmd->add_option("--a", ma, "symmetric matrix A")->required();
  weyl_cmd->add_option("--b", mb, "symmetric matrix B")->required();
  weyl_cmd->callback([&] {
    inputs = Json{{"a", ma}, {"b", mb}};
    action = [&](Context& c) { return cmd_weyl(c, ma, mb); };
  });

  auto* perron_cmd = app.add_subcommand("perron", "spectral radius of a nonnegative matrix is an eigenvalue");
  perron_cmd->add_option("--matrix", ma, "nonnegative matrix")->required();
  perron_cmd->callback([&] {
    inputs = Json{{"matrix", ma}};
    action = [&](Context& c) { return cmd_perron(c, ma); };
  });

  auto* gersh_cmd = app.add_subcommand("gershgorin", "Gershgorin bound on the spectral radius");
  gersh_cmd->add_option("--matrix", ma, "square matrix")->required();
  gersh_cmd->callback([&] {
    inputs = Json{{"matrix", ma}};
    action = [&](Context& c) { return cmd_gershgorin(c, ma); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    return emit_error(subs.empty() ? "" : subs.front()->get_name(), inputs, Outcome::error, e.what(), out, err);
  }

  command = app.get_subcommands().front()->get_name();
  inputs["tol"] = g.dist_tol ? Json(*g.dist_tol) : Json(nullptr);
  inputs["eig_tol"] = g.eig_tol ? Json(*g.eig_tol) : Json(nullptr);
  inputs["exact"] = g.exact;
  inputs["format"] = g.format;
  try {
    kernels::set_thread_count(resolve_threads(g.threads));
    inputs["threads"] = kernels::thread_count();
    Context ctx(g, in);
    Report r = action(ctx);
    r.command = command;
    r.inputs = inputs;
    return emit(r, g, out, err, out_path);
  } catch (const InputError& e) {
    return emit_error(command, inputs, Outcome::error, e.what(), out, err);
  } catch (const Json::exception& e) {
    return emit_error(command, inputs, Outcome::error, std::string("malformed JSON: ") + e.what(), out, err);
  } catch (const PreconditionError& e) {
    return emit_error(command, inputs, Outcome::fail, e.what(), out, err);
  } catch (const std::exception& e) {
    return emit_error(command, inputs, Outcome::fail, e.what(), out, err);
  }
}

}  // namespace aeq::cli
