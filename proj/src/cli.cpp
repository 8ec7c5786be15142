#include "racp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

#include "racp/augmentation.hpp"
#include "racp/generators.hpp"
#include "racp/gmres.hpp"
#include "racp/matrix_market.hpp"
#include "racp/partition.hpp"
#include "racp/spectral.hpp"
#include "racp/system.hpp"

namespace racp::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

index_t dense_cap_from_env() {
  if (const char* s = std::getenv("RACP_DENSE_CAP")) {
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<index_t>(v);
  }
  return 2000;
}

Face face_from_name(const std::string& s) {
  if (s == "xmin") return Face::xmin;
  if (s == "xmax") return Face::xmax;
  if (s == "ymin") return Face::ymin;
  if (s == "ymax") return Face::ymax;
  if (s == "zmin") return Face::zmin;
  if (s == "zmax") return Face::zmax;
  throw CLI::ValidationError("--dirichlet", "unknown face '" + s + "'");
}

const char* face_name(Face f) {
  switch (f) {
    case Face::xmin:
      return "xmin";
    case Face::xmax:
      return "xmax";
    case Face::ymin:
      return "ymin";
    case Face::ymax:
      return "ymax";
    case Face::zmin:
      return "zmin";
    default:
      return "zmax";
  }
}

Axis axis_from_name(const std::string& s) {
  if (s == "x") return Axis::x;
  if (s == "y") return Axis::y;
  if (s == "z") return Axis::z;
  throw CLI::ValidationError("--fracture-axis", "unknown axis '" + s + "'");
}

struct InputOpts {
  std::string a_path;
  std::string b_path;
  std::string gen;
  index_t nx = 2, ny = 2, nz = 2;
  double young = 1.0;
  double poisson = 0.25;
  double distortion = 0.0;
  std::string fracture_axis = "x";
  index_t fracture_index = 1;
  std::vector<std::string> dirichlet;
  index_t size_u = 60;
  index_t size_t_ = 12;
  std::uint64_t seed = 1;
};

void add_input_flags(CLI::App* cmd, InputOpts& in) {
  auto* a = cmd->add_option("--a", in.a_path, "Matrix Market file for the leading block A");
  auto* b = cmd->add_option("--b", in.b_path, "Matrix Market file for the coupling block B");
  auto* g = cmd->add_option("--gen", in.gen, "Built-in generator")
                ->check(CLI::IsMember({"fracture-cube", "floating-side", "random"}));
  a->needs(b);
  b->needs(a);
  g->excludes(a);
  a->excludes(g);
  cmd->add_option("--nx", in.nx, "Elements along x");
  cmd->add_option("--ny", in.ny, "Elements along y");
  cmd->add_option("--nz", in.nz, "Elements along z");
  cmd->add_option("--e", in.young, "Young modulus");
  cmd->add_option("--nu", in.poisson, "Poisson ratio");
  cmd->add_option("--distortion", in.distortion, "Mesh distortion factor in [0,1)");
  cmd->add_option("--fracture-axis", in.fracture_axis, "Fracture plane axis (x|y|z)");
  cmd->add_option("--fracture-index", in.fracture_index,
                  "Fracture plane grid index (negative disables)");
  cmd->add_option("--dirichlet", in.dirichlet, "Dirichlet faces (xmin,...,zmax)")->delimiter(',');
  cmd->add_option("--size-u", in.size_u, "Random generator: displacement count");
  cmd->add_option("--size-t", in.size_t_, "Random generator: multiplier count");
  cmd->add_option("--seed", in.seed, "Random generator seed");
}

GridParams grid_from(const InputOpts& in) {
  GridParams p;
  p.nx = in.nx;
  p.ny = in.ny;
  p.nz = in.nz;
  p.young_modulus = in.young;
  p.poisson_ratio = in.poisson;
  p.distortion = in.distortion;
  p.fracture_axis = axis_from_name(in.fracture_axis);
  p.fracture_index = in.fracture_index;
  if (!in.dirichlet.empty()) {
    p.dirichlet_faces.clear();
    for (const auto& s : in.dirichlet) p.dirichlet_faces.insert(face_from_name(s));
  }
  return p;
}

json source_json(const InputOpts& in) {
  if (!in.a_path.empty()) return json{{"a", in.a_path}, {"b", in.b_path}};
  json j{{"kind", in.gen}};
  if (in.gen == "random") {
    j["n_u"] = in.size_u;
    j["n_t"] = in.size_t_;
    j["seed"] = in.seed;
  } else {
    GridParams p = grid_from(in);
    j["nx"] = p.nx;
    j["ny"] = p.ny;
    j["nz"] = p.nz;
    j["young_modulus"] = p.young_modulus;
    j["poisson_ratio"] = p.poisson_ratio;
    j["distortion"] = p.distortion;
    j["fracture_axis"] = in.fracture_axis;
    j["fracture_index"] = p.fracture_index;
    json faces = json::array();
    for (Face f : p.dirichlet_faces) faces.push_back(face_name(f));
    j["dirichlet"] = faces;
    j["multiplier_weights"] = "tributary-area";
  }
  return j;
}

SaddleSystem build_system(const InputOpts& in) {
  if (!in.a_path.empty()) {
    SparseMatrix a = read_matrix_market(in.a_path);
    SparseMatrix b = read_matrix_market(in.b_path);
    return make_saddle_system(std::move(a), std::move(b), {}, in.a_path);
  }
  if (in.gen == "fracture-cube") return generate_fracture_cube(grid_from(in));
  if (in.gen == "floating-side") return generate_floating_side(grid_from(in));
  if (in.gen == "random") return random_spd_saddle(in.size_u, in.size_t_, in.seed);
  throw CLI::ValidationError("--gen", "one of --a/--b or --gen is required");
}

json system_json(const SaddleSystem& sys) {
  return json{{"label", sys.label},
              {"n_u", sys.n_u()},
              {"n_t", sys.n_t()},
              {"nnz_a", sys.a.nnz()},
              {"nnz_b", sys.b.nnz()}};
}

struct PrecondOpts {
  std::string kind = "racp-m";
  std::string recipe = "norm";
  double omega = 1.0;
  std::string inner = "exact";
};

void add_precond_flags(CLI::App* cmd, PrecondOpts& po, bool allow_ideal) {
  std::vector<std::string> kinds = {"racp-m", "racp-ma", "mcp"};
  if (allow_ideal) {
    kinds.push_back("ideal-m");
    kinds.push_back("ideal-ma");
  }
  cmd->add_option("--precond", po.kind, "Preconditioner")->check(CLI::IsMember(kinds));
  cmd->add_option("--c-recipe", po.recipe, "Augmentation recipe")
      ->check(CLI::IsMember({"local", "norm", "global"}));
  cmd->add_option("--omega", po.omega, "Scale for the norm-ratio recipe");
  cmd->add_option("--inner", po.inner, "Inner solver")
      ->check(CLI::IsMember({"exact", "jacobi", "ic0"}));
}

InnerKind inner_from(const std::string& s) {
  if (s == "exact") return InnerKind::exact_factor;
  if (s == "jacobi") return InnerKind::jacobi;
  return InnerKind::ic0;
}

AugmentationDiag recipe_from(const SaddleSystem& sys, const std::string& recipe, double omega) {
  if (recipe == "local") return compute_c_local_solve(sys);
  if (recipe == "norm") return compute_c_norm_ratio(sys, omega);
  return compute_c_global(sys);
}

const char* recipe_full_name(const std::string& recipe) {
  if (recipe == "local") return "local_solve";
  if (recipe == "norm") return "norm_ratio";
  return "global_gamma";
}

// Owns whichever concrete preconditioner the flags ask for; the op handle
// references it, so the holder is heap-pinned.
struct PrecondHolder {
  std::unique_ptr<RacpPreconditioner> racp;
  std::unique_ptr<McpPreconditioner> mcp;
  std::unique_ptr<DenseSaddleInverse> ideal;
  std::optional<AugmentationDiag> c;
  PrecondOp op;
  json desc;
};

PrecondHolder build_precond(const SaddleSystem& sys, const PrecondOpts& po) {
  PrecondHolder h;
  h.desc = json{{"kind", po.kind}};
  if (po.kind == "mcp") {
    h.mcp = std::make_unique<McpPreconditioner>(build_mcp(sys, inner_from(po.inner)));
    h.op = h.mcp->op();
    h.desc["inner"] = po.inner;
    h.desc["flops_per_apply"] = h.mcp->flops_per_apply;
  } else if (po.kind == "ideal-m" || po.kind == "ideal-ma") {
    RacpVariant v = po.kind == "ideal-m" ? RacpVariant::m : RacpVariant::ma;
    h.ideal = std::make_unique<DenseSaddleInverse>(sys, ideal_augmentation(sys), v);
    h.op = h.ideal->op();
  } else {
    RacpVariant v = po.kind == "racp-m" ? RacpVariant::m : RacpVariant::ma;
    h.c = recipe_from(sys, po.recipe, po.omega);
    h.racp = std::make_unique<RacpPreconditioner>(
        build_racp(sys, *h.c, inner_from(po.inner), v));
    h.op = h.racp->op();
    h.desc["c_recipe"] = recipe_full_name(po.recipe);
    if (po.recipe == "norm") h.desc["omega"] = po.omega;
    h.desc["inner"] = po.inner;
    h.desc["inner_shift_applied"] = h.racp->inner.shift_applied;
    h.desc["flops_per_apply"] = h.racp->flops_per_apply;
  }
  return h;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
}

json run_one_solve(const SaddleSystem& sys, const PrecondOpts& po, const GmresConfig& cfg,
                   const std::string& history_path) {
  json rec;
  auto t0 = std::chrono::steady_clock::now();
  try {
    PrecondHolder h = build_precond(sys, po);
    auto [x, hist] = solve_saddle(sys, h.op, cfg);
    (void)x;
    rec["preconditioner"] = h.desc;
    rec["preconditioner"]["c_app"] = hist.c_app;
    rec["result"] = json{{"completed", true},
                         {"converged", hist.converged},
                         {"iterations", hist.iterations},
                         {"final_relative_residual", hist.final_relative_residual},
                         {"solve_cost", hist.solve_cost},
                         {"lucky_breakdown", hist.lucky_breakdown},
                         {"failure_reason", nullptr}};
    if (!history_path.empty()) {
      write_history_csv(hist, history_path);
      rec["history_csv"] = history_path;
    }
  } catch (const SingularBlockError& e) {
    rec["preconditioner"] = json{{"kind", po.kind}, {"inner", po.inner}};
    rec["result"] = json{{"completed", true},
                         {"converged", false},
                         {"iterations", 0},
                         {"final_relative_residual", nullptr},
                         {"solve_cost", nullptr},
                         {"lucky_breakdown", false},
                         {"failure_reason", std::string(e.what())}};
  }
  auto t1 = std::chrono::steady_clock::now();
  rec["result"]["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
  return rec;
}

int cmd_generate(const InputOpts& in, const std::string& out_dir, bool verify) {
  SaddleSystem sys = build_system(in);
  std::filesystem::create_directories(out_dir);
  const std::string a_path = out_dir + "/A.mtx";
  const std::string b_path = out_dir + "/B.mtx";
  write_matrix_market(sys.a, a_path, /*symmetric=*/true);
  write_matrix_market(sys.b, b_path, /*symmetric=*/false);

  json meta{{"schema_version", kSchemaVersion},
            {"command", "generate"},
            {"generator", source_json(in)},
            {"system", system_json(sys)},
            {"files", json{{"a", "A.mtx"}, {"b", "B.mtx"}}}};
  if (verify) {
    SystemReport r = verify_system(sys);
    meta["verification"] = json{{"symmetry_defect", r.symmetry_defect},
                                {"lambda_min_a", r.lambda_min_a},
                                {"sigma_min_b", r.sigma_min_b},
                                {"sigma_max_b", r.sigma_max_b},
                                {"nullity_a", r.nullity_a},
                                {"rank_saddle", r.rank_saddle},
                                {"a_symmetric", r.a_symmetric},
                                {"b_full_rank", r.b_full_rank},
                                {"saddle_nonsingular", r.saddle_nonsingular}};
  }
  write_json(meta, out_dir + "/meta.json");
  return 0;
}

int cmd_solve(const InputOpts& in, const PrecondOpts& po, const GmresConfig& cfg,
              const std::string& out_path, const std::string& history_path) {
  SaddleSystem sys = build_system(in);
  json rec = run_one_solve(sys, po, cfg, history_path);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "solve"},
           {"source", source_json(in)},
           {"system", system_json(sys)},
           {"gmres", json{{"restart", cfg.restart}, {"tol", cfg.rel_tol}, {"maxit", cfg.max_iters}}}};
  doc.update(rec);
  if (!out_path.empty()) write_json(doc, out_path);
  std::cout << doc["result"].dump() << "\n";
  return 0;
}

int cmd_spectrum(const InputOpts& in, const PrecondOpts& po, const std::string& out_path,
                 const std::string& eigs_csv) {
  SaddleSystem sys = build_system(in);
  const index_t cap = dense_cap_from_env();

  json spec_j{{"variant", po.kind}};
  std::vector<std::complex<double>> eigs;
  if (po.kind == "ideal-m" || po.kind == "ideal-ma") {
    RacpVariant v = po.kind == "ideal-m" ? RacpVariant::m : RacpVariant::ma;
    eigs = ideal_spectrum(sys, v, cap);
    ClusterCounts cc = cluster_two_point(eigs, v == RacpVariant::m ? 0.5 : -0.5);
    spec_j["clusters"] = json{{"at_one", cc.at_one},
                              {"at_other", cc.at_other},
                              {"outliers", cc.outliers},
                              {"max_deviation", cc.max_deviation}};
  } else {
    PrecondHolder h = build_precond(sys, po);
    eigs = preconditioned_spectrum(sys, h.op, cap);
    if (po.kind != "mcp") {
      BoundQuantities q = bound_quantities(sys, *h.c, h.racp->inner);
      SpectralVariant sv =
          po.kind == "racp-m" ? SpectralVariant::racp_m : SpectralVariant::racp_ma;
      SpectralReport rep = check_bounds(eigs, q, sv);
      spec_j["bounds"] = json{{"alpha_u", q.alpha_u}, {"beta_u", q.beta_u},
                              {"alpha_t", q.alpha_t}, {"beta_t", q.beta_t},
                              {"alpha_a", q.alpha_a}, {"beta_a", q.beta_a}};
      spec_j["containment"] = json{{"all_contained", rep.all_contained},
                                   {"n_complex", rep.n_complex},
                                   {"complex_forbidden", rep.complex_forbidden},
                                   {"complex_found_when_forbidden", rep.complex_found_when_forbidden},
                                   {"lower_branch_skipped", rep.lower_branch_skipped},
                                   {"degenerate_leading_block", rep.degenerate_leading_block},
                                   {"max_imag", rep.max_imag},
                                   {"spectral_radius", rep.spectral_radius},
                                   {"real_lower", rep.real_lower},
                                   {"real_upper", rep.real_upper}};
    }
  }
  json ev = json::array();
  for (const auto& z : eigs) ev.push_back(json::array({z.real(), z.imag()}));
  spec_j["eigenvalues"] = ev;

  json doc{{"schema_version", kSchemaVersion},
           {"command", "spectrum"},
           {"source", source_json(in)},
           {"system", system_json(sys)},
           {"spectrum", spec_j}};
  if (!out_path.empty()) write_json(doc, out_path);
  if (!eigs_csv.empty()) {
    std::ofstream out(eigs_csv);
    if (!out) throw IoError("cannot write " + eigs_csv);
    out << "re,im\n" << std::setprecision(17);
    for (const auto& z : eigs) out << z.real() << "," << z.imag() << "\n";
  }
  if (spec_j.contains("containment"))
    std::cout << spec_j["containment"].dump() << "\n";
  else if (spec_j.contains("clusters"))
    std::cout << spec_j["clusters"].dump() << "\n";
  else
    std::cout << json{{"eigenvalues", eigs.size()}}.dump() << "\n";
  return 0;
}

int cmd_partition(const InputOpts& in, index_t procs, bool refine, bool chunked,
                  const std::string& out_path, const std::string& csv_path) {
  SaddleSystem sys = build_system(in);
  RowPartition rp = partition_rows(sys.a, procs, refine);
  MultiplierAssignment ma =
      assign_multipliers(sys.b, rp, chunked ? SweepMode::chunked : SweepMode::sequential);
  CommVolume cv = comm_volume(sys.b, rp, ma);

  std::vector<index_t> block_sizes(static_cast<std::size_t>(procs), 0);
  for (index_t o : rp.owner_of_row) ++block_sizes[static_cast<std::size_t>(o)];

  json doc{{"schema_version", kSchemaVersion},
           {"command", "partition"},
           {"source", source_json(in)},
           {"system", system_json(sys)},
           {"partition", json{{"n_procs", rp.n_procs},
                              {"strategy", rp.strategy},
                              {"contiguous", rp.contiguous},
                              {"block_sizes", block_sizes},
                              {"edge_cut", edge_cut(sys.a, rp)}}},
           {"assignment", json{{"mode", chunked ? "chunked" : "sequential"},
                               {"normative", ma.normative},
                               {"counts", ma.counts},
                               {"owner_of_multiplier", ma.owner_of_multiplier}}},
           {"comm", json{{"rows_exchanged", cv.rows_exchanged},
                         {"balance_ratio", cv.balance_ratio}}}};
  if (!out_path.empty()) write_json(doc, out_path);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write " + csv_path);
    out << "multiplier,owner\n";
    for (std::size_t l = 0; l < ma.owner_of_multiplier.size(); ++l)
      out << l << "," << ma.owner_of_multiplier[l] << "\n";
  }
  std::cout << doc["comm"].dump() << "\n";
  return 0;
}

int cmd_compare(const InputOpts& in, const PrecondOpts& base, const GmresConfig& cfg,
                const std::vector<std::string>& specs, bool omega_sweep, bool m_vs_ma,
                const std::string& out_path) {
  SaddleSystem sys = build_system(in);

  struct RunSpec {
    std::string text;
    PrecondOpts po;
  };
  std::vector<RunSpec> runs;
  for (const std::string& s : specs) {
    PrecondOpts po = base;
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
      if (ch == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
    if (!parts[0].empty()) po.kind = parts[0];
    if (parts.size() > 1 && !parts[1].empty()) po.recipe = parts[1];
    if (parts.size() > 2 && !parts[2].empty()) po.omega = std::stod(parts[2]);
    if (parts.size() > 3 && !parts[3].empty()) po.inner = parts[3];
    if (po.kind != "racp-m" && po.kind != "racp-ma" && po.kind != "mcp")
      throw CLI::ValidationError("--specs", "unknown preconditioner: " + po.kind);
    if (po.recipe != "local" && po.recipe != "norm" && po.recipe != "global")
      throw CLI::ValidationError("--specs", "unknown recipe: " + po.recipe);
    if (po.inner != "exact" && po.inner != "jacobi" && po.inner != "ic0")
      throw CLI::ValidationError("--specs", "unknown inner solver: " + po.inner);
    runs.push_back({s, po});
  }
  if (omega_sweep) {
    for (double w : {0.01, 0.1, 1.0, 10.0, 100.0}) {
      PrecondOpts po = base;
      po.recipe = "norm";
      po.omega = w;
      runs.push_back({po.kind + ":norm:" + std::to_string(w) + ":" + po.inner, po});
    }
  }
  if (m_vs_ma) {
    for (const char* k : {"racp-m", "racp-ma"}) {
      PrecondOpts po = base;
      po.kind = k;
      runs.push_back({std::string(k) + ":" + po.recipe + ":" + std::to_string(po.omega) + ":" +
                          po.inner,
                      po});
    }
  }
  if (runs.empty())
    throw CLI::ValidationError("--specs", "nothing to compare: give --specs, --omega-sweep or --m-vs-ma");

  json out_runs = json::array();
  for (const RunSpec& r : runs) {
    json rec;
    try {
      rec = run_one_solve(sys, r.po, cfg, "");
    } catch (const std::exception& e) {
      rec["result"] = json{{"completed", false},
                           {"converged", false},
                           {"failure_reason", std::string(e.what())}};
    }
    rec["spec"] = r.text;
    out_runs.push_back(rec);
  }

  json doc{{"schema_version", kSchemaVersion},
           {"command", "compare"},
           {"source", source_json(in)},
           {"system", system_json(sys)},
           {"gmres", json{{"restart", cfg.restart}, {"tol", cfg.rel_tol}, {"maxit", cfg.max_iters}}},
           {"runs", out_runs}};
  if (!out_path.empty()) write_json(doc, out_path);
  for (const auto& r : doc["runs"])
    std::cout << r["spec"].get<std::string>() << " -> " << r["result"].dump() << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Sparse saddle-point solver toolkit"};
  app.set_config("--config");
  app.require_subcommand(1);

  InputOpts in;
  PrecondOpts po;
  GmresConfig cfg;
  std::string out_path, history_path, eigs_csv, csv_path, out_dir;
  bool verify = false, refine = false, chunked = false, omega_sweep = false, m_vs_ma = false;
  index_t procs = 2;
  std::vector<std::string> specs;

  auto* gen = app.add_subcommand("generate", "Generate a system and write A.mtx/B.mtx/meta.json");
  add_input_flags(gen, in);
  gen->add_option("--out", out_dir, "Output directory")->required();
  gen->add_flag("--verify", verify, "Include dense diagnostics in meta.json");

  auto* solve = app.add_subcommand("solve", "Run preconditioned GMRES on a system");
  add_input_flags(solve, in);
  add_precond_flags(solve, po, /*allow_ideal=*/false);
  solve->add_option("--restart", cfg.restart, "GMRES restart length");
  solve->add_option("--tol", cfg.rel_tol, "Relative residual tolerance");
  solve->add_option("--maxit", cfg.max_iters, "Total iteration cap");
  solve->add_option("--out", out_path, "Result JSON path");
  solve->add_option("--history", history_path, "Residual history CSV path");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of the preconditioned operator");
  add_input_flags(spectrum, in);
  add_precond_flags(spectrum, po, /*allow_ideal=*/true);
  spectrum->add_option("--out", out_path, "Spectrum JSON path");
  spectrum->add_option("--eigs-csv", eigs_csv, "Eigenvalue CSV path");

  auto* partition = app.add_subcommand("partition", "Row partition and multiplier assignment");
  add_input_flags(partition, in);
  partition->add_option("--procs", procs, "Process count")->required();
  partition->add_flag("--refine", refine, "Greedy edge-cut refinement of block boundaries");
  partition->add_flag("--chunked", chunked, "Concurrent-sweep emulation (non-normative)");
  partition->add_option("--out", out_path, "Partition JSON path");
  partition->add_option("--csv", csv_path, "Assignment CSV path");

  auto* compare = app.add_subcommand("compare", "Solve with several preconditioner specs");
  add_input_flags(compare, in);
  add_precond_flags(compare, po, /*allow_ideal=*/false);
  compare->add_option("--restart", cfg.restart, "GMRES restart length");
  compare->add_option("--tol", cfg.rel_tol, "Relative residual tolerance");
  compare->add_option("--maxit", cfg.max_iters, "Total iteration cap");
  compare->add_option("--specs", specs, "Spec list variant:recipe:omega:inner")->delimiter(',');
  compare->add_flag("--omega-sweep", omega_sweep, "Sweep omega over {0.01,0.1,1,10,100}");
  compare->add_flag("--m-vs-ma", m_vs_ma, "Run both constraint preconditioner variants");
  compare->add_option("--out", out_path, "Comparison JSON path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) return cmd_generate(in, out_dir, verify);
    if (solve->parsed()) return cmd_solve(in, po, cfg, out_path, history_path);
    if (spectrum->parsed()) return cmd_spectrum(in, po, out_path, eigs_csv);
    if (partition->parsed()) return cmd_partition(in, procs, refine, chunked, out_path, csv_path);
    if (compare->parsed())
      return cmd_compare(in, po, cfg, specs, omega_sweep, m_vs_ma, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace racp::cli
