#include "bprt_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bprt/certification.hpp"
#include "bprt/corpus.hpp"
#include "bprt/expansion.hpp"
#include "bprt/io.hpp"
#include "bprt/sweep.hpp"

namespace bprt::cli {

namespace {

struct InputOptions {
  std::string basis_path;
  std::string family_path;
  std::string spec_path;
  std::string kind;
  std::string base;
  Index dim = 0;
  Index count = 0;
  double decay = 1.0;
  double scale = 0.0;
  std::vector<double> shifts;
  std::uint64_t seed = 0;
};

struct CommonOptions {
  std::string out_path;
  /// Empty selects the command's default.
  std::string format;
  double tol_inv = kDefaultInvTol;
  double tol_rank = kDefaultRankTol;
  double plateau_tol = kDefaultPlateauTol;
  bool quiet = false;
};

struct LoadedFamilies {
  BasisFamily basis;
  DualFamily dual;
  PerturbedFamily family;
};

void add_input_options(CLI::App& cmd, InputOptions& in) {
  cmd.add_option("--basis", in.basis_path, "Basis family JSON file");
  cmd.add_option("--family", in.family_path, "Perturbed family JSON file");
  cmd.add_option("--spec", in.spec_path, "Corpus spec JSON (alternative to family files)");
  cmd.add_option("--kind", in.kind, "Corpus kind: orthonormal, fourier, triangular, random-decay, degenerate");
  cmd.add_option("--base", in.base,
                 "Corpus base: identity, random-orthonormal, triangular, fourier, random-general");
  cmd.add_option("--dim", in.dim, "Corpus dimension D");
  cmd.add_option("--count", in.count, "Corpus family size N (defaults to D)");
  cmd.add_option("--decay", in.decay, "Corpus delta decay exponent");
  cmd.add_option("--scale", in.scale, "Corpus delta scale");
  cmd.add_option("--shifts", in.shifts, "Fourier frequency shifts")->delimiter(',');
  cmd.add_option("--seed", in.seed, "Corpus seed");
}

void add_common_options(CLI::App& cmd, CommonOptions& common, bool with_format) {
  cmd.add_option("--out", common.out_path, "Write machine output to PATH instead of stdout");
  if (with_format) cmd.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--tol-inv", common.tol_inv, "Relative singular-value tolerance for invertibility");
  cmd.add_option("--tol-rank", common.tol_rank, "Relative rank tolerance");
  cmd.add_option("--plateau-tol", common.plateau_tol, "Plateau test tolerance");
  cmd.add_flag("--quiet", common.quiet, "Suppress the human-readable summary");
}

CorpusSpec corpus_spec(const InputOptions& in) {
  if (!in.spec_path.empty()) return corpus_spec_from_json(read_json_file(in.spec_path));
  CorpusSpec spec;
  spec.kind = parse_corpus_kind(in.kind);
  if (!in.base.empty()) spec.base = parse_base_kind(in.base);
  spec.dim = in.dim;
  spec.count = in.count == 0 ? in.dim : in.count;
  spec.decay = in.decay;
  spec.scale = in.scale;
  spec.frequency_shifts = in.shifts;
  spec.seed = in.seed;
  return spec;
}

bool uses_files(const InputOptions& in) { return !in.basis_path.empty() || !in.family_path.empty(); }

LoadedFamilies load(const InputOptions& in, const CommonOptions& common) {
  if (uses_files(in)) {
    if (in.basis_path.empty() || in.family_path.empty()) {
      throw BadSpec("--basis and --family must be given together");
    }
    BasisFamily basis(read_family_file(in.basis_path), common.tol_rank);
    DualFamily dual = biorthogonal(basis);
    PerturbedFamily family = PerturbedFamily::from_vectors(read_family_file(in.family_path), dual);
    return {std::move(basis), std::move(dual), std::move(family)};
  }
  if (in.spec_path.empty() && in.kind.empty()) {
    throw BadSpec("no input: give --basis/--family, --spec, or --kind with --dim");
  }
  CorpusFamily generated = generate(corpus_spec(in));
  return {std::move(generated.basis), std::move(generated.dual), std::move(generated.family)};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to --out when given, otherwise to `out`.
void emit(const CommonOptions& common, std::ostream& out, const std::string& text) {
  if (common.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + common.out_path);
  file << text;
}

void print_summary(std::ostream& err, const Certificate& cert, const PerturbedFamily* family) {
  err << "family: D = " << cert.dim << ", N = " << cert.count << '\n';
  if (!cert.closeness.partial_sums.empty()) {
    err << "closeness: generalized S = " << cert.closeness.generalized_sum
        << ", banach = " << cert.closeness.banach_sum;
    if (cert.closeness.quadratic_sum) err << ", quadratic = " << *cert.closeness.quadratic_sum;
    err << '\n';
    err << "  hypotheses heuristically supported (plateau test): " << (cert.closeness_plateau ? "yes" : "no")
        << '\n';
  }
  if (family != nullptr && family->count() > 0) {
    Index worst = 0;
    family->delta_norms().maxCoeff(&worst);
    err << "  largest ||f_i - e'_i|| = " << family->delta_norms()(worst) << " at i = " << worst + 1 << '\n';
  }
  err << "omega-rank: " << cert.omega_rank << " / " << cert.count << '\n';
  err << "sigma_min(A) = " << cert.sigma_min_A << ", cond(A) = " << cert.cond_A << '\n';
  err << "kernel dims: A = " << cert.fredholm_defects.kernel_dim_A
      << ", A* = " << cert.fredholm_defects.kernel_dim_A_star << '\n';
  err << "truncated operator: " << (cert.certified() ? "Certified (invertible)" : "NotCertified: " + cert.reason)
      << '\n';
}

std::string certificate_csv(const Json& doc) {
  std::ostringstream csv;
  csv << "key,value\n";
  for (const auto& [key, value] : doc.items()) {
    if (value.is_structured()) continue;
    csv << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return csv.str();
}

int cmd_certify(const InputOptions& in, const CommonOptions& common, std::ostream& out, std::ostream& err) {
  std::optional<LoadedFamilies> loaded;
  Certificate cert;
  try {
    loaded.emplace(load(in, common));
  } catch (const DimensionMismatch& e) {
    cert.verdict = Verdict::NotCertified;
    cert.reason = reasons::kDimensionMismatch;
    if (!common.quiet) err << "error: " << e.what() << '\n';
  }
  if (loaded) {
    CertifyOptions options;
    options.rank_tol = common.tol_rank;
    options.inv_tol = common.tol_inv;
    options.plateau_tol = common.plateau_tol;
    cert = certify(loaded->basis, loaded->dual, loaded->family, options);
  }
  const Json doc = to_json(cert);
  emit(common, out, common.format == "csv" ? certificate_csv(doc) : doc.dump(2) + "\n");
  if (!common.quiet) print_summary(err, cert, loaded ? &loaded->family : nullptr);
  return cert.certified() ? kOk : kNotCertified;
}

int cmd_expand(const InputOptions& in, const CommonOptions& common, const std::string& vector_path,
               const std::string& summary_path, std::ostream& out, std::ostream& err) {
  const LoadedFamilies loaded = load(in, common);
  const Vector y = vector_from_json(read_json_file(vector_path), vector_path);
  if (y.size() != loaded.basis.dim()) {
    throw DimensionMismatch("vector has length " + std::to_string(y.size()) + ", family dimension is " +
                            std::to_string(loaded.basis.dim()));
  }
  const OperatorBundle bundle = build_bundle(loaded.basis, loaded.dual, loaded.family, loaded.basis.count());
  std::optional<ExpansionSolver> solver;
  try {
    solver.emplace(bundle, common.tol_inv);
  } catch (const SingularOperator& e) {
    err << "error: " << e.what() << '\n';
    return kNotCertified;
  }
  const Expansion result = expand(*solver, loaded.basis, y);

  std::ostringstream csv;
  csv << "index,coefficient\n";
  for (Index i = 0; i < result.coefficients.size(); ++i) csv << i << ',' << format_double(result.coefficients(i)) << '\n';
  emit(common, out, csv.str());

  Json summary;
  summary["residual"] = result.residual;
  summary["cond_A"] = number_or_null(solver->cond());
  summary["norm_y"] = y.norm();
  summary["unique"] = loaded.basis.dim() == loaded.basis.count()
                          ? Json(uniqueness_check(loaded.family, y, result.coefficients))
                          : Json(nullptr);
  if (!summary_path.empty()) {
    write_json_file(summary_path, summary);
  } else if (!common.quiet) {
    err << summary.dump(2) << '\n';
  }
  return kOk;
}

Json sweep_to_json(const SweepReport& report) {
  Json doc;
  doc["levels"] = report.levels;
  doc["partial_S"] = report.partial_S;
  doc["partial_banach"] = report.partial_banach;
  doc["sigma_min_per_level"] = report.sigma_min_per_level;
  doc["gap_to_full"] = report.gap_to_full;
  doc["plateau_S"] = report.plateau_S;
  doc["plateau_banach"] = report.plateau_banach;
  return doc;
}

std::string sweep_to_csv(const SweepReport& report) {
  std::ostringstream csv;
  csv << "level,partial_S,partial_banach,sigma_min,gap_to_full,plateau_S,plateau_banach\n";
  for (std::size_t k = 0; k < report.levels.size(); ++k) {
    csv << report.levels[k] << ',' << format_double(report.partial_S[k]) << ','
        << format_double(report.partial_banach[k]) << ',' << format_double(report.sigma_min_per_level[k]) << ','
        << format_double(report.gap_to_full[k]) << ',' << (report.plateau_S[k] ? "true" : "false") << ','
        << (report.plateau_banach[k] ? "true" : "false") << '\n';
  }
  return csv.str();
}

std::vector<Index> resolve_levels(const std::vector<Index>& requested, Index count) {
  return requested.empty() ? default_levels(count) : requested;
}

int cmd_sweep(const InputOptions& in, const CommonOptions& common, const std::vector<Index>& levels_flag,
              std::optional<unsigned> threads, std::ostream& out, std::ostream& err) {
  const LoadedFamilies loaded = load(in, common);
  const std::vector<Index> levels = resolve_levels(levels_flag, loaded.basis.count());
  const SweepReport report = sweep(loaded.basis, loaded.dual, loaded.family, levels, common.plateau_tol,
                                   threads.value_or(threads_from_env()));
  emit(common, out, common.format == "json" ? sweep_to_json(report).dump(2) + "\n" : sweep_to_csv(report));
  if (!common.quiet) {
    err << "sweep over " << report.levels.size() << " levels, final S = " << report.partial_S.back()
        << ", plateau: " << (report.plateau_S.back() ? "yes" : "no") << " (heuristic)\n";
  }
  return kOk;
}

int cmd_gen(const InputOptions& in, const std::string& prefix, std::ostream& out, std::ostream& err, bool quiet) {
  const CorpusSpec spec = corpus_spec(in);
  const CorpusFamily generated = generate(spec);
  const std::string basis_file = prefix + ".basis.json";
  const std::string family_file = prefix + ".family.json";
  const std::string meta_file = prefix + ".meta.json";
  write_json_file(basis_file, family_to_json(generated.basis.matrix()));
  write_json_file(family_file, family_to_json(generated.family.matrix()));
  Json meta = to_json(spec);
  meta["files"] = {{"basis", basis_file}, {"family", family_file}};
  write_json_file(meta_file, meta);
  out << basis_file << '\n' << family_file << '\n' << meta_file << '\n';
  if (!quiet) err << "generated " << to_string(spec.kind) << " family, D = " << spec.dim << ", N = " << spec.count << '\n';
  return kOk;
}

int cmd_report(const InputOptions& in, const CommonOptions& common, const std::vector<Index>& levels_flag,
               const std::string& dump_dir, std::ostream& out, std::ostream& err) {
  const LoadedFamilies loaded = load(in, common);
  CertifyOptions options;
  options.rank_tol = common.tol_rank;
  options.inv_tol = common.tol_inv;
  options.plateau_tol = common.plateau_tol;
  const Certificate cert = certify(loaded.basis, loaded.dual, loaded.family, options);
  const SweepReport report = sweep(loaded.basis, loaded.dual, loaded.family,
                                   resolve_levels(levels_flag, loaded.basis.count()), common.plateau_tol,
                                   threads_from_env());
  const OperatorBundle bundle = build_bundle(loaded.basis, loaded.dual, loaded.family, loaded.basis.count());

  Json doc;
  doc["certificate"] = to_json(cert);
  doc["sweep"] = sweep_to_json(report);
  doc["operators"] = {
      {"level", bundle.level},
      {"identity_defect", bundle.identity_defect ? Json(*bundle.identity_defect) : Json(nullptr)},
      {"norm_K", spectral_norm(bundle.K)},
      {"adjoint_defect", max_abs(bundle.A_star - bundle.A.transpose())},
  };
  doc["dual_residual"] = loaded.dual.residual();
  if (cert.certified()) {
    const DualPerturbedFamily dual_f = dual_system(bundle, loaded.basis, common.tol_inv);
    doc["dual_perturbed_residual"] = dual_f.bio_residual;
  } else {
    doc["dual_perturbed_residual"] = nullptr;
  }
  emit(common, out, doc.dump(2) + "\n");
  if (!dump_dir.empty()) dump_bundle(dump_dir, bundle);
  if (!common.quiet) print_summary(err, cert, &loaded.family);
  return kOk;
}

}  // namespace

unsigned threads_from_env() {
  const char* raw = std::getenv("BASIS_PERTURB_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const unsigned long value = std::strtoul(raw, &end, 10);
  if (end == raw || *end != '\0') return 0;
  return static_cast<unsigned>(value);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability analysis of perturbed bases at finite truncation", "bprt"};
  app.require_subcommand(1);

  InputOptions in;
  CommonOptions common;
  std::string vector_path;
  std::string summary_path;
  std::string prefix;
  std::string dump_dir;
  std::vector<Index> levels;
  std::optional<unsigned> threads;

  auto* certify_cmd = app.add_subcommand("certify", "Certify a perturbed family against a basis");
  add_input_options(*certify_cmd, in);
  add_common_options(*certify_cmd, common, true);

  auto* expand_cmd = app.add_subcommand("expand", "Expand a vector in the perturbed family");
  add_input_options(*expand_cmd, in);
  add_common_options(*expand_cmd, common, false);
  expand_cmd->add_option("--vector", vector_path, "Vector JSON file")->required();
  expand_cmd->add_option("--summary", summary_path, "Write the JSON summary to PATH");

  auto* sweep_cmd = app.add_subcommand("sweep", "Monitor criteria and operators across truncation levels");
  add_input_options(*sweep_cmd, in);
  add_common_options(*sweep_cmd, common, true);
  sweep_cmd->add_option("--levels", levels, "Ascending truncation levels")->delimiter(',');
  sweep_cmd->add_option("--threads", threads, "Worker cap (overrides BASIS_PERTURB_THREADS, 0 = auto)");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a corpus family");
  add_input_options(*gen_cmd, in);
  gen_cmd->add_option("--out", prefix, "Output prefix for .basis.json, .family.json, .meta.json")->required();
  gen_cmd->add_flag("--quiet", common.quiet, "Suppress the summary");

  auto* report_cmd = app.add_subcommand("report", "Full JSON report: certificate, sweep, operator diagnostics");
  add_input_options(*report_cmd, in);
  add_common_options(*report_cmd, common, false);
  report_cmd->add_option("--levels", levels, "Ascending truncation levels")->delimiter(',');
  report_cmd->add_option("--dump", dump_dir, "Directory for binary dumps of K, A, A_star");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }
  if (common.format.empty()) common.format = sweep_cmd->parsed() ? "csv" : "json";

  try {
    if (certify_cmd->parsed()) return cmd_certify(in, common, out, err);
    if (expand_cmd->parsed()) return cmd_expand(in, common, vector_path, summary_path, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(in, common, levels, threads, out, err);
    if (gen_cmd->parsed()) return cmd_gen(in, prefix, out, err, common.quiet);
    if (report_cmd->parsed()) return cmd_report(in, common, levels, dump_dir, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace bprt::cli
