// Command-line front end: distribution-file ingestion, bound computation,
// witness construction, verifier runs, and reproduction-suite reports.
//
// Exit codes: 0 success, 1 criterion failure, 2 usage or parse error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "skbound/constructions.hpp"
#include "skbound/envelope.hpp"
#include "skbound/io.hpp"
#include "skbound/search.hpp"
#include "skbound/suites.hpp"
#include "skbound/tables.hpp"
#include "skbound/verifiers.hpp"

namespace {

using namespace skb;

void print_rows(const std::vector<ReportRow>& rows) {
  std::cout << to_markdown(rows);
}

void warn_renormalized(const DistributionFile& d) {
  if (d.renormalized)
    std::cerr << "warning: pmf mass drifted from 1 within tolerance; renormalized on ingest\n";
}

int cmd_info(const std::string& path) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  const auto& spec = d.pmf.alphabet();
  std::cout << "axes:";
  for (const auto& a : spec.axes()) std::cout << ' ' << a.name << '(' << a.size << ')';
  std::cout << "\nH(joint) = " << format_bits(d.pmf.entropy()) << " bits\n";
  if (spec.has("X") && spec.has("Y")) {
    std::cout << "I(X;Y) = " << format_bits(d.pmf.mutual_information({"X"}, {"Y"})) << "\n";
    if (spec.rank() == 2 && spec.axis(0).size == 2 && spec.axis(1).size == 2) {
      double cov = d.pmf.mass()[0] * d.pmf.mass()[3] - d.pmf.mass()[1] * d.pmf.mass()[2];
      std::cout << "Cov(X,Y) sign term p00*p11 - p01*p10 = " << format_bits(cov) << "\n";
    }
  }
  if (d.function) {
    JointPmf xyz = resolve_xyz(d);
    std::cout << "I(X;Y|Z) = "
              << format_bits(xyz.conditional_mutual_information({"X"}, {"Y"}, {"Z"})) << "\n"
              << "H(Z) = " << format_bits(xyz.entropy({"Z"})) << "\n";
  } else if (spec.has("Z")) {
    std::cout << "I(X;Y|Z) = "
              << format_bits(d.pmf.conditional_mutual_information({"X"}, {"Y"}, {"Z"})) << "\n"
              << "H(Z|X,Y) = " << format_bits(d.pmf.conditional_entropy({"Z"}, {"X", "Y"}))
              << "\n";
  }
  return 0;
}

int cmd_psi_hat(const std::string& path, const std::string& method, int grid_k, int restarts,
                std::uint64_t seed, int j_card) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf xyz = resolve_xyz(d);
  std::vector<ReportRow> rows;
  detail::Timer timer;
  if (method == "envelope") {
    BoundReport r = psi_hat_envelope(xyz, grid_k);
    rows.push_back({d.name.empty() ? path : d.name, "psi_hat", r.value, "envelope",
                    r.residuals.at("certificate_roundtrip"), timer.seconds()});
  } else if (method == "search") {
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.restarts = restarts;
    cfg.j_card = j_card;
    BoundReport r = psi_hat_search(xyz, cfg);
    rows.push_back({d.name.empty() ? path : d.name, "psi_hat", r.value, "search-best",
                    r.residuals.at("restart_spread"), timer.seconds()});
    for (const auto& n : r.notes) std::cerr << "note: " << n << "\n";
  } else if (method == "oracle") {
    double v = grid_oracle(xyz, j_card > 0 ? j_card : 2, grid_k);
    rows.push_back({d.name.empty() ? path : d.name, "psi_hat_grid_oracle", v, "oracle", 0,
                    timer.seconds()});
  } else {
    throw CLI::ValidationError("--method", "must be envelope, search, or oracle");
  }
  print_rows(rows);
  return 0;
}

int cmd_witness(const std::string& mode, const std::string& path, const std::string& op) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf pxy = d.pmf.alphabet().rank() == 2 ? d.pmf : d.pmf.marginalize({"X", "Y"});

  auto print_params = [](const DecompositionWitness& w) {
    for (const auto& [k, v] : w.params) std::cout << "  " << k << " = " << format_bits(v) << "\n";
    std::cout << "  components: " << w.components.size() << "\n";
  };
  auto print_residuals = [](const std::map<std::string, double>& res) {
    bool pass = true;
    for (const auto& [k, v] : res) {
      std::cout << "  " << k << " = " << v << "\n";
      if (std::abs(v) > 1e-9) pass = false;
    }
    std::cout << (pass ? "witness verified (residuals <= 1e-9)\n"
                       : "witness FAILED verification\n");
    return pass ? 0 : 1;
  };

  MonotoneOp mop = op == "sum" ? MonotoneOp::Sum : op == "or" ? MonotoneOp::Or : MonotoneOp::And;
  if (mode == "xor") {
    DecompositionWitness w = xor_witness(pxy);
    std::cout << "XOR T-witness\n";
    print_params(w);
    JointPmf xyz = with_xor_column(pxy);
    return print_residuals(verify_witness(xyz, w, WitnessKind::TWitness));
  }
  if (mode == "monotone") {
    auto s = monotone_split(pxy, mop);
    std::cout << (s.kind == WitnessKind::TWitness ? "T-witness (Cov <= 0): psi-hat = I(X;Y)\n"
                                                  : "J*-split (Cov > 0): psi-hat = 0\n");
    print_params(s.witness);
    FunctionTable f = mop == MonotoneOp::Sum ? FunctionTable::sum2()
                      : mop == MonotoneOp::Or ? FunctionTable::or2()
                                              : FunctionTable::and2();
    JointPmf xyz = pxy.apply_function("X", "Y", f, "Z");
    return print_residuals(verify_witness(xyz, s.witness, s.kind));
  }
  if (mode == "ternary") {
    auto r = ternary_witness(pxy);
    if (std::holds_alternative<ConditionNotMet>(r)) {
      const auto& c = std::get<ConditionNotMet>(r);
      std::cout << "condition not met: " << c.inequality << " (lhs = " << format_bits(c.lhs)
                << ")\n";
      return 0;
    }
    const auto& w = std::get<DecompositionWitness>(r);
    std::cout << "ternary T-witness\n";
    print_params(w);
    JointPmf xyz = pxy.apply_function("X", "Y", FunctionTable::mod2_2x3(), "Z");
    return print_residuals(verify_witness(xyz, w, WitnessKind::TWitness));
  }
  if (mode == "verify") {
    if (!d.function) throw ValidationError("witness verify: file needs a function block");
    JointPmf xyz = resolve_xyz(d);
    TableClassification cls = classify_table(*d.function);
    if (cls.kind == TableClassification::Kind::ValidXor) {
      return print_residuals(verify_witness(xyz, xor_witness(pxy), WitnessKind::TWitness));
    }
    auto s = monotone_split(pxy, mop);
    return print_residuals(verify_witness(xyz, s.witness, s.kind));
  }
  throw CLI::ValidationError("witness", "mode must be xor, monotone, ternary, or verify");
}

int cmd_hull(const std::string& path, int grid_k) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  if (!d.function) throw ValidationError("hull: file needs a function block");
  HullDecision dec = hull_membership(d.pmf, *d.function, grid_k);
  std::cout << (dec.in ? "IN" : "OUT") << ": " << dec.detail << "\n";
  if (dec.witness) std::cout << "decomposition with " << dec.witness->components.size()
                             << " product components\n";
  return 0;
}

int cmd_tables(const std::string& mode, const std::string& path, int nx, int ny, int nz) {
  if (mode == "enumerate") {
    auto counts = enumerate_tables(nx, ny, nz);
    std::cout << "tables " << nx << "x" << ny << " with |Z| = " << nz << ": total "
              << counts.total << ", valid " << counts.valid << ", invalid " << counts.invalid
              << "\n";
    return 0;
  }
  DistributionFile d = parse_distribution(path);
  if (!d.function) throw ValidationError("tables: file needs a function block");
  TableClassification c = classify_table(*d.function);
  const char* kind = c.kind == TableClassification::Kind::ValidConstant ? "ValidConstant"
                     : c.kind == TableClassification::Kind::ValidXor    ? "ValidXor"
                                                                        : "Invalid";
  std::cout << "classification: " << kind << "\n";
  if (c.witness)
    std::cout << "witness subtable rows (" << (*c.witness)[0] << "," << (*c.witness)[1]
              << ") cols (" << (*c.witness)[2] << "," << (*c.witness)[3] << ")\n";
  if (mode == "classify") return 0;
  if (mode == "falsify") {
    if (c.kind != TableClassification::Kind::Invalid) {
      std::cout << "table is valid; nothing to falsify\n";
      return 0;
    }
    auto f = falsify_invalid(*d.function);
    if (!f.success) {
      std::cout << "open case: " << f.note << "\n";
      return 1;
    }
    std::cout << "falsified: psi_hat = " << format_bits(f.psi_hat)
              << ", I(X;Y) = " << format_bits(f.ixy) << ", gap = " << format_bits(f.gap) << "\n";
    return 0;
  }
  throw CLI::ValidationError("tables", "mode must be classify, enumerate, or falsify");
}

int cmd_delta_bar(const std::string& path) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf pxy = d.pmf.alphabet().rank() == 2 ? d.pmf : d.pmf.marginalize({"X", "Y"});
  auto db = delta_bar(pxy);
  std::vector<ReportRow> rows;
  std::string inst = d.name.empty() ? path : d.name;
  rows.push_back({inst, "delta1 (H(Z|U)-H(Y|U))", db.delta1.value, "envelope", 0, 0});
  rows.push_back({inst, "delta2 (H(Z|V)-H(X|V))", db.delta2.value, "envelope", 0, 0});
  rows.push_back({inst, "delta_bar", db.delta_bar, "envelope", 0, 0});
  rows.push_back({inst, "delta1 (stated variant)", db.delta1_stated, "envelope", 0, 0});
  rows.push_back({inst, "delta2 (stated variant)", db.delta2_stated, "envelope", 0, 0});
  print_rows(rows);
  std::cerr << "note: two conventions exist for which marginal entropy delta1 subtracts;\n"
               "both are reported and the (Z-Y, Z-X) pair feeds delta_bar\n";
  return 0;
}

int cmd_psi_delta(const std::string& path, double delta, std::uint64_t seed, int restarts) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf xyz = resolve_xyz(d);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  auto r = psi_delta_evaluate(xyz, delta, cfg);
  std::vector<ReportRow> rows;
  rows.push_back({d.name.empty() ? path : d.name, "psi_delta", r.report.value, "search-best",
                  delta, 0});
  print_rows(rows);
  for (const auto& n : r.report.notes) std::cerr << "note: " << n << "\n";
  return 0;
}

int cmd_sow(const std::string& path, const std::string& direction, std::uint64_t seed,
            int restarts) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf xyz = resolve_xyz(d);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  Direction dir = direction == "y-to-x" ? Direction::YtoX : Direction::XtoY;
  BoundReport r = sow_evaluate(xyz, dir, cfg);
  std::vector<ReportRow> rows;
  rows.push_back({d.name.empty() ? path : d.name, "S_ow", r.value, "search-best",
                  r.residuals.at("restart_spread"), 0});
  print_rows(rows);
  return 0;
}

int cmd_intrinsic(const std::string& path, std::uint64_t seed, int restarts) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf xyz = resolve_xyz(d);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  BoundReport r = intrinsic_information(xyz, cfg);
  std::vector<ReportRow> rows;
  rows.push_back({d.name.empty() ? path : d.name, "intrinsic_information", r.value,
                  "search-best", r.residuals.at("restart_spread"), 0});
  print_rows(rows);
  return 0;
}

int cmd_lower_bound(const std::string& path, int depth, int m, std::uint64_t seed, int restarts) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  JointPmf xyz = resolve_xyz(d);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = restarts;
  BoundReport r = interactive_lower_bound(xyz, depth, m, cfg);
  std::vector<ReportRow> rows;
  rows.push_back({d.name.empty() ? path : d.name, "interactive_lower_bound", r.value,
                  "search-best", 0, 0});
  print_rows(rows);
  return 0;
}

int cmd_erasure(const std::string& path, double eps, bool cross_check, std::uint64_t seed) {
  DistributionFile d = parse_distribution(path);
  warn_renormalized(d);
  if (!d.function) throw ValidationError("erasure: file needs a function block for Z = g(X)");
  if (d.pmf.alphabet().rank() != 1)
    throw ValidationError("erasure: pmf must be one-axis (the X law)");
  std::vector<double> px = d.pmf.mass();
  std::vector<int> g;
  for (int x = 0; x < d.function->nx; ++x) g.push_back((*d.function)(x, 0));
  double cap = erasure_capacity(px, g, eps);
  std::vector<ReportRow> rows;
  std::string inst = d.name.empty() ? path : d.name;
  rows.push_back({inst, "erasure_capacity", cap, "closed-form", eps, 0});
  if (cross_check) {
    JointPmf joint = erasure_joint(px, g, eps);
    SearchConfig cfg;
    cfg.seed = seed;
    cfg.u_card = static_cast<int>(px.size());
    cfg.v_card = 2;
    BoundReport r = sow_evaluate(joint, Direction::XtoY, cfg);
    rows.push_back({inst, "S_ow cross-check", r.value, "search-best", cap - r.value, 0});
  }
  print_rows(rows);
  return 0;
}

int cmd_verify(const std::string& mode, std::uint64_t seed, int trials,
               const std::string& path) {
  if (mode == "identity") {
    FuzzSpec fuzz{seed, trials > 0 ? trials : 1000, {2, 2, 2, 2, 2}};
    auto rep = witness_identity_check(fuzz);
    std::cout << "identity: max |LHS - RHS| = " << rep.max_discrepancy << " over "
              << rep.trials << " couplings\n";
    return rep.max_discrepancy <= 1e-9 ? 0 : 1;
  }
  if (mode == "thm5") {
    FuzzSpec fuzz{seed, trials > 0 ? trials : 200, {}};
    auto rep = change_of_source_check(fuzz);
    std::cout << "thm5: " << rep.violations << " violations over " << rep.trials
              << " trials (worst excess " << rep.worst_excess << ")\n";
    return rep.violations == 0 ? 0 : 1;
  }
  if (mode == "tensorize") {
    DistributionFile d = parse_distribution(path);
    if (!d.function) throw ValidationError("verify tensorize: file needs a function block");
    SearchConfig cfg;
    cfg.seed = seed;
    auto rep = tensorization_check(d.pmf, *d.function, cfg);
    std::cout << "tensorize: psi1 = " << format_bits(rep.psi1)
              << ", witness residual = " << rep.witness_residual
              << ", search gap = " << rep.search_gap << "\n";
    return rep.witness_residual <= 1e-12 && rep.search_gap <= 1e-3 ? 0 : 1;
  }
  if (mode == "rectangle") {
    JointPmf p = path.empty()
                     ? JointPmf::from_matrix("X", "Y", {{0.3, 0.2}, {0.2, 0.3}})
                     : parse_distribution(path).pmf;
    auto r1 = rectangle_check(p, 1, 4);
    auto r2 = rectangle_check(p, 2, 4, trials > 0 ? trials : 4000, seed);
    std::cout << "rectangle: n=1 " << r1.pairs_checked << " pairs, n=2 " << r2.pairs_checked
              << " pairs, counterexamples "
              << r1.counterexamples.size() + r2.counterexamples.size() << "\n";
    return r1.counterexamples.empty() && r2.counterexamples.empty() ? 0 : 1;
  }
  if (mode == "km") {
    JointPmf p = path.empty()
                     ? JointPmf::from_matrix("X", "Y", {{0.45, 0.05}, {0.05, 0.45}})
                     : parse_distribution(path).pmf;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dist(0, 3);
    double min_slack = 1e300;
    int n = trials > 0 ? trials : 100;
    for (int t = 0; t < n; ++t) {
      ProtocolMaps maps{1, {dist(rng), dist(rng)}, {dist(rng), dist(rng)}};
      min_slack = std::min(min_slack, km_bound_check(p, maps).slack);
    }
    std::cout << "km: min slack over " << n << " deterministic map pairs = " << min_slack
              << "\n";
    return min_slack >= -1e-9 ? 0 : 1;
  }
  throw CLI::ValidationError("verify", "mode must be identity, thm5, tensorize, rectangle, or km");
}

int cmd_report(const std::string& suite, const std::string& outdir, std::uint64_t seed) {
  const auto& suites = suite_map();
  auto it = suites.find(suite);
  if (it == suites.end()) {
    std::cerr << "unknown suite '" << suite << "'; valid:";
    for (const auto& [k, v] : suites) std::cerr << ' ' << k;
    std::cerr << "\n";
    return 2;
  }
  std::filesystem::create_directories(outdir);
  std::vector<ReportRow> rows;
  bool all_pass = true;
  for (int id : it->second) {
    CriterionResult r = run_criterion(id, seed);
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name << " — "
              << r.detail << "\n";
    if (!r.pass) all_pass = false;
    for (auto row : r.rows) {
      row.runtime_s = r.runtime_s;
      rows.push_back(row);
    }
  }
  std::ofstream csv(outdir + "/" + suite + ".csv");
  csv << to_csv(rows);
  std::ofstream md(outdir + "/" + suite + ".md");
  md << to_markdown(rows);
  std::cout << "wrote " << outdir << "/" << suite << ".csv and .md\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skbound: secret-key-rate bounds for finite-alphabet sources"};
  app.require_subcommand(1);

  std::string file, method = "envelope", mode, op = "and", direction = "x-to-y";
  std::string suite = "all", outdir = "reports";
  int grid_k = 40, restarts = 8, j_card = 0, depth = 1, mval = 1, trials = 0;
  int nx = 2, ny = 2, nz = 2;
  double delta = 0.0, eps = 0.5;
  std::uint64_t seed = 0;
  bool cross_check = false;

  auto* info = app.add_subcommand("info", "summarize a distribution file");
  info->add_option("file", file)->required();

  auto* psihat = app.add_subcommand("psi-hat", "upper bound via envelope, search, or oracle");
  psihat->add_option("file", file)->required();
  psihat->add_option("--method", method, "envelope|search|oracle");
  psihat->add_option("--grid", grid_k, "grid subdivisions");
  psihat->add_option("--restarts", restarts);
  psihat->add_option("--j-card", j_card);
  auto* psihat_seed = psihat->add_option("--seed", seed, "required for --method search");

  auto* witness = app.add_subcommand("witness", "closed-form witness constructions");
  witness->add_option("mode", mode, "xor|monotone|ternary|verify")->required();
  witness->add_option("file", file)->required();
  witness->add_option("--op", op, "sum|and|or");

  auto* hull = app.add_subcommand("hull", "membership in conv{Q : I_Q(X;Y)=0, Q_Z=P_Z}");
  hull->add_option("file", file)->required();
  hull->add_option("--grid", grid_k);

  auto* tables = app.add_subcommand("tables", "function-table classification");
  tables->add_option("mode", mode, "classify|enumerate|falsify")->required();
  tables->add_option("file", file);
  tables->add_option("--nx", nx);
  tables->add_option("--ny", ny);
  tables->add_option("--nz", nz);

  auto* dbar = app.add_subcommand("delta-bar", "Korner-Marton residual envelopes");
  dbar->add_option("file", file)->required();

  auto* pdelta = app.add_subcommand("psi-delta", "communication-floor constrained bound");
  pdelta->add_option("file", file)->required();
  pdelta->add_option("--delta", delta)->required();
  pdelta->add_option("--seed", seed)->required();
  pdelta->add_option("--restarts", restarts);

  auto* sow = app.add_subcommand("sow", "one-way secrecy rate");
  sow->add_option("file", file)->required();
  sow->add_option("--direction", direction, "x-to-y|y-to-x");
  sow->add_option("--seed", seed)->required();
  sow->add_option("--restarts", restarts);

  auto* intr = app.add_subcommand("intrinsic", "intrinsic information");
  intr->add_option("file", file)->required();
  intr->add_option("--seed", seed)->required();
  intr->add_option("--restarts", restarts);

  auto* lb = app.add_subcommand("lower-bound", "interactive lower bound (depth <= 2)");
  lb->add_option("file", file)->required();
  lb->add_option("--depth", depth);
  lb->add_option("--m", mval);
  lb->add_option("--seed", seed)->required();
  lb->add_option("--restarts", restarts);

  auto* eras = app.add_subcommand("erasure", "deterministic-erasure capacity");
  eras->add_option("file", file)->required();
  eras->add_option("--eps", eps)->required();
  eras->add_flag("--cross-check", cross_check, "confirm via one-way search");
  eras->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "executable identity/inequality checks");
  verify->add_option("mode", mode, "identity|thm5|tensorize|rectangle|km")->required();
  verify->add_option("file", file);
  verify->add_option("--seed", seed)->required();
  verify->add_option("--trials", trials);

  auto* report = app.add_subcommand("report", "run a reproduction suite");
  report->add_option("--suite", suite)->required();
  report->add_option("--out", outdir);
  report->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*info) return cmd_info(file);
    if (*psihat) {
      if (method == "search" && psihat_seed->count() == 0)
        throw ValidationError("psi-hat --method search requires --seed");
      return cmd_psi_hat(file, method, grid_k, restarts, seed, j_card);
    }
    if (*witness) return cmd_witness(mode, file, op);
    if (*hull) return cmd_hull(file, grid_k);
    if (*tables) return cmd_tables(mode, file, nx, ny, nz);
    if (*dbar) return cmd_delta_bar(file);
    if (*pdelta) return cmd_psi_delta(file, delta, seed, restarts);
    if (*sow) return cmd_sow(file, direction, seed, restarts);
    if (*intr) return cmd_intrinsic(file, seed, restarts);
    if (*lb) return cmd_lower_bound(file, depth, mval, seed, restarts);
    if (*eras) return cmd_erasure(file, eps, cross_check, seed);
    if (*verify) return cmd_verify(mode, seed, trials, file);
    if (*report) return cmd_report(suite, outdir, seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
