#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "loopmot/coaction.hpp"
#include "loopmot/errors.hpp"
#include "loopmot/graphs.hpp"
#include "loopmot/integrate.hpp"
#include "loopmot/jsonio.hpp"
#include "loopmot/kinematics.hpp"
#include "loopmot/motive.hpp"
#include "loopmot/selfcheck.hpp"

namespace {

using loopmot::Json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

loopmot::KinematicPoint load_kinematics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open kinematics file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
  try {
    return loopmot::kinematics_from_json(j);
  } catch (const Json::exception& e) {
    throw UsageError("bad kinematics document: " + std::string(e.what()));
  } catch (const loopmot::DomainError& e) {
    if (e.code() == "BadRational") throw UsageError(e.what());
    throw;
  }
}

void emit(const Json& payload, bool text_mode, const std::string& text) {
  if (text_mode)
    std::cout << text << "\n";
  else
    std::cout << payload.dump(2) << "\n";
}

std::vector<int> parse_csv_ints(const std::string& csv) {
  std::vector<int> out;
  std::string item;
  std::stringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in list '" + csv + "'");
    std::size_t pos = 0;
    out.push_back(std::stoi(item, &pos));
    if (pos != item.size()) throw UsageError("bad integer '" + item + "'");
  }
  return out;
}

int cmd_check(const std::string& kin_file, int d, bool text_mode) {
  const loopmot::KinematicPoint k = load_kinematics(kin_file);
  const loopmot::GenericityReport generic = loopmot::is_generic(k, d);
  const loopmot::EuclideanReport euclid = loopmot::is_euclidean(k, d);

  Json j = loopmot::genericity_to_json(generic);
  j["euclidean"] = euclid.is_euclidean;
  j["psd"] = euclid.psd;
  j["masses_positive"] = euclid.masses_positive;

  Json dets = Json::array();
  const int count = k.n + 1;
  std::vector<loopmot::GramIndex> universe;
  for (int i = 1; i <= k.n; ++i) universe.push_back(i);
  universe.push_back(loopmot::kInfinity);
  for (unsigned long mask = 1; mask < (1ul << count); ++mask) {
    if (__builtin_popcountl(mask) > d + 1) continue;
    if (mask == (1ul << k.n)) continue;
    loopmot::GramSubset subset;
    for (int i = 0; i < count; ++i)
      if (mask & (1ul << i)) subset.push_back(universe[i]);
    Json entry;
    entry["subset"] = loopmot::gram_subset_to_json(subset);
    entry["det"] = loopmot::rational_string(loopmot::gram_det(k, subset));
    dets.push_back(std::move(entry));
  }
  j["gram_determinants"] = std::move(dets);

  std::string text = std::string("generic: ") + (generic.is_generic ? "yes" : "no") +
                     ", euclidean: " + (euclid.is_euclidean ? "yes" : "no");
  emit(j, text_mode, text);
  return generic.is_generic ? kExitOk : kExitDomain;
}

int cmd_motive(const std::string& graph_spec, const std::string& variant_name,
               const std::optional<std::string>& kin_file, std::optional<int> d, bool text_mode) {
  const loopmot::CutQuotientGraph g = loopmot::parse_graph_notation(graph_spec);
  const loopmot::Variant variant = loopmot::parse_variant(variant_name);
  std::optional<loopmot::KinematicPoint> kin;
  if (kin_file) kin = load_kinematics(*kin_file);

  loopmot::MotiveDescription desc = loopmot::weight_pieces(g, variant, kin);
  Json j = loopmot::motive_to_json(desc);
  if (!g.is_point()) {
    const loopmot::WeightBounds bounds = loopmot::weight_bounds(g, variant);
    j["top_weight"] = bounds.top_weight;
    j["bottom_rank"] = bounds.bottom_rank;
    j["top_rank"] = bounds.top_rank;
  }
  if (d) {
    const loopmot::MotiveDescription truncated = loopmot::truncate(desc, *d);
    j["truncated"] = loopmot::motive_to_json(truncated);
    j["truncated_at"] = *d;
  }
  emit(j, text_mode,
       "rank " + std::to_string(desc.rank) + " (" + std::to_string(desc.pieces.size()) +
           " pieces)");
  return kExitOk;
}

int cmd_coaction(int n, const std::string& mode, const std::string& gamma_csv, bool text_mode) {
  loopmot::CoactionExpression expr;
  if (mode == "coaction") {
    expr = loopmot::coaction(n);
  } else if (mode == "coproduct") {
    std::set<int> gamma;
    for (int e : parse_csv_ints(gamma_csv.empty() ? "" : gamma_csv)) gamma.insert(e);
    expr = loopmot::coproduct(n, gamma);
  } else {
    throw UsageError("mode must be 'coaction' or 'coproduct'");
  }
  Json j = loopmot::coaction_to_json(expr);
  j["text"] = loopmot::render_text(expr);
  emit(j, text_mode, loopmot::render_text(expr));
  return kExitOk;
}

int cmd_integrate(const std::string& graph_spec, int d, const std::string& nu_csv,
                  const std::string& kin_file, const std::string& method, double tol,
                  std::uint64_t seed, bool text_mode) {
  loopmot::IntegralSpec spec;
  spec.graph = loopmot::parse_graph_notation(graph_spec);
  spec.d = d;
  spec.nu = parse_csv_ints(nu_csv);
  spec.kinematics = load_kinematics(kin_file);
  if (method == "quad")
    spec.method = loopmot::Method::AdaptiveQuadrature;
  else if (method == "mc")
    spec.method = loopmot::Method::QuasiMonteCarlo;
  else
    throw UsageError("method must be 'quad' or 'mc'");
  spec.tol = tol;
  spec.seed = seed;

  const loopmot::IntegralResult result = loopmot::integrate(spec);

  Json echo;
  echo["graph"] = loopmot::graph_to_json(spec.graph);
  echo["d"] = d;
  echo["nu"] = Json(spec.nu);
  echo["method"] = method;
  echo["tol"] = tol;
  echo["seed"] = seed;
  const Json j = loopmot::integral_result_to_json(result, echo);
  emit(j, text_mode,
       "value " + std::to_string(result.value) + " +- " + std::to_string(result.error_estimate));
  return kExitOk;
}

int cmd_selftest(int n_max, const std::string& mutate, bool text_mode) {
  loopmot::selfcheck::Options opt;
  opt.n_max = n_max;
  opt.mutate = mutate;
  const auto results = loopmot::selfcheck::run_all(opt);

  bool all_pass = true;
  Json checks = Json::array();
  std::string text;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    Json c;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["detail"] = r.detail;
    c["seconds"] = r.seconds;
    checks.push_back(std::move(c));
    text += std::string(r.pass ? "[PASS] " : "[FAIL] ") + r.name + " (" + r.detail + ")\n";
  }
  Json j;
  j["checks"] = std::move(checks);
  j["all_pass"] = all_pass;
  emit(j, text_mode, text + (all_pass ? "all checks passed" : "some checks FAILED"));
  return all_pass ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact kinematics, weight-graded motive structure, coaction formulas and "
               "numerical evaluation for one-loop momentum-space integrals"};
  app.require_subcommand(1);
  app.fallthrough();
  bool text_mode = false;
  app.add_flag("--text,!--json", text_mode, "plain text output (default JSON)");

  std::string kin_file, graph_spec, variant = "reduced", mode = "coaction", gamma_csv;
  std::string nu_csv, method = "quad", mutate;
  int d = 2, n = 2, n_max = 6;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::optional<std::string> motive_kin;
  std::optional<int> motive_d;

  auto* check = app.add_subcommand("check", "genericity and Euclidean analysis of a kinematic point");
  check->add_option("--kinematics", kin_file, "kinematics JSON file")->required();
  check->add_option("--d", d, "even dimension")->required();

  auto* motive = app.add_subcommand("motive", "weight-graded motive description of a graph");
  motive->add_option("--graph", graph_spec, "graph notation, e.g. n=4;pinch=2;cut=1,3")->required();
  motive->add_option("--variant", variant, "reduced|full|quotient");
  motive->add_option("--kinematics", motive_kin, "kinematics JSON file (attaches characters)");
  motive->add_option("--d", motive_d, "also emit the W_d truncation");

  auto* coact = app.add_subcommand("coaction", "coaction or coproduct expression");
  coact->add_option("--n", n, "parent n-gon size")->required();
  coact->add_option("--mode", mode, "coaction|coproduct");
  coact->add_option("--gamma", gamma_csv, "cut subset for coproduct, e.g. 1,3");

  auto* integ = app.add_subcommand("integrate", "numerical evaluation of a convergent integral");
  integ->add_option("--graph", graph_spec, "graph notation (cuts not allowed)")->required();
  integ->add_option("--d", d, "even dimension")->required();
  integ->add_option("--nu", nu_csv, "comma-separated exponents per surviving edge")->required();
  integ->add_option("--kinematics", kin_file, "kinematics JSON file")->required();
  integ->add_option("--method", method, "quad|mc");
  integ->add_option("--tol", tol, "relative tolerance");
  integ->add_option("--seed", seed, "QMC seed");

  auto* selftest = app.add_subcommand("selftest", "run the oracle suites");
  selftest->add_option("--n-max", n_max, "upper n for combinatorial suites");
  selftest->add_option("--mutate", mutate, "corrupt a convention to prove the harness fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(kin_file, d, text_mode);
    if (motive->parsed()) return cmd_motive(graph_spec, variant, motive_kin, motive_d, text_mode);
    if (coact->parsed()) return cmd_coaction(n, mode, gamma_csv, text_mode);
    if (integ->parsed())
      return cmd_integrate(graph_spec, d, nu_csv, kin_file, method, tol, seed, text_mode);
    if (selftest->parsed()) return cmd_selftest(n_max, mutate, text_mode);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const loopmot::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    Json j;
    j["error"] = e.code();
    j["message"] = e.what();
    std::cout << j.dump(2) << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
