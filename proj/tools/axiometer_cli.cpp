// axiometer: validate, score, and compare collections of axiom-satisfaction
// probabilities, and generate them by simulating voting rules.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "axiometer/axiometer.hpp"
#include "axiometer/json_io.hpp"

namespace {

using namespace axiometer;
using io::ordered_json;

enum Exit : int { kOk = 0, kInfeasible = 1, kBadInput = 2, kTooLarge = 3 };

struct Common {
  double tol = kDefaultTolerance;
  std::string format = "table";
  std::string out;
  bool json() const { return format == "json"; }
};

/// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fixed(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << (x == 0.0 ? 0.0 : x);
  return s.str();
}

std::string subset_label(const AxiomSet& axioms, Mask s) { return s == 0 ? "{}" : axioms.name_of(s); }

std::size_t label_width(const AxiomSet& axioms) {
  std::size_t w = 2;
  for (Mask s = 1; s <= axioms.full(); ++s) w = std::max(w, axioms.name_of(s).size());
  return w;
}

void print_report_table(std::ostream& os, const FeasibilityReport& r, const Collection& c) {
  const auto& axioms = c.axioms();
  const auto w = static_cast<int>(label_width(axioms));
  os << "feasible: " << (r.feasible ? "yes" : "no") << "  (tolerance " << r.tolerance << ")\n";
  if (!r.negative_contributions.empty()) {
    os << "negative contributions:\n";
    for (const auto& n : r.negative_contributions) {
      os << "  " << std::left << std::setw(w) << subset_label(axioms, n.subset) << "  " << fixed(n.value) << "\n";
    }
  }
  if (!r.frechet_violations.empty()) {
    os << "frechet violations:\n";
    for (const auto& v : r.frechet_violations) {
      os << "  " << std::left << std::setw(w) << axioms.name_of(v.subset) << "  " << to_string(v.bound)
         << " bound against " << subset_label(axioms, v.subset ^ v.removed) << ", exceeded by " << fixed(v.slack)
         << "\n";
    }
  }
  const auto alpha = moebius_superset(c.p());
  os << "contributions:\n";
  for (Mask s = 0; s < alpha.size(); ++s) {
    const double a = alpha[s] < 0.0 && alpha[s] > -r.tolerance ? 0.0 : alpha[s];
    os << "  " << std::left << std::setw(w) << subset_label(axioms, s) << "  " << fixed(a) << "\n";
  }
}

void emit_report(Output& out, const Common& opt, const FeasibilityReport& r, const Collection& c) {
  if (opt.json()) {
    out.stream() << io::report_to_json(r, c).dump(2) << "\n";
  } else {
    print_report_table(out.stream(), r, c);
  }
}

/// Reports an infeasible input and returns the exit code for it.
int infeasible(Output& out, const Common& opt, const Collection& c, const std::string& origin) {
  std::cerr << "axiometer: " << origin << ": collection is not admissible\n";
  emit_report(out, opt, validate(c, opt.tol), c);
  return kInfeasible;
}

int cmd_validate(const Common& opt, const std::string& path) {
  const auto c = io::collection_from_json(io::read_json_file(path));
  Output out(opt.out);
  const auto r = validate(c, opt.tol);
  emit_report(out, opt, r, c);
  return r.feasible ? kOk : kInfeasible;
}

int cmd_perf(const Common& opt, const std::string& capacity_path, const std::vector<std::string>& paths,
             const std::string& measure_name) {
  const auto measure = parse_measure(measure_name);
  const auto u = io::capacity_from_json(io::read_json_file(capacity_path));
  std::vector<NamedCollection> entries;
  for (const auto& p : paths) {
    const auto doc = io::read_json_file(p);
    auto c = io::collection_from_json(doc);
    if (!(c.axioms() == u.axioms())) throw SchemaError(p + ": axioms differ from the capacity's");
    entries.push_back({io::name_from_json(doc).value_or(std::filesystem::path(p).stem().string()), std::move(c)});
  }
  Output out(opt.out);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!is_member(entries[i].collection, opt.tol).feasible) return infeasible(out, opt, entries[i].collection, paths[i]);
  }
  const auto ranked = rank(entries, u, measure, opt.tol);
  const auto& axioms = u.axioms();

  if (opt.json()) {
    ordered_json doc;
    doc["measure"] = std::string(to_string(measure));
    ordered_json rows = ordered_json::array();
    for (const auto& r : ranked) {
      const auto res = evaluate(measure, u, entries[r.input_index].collection, opt.tol);
      rows.push_back({{"name", r.name},
                      {"rank", r.rank},
                      {"tied", r.tied},
                      {"value", r.value},
                      {"weights", io::subset_map_to_json(axioms, res.weights)}});
    }
    doc["ranking"] = std::move(rows);
    out.stream() << doc.dump(2) << "\n";
    return kOk;
  }

  auto& os = out.stream();
  std::size_t nw = 4;
  for (const auto& r : ranked) nw = std::max(nw, r.name.size());
  os << "measure: " << to_string(measure) << "\n";
  os << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(nw) + 2) << "name" << "value\n";
  for (const auto& r : ranked) {
    os << std::left << std::setw(6) << (std::to_string(r.rank) + (r.tied ? "=" : ""))
       << std::setw(static_cast<int>(nw) + 2) << r.name << fixed(r.value) << "\n";
  }
  os << "\nweights\n" << std::left << std::setw(static_cast<int>(label_width(axioms)) + 2) << "subset";
  for (const auto& r : ranked) os << std::setw(std::max<int>(static_cast<int>(r.name.size()), 9) + 2) << r.name;
  os << "\n";
  std::vector<SubsetVector> weights;
  for (const auto& r : ranked) weights.push_back(evaluate(measure, u, entries[r.input_index].collection, opt.tol).weights);
  for (Mask s = 1; s <= axioms.full(); ++s) {
    os << std::left << std::setw(static_cast<int>(label_width(axioms)) + 2) << axioms.name_of(s);
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      os << std::setw(std::max<int>(static_cast<int>(ranked[k].name.size()), 9) + 2) << fixed(weights[k][s]);
    }
    os << "\n";
  }
  return kOk;
}

int cmd_incompat(const Common& opt, const std::string& path, const std::string& method_name) {
  const auto method = parse_allocation_method(method_name);
  const auto c = io::collection_from_json(io::read_json_file(path));
  Output out(opt.out);
  if (!is_member(c, opt.tol).feasible) return infeasible(out, opt, c, path);
  const auto a = method == AllocationMethod::shapley ? shapley(c, opt.tol) : banzhaf(c);
  const double violation = 1.0 - c[c.p().full()];
  const auto& axioms = c.axioms();

  if (opt.json()) {
    ordered_json doc;
    doc["method"] = std::string(to_string(method));
    ordered_json values = ordered_json::object();
    for (int i = 0; i < axioms.size(); ++i) values[axioms.label(i)] = a.values[static_cast<std::size_t>(i)];
    doc["values"] = std::move(values);
    doc["total"] = a.total;
    doc["one_minus_p_all"] = violation;
    out.stream() << doc.dump(2) << "\n";
    return kOk;
  }
  auto& os = out.stream();
  std::size_t w = 5;
  for (const auto& l : axioms.labels()) w = std::max(w, l.size());
  os << "method: " << to_string(method) << "\n";
  for (int i = 0; i < axioms.size(); ++i) {
    os << "  " << std::left << std::setw(static_cast<int>(w)) << axioms.label(i) << "  "
       << fixed(a.values[static_cast<std::size_t>(i)]) << "\n";
  }
  os << "  " << std::left << std::setw(static_cast<int>(w)) << "total" << "  " << fixed(a.total) << "\n";
  os << "1 - p_A: " << fixed(violation) << "\n";
  return kOk;
}

unsigned thread_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("AXIOMETER_THREADS");
  if (!env || !*env) return hw;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0) throw ParseError("AXIOMETER_THREADS must be a positive integer");
  return static_cast<unsigned>(std::min<unsigned long>(v, 256));
}

int cmd_simulate(const Common& opt, const std::string& path, bool exact, std::optional<std::uint64_t> seed) {
  auto ex = io::experiment_from_json(io::read_json_file(path));
  if (seed) ex.seed = *seed;
  Output out(opt.out);
  auto& os = out.stream();
  if (exact) {
    const auto c = enumerate_collection(ex.rule, ex.axioms, ex.m, ex.n, ex.sampler);
    if (opt.json()) {
      os << io::exact_to_json(c, ex).dump(2) << "\n";
      return kOk;
    }
    os << "exact enumeration: " << to_string(ex.rule.kind) << ", m=" << ex.m << ", n=" << ex.n << ", "
       << sampler_tag(ex.sampler) << "\n";
    const auto w = static_cast<int>(label_width(c.axioms()));
    for (Mask s = 1; s <= c.axioms().full(); ++s) {
      os << "  " << std::left << std::setw(w) << c.axioms().name_of(s) << "  " << fixed(c[s]) << "\n";
    }
    return kOk;
  }
  const auto est = estimate_collection(ex, thread_count());
  if (opt.json()) {
    os << io::estimated_to_json(est, ex).dump(2) << "\n";
    return kOk;
  }
  const auto& axioms = est.collection.axioms();
  const auto w = static_cast<int>(label_width(axioms));
  os << "estimate: " << to_string(ex.rule.kind) << ", m=" << ex.m << ", n=" << ex.n << ", " << sampler_tag(ex.sampler)
     << ", N=" << est.samples << ", seed=" << est.seed << "\n";
  os << "  " << std::left << std::setw(w) << "subset" << "  " << std::setw(10) << "p" << "stderr\n";
  for (Mask s = 1; s <= axioms.full(); ++s) {
    os << "  " << std::left << std::setw(w) << axioms.name_of(s) << "  " << std::setw(10) << fixed(est.collection[s])
       << fixed(est.standard_error[s]) << "\n";
  }
  return kOk;
}

int cmd_compare(const Common& opt, const std::string& capacity_path, const std::string& f_path,
                const std::string& g_path, const std::string& criterion_name, double alpha,
                const std::string& measure_name) {
  const auto criterion = parse_criterion(criterion_name);
  const auto measure = parse_measure(measure_name);
  const auto u = io::capacity_from_json(io::read_json_file(capacity_path));
  const auto f = io::family_from_json(io::read_json_file(f_path), opt.tol);
  const auto g = io::family_from_json(io::read_json_file(g_path), opt.tol);
  const auto r = compare(criterion, u, f, g, alpha, measure);
  Output out(opt.out);

  if (opt.json()) {
    ordered_json doc;
    doc["criterion"] = std::string(to_string(criterion));
    doc["measure"] = std::string(to_string(measure));
    if (criterion == Criterion::alpha_maxmin) {
      doc["alpha"] = alpha;
      doc["score_f"] = alpha_maxmin_score(u, f, alpha, measure);
      doc["score_g"] = alpha_maxmin_score(u, g, alpha, measure);
    }
    doc["verdict"] = std::string(to_string(r.verdict));
    doc["models_f"] = f.model_names();
    doc["values_f"] = r.values_f;
    doc["models_g"] = g.model_names();
    doc["values_g"] = r.values_g;
    out.stream() << doc.dump(2) << "\n";
    return kOk;
  }
  auto& os = out.stream();
  os << "criterion: " << to_string(criterion);
  if (criterion == Criterion::alpha_maxmin) os << " (alpha = " << alpha << ")";
  os << ", measure: " << to_string(measure) << "\n";
  auto print_family = [&](const char* tag, const CollectionFamily& fam, const std::vector<double>& values) {
    std::size_t w = 0;
    for (const auto& name : fam.model_names()) w = std::max(w, name.size());
    os << tag << ":\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
      os << "  " << std::left << std::setw(static_cast<int>(w)) << fam.model_names()[k] << "  " << fixed(values[k])
         << "\n";
    }
  };
  print_family("F", f, r.values_f);
  print_family("G", g, r.values_g);
  if (criterion == Criterion::alpha_maxmin) {
    os << "score F: " << fixed(alpha_maxmin_score(u, f, alpha, measure))
       << "  score G: " << fixed(alpha_maxmin_score(u, g, alpha, measure)) << "\n";
  }
  os << "verdict: F is " << to_string(r.verdict) << (r.verdict == Verdict::better || r.verdict == Verdict::worse ? " than G" : "")
     << (r.verdict == Verdict::incomparable || r.verdict == Verdict::equivalent ? " to G" : "") << "\n";
  return kOk;
}

void add_common(CLI::App* cmd, Common& opt) {
  cmd->add_option("--tol", opt.tol, "Feasibility tolerance")->default_val(kDefaultTolerance)->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table"}))->default_val("table");
  cmd->add_option("--out", opt.out, "Write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measure how well rules satisfy combinations of axioms."};
  app.require_subcommand(1);
  Common opt;

  std::string file;
  auto* validate_cmd = app.add_subcommand("validate", "Check that a collection is admissible");
  validate_cmd->add_option("collection", file, "Collection JSON")->required();
  add_common(validate_cmd, opt);

  std::string capacity;
  std::vector<std::string> collections;
  std::string measure = "moebius";
  auto* perf_cmd = app.add_subcommand("perf", "Score and rank collections under a capacity");
  perf_cmd->add_option("capacity", capacity, "Capacity JSON")->required();
  perf_cmd->add_option("collections", collections, "Collection JSON files")->required();
  perf_cmd->add_option("--measure", measure, "moebius | weighted_sum | min_diff")
      ->check(CLI::IsMember({"moebius", "weighted_sum", "min_diff"}));
  add_common(perf_cmd, opt);

  std::string method = "shapley";
  auto* incompat_cmd = app.add_subcommand("incompat", "Allocate the overall violation across axioms");
  incompat_cmd->add_option("collection", file, "Collection JSON")->required();
  incompat_cmd->add_option("--method", method, "shapley | banzhaf")->check(CLI::IsMember({"shapley", "banzhaf"}));
  add_common(incompat_cmd, opt);

  bool exact = false;
  std::optional<std::uint64_t> seed;
  auto* simulate_cmd = app.add_subcommand("simulate", "Estimate a collection from an experiment spec");
  simulate_cmd->add_option("experiment", file, "Experiment JSON")->required();
  simulate_cmd->add_flag("--exact", exact, "Enumerate every profile tuple instead of sampling");
  simulate_cmd->add_option("--seed", seed, "Override the spec's seed");
  add_common(simulate_cmd, opt);

  std::string family_f;
  std::string family_g;
  std::string criterion = "max_and_min";
  double alpha = 0.5;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two rules across probability models");
  compare_cmd->add_option("capacity", capacity, "Capacity JSON")->required();
  compare_cmd->add_option("family_f", family_f, "Family JSON for rule F")->required();
  compare_cmd->add_option("family_g", family_g, "Family JSON for rule G")->required();
  compare_cmd->add_option("--criterion", criterion, "alpha_maxmin | max_and_min | pointwise | min_vs_max")
      ->check(CLI::IsMember({"alpha_maxmin", "max_and_min", "pointwise", "min_vs_max"}));
  compare_cmd->add_option("--alpha", alpha, "Weight on the best case for alpha_maxmin")->check(CLI::Range(0.0, 1.0));
  compare_cmd->add_option("--measure", measure, "moebius | weighted_sum | min_diff")
      ->check(CLI::IsMember({"moebius", "weighted_sum", "min_diff"}));
  add_common(compare_cmd, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*validate_cmd) return cmd_validate(opt, file);
    if (*perf_cmd) return cmd_perf(opt, capacity, collections, measure);
    if (*incompat_cmd) return cmd_incompat(opt, file, method);
    if (*simulate_cmd) return cmd_simulate(opt, file, exact, seed);
    if (*compare_cmd) return cmd_compare(opt, capacity, family_f, family_g, criterion, alpha, measure);
  } catch (const InfeasibleCollectionError& e) {
    std::cerr << "axiometer: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SizeError& e) {
    std::cerr << "axiometer: " << e.what() << "\n";
    return *simulate_cmd ? kTooLarge : kBadInput;
  } catch (const Error& e) {
    std::cerr << "axiometer: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
