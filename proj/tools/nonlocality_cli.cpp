#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nonlocality.hpp"

namespace nl = nonlocality;
using nl::Json;

namespace {

// Violations under --strict.
struct StrictFailure {};

struct Globals {
  std::uint64_t seed = 1;
  std::size_t dim = 2;
  double theta = 1.0;
  double alpha = 0.5;
  double p = 2.0;
  std::string out;
  bool strict = false;
};

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nl::Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nl::Error("cannot write " + path);
  out << text;
}

Json base_inputs(const std::string& command, const Globals& g) {
  return Json{{"command", command}, {"seed", g.seed}, {"D", g.dim}, {"theta", g.theta}, {"alpha", g.alpha},
              {"p", g.p}};
}

// Report to stdout, and the three files under --out.
void finish(const Globals& g, const nl::RunReport& report, const std::vector<nl::HistogramBin>& bins = {}) {
  const auto text = nl::emit_report(report);
  std::cout << text;
  if (g.out.empty()) return;
  std::filesystem::create_directories(g.out);
  const std::filesystem::path dir(g.out);
  write_text((dir / "report.json").string(), text);
  write_text((dir / "metrics.csv").string(), nl::metrics_csv(report.records));
  write_text((dir / "histogram.csv").string(), nl::histogram_csv(bins));
}

struct FamilySpec {
  std::string family = "surface";
  std::size_t L = 3;
  bool periodic = false;
  std::string left = "hamming";
  std::string right = "hamming";
  std::size_t bits = 8;
  std::size_t dv = 3;
  std::size_t dc = 4;
};

nl::BinaryMatrix classical_factor(const std::string& name, std::size_t L) {
  if (name == "hamming") return nl::hamming_7_4();
  if (name == "repetition") return nl::repetition_checks(L);
  return nl::parse_alist(read_text(name));
}

// `size` overrides L (surface, toric, hgp repetition) or the classical length (ldpc).
nl::StabilizerCode make_code(const FamilySpec& f, std::uint64_t seed, std::optional<std::size_t> size = {}) {
  const std::size_t L = size.value_or(f.L);
  if (f.family == "surface") return nl::surface_code(L, f.periodic);
  if (f.family == "toric") return nl::surface_code(L, true);
  if (f.family == "hgp") return nl::hypergraph_product(classical_factor(f.left, L), classical_factor(f.right, L));
  if (f.family == "ldpc") {
    const std::size_t bits = size.value_or(f.bits);
    const auto h = nl::random_regular_ldpc(bits, f.dv, f.dc, nl::derive_seed(seed, bits));
    return nl::hypergraph_product(h, h);
  }
  throw nl::Error("unknown code family: " + f.family);
}

bool family_is_periodic(const FamilySpec& f) { return f.family == "toric" || (f.family == "surface" && f.periodic); }

// Graph from either a code file or an edge list; the code comes along when there is one.
struct GraphInput {
  std::string code_path;
  std::string edges_path;
};

struct LoadedGraph {
  nl::Graph graph;
  std::optional<nl::StabilizerCode> code;
};

LoadedGraph load_graph(const GraphInput& in) {
  if (!in.edges_path.empty()) {
    if (!in.code_path.empty()) throw nl::Error("give either --code or --edges, not both");
    return {nl::parse_edge_list(read_text(in.edges_path)), std::nullopt};
  }
  auto code = nl::parse_code_file(read_text(in.code_path.empty() ? "-" : in.code_path));
  auto graph = nl::connectivity_graph(code);
  return {std::move(graph), std::move(code)};
}

void add_graph_input(CLI::App* cmd, GraphInput& in) {
  cmd->add_option("--code", in.code_path, "code file ('-' for stdin; the default)");
  cmd->add_option("--edges", in.edges_path, "edge list file instead of a code");
}

void add_family_options(CLI::App* cmd, FamilySpec& f) {
  cmd->add_option("--L", f.L, "lattice size, or repetition length for hgp factors")->check(CLI::Range(2, 1000));
  cmd->add_flag("--periodic", f.periodic, "toric boundary conditions");
  cmd->add_option("--left", f.left, "hgp factor: hamming, repetition or an alist file");
  cmd->add_option("--right", f.right, "hgp factor: hamming, repetition or an alist file");
  cmd->add_option("--bits", f.bits, "ldpc classical length");
  cmd->add_option("--dv", f.dv, "ldpc column weight");
  cmd->add_option("--dc", f.dc, "ldpc row weight");
}

Json params_json(const nl::CodeParams& p) {
  return Json{{"n", p.n}, {"k", p.k}, {"d", p.d.value}, {"d_certainty", nl::to_string(p.d.certainty)}};
}

void put_expansion(Json& rec, const nl::Graph& graph, std::uint64_t seed) {
  if (graph.vertex_count() < 2) return;
  const auto ex = nl::vertex_expansion(graph, seed);
  rec["lambda2"] = ex.lambda2;
  rec["eps_estimate"] = ex.estimate();
  rec["eps_exact"] = nl::optional_number(ex.eps_exact);
  rec["eps_lower"] = ex.eps_lower;
  rec["eps_upper"] = ex.eps_upper;
  rec["spectral_converged"] = ex.spectral_converged;
}

// ---- build ---------------------------------------------------------------

int run_build(const Globals& g, const FamilySpec& f, const std::string& output) {
  const auto code = make_code(f, g.seed);
  write_text(output, nl::write_code_file(code));
  if (!g.out.empty()) {
    nl::RunReport report;
    report.inputs = base_inputs("build", g);
    report.inputs["family"] = f.family;
    report.inputs["L"] = f.L;
    report.records.push_back(Json{{"n", code.n()},
                                  {"checks", code.check_count()},
                                  {"row_weight_max", code.row_weight_max()},
                                  {"col_weight_max", code.col_weight_max()}});
    std::filesystem::create_directories(g.out);
    const std::filesystem::path dir(g.out);
    write_text((dir / "report.json").string(), nl::emit_report(report));
    write_text((dir / "metrics.csv").string(), nl::metrics_csv(report.records));
    write_text((dir / "histogram.csv").string(), nl::histogram_csv({}));
  }
  return 0;
}

// ---- graph ---------------------------------------------------------------

int run_graph(const Globals& g, const GraphInput& in, const std::string& edges_out, std::size_t budget) {
  const auto loaded = load_graph(in);
  const auto& graph = loaded.graph;
  if (!edges_out.empty()) write_text(edges_out, nl::write_edge_list(graph));
  Json rec{{"n", graph.vertex_count()}, {"edges", graph.edge_count()}, {"max_degree", graph.max_degree()}};
  std::size_t components = 0;
  nl::component_labels(graph, &components);
  rec["components"] = components;
  rec["connected"] = components == 1;
  rec["diameter"] = components == 1 ? Json(nl::diameter(graph)) : Json(nullptr);
  if (loaded.code) {
    const auto params = nl::code_params(*loaded.code, budget);
    rec.update(params_json(params));
    rec["checks"] = loaded.code->check_count();
    rec["row_weight_max"] = loaded.code->row_weight_max();
    rec["col_weight_max"] = loaded.code->col_weight_max();
  }
  put_expansion(rec, graph, g.seed);
  nl::RunReport report;
  report.inputs = base_inputs("graph", g);
  report.inputs["distance_budget"] = budget;
  report.records.push_back(std::move(rec));
  finish(g, report);
  return 0;
}

// ---- profile -------------------------------------------------------------

int run_profile(const Globals& g, const GraphInput& in, std::vector<std::size_t> r_grid, std::size_t budget) {
  const auto loaded = load_graph(in);
  const auto& graph = loaded.graph;
  if (r_grid.empty()) r_grid = nl::default_r_grid(graph.vertex_count());
  const auto profile = nl::separation_profile(graph, r_grid, g.seed);
  nl::RunReport report;
  report.inputs = base_inputs("profile", g);
  report.inputs["r_grid"] = r_grid;
  report.fit_against = "r";
  report.fit_metrics = {"lower", "upper"};
  for (const auto& s : profile.samples) {
    report.records.push_back(Json{{"r", s.r},
                                  {"lower", s.lower},
                                  {"upper", s.upper},
                                  {"witness", s.witness},
                                  {"witness_size", s.witness_size},
                                  {"source", nl::to_string(s.source)}});
  }
  report.summary["n"] = graph.vertex_count();
  if (loaded.code && profile.at(profile.n) != nullptr) {
    const auto params = nl::code_params(*loaded.code, budget);
    report.summary.update(params_json(params));
    try {
      const auto bounds = nl::check_generalized_bounds(params, profile);
      report.summary["rho_d"] = bounds.rho_d;
      report.summary["rho_k"] = bounds.rho_k;
      if (bounds.cmax) {
        report.summary["c_max"] = bounds.cmax->c_max;
        report.summary["r0"] = bounds.cmax->r0;
      }
    } catch (const nl::Error& e) {
      report.summary["c_max_error"] = e.what();
    }
  }
  finish(g, report);
  return 0;
}

// ---- embed ---------------------------------------------------------------

nl::Embedding make_embedding(const std::string& method, const nl::Graph& graph, const Globals& g,
                             const std::string& csv, std::uint64_t seed, const FamilySpec* family = nullptr,
                             std::optional<std::size_t> size = {}) {
  if (method == "grid") return nl::grid_embedding(graph, g.dim, g.theta);
  if (method == "spectral") return nl::spectral_layout(graph, g.dim, g.theta, seed);
  if (method == "load" || method == "csv") {
    if (csv.empty()) throw nl::Error("--csv is required to load an embedding");
    auto emb = nl::load_embedding_csv(read_text(csv));
    if (emb.vertex_count() != graph.vertex_count()) {
      throw nl::Error("embedding has " + std::to_string(emb.vertex_count()) + " points for " +
                      std::to_string(graph.vertex_count()) + " vertices");
    }
    return emb;
  }
  if (method == "natural") {
    if (family == nullptr || (family->family != "surface" && family->family != "toric")) {
      throw nl::Error("natural embeddings exist only for the surface and toric families");
    }
    if (g.dim != 2) throw nl::Error("natural surface embeddings are 2-dimensional");
    return nl::natural_surface_embedding(size.value_or(family->L), family_is_periodic(*family), g.theta);
  }
  throw nl::Error("unknown embedding method: " + method);
}

Json embedding_metrics(const nl::Graph& graph, const nl::Embedding& emb, double p) {
  const auto lengths = nl::edge_length_profile(graph, emb);
  Json rec{{"n", graph.vertex_count()}, {"edges", graph.edge_count()}, {"D", emb.dimension()},
           {"theta", emb.theta()}};
  rec["stretch"] = lengths.lengths.empty() ? Json(nullptr) : Json(lengths.stretch());
  rec["delta_p"] = nl::delta_p(lengths, p).delta_p;
  if (graph.vertex_count() >= 2 && nl::is_connected(graph)) {
    const auto diam = nl::diameter(graph);
    rec["diameter"] = diam;
    if (diam >= 1) rec["packing_bound"] = nl::packing_lower_bound(graph.vertex_count(), emb.dimension(), emb.theta(), diam);
  }
  return rec;
}

int run_embed(const Globals& g, const std::string& method, const GraphInput& in, const std::string& csv,
              const std::string& output) {
  const auto loaded = load_graph(in);
  const auto emb = make_embedding(method, loaded.graph, g, csv, g.seed);
  if (!output.empty()) write_text(output, nl::write_embedding_csv(emb));
  nl::RunReport report;
  report.inputs = base_inputs("embed", g);
  report.inputs["method"] = method;
  report.records.push_back(embedding_metrics(loaded.graph, emb, g.p));
  const auto lengths = nl::edge_length_profile(loaded.graph, emb);
  finish(g, report, lengths.histogram(emb.theta()));
  return 0;
}

// ---- audit ---------------------------------------------------------------

struct AuditOptions {
  FamilySpec family;
  std::vector<std::size_t> sizes;
  std::string embedding;
  std::string csv;
  GraphInput input;
  std::vector<std::string> checks = {"theorem-main", "moment", "lemma-1"};
  std::size_t budget = 6;
  std::size_t degree = 3;
  bool profile = true;
};

bool wants(const AuditOptions& o, const std::string& check) {
  return std::find(o.checks.begin(), o.checks.end(), check) != o.checks.end();
}

void put_audit(Json& rec, const nl::BoundAudit& a) {
  std::string key = a.claim;
  std::replace(key.begin(), key.end(), '-', '_');
  rec[key + "_evaluated"] = a.evaluated;
  if (!a.evaluated) return;
  if (a.claim.rfind("moment", 0) == 0) {
    rec[key + "_required"] = a.required_value;
  } else {
    rec[key + "_required_count"] = a.required_count;
    rec[key + "_required_length"] = a.required_length;
    rec[key + "_required_length_no_log"] = a.required_length_no_log;
    rec[key + "_observed"] = a.observed_count;
    rec[key + "_observed_no_log"] = a.observed_count_no_log;
  }
  rec[key + "_ratio"] = nl::optional_number(a.ratio);
  rec[key + "_violation"] = a.violation;
}

// The ceil(n eps / 24)-th longest edge against theta n^{1/D} eps / ln n.
void put_lemma1(Json& rec, const nl::Graph& graph, const nl::EdgeLengthProfile& lengths, double theta,
                std::size_t dim, std::uint64_t seed) {
  if (graph.vertex_count() < 3 || !nl::is_connected(graph) || lengths.lengths.empty()) {
    rec["lemma1_evaluated"] = false;
    return;
  }
  const auto ex = nl::vertex_expansion(graph, seed);
  const double n = static_cast<double>(graph.vertex_count());
  const double eps = ex.estimate();
  const auto count = std::min(lengths.lengths.size(),
                              std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n * eps / 24.0 - 1e-12))));
  const double length = lengths.lengths[count - 1];
  const double required = theta * std::pow(n, 1.0 / static_cast<double>(dim)) * eps / std::log(n);
  rec["lemma1_evaluated"] = true;
  rec["eps_hat"] = eps;
  rec["lemma1_count"] = count;
  rec["lemma1_length"] = length;
  rec["lemma1_scaled"] = length * std::log(n);
  rec["lemma1_required"] = required;
  rec["lemma1_ratio"] = nl::optional_number(required > 0 ? std::optional<double>(length / required) : std::nullopt);
}

void put_profile(Json& rec, const nl::Graph& graph, const nl::CodeParams& params, std::uint64_t seed) {
  if (graph.vertex_count() < 2) return;
  const auto profile = nl::separation_profile(graph, nl::default_r_grid(graph.vertex_count()), seed);
  rec["sep_lower_n"] = profile.at(profile.n)->lower;
  rec["sep_upper_n"] = profile.at(profile.n)->upper;
  try {
    const auto bounds = nl::check_generalized_bounds(params, profile);
    rec["rho_d"] = bounds.rho_d;
    rec["rho_k"] = bounds.rho_k;
    rec["c_max"] = bounds.cmax ? Json(bounds.cmax->c_max) : Json(nullptr);
    rec["r0"] = bounds.cmax ? Json(bounds.cmax->r0) : Json(nullptr);
  } catch (const nl::Error&) {
    rec["c_max"] = nullptr;
    rec["r0"] = nullptr;
  }
}

// Audits one code (or bare graph) under one embedding; returns whether any flag fired.
bool audit_one(Json& rec, const nl::Graph& graph, const std::optional<nl::StabilizerCode>& code,
               const nl::Embedding& emb, const Globals& g, const AuditOptions& o, std::uint64_t seed) {
  rec.update(embedding_metrics(graph, emb, g.p));
  const auto lengths = nl::edge_length_profile(graph, emb);
  bool violation = false;
  if (code) {
    const auto params = nl::code_params(*code, o.budget);
    rec.update(params_json(params));
    if (wants(o, "theorem-main") && !lengths.lengths.empty()) {
      const auto audits = nl::audit_theorem_main(params, lengths, emb.dimension(), g.alpha);
      for (const auto& a : audits) put_audit(rec, a);
      violation = violation || nl::any_violation(audits);
    }
    if (wants(o, "moment")) {
      const auto audits = nl::audit_moment_bounds(params, nl::delta_p(lengths, g.p), emb.dimension());
      for (const auto& a : audits) put_audit(rec, a);
      violation = violation || nl::any_violation(audits);
    }
    if (o.profile) put_profile(rec, graph, params, nl::derive_seed(seed, 2));
  }
  if (wants(o, "lemma-1")) put_lemma1(rec, graph, lengths, emb.theta(), emb.dimension(), nl::derive_seed(seed, 1));
  rec["violation"] = violation;
  return violation;
}

int run_audit(const Globals& g, const AuditOptions& o) {
  for (const auto& c : o.checks) {
    if (c != "theorem-main" && c != "moment" && c != "lemma-1") throw nl::Error("unknown audit check: " + c);
  }
  nl::RunReport report;
  report.inputs = base_inputs("audit", g);
  report.inputs["checks"] = o.checks;
  report.inputs["distance_budget"] = o.budget;
  std::vector<nl::HistogramBin> bins;
  bool violation = false;

  if (o.sizes.empty()) {
    const auto loaded = load_graph(o.input);
    const std::string method = o.embedding.empty() ? "spectral" : o.embedding;
    report.inputs["embedding"] = method;
    const auto emb = make_embedding(method, loaded.graph, g, o.csv, g.seed);
    Json rec;
    violation = audit_one(rec, loaded.graph, loaded.code, emb, g, o, g.seed);
    bins = nl::edge_length_profile(loaded.graph, emb).histogram(emb.theta());
    report.records.push_back(std::move(rec));
  } else {
    const bool surfaces = o.family.family == "surface" || o.family.family == "toric";
    const std::string method = !o.embedding.empty() ? o.embedding : surfaces ? "natural" : "spectral";
    report.inputs["family"] = o.family.family;
    report.inputs["sizes"] = o.sizes;
    report.inputs["embedding"] = method;
    if (o.family.family == "expander") report.inputs["degree"] = o.degree;
    if (o.family.family == "surface") report.inputs["periodic"] = o.family.periodic;
    auto sizes = o.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    for (auto size : sizes) {
      const auto seed = nl::derive_seed(g.seed, size);
      std::optional<nl::StabilizerCode> code;
      nl::Graph graph;
      if (o.family.family == "expander") {
        graph = nl::random_regular_graph(size, o.degree, seed);
      } else {
        code = make_code(o.family, g.seed, size);
        graph = nl::connectivity_graph(*code);
      }
      const auto emb = make_embedding(method, graph, g, o.csv, seed, &o.family, size);
      Json rec{{"size", size}};
      violation = audit_one(rec, graph, code, emb, g, o, seed) || violation;
      bins = nl::edge_length_profile(graph, emb).histogram(emb.theta());
      report.records.push_back(std::move(rec));
    }
    report.fit_metrics = o.family.family == "expander"
                             ? std::vector<std::string>{"lemma1_length", "lemma1_scaled", "stretch"}
                             : std::vector<std::string>{"d", "stretch", "delta_p", "thm1_c1_ratio"};
  }
  report.summary["violation"] = violation;
  finish(g, report, bins);
  if (violation && g.strict) throw StrictFailure{};
  return 0;
}

// ---- stack ---------------------------------------------------------------

Json layout_summary(const nl::StackedLayout& layout, double p) {
  return Json{{"l_m", layout.l_m},
              {"delta_g", layout.delta_g},
              {"delta0", layout.delta0},
              {"grid_side", layout.grid_side},
              {"total_capacity", layout.total_capacity()},
              {"delta_p", nl::stacked_delta_p(layout, p)}};
}

int run_stack_build(const Globals& g, std::size_t l_m, std::size_t delta_g) {
  const auto layout = nl::build_stacked_layout(l_m, delta_g);
  nl::RunReport report;
  report.inputs = base_inputs("stack build", g);
  for (const auto& layer : layout.layers) {
    report.records.push_back(Json{{"l", layer.l}, {"radius", layer.radius}, {"capacity", layer.capacity}});
  }
  report.summary = layout_summary(layout, g.p);
  finish(g, report);
  return 0;
}

int run_stack_assign(const Globals& g, const FamilySpec& f, bool from_family, const std::string& code_path,
                     const std::string& method, const std::string& csv, std::optional<std::size_t> l_m) {
  if (g.dim != 2) throw nl::Error("stacked layouts are 2-dimensional; use --dim 2");
  const auto code = from_family ? make_code(f, g.seed) : nl::parse_code_file(read_text(code_path));
  const auto graph = nl::connectivity_graph(code);
  const std::string chosen = !method.empty() ? method : from_family && (f.family == "surface" || f.family == "toric")
                                                            ? "natural"
                                                            : "grid";
  const auto emb = make_embedding(chosen, graph, g, csv, g.seed, from_family ? &f : nullptr);
  std::size_t levels = 0;
  if (l_m) {
    levels = *l_m;
  } else {
    // Smallest grid that holds every point.
    double extent = 0;
    for (double c : emb.coords()) extent = std::max(extent, c);
    while (static_cast<double>(std::uint64_t{1} << levels) <= extent ||
           (std::uint64_t{1} << (2 * levels)) < code.n()) {
      ++levels;
    }
  }
  const auto layout = nl::build_stacked_layout(levels, code.row_weight_max());
  const auto a = nl::assign_to_stack(code, emb, layout);
  nl::RunReport report;
  report.inputs = base_inputs("stack assign", g);
  report.inputs["embedding"] = chosen;
  for (const auto& layer : layout.layers) {
    report.records.push_back(Json{{"l", layer.l},
                                  {"radius", layer.radius},
                                  {"capacity", layer.capacity},
                                  {"usage", a.usage[layer.l]},
                                  {"overflow", a.usage[layer.l] > layer.capacity}});
  }
  report.summary = layout_summary(layout, g.p);
  report.summary["n"] = code.n();
  report.summary["checks"] = code.check_count();
  report.summary["feasible"] = a.feasible;
  report.summary["too_wide"] = a.too_wide ? Json(*a.too_wide) : Json(nullptr);
  finish(g, report);
  if (!a.feasible && g.strict) throw StrictFailure{};
  return 0;
}

int run_stack_check(const Globals& g, std::size_t n, std::size_t k, std::size_t d, double threshold) {
  const auto c = nl::stacked_bound_check({n, k, {d, nl::Certainty::exact}}, threshold);
  nl::RunReport report;
  report.inputs = base_inputs("stack check", g);
  report.inputs["n"] = n;
  report.inputs["k"] = k;
  report.inputs["d"] = d;
  report.summary = Json{{"direct_distance", c.direct_distance}, {"direct_tradeoff", c.direct_tradeoff},
                        {"moment_distance", c.moment_distance}, {"moment_tradeoff", c.moment_tradeoff},
                        {"threshold", c.threshold},             {"flagged", c.flagged},
                        {"stackable", !c.flagged}};
  finish(g, report);
  if (c.flagged && g.strict) throw StrictFailure{};
  return 0;
}

// ---- report --------------------------------------------------------------

int run_report(const Globals& g, const std::vector<std::string>& paths, std::vector<std::string> fit,
               const std::string& against) {
  nl::RunReport report;
  report.inputs = base_inputs("report", g);
  report.inputs["sources"] = paths;
  report.fit_against = against;
  std::set<std::string> numeric;
  for (const auto& path : paths) {
    Json j;
    try {
      j = Json::parse(read_text(path));
    } catch (const Json::parse_error& e) {
      throw nl::Error(path + ": " + e.what());
    }
    if (!j.contains("records") || !j["records"].is_array()) throw nl::Error(path + ": no records array");
    for (auto rec : j["records"]) {
      rec["source"] = path;
      for (const auto& [key, value] : rec.items()) {
        if (value.is_number()) numeric.insert(key);
      }
      report.records.push_back(std::move(rec));
    }
  }
  // Stable order by the fit variable, then by input order.
  std::stable_sort(report.records.begin(), report.records.end(), [&](const Json& a, const Json& b) {
    const bool ha = a.contains(against) && a[against].is_number();
    const bool hb = b.contains(against) && b[against].is_number();
    if (ha != hb) return ha;
    return ha && a[against].get<double>() < b[against].get<double>();
  });
  if (fit.empty()) {
    for (const auto& key : numeric) {
      if (key != against) fit.push_back(key);
    }
  }
  report.fit_metrics = std::move(fit);
  finish(g, report);
  return 0;
}

std::uint64_t default_seed() {
  const char* env = std::getenv("NONLOCALITY_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (env[used] != '\0') throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw nl::Error(std::string("NONLOCALITY_SEED is not an unsigned integer: ") + env);
  }
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  try {
    g.seed = default_seed();
  } catch (const nl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Connectivity, separation and embedding metrics for quantum LDPC codes", "nonlocality"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", g.seed, "RNG seed (default: $NONLOCALITY_SEED or 1)");
  app.add_option("--dim", g.dim, "embedding dimension D")->check(CLI::Range(1, 16));
  app.add_option("--theta", g.theta, "minimum point separation")->check(CLI::PositiveNumber);
  app.add_option("--alpha", g.alpha, "alpha in (0, 1)")->check(CLI::Range(0.0, 1.0));
  app.add_option("--p", g.p, "moment order")->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "write report.json, metrics.csv and histogram.csv here");
  app.add_flag("--strict", g.strict, "exit 1 when an audit flags a violation");

  FamilySpec build_family;
  std::string build_output = "-";
  auto* build = app.add_subcommand("build", "construct a code and write its code file");
  build->add_option("family", build_family.family, "surface, toric, hgp or ldpc")
      ->required()
      ->check(CLI::IsMember({"surface", "toric", "hgp", "ldpc"}));
  add_family_options(build, build_family);
  build->add_option("--output,-o", build_output, "code file ('-' for stdout)");

  GraphInput graph_input;
  std::string edges_out;
  std::size_t budget = 6;
  auto* graph = app.add_subcommand("graph", "connectivity graph metrics of a code");
  add_graph_input(graph, graph_input);
  graph->add_option("--edges-out", edges_out, "write the edge list here");
  graph->add_option("--distance-budget", budget, "largest logical weight searched")->check(CLI::Range(1, 64));

  GraphInput profile_input;
  std::vector<std::size_t> r_grid;
  auto* profile = app.add_subcommand("profile", "separation profile over an r grid");
  add_graph_input(profile, profile_input);
  profile->add_option("--r", r_grid, "r values (default 2, 4, 8, ..., n)")->delimiter(',');
  profile->add_option("--distance-budget", budget, "largest logical weight searched")->check(CLI::Range(1, 64));

  GraphInput embed_input;
  std::string embed_method, embed_csv, embed_output;
  auto* embed = app.add_subcommand("embed", "embed a graph and report edge lengths");
  embed->add_option("method", embed_method, "grid, spectral or load")
      ->required()
      ->check(CLI::IsMember({"grid", "spectral", "load"}));
  add_graph_input(embed, embed_input);
  embed->add_option("--csv", embed_csv, "embedding CSV for 'load'");
  embed->add_option("--output,-o", embed_output, "write the embedding CSV here");

  AuditOptions audit_opts;
  auto* audit = app.add_subcommand("audit", "audit layouts against the long-range interaction bounds");
  audit->add_option("--family", audit_opts.family.family, "surface, toric, hgp, ldpc or expander")
      ->check(CLI::IsMember({"surface", "toric", "hgp", "ldpc", "expander"}));
  add_family_options(audit, audit_opts.family);
  audit->add_option("--sizes", audit_opts.sizes, "family sizes (L, classical length, or n for expander)")
      ->delimiter(',');
  add_graph_input(audit, audit_opts.input);
  audit->add_option("--embedding", audit_opts.embedding, "natural, grid, spectral or csv")
      ->check(CLI::IsMember({"natural", "grid", "spectral", "csv"}));
  audit->add_option("--csv", audit_opts.csv, "embedding CSV for --embedding csv");
  audit->add_option("--checks", audit_opts.checks, "theorem-main, moment, lemma-1")->delimiter(',');
  audit->add_option("--distance-budget", audit_opts.budget, "largest logical weight searched")
      ->check(CLI::Range(1, 64));
  audit->add_option("--degree", audit_opts.degree, "expander family degree");
  audit->add_flag("!--no-profile", audit_opts.profile, "skip separation profiles");

  auto* stack = app.add_subcommand("stack", "stacked 2D architecture");
  stack->require_subcommand(1);
  stack->fallthrough();
  std::size_t stack_lm = 3, stack_delta = 4;
  auto* stack_build = stack->add_subcommand("build", "layer radii and capacities");
  stack_build->add_option("--lm", stack_lm, "top layer index")->check(CLI::Range(0, 25));
  stack_build->add_option("--delta-g", stack_delta, "largest stabilizer weight");

  FamilySpec stack_family;
  bool stack_from_family = false;
  std::string stack_code, stack_method, stack_csv;
  std::optional<std::size_t> stack_assign_lm;
  auto* stack_assign = stack->add_subcommand("assign", "place each stabilizer on the lowest layer that fits");
  stack_assign->add_option("--code", stack_code, "code file");
  auto* fam_opt = stack_assign->add_option("--family", stack_family.family, "build the code instead of reading it")
                      ->check(CLI::IsMember({"surface", "toric", "hgp", "ldpc"}));
  add_family_options(stack_assign, stack_family);
  stack_assign->add_option("--embedding", stack_method, "natural, grid or csv")
      ->check(CLI::IsMember({"natural", "grid", "csv"}));
  stack_assign->add_option("--csv", stack_csv, "embedding CSV");
  stack_assign->add_option("--lm", stack_assign_lm, "top layer index (default: smallest grid that fits)");

  std::size_t check_n = 0, check_k = 0, check_d = 0;
  double threshold = 1.0;
  auto* stack_check = stack->add_subcommand("check", "flag parameters no stacked layout can reach");
  stack_check->add_option("--n", check_n, "qubits")->required();
  stack_check->add_option("--k", check_k, "logical qubits")->required();
  stack_check->add_option("--d", check_d, "distance")->required();
  stack_check->add_option("--threshold", threshold, "flag ratios above this")->check(CLI::PositiveNumber);

  std::vector<std::string> report_paths, report_fit;
  std::string report_against = "n";
  auto* report = app.add_subcommand("report", "merge report.json files and refit");
  report->add_option("inputs", report_paths, "report.json files")->required();
  report->add_option("--fit", report_fit, "metrics to fit (default: every numeric column)")->delimiter(',');
  report->add_option("--against", report_against, "fit variable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*build) return run_build(g, build_family, build_output);
    if (*graph) return run_graph(g, graph_input, edges_out, budget);
    if (*profile) return run_profile(g, profile_input, r_grid, budget);
    if (*embed) return run_embed(g, embed_method, embed_input, embed_csv, embed_output);
    if (*audit) {
      if (!audit_opts.sizes.empty() && (!audit_opts.input.code_path.empty() || !audit_opts.input.edges_path.empty())) {
        throw nl::Error("give either --sizes or an input graph, not both");
      }
      return run_audit(g, audit_opts);
    }
    if (*stack_build) return run_stack_build(g, stack_lm, stack_delta);
    if (*stack_assign) {
      stack_from_family = fam_opt->count() > 0;
      if (!stack_from_family && stack_code.empty()) throw nl::Error("stack assign needs --code or --family");
      return run_stack_assign(g, stack_family, stack_from_family, stack_code, stack_method, stack_csv,
                              stack_assign_lm);
    }
    if (*stack_check) return run_stack_check(g, check_n, check_k, check_d, threshold);
    if (*report) return run_report(g, report_paths, report_fit, report_against);
  } catch (const StrictFailure&) {
    return 1;
  } catch (const nl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cerr << app.help();
  return 2;
}
