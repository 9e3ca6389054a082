// clusterforge — command-line front end for the bipartite-cluster /
// multimode-squeezing toolkit.
//
// Exit codes: 0 success, 1 I/O or format error, 2 domain rejection
// (NotBipartite / RankDeficient), 3 verification failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterforge/extraction.hpp"
#include "clusterforge/gaussian.hpp"
#include "clusterforge/graph.hpp"
#include "clusterforge/io.hpp"
#include "clusterforge/synthesis.hpp"

namespace cf = clusterforge;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitDomain = 2;
constexpr int kExitVerification = 3;

struct Options {
  std::string input;
  std::string tms;
  std::string output;
  std::string freedom = "identity";
  std::string format = "json";
  double alpha = 3.0;
  std::string alphas;
  double tol = cf::kDefaultRankTol;
  std::string demo_name;
  int demo_size = 4;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cf::Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void emit(const Options& opt, const std::string& content) {
  if (opt.output.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw cf::Error("cannot write " + opt.output);
  out << content;
}

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string matrix_rows(const cf::Matrix& m, const std::string& indent) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out += indent;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      out += fmt(m(i, j));
      if (j + 1 < m.cols()) out += ' ';
    }
    out += '\n';
  }
  return out;
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> alphas;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      alphas.push_back(v);
    } catch (const std::exception&) {
      throw cf::InvalidParam("cannot parse alpha value '" + item + "'");
    }
  }
  if (alphas.empty()) throw cf::InvalidParam("--alphas needs at least one value");
  return alphas;
}

cf::SynthesisFreedom make_freedom(const Options& opt, const cf::Matrix& cross_block) {
  const int l = static_cast<int>(cross_block.rows());
  const int m = static_cast<int>(cross_block.cols());
  if (opt.freedom == "identity") return cf::SynthesisFreedom::identity(l, m);
  if (opt.freedom == "paper-half") return cf::SynthesisFreedom::uniform(l, m, 0.5);
  if (opt.freedom.rfind("file=", 0) == 0) {
    const auto f = cf::parse_freedom(read_file(opt.freedom.substr(5)));
    if (f.plus_factor.rows() != l || f.minus_factor.rows() != m)
      throw cf::DimensionMismatch("freedom file does not match the partition sizes");
    return f;
  }
  throw cf::InvalidParam("unknown freedom preset '" + opt.freedom + "'");
}

// Reindexes a canonical-order report back to the node order of the input
// graph, so files and tables always speak the user's labels.
cf::NullifierReport to_original_order(const cf::NullifierReport& canonical,
                                      const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  cf::NullifierReport out;
  out.alpha = canonical.alpha;
  out.max_variance = canonical.max_variance;
  out.variances.resize(n);
  out.covariance.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.variances[i] = canonical.variances[perm[i]];
    for (int j = 0; j < n; ++j)
      out.covariance(i, j) = canonical.covariance(perm[i], perm[j]);
  }
  return out;
}

struct CanonicalSystem {
  cf::ClusterGraph graph;           // canonical block order
  cf::BipartitePartition original;  // partition of the input graph
  cf::BipartitePartition canonical;
  cf::TmsGraph coupling;            // canonical order
};

// Loads the cluster graph, canonicalizes it, and pairs it with a coupling
// matrix: the TMS file's (which must share the input graph's mode numbering)
// or a freshly synthesized one.
CanonicalSystem load_system(const Options& opt) {
  const cf::ClusterGraph input = cf::parse_graph(read_file(opt.input));
  cf::BipartitePartition p = cf::bipartite_partition(input);
  auto [canonical_graph, cross_block] = cf::canonical_permute(input, p);

  std::optional<cf::TmsGraph> coupling;
  if (!opt.tms.empty()) {
    const cf::TmsGraph original = cf::parse_tms(read_file(opt.tms));
    if (original.size() != input.size())
      throw cf::DimensionMismatch("graph and coupling files disagree on the mode count");
    const int n = original.size();
    cf::Matrix permuted(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        permuted(p.perm[i], p.perm[j]) = original.matrix()(i, j);
    coupling.emplace(std::move(permuted));
  } else {
    coupling.emplace(
        cf::synthesize_tms(cross_block, make_freedom(opt, cross_block), opt.tol));
  }
  return {std::move(canonical_graph), std::move(p),
          cf::partition_for_block(cross_block), std::move(*coupling)};
}

int cmd_partition(const Options& opt) {
  const cf::ClusterGraph g = cf::parse_graph(read_file(opt.input));
  const cf::BipartitePartition p = cf::bipartite_partition(g);
  cf::canonical_permute(g, p);  // exercises the internal consistency checks

  if (opt.format == "text") {
    std::string out;
    out += "n: " + std::to_string(p.size()) + "\n";
    out += "L: " + std::to_string(p.plus_count()) + "\n";
    out += "plus:";
    for (int v : p.plus_set) out += ' ' + std::to_string(v + 1);
    out += "\nminus:";
    for (int v : p.minus_set) out += ' ' + std::to_string(v + 1);
    out += "\nperm:";
    for (int v : p.perm) out += ' ' + std::to_string(v + 1);
    out += "\nA0:\n" + matrix_rows(p.cross_block, "  ");
    emit(opt, out);
  } else {
    emit(opt, cf::serialize_partition(p));
  }
  return kExitOk;
}

int cmd_synthesize(const Options& opt) {
  const cf::ClusterGraph input = cf::parse_graph(read_file(opt.input));
  const cf::BipartitePartition p = cf::bipartite_partition(input);
  auto [canonical_graph, cross_block] = cf::canonical_permute(input, p);

  const cf::SynthesisFreedom freedom = make_freedom(opt, cross_block);
  const auto [g_plus, g_minus] = cf::tms_psd_parts(cross_block, freedom, opt.tol);
  const cf::TmsGraph canonical = cf::synthesize_tms(cross_block, freedom, opt.tol);

  const double g_norm = cf::spectral_norm(canonical.matrix());
  const double orthogonality = cf::orthogonality_residual(cross_block, g_plus, g_minus);
  std::vector<std::pair<double, double>> sufficiency;
  for (double alpha : {1.0, 3.0, 5.0})
    sufficiency.emplace_back(
        alpha, cf::sufficiency_residual(canonical_graph, canonical, alpha));

  const bool verified = orthogonality <= 1e-10 * std::max(1.0, g_norm) &&
                        sufficiency.back().second < sufficiency.front().second;

  // write the coupling in the input graph's own mode numbering
  const int n = input.size();
  cf::Matrix original(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      original(i, j) = canonical.matrix()(p.perm[i], p.perm[j]);
  const cf::TmsGraph output_graph{std::move(original)};

  if (opt.format == "text") {
    std::string out = "n: " + std::to_string(n) + "\nG:\n" +
                      matrix_rows(output_graph.matrix(), "  ");
    out += "orthogonality residual: " + fmt(orthogonality) + "\n";
    for (auto [alpha, r] : sufficiency)
      out += "sufficiency residual (alpha=" + fmt(alpha) + "): " + fmt(r) + "\n";
    out += std::string("verification: ") + (verified ? "PASS" : "FAIL") + "\n";
    emit(opt, out);
  } else {
    json j = json::parse(cf::serialize_tms(output_graph));
    json checks;
    checks["orthogonality_residual"] = orthogonality;
    checks["sufficiency"] = json::array();
    for (auto [alpha, r] : sufficiency)
      checks["sufficiency"].push_back({{"alpha", alpha}, {"residual", r}});
    j["verification"] = std::move(checks);
    emit(opt, j.dump());
  }

  if (!verified) {
    std::cerr << "clusterforge: synthesized coupling failed its verification block\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_extract(const Options& opt) {
  const cf::TmsGraph g = cf::parse_tms(read_file(opt.input));
  const cf::ExtractionResult result = cf::extract_cluster(g, opt.tol);
  const double residual = cf::resynthesis_residual(g, result);

  if (opt.format == "text") {
    std::string out;
    out += "n: " + std::to_string(g.size()) + "\n";
    out += "L: " + std::to_string(result.plus_count) + "\n";
    out += "perm:";
    for (int v : result.perm) out += ' ' + std::to_string(v + 1);
    out += "\nA0:\n" + matrix_rows(result.cross_block, "  ");
    out += "B:\n" + matrix_rows(result.plus_factor, "  ");
    out += "C:\n" + matrix_rows(result.minus_factor, "  ");
    out += "resynthesis residual: " + fmt(residual) + "\n";
    emit(opt, out);
  } else {
    json j = json::parse(cf::serialize_extraction(result));
    j["residual"] = residual;
    emit(opt, j.dump());
  }

  if (residual > 1e-6) {
    std::cerr << "clusterforge: resynthesis residual " << residual
              << " exceeds 1e-6\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_simulate(const Options& opt) {
  if (opt.alpha < 0) throw cf::InvalidParam("alpha must be nonnegative");
  const CanonicalSystem system = load_system(opt);
  const cf::NullifierReport canonical = cf::nullifier_report(
      system.graph, system.canonical, system.coupling, opt.alpha);
  const cf::NullifierReport report = to_original_order(canonical, system.original.perm);

  if (opt.format == "csv") {
    emit(opt, cf::sweep_to_csv({report}));
  } else if (opt.format == "text") {
    std::string out = "alpha: " + fmt(report.alpha) + "\n";
    for (size_t i = 0; i < report.variances.size(); ++i)
      out += "var(" + std::to_string(i + 1) + "): " + fmt(report.variances[i]) + "\n";
    out += "max variance: " + fmt(report.max_variance) + "\n";
    emit(opt, out);
  } else {
    emit(opt, cf::serialize_report(report));
  }
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  const std::vector<double> alphas = parse_alpha_list(opt.alphas);
  const CanonicalSystem system = load_system(opt);
  const cf::AlphaSweep sweep =
      cf::sweep_alpha(system.graph, system.canonical, system.coupling, alphas);

  std::vector<cf::NullifierReport> reports;
  reports.reserve(sweep.reports.size());
  for (const auto& r : sweep.reports)
    reports.push_back(to_original_order(r, system.original.perm));

  if (opt.format == "csv") {
    emit(opt, cf::sweep_to_csv(reports));
    if (sweep.decay_rate)
      std::cerr << "clusterforge: fitted decay rate " << fmt(*sweep.decay_rate) << "\n";
  } else if (opt.format == "text") {
    std::string out = pad("alpha", 11) + "max_variance\n";
    for (const auto& r : reports)
      out += pad(fmt(r.alpha), 11) + fmt(r.max_variance) + "\n";
    out += sweep.decay_rate ? "fitted decay rate: " + fmt(*sweep.decay_rate) + "\n"
                            : "fitted decay rate: n/a\n";
    emit(opt, out);
  } else {
    json j;
    j["alphas"] = alphas;
    if (sweep.decay_rate) j["decay_rate"] = *sweep.decay_rate;
    else j["decay_rate"] = nullptr;
    j["reports"] = json::array();
    for (const auto& r : reports)
      j["reports"].push_back(json::parse(cf::serialize_report(r)));
    emit(opt, j.dump());
  }
  return kExitOk;
}

// demo pipelines --------------------------------------------------------------

struct DemoSystem {
  cf::ClusterGraph graph;
  cf::BipartitePartition partition;
  cf::TmsGraph coupling;
  std::string description;
};

DemoSystem demo_square() {
  const double s = 1.0 / std::sqrt(2.0);
  cf::Matrix block(2, 2);
  block << -s, s, s, s;
  cf::ClusterGraph graph = cf::ClusterGraph::from_cross_block(block);
  cf::TmsGraph coupling(graph.adjacency());  // the named coupling: G = A
  return {std::move(graph), cf::partition_for_block(block), std::move(coupling),
          "square cluster, named coupling G = A"};
}

DemoSystem demo_ghz4() {
  cf::ClusterGraph star = cf::generate_star(4);
  cf::BipartitePartition p = cf::bipartite_partition(star);
  cf::TmsGraph k4(cf::generate_complete(4).adjacency());
  return {std::move(star), std::move(p), std::move(k4),
          "star cluster from the complete squeezing graph"};
}

DemoSystem demo_generated(const std::string& kind, int size) {
  cf::ClusterGraph graph =
      kind == "star" ? cf::generate_star(size) : cf::generate_chain(size);
  cf::BipartitePartition p = cf::bipartite_partition(graph);
  auto [canonical, block] = cf::canonical_permute(graph, p);
  cf::TmsGraph coupling = cf::synthesize_tms(
      block, cf::SynthesisFreedom::identity(static_cast<int>(block.rows()),
                                            static_cast<int>(block.cols())));
  return {std::move(canonical), cf::partition_for_block(block), std::move(coupling),
          kind + "(" + std::to_string(size) + ") cluster, identity freedom"};
}

int cmd_demo(const Options& opt) {
  std::string name = opt.demo_name;
  int size = opt.demo_size;
  const auto paren = name.find('(');
  if (paren != std::string::npos && name.back() == ')') {
    try {
      size = std::stoi(name.substr(paren + 1, name.size() - paren - 2));
    } catch (const std::exception&) {
      throw cf::InvalidParam("cannot parse demo size in '" + name + "'");
    }
    name = name.substr(0, paren);
  }

  std::string out;
  bool pass = true;
  std::string verdict_detail;

  if (name == "square") {
    const DemoSystem d = demo_square();
    out += "demo: " + d.description + "\n";
    out += pad("alpha", 11) + pad("max_variance", 15) + "target 2e^-2a\n";
    double worst = 0.0;
    for (int a = 0; a <= 5; ++a) {
      const auto r = cf::nullifier_report(d.graph, d.partition, d.coupling, a);
      const double target = 2.0 * std::exp(-2.0 * a);
      for (double v : r.variances)
        worst = std::max(worst, std::abs(v - target) / target);
      out += pad(fmt(a), 11) + pad(fmt(r.max_variance), 15) + fmt(target) + "\n";
    }
    pass = worst <= 1e-9;
    verdict_detail = "worst relative deviation " + fmt(worst) + " (threshold 1e-09)";
  } else if (name == "ghz4") {
    const DemoSystem d = demo_ghz4();
    out += "demo: " + d.description + "\n";
    out += pad("alpha", 11) + "max_variance\n";
    double previous = std::numeric_limits<double>::infinity();
    double final_max = 0.0;
    bool decreasing = true;
    for (int a = 0; a <= 10; ++a) {
      const auto r = cf::nullifier_report(d.graph, d.partition, d.coupling, a);
      decreasing = decreasing && r.max_variance < previous;
      previous = r.max_variance;
      final_max = r.max_variance;
      out += pad(fmt(a), 11) + fmt(r.max_variance) + "\n";
    }
    pass = decreasing && final_max < 1e-6;
    verdict_detail = "max variance at alpha=10 is " + fmt(final_max) +
                     " (threshold 1e-06), " +
                     (decreasing ? "strictly decreasing" : "NOT decreasing");
  } else if (name == "star" || name == "chain") {
    const DemoSystem d = demo_generated(name, size);
    out += "demo: " + d.description + "\n";
    out += pad("alpha", 11) + "max_variance\n";
    const std::vector<double> alphas{0, 1, 2, 3, 4, 5};
    const cf::AlphaSweep sweep =
        cf::sweep_alpha(d.graph, d.partition, d.coupling, alphas);
    bool decreasing = true;
    for (size_t k = 0; k < sweep.reports.size(); ++k) {
      const auto& r = sweep.reports[k];
      if (k > 0)
        decreasing = decreasing && r.max_variance < sweep.reports[k - 1].max_variance;
      out += pad(fmt(r.alpha), 11) + fmt(r.max_variance) + "\n";
    }
    const double rate = sweep.decay_rate.value_or(0.0);
    out += "fitted decay rate: " + fmt(rate) + "\n";
    pass = decreasing && rate < -0.1;
    verdict_detail = "decay rate " + fmt(rate) + " (threshold -0.1), " +
                     (decreasing ? "strictly decreasing" : "NOT decreasing");
  } else {
    throw cf::InvalidParam("unknown demo '" + name +
                           "' (available: square, ghz4, star, chain)");
  }

  out += std::string("result: ") + (pass ? "PASS" : "FAIL") + " - " + verdict_detail + "\n";
  emit(opt, out);
  return pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bipartite CV cluster graphs <-> single-OPO squeezing matrices"};
  app.require_subcommand(1);
  Options opt;

  const char* env_tol = std::getenv("CLUSTERFORGE_TOL");
  if (env_tol != nullptr) {
    try {
      size_t used = 0;
      const std::string text(env_tol);
      opt.tol = std::stod(text, &used);
      if (used != text.size() || opt.tol <= 0) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      std::cerr << "clusterforge: invalid CLUSTERFORGE_TOL value\n";
      return kExitIo;
    }
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", opt.input, "input file")->required();
    cmd->add_option("--output,-o", opt.output, "output file (default: stdout)");
    cmd->add_option("--format", opt.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    cmd->add_option("--tol", opt.tol, "numerical tolerance override");
  };

  CLI::App* partition = app.add_subcommand("partition", "two-color a cluster graph");
  add_common(partition);

  CLI::App* synthesize =
      app.add_subcommand("synthesize", "build a squeezing matrix for a cluster graph");
  add_common(synthesize);
  synthesize->add_option("--freedom", opt.freedom, "identity, paper-half, or file=PATH");

  CLI::App* extract =
      app.add_subcommand("extract", "recover the cluster generated by a coupling");
  add_common(extract);

  CLI::App* simulate =
      app.add_subcommand("simulate", "nullifier variances at one squeezing strength");
  add_common(simulate);
  simulate->add_option("--tms,-g", opt.tms, "coupling file (default: synthesize)");
  simulate->add_option("--alpha", opt.alpha, "squeezing strength (default 3)");
  simulate->add_option("--freedom", opt.freedom, "identity, paper-half, or file=PATH");

  CLI::App* sweep = app.add_subcommand("sweep", "nullifier variances over an alpha list");
  add_common(sweep);
  sweep->add_option("--tms,-g", opt.tms, "coupling file (default: synthesize)");
  sweep->add_option("--alphas", opt.alphas, "comma-separated ascending list")->required();
  sweep->add_option("--freedom", opt.freedom, "identity, paper-half, or file=PATH");

  CLI::App* demo = app.add_subcommand("demo", "built-in end-to-end pipelines");
  demo->add_option("name", opt.demo_name, "square, ghz4, star[(n)], chain[(n)]")
      ->required();
  demo->add_option("--n", opt.demo_size, "node count for star/chain (default 4)");
  demo->add_option("--output,-o", opt.output, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitIo;
  }

  try {
    if (partition->parsed()) return cmd_partition(opt);
    if (synthesize->parsed()) return cmd_synthesize(opt);
    if (extract->parsed()) return cmd_extract(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (sweep->parsed()) return cmd_sweep(opt);
    if (demo->parsed()) return cmd_demo(opt);
    std::cerr << "clusterforge: no command\n";
    return kExitIo;
  } catch (const cf::NotBipartite& e) {
    if (opt.format == "text") {
      std::string out = "NotBipartite: odd cycle";
      for (int v : e.odd_cycle()) out += ' ' + std::to_string(v);
      emit(opt, out + "\n");
    } else {
      json j;
      j["error"] = "NotBipartite";
      j["odd_cycle"] = e.odd_cycle();
      emit(opt, j.dump());
    }
    std::cerr << "clusterforge: " << e.what() << "\n";
    return kExitDomain;
  } catch (const cf::RankDeficient& e) {
    if (opt.format == "text") {
      emit(opt, "RankDeficient\n");
    } else {
      json j;
      j["error"] = "RankDeficient";
      emit(opt, j.dump());
    }
    std::cerr << "clusterforge: " << e.what() << "\n";
    return kExitDomain;
  } catch (const cf::Error& e) {
    std::cerr << "clusterforge: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "clusterforge: " << e.what() << "\n";
    return kExitIo;
  }
}
