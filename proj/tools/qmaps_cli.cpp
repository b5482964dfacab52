// Command-line front door: orchestrates the library modules, seeds them
// deterministically, and emits self-describing JSON/CSV artifacts.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "qmaps/cms.hpp"
#include "qmaps/metrics.hpp"
#include "qmaps/sampler.hpp"
#include "qmaps/tg.hpp"

using nlohmann::json;
using namespace qmaps;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  int genus = 1;
  long edges = 4;
  long count = 1;
  unsigned long long seed = 0;
  std::string mode = "exact";
  std::string out;
  std::string format = "json";
  long precision = 256;
  long mc_samples = 100000;
  std::string radii = "auto";
  int centers = 10;
};

Mode parse_mode(const std::string& mode) {
  return mode == "float" ? Mode::floating : Mode::exact;
}

json meta_block(const std::string& command, const Options& o) {
  json cfg = {{"genus", o.genus},       {"edges", o.edges},
              {"count", o.count},       {"mode", o.mode},
              {"format", o.format},     {"precision", o.precision},
              {"mc_samples", o.mc_samples}, {"radii", o.radii},
              {"centers", o.centers}};
  return json{{"version", kVersion},
              {"command", command},
              {"seed", o.seed},
              {"mode", o.mode},
              {"config", cfg}};
}

// --out is joined with QMAPS_OUT_DIR when relative; empty --out writes stdout
void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::string path = o.out;
  const char* dir = std::getenv("QMAPS_OUT_DIR");
  if (dir && *dir && path.front() != '/') path = std::string(dir) + "/" + path;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("IoError", "cannot open output file " + path);
  f << text;
  if (!f) throw DomainError("IoError", "write failed for " + path);
}

void emit_json(const std::string& command, const Options& o, json data) {
  json doc = {{"meta", meta_block(command, o)}, {"data", std::move(data)}};
  emit(o, doc.dump(2) + "\n");
}

void emit_csv(const std::string& command, const Options& o, const std::string& body) {
  emit(o, "# " + meta_block(command, o).dump() + "\n" + body);
}

std::vector<int> parse_radii(const Options& o, int map_radius, long n) {
  if (o.radii == "auto")
    return geometric_radius_grid(std::pow((double)n, 0.125), map_radius / 2.0, 10);
  std::vector<int> out;
  std::stringstream ss(o.radii);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

int run_enumerate(const Options& o) {
  json items = json::array();
  for (auto& t : enumerate_well_labeled_gtrees(o.genus, (int)o.edges))
    items.push_back(json::parse(gtree_to_json(t, o.genus)));
  emit_json("enumerate", o, {{"n_edges", o.edges}, {"total", items.size()},
                             {"trees", std::move(items)}});
  return 0;
}

int run_count(const Options& o) {
  json data = {{"n_edges", o.edges}, {"genus", o.genus}};
  if (parse_mode(o.mode) == Mode::exact) {
    data["gtrees"] = count_gtrees(o.genus, o.edges).get_str();
    data["quadrangulations"] = count_quadrangulations(o.genus, o.edges).get_str();
  } else {
    data["log_gtrees"] = count_gtrees_log(o.genus, o.edges);
  }
  emit_json("count", o, std::move(data));
  return 0;
}

int run_sample(const Options& o) {
  auto table = build_weight_table(o.genus, o.edges, parse_mode(o.mode));
  json items = json::array();
  for (long i = 0; i < o.count; ++i) {
    Rng rng = derive_stream(o.seed, (uint64_t)i);
    items.push_back(json::parse(gtree_to_json(sample_gtree(table, rng), o.genus)));
  }
  emit_json("sample", o, {{"trees", std::move(items)}});
  return 0;
}

int run_quadrangulate(const Options& o) {
  auto table = build_weight_table(o.genus, o.edges, parse_mode(o.mode));
  json items = json::array();
  for (long i = 0; i < o.count; ++i) {
    Rng rng = derive_stream(o.seed, (uint64_t)i);
    auto t = sample_gtree(table, rng);
    int eps = rng.below(2) ? 1 : -1;
    items.push_back(json::parse(quadrangulation_to_json(cms_forward(t, eps))));
  }
  emit_json("quadrangulate", o, {{"maps", std::move(items)}});
  return 0;
}

int run_stats(const Options& o) {
  auto table = build_weight_table(o.genus, o.edges, parse_mode(o.mode));
  std::vector<double> two_point;
  std::vector<long> radius;
  ProfileResult first_profile;
  for (long i = 0; i < o.count; ++i) {
    Rng rng = derive_stream(o.seed, (uint64_t)i);
    auto dp = build_distance_process(sample_gtree(table, rng));
    two_point.push_back(dp.d(0, dp.n) / rescale_factor(dp.n));
    auto prof = profile_and_radius(dp.pq, BasePoint::pointed);
    radius.push_back(prof.radius);
    if (i == 0) first_profile = std::move(prof);
  }
  if (o.format == "csv") {
    emit_csv("stats", o, two_point_csv(o.edges, o.seed, two_point));
    return 0;
  }
  auto summary = two_point_statistic(two_point, o.edges);
  json data = {{"n_edges", o.edges},
               {"samples", o.count},
               {"two_point", two_point},
               {"two_point_median", summary.quantile(0.5)},
               {"radius", radius},
               {"first_profile", first_profile.histogram}};
  emit_json("stats", o, std::move(data));
  return 0;
}

int run_dimension(const Options& o) {
  auto table = build_weight_table(o.genus, o.edges, parse_mode(o.mode));
  Rng rng = derive_stream(o.seed, 0);
  auto pq = cms_forward(sample_gtree(table, rng), -1);
  int radius = profile_and_radius(pq, BasePoint::pointed).radius;
  auto est = dimension_estimate(pq.map, o.centers, parse_radii(o, radius, o.edges), rng);
  if (o.format == "csv") {
    emit_csv("dimension", o, dimension_csv(est));
    return 0;
  }
  json data = {{"n_edges", o.edges},  {"slope", est.slope},
               {"per_center", est.per_center}, {"radii", est.radii},
               {"volumes", est.volumes}};
  emit_json("dimension", o, std::move(data));
  return 0;
}

int run_tg(const Options& o) {
  emit_json("tg", o, json::parse(tg_to_json(tg_closed_form(o.genus, o.precision))));
  return 0;
}

int run_check(const Options& o) {
  json data;
  json lemag = json::array();
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.5, 1.0, 2.0})
      for (double t : {0.5, 1.0, 2.0})
        lemag.push_back({{"a", a}, {"b", b}, {"t", t},
                         {"residual", check_lemag(a, b, t, 1e-8)}});
  data["lemag"] = std::move(lemag);
  data["p_bracket_residual"] = check_p_bracket(o.genus);
  Rng rng = derive_stream(o.seed, 0);
  auto [ups, se] = estimate_upsilon(o.genus, o.mc_samples, rng);
  double factor = std::pow(2.0, (3.0 * o.genus + 1) / 2) * std::pow(3.0, o.genus);
  double tg = tg_closed_form(o.genus, 128).value_d;
  data["upsilon"] = {{"estimate", ups},
                     {"std_error", se},
                     {"scaled", factor * ups},
                     {"t_g", tg},
                     {"within_3_se", std::abs(factor * ups - tg) < 3 * factor * se}};
  emit_json("check", o, std::move(data));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for random bipartite quadrangulations of genus g >= 1"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--genus", o.genus)->check(CLI::Range(1, 1000));
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--out", o.out);
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
  };
  auto* c_enum = app.add_subcommand("enumerate", "list all well-labeled g-trees");
  c_enum->add_option("--edges", o.edges);
  auto* c_count = app.add_subcommand("count", "exact or float counts");
  c_count->add_option("--edges", o.edges);
  auto* c_sample = app.add_subcommand("sample", "uniform well-labeled g-trees");
  c_sample->add_option("--edges", o.edges);
  c_sample->add_option("--count", o.count);
  auto* c_quad = app.add_subcommand("quadrangulate", "sample pointed quadrangulations");
  c_quad->add_option("--edges", o.edges);
  c_quad->add_option("--count", o.count);
  auto* c_stats = app.add_subcommand("stats", "profile, radius, two-point statistics");
  c_stats->add_option("--edges", o.edges);
  c_stats->add_option("--count", o.count);
  auto* c_dim = app.add_subcommand("dimension", "ball-growth exponent estimate");
  c_dim->add_option("--edges", o.edges);
  c_dim->add_option("--centers", o.centers);
  c_dim->add_option("--radii", o.radii);
  auto* c_tg = app.add_subcommand("tg", "closed-form t_g");
  c_tg->add_option("--precision", o.precision);
  auto* c_check = app.add_subcommand("check", "numerical cross-checks");
  c_check->add_option("--mc-samples", o.mc_samples);
  for (auto* cmd : {c_enum, c_count, c_sample, c_quad, c_stats, c_dim, c_tg, c_check})
    add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // usage problems (bad flags, out-of-range genus, ...) exit with 2
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    if (c_enum->parsed()) return run_enumerate(o);
    if (c_count->parsed()) return run_count(o);
    if (c_sample->parsed()) return run_sample(o);
    if (c_quad->parsed()) return run_quadrangulate(o);
    if (c_stats->parsed()) return run_stats(o);
    if (c_dim->parsed()) return run_dimension(o);
    if (c_tg->parsed()) return run_tg(o);
    if (c_check->parsed()) return run_check(o);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
