// rgirth: rainbow girth toolkit CLI.
//
// Subcommands: gen, girth, rainbow-girth, directed-girth, pipeline, bounds,
// lemmas, verify. Machine output (--json) is a single JSON document on
// stdout; human output is aligned text. Exit codes: 0 success, 1 check
// failure, 2 usage error.
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/campaign.hpp"
#include "rainbow/cycle_search.hpp"
#include "rainbow/generators.hpp"
#include "rainbow/io.hpp"
#include "rainbow/reductions.hpp"

namespace {

using nlohmann::json;

struct GlobalOpts {
  std::uint64_t seed = 0;
  bool as_json = false;
  std::string scale;  // "c=<value>"
};

double parse_scale(const std::string& scale, double fallback) {
  if (scale.empty()) return fallback;
  if (scale.rfind("c=", 0) != 0) throw CLI::ValidationError("--scale expects c=<value>");
  try {
    return std::stod(scale.substr(2));
  } catch (...) {
    throw CLI::ValidationError("--scale expects c=<value> with a numeric value");
  }
}

std::vector<int> parse_steps(const std::string& csv) {
  std::vector<int> steps;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) steps.push_back(std::stoi(item));
  }
  return steps;
}

void print_certificate(const rainbow::ColoredGraph& g, const rainbow::CycleCertificate& c) {
  std::printf("cycle:");
  for (int v : c.vertices) std::printf(" %d", v);
  std::printf("\ncolors:");
  for (int id : c.edge_ids) std::printf(" %d", g.edges[id].color);
  std::printf("\n");
}

int cmd_gen(const GlobalOpts& opts, const std::string& family, long long n, long long k,
            long long K, const std::string& steps_csv, const std::string& out_path,
            const std::string& spec_out) {
  rainbow::GenSpec spec;
  spec.family = family;
  spec.n = n;
  spec.k = k;
  spec.K = K;
  spec.seed = opts.seed;
  spec.steps = parse_steps(steps_csv);
  if (family == "star-circulant" || family == "circulant")
    spec.k = static_cast<long long>(spec.steps.size());

  std::string text;
  if (rainbow::is_digraph_family(family)) {
    text = rainbow::serialize(rainbow::generate_digraph(spec));
  } else {
    text = rainbow::serialize(rainbow::generate_colored(spec));
  }
  if (out_path.empty() || out_path == "-")
    std::fputs(text.c_str(), stdout);
  else
    rainbow::write_text_file(out_path, text);
  if (!spec_out.empty()) rainbow::write_text_file(spec_out, rainbow::spec_to_json(spec).dump(2) + "\n");
  return 0;
}

int cmd_girth(const GlobalOpts& opts, const std::string& in_path) {
  const rainbow::ColoredGraph g = rainbow::load_colored_graph(in_path);
  const auto cyc = rainbow::undirected_girth(g);
  if (opts.as_json) {
    json j;
    j["girth"] = cyc ? json(cyc->length()) : json();
    if (cyc) j["certificate"] = rainbow::certificate_to_json(g, *cyc);
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  if (!cyc) {
    std::printf("none\n");
    return 0;
  }
  std::printf("%d\n", cyc->length());
  return 0;
}

int cmd_directed_girth(const GlobalOpts& opts, const std::string& in_path) {
  const rainbow::Digraph d = rainbow::load_digraph(in_path);
  const auto cyc = rainbow::directed_girth(d);
  if (opts.as_json) {
    json j;
    j["directed_girth"] = cyc ? json(cyc->length()) : json();
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  std::printf("%s\n", cyc ? std::to_string(cyc->length()).c_str() : "none");
  return 0;
}

int cmd_rainbow_girth(const GlobalOpts& opts, const std::string& in_path, int max_len,
                      long long node_budget) {
  const rainbow::ColoredGraph g = rainbow::load_colored_graph(in_path);
  rainbow::SearchLimits lim;
  lim.max_len = max_len > 0 ? max_len : g.n;
  lim.node_budget = node_budget;
  const rainbow::RainbowSearchResult res = rainbow::rainbow_girth_exact(g, lim);
  if (opts.as_json) {
    json j;
    j["status"] = res.status == rainbow::SearchStatus::found            ? "found"
                  : res.status == rainbow::SearchStatus::budget_exceeded ? "budget_exceeded"
                                                                         : "none";
    j["rainbow_girth"] = res.certificate ? json(res.certificate->length()) : json();
    j["nodes"] = res.nodes;
    if (res.certificate) j["certificate"] = rainbow::certificate_to_json(g, *res.certificate);
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  switch (res.status) {
    case rainbow::SearchStatus::found:
      std::printf("%d\n", res.certificate->length());
      break;
    case rainbow::SearchStatus::none:
      std::printf("none\n");
      break;
    case rainbow::SearchStatus::budget_exceeded:
      std::printf("budget-exceeded\n");
      break;
  }
  return 0;
}

int cmd_bounds(const GlobalOpts& opts, long long n, long long k) {
  const rainbow::BoundTable t = rainbow::bound_table(n, k);
  if (opts.as_json) {
    json j;
    j["n"] = t.n;
    j["k"] = t.k;
    j["aharoni"] = t.aharoni;
    j["shen"] = t.shen;
    j["bs_exact"] = t.bs_exact ? json(*t.bs_exact) : json();
    j["bs_cor"] = t.bs_cor ? json(*t.bs_cor) : json();
    j["res_one"] = t.res_one ? json(*t.res_one) : json();
    j["cor_one"] = t.cor_one ? json(*t.cor_one) : json();
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  std::printf("n        %lld\n", t.n);
  std::printf("k        %lld\n", t.k);
  std::printf("aharoni  %lld\n", t.aharoni);
  std::printf("shen     %lld\n", t.shen);
  auto row = [](const char* name, const std::optional<double>& v) {
    if (v)
      std::printf("%-8s %.4f\n", name, *v);
    else
      std::printf("%-8s n/a (k = 1)\n", name);
  };
  row("bs_exact", t.bs_exact);
  row("bs_cor", t.bs_cor);
  row("res_one", t.res_one);
  row("cor_one", t.cor_one);
  return 0;
}

int cmd_lemmas(const GlobalOpts& opts, long long k_lo, long long k_hi, bool variance_grid,
               long long samples) {
  const rainbow::LemmaReport rep = rainbow::check_scalar_lemmas(k_lo, k_hi);
  json vj = json::array();
  bool variance_ok = true;
  if (variance_grid) {
    for (long long k : {2LL, 5LL, 10LL, 100LL}) {
      const double t = 1e9 * static_cast<double>(k);
      for (long long r : {static_cast<long long>(t / 100) + 1, static_cast<long long>(2 * t),
                          static_cast<long long>(10 * t)}) {
        const rainbow::VarianceReport v = rainbow::variance_bound_check(k, r, 1e9, samples);
        variance_ok = variance_ok && v.pass;
        vj.push_back({{"k", k}, {"r", r}, {"max_ratio", v.max_ratio}, {"pass", v.pass}});
      }
    }
  }
  const bool all = rep.all_pass && variance_ok;
  if (opts.as_json) {
    json j;
    j["k_lo"] = rep.k_lo;
    j["k_hi"] = rep.k_hi;
    j["all_pass"] = all;
    j["lemmas"] = json::array();
    for (const auto& l : rep.lemmas)
      j["lemmas"].push_back({{"name", l.name}, {"pass", l.pass}, {"first_failure", l.first_failure}});
    if (variance_grid) j["variance_grid"] = vj;
    std::printf("%s\n", j.dump().c_str());
  } else {
    for (const auto& l : rep.lemmas) {
      if (l.pass)
        std::printf("%-32s pass\n", l.name.c_str());
      else
        std::printf("%-32s FAIL at k=%lld\n", l.name.c_str(), l.first_failure);
    }
    if (variance_grid)
      for (const auto& v : vj)
        std::printf("variance k=%-4lld r=%-14lld max_ratio=%.6f %s\n", v["k"].get<long long>(),
                    v["r"].get<long long>(), v["max_ratio"].get<double>(),
                    v["pass"].get<bool>() ? "pass" : "FAIL");
  }
  return all ? 0 : 1;
}

int cmd_pipeline(const GlobalOpts& opts, const std::string& in_path, long long k,
                 const std::string& mode, long long class_size, bool relax_colors) {
  const rainbow::ColoredGraph g = rainbow::load_colored_graph(in_path);
  rainbow::PipelineParams p;
  p.c = parse_scale(opts.scale, p.c);
  if (class_size > 0) p.min_class_size = class_size;
  p.enforce_color_count = !relax_colors;
  const rainbow::PipelineReport rep = mode == "npk"
                                          ? rainbow::pipeline_n_plus_k(g, k, p, opts.seed)
                                          : rainbow::pipeline_main(g, k, p, opts.seed);
  const json j = rainbow::report_to_json(rep, &g);
  if (opts.as_json) {
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("branch   %s\n", rep.branch.c_str());
    std::printf("route    %s\n", rep.route.c_str());
    std::printf("status   %s\n", rainbow::to_string(rep.status));
    if (!rep.reason.empty()) std::printf("reason   %s\n", rep.reason.c_str());
    if (rep.certificate) {
      std::printf("length   %d (certified bound %lld)\n", rep.certificate->length(),
                  rep.certified_bound);
      print_certificate(g, *rep.certificate);
    }
  }
  if (rep.certificate &&
      (!rainbow::verify_rainbow_cycle(g, *rep.certificate) ||
       rep.certificate->length() > rep.certified_bound))
    return 1;
  return 0;
}

int cmd_verify(const GlobalOpts& opts, const std::string& config_path, const std::string& out_path) {
  const json cfg_json = json::parse(rainbow::read_text_file(config_path));
  rainbow::CampaignConfig cfg = rainbow::config_from_json(cfg_json);
  if (!out_path.empty()) cfg.output = out_path;
  const rainbow::CampaignResult result = rainbow::run_campaign(cfg);
  if (opts.as_json) {
    json j;
    j["trials"] = result.summary.trials;
    j["checks_passed"] = result.summary.checks_passed;
    j["checks_failed"] = result.summary.checks_failed;
    j["budget_exceeded"] = result.summary.budget_exceeded;
    j["failing_trials"] = result.summary.failing_trials;
    std::printf("%s\n", j.dump().c_str());
  } else {
    std::printf("trials            %lld\n", result.summary.trials);
    std::printf("checks passed     %lld\n", result.summary.checks_passed);
    std::printf("checks failed     %lld\n", result.summary.checks_failed);
    std::printf("budget exceeded   %lld\n", result.summary.budget_exceeded);
    for (long long t : result.summary.failing_trials) std::printf("failing trial %lld\n", t);
  }
  return result.summary.checks_failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow girth toolkit"};
  app.require_subcommand(1);
  GlobalOpts opts;
  app.add_option("--seed", opts.seed, "RNG seed")->capture_default_str();
  app.add_flag("--json", opts.as_json, "machine-readable output");
  app.add_option("--scale", opts.scale, "scaled class-size constant, e.g. c=50");

  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family, steps_csv, out_path, spec_out;
  long long gn = 0, gk = 0, gK = 0;
  gen->add_option("--family", family,
                  "circulant | random-digraph | random-colored | star-circulant | star-random")
      ->required();
  gen->add_option("--n", gn, "vertex count")->required();
  gen->add_option("--k", gk, "class size / min out-degree");
  gen->add_option("--K", gK, "number of colors");
  gen->add_option("--steps", steps_csv, "circulant steps, comma separated");
  gen->add_option("--out", out_path, "output path ('-' for stdout)");
  gen->add_option("--spec-out", spec_out, "write the generator spec as JSON");

  auto* girth = app.add_subcommand("girth", "exact girth of a colored graph file");
  std::string girth_in;
  girth->add_option("--in", girth_in, "input .ecg file")->required();

  auto* dgirth = app.add_subcommand("directed-girth", "exact directed girth of a digraph file");
  std::string dgirth_in;
  dgirth->add_option("--in", dgirth_in, "input .dg file")->required();

  auto* rgirth = app.add_subcommand("rainbow-girth", "exact rainbow girth of a colored graph file");
  std::string rgirth_in;
  int max_len = 0;
  long long node_budget = 100'000'000;
  rgirth->add_option("--in", rgirth_in, "input .ecg file")->required();
  rgirth->add_option("--max-len", max_len, "length cap (default: n)");
  rgirth->add_option("--node-budget", node_budget, "search node budget")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "evaluate the bound table for (n, k)");
  long long bn = 0, bk = 0;
  bounds->add_option("--n", bn, "vertex count")->required();
  bounds->add_option("--k", bk, "class size")->required();

  auto* lemmas = app.add_subcommand("lemmas", "sweep the in-proof scalar inequalities");
  long long k_lo = 2, k_hi = 1LL << 20, samples = 1000;
  bool variance_grid = false;
  lemmas->add_option("--k-lo", k_lo, "sweep start")->capture_default_str();
  lemmas->add_option("--k-hi", k_hi, "sweep end")->capture_default_str();
  lemmas->add_flag("--variance-grid", variance_grid, "also check the variance bound grid");
  lemmas->add_option("--samples", samples, "variance sample points")->capture_default_str();

  auto* pipeline = app.add_subcommand("pipeline", "run a constructive pipeline on an instance");
  std::string pipe_in, mode = "main";
  long long pk = 1, class_size = 0;
  bool relax_colors = false;
  pipeline->add_option("--in", pipe_in, "input .ecg file")->required();
  pipeline->add_option("--k", pk, "parameter k")->required();
  pipeline->add_option("--mode", mode, "main | npk")->capture_default_str();
  pipeline->add_option("--class-size", class_size, "validation class-size override");
  pipeline->add_flag("--relax-colors", relax_colors, "accept any number of color classes");

  auto* verify = app.add_subcommand("verify", "run a verification campaign from a config file");
  std::string config_path, verify_out;
  verify->add_option("--config", config_path, "campaign config JSON")->required();
  verify->add_option("--out", verify_out, "JSONL output path override");

  // --seed/--json/--scale may appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(opts, family, gn, gk, gK, steps_csv, out_path, spec_out);
    if (girth->parsed()) return cmd_girth(opts, girth_in);
    if (dgirth->parsed()) return cmd_directed_girth(opts, dgirth_in);
    if (rgirth->parsed()) return cmd_rainbow_girth(opts, rgirth_in, max_len, node_budget);
    if (bounds->parsed()) return cmd_bounds(opts, bn, bk);
    if (lemmas->parsed()) return cmd_lemmas(opts, k_lo, k_hi, variance_grid, samples);
    if (pipeline->parsed()) return cmd_pipeline(opts, pipe_in, pk, mode, class_size, relax_colors);
    if (verify->parsed()) return cmd_verify(opts, config_path, verify_out);
  } catch (const rainbow::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == rainbow::Err::config_error || e.kind() == rainbow::Err::io_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
