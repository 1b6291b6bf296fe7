// quasifold: analyze, construct, verify and plot simple convex polytopes.
//
// Exit codes: 0 success, 1 I/O error, 2 invalid input or unsupported
// request, 3 a verification threshold was missed.

#include "quasifold.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace quasifold;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string source;  // path, or builtin:NAME
  std::string input;
  std::string builtin;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  std::string out, csv, svg;
  std::optional<double> tol_roundtrip, tol_rank;
  double precision = 1e-12;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path);
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-")
    std::cout << text;
  else
    write_file(cfg.out, text);
}

PolytopeDocument load(const RunConfig& cfg) {
  std::string name = cfg.builtin, path = cfg.input;
  for (const std::string* s : {&cfg.source, &cfg.input}) {
    if (s->rfind("builtin:", 0) == 0) {
      name = s->substr(8);
      if (s == &cfg.input) path.clear();
    } else if (s == &cfg.source && !s->empty()) {
      path = *s;
    }
  }
  if (name.empty() == path.empty())
    throw Error(ErrorKind::SchemaError, "give exactly one of --input PATH or --builtin NAME");
  if (!name.empty()) {
    const auto doc = builtin_document(name);
    if (!doc) throw Error(ErrorKind::SchemaError, "unknown builtin '" + name + "' (see the examples command)");
    return parse_polytope_document(*doc);
  }
  return parse_polytope_document(read_file(path));
}

double precision_from_env() {
  const char* env = std::getenv("QUASIFOLD_PRECISION");
  if (!env || !*env) return 1e-12;
  char* end = nullptr;
  const double p = std::strtod(env, &end);
  if (*end != '\0' || !std::isfinite(p) || p <= 0 || p >= 1)
    throw Error(ErrorKind::SchemaError, std::string("QUASIFOLD_PRECISION must be a number in (0, 1), got '") + env + "'");
  return p;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_analyze(const RunConfig& cfg) {
  const auto doc = load(cfg);
  emit(cfg, dump(analysis_json(doc.polytope, cfg.precision)));
  return 0;
}

int cmd_construct(const RunConfig& cfg) {
  const auto doc = load(cfg);
  const DelzantData dd = build_construction(doc.polytope, doc.extra_generators, cfg.precision);
  emit(cfg, dump(construction_json(dd)));
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto doc = load(cfg);
  const DelzantData dd = build_construction(doc.polytope, doc.extra_generators, cfg.precision);
  VerifyConfig vc;
  vc.samples = cfg.samples;
  vc.seed = cfg.seed;
  if (cfg.tol_roundtrip) vc.tol_roundtrip = *cfg.tol_roundtrip;
  if (cfg.tol_rank) vc.tol_rank = *cfg.tol_rank;
  const VerificationReport rep = run_verification(dd, vc);
  emit(cfg, dump(verification_json(rep, vc)));
  for (const auto& f : rep.failures) std::cerr << "FAIL: " << f << "\n";
  return rep.passed() ? 0 : 3;
}

int cmd_plot(const RunConfig& cfg) {
  const auto doc = load(cfg);
  const DelzantData dd = build_construction(doc.polytope, doc.extra_generators, cfg.precision);
  std::vector<Sample> samples;
  if (cfg.samples > 0) samples = sample_level_set(dd, cfg.samples, cfg.seed);
  const auto images = moment_images(dd, samples);
  if (!cfg.csv.empty()) write_file(cfg.csv, samples_csv(samples, images, dd.n()));
  if (!cfg.svg.empty() || cfg.csv.empty()) {
    const std::string svg = polytope_svg(dd, images);
    if (cfg.svg.empty() || cfg.svg == "-")
      std::cout << svg;
    else
      write_file(cfg.svg, svg);
  }
  return 0;
}

int cmd_examples() {
  for (const auto& e : builtin_corpus()) std::cout << e.name << "\t" << e.description << "\n";
  std::cout << "teardrop-K, rugby-K\tany K in 2..99\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Delzant construction for simple convex polytopes"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto add_source = [&](CLI::App* sub) {
    sub->add_option("source", cfg.source, "polytope document path, or builtin:NAME");
    auto* in = sub->add_option("--input", cfg.input, "polytope document (JSON)");
    auto* bi = sub->add_option("--builtin", cfg.builtin, "name from the built-in corpus");
    in->excludes(bi);
    sub->add_option("--out", cfg.out, "write the report here instead of stdout");
  };
  const auto add_sampling = [&](CLI::App* sub, std::size_t min_samples) {
    sub->add_option("--samples", cfg.samples, "number of level-set samples")
        ->check(CLI::Range(min_samples, std::size_t{100000000}));
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* analyze = app.add_subcommand("analyze", "simplicity, rationality and Delzant checks");
  add_source(analyze);
  auto* construct = app.add_subcommand("construct", "run the construction and report charts");
  add_source(construct);
  auto* verify = app.add_subcommand("verify", "Monte Carlo and finite-difference verification");
  add_source(verify);
  add_sampling(verify, 1);
  verify->add_option("--tol-roundtrip", cfg.tol_roundtrip, "round-trip tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--tol-rank", cfg.tol_rank, "dPsi rank-margin threshold")->check(CLI::PositiveNumber);
  auto* plot = app.add_subcommand("plot", "SVG of the moment image (n = 2) and CSV of samples");
  add_source(plot);
  add_sampling(plot, 0);
  plot->add_option("--csv", cfg.csv, "CSV output path");
  plot->add_option("--svg", cfg.svg, "SVG output path");
  auto* examples = app.add_subcommand("examples", "list the built-in corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    cfg.precision = precision_from_env();
    if (examples->parsed()) return cmd_examples();
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (construct->parsed()) return cmd_construct(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (plot->parsed()) return cmd_plot(cfg);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
