#include "dikin/cli.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dikin/barrier.hpp"
#include "dikin/error.hpp"
#include "dikin/polytope.hpp"
#include "dikin/verify.hpp"
#include "dikin/walk.hpp"

namespace dikin::cli {

namespace {

// Thrown for bad flags or inputs detected before any work starts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Source {
  std::string polytope_file;
  std::string gen_spec;
};

struct LoadedBody {
  Polytope polytope;
  std::optional<Vector> known_interior;
};

LoadedBody load(const Source& src) {
  try {
    if (!src.gen_spec.empty()) {
      const GeneratorSpec spec = parse_generator_spec(src.gen_spec);
      return {generate(spec), reference_point(spec)};
    }
    std::ifstream in(src.polytope_file);
    if (!in) throw UsageError("cannot read polytope file '" + src.polytope_file + "'");
    return {parse_polytope(in), std::nullopt};
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Vector parse_point(const std::string& text, Eigen::Index dim) {
  std::vector<double> coords;
  std::string token;
  std::istringstream in(text);
  while (in >> std::ws && !in.eof()) {
    std::getline(in, token, ',');
    std::istringstream tok(token);
    double v = 0.0;
    if (!(tok >> v) || !(tok >> std::ws).eof()) throw UsageError("bad coordinate '" + token + "' in --start");
    coords.push_back(v);
  }
  if (static_cast<Eigen::Index>(coords.size()) != dim) {
    throw UsageError("--start needs " + std::to_string(dim) + " comma-separated coordinates");
  }
  return Eigen::Map<Vector>(coords.data(), dim);
}

Vector start_point(const LoadedBody& body, const std::string& start_text) {
  const Polytope& p = body.polytope;
  if (!start_text.empty()) {
    Vector x = parse_point(start_text, p.dim());
    if (!contains_interior(p, x)) throw UsageError("--start is not strictly inside the polytope");
    return x;
  }
  if (body.known_interior) return *body.known_interior;
  return analytic_center(p, find_interior_point(p));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("DIKIN_SEED")) {
    std::uint64_t v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw UsageError("DIKIN_SEED must be a non-negative integer");
    return v;
  }
  return 1;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// Shortest text that reads back to the same double.
std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Opens `path` for writing, or returns `fallback` for "" / "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* file = cmd->add_option("--polytope", src.polytope_file, "Polytope file (m n header, rows a_1..a_n b)");
  auto* gen = cmd->add_option("--gen", src.gen_spec, "Generated polytope: cube:n | simplex:n | random:m,n,seed");
  file->excludes(gen);
  gen->excludes(file);
}

void require_source(const Source& src) {
  if (src.polytope_file.empty() && src.gen_spec.empty()) throw UsageError("one of --polytope or --gen is required");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian Dikin walk sampler for polytopes", "dikin"};
  app.require_subcommand(1);

  // gen
  std::string gen_spec, gen_out;
  auto* gen = app.add_subcommand("gen", "Write a generated polytope in the text format");
  gen->add_option("--spec", gen_spec, "cube:n | simplex:n | random:m,n,seed")->required();
  gen->add_option("--out", gen_out, "Output file (default: standard output)");

  // center
  Source center_src;
  std::string center_start;
  CenterOptions center_opts;
  auto* center = app.add_subcommand("center", "Print the analytic center of a polytope");
  add_source(center, center_src);
  center->add_option("--start", center_start, "Interior start point, comma-separated");
  center->add_option("--max-iter", center_opts.max_iterations, "Newton iteration budget");
  center->add_option("--tol", center_opts.tolerance, "Newton decrement tolerance");

  // sample
  Source sample_src;
  std::string sample_start, sample_out, stats_out;
  std::uint64_t steps = 10000, burn_in = 0, thin = 1;
  unsigned chains = 1;
  double radius = 0.5, laziness = 0.5;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> sample_seed;
  auto* sample = app.add_subcommand("sample", "Run the Gaussian Dikin walk and write samples as CSV");
  add_source(sample, sample_src);
  sample->add_option("--steps", steps, "Total steps per chain");
  sample->add_option("--burnin", burn_in, "Steps discarded before emitting samples");
  sample->add_option("--thin", thin, "Emit every thin-th point after burn-in");
  auto* radius_opt = sample->add_option("--radius", radius, "Proposal radius r");
  auto* eps_opt = sample->add_option("--epsilon", epsilon, "Set r from the epsilon-closeness radius formula");
  radius_opt->excludes(eps_opt);
  eps_opt->excludes(radius_opt);
  sample->add_option("--laziness", laziness, "Probability of a lazy stay");
  sample->add_option("--seed", sample_seed, "RNG seed (fallback: DIKIN_SEED)");
  sample->add_option("--chains", chains, "Independent chains, run concurrently");
  sample->add_option("--start", sample_start, "Interior start point, comma-separated");
  sample->add_option("--out", sample_out, "CSV output file (default: standard output)");
  sample->add_option("--stats", stats_out, "Write a key: value run summary to this file");

  // verify
  std::string checks;
  std::optional<std::uint64_t> verify_seed, verify_samples;
  double verify_eps = 0.5;
  auto* verify_cmd = app.add_subcommand("verify", "Run the numerical verification suite");
  verify_cmd->add_option("--checks", checks, "Comma-separated check families (default: all)");
  verify_cmd->add_option("--seed", verify_seed, "Base seed (fallback: DIKIN_SEED)");
  verify_cmd->add_option("--samples", verify_samples, "Monte-Carlo sample count for every check");
  verify_cmd->add_option("--epsilon", verify_eps, "Closeness parameter in (0, 1/2]");
  verify_cmd->add_flag_function(
      "--list", [&](std::int64_t) {
        for (const auto& n : verify::suite_check_names()) out << n << '\n';
        throw CLI::Success();
      },
      "List check families and exit");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      Polytope p = [&] {
        try {
          return generate(parse_generator_spec(gen_spec));
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
      }();
      Sink sink(gen_out, out);
      write_polytope(sink.get(), p);
      return kOk;
    }

    if (center->parsed()) {
      require_source(center_src);
      if (!(center_opts.tolerance > 0.0) || center_opts.max_iterations < 1) {
        throw UsageError("--tol must be positive and --max-iter at least 1");
      }
      const LoadedBody body = load(center_src);
      Vector x0;
      if (!center_start.empty()) {
        x0 = start_point(body, center_start);
      } else {
        x0 = body.known_interior ? *body.known_interior : find_interior_point(body.polytope);
      }
      const Vector c = analytic_center(body.polytope, x0, center_opts);
      for (Eigen::Index i = 0; i < c.size(); ++i) out << fmt("%.12g", c[i]) << '\n';
      return kOk;
    }

    if (sample->parsed()) {
      require_source(sample_src);
      WalkConfig cfg;
      try {
        cfg.radius = epsilon ? default_radius(*epsilon) : radius;
        cfg.laziness = laziness;
        cfg.burn_in = burn_in;
        cfg.thin = thin;
        cfg.seed = resolve_seed(sample_seed);
        cfg.validate();
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      if (steps < burn_in) throw UsageError("--steps must be at least --burnin");
      if (chains < 1) throw UsageError("--chains must be at least 1");
      const LoadedBody body = load(sample_src);
      Sink sink(sample_out, out);
      std::optional<Sink> stats_sink;
      if (!stats_out.empty()) stats_sink.emplace(stats_out, out);
      const Vector x0 = start_point(body, sample_start);

      const auto results = run_chains(body.polytope, x0, cfg, steps, chains);
      std::ostream& csv = sink.get();
      for (Eigen::Index i = 0; i < body.polytope.dim(); ++i) csv << (i ? "," : "") << 'x' << (i + 1);
      csv << '\n';
      ChainStats total;
      std::size_t emitted = 0;
      for (const auto& r : results) {
        total += r.stats;
        emitted += r.samples.size();
        for (const auto& s : r.samples) {
          for (Eigen::Index i = 0; i < s.size(); ++i) csv << (i ? "," : "") << fmt("%.17g", s[i]);
          csv << '\n';
        }
      }
      csv.flush();
      if (stats_sink) {
        std::ostream& st = stats_sink->get();
        st << "radius: " << shortest(cfg.radius) << '\n'
           << "laziness: " << shortest(cfg.laziness) << '\n'
           << "seed: " << cfg.seed << '\n'
           << "chains: " << chains << '\n'
           << "steps: " << total.steps << '\n'
           << "lazy_stays: " << total.lazy_stays << '\n'
           << "proposals: " << total.proposals << '\n'
           << "accepted: " << total.accepted << '\n'
           << "rejected_outside: " << total.rejected_outside << '\n'
           << "rejected_metropolis: " << total.rejected_metropolis << '\n'
           << "acceptance_rate: "
           << fmt("%.6f", total.proposals ? static_cast<double>(total.accepted) / static_cast<double>(total.proposals) : 0.0)
           << '\n'
           << "samples: " << emitted << '\n'
           << "mixing_steps_scale: " << mixing_steps(body.polytope.rows(), body.polytope.dim(), cfg.radius) << '\n';
      }
      return kOk;
    }

    if (verify_cmd->parsed()) {
      verify::SuiteOptions opts;
      if (!(verify_eps > 0.0 && verify_eps <= 0.5)) throw UsageError("--epsilon must lie in (0, 1/2]");
      opts.epsilon = verify_eps;
      opts.seed = resolve_seed(verify_seed);
      opts.samples = verify_samples;
      if (verify_samples && *verify_samples < 2) throw UsageError("--samples must be at least 2");
      std::stringstream list(checks);
      for (std::string name; std::getline(list, name, ',');) {
        if (name.empty()) continue;
        const auto& known = verify::suite_check_names();
        if (std::find(known.begin(), known.end(), name) == known.end()) throw UsageError("unknown check '" + name + "'");
        opts.checks.push_back(name);
      }
      bool all_passed = true;
      for (const auto& r : verify::run_suite(opts)) {
        out << verify::format_report(r) << '\n';
        all_passed = all_passed && r.passed;
      }
      return all_passed ? kOk : kVerifyFailed;
    }
  } catch (const UsageError& e) {
    err << "dikin: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "dikin: " << e.what() << '\n';
    return kRuntime;
  } catch (const std::exception& e) {
    err << "dikin: " << e.what() << '\n';
    return kRuntime;
  }
  return kUsage;
}

}  // namespace dikin::cli
