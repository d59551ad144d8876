#include "gmmn/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "gmmn/io.hpp"
#include "gmmn/solver.hpp"
#include "gmmn/svg.hpp"
#include "gmmn/toolkit.hpp"
#include "gmmn/verifier.hpp"

namespace gmmn::cli {

namespace {

struct SolveArgs {
  std::string input, out, algo = "recursive-d", rsa = "mst";
  int jobs = 1;
  bool no_check = false;
};

struct VerifyArgs {
  std::string instance, network, out;
};

struct GenArgs {
  std::string family, out, cert, eps = "1/16";
  int k = 3;
  std::size_t n = 16;
  int d = 2;
  std::int64_t lo = -32, hi = 32;
  std::uint64_t seed = 1;
};

struct RatioArgs {
  GenArgs gen;
  std::string algos = "recursive-d,improved-2d", rsa = "mst", reference, out;
  std::vector<std::string> instances;
  int k_min = 2, k_max = 8;
  std::size_t count = 10;
};

struct RenderArgs {
  std::string instance, network, out;
  bool no_separators = false;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Algorithm algorithm_of(const std::string& name) {
  auto a = parse_algorithm(name);
  if (!a) throw ConfigError("unknown algorithm '" + name + "' (recursive-d | improved-2d)");
  return *a;
}

SteinerBackend backend_of(const std::string& name) {
  auto b = parse_backend(name);
  if (!b) throw ConfigError("unknown RSA backend '" + name + "' (mst | exact-small)");
  return *b;
}

InstanceFile load_instance(const std::string& path, std::ostream& err) {
  InstanceFile file = parse_instance(read_file(path));
  for (const auto& w : file.warnings) err << "warning: " << path << ": " << w << '\n';
  return file;
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const InstanceFile file = load_instance(a.input, err);
  SolverConfig cfg;
  cfg.algorithm = algorithm_of(a.algo);
  cfg.backend = backend_of(a.rsa);
  cfg.parallel = a.jobs > 1;
  cfg.validate(file.instance.dim);

  const auto start = std::chrono::steady_clock::now();
  const RectilinearNetwork net = solve_gmmn(file.instance, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!a.no_check) {
    const FeasibilityReport report = verify_instance(net, file.instance);
    if (!report.feasible()) {
      const auto& v = report.violations.front();
      err << "error: self-check failed: pair " << v.pair_index << ' ' << to_string(v.kind) << " ("
          << report.violations.size() << " violations)\n";
      return kInternalError;
    }
  }
  write_file(a.out, format_network(net, file.instance.dim));
  const Rational cost = net.length();
  out << "n=" << file.instance.size() << " d=" << file.instance.dim << " algo=" << to_string(cfg.algorithm)
      << " rsa=" << to_string(cfg.backend) << " cost=" << cost << " cost_approx=" << approx(cost)
      << " runtime=" << seconds_text(seconds) << "s\n";
  return kOk;
}

std::string format_report(const FeasibilityReport& report) {
  std::ostringstream os;
  os << "status " << (report.feasible() ? "feasible" : "infeasible") << '\n';
  os << "pairs " << report.pair_count << '\n';
  os << "violations " << report.violations.size() << '\n';
  for (const auto& v : report.violations) os << "violation " << v.pair_index << ' ' << to_string(v.kind) << '\n';
  return os.str();
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const InstanceFile inst = load_instance(a.instance, err);
  const NetworkFile net = parse_network(read_file(a.network));
  if (net.dim != inst.instance.dim) {
    throw ParseError(0, "network dimension " + std::to_string(net.dim) + " does not match instance dimension " +
                            std::to_string(inst.instance.dim));
  }
  const FeasibilityReport report = verify_instance(net.network, inst.instance);
  const std::string text = format_report(report);
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
    out << "status " << (report.feasible() ? "feasible" : "infeasible") << '\n';
  }
  return report.feasible() ? kOk : kInfeasible;
}

Rational epsilon_of(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad epsilon '" + text + "'");
  }
}

std::string tight_provenance(int k, const Rational& eps) {
  return "tight k=" + std::to_string(k) + " eps=" + eps.to_string();
}

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream&) {
  InstanceFile file;
  if (a.family == "tight") {
    const TightFamily fam = gen_tight(a.k, epsilon_of(a.eps));
    file.instance = fam.instance;
    file.provenance = tight_provenance(a.k, fam.epsilon);
    const std::string cert = a.cert.empty() ? a.out + ".cert" : a.cert;
    write_file(a.out, format_instance(file));
    write_file(cert, format_network(fam.certificate, 2));
    out << "family=tight pairs=" << file.instance.size() << " certificate=" << cert
        << " certificate_length=" << fam.certificate.length() << '\n';
    return kOk;
  }
  GeneratedInstance gen;
  if (a.family == "random") {
    gen = gen_random(a.n, a.d, a.lo, a.hi, a.seed);
  } else if (a.family == "mmn") {
    gen = gen_random_mmn(a.n, a.d, a.lo, a.hi, a.seed);
  } else {
    throw ConfigError("unknown family '" + a.family + "' (tight | random | mmn)");
  }
  file.instance = std::move(gen.instance);
  file.seed = gen.seed;
  file.provenance = gen.provenance;
  write_file(a.out, format_instance(file));
  out << "family=" << a.family << " pairs=" << file.instance.size() << " seed=" << gen.seed << '\n';
  return kOk;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_ratio(const RatioArgs& a, std::ostream& out, std::ostream& err) {
  struct Case {
    std::string name;
    Instance instance;
    std::optional<RectilinearNetwork> certificate;
  };
  std::vector<Case> cases;
  if (!a.instances.empty()) {
    for (const auto& path : a.instances) cases.push_back({path, load_instance(path, err).instance, std::nullopt});
  } else if (a.gen.family == "tight") {
    if (a.k_min < 0 || a.k_max < a.k_min) throw ConfigError("need 0 <= k-min <= k-max");
    const Rational eps = epsilon_of(a.gen.eps);
    for (int k = a.k_min; k <= a.k_max; ++k) {
      TightFamily fam = gen_tight(k, eps);
      cases.push_back({"tight-k" + std::to_string(k), std::move(fam.instance), std::move(fam.certificate)});
    }
  } else if (a.gen.family == "random" || a.gen.family == "mmn") {
    for (std::size_t i = 0; i < a.count; ++i) {
      const std::uint64_t seed = a.gen.seed + i;
      GeneratedInstance g = a.gen.family == "random" ? gen_random(a.gen.n, a.gen.d, a.gen.lo, a.gen.hi, seed)
                                                      : gen_random_mmn(a.gen.n, a.gen.d, a.gen.lo, a.gen.hi, seed);
      cases.push_back({a.gen.family + "-s" + std::to_string(seed), std::move(g.instance), std::nullopt});
    }
  } else {
    throw ConfigError("ratio needs --family tight|random|mmn or --instance");
  }

  std::string ref_name = a.reference;
  if (ref_name.empty()) ref_name = a.gen.family == "tight" && a.instances.empty() ? "certificate" : "lower-bound";
  const auto ref_kind = parse_reference(ref_name);
  if (!ref_kind) throw ConfigError("unknown reference '" + ref_name + "' (oracle | certificate | lower-bound)");

  std::vector<SolverConfig> configs;
  for (const auto& name : split_list(a.algos)) {
    SolverConfig cfg;
    cfg.algorithm = algorithm_of(name);
    cfg.backend = backend_of(a.rsa);
    configs.push_back(cfg);
  }
  if (configs.empty()) throw ConfigError("no algorithms given");
  for (const auto& c : cases) {
    for (const auto& cfg : configs) cfg.validate(c.instance.dim);
    if (*ref_kind == ReferenceKind::kCertificate && !c.certificate) {
      throw ConfigError("certificate reference is only available for the tight family");
    }
  }

  std::ostringstream table;
  table << "# reference=" << ref_name << '\n';
  table << "instance n d alg cost ref ratio ratio_approx flag\n";
  for (const auto& c : cases) {
    const RatioReport report = ratio_report(c.instance, configs, Reference{*ref_kind, c.certificate});
    for (const auto& row : report.rows) {
      table << c.name << ' ' << row.n << ' ' << row.d << ' ' << row.algorithm << ' ' << row.cost << ' '
            << row.reference << ' ' << row.ratio << ' ' << approx(row.ratio) << ' '
            << (row.flagged ? "below-ref" : "ok") << '\n';
    }
  }
  if (a.out.empty()) {
    out << table.str();
  } else {
    write_file(a.out, table.str());
    out << "rows=" << cases.size() * configs.size() << " out=" << a.out << '\n';
  }
  return kOk;
}

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  const InstanceFile inst = load_instance(a.instance, err);
  if (inst.instance.dim != 2) throw ConfigError("render needs d = 2");
  if (inst.instance.empty()) throw ConfigError("render needs a nonempty instance");
  std::optional<NetworkFile> net;
  if (!a.network.empty()) {
    net = parse_network(read_file(a.network));
    if (net->dim != 2) throw ParseError(0, "network is not 2D");
  }
  SvgOptions opts;
  opts.show_separators = !a.no_separators;
  write_file(a.out, render_svg(inst.instance, net ? &net->network : nullptr, opts));
  out << "wrote " << a.out << '\n';
  return kOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const InfeasibleOutput& e) {
    err << "error: infeasible output: " << e.what() << '\n';
    return kInternalError;
  } catch (const ParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::length_error& e) {
    err << "error: size cap exceeded: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::logic_error& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return kInternalError;
  }
}

void add_gen_options(CLI::App* cmd, GenArgs& g) {
  cmd->add_option("--family", g.family, "tight | random | mmn");
  cmd->add_option("--k", g.k, "tight: A(2^k - 1)");
  cmd->add_option("--eps", g.eps, "tight: epsilon as a rational")->capture_default_str();
  cmd->add_option("--n", g.n, "random: pairs; mmn: points")->capture_default_str();
  cmd->add_option("--d", g.d, "dimension")->capture_default_str();
  cmd->add_option("--lo", g.lo, "smallest coordinate")->capture_default_str();
  cmd->add_option("--hi", g.hi, "largest coordinate")->capture_default_str();
  cmd->add_option("--seed", g.seed, "std::mt19937_64 seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximate generalized minimum Manhattan networks", "gmmn"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
  solve_cmd->add_option("input", solve.input, "instance file")->required();
  solve_cmd->add_option("--algo", solve.algo, "recursive-d | improved-2d")->capture_default_str();
  solve_cmd->add_option("--rsa", solve.rsa, "mst | exact-small")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "network file to write")->required();
  solve_cmd->add_option("--jobs", solve.jobs, "worker threads (> 1 enables parallel recursion)")->capture_default_str();
  solve_cmd->add_flag("--no-check", solve.no_check, "skip the feasibility self-check");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a network against an instance");
  verify_cmd->add_option("instance", verify.instance, "instance file")->required();
  verify_cmd->add_option("network", verify.network, "network file")->required();
  verify_cmd->add_option("--out", verify.out, "report file (default: stdout)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  add_gen_options(gen_cmd, gen);
  gen_cmd->get_option("--family")->required();
  gen_cmd->add_option("--out", gen.out, "instance file to write")->required();
  gen_cmd->add_option("--cert", gen.cert, "tight: certificate file (default: <out>.cert)");

  RatioArgs ratio;
  auto* ratio_cmd = app.add_subcommand("ratio", "Measure cost ratios against a reference");
  add_gen_options(ratio_cmd, ratio.gen);
  ratio_cmd->add_option("--instance", ratio.instances, "instance files instead of a family");
  ratio_cmd->add_option("--algos", ratio.algos, "comma-separated algorithms")->capture_default_str();
  ratio_cmd->add_option("--rsa", ratio.rsa, "mst | exact-small")->capture_default_str();
  ratio_cmd->add_option("--reference", ratio.reference, "oracle | certificate | lower-bound");
  ratio_cmd->add_option("--k-min", ratio.k_min, "tight: first k")->capture_default_str();
  ratio_cmd->add_option("--k-max", ratio.k_max, "tight: last k")->capture_default_str();
  ratio_cmd->add_option("--count", ratio.count, "random/mmn: instances (seeds seed, seed+1, ...)")
      ->capture_default_str();
  ratio_cmd->add_option("--out", ratio.out, "table file (default: stdout)");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Render a 2D instance as SVG");
  render_cmd->add_option("instance", render.instance, "instance file")->required();
  render_cmd->add_option("--network", render.network, "network file to overlay");
  render_cmd->add_option("--out", render.out, "SVG file to write")->required();
  render_cmd->add_flag("--no-separators", render.no_separators, "omit separator lines");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  if (solve_cmd->parsed()) return guarded([&] { return cmd_solve(solve, out, err); }, err);
  if (verify_cmd->parsed()) return guarded([&] { return cmd_verify(verify, out, err); }, err);
  if (gen_cmd->parsed()) return guarded([&] { return cmd_gen(gen, out, err); }, err);
  if (ratio_cmd->parsed()) return guarded([&] { return cmd_ratio(ratio, out, err); }, err);
  return guarded([&] { return cmd_render(render, out, err); }, err);
}

}  // namespace gmmn::cli
