// Command-line front end: build designs, verify design files, print bounds
// and the cardinality table.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sdesign/errors.hpp"
#include "sdesign/finite_field.hpp"
#include "sdesign/kernels.hpp"
#include "sdesign/pipeline.hpp"
#include "sdesign/point_io.hpp"
#include "sdesign/reference_moments.hpp"

using namespace sdesign;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadArgs = 2, kCap = 3, kInternal = 4 };

struct Output {
  std::string path;
  std::string format = "json";
};

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "output file (default: standard output)");
  cmd->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void emit(const AnyDesign& design, const Output& out) {
  save_design(design, out.path, out.format);
  std::cerr << "wrote " << space_of(design) << " design";
  if (!out.path.empty()) std::cerr << " to " << out.path;
  std::cerr << '\n';
}

void print_report(const VerificationReport& rep, bool as_json) {
  if (as_json) {
    std::cout << rep.to_json().dump(2) << '\n';
    return;
  }
  std::cout << rep.summary() << '\n';
  for (const auto& r : rep.per_degree) {
    std::printf("  degree %2d  residual %.3e\n", r.degree, r.residual);
  }
  if (!rep.note.empty()) std::cout << "  " << rep.note << '\n';
  std::printf("  threads %d  wall %.3f s\n", rep.threads, rep.wall_seconds);
}

VerificationReport verify_any(const AnyDesign& design, int t, const std::string& method, double tol,
                              int threads) {
  struct Visitor {
    int t;
    const std::string& method;
    double tol;
    int threads;
    VerificationReport operator()(const SphericalPointSet& x) const {
      SphereCheckOptions opts;
      opts.method = sphere_method_from_string(method);
      opts.threads = threads;
      if (tol > 0) opts.tol = tol;
      return verify_spherical(x, t, opts);
    }
    VerificationReport operator()(const SimplexPointSet& x) const {
      SimplexCheck mode = SimplexCheck::automatic;
      if (method == "monomial" || method == "full") mode = SimplexCheck::full;
      if (method == "fast") mode = SimplexCheck::fast;
      return verify_simplex(x, t, mode, tol > 0 ? tol : kSimplexTolerance);
    }
    VerificationReport operator()(const ToricDesign& x) const {
      return verify_toric(x, t, tol > 0 ? tol : kToricTolerance);
    }
    VerificationReport operator()(const IntervalDesign& x) const {
      return verify_interval(x, t, tol > 0 ? tol : kIntervalTolerance);
    }
    VerificationReport operator()(const ComplexLineSet& x) const {
      return verify_cp(x, t, tol > 0 ? tol : kProjectiveTolerance);
    }
    VerificationReport operator()(const FusionFrame& x) const {
      return verify_tff(x, t, tol > 0 ? tol : kProjectiveTolerance);
    }
  };
  return std::visit(Visitor{t, method, tol, threads}, design);
}

int thread_default() {
  if (const char* env = std::getenv("SDESIGN_THREADS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("SDESIGN_THREADS='") + env + "' is not an integer");
    }
  }
  return 0;
}

ComplexLineSet cp_design(int t, int d) {
  if (t == 2) return concatenate(simplex2_design(d), compact_toric_design(d, 2));
  const SimplexSeed seed = simplex3_seed(d);
  const bool pgl = is_prime_power(static_cast<std::uint64_t>(d - 1)).has_value();
  const SimplexPointSet y = pgl ? pgl_orbit(seed, static_cast<std::uint64_t>(d - 1)) : symmetric_orbit(seed);
  return concatenate(y, compact_toric_design(d, 3));
}

int run(int argc, char** argv) {
  CLI::App app{"Construct and verify spherical, simplex, toric and projective designs"};
  app.require_subcommand(1);
  Output out;

  int t = 0;
  int dim = 0;
  int d = 0;
  std::uint64_t seed = 0;
  bool check = false;

  auto* sphere = app.add_subcommand("sphere", "spherical 5- or 7-design on S^{dim-1}");
  sphere->add_option("--t", t, "strength (5 or 7)")->required()->check(CLI::IsMember({5, 7}));
  sphere->add_option("--dim", dim, "ambient dimension")->required();
  sphere->add_option("--seed", seed, "seed for re-phasing planes on collision");
  sphere->add_flag("--verify", check, "verify the result before writing it");
  add_output(sphere, out);

  std::string thin;
  auto* simplex = app.add_subcommand("simplex", "simplex 2- or 3-design");
  simplex->add_option("--t", t, "strength (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
  simplex->add_option("--d", d, "number of coordinates")->required();
  simplex->add_option("--thin", thin, "pgl: use the PGL(2,d-1) orbit")->check(CLI::IsMember({"pgl"}));
  add_output(simplex, out);

  std::string route = "bose";
  auto* toric = app.add_subcommand("toric", "projective toric design");
  toric->add_option("--t", t, "strength")->required();
  toric->add_option("--d", d, "torus dimension")->required();
  toric->add_option("--route", route, "bose, singer or compact")
      ->check(CLI::IsMember({"bose", "singer", "compact"}));
  add_output(toric, out);

  auto* interval = app.add_subcommand("interval", "7-point interval 5-design for the weight (1-u^2)^{d-1}");
  interval->add_option("--d", d, "weight parameter")->required();
  add_output(interval, out);

  auto* cp = app.add_subcommand("cp", "complex projective design in CP^{d-1}");
  cp->add_option("--t", t, "strength (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
  cp->add_option("--d", d, "complex dimension")->required();
  add_output(cp, out);

  auto* tff = app.add_subcommand("tff", "tight fusion frame of 2-planes in R^{2d}");
  tff->add_option("--t", t, "strength (2 or 3)")->required()->check(CLI::IsMember({2, 3}));
  tff->add_option("--d", d, "complex dimension")->required();
  add_output(tff, out);

  std::string file;
  std::string method = "auto";
  double tol = 0.0;
  int threads = 0;
  bool as_json = false;
  auto* verify = app.add_subcommand("verify", "verify a design file");
  verify->add_option("file", file, "JSON or CSV design file")->required();
  verify->add_option("--t", t, "strength to check")->required();
  verify->add_option("--method", method, "auto, monomial, pairsum, directional (sphere); full, fast (simplex)");
  verify->add_option("--tol", tol, "tolerance (default depends on the space)");
  verify->add_option("--threads", threads, "worker threads (overrides SDESIGN_THREADS)");
  verify->add_flag("--json", as_json, "print the report as JSON");

  auto* bound = app.add_subcommand("bound", "Delsarte-Goethals-Seidel lower bound");
  bound->add_option("--d", d, "ambient dimension")->required();
  bound->add_option("--t", t, "strength")->required();

  bool paper = false;
  int max_n = 20;
  auto* table = app.add_subcommand("table", "cardinality table of the sphere constructions");
  table->add_flag("--paper", paper, "the 2 <= n <= 20 table");
  table->add_option("--max-n", max_n, "largest ambient dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArgs;
  }

  const int env_threads = thread_default();
  set_kernel_threads(threads > 0 ? threads : env_threads);

  if (*sphere) {
    const SphericalPointSet x = t == 5 ? sphere5_design(dim, seed) : sphere7_design(dim, seed);
    std::cerr << "sphere " << t << "-design on S^" << dim - 1 << ": " << x.size() << " points\n";
    if (check) {
      const auto rep = verify_spherical(x, t);
      std::cerr << rep.summary() << '\n';
      if (!rep.passed) return kVerifyFailed;
    }
    emit(x, out);
  } else if (*simplex) {
    if (t == 2) {
      emit(simplex2_design(d), out);
    } else if (thin == "pgl") {
      emit(pgl_orbit(simplex3_seed(d), static_cast<std::uint64_t>(d - 1)), out);
    } else {
      emit(symmetric_orbit(simplex3_seed(d)), out);
    }
  } else if (*toric) {
    if (route == "bose") emit(toric_design(d, t), out);
    if (route == "singer") emit(singer_toric_design(d, t), out);
    if (route == "compact") emit(compact_toric_design(d, t), out);
  } else if (*interval) {
    emit(interval5_design(d), out);
  } else if (*cp) {
    emit(cp_design(t, d), out);
  } else if (*tff) {
    emit(cp_to_fusion_frame(cp_design(t, d), t), out);
  } else if (*verify) {
    const AnyDesign design = load_design(file);
    std::cerr << "verifying " << space_of(design) << " design from " << file << " at t=" << t << '\n';
    const auto rep = verify_any(design, t, method, tol, threads > 0 ? threads : env_threads);
    print_report(rep, as_json);
    return rep.passed ? kOk : kVerifyFailed;
  } else if (*bound) {
    std::cout << dgs_lower_bound(d, t) << '\n';
  } else if (*table) {
    if (paper) max_n = 20;
    const auto rows = cardinality_table(max_n);
    std::printf("%4s %2s %10s %9s %8s %10s %12s %12s %12s  %s\n", "n", "t", "|Y|", "|torus|", "lines",
                "planes", "|X|", "DGS bound", "|X|/n^k", "route");
    for (const auto& r : rows) {
      std::printf("%4d %2d %10llu %9llu %8llu %10llu %12llu %12llu %12.4g  %s%s\n", r.n, r.strength,
                  static_cast<unsigned long long>(r.simplex_points),
                  static_cast<unsigned long long>(r.toric_points),
                  static_cast<unsigned long long>(r.distinct_lines),
                  static_cast<unsigned long long>(r.frame_size), static_cast<unsigned long long>(r.count),
                  static_cast<unsigned long long>(r.dgs_bound), r.ratio, r.route.c_str(),
                  r.polynomial_route ? "" : " [symmetric orbit]");
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const ResourceCap& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
