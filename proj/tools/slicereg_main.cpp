// slicereg: evaluate, differentiate, expand and scan quaternionic slice
// regular functions given as JSON specs; `slicereg verify` replays the
// worked-example suite.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "slicereg/calculus.hpp"
#include "slicereg/differential.hpp"
#include "slicereg/examples.hpp"
#include "slicereg/scanners.hpp"
#include "slicereg/serialization.hpp"
#include "slicereg/verify.hpp"

namespace {

using namespace slicereg;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

Quaternion parse_point(const std::string& text) {
  Quaternion q;
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &q.w, &q.x, &q.y, &q.z) != 4)
    throw CLI::ValidationError("--point", "expected w,x,y,z");
  return q;
}

void parse_pair(const std::string& text, int& a, int& b, const char* flag) {
  if (std::sscanf(text.c_str(), "%dx%d", &a, &b) != 2)
    throw CLI::ValidationError(flag, "expected AxB");
}

ExportFormat parse_format(const std::string& text) {
  if (text == "csv") return ExportFormat::csv;
  if (text == "json") return ExportFormat::json;
  throw CLI::ValidationError("--format", "expected csv or json");
}

struct CommonOpts {
  std::string fn_path;
  std::string grid_text, sphere_text;
  double tol = 1e-6;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool json = false;

  GridSpec grid() const {
    GridSpec g;
    g.tol = tol;
    if (!grid_text.empty()) parse_pair(grid_text, g.alpha_steps, g.beta_steps, "--grid");
    if (!sphere_text.empty())
      parse_pair(sphere_text, g.theta_steps, g.phi_steps, "--sphere");
    g.validate();
    return g;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_fn = true) {
  auto* fn = cmd->add_option("--fn", o.fn_path, "path to a JSON function spec");
  if (needs_fn) fn->required();
  cmd->add_option("--grid", o.grid_text, "alpha x beta step counts (default 64x64)");
  cmd->add_option("--sphere", o.sphere_text,
                  "theta x phi sample counts (default 32x64)");
  cmd->add_option("--tol", o.tol, "scan tolerance (default 1e-6)");
  cmd->add_option("--out", o.out_path, "output file path");
  cmd->add_option("--format", o.format, "csv or json (default csv)");
  cmd->add_option("--seed", o.seed, "sampling seed (default 1)");
  cmd->add_flag("--json", o.json, "machine-readable output");
}

void emit_cloud(const SurfaceCloud& cloud, const CommonOpts& o) {
  const ExportFormat fmt = o.json ? ExportFormat::json : parse_format(o.format);
  if (o.out_path.empty())
    std::cout << cloud_to_string(cloud, fmt);
  else
    export_cloud(cloud, o.out_path, fmt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational calculus of quaternionic slice regular functions"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string point_text;
  std::string value_text = "0,0,0,0";
  int order = 7;
  std::size_t n_samples = 10000;
  std::string exclude_text;
  std::string kind = "zeros";

  auto* eval = app.add_subcommand("eval", "evaluate f at a point");
  add_common(eval, o);
  eval->add_option("--point", point_text, "w,x,y,z")->required();

  auto* derive = app.add_subcommand("derive",
                                    "slice, conjugate and spherical derivatives");
  add_common(derive, o);
  derive->add_option("--point", point_text, "w,x,y,z")->required();

  auto* expand = app.add_subcommand("expand", "spherical expansion coefficients");
  add_common(expand, o);
  expand->add_option("--point", point_text, "expansion center w,x,y,z")->required();
  expand->add_option("--order", order, "truncation order (default 7)");

  auto* rank = app.add_subcommand("rank", "real differential and rank at a point");
  add_common(rank, o);
  rank->add_option("--point", point_text, "w,x,y,z")->required();

  auto* scan_z = app.add_subcommand("scan-zeros", "recover the zero set");
  add_common(scan_z, o);
  auto* scan_s = app.add_subcommand("scan-singular", "recover the singular set");
  add_common(scan_s, o);
  auto* scan_d = app.add_subcommand("scan-degenerate", "recover the degenerate set");
  add_common(scan_d, o);

  auto* surfaces = app.add_subcommand("constant-surfaces",
                                      "surfaces and semislices where f == value");
  add_common(surfaces, o);
  surfaces->add_option("--value", value_text, "constant w,x,y,z (default 0)");

  auto* inject = app.add_subcommand("inject-check", "sampling injectivity report");
  add_common(inject, o);
  inject->add_option("--samples", n_samples, "sample count (default 10000)");
  inject->add_option("--exclude-unit", exclude_text,
                     "w,x,y,z imaginary unit whose cap is excluded");

  auto* verify = app.add_subcommand("verify", "run the worked-example suite");
  CommonOpts vo;
  verify->add_flag("--json", vo.json, "machine-readable report");

  auto* exp = app.add_subcommand("export", "run a scan and write it to a file");
  add_common(exp, o);
  exp->add_option("--kind", kind, "zeros | singular | degenerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const VerifyReport report = verify_worked_examples();
      std::cout << (vo.json ? verify_report_to_json(report)
                            : verify_report_to_text(report));
      return report.all_passed() ? kExitOk : kExitVerifyFailure;
    }

    const SliceFunction f = load_function_spec(o.fn_path);

    if (eval->parsed()) {
      std::cout << quaternion_to_json(f(parse_point(point_text))) << "\n";
      return kExitOk;
    }
    if (derive->parsed()) {
      const Quaternion x = parse_point(point_text);
      if (o.json) {
        std::cout << "{\"slice\": " << quaternion_to_json(slice_derivative(f, x))
                  << ", \"conjugate\": "
                  << quaternion_to_json(conj_slice_derivative(f, x))
                  << ", \"spherical\": "
                  << quaternion_to_json(spherical_derivative(f, x)) << "}\n";
      } else {
        std::cout << "slice:     " << quaternion_to_json(slice_derivative(f, x)) << "\n"
                  << "conjugate: " << quaternion_to_json(conj_slice_derivative(f, x))
                  << "\n"
                  << "spherical: " << quaternion_to_json(spherical_derivative(f, x))
                  << "\n";
      }
      return kExitOk;
    }
    if (expand->parsed()) {
      const auto e = expansion_coefficients(f, parse_point(point_text), order);
      std::cout << expansion_to_json(e) << "\n";
      return kExitOk;
    }
    if (rank->parsed()) {
      const Quaternion x = parse_point(point_text);
      const RealDifferential d = real_differential(f, x);
      if (o.json) {
        std::cout << differential_to_json(d) << "\n";
      } else {
        std::cout << "rank " << d.rank << " (classified "
                  << static_cast<int>(rank_classify(f, x)) << ", singular "
                  << (is_singular(f, x) ? "yes" : "no") << ")\n";
      }
      return kExitOk;
    }
    if (scan_z->parsed()) {
      const auto records = scan_zeros(f, o.grid());
      const ExportFormat fmt = o.json ? ExportFormat::json : parse_format(o.format);
      if (o.out_path.empty())
        std::cout << zero_records_to_string(records, o.grid(), fmt);
      else
        export_zero_records(records, o.grid(), o.out_path, fmt);
      return kExitOk;
    }
    if (scan_s->parsed()) {
      emit_cloud(singular_scan(f, o.grid()), o);
      return kExitOk;
    }
    if (scan_d->parsed()) {
      emit_cloud(degenerate_scan(f, o.grid()), o);
      return kExitOk;
    }
    if (surfaces->parsed()) {
      const auto result = constant_surface_extract(f, parse_point(value_text), o.grid());
      emit_cloud(result.cloud, o);
      for (const auto& u : result.semislice_units)
        std::cerr << "semislice: " << quaternion_to_json(u) << "\n";
      std::cerr << "max surface-system residual: " << result.max_surfzero_residual
                << "\n";
      return kExitOk;
    }
    if (inject->parsed()) {
      SampleRegion region =
          exclude_text.empty()
              ? SampleRegion::box(f.domain())
              : SampleRegion::box_excluding(f.domain(),
                                            ImaginaryUnit(parse_point(exclude_text)));
      const auto report = injectivity_sample(f, region, n_samples, o.seed);
      std::cout << injectivity_report_to_json(report) << "\n";
      return kExitOk;
    }
    if (exp->parsed()) {
      if (o.out_path.empty())
        throw CLI::ValidationError("--out", "export requires an output path");
      if (kind == "zeros") {
        export_zero_records(scan_zeros(f, o.grid()), o.grid(), o.out_path,
                            parse_format(o.format));
      } else if (kind == "singular") {
        export_cloud(singular_scan(f, o.grid()), o.out_path, parse_format(o.format));
      } else if (kind == "degenerate") {
        export_cloud(degenerate_scan(f, o.grid()), o.out_path, parse_format(o.format));
      } else {
        throw CLI::ValidationError("--kind", "expected zeros, singular or degenerate");
      }
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    // IO and parse problems (missing files, malformed specs).
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
