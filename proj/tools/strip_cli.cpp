// Command-line front end: loads a JSON run configuration, dispatches to the
// library, and writes deterministic reports (report.json plus optional CSV)
// into the output directory.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 assertion failure
// (a verified inequality does not hold numerically).

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "strip/bound.hpp"
#include "strip/config.hpp"
#include "strip/counter.hpp"
#include "strip/cross_section.hpp"
#include "strip/measure.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CliContext {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  bool quiet = false;

  strip::RunConfig cfg;

  void load() {
    cfg = strip::load_config(config_path);
    if (seed_override) cfg.controls.seed = *seed_override;
  }

  void write_report(const json& report) const {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "report.json");
    out << report.dump(2) << "\n";
  }

  void write_csv(const std::string& name, const std::string& contents) const {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / name);
    out << contents;
  }

  void say(const std::string& line) const {
    if (!quiet) std::cout << line << "\n";
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json base_report(const char* subcommand, const CliContext& ctx) {
  json r;
  r["schema_version"] = strip::kSchemaVersion;
  r["subcommand"] = subcommand;
  r["seed"] = ctx.cfg.controls.seed;
  return r;
}

const char* branch_name(strip::EigenBranch b) {
  switch (b) {
    case strip::EigenBranch::Trigonometric: return "trigonometric";
    case strip::EigenBranch::Affine: return "affine";
    case strip::EigenBranch::Hyperbolic: return "hyperbolic";
    default: return "dirichlet_sine";
  }
}

int run_cross_section(CliContext& ctx) {
  const auto cs = strip::first_two_eigenpairs(ctx.cfg.geometry, ctx.cfg.controls.tol);
  json r = base_report("cross-section", ctx);
  r["lambda1"] = cs.lambda1;
  r["lambda2"] = cs.lambda2;
  r["cell_lambda2"] = cs.cell_lambda2();
  r["branch"] = branch_name(cs.branch);
  ctx.write_report(r);
  ctx.say("lambda1 = " + num(cs.lambda1) + ", lambda2 = " + num(cs.lambda2));
  return 0;
}

int run_ahlfors(CliContext& ctx) {
  const auto& c = ctx.cfg.controls;
  const auto est =
      strip::ahlfors_fit(ctx.cfg.measure, c.sample_count, c.r_min, c.r_max, c.seed);
  json r = base_report("ahlfors", ctx);
  r["d_hat"] = est.d_hat;
  r["c0_hat"] = est.c0_hat;
  r["c1_hat"] = est.c1_hat;
  r["c2_hat"] = est.c2_hat;
  r["c3_hat"] = est.c3_hat;
  r["r_min"] = est.r_min;
  r["r_max"] = est.r_max;
  r["samples_used"] = est.samples_used;
  ctx.write_report(r);
  ctx.say("d_hat = " + num(est.d_hat) + " from " + std::to_string(est.samples_used) +
          " ball samples");
  return 0;
}

// Shared by bound/count1d/sweep: the 1D reduction and its dyadic report.
struct BoundData {
  strip::CrossSection cs;
  strip::NuMeasure nu;
  strip::BoundReport report;
};

BoundData make_bound(const CliContext& ctx) {
  BoundData b{strip::first_two_eigenpairs(ctx.cfg.geometry, ctx.cfg.controls.tol), {}, {}};
  const auto& c = ctx.cfg.controls;
  b.nu = strip::build_nu(ctx.cfg.potential, b.cs, ctx.cfg.measure, c.half_length, c.resolution);
  const auto f = strip::dyadic_F_all(b.nu, c.n_max);
  std::map<int, double> m;
  for (int n = -static_cast<int>(c.half_length); n < static_cast<int>(c.half_length); ++n) {
    const double mn =
        strip::cell_M(ctx.cfg.potential, ctx.cfg.measure, n, ctx.cfg.geometry, c.resolution);
    if (mn > 0.0) m[n] = mn;
  }
  b.report = strip::assemble_bound(f, m, c.c_m, c.coeff_m);
  return b;
}

std::string windows_csv(const strip::BoundReport& rep) {
  std::string csv = "n,lo,hi,F_n,M_n,counted_F,counted_M\n";
  std::map<int, std::pair<double, double>> rows;  // n -> (F_n, M_n)
  for (const auto& [n, f] : rep.f_terms) rows[n].first = f;
  for (const auto& [n, m] : rep.m_terms) rows[n].second = m;
  for (const auto& [n, fm] : rows) {
    const auto w = strip::DyadicWindow::of_index(n);
    csv += std::to_string(n) + "," + num(w.lo) + "," + num(w.hi) + "," + num(fm.first) + "," +
           num(fm.second) + "," + (fm.first > rep.c_f ? "1" : "0") + "," +
           (fm.second > rep.c_m ? "1" : "0") + "\n";
  }
  return csv;
}

void fill_bound_json(json& r, const BoundData& b) {
  r["lambda1"] = b.cs.lambda1;
  r["rhs_1d"] = b.report.rhs_1d;
  r["rhs_total"] = b.report.rhs_total;
  r["weak_l1"] = b.report.weak_l1;
  r["coeff_f"] = b.report.coeff_f;
  r["c_f"] = b.report.c_f;
  r["coeff_m"] = b.report.coeff_m;
  r["c_m"] = b.report.c_m;
  r["n_min"] = b.report.n_min;
  r["n_max"] = b.report.n_max;
  r["nu_mass_deficit"] = b.nu.mass_deficit;
  json f = json::object(), m = json::object();
  for (const auto& [n, v] : b.report.f_terms) f[std::to_string(n)] = v;
  for (const auto& [n, v] : b.report.m_terms) m[std::to_string(n)] = v;
  r["f_terms"] = f;
  r["m_terms"] = m;
}

int run_bound(CliContext& ctx) {
  const BoundData b = make_bound(ctx);
  json r = base_report("bound", ctx);
  fill_bound_json(r, b);
  ctx.write_report(r);
  ctx.write_csv("windows.csv", windows_csv(b.report));
  ctx.say("rhs_1d = " + num(b.report.rhs_1d) + ", rhs_total = " + num(b.report.rhs_total));
  return 0;
}

int run_count(CliContext& ctx) {
  const auto cs = strip::first_two_eigenpairs(ctx.cfg.geometry, ctx.cfg.controls.tol);
  strip::CountControls cc;
  cc.half_length = ctx.cfg.controls.half_length;
  cc.h = ctx.cfg.controls.h;
  cc.max_refinements = ctx.cfg.controls.max_refinements;
  cc.resolution = ctx.cfg.controls.resolution;
  const auto result =
      strip::count_negative(ctx.cfg.geometry, cs, ctx.cfg.measure, ctx.cfg.potential, cc);

  json r = base_report("count", ctx);
  r["n_neg"] = result.n_neg;
  r["n_zero"] = result.n_zero;
  r["zero_tolerance"] = result.zero_tolerance;
  r["stable"] = result.stable;
  json trace = json::array();
  std::string csv = "h,L,n_neg\n";
  for (const auto& [h, L, nn] : result.refinement_trace) {
    trace.push_back({{"h", h}, {"L", L}, {"n_neg", nn}});
    csv += num(h) + "," + num(L) + "," + std::to_string(nn) + "\n";
  }
  r["trace"] = trace;
  ctx.write_report(r);
  ctx.write_csv("trace.csv", csv);
  ctx.say("n_neg = " + std::to_string(result.n_neg) +
          (result.stable ? " (stable)" : " (NOT converged)"));
  return result.stable ? 0 : 2;
}

int run_count1d(CliContext& ctx) {
  const BoundData b = make_bound(ctx);
  const auto& c = ctx.cfg.controls;
  const int n1d = strip::count_negative_1d(b.nu, c.half_length, c.h);
  const bool sandwich_ok = static_cast<double>(n1d) <= b.report.rhs_1d;

  json r = base_report("count1d", ctx);
  r["n_neg_1d"] = n1d;
  fill_bound_json(r, b);
  r["sandwich_ok"] = sandwich_ok;
  ctx.write_report(r);
  ctx.write_csv("windows.csv", windows_csv(b.report));
  ctx.say("n_neg_1d = " + std::to_string(n1d) + " <= rhs_1d = " + num(b.report.rhs_1d) + " : " +
          (sandwich_ok ? "ok" : "VIOLATED"));
  return sandwich_ok ? 0 : 2;
}

int run_sweep(CliContext& ctx) {
  const auto& c = ctx.cfg.controls;
  const auto cs = strip::first_two_eigenpairs(ctx.cfg.geometry, c.tol);
  const auto base_nu =
      strip::build_nu(ctx.cfg.potential, cs, ctx.cfg.measure, c.half_length, c.resolution);

  auto count_oracle = [&](double gamma) {
    strip::NuMeasure scaled = base_nu;
    for (auto& [x, w] : scaled.atoms) w *= gamma;
    return strip::count_negative_1d(scaled, c.half_length, c.h);
  };
  const auto points = strip::gamma_sweep(ctx.cfg.potential, ctx.cfg.measure, cs, c.gammas,
                                         c.half_length, c.resolution, c.n_max, count_oracle);

  bool sandwich_ok = true;
  json rows = json::array();
  std::string csv = "gamma,n_neg,rhs_1d,n_over_gamma,weak_l1,windows_over_5\n";
  for (const auto& p : points) {
    sandwich_ok = sandwich_ok && static_cast<double>(p.n_neg) <= p.rhs_1d;
    rows.push_back({{"gamma", p.gamma},
                    {"n_neg", p.n_neg},
                    {"rhs_1d", p.rhs_1d},
                    {"n_over_gamma", p.n_neg / p.gamma},
                    {"weak_l1", p.weak_l1},
                    {"windows_over_5", p.windows_over_5}});
    csv += num(p.gamma) + "," + std::to_string(p.n_neg) + "," + num(p.rhs_1d) + "," +
           num(p.n_neg / p.gamma) + "," + num(p.weak_l1) + "," +
           std::to_string(p.windows_over_5) + "\n";
  }
  json r = base_report("sweep", ctx);
  r["points"] = rows;
  r["sandwich_ok"] = sandwich_ok;
  ctx.write_report(r);
  ctx.write_csv("trace.csv", csv);
  for (const auto& p : points)
    ctx.say("gamma = " + num(p.gamma) + ": n_neg = " + std::to_string(p.n_neg) +
            ", rhs_1d = " + num(p.rhs_1d));
  return sandwich_ok ? 0 : 2;
}

int run_verify(CliContext& ctx) {
  const auto& c = ctx.cfg.controls;
  const auto cs = strip::first_two_eigenpairs(ctx.cfg.geometry, c.tol);
  json r = base_report("verify", ctx);
  json checks = json::array();
  bool all_ok = true;

  auto record = [&](const std::string& name, bool ok, const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", ok}, {"detail", detail}});
    all_ok = all_ok && ok;
    ctx.say(std::string(ok ? "PASS" : "FAIL") + "  " + name + "  (" + detail + ")");
  };

  // Eigenvalue ordering and the cell gap.
  record("cross_section_ordering", cs.lambda1 < cs.lambda2,
         "lambda1 = " + num(cs.lambda1) + " < lambda2 = " + num(cs.lambda2));
  record("cell_gap_positive", cs.cell_lambda2() > cs.lambda1,
         "cell_lambda2 = " + num(cs.cell_lambda2()));

  // Projection split residuals with h-refinement.
  const auto s16 = strip::verify_projection_split(ctx.cfg.geometry, cs, 1.0 / 16.0, 50, c.seed);
  const auto s32 = strip::verify_projection_split(ctx.cfg.geometry, cs, 1.0 / 32.0, 50, c.seed);
  record("projection_split_residual", s32.max_inner_residual < 1e-6 &&
                                          s32.max_energy_residual < 1e-6,
         "inner = " + num(s32.max_inner_residual) + ", energy = " + num(s32.max_energy_residual));
  record("projection_split_decay",
         s32.max_energy_residual <= s16.max_energy_residual + 1e-15,
         num(s16.max_energy_residual) + " -> " + num(s32.max_energy_residual));
  record("spectral_gap_on_complement", s32.max_gap_violation == 0.0,
         "max violation = " + num(s32.max_gap_violation));

  // Exact tent-function energies.
  bool tents_ok = true;
  for (int n = 1; n <= 6; ++n) {
    const auto e = strip::testfunction_energy(ctx.cfg.geometry, cs, ctx.cfg.potential,
                                              ctx.cfg.measure, n, c.resolution);
    tents_ok = tents_ok && std::abs(e.energy - 5.0 * std::ldexp(1.0, n)) <= 1e-10;
  }
  record("testfunction_energy_5x2n", tents_ok, "n = 1..6 against 5*2^n");

  // The explicit 1D inequality on this configuration.
  if (!ctx.cfg.measure.components.empty()) {
    const BoundData b = make_bound(ctx);
    const int n1d = strip::count_negative_1d(b.nu, c.half_length, c.h);
    record("one_dim_sandwich", static_cast<double>(n1d) <= b.report.rhs_1d,
           std::to_string(n1d) + " <= " + num(b.report.rhs_1d));
  }

  r["checks"] = checks;
  r["all_pass"] = all_ok;
  ctx.write_report(r);
  return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenvalue-counting bounds for Schrodinger operators on a strip"};
  app.require_subcommand(1);

  CliContext ctx;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ctx.config_path, "path to the JSON run configuration")
        ->required();
    sub->add_option("--out", ctx.out_dir, "output directory (default: out)");
    sub->add_option("--seed", seed_value, "override the config seed")
        ->each([&](const std::string&) { ctx.seed_override = seed_value; });
    sub->add_flag("--quiet", ctx.quiet, "suppress console output");
  };

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(CliContext&);
  };
  const Entry entries[] = {
      {"cross-section", "first two cross-sectional eigenvalues and the ground state", run_cross_section},
      {"ahlfors", "fit the Ahlfors regularity dimension of the measure", run_ahlfors},
      {"bound", "dyadic window masses and the explicit upper bound", run_bound},
      {"count", "2D finite element negative-eigenvalue count with refinement", run_count},
      {"count1d", "1D reduced count and the sandwich inequality", run_count1d},
      {"sweep", "coupling-constant sweep N(gamma) against the bound", run_sweep},
      {"verify", "run the built-in invariant battery for this configuration", run_verify},
  };
  for (const auto& e : entries) add_common(app.add_subcommand(e.name, e.help));

  CLI11_PARSE(app, argc, argv);

  try {
    ctx.load();
    for (const auto& e : entries)
      if (app.get_subcommand(e.name)->parsed()) return e.fn(ctx);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
