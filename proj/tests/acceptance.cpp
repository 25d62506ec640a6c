// Acceptance suite: one numbered criterion per benchmark claim, each printing
// a PASS/FAIL line per check.
//
//   acceptance                 run every criterion
//   acceptance --criterion K   run only criterion K (1..7)
//
// Exit status is 0 only if every executed check passes.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ktrelax/cli.hpp"
#include "ktrelax/ktrelax.hpp"
#include "riemann_oracle.hpp"

using namespace ktrelax;

namespace {

struct Report {
  int failures = 0;
  int checks = 0;

  void check(int criterion, bool ok, const std::string& what) {
    ++checks;
    if (!ok) ++failures;
    std::printf("[%s] C%d %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Published L1 errors at t = 1 for the sine advection test.
const std::vector<std::size_t> table_n{20, 40, 80, 160, 320, 640, 1280};
const std::vector<double> paper_kt_convective{2.03e-1, 7.58e-2, 2.71e-2, 8.22e-3,
                                              2.29e-3, 6.11e-4, 1.61e-4};
const std::vector<double> paper_relax_convective{2.16e-1, 7.66e-2, 2.73e-2, 8.25e-3,
                                                 2.29e-3, 6.12e-4, 1.61e-4};
const std::vector<double> paper_kt_parabolic{6.19e-1, 2.04e-1, 9.10e-2,
                                             2.67e-2, 7.62e-3, 2.06e-3};
const std::vector<double> paper_relax_parabolic{1.02e-1, 4.58e-2, 1.34e-2,
                                                3.82e-3, 1.03e-3, 2.77e-4};

constexpr double table_factor = 2.5;
constexpr double scheme_agreement = 0.25;
constexpr double min_convective_order = 1.8;
constexpr double parabolic_advantage = 3.0;
constexpr double nonconvex_l1_max = 0.05;
constexpr double nonconvex_overshoot = 0.02;
constexpr std::size_t shock_cell_tolerance = 3;
constexpr double lax_refinement_factor = 1.5;

// Parameters of the published runs are not stated. theta = 1 is the limiter
// under which the two schemes give near-identical convective errors, as the
// table reports; C keeps its library default.
BenchParams reproduction(CflMode mode) {
  BenchParams p;
  p.policy = {mode, CflPolicy::default_constant};
  p.theta = 1.0;
  p.safety = 1.0;
  return p;
}

std::map<SchemeKind, std::vector<ConvergenceRow>> convective_tables() {
  static std::map<SchemeKind, std::vector<ConvergenceRow>> cache;
  if (cache.empty()) {
    for (auto k : {SchemeKind::Kt, SchemeKind::Relax}) {
      cache[k] = run_advection_table(k, reproduction(CflMode::Convective), table_n);
    }
  }
  return cache;
}

void criterion_1(Report& r) {
  const auto tables = convective_tables();
  for (auto k : {SchemeKind::Kt, SchemeKind::Relax}) {
    const auto& paper =
        k == SchemeKind::Kt ? paper_kt_convective : paper_relax_convective;
    const auto& rows = tables.at(k);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double ratio = rows[i].l1_error / paper[i];
      r.check(1,
              ratio <= table_factor && ratio >= 1.0 / table_factor,
              to_string(k) + " convective n=" + std::to_string(rows[i].n) +
                  ": l1=" + fmt("%.3e", rows[i].l1_error) + " paper=" +
                  fmt("%.2e", paper[i]) + " ratio=" + fmt("%.3f", ratio) +
                  " (within x2.5)");
    }
  }
  const auto& kt = tables.at(SchemeKind::Kt);
  const auto& relax = tables.at(SchemeKind::Relax);
  for (std::size_t i = 0; i < kt.size(); ++i) {
    if (kt[i].n < 80) continue;
    const double rel = std::abs(kt[i].l1_error - relax[i].l1_error) /
                       std::min(kt[i].l1_error, relax[i].l1_error);
    r.check(1, rel <= scheme_agreement,
            "kt vs relax convective n=" + std::to_string(kt[i].n) +
                ": relative difference " + fmt("%.4f", rel) + " <= 0.25");
  }
}

void criterion_2(Report& r) {
  const auto tables = convective_tables();
  for (auto k : {SchemeKind::Kt, SchemeKind::Relax}) {
    const auto& rows = tables.at(k);
    for (const auto& row : rows) {
      if (row.n != 640) continue;
      const double order = row.observed_order.value_or(0.0);
      r.check(2, order >= min_convective_order,
              to_string(k) + " convective order 320->640 = " +
                  fmt("%.3f", order) + " >= 1.8");
    }
  }
}

void criterion_3(Report& r) {
  const std::vector<std::size_t> ns{20, 40, 80, 160, 320, 640};
  const auto p = reproduction(CflMode::Parabolic);
  const auto kt = run_advection_table(SchemeKind::Kt, p, ns);
  const auto relax = run_advection_table(SchemeKind::Relax, p, ns);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::printf("       parabolic n=%zu  kt=%.3e (paper %.2e)  relax=%.3e (paper %.2e)\n",
                ns[i], kt[i].l1_error, paper_kt_parabolic[i], relax[i].l1_error,
                paper_relax_parabolic[i]);
  }
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 40) continue;
    const double ratio = kt[i].l1_error / relax[i].l1_error;
    r.check(3, relax[i].l1_error <= kt[i].l1_error / parabolic_advantage,
            "parabolic n=" + std::to_string(ns[i]) + ": kt/relax error ratio " +
                fmt("%.3f", ratio) + " >= 3");
  }
  for (const auto* rows : {&kt, &relax}) {
    bool decreasing = true;
    for (std::size_t i = 1; i < rows->size(); ++i) {
      decreasing = decreasing && (*rows)[i].l1_error < (*rows)[i - 1].l1_error;
    }
    r.check(3, decreasing,
            to_string(rows->front().scheme) +
                " parabolic errors strictly decreasing in n");
  }
}

void criterion_4(Report& r) {
  const auto reference = nonconvex_reference();
  const auto p = reproduction(CflMode::Convective);
  const auto setup = nonconvex_riemann_setup();
  for (auto k : {SchemeKind::Kt, SchemeKind::Relax}) {
    const auto res = run_nonconvex(k, 200, p, reference);
    r.check(4, res.l1_to_reference <= nonconvex_l1_max,
            to_string(k) + " n=200 L1 to Rusanov(8192) = " +
                fmt("%.4e", res.l1_to_reference) + " <= 0.05");
    const auto u = res.field.component(0);
    double rise = 0.0, over = 0.0;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) rise = std::max(rise, u[j + 1] - u[j]);
    for (double v : u) {
      over = std::max({over, v - setup.left, setup.right - v});
    }
    r.check(4, rise <= nonconvex_overshoot && over <= nonconvex_overshoot,
            to_string(k) + " profile monotone non-increasing: max rise " +
                fmt("%.2e", rise) + ", max overshoot " + fmt("%.2e", over) +
                " <= 0.02");
    const auto shocks = steepest_jumps(u, 2);
    const auto ref_shocks = steepest_jumps(res.reference.component(0), 2);
    bool located = shocks.size() == 2 && ref_shocks.size() == 2;
    std::string where;
    for (std::size_t s = 0; located && s < 2; ++s) {
      const std::size_t d = shocks[s] > ref_shocks[s] ? shocks[s] - ref_shocks[s]
                                                      : ref_shocks[s] - shocks[s];
      located = located && d <= shock_cell_tolerance;
      where += " " + std::to_string(shocks[s]) + "/" + std::to_string(ref_shocks[s]);
    }
    r.check(4, located,
            to_string(k) + " shock cells (scheme/reference):" + where +
                " within 3 cells");
  }
}

void criterion_5(Report& r) {
  const auto setup = lax_riemann_setup();
  const auto star = ExactRiemannEuler(setup.left, setup.right).star();
  const auto bisected = oracle::bisect_star(
      {setup.left.rho, setup.left.u, setup.left.p},
      {setup.right.rho, setup.right.u, setup.right.p});
  // Frozen from the bisection oracle before the solver was written.
  constexpr double golden_p = 2.4660979192073567;
  constexpr double golden_rho = 1.3040845320261996;
  r.check(5, std::abs(bisected.p - golden_p) < 1e-12 &&
                 std::abs(bisected.rho_right - golden_rho) < 1e-12,
          "bisection oracle reproduces frozen star pressure / post-shock density");
  r.check(5, std::abs(star.p - golden_p) < 1e-10 &&
                 std::abs(star.rho_right - golden_rho) < 1e-10,
          "exact solver star pressure " + fmt("%.12f", star.p) +
              ", post-shock density " + fmt("%.12f", star.rho_right));

  const auto p = reproduction(CflMode::Convective);
  std::map<SchemeKind, double> err200;
  for (auto k : {SchemeKind::Kt, SchemeKind::Relax}) {
    try {
      const auto coarse = run_lax(k, 100, p);
      const auto fine = run_lax(k, 200, p);
      err200[k] = fine.density_l1;
      const double factor = coarse.density_l1 / fine.density_l1;
      r.check(5, factor >= lax_refinement_factor,
              to_string(k) + " density L1 n=100 " + fmt("%.4e", coarse.density_l1) +
                  " -> n=200 " + fmt("%.4e", fine.density_l1) + ", factor " +
                  fmt("%.3f", factor) + " >= 1.5");
      r.check(5,
              coarse.diagnostics.positivity_failures == 0 &&
                  fine.diagnostics.positivity_failures == 0,
              to_string(k) + " rho, p positive at every step (" +
                  std::to_string(fine.diagnostics.steps) + " steps at n=200)");
    } catch (const PositivityError& e) {
      r.check(5, false, to_string(k) + " positivity failure: " + e.what());
    }
  }
  if (err200.size() == 2) {
    r.check(5, err200[SchemeKind::Relax] <= err200[SchemeKind::Kt],
            "n=200 density L1: relax " + fmt("%.4e", err200[SchemeKind::Relax]) +
                " <= kt " + fmt("%.4e", err200[SchemeKind::Kt]));
  }
}

template <class Scheme>
double run_drift(Scheme scheme, const Field& u0, const Grid1D& g, double t_end) {
  const auto run = integrate(scheme, u0, g, BoundaryKind::Periodic, {}, t_end);
  double worst = 0.0;
  for (double d : run.diagnostics.conservation_drift) worst = std::max(worst, std::abs(d));
  return worst;
}

void criterion_6(Report& r) {
  // Conservation under periodic boundaries.
  {
    const Grid1D g(0.0, 1.0, 160);
    const Field sine = cell_average(g, [](double x) { return std::sin(2 * std::numbers::pi * x); });
    const Field bump = cell_average(g, [](double x) { return x > 0.3 && x < 0.6 ? 1.8 : -0.5; });
    const EulerModel e;
    const Field gas = cell_average(g, 3, [&](double x, std::span<double> out) {
      std::ranges::copy(e.prim_to_cons({1.0 + 0.2 * std::sin(2 * std::numbers::pi * x), 0.5,
                                        1.0 + 0.1 * std::cos(2 * std::numbers::pi * x)}),
                        out.begin());
    });
    const double worst = std::max(
        {run_drift(KtScheme<AdvectionModel>{}, sine, g, 1.0),
         run_drift(RelaxScheme<AdvectionModel>{}, sine, g, 1.0),
         run_drift(KtScheme<NonConvexModel>{}, bump, g, 0.25),
         run_drift(RelaxScheme<NonConvexModel>{}, bump, g, 0.25),
         run_drift(KtScheme<EulerModel>{}, gas, g, 0.3),
         run_drift(RelaxScheme<EulerModel>{}, gas, g, 0.3)});
    r.check(6, worst <= 1e-10,
            "periodic conservation drift (both schemes, three models) " +
                fmt("%.2e", worst) + " <= 1e-10");
  }

  // Total variation.
  const auto setup = nonconvex_riemann_setup();
  const Grid1D g(setup.x_min, setup.x_max, 200);
  const Field u0 = cell_average(g, 1, riemann_initial(setup));
  {
    KtScheme<NonConvexModel> kt(NonConvexModel{}, MusclLimiter{1.5});
    double prev = total_variation(u0), worst = -1.0;
    integrate(kt, u0, g, BoundaryKind::Outflow, {CflMode::Convective, 0.2}, setup.t_end,
              [&](const Field& u, double, std::size_t) {
                const double tv = total_variation(u);
                worst = std::max(worst, tv - prev);
                prev = tv;
              });
    r.check(6, worst <= 1e-8,
            "KT theta=1.5 C=0.2 largest per-step TV increase " + fmt("%.2e", worst) +
                " <= 1e-8");
  }
  {
    RelaxScheme<NonConvexModel> relax;
    const double tv0 = total_variation(u0);
    double peak = tv0;
    integrate(relax, u0, g, BoundaryKind::Outflow, {}, setup.t_end,
              [&](const Field& u, double, std::size_t) {
                peak = std::max(peak, total_variation(u));
              });
    r.check(6, peak <= tv0 + 1e-3,
            "relaxation TV max " + fmt("%.6f", peak) + " <= initial " +
                fmt("%.6f", tv0) + " + 1e-3");
  }

  // Flux consistency.
  {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> val(-3.0, 3.0), speed(0.0, 10.0),
        pos(0.1, 5.0);
    const NonConvexModel nc;
    const EulerModel e;
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const double a = speed(rng);
      const NonConvexModel::State u{val(rng)};
      worst = std::max(worst, std::abs(kt_numerical_flux(u, u, a, nc)[0] - nc.flux(u)[0]));
      const auto q = e.prim_to_cons({pos(rng), val(rng), pos(rng)});
      const auto f = kt_numerical_flux(q, q, a, e), exact = e.flux(q);
      for (std::size_t i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(f[i] - exact[i]) / std::max(1.0, std::abs(exact[i])));
      }
    }
    r.check(6, worst <= 1e-14,
            "kt_numerical_flux(u,u,a) = f(u) on 1000 random states, max deviation " +
                fmt("%.2e", worst));
  }

  // Exact Euler solver: jump conditions and contact invariance.
  for (const auto& s : {sod_riemann_setup(), lax_riemann_setup()}) {
    const ExactRiemannEuler solver(s.left, s.right);
    const int samples = 10000;
    double rh = 0.0, contact = 0.0;
    int shocks = 0, contacts = 0;
    EulerPrimitive prev = solver.sample(-6.0);
    double prev_xi = -6.0;
    const auto cons = [](const EulerPrimitive& w) {
      return std::array<double, 3>{w.rho, w.rho * w.u, w.p / 0.4 + 0.5 * w.rho * w.u * w.u};
    };
    const auto flux = [&](const EulerPrimitive& w) {
      const auto q = cons(w);
      return std::array<double, 3>{q[1], q[1] * w.u + w.p, w.u * (q[2] + w.p)};
    };
    for (int k = 1; k < samples; ++k) {
      const double xi = -6.0 + 12.0 * k / (samples - 1);
      const auto w = solver.sample(xi);
      if (std::abs(w.rho - prev.rho) > 1e-3) {
        if (prev_xi <= solver.star().u && solver.star().u <= xi) {
          ++contacts;
          contact = std::max({contact, std::abs(w.p - prev.p), std::abs(w.u - prev.u)});
        } else {
          ++shocks;
          const auto ql = cons(prev), qr = cons(w), fl = flux(prev), fr = flux(w);
          const double sp = (fr[0] - fl[0]) / (qr[0] - ql[0]);
          rh = std::max({rh, std::abs(fr[1] - fl[1] - sp * (qr[1] - ql[1])),
                         std::abs(fr[2] - fl[2] - sp * (qr[2] - ql[2]))});
        }
      }
      prev = w;
      prev_xi = xi;
    }
    r.check(6, shocks >= 1 && contacts == 1 && rh <= 1e-8 && contact <= 1e-10,
            "exact solver fan: " + std::to_string(shocks) + " shock(s), Rankine-Hugoniot residual " +
                fmt("%.2e", rh) + " <= 1e-8, contact p/u jump " + fmt("%.2e", contact) +
                " <= 1e-10");
  }

  {
    const auto s = sod_riemann_setup();
    const double p = ExactRiemannEuler(s.left, s.right).star().p;
    const double oracle_p = oracle::bisect_star({1, 0, 1}, {0.125, 0, 0.1}).p;
    r.check(6, std::abs(p - 0.30313) <= 1e-5 && std::abs(p - oracle_p) <= 1e-10,
            "Sod star pressure " + fmt("%.8f", p) + " (bisection " +
                fmt("%.8f", oracle_p) + ")");
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void criterion_7(Report& r) {
  namespace fs = std::filesystem;
  const auto root = fs::temp_directory_path() / "ktrelax_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> configs{
      {"advect", "--n", "20,40,80,160"},
      {"advect", "--cfl", "parabolic", "--n", "20,40"},
      {"nonconvex", "--n", "100"},
      {"lax", "--n", "100,200"}};
  for (std::size_t c = 0; c < configs.size(); ++c) {
    auto args = configs[c];
    args.insert(args.end(), {"--out", (root / std::to_string(c)).string()});
    const auto config = cli::parse_args(args);
    std::ostringstream log;
    const auto first = cli::run(config, log);
    std::vector<std::string> contents;
    for (const auto& f : first) contents.push_back(slurp(f));
    const auto second = cli::run(config, log);
    bool same = first == second;
    for (std::size_t k = 0; same && k < second.size(); ++k) {
      same = slurp(second[k]) == contents[k];
    }
    std::string joined;
    for (const auto& a : configs[c]) joined += " " + a;
    r.check(7, same && !first.empty(),
            "byte-identical CSV on repeat:" + joined + " (" +
                std::to_string(first.size()) + " files)");
  }
  fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Report&)>> criteria{
      criterion_1, criterion_2, criterion_3, criterion_4,
      criterion_5, criterion_6, criterion_7};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion K]\n");
      return 1;
    }
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
    return 1;
  }
  Report report;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only != 0 && only != static_cast<int>(k) + 1) continue;
    try {
      criteria[k](report);
    } catch (const std::exception& e) {
      report.check(static_cast<int>(k) + 1, false,
                   std::string("aborted with exception: ") + e.what());
    }
  }
  std::printf("%d/%d checks passed\n", report.checks - report.failures, report.checks);
  return report.failures == 0 ? 0 : 1;
}
