#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commsplit.h"

namespace {

int exit_code_for(cs_status st) {
  switch (st) {
    case CS_OK: return 0;
    case CS_ERR_INSUFFICIENT_DATA: return 2;
    case CS_ERR_INFEASIBLE: return 3;
    default: return 1;
  }
}

int report_error(cs_status st) {
  std::cerr << "error: " << cs_last_error() << "\n";
  return exit_code_for(st);
}

// Write via a temp file in the same directory, then rename into place.
bool atomic_write(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return true;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << data;
    if (!out) return false;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

uint64_t default_seed() {
  if (const char* env = std::getenv("COMMSPLIT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 12345;
}

struct StringGuard {
  char* s = nullptr;
  ~StringGuard() { cs_string_free(s); }
};

struct FormulaGuard {
  cs_formula* f = nullptr;
  ~FormulaGuard() { cs_formula_free(f); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product formulas for exponentials of commutators"};
  app.require_subcommand(1);

  uint64_t seed = default_seed();
  app.add_option("--seed", seed, "Seed for random operator sets");

  // build
  auto* build = app.add_subcommand("build", "Construct a formula and write its JSON");
  std::string b_family = "odd", b_out = "-";
  int b_p2 = 2, b_k = 1;
  build->add_option("--family", b_family,
                    "odd|odd-sym|even|nestf|gc|nestgc|bgc|jk");
  build->add_option("--p2", b_p2, "Refinement level times two");
  build->add_option("--k", b_k, "Commutator nesting level");
  build->add_option("--out", b_out, "Output path ('-' for stdout)");

  // scan
  auto* scan = app.add_subcommand("scan", "Measure errors over a t grid and fit the order");
  std::string s_formula, s_ops = "pauli-xz", s_out = "-";
  double s_tmin = 1e-3, s_tmax = 0.7;
  int s_points = 24;
  scan->add_option("--formula", s_formula, "Formula JSON file")->required();
  scan->add_option("--ops", s_ops, "pauli-xz | random:<dim>");
  scan->add_option("--tmin", s_tmin);
  scan->add_option("--tmax", s_tmax);
  scan->add_option("--points", s_points);
  scan->add_option("--out", s_out, "Output CSV path");

  // plan
  auto* plan = app.add_subcommand("plan", "Size a segmented evolution");
  std::string p_family = "nestf", p_out = "-";
  int p_p2 = 0, p_k = 1, p_pmax = 5;
  bool p_optimize = false;
  double p_lambda = 2.0, p_t = 1.0, p_eps = 1e-6;
  plan->add_option("--family", p_family, "nestf|nestgc");
  plan->add_option("--p2", p_p2, "Level (omit or use --optimize to search)");
  plan->add_flag("--optimize", p_optimize, "Search levels up to --p-max");
  plan->add_option("--k", p_k);
  plan->add_option("--lambda", p_lambda);
  plan->add_option("--t", p_t);
  plan->add_option("--eps", p_eps);
  plan->add_option("--p-max", p_pmax);
  plan->add_option("--out", p_out, "Output JSON path");

  // demos
  auto* grover = app.add_subcommand("demo-grover", "Projector-commutator search rotation");
  int g_n = 16;
  long long g_segments = 0;
  std::string g_segments_str = "auto", g_out = "-";
  grover->add_option("--n", g_n, "Search space size");
  grover->add_option("--segments", g_segments_str, "auto or an explicit step count");
  grover->add_option("--out", g_out);

  auto* control = app.add_subcommand("demo-control", "Effective y rotation from two axes");
  double c_b0 = 1.0, c_omega0 = 1.0, c_t = 0.05;
  int c_p2 = 2;
  std::string c_out = "-";
  control->add_option("--b0", c_b0);
  control->add_option("--omega0", c_omega0);
  control->add_option("--t", c_t);
  control->add_option("--p2", c_p2);
  control->add_option("--out", c_out);

  auto* anticomm = app.add_subcommand("demo-anticomm", "Anticommutator via dilation");
  int a_dim = 4, a_p2 = 2;
  double a_t = 0.1;
  std::string a_out = "-";
  anticomm->add_option("--dim", a_dim);
  anticomm->add_option("--t", a_t);
  anticomm->add_option("--p2", a_p2);
  anticomm->add_option("--out", a_out);

  auto* toric = app.add_subcommand("demo-toric", "2x2 torus stabilizer evolution");
  double t_j = 1.0, t_t = 0.5, t_eps = 1e-3;
  int t_lx = 2, t_ly = 2;
  std::string t_out = "-";
  toric->add_option("--lx", t_lx, "Lattice width (2 only)");
  toric->add_option("--ly", t_ly, "Lattice height (2 only)");
  toric->add_option("--j", t_j, "Coupling");
  toric->add_option("--t", t_t, "Evolution time");
  toric->add_option("--eps", t_eps, "Total error budget");
  toric->add_option("--out", t_out);

  auto* compare = app.add_subcommand("compare", "Error-versus-cost curves per family");
  std::string m_families = "nestf,nestgc", m_out = "-", m_workload = "fig3";
  int m_k = 1;
  compare->add_option("--families", m_families, "Comma list: nestf,nestgc,jk");
  compare->add_option("--k", m_k);
  compare->add_option("--workload", m_workload, "Workload name (fig3 only)");
  compare->add_option("--out", m_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      FormulaGuard f;
      cs_status st = cs_formula_build(b_family.c_str(), b_p2, b_k, &f.f);
      if (st != CS_OK) return report_error(st);
      cs_formula_stats fs;
      if ((st = cs_formula_stats_get(f.f, &fs)) != CS_OK) return report_error(st);
      StringGuard json;
      if ((st = cs_formula_to_json(f.f, &json.s)) != CS_OK) return report_error(st);
      if (!atomic_write(b_out, json.s)) {
        std::cerr << "error: cannot write " << b_out << "\n";
        return 1;
      }
      std::cerr << "N=" << fs.n_terms << " raw=" << fs.raw_term_count
                << " q_mean=" << fs.q_mean << " q_max=" << fs.q_max << " nu=" << fs.nu
                << "\n";
      return 0;
    }

    if (*scan) {
      FormulaGuard f;
      std::string doc = read_file(s_formula);
      cs_status st = cs_formula_from_json(doc.c_str(), &f.f);
      if (st != CS_OK) return report_error(st);
      cs_formula_stats fs;
      cs_formula_stats_get(f.f, &fs);
      StringGuard csv;
      double slope = 0.0;
      st = cs_scan(f.f, s_ops.c_str(), seed, s_tmin, s_tmax, s_points, &csv.s, &slope);
      if (st != CS_OK) return report_error(st);
      if (!atomic_write(s_out, csv.s)) {
        std::cerr << "error: cannot write " << s_out << "\n";
        return 1;
      }
      std::cerr << "slope=" << slope << " claimed nu=" << fs.nu << "\n";
      if (slope < fs.nu - 0.25) {
        std::cerr << "error: fitted slope " << slope << " below claimed order " << fs.nu
                  << " - 0.25\n";
        return 1;
      }
      return 0;
    }

    if (*plan) {
      StringGuard json;
      int level = p_optimize ? 0 : p_p2;
      cs_status st = cs_plan(p_family.c_str(), level, p_k, p_lambda, p_t, p_eps, p_pmax,
                             &json.s);
      if (st != CS_OK) return report_error(st);
      if (!atomic_write(p_out, json.s)) {
        std::cerr << "error: cannot write " << p_out << "\n";
        return 1;
      }
      return 0;
    }

    auto run_demo = [&](cs_status st, StringGuard& json, const std::string& out) {
      if (st != CS_OK) return report_error(st);
      if (!atomic_write(out, json.s)) {
        std::cerr << "error: cannot write " << out << "\n";
        return 1;
      }
      return 0;
    };

    if (*grover) {
      if (g_segments_str != "auto") g_segments = std::stoll(g_segments_str);
      StringGuard json;
      return run_demo(cs_demo_grover(g_n, g_segments, seed, &json.s), json, g_out);
    }
    if (*control) {
      StringGuard json;
      return run_demo(cs_demo_control(c_b0, c_omega0, c_t, c_p2, &json.s), json, c_out);
    }
    if (*anticomm) {
      StringGuard json;
      return run_demo(cs_demo_anticomm(a_dim, a_t, a_p2, seed, &json.s), json, a_out);
    }
    if (*toric) {
      if (t_lx != 2 || t_ly != 2) {
        std::cerr << "error: only the 2x2 lattice is supported\n";
        return 1;
      }
      StringGuard json;
      return run_demo(cs_demo_toric(t_j, t_t, t_eps, &json.s), json, t_out);
    }
    if (*compare) {
      StringGuard csv;
      return run_demo(cs_compare(m_families.c_str(), m_k, &csv.s), csv, m_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
