#include "commsplit.h"

#include <cstring>
#include <string>

#include "../core/builders.hpp"
#include "../core/demos.hpp"
#include "../core/evaluator.hpp"
#include "../core/planner.hpp"

using namespace commsplit;

struct cs_formula {
  ProductFormula f;
};

namespace {
thread_local std::string g_last_error = "no error";

cs_status fail(cs_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
cs_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(CS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const ParseError& e) {
    return fail(CS_ERR_PARSE, e.what());
  } catch (const InsufficientDataError& e) {
    return fail(CS_ERR_INSUFFICIENT_DATA, e.what());
  } catch (const InfeasibleError& e) {
    return fail(CS_ERR_INFEASIBLE, e.what());
  } catch (const CapacityError& e) {
    return fail(CS_ERR_CAPACITY, e.what());
  } catch (const UnverifiedError& e) {
    return fail(CS_ERR_UNVERIFIED, e.what());
  } catch (const std::exception& e) {
    return fail(CS_ERR_INTERNAL, e.what());
  }
}

ProductFormula build_by_name(const std::string& family, int p2, int k) {
  auto need_even = [&]() {
    if (p2 % 2 != 0 || p2 < 2) {
      throw std::invalid_argument(family + ": integer levels only, p2 must be even >= 2");
    }
    return p2 / 2;
  };
  if (family == "odd") return build_odd(need_even(), k);
  if (family == "odd-sym") return build_odd_symmetrized(need_even());
  if (family == "even") return build_even(need_even(), k);
  if (family == "nestf") return build_nested(need_even(), k);
  if (family == "gc") return build_gc_base(k);
  if (family == "nestgc") return build_nestgc(p2, k);
  if (family == "bgc") return build_bgc(p2);
  if (family == "jk") return build_jk(p2, k);
  throw std::invalid_argument("unknown family \"" + family + "\"");
}

OperatorSet ops_from_spec(const ProductFormula& f, const std::string& spec,
                          uint64_t seed) {
  const Complex i{0.0, 1.0};
  if (spec == "pauli" || spec == "pauli-xz") {
    bool flat = true;
    for (const auto& t : f.terms) flat = flat && t.tpow == 1;
    if (f.max_slot() == 1 && f.k == 2 && flat) {
      OperatorSet ops;
      ops.k = 2;
      ops.ops[1] = i * pauli_x();
      ops.ops[0] = i * pauli_z();
      ops.ops[2] = -ops.ops[1];
      return ops;
    }
    if (f.max_slot() == 1) return pauli_xz_ops(f.k);
    throw std::invalid_argument(
        "ops spec \"pauli\" needs a two-slot formula; use random:<dim>");
  }
  if (spec.rfind("random:", 0) == 0) {
    int dim = std::stoi(spec.substr(7));
    if (dim < 2 || dim > 64) {
      throw std::invalid_argument("random ops dim must be in [2, 64]");
    }
    std::mt19937_64 rng(seed);
    OperatorSet ops;
    ops.k = f.max_slot() > 1 ? f.max_slot() : f.k;
    for (int s = 0; s <= f.max_slot(); ++s) ops.ops[s] = random_antihermitian(dim, rng);
    return ops;
  }
  throw std::invalid_argument("unknown ops spec \"" + spec + "\"");
}
}  // namespace

extern "C" {

cs_status cs_formula_build(const char* family, int p2, int k, cs_formula** out) {
  if (!family || !out) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cs_formula{build_by_name(family, p2, k)};
    return CS_OK;
  });
}

cs_status cs_formula_from_json(const char* json_text, cs_formula** out) {
  if (!json_text || !out) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cs_formula{from_json(json_text)};
    return CS_OK;
  });
}

cs_status cs_formula_to_json(const cs_formula* f, char** out_json) {
  if (!f || !out_json) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(to_json(f->f));
    return CS_OK;
  });
}

cs_status cs_formula_stats_get(const cs_formula* f, cs_formula_stats* out) {
  if (!f || !out) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    FormulaStats st = stats(f->f);
    out->n_terms = st.n_terms;
    out->raw_term_count = f->f.raw_term_count;
    out->q_mean = st.q_mean;
    out->q_max = st.q_max;
    out->k = f->f.k;
    out->p2 = f->f.p2;
    out->nu = f->f.nu;
    return CS_OK;
  });
}

cs_status cs_formula_invert(const cs_formula* f, cs_formula** out) {
  if (!f || !out) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cs_formula{invert(f->f)};
    return CS_OK;
  });
}

cs_status cs_formula_simplify(const cs_formula* f, double tol, cs_formula** out) {
  if (!f || !out) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cs_formula{simplify(f->f, tol)};
    return CS_OK;
  });
}

void cs_formula_free(cs_formula* f) { delete f; }

cs_status cs_scan(const cs_formula* f, const char* ops_spec, uint64_t seed, double tmin,
                  double tmax, int points, char** out_csv, double* out_slope) {
  if (!f || !ops_spec || !out_csv) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    OperatorSet ops = ops_from_spec(f->f, ops_spec, seed);
    ScanResult s = order_scan(f->f, ops, make_geometric_grid(tmin, tmax, points));
    *out_csv = dup_string(scan_to_csv(s));
    if (out_slope) *out_slope = s.fitted_slope;
    return CS_OK;
  });
}

cs_status cs_plan(const char* family, int p2, int k, double lambda, double t, double eps,
                  int p_max, char** out_json) {
  if (!family || !out_json) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Family fam = family_from_string(family);
    EvolutionPlan plan =
        p2 > 0 ? make_plan(fam, p2, k, lambda, t, eps)
               : optimal_p(fam, k, lambda, t, eps, p_max > 0 ? p_max : 5);
    *out_json = dup_string(plan_to_json(plan));
    return CS_OK;
  });
}

cs_status cs_demo_grover(int n, long long r_override, uint64_t seed, char** out_json) {
  if (!out_json) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(demo_grover(n, r_override, seed));
    return CS_OK;
  });
}

cs_status cs_demo_control(double b0, double omega0, double t, int p2, char** out_json) {
  if (!out_json) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(demo_control(b0, omega0, t, p2));
    return CS_OK;
  });
}

cs_status cs_demo_anticomm(int dim, double t, int p2, uint64_t seed, char** out_json) {
  if (!out_json) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(demo_anticomm(dim, t, p2, seed));
    return CS_OK;
  });
}

cs_status cs_demo_toric(double j, double t, double eps, char** out_json) {
  if (!out_json) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_json = dup_string(demo_toric(j, t, eps));
    return CS_OK;
  });
}

cs_status cs_compare(const char* families_csv, int k, char** out_csv) {
  if (!families_csv || !out_csv) return fail(CS_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out_csv = dup_string(compare_families(families_csv, k));
    return CS_OK;
  });
}

const char* cs_last_error(void) { return g_last_error.c_str(); }

void cs_string_free(char* s) { delete[] s; }

}  // extern "C"
