#include "planner.hpp"

#include <cmath>
#include <json.hpp>

#include "builders.hpp"

namespace commsplit {

namespace {
constexpr long long kMaxR = 9223372036854775807LL;  // 2^63 - 1

void require_positive(const BoundInputs& in, bool need_epsilon) {
  if (in.p2 < 1) throw std::invalid_argument("planner: p2 must be >= 1");
  if (in.k < 1) throw std::invalid_argument("planner: k must be >= 1");
  if (in.n_terms < 1) throw std::invalid_argument("planner: n_terms must be >= 1");
  if (!(in.q > 0.0) || !(in.lambda > 0.0) || !(in.t > 0.0)) {
    throw std::invalid_argument("planner: q, lambda, t must be positive");
  }
  if (need_epsilon && !(in.epsilon > 0.0)) {
    throw std::invalid_argument("planner: epsilon must be positive");
  }
}

// log(e N Q Lambda t / nu^{1/(k+1)})
long double log_core(const BoundInputs& in) {
  long double nqlt = static_cast<long double>(in.n_terms) * in.q * in.lambda * in.t;
  return 1.0L + std::log(nqlt) - std::log(static_cast<long double>(in.effective_nu())) /
                                     (in.k + 1);
}
}  // namespace

bool AssumptionReport::all_pass() const {
  for (const auto& it : items) {
    if (it.checked && !it.pass) return false;
  }
  return true;
}

AssumptionReport check_assumptions(const BoundInputs& in, double max_op_norm) {
  require_positive(in, false);
  AssumptionReport rep;
  const int nu = in.effective_nu();
  const double nq = static_cast<double>(in.n_terms) * in.q;

  AssumptionItem a1{1, "order exceeds target power: nu > k+1", nu > in.k + 1, true,
                    static_cast<double>(nu - (in.k + 1))};
  rep.items.push_back(a1);

  AssumptionItem a2{2, "mean |coeff| bounded by q (holds by construction when q comes "
                       "from formula stats)",
                    true, false, 0.0};
  rep.items.push_back(a2);

  AssumptionItem a3{3, "lambda >= 2 max_j ||A_j||", true, false, 0.0};
  if (max_op_norm >= 0.0) {
    a3.checked = true;
    a3.margin = in.lambda - 2.0 * max_op_norm;
    a3.pass = a3.margin >= 0.0;
  }
  rep.items.push_back(a3);

  double cap = std::log(2.0) / nq;
  AssumptionItem a4{4, "lambda t <= ln2 / (N q)", in.lambda * in.t <= cap, true,
                    cap - in.lambda * in.t};
  rep.items.push_back(a4);

  AssumptionItem a5{5, "N q >= 1", nq >= 1.0, true, nq - 1.0};
  rep.items.push_back(a5);
  return rep;
}

double remainder_bound(const BoundInputs& in) {
  AssumptionReport rep = check_assumptions(in);
  for (const auto& it : rep.items) {
    if (it.checked && !it.pass) {
      throw InfeasibleError("remainder_bound: assumption " + std::to_string(it.id) +
                            " violated (" + it.description + ")");
    }
  }
  long double lb = in.effective_nu() * log_core(in);
  return static_cast<double>(std::exp(lb));
}

long long steps_required(const BoundInputs& in) {
  require_positive(in, true);
  const long double kp1 = in.k + 1;
  // Excess of the formula order over the target power; equals p2 whenever the
  // order is the nominal p2+k+1, but honest orders can be lower.
  const int excess = in.effective_nu() - (in.k + 1);
  if (excess < 1) {
    throw InfeasibleError("steps_required: formula order does not exceed k+1");
  }
  long double exponent = kp1 + kp1 * kp1 / excess;
  long double log_r =
      exponent * log_core(in) - (kp1 / excess) * std::log((long double)in.epsilon);
  if (log_r >= std::log((long double)kMaxR)) {
    throw CapacityError("steps_required: step count exceeds 2^63-1; subdivide t");
  }
  long double x = std::exp(log_r);
  long long r = static_cast<long long>(std::ceil(x));
  return r < 1 ? 1 : r;
}

double epsilon_threshold(const BoundInputs& in) {
  require_positive(in, false);
  const int nu = in.effective_nu();
  long double nqlt = static_cast<long double>(in.n_terms) * in.q * in.lambda * in.t;
  long double lg = nu * (1.0L - std::log((long double)nu) / (in.k + 1)) +
                   (nu - in.k - 1) * std::log(std::log(2.0L)) +
                   (in.k + 1) * std::log(nqlt);
  return static_cast<double>(std::exp(lg));
}

long long total_exponentials(const BoundInputs& in) {
  long long r = steps_required(in);
  __int128 total = static_cast<__int128>(in.n_terms) * r;
  if (total > static_cast<__int128>(kMaxR)) {
    throw CapacityError("total_exponentials: count exceeds 2^63-1");
  }
  return static_cast<long long>(total);
}

std::string to_string(Family f) {
  return f == Family::Nestf ? "nestf" : "nestgc";
}

Family family_from_string(const std::string& s) {
  if (s == "nestf") return Family::Nestf;
  if (s == "nestgc") return Family::Nestgc;
  throw std::invalid_argument("unknown family \"" + s + "\"");
}

ProductFormula build_family(Family family, int p2, int k) {
  if (family == Family::Nestf) {
    if (p2 % 2 != 0) {
      throw std::invalid_argument("nestf levels are integers: p2 must be even");
    }
    return build_nested(p2 / 2, k);
  }
  return build_nestgc(p2, k);
}

EvolutionPlan make_plan(Family family, int p2, int k, double lambda, double t,
                        double epsilon) {
  ProductFormula f = build_family(family, p2, k);
  FormulaStats st = stats(f);

  EvolutionPlan plan;
  plan.family = family;
  plan.p2 = p2;
  plan.k = k;
  plan.n_terms = st.n_terms;
  plan.q = st.q_mean;
  plan.lambda = lambda;
  plan.t = t;
  plan.epsilon = epsilon;

  BoundInputs in;
  in.p2 = p2;
  in.k = k;
  in.n_terms = st.n_terms;
  in.q = st.q_mean;
  in.lambda = lambda;
  in.t = t;
  in.epsilon = epsilon;
  in.nu = f.nu;

  plan.r = steps_required(in);
  plan.n_exp = total_exponentials(in);
  plan.step_time = t / std::pow(static_cast<double>(plan.r), 1.0 / (k + 1));

  BoundInputs per_step = in;
  per_step.t = plan.step_time;
  plan.assumptions = check_assumptions(per_step);
  if (!plan.assumptions.all_pass()) {
    throw InfeasibleError("make_plan: per-step assumptions fail at p2=" +
                          std::to_string(p2) + "; subdivide t");
  }
  plan.bound = plan.r * remainder_bound(per_step);
  return plan;
}

EvolutionPlan optimal_p(Family family, int k, double lambda, double t, double epsilon,
                        int p_max) {
  if (p_max < 1) throw std::invalid_argument("optimal_p: p_max must be >= 1");
  bool found = false;
  EvolutionPlan best;
  for (int p2 = family == Family::Nestf ? 2 : 1; p2 <= 2 * p_max;
       p2 += family == Family::Nestf ? 2 : 1) {
    EvolutionPlan cand;
    try {
      cand = make_plan(family, p2, k, lambda, t, epsilon);
    } catch (const InfeasibleError&) {
      continue;
    } catch (const CapacityError&) {
      continue;
    }
    if (!found || cand.n_exp < best.n_exp) {
      best = cand;
      found = true;
    }
  }
  if (!found) {
    throw InfeasibleError(
        "optimal_p: no admissible refinement level up to p_max; subdivide t into "
        "shorter segments");
  }
  return best;
}

std::string plan_to_json(const EvolutionPlan& plan) {
  nlohmann::json j;
  j["family"] = to_string(plan.family);
  j["p2"] = plan.p2;
  j["k"] = plan.k;
  j["n_terms"] = plan.n_terms;
  j["q"] = plan.q;
  j["lambda"] = plan.lambda;
  j["t"] = plan.t;
  j["epsilon"] = plan.epsilon;
  j["r"] = plan.r;
  j["step_time"] = plan.step_time;
  j["n_exp"] = plan.n_exp;
  j["bound"] = plan.bound;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& it : plan.assumptions.items) {
    items.push_back({{"id", it.id},
                     {"description", it.description},
                     {"pass", it.pass},
                     {"checked", it.checked},
                     {"margin", it.margin}});
  }
  j["assumptions"] = {{"items", items}, {"all_pass", plan.assumptions.all_pass()}};
  return j.dump(2) + "\n";
}

}  // namespace commsplit
