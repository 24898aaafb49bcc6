#include <doctest.h>

#include <cmath>
#include <random>

#include "builders.hpp"
#include "evaluator.hpp"
#include "planner.hpp"

using namespace commsplit;
using doctest::Approx;

namespace {
BoundInputs canonical() {
  // the k=1, p=2 flattened formula driving sigma_x/sigma_z at unit strength
  BoundInputs in;
  in.p2 = 4;
  in.k = 1;
  in.n_terms = 24;
  in.q = 0.98214772616346115943;  // mean |coeff| of that formula
  in.lambda = 2.0;
  in.t = 1.0;
  in.epsilon = 1e-6;
  return in;
}
}  // namespace

TEST_CASE("frozen canonical step count") {
  CHECK(steps_required(canonical()) == 143189354);
}

TEST_CASE("frozen canonical remainder bound and threshold") {
  BoundInputs in = canonical();
  in.t = 0.01;
  in.epsilon = 0.0;
  CHECK(remainder_bound(in) == Approx(0.020503191009207187625).epsilon(1e-12));
  CHECK(epsilon_threshold(canonical()) == Approx(958.18880007050165872).epsilon(1e-12));
}

TEST_CASE("remainder bound is a pure power law in t") {
  BoundInputs in;
  in.p2 = 4;
  in.k = 1;
  in.n_terms = 10;
  in.q = 1.0;
  in.lambda = 1.0;
  in.nu = 6;
  in.t = 0.002;
  double b1 = remainder_bound(in);
  in.t = 0.004;
  double b2 = remainder_bound(in);
  CHECK(b2 / b1 == Approx(std::pow(2.0, 6)).epsilon(1e-10));
}

TEST_CASE("remainder bound is monotone in each input") {
  BoundInputs in = canonical();
  in.t = 0.005;
  double base = remainder_bound(in);
  BoundInputs m = in;
  m.t *= 1.1;
  CHECK(remainder_bound(m) > base);
  m = in;
  m.lambda *= 1.1;
  CHECK(remainder_bound(m) > base);
  m = in;
  m.q *= 0.9;
  CHECK(remainder_bound(m) < base);
}

TEST_CASE("assumption checks")
{
  BoundInputs in;
  in.p2 = 2;
  in.k = 1;
  in.n_terms = 2;
  in.q = 1.0;
  in.lambda = 1.0;
  in.t = 0.3;

  // N q = 2, lambda t = 0.3 <= ln2/2 = 0.3466
  AssumptionReport rep = check_assumptions(in);
  CHECK(rep.all_pass());
  CHECK(rep.items.size() == 5);
  CHECK(rep.items[3].margin == Approx(std::log(2.0) / 2.0 - 0.3).epsilon(1e-12));
  CHECK_FALSE(rep.items[1].checked);  // coefficient bound holds by construction
  CHECK_FALSE(rep.items[2].checked);  // no operator norms supplied

  in.t = 0.4;  // now lambda t > ln2/2
  rep = check_assumptions(in);
  CHECK_FALSE(rep.all_pass());
  CHECK_FALSE(rep.items[3].pass);

  in.t = 0.3;
  in.q = 0.25;  // N q = 0.5 < 1
  rep = check_assumptions(in);
  CHECK_FALSE(rep.items[4].pass);

  // supplying operator norms activates item 3
  in.q = 1.0;
  rep = check_assumptions(in, 0.4);
  CHECK(rep.items[2].checked);
  CHECK(rep.items[2].pass);  // lambda = 1.0 >= 2 * 0.4
  rep = check_assumptions(in, 0.6);
  CHECK_FALSE(rep.items[2].pass);
}

TEST_CASE("remainder bound refuses violated assumptions") {
  BoundInputs in = canonical();  // lambda t = 2 >> ln2/(NQ)
  CHECK_THROWS_AS(remainder_bound(in), InfeasibleError);
  try {
    remainder_bound(in);
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("assumption 4") != std::string::npos);
  }
}

TEST_CASE("step count scales as the epsilon power law") {
  BoundInputs in = canonical();
  in.epsilon = 1e-8;
  BoundInputs half = in;
  half.epsilon = in.epsilon / 2.0;
  double ratio = static_cast<double>(steps_required(half)) /
                 static_cast<double>(steps_required(in));
  // r ~ eps^{-(k+1)/p2} so halving eps multiplies r by 2^{(k+1)/p2}
  CHECK(ratio == Approx(std::pow(2.0, 0.5)).epsilon(1e-6));
}

TEST_CASE("step count overflows to a capacity error, never wraps") {
  BoundInputs in = canonical();
  in.epsilon = 1e-200;
  CHECK_THROWS_AS(steps_required(in), CapacityError);
}

TEST_CASE("total exponentials") {
  BoundInputs in = canonical();
  CHECK(total_exponentials(in) == 24LL * 143189354LL);
}

TEST_CASE("frozen canonical plan search") {
  EvolutionPlan best = optimal_p(Family::Nestf, 1, 2.0, 1.0, 1e-6, 5);
  CHECK(best.p2 == 4);
  CHECK(best.r == 405000652);
  CHECK(best.n_exp == 19440031296LL);
  CHECK(best.bound <= 1e-6);
  CHECK(best.assumptions.all_pass());
}

TEST_CASE("optimal level is monotone as accuracy tightens") {
  int prev = 0;
  for (double eps : {1e-2, 1e-4, 1e-8, 1e-12}) {
    EvolutionPlan p = optimal_p(Family::Nestf, 1, 2.0, 0.5, eps, 6);
    CHECK(p.p2 >= prev);
    prev = p.p2;
  }
}

TEST_CASE("plan JSON carries the contract fields") {
  EvolutionPlan p = make_plan(Family::Nestgc, 2, 2, 2.0, 0.3, 1e-3);
  std::string j = plan_to_json(p);
  for (const char* key : {"\"r\"", "\"step_time\"", "\"n_exp\"", "\"bound\"",
                          "\"assumptions\"", "\"family\"", "\"p2\"", "\"k\""}) {
    CHECK(j.find(key) != std::string::npos);
  }
  CHECK(j.find("nestgc") != std::string::npos);
}

TEST_CASE("family construction rules") {
  CHECK_THROWS_AS(build_family(Family::Nestf, 3, 1), std::invalid_argument);
  CHECK(build_family(Family::Nestf, 4, 2).nu == 7);
  CHECK(build_family(Family::Nestgc, 3, 2).nu == 6);
}

TEST_CASE("planned bound really contains the measured error") {
  // moderate instances where simulating r steps is cheap
  std::mt19937_64 rng(42);
  int tried = 0;
  for (int trial = 0; trial < 60 && tried < 12; ++trial) {
    std::uniform_real_distribution<double> tdist(0.02, 0.15);
    std::uniform_real_distribution<double> edist(-5.0, -2.0);
    double t = tdist(rng);
    double eps = std::pow(10.0, edist(rng));
    Family fam = trial % 2 == 0 ? Family::Nestf : Family::Nestgc;
    int k = 1 + static_cast<int>(rng() % 2);
    EvolutionPlan plan;
    try {
      plan = optimal_p(fam, k, 2.0, t, eps, 2);
    } catch (const InfeasibleError&) {
      continue;
    }
    if (plan.r > 4096) continue;  // keep the simulation cheap
    ++tried;
    ProductFormula f = build_family(fam, plan.p2, plan.k);
    OperatorSet ops = pauli_xz_ops(k);
    if (k == 2) {
      std::mt19937_64 oprng(trial);
      ops.ops.clear();
      ops.k = 2;
      for (int j = 0; j <= f.max_slot(); ++j) {
        ops.ops[j] = 0.5 * random_antihermitian(2, oprng);
      }
    }
    Matrix u = segment_evolve(f, ops, t, plan.r);
    double err = spectral_norm(u - exact_target(ops, t));
    CHECK(err <= plan.bound * (1.0 + 1e-9) + 1e-14);
    CHECK(plan.bound <= eps);
  }
  CHECK(tried >= 5);
}
