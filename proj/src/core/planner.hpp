#ifndef COMMSPLIT_PLANNER_HPP
#define COMMSPLIT_PLANNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "formula.hpp"

namespace commsplit {

/// Inputs to the remainder bound and the step-count model.  nu defaults to
/// p2 + k + 1 when left at 0.
struct BoundInputs {
  int p2 = 2;
  int k = 1;
  long long n_terms = 0;
  double q = 0.0;       // bound on the mean |coeff|
  double lambda = 0.0;  // >= 2 max_j ||A_j||
  double t = 0.0;
  double epsilon = 0.0;
  int nu = 0;

  int effective_nu() const { return nu > 0 ? nu : p2 + k + 1; }
};

struct AssumptionItem {
  int id = 0;
  std::string description;
  bool pass = false;
  bool checked = true;  // false when the needed data was not supplied
  double margin = 0.0;  // how far inside (positive) or outside the constraint
};

struct AssumptionReport {
  std::vector<AssumptionItem> items;
  bool all_pass() const;
};

/// Items 1-5 of the single-step error bound hypothesis.  max_op_norm < 0
/// means "operators not supplied" and item 3 is reported unchecked.
AssumptionReport check_assumptions(const BoundInputs& in, double max_op_norm = -1.0);

/// (e N Q L t / nu^{1/(k+1)})^nu, evaluated in log space.  Throws
/// InfeasibleError naming the first violated assumption.
double remainder_bound(const BoundInputs& in);

/// Smallest r with r >= (e N Q L t / nu^{1/(k+1)})^{k+1+(k+1)^2/p2} /
/// eps^{(k+1)/p2} (p2 = 2p).  Throws CapacityError past 2^63 - 1.
long long steps_required(const BoundInputs& in);

/// Epsilon level below which the per-step assumptions hold automatically:
/// (e/nu^{1/(k+1)})^nu (ln 2)^{p2} (N Q L t)^{k+1}.
double epsilon_threshold(const BoundInputs& in);

/// n_terms * steps_required.
long long total_exponentials(const BoundInputs& in);

enum class Family { Nestf, Nestgc };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct EvolutionPlan {
  Family family = Family::Nestf;
  int p2 = 2;
  int k = 1;
  long long n_terms = 0;
  double q = 0.0;
  double lambda = 0.0;
  double t = 0.0;
  double epsilon = 0.0;
  long long r = 0;
  double step_time = 0.0;
  long long n_exp = 0;
  double bound = 0.0;  // guaranteed total error
  AssumptionReport assumptions;
};

/// Construct the family formula at (p2, k), derive N and Q from it, and
/// size the segmentation for the requested accuracy.
EvolutionPlan make_plan(Family family, int p2, int k, double lambda, double t,
                        double epsilon);

/// Exhaustive search over refinement levels up to p_max minimizing the
/// total exponential count; ties break toward smaller p2.  Throws
/// InfeasibleError when no level is admissible.
EvolutionPlan optimal_p(Family family, int k, double lambda, double t, double epsilon,
                        int p_max);

std::string plan_to_json(const EvolutionPlan& plan);

/// The formula backing a plan family at a given level.
ProductFormula build_family(Family family, int p2, int k);

}  // namespace commsplit

#endif
