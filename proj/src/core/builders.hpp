#ifndef COMMSPLIT_BUILDERS_HPP
#define COMMSPLIT_BUILDERS_HPP

#include "formula.hpp"

namespace commsplit {

/// Coefficient schedule for one refinement step of the odd-k recursion.
struct OddSchedule {
  int p = 1;
  int k = 1;
  double r = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Coefficient schedule for one refinement step of the even-k / generic
/// recursion.  p2 encodes 2p, so half-integer steps are exact.
struct EvenSchedule {
  int p2 = 2;
  int k = 2;
  double s = 0.0;
  double mu = 0.0;
  double nu = 0.0;
};

OddSchedule coeff_odd(int p, int k);
EvenSchedule coeff_even(int p2, int k);

/// Two-slot formula for e^{[A,B]t^{k+1}}, odd k.  Slot 1 = A, slot 0 = B.
/// 4 * 6^{p-1} terms.
ProductFormula build_odd(int p, int k);

/// Symmetrized k=1 variant: F_p(t/sqrt2) F_p(-t/sqrt2), 8 * 6^{p-1} terms,
/// order 2p+2.
ProductFormula build_odd_symmetrized(int p);

/// Two-slot formula for e^{[A,B]t^{k+1}}, even k, with adjacent same-slot
/// exponentials merged; raw_term_count records the unmerged count 5^p.
ProductFormula build_even(int p, int k);
/// Same construction without merging; exactly 5^p terms.
ProductFormula build_even_raw(int p, int k);

/// Fully flattened formula for e^{Z_k t^{k+1}} over slots {0..k}, all
/// tpow = 1, built by recursive substitution into the two-slot families.
ProductFormula build_nested(int p, int k);

/// Group-commutator tower for e^{Z_k t^{k+1}}: 3*2^k - 2 terms, order k+2.
ProductFormula build_gc_base(int k);

/// Generic refinement of the group-commutator tower: p2 - 1 applications
/// of the 5-copy recursion, 5^{p2-1} (3*2^k - 2) terms, order p2/2*2+k+1.
ProductFormula build_nestgc(int p2, int k);

/// 8-exponential two-slot formula for the doubly nested commutator with
/// repeated outer operator (k = 2), refined by the generic recursion.
/// Order p2 + 3 in the generic case.
ProductFormula build_bgc(int p2);

/// Experimental ternary-recursion comparator: 3^{p2-1} (3*2^k - 2) terms.
/// Coefficients solve 2a^{k+1} - b^{k+1} = 1, 2a^nu - b^nu = 0 at each
/// step.  Callers must verify the claimed order empirically before use.
ProductFormula build_jk(int p2, int k);

}  // namespace commsplit

#endif
