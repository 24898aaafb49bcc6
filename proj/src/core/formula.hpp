#ifndef COMMSPLIT_FORMULA_HPP
#define COMMSPLIT_FORMULA_HPP

#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace commsplit {

enum class Symmetry { Symmetric, Antisymmetric, None };

std::string to_string(Symmetry s);
Symmetry symmetry_from_string(const std::string& s);

/// One elementary exponential e^{coeff * A_slot * t^tpow}.
struct ExpTerm {
  int slot = 0;
  double coeff = 0.0;
  int tpow = 1;

  bool operator==(const ExpTerm&) const = default;
};

/// Ordered product of elementary exponentials approximating
/// e^{Z_k t^{k+1}} to error O(t^nu).  p2 stores 2p so half-integer
/// refinement levels stay exact.
struct ProductFormula {
  int k = 1;
  int p2 = 2;
  Symmetry symmetry = Symmetry::None;
  int nu = 0;
  std::vector<ExpTerm> terms;
  // Term count before adjacent merging; equals terms.size() unless a
  // builder simplified its output.
  long long raw_term_count = 0;

  int max_slot() const;
  void validate() const;
};

struct FormulaStats {
  long long n_terms = 0;
  double q_mean = 0.0;
  double q_max = 0.0;
  // (slot, tpow) -> sum of coefficients.
  std::map<std::pair<int, int>, double> slot_sums;
};

/// Multiply each term's coeff by its slot's factor.  Every populated slot
/// needs a factor.  The symmetry tag survives only when all factors share
/// one magnitude.
ProductFormula scale(const ProductFormula& f, const std::map<int, double>& slot_factors);

/// Exact inverse: reverse the term list and negate every coeff.
ProductFormula invert(const ProductFormula& f);

/// F1's terms followed by F2's.  Requires equal k.
ProductFormula concat(const ProductFormula& f1, const ProductFormula& f2);

/// Merge adjacent terms with equal slot and tpow; drop |coeff| <= tol.
ProductFormula simplify(const ProductFormula& f, double tol = 0.0);

FormulaStats stats(const ProductFormula& f);

std::string to_json(const ProductFormula& f);
ProductFormula from_json(const std::string& text);

}  // namespace commsplit

#endif
