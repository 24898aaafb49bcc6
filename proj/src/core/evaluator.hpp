#ifndef COMMSPLIT_EVALUATOR_HPP
#define COMMSPLIT_EVALUATOR_HPP

#include <string>
#include <vector>

#include "formula.hpp"
#include "linalg.hpp"

namespace commsplit {

/// Left-to-right product of expm(coeff * t^tpow * A_slot); the first term
/// is the leftmost factor.
Matrix evaluate(const ProductFormula& f, const OperatorSet& ops, double t);

/// expm(Z_k t^{k+1}) with Z_k the nested commutator over ops.
Matrix exact_target(const OperatorSet& ops, double t);

/// Spectral norm of evaluate - exact_target.
double error_at(const ProductFormula& f, const OperatorSet& ops, double t);

struct ScanResult {
  std::vector<std::pair<double, double>> rows;  // (t, error), ascending t
  double fitted_slope = 0.0;
  double window_lo = 1e-12;
  double window_hi = 1e-2;
  int points_used = 0;
  std::string formula_id;
  int k = 0;
  int p2 = 0;
  int nu = 0;
  long long n_terms = 0;
};

/// n points from tmin to tmax inclusive, geometrically spaced.
std::vector<double> make_geometric_grid(double tmin, double tmax, int n);

/// Errors over a geometric t grid plus an ordinary least-squares fit of
/// log(error) against log(t) over rows with error inside
/// [window_lo, window_hi].  The grid must be geometric, ascending, with at
/// least 8 points at most half a decade apart.  Fewer than 4 rows inside
/// the window raises InsufficientDataError.
ScanResult order_scan(const ProductFormula& f, const OperatorSet& ops,
                      const std::vector<double>& t_grid);

std::string scan_to_csv(const ScanResult& s);

/// evaluate(f, ops, t / r^{1/(k+1)}) raised to the r-th power.
Matrix segment_evolve(const ProductFormula& f, const OperatorSet& ops, double t,
                      long long r);

/// Two-slot anti-Hermitian Pauli binding (slot 1 = -i sigma_x,
/// slot 0 = -i sigma_z) used for order verification and figure scans.
OperatorSet pauli_xz_ops(int k);

/// Measures the convergence order on the Pauli binding and accepts when the
/// fitted slope reaches claimed_nu - 0.5.  Used to gate experimental
/// constructions before they are compared or planned with.
bool verify_formula_order(const ProductFormula& f, double* fitted = nullptr);

}  // namespace commsplit

#endif
