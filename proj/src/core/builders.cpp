#include "builders.hpp"

#include <algorithm>
#include <cmath>

namespace commsplit {

namespace {
// Base 4-term group commutator e^{At}e^{Bt^k}e^{-At}e^{-Bt^k}.
ProductFormula odd_base(int k) {
  ProductFormula f;
  f.k = k;
  f.p2 = 2;
  f.symmetry = Symmetry::Symmetric;
  f.nu = k + 2;
  f.terms = {{1, 1.0, 1}, {0, 1.0, k}, {1, -1.0, 1}, {0, -1.0, k}};
  f.raw_term_count = 4;
  return f;
}

// Scale a two-slot formula: slot 1 by a, slot 0 by b.
ProductFormula scale2(const ProductFormula& f, double a, double b) {
  return scale(f, {{1, a}, {0, b}});
}

// Scale every slot of f by the same factor.
ProductFormula scale_all(const ProductFormula& f, double c) {
  std::map<int, double> factors;
  for (const auto& t : f.terms) factors[t.slot] = c;
  return scale(f, factors);
}

void append(ProductFormula& dst, const ProductFormula& src) {
  dst.terms.insert(dst.terms.end(), src.terms.begin(), src.terms.end());
}
}  // namespace

OddSchedule coeff_odd(int p, int k) {
  if (p < 1) throw std::invalid_argument("coeff_odd: p must be >= 1");
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("coeff_odd: k must be odd >= 1");
  OddSchedule s;
  s.p = p;
  s.k = k;
  double e = std::pow(2.0, double(k + 1) / double(2 * p + k + 1));
  s.r = e / (4.0 * (2.0 - e));
  s.beta = std::pow(2.0 * s.r, 1.0 / (k + 1));
  s.gamma = std::pow(0.25 + s.r, 1.0 / (k + 1));
  return s;
}

EvenSchedule coeff_even(int p2, int k) {
  if (p2 < 1) throw std::invalid_argument("coeff_even: p2 must be >= 1");
  if (k < 1) throw std::invalid_argument("coeff_even: k must be >= 1");
  EvenSchedule s;
  s.p2 = p2;
  s.k = k;
  double e = std::pow(4.0, double(k + 1) / double(p2 + k + 1));
  s.s = e / (4.0 * (4.0 - e));
  s.mu = std::pow(4.0 * s.s, 1.0 / (k + 1));
  s.nu = std::pow(0.25 + s.s, 1.0 / (k + 1));
  return s;
}

ProductFormula build_odd(int p, int k) {
  if (p < 1) throw std::invalid_argument("build_odd: p must be >= 1");
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("build_odd: k must be odd >= 1");
  ProductFormula f = odd_base(k);
  for (int q = 1; q < p; ++q) {
    OddSchedule c = coeff_odd(q, k);
    double gk = std::pow(c.gamma, k);
    double bk = std::pow(c.beta, k);
    ProductFormula g = scale2(f, c.gamma, gk);
    ProductFormula next = g;
    append(next, scale2(f, -c.gamma, -gk));
    append(next, invert(scale2(f, c.beta, bk)));
    append(next, invert(scale2(f, -c.beta, -bk)));
    append(next, g);
    append(next, scale2(f, -c.gamma, -gk));
    next.p2 = 2 * (q + 1);
    next.symmetry = f.symmetry == Symmetry::Symmetric ? Symmetry::Antisymmetric
                                                      : Symmetry::Symmetric;
    next.nu = k == 1 ? 2 * (q + 1) + 1 : 2 * (q + 1) + k + 1;
    next.raw_term_count = 6 * f.raw_term_count;
    f = next;
  }
  return f;
}

ProductFormula build_odd_symmetrized(int p) {
  ProductFormula u = build_odd(p, 1);
  double c = 1.0 / std::sqrt(2.0);
  ProductFormula f = scale2(u, c, c);
  append(f, scale2(u, -c, -c));
  f.symmetry = Symmetry::Symmetric;
  f.nu = 2 * p + 2;
  f.raw_term_count = 2 * u.raw_term_count;
  return f;
}

ProductFormula build_even_raw(int p, int k) {
  if (p < 1) throw std::invalid_argument("build_even: p must be >= 1");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("build_even: k must be even >= 2");
  double xi = std::pow(2.0, -1.0 / (k + 1));
  double xik = std::pow(xi, k);
  ProductFormula f;
  f.k = k;
  f.p2 = 2;
  f.symmetry = Symmetry::None;
  f.nu = k + 3;
  f.terms = {{1, xi, 1}, {0, xik, k}, {1, -2.0 * xi, 1}, {0, -xik, k}, {1, xi, 1}};
  f.raw_term_count = 5;
  for (int q = 1; q < p; ++q) {
    EvenSchedule c = coeff_even(2 * q, k);
    double nk = std::pow(c.nu, k);
    double mk = std::pow(c.mu, k);
    ProductFormula outer = scale2(f, c.nu, nk);
    ProductFormula next = outer;
    append(next, outer);
    append(next, scale2(f, -c.mu, mk));
    append(next, outer);
    append(next, outer);
    next.p2 = 2 * (q + 1);
    next.nu = 2 * (q + 1) + k + 1;
    next.raw_term_count = 5 * f.raw_term_count;
    f = next;
  }
  return f;
}

ProductFormula build_even(int p, int k) {
  ProductFormula raw = build_even_raw(p, k);
  ProductFormula f = simplify(raw, 0.0);
  f.raw_term_count = raw.raw_term_count;
  return f;
}

namespace {
// Error order of the flattened nested formula.  2p+k+1 for p >= 2, but the
// level-1 two-slot bases are one order short of what that recursion needs,
// so for p = 1 the inner error orders propagate as follows: inner copies
// appear in (+c, -c) pairs whose leading errors cancel when the substituted
// level sits under an even level (exact inverse pair) or when the inner
// order is odd (sign flip), raising the contribution by one; the level's
// own two-slot order caps the result.
int nested_order(int p, int k) {
  int m = 2 * p + 2;
  for (int q = 2; q <= k; ++q) {
    int inner = m;
    if (q % 2 == 0 || m % 2 == 1) ++inner;
    int outer = q % 2 == 0 ? 2 * p + q + 1 : (p == 1 ? q + 2 : 2 * p + q + 1);
    m = std::min(inner, outer);
  }
  return m;
}
}  // namespace

ProductFormula build_nested(int p, int k) {
  if (p < 1) throw std::invalid_argument("build_nested: p must be >= 1");
  if (k < 1) throw std::invalid_argument("build_nested: k must be >= 1");
  if (k == 1) return build_odd_symmetrized(p);
  ProductFormula sub = build_nested(p, k - 1);
  ProductFormula outer = k % 2 == 1 ? build_odd(p, k) : build_even_raw(p, k);
  ProductFormula f;
  f.k = k;
  f.p2 = 2 * p;
  f.symmetry = Symmetry::None;
  f.nu = nested_order(p, k);
  for (const auto& t : outer.terms) {
    if (t.slot == 1) {
      f.terms.push_back({k, t.coeff, 1});
      continue;
    }
    // Commutator slot: splice in the level k-1 formula scaled so its target
    // exponent picks up the factor t.coeff.
    double root = std::pow(std::fabs(t.coeff), 1.0 / k);
    if (k % 2 == 1) {
      double c = t.coeff < 0 ? -root : root;
      for (const auto& st : sub.terms) f.terms.push_back({st.slot, c * st.coeff, 1});
    } else if (t.coeff > 0) {
      for (const auto& st : sub.terms) f.terms.push_back({st.slot, root * st.coeff, 1});
    } else {
      for (auto it = sub.terms.rbegin(); it != sub.terms.rend(); ++it) {
        f.terms.push_back({it->slot, -root * it->coeff, 1});
      }
    }
  }
  f.raw_term_count = static_cast<long long>(f.terms.size());
  return f;
}

ProductFormula build_gc_base(int k) {
  if (k < 1) throw std::invalid_argument("build_gc_base: k must be >= 1");
  ProductFormula f;
  f.k = k;
  f.p2 = 1;
  f.symmetry = Symmetry::None;
  f.nu = k + 2;
  f.terms = {{0, 1.0, 1}};
  for (int j = 1; j <= k; ++j) {
    ProductFormula next;
    next.terms.push_back({j, 1.0, 1});
    append(next, f);
    next.terms.push_back({j, -1.0, 1});
    append(next, invert(f));
    f.terms = std::move(next.terms);
  }
  f.raw_term_count = static_cast<long long>(f.terms.size());
  return f;
}

ProductFormula build_nestgc(int p2, int k) {
  if (p2 < 1) throw std::invalid_argument("build_nestgc: p2 must be >= 1");
  ProductFormula f = build_gc_base(k);
  for (int j = 1; j < p2; ++j) {
    EvenSchedule c = coeff_even(j, k);
    ProductFormula outer = scale_all(f, c.nu);
    ProductFormula next = outer;
    append(next, outer);
    append(next, invert(scale_all(f, c.mu)));
    append(next, outer);
    append(next, outer);
    next.p2 = j + 1;
    next.nu = f.nu + 1;
    next.raw_term_count = 5 * f.raw_term_count;
    f = next;
  }
  return f;
}

ProductFormula build_bgc(int p2) {
  if (p2 < 1) throw std::invalid_argument("build_bgc: p2 must be >= 1");
  ProductFormula f;
  f.k = 2;
  f.p2 = 1;
  f.symmetry = Symmetry::None;
  f.nu = 4;
  f.terms = {{1, -1.0, 1}, {0, -1.0, 1}, {1, 1.0, 1}, {0, 1.0, 1},
             {1, 1.0, 1},  {0, -1.0, 1}, {1, -1.0, 1}, {0, 1.0, 1}};
  f.raw_term_count = 8;
  for (int j = 1; j < p2; ++j) {
    EvenSchedule c = coeff_even(j, 2);
    ProductFormula outer = scale_all(f, c.nu);
    ProductFormula next = outer;
    append(next, outer);
    append(next, invert(scale_all(f, c.mu)));
    append(next, outer);
    append(next, outer);
    next.p2 = j + 1;
    next.nu = f.nu + 1;
    next.raw_term_count = 5 * f.raw_term_count;
    f = next;
  }
  return f;
}

ProductFormula build_jk(int p2, int k) {
  if (p2 < 1) throw std::invalid_argument("build_jk: p2 must be >= 1");
  ProductFormula f = build_gc_base(k);
  for (int j = 1; j < p2; ++j) {
    double nu = f.nu;
    double alpha = std::pow(2.0 - std::pow(2.0, (k + 1) / nu), -1.0 / (k + 1));
    double beta = std::pow(2.0, 1.0 / nu) * alpha;
    ProductFormula outer = scale_all(f, alpha);
    ProductFormula next = outer;
    append(next, invert(scale_all(f, beta)));
    append(next, outer);
    next.p2 = j + 1;
    next.nu = f.nu + 1;
    next.raw_term_count = 3 * f.raw_term_count;
    f = next;
  }
  return f;
}

}  // namespace commsplit
