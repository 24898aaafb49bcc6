#include "formula.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <json.hpp>

namespace commsplit {

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Antisymmetric: return "antisymmetric";
    default: return "none";
  }
}

Symmetry symmetry_from_string(const std::string& s) {
  if (s == "symmetric") return Symmetry::Symmetric;
  if (s == "antisymmetric") return Symmetry::Antisymmetric;
  if (s == "none") return Symmetry::None;
  throw ParseError("unknown symmetry tag \"" + s + "\"");
}

int ProductFormula::max_slot() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, t.slot);
  return m;
}

void ProductFormula::validate() const {
  if (k < 1) throw std::invalid_argument("formula: k must be positive");
  if (p2 < 1) throw std::invalid_argument("formula: p2 must be positive");
  if (terms.empty()) throw std::invalid_argument("formula: term list empty");
  std::vector<bool> seen(static_cast<size_t>(max_slot()) + 1, false);
  for (const auto& t : terms) {
    if (t.slot < 0) throw std::invalid_argument("formula: negative slot");
    if (t.tpow < 1) throw std::invalid_argument("formula: tpow must be positive");
    if (!std::isfinite(t.coeff)) throw std::invalid_argument("formula: non-finite coeff");
    seen[static_cast<size_t>(t.slot)] = true;
  }
  for (size_t j = 0; j < seen.size(); ++j) {
    if (!seen[j]) {
      throw std::invalid_argument("formula: slot range not contiguous, missing slot " +
                                  std::to_string(j));
    }
  }
}

ProductFormula scale(const ProductFormula& f, const std::map<int, double>& slot_factors) {
  ProductFormula out = f;
  double mag = -1.0;
  bool same_mag = true;
  for (auto& t : out.terms) {
    auto it = slot_factors.find(t.slot);
    if (it == slot_factors.end()) {
      throw std::invalid_argument("scale: no factor for slot " + std::to_string(t.slot));
    }
    if (!std::isfinite(it->second)) {
      throw std::invalid_argument("scale: non-finite factor");
    }
    t.coeff *= it->second;
    double m = std::fabs(it->second);
    if (mag < 0.0) mag = m;
    else if (m != mag) same_mag = false;
  }
  if (!same_mag) out.symmetry = Symmetry::None;
  return out;
}

ProductFormula invert(const ProductFormula& f) {
  ProductFormula out = f;
  std::reverse(out.terms.begin(), out.terms.end());
  for (auto& t : out.terms) t.coeff = -t.coeff;
  return out;
}

ProductFormula concat(const ProductFormula& f1, const ProductFormula& f2) {
  if (f1.k != f2.k) throw std::invalid_argument("concat: mismatched k");
  ProductFormula out = f1;
  out.terms.insert(out.terms.end(), f2.terms.begin(), f2.terms.end());
  out.symmetry = Symmetry::None;
  out.nu = std::min(f1.nu, f2.nu);
  out.raw_term_count = f1.raw_term_count + f2.raw_term_count;
  return out;
}

ProductFormula simplify(const ProductFormula& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("simplify: tol must be >= 0");
  ProductFormula out = f;
  out.terms.clear();
  for (const auto& t : f.terms) {
    if (!out.terms.empty() && out.terms.back().slot == t.slot &&
        out.terms.back().tpow == t.tpow) {
      out.terms.back().coeff += t.coeff;
      if (std::fabs(out.terms.back().coeff) <= tol) out.terms.pop_back();
    } else if (std::fabs(t.coeff) > tol) {
      out.terms.push_back(t);
    }
  }
  return out;
}

FormulaStats stats(const ProductFormula& f) {
  FormulaStats s;
  s.n_terms = static_cast<long long>(f.terms.size());
  for (const auto& t : f.terms) {
    double a = std::fabs(t.coeff);
    s.q_mean += a;
    s.q_max = std::max(s.q_max, a);
    s.slot_sums[{t.slot, t.tpow}] += t.coeff;
  }
  if (s.n_terms > 0) s.q_mean /= static_cast<double>(s.n_terms);
  return s;
}

namespace {
std::string coeff_to_string(double c) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", c);
  return buf;
}
}  // namespace

std::string to_json(const ProductFormula& f) {
  nlohmann::json j;
  j["k"] = f.k;
  j["p2"] = f.p2;
  j["symmetry"] = to_string(f.symmetry);
  j["nu"] = f.nu;
  j["raw_term_count"] = f.raw_term_count;
  j["terms"] = nlohmann::json::array();
  for (const auto& t : f.terms) {
    j["terms"].push_back(
        {{"slot", t.slot}, {"coeff", coeff_to_string(t.coeff)}, {"tpow", t.tpow}});
  }
  return j.dump(2) + "\n";
}

ProductFormula from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("formula document: ") + e.what());
  }
  ProductFormula f;
  try {
    f.k = j.at("k").get<int>();
    f.p2 = j.at("p2").get<int>();
    f.symmetry = symmetry_from_string(j.at("symmetry").get<std::string>());
    f.nu = j.at("nu").get<int>();
    f.raw_term_count = j.value("raw_term_count", 0LL);
    size_t idx = 0;
    for (const auto& jt : j.at("terms")) {
      ExpTerm t;
      t.slot = jt.at("slot").get<int>();
      t.tpow = jt.at("tpow").get<int>();
      std::string c = jt.at("coeff").get<std::string>();
      const char* begin = c.data();
      const char* end = begin + c.size();
      auto [ptr, ec] = std::from_chars(begin, end, t.coeff);
      if (ec != std::errc() || ptr != end) {
        throw ParseError("term " + std::to_string(idx) + ": bad coeff \"" + c + "\"");
      }
      f.terms.push_back(t);
      ++idx;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("formula document: ") + e.what());
  }
  if (f.raw_term_count == 0) f.raw_term_count = static_cast<long long>(f.terms.size());
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return f;
}

}  // namespace commsplit
