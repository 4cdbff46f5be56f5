#pragma once

#include <string>
#include <vector>

#include "hgfq/counting.hpp"
#include "hgfq/lfun.hpp"

namespace hgfq {

struct SuiteCheck {
  std::string suite;
  std::string name;
  std::string scope;
  u64 cases = 0;
  bool pass = true;
  std::string witness;  // first failure
  double seconds = 0;   // wall time; kept out of reports
};

// Gauss/Jacobi/hypergeometric identities, exhaustive over the characters of F.
std::vector<SuiteCheck> identity_suite(const FieldPtr& F);

// Formula counts against the twisted oracle at r = 1 for every λ ∈ F_q^×, the
// plain projective total, and the Fermat branch at λ = 0.
std::vector<SuiteCheck> count_suite(const FieldPtr& F, u64 d, const std::vector<u64>& h);
// Dwork counts against the oracle at levels 1..r_max for the given λ.
std::vector<SuiteCheck> dwork_extension_suite(const FieldPtr& F, u64 d, const std::vector<Elem>& lambdas, unsigned r_max);

// Cross-field relations for the Dwork family of degree d over F, r <= r_max, every smooth λ
// unless lambdas is non-empty.
std::vector<SuiteCheck> relation_suite(const FieldPtr& F, u64 d, unsigned r_max, const std::vector<Elem>& lambdas = {});

// L-function and zeta assembly: Hesse curve, quartic Dwork zeta, permutation classes, Weil bounds.
std::vector<SuiteCheck> hesse_suite(const FieldPtr& F, Elem lambda);
std::vector<SuiteCheck> k3_suite(const FieldPtr& F, Elem lambda, unsigned terms = 8);
std::vector<SuiteCheck> permutation_suite(const FieldPtr& F, u64 d);
std::vector<SuiteCheck> weil_suite(const FieldPtr& F, u64 d, const std::vector<Elem>& lambdas);

}  // namespace hgfq
