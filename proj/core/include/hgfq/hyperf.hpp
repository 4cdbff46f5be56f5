#pragma once

#include <string>
#include <vector>

#include "hgfq/charsum.hpp"
#include "hgfq/gauss_series.hpp"

namespace hgfq {

struct HGParams {
  FieldPtr field;
  std::vector<Char> alphas;
  std::vector<Char> betas;

  HGParams() = default;
  // Rejects #alphas != #betas.
  HGParams(FieldPtr f, const std::vector<i64>& alpha_exps, const std::vector<i64>& beta_exps);
  HGParams(std::vector<Char> a, std::vector<Char> b);

  // Both lists sorted by exponent.
  HGParams canonical() const;
  bool disjoint() const;
  std::string describe() const;
};

Cyclo poch(const Char& alpha, const Char& nu);
Cyclo poch_circ(const Char& alpha, const Char& nu);
// (α^m)_{ν^m} = Π (αφ_m^i)_ν · ν(m^m), plain and circled.
CheckResult poch_multiplication(const Char& alpha, const Char& nu, u64 m);

GaussSeries hyper_series(const HGParams& params);

Cyclo hyperF(const HGParams& params, Elem lambda, Backend backend = Backend::Auto);
std::vector<Cyclo> hyperF_multi(const HGParams& params, const std::vector<Elem>& lambdas, Backend backend = Backend::Auto);
// Values at every λ ∈ F_q indexed by encoding; cached per canonical parameters.
const std::vector<Cyclo>& hyperF_table(const HGParams& params);

// Removes the multiset intersection of alphas and betas; the removed characters go to common.
HGParams cancel_common(const HGParams& params, std::vector<Char>* common = nullptr);
// Cancels the listed characters from both sides; the residual lists must be disjoint.
HGParams cancel_listed(const HGParams& params, const std::vector<Char>& listed);
Cyclo hyperF_reduced(const HGParams& params, const std::vector<Char>& listed, Elem lambda);
// F_red with the full multiset intersection cancelled.
Cyclo hyperF_red(const HGParams& params, Elem lambda, Backend backend = Backend::Auto);

struct Reduction {
  Cyclo reduced;    // F_red
  Cyclo remainder;  // (q^δ/q) Σ_j ...
  int delta = 0;
  HGParams reduced_params;
  std::vector<Char> common;
  Cyclo recombined() const;  // q^δ F_red + remainder
};

// Requires the cancelled characters to be pairwise distinct.
Reduction reduce_with_remainder(const HGParams& params, Elem lambda, Backend backend = Backend::Auto);

void clear_hyperf_cache();

}  // namespace hgfq
