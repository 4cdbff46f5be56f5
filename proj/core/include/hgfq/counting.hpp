#pragma once

#include <string>
#include <vector>

#include "hgfq/cyclo.hpp"
#include "hgfq/ffield.hpp"
#include "hgfq/gauss_series.hpp"

namespace hgfq {

// X_1^d + ... + X_n^d = dλ X^h over F_q.
struct Surface {
  FieldPtr field;
  u64 d = 0;
  std::vector<u64> h;
  Elem lambda = 0;

  Surface() = default;
  Surface(FieldPtr f, u64 degree, std::vector<u64> weights, Elem lam);
  static Surface dwork(FieldPtr f, u64 degree, Elem lam);

  std::size_t n() const { return h.size(); }
  bool is_dwork() const;
  // (Π h_i^{h_i}) λ^d ≠ 1
  bool smooth() const;
  // d h_i | q^r - 1 for all i
  bool hyper_route(unsigned r) const;
  Surface with_lambda(Elem lam) const;
  std::string describe() const;
};

using Weights = std::vector<u64>;

// Canonical representatives of W / ~, in increasing lexicographic order.
std::vector<Weights> classes(const Surface& s);
// Canonical representatives of W (characters of G_0), lexicographic.
std::vector<Weights> full_lattice(const Surface& s);
Weights canonical_class(const Surface& s, const Weights& w);
// The class members w + m h, m = 0..d-1.
std::vector<Weights> class_members(const Surface& s, const Weights& w);
// m with w = m h, or -1.
int trivial_shift(const Surface& s, const Weights& w);
bool in_W(const Surface& s, const Weights& w);

// Dwork helpers
int dwork_delta(const Weights& w);
bool is_permutation_class(const Weights& w);
std::vector<u64> multiplicities(u64 d, const Weights& w);

struct Budgets {
  u64 plain = 2000000000ULL;
  u64 twisted = 1000000000ULL;
};
// Defaults, overridden by HGFQ_BUDGET_PLAIN / HGFQ_BUDGET_TWISTED.
Budgets default_budgets();

u64 oracle_count_plain(const Surface& s, unsigned r, const Budgets& b = default_budgets());
// Λ(ξ^{-1}F^r) for one twist ξ = (ζ_d^{s_1}, ..., ζ_d^{s_n}).
u64 oracle_count_twisted(const Surface& s, unsigned r, const std::vector<u64>& xi, bool torus_only = false,
                         const Budgets& b = default_budgets());

// Character-weighted averages of twisted counts. With full_group the average runs over G_0.
Cyclo oracle_N(const Surface& s, unsigned r, const Weights& w, bool torus_only = false, bool full_group = false,
               const Budgets& b = default_budgets());
// All classes at once (same order as classes()).
std::vector<Cyclo> oracle_N_all(const Surface& s, unsigned r, bool torus_only = false, const Budgets& b = default_budgets());

// j(φ_d^w) = Π g(φ_d^{w_i}) / q over the base field.
Cyclo jacobi_w(const Surface& s, const Weights& w);

// Hypergeometric parameters of F^w over F_{q^r} as exponents of the compatible generator.
struct FwParams {
  FieldPtr field;
  std::vector<i64> alphas, betas;
  Elem argument = 0;
};
FwParams fw_params(const Surface& s, const Weights& w, unsigned r);

// N_r(D*_λ; χ^w); the Koblitz route, cross-checked against the hypergeometric route when available.
Cyclo formula_N_star(const Surface& s, const Weights& w, unsigned r);
Cyclo koblitz_N_star(const Surface& s, const Weights& w, unsigned r);
Cyclo hyper_N_star(const Surface& s, const Weights& w, unsigned r);

// Fermat counts (λ is ignored). With full_group, w is a character of G_0.
Cyclo fermat_N(const Surface& s, const Weights& w, unsigned r, bool torus_only = false, bool full_group = false);

// C of the projective formula at level r.
Cyclo correction_C(const Surface& s, const Weights& w, unsigned r);

struct FormulaResult {
  Cyclo value;
  std::string method;  // "reduced", "projective", "koblitz", "dwork"
};
// The diagonal-surface route (hypergeometric when d h_i | q^r - 1, otherwise Koblitz), no cross-check.
FormulaResult general_N_detail(const Surface& s, const Weights& w, unsigned r);
// Dwork surfaces use the Dwork closed form. With cross_check the value is compared against decomposition_N (MismatchError on disagreement).
FormulaResult formula_N_detail(const Surface& s, const Weights& w, unsigned r, bool cross_check = true);
Cyclo formula_N(const Surface& s, const Weights& w, unsigned r, bool cross_check = true);
// Projective count through the full-lattice decomposition with Koblitz N*.
Cyclo decomposition_N(const Surface& s, const Weights& w, unsigned r);

Cyclo dwork_N(const Surface& s, const Weights& w, unsigned r);
// F_{r,red}^w(λ) for a Dwork class.
Cyclo dwork_F_red(const Surface& s, const Weights& w, unsigned r);

void clear_counting_caches();

}  // namespace hgfq
