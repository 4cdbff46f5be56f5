#pragma once

#include <map>
#include <string>
#include <vector>

#include "hgfq/charsum.hpp"
#include "hgfq/counting.hpp"

namespace hgfq {

// Sparse multivariate polynomial with rational coefficients.
class SymPoly {
 public:
  using Monomial = std::vector<unsigned>;

  SymPoly() = default;
  explicit SymPoly(unsigned arity) : arity_(arity) {}
  static SymPoly constant(unsigned arity, const mpq_class& c);
  static SymPoly variable(unsigned arity, unsigned i);  // x_{i+1}

  unsigned arity() const { return arity_; }
  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool integral() const;

  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly& operator*=(const mpq_class& c);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator*(SymPoly a, const mpq_class& c) { return a *= c; }
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.arity_ == b.arity_ && a.terms_ == b.terms_; }

  // Substitutes polynomials (all of one arity) for the variables.
  SymPoly compose(const std::vector<SymPoly>& subs) const;
  mpq_class operator()(const std::vector<mpq_class>& x) const;
  Cyclo operator()(const std::vector<Cyclo>& x) const;
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);
  unsigned arity_ = 0;
  std::map<Monomial, mpq_class> terms_;
};

struct NewtonBundle {
  unsigned k = 0;
  std::vector<SymPoly> P;  // P[r-1] = P_r(e_1..e_k), r = 1..R
  std::vector<SymPoly> Q;  // Q[i-1] = Q_i(p_1..p_i) as polynomials in k variables
  std::vector<SymPoly> R;  // R[r-1] = P_r(Q_1, ..., Q_k)
};
NewtonBundle newton_convert(unsigned k, unsigned R);

// e_1..e_k from p_1..p_k and back (exact, by Newton's identities).
std::vector<Cyclo> elementary_from_power(const std::vector<Cyclo>& p);
std::vector<Cyclo> power_from_elementary(const std::vector<Cyclo>& e, unsigned R);
// Π(1 - α_i t) as coefficients 1, -e_1, e_2, ...
std::vector<Cyclo> charpoly_from_counts(const std::vector<Cyclo>& p);

using TPoly = std::vector<Cyclo>;  // coefficients of t^0, t^1, ...
TPoly poly_mul(const TPoly& a, const TPoly& b);
// Truncated power series a / b with b(0) = 1, through t^R.
TPoly series_div(const TPoly& a, const TPoly& b, unsigned R);
// exp(Σ N_r t^r / r) through t^R.
TPoly series_exp_counts(const std::vector<Cyclo>& N, unsigned R);
// N_r of a rational function num/den with num(0) = den(0) = 1.
std::vector<Cyclo> counts_of_rational(const TPoly& num, const TPoly& den, unsigned R);

// Primitive eigenspace dimension #{m : δ(w + m h) = 0}.
unsigned dim_formula(const Surface& s, const Weights& w);

struct LSeries {
  Weights w;
  TPoly numerator{Cyclo(1L)};
  TPoly denominator{Cyclo(1L)};
  TPoly charpoly{Cyclo(1L)};  // det(1 - F t | H_prim(χ))
  unsigned k = 0;
  bool rational = false;    // numerator/denominator available
  bool certified = false;   // series agrees with counts through certified_through
  unsigned certified_through = 0;
  std::vector<Cyclo> counts;           // N_1..N_R
  std::vector<unsigned> oracle_levels; // r with N_r checked against the oracle
  std::string provenance;
  TPoly expand(unsigned R) const { return series_div(numerator, denominator, R); }
};

struct LOptions {
  unsigned extra = 3;          // certification levels beyond k(w)
  unsigned oracle_max_r = 0;   // verify N_r against the twisted oracle for r <= this
  u64 cross_check_limit = 100000;  // run the N* route cross-check while q^r <= this
};

LSeries artin_L(const Surface& s, const Weights& w, const LOptions& opt = {});
std::vector<LSeries> artin_L_all(const Surface& s, const LOptions& opt = {});

struct Zeta {
  TPoly numerator{Cyclo(1L)};
  TPoly denominator{Cyclo(1L)};
  bool integral = false;
  std::vector<LSeries> factors;
  TPoly expand(unsigned R) const { return series_div(numerator, denominator, R); }
};
Zeta zeta(const Surface& s, const LOptions& opt = {});

// Closed product of the quartic Dwork zeta function, Q(t) from levels 1..3.
struct K3Closed {
  Cyclo u, u2, v;
  TPoly Q;
  TPoly denominator;  // the full denominator polynomial
};
K3Closed k3_closed(const FieldPtr& field, Elem lambda, u64 m);

CheckResult verify_relation_2f1(const FieldPtr& field, u64 d, u64 a, u64 b, u64 c, Elem lambda, unsigned r);
CheckResult verify_main4(const Surface& s, const Weights& w, unsigned r);
CheckResult verify_hesse(const FieldPtr& field, Elem lambda, u64 m, unsigned r);
CheckResult verify_main5(const FieldPtr& field, u64 m, Elem lambda, unsigned r);
// |σ(F_{r,red})| <= k(w) in every complex embedding σ; Dwork classes with δ(w) = 0.
CheckResult verify_weil_F_red(const Surface& s, const Weights& w, unsigned r, double margin = 1e-9);

struct WeilResult {
  bool pass = true;
  std::string witness;
  std::vector<double> moduli;   // |α_i|
  double max_rel_error = 0;
  unsigned precision = 0;
  bool symmetric_checked = false;
};
// Reciprocal roots of the charpoly have modulus q^{weight/2}.
WeilResult weil_check(const TPoly& charpoly, u64 q, unsigned weight, unsigned bits = 200);

}  // namespace hgfq
