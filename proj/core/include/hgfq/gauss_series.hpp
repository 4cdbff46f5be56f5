#pragma once

#include <gmpxx.h>

#include <vector>

#include "hgfq/cyclo.hpp"
#include "hgfq/ffield.hpp"

namespace hgfq {

// One factor g(φ^base ν^nu)^power, or g° when circled.
struct GaussFactor {
  i64 base = 0;
  i64 nu = 0;
  int power = 1;
  bool circled = false;
};

// scalar · Σ_ν ν^{arg_power}(arg) · Π factors   (nu_sum)
// scalar · Π factors                             (!nu_sum)
struct GaussSeries {
  FieldPtr field;
  mpq_class scalar{1};
  std::vector<GaussFactor> factors;
  bool nu_sum = true;
  i64 arg_power = 1;
};

enum class Backend { Auto, Exact, Modular };

// Whether Π of the characters is trivial for every ν, so the value lies in Q(ζ_{q-1}).
bool balanced(const GaussSeries& s);
// Order e with the value in Q(ζ_e) (valid when balanced).
u64 value_order(const GaussSeries& s);
// Auto picks the group-ring backend for small cyclotomic degree and the
// multimodular one otherwise; a preference overrides this for balanced series.
Backend choose_backend(const GaussSeries& s);
void set_backend_preference(Backend b);
Backend backend_preference();

// One value per argument (arguments are ignored when !nu_sum: one value).
std::vector<Cyclo> evaluate(const GaussSeries& s, const std::vector<Elem>& args, Backend backend = Backend::Auto);
Cyclo evaluate_one(const GaussSeries& s, Elem arg, Backend backend = Backend::Auto);
Cyclo evaluate_product(const GaussSeries& s, Backend backend = Backend::Auto);

// Number of CRT primes used by the most recent modular evaluation on this thread.
std::size_t last_prime_count();

}  // namespace hgfq
