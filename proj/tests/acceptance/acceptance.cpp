// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "hgfq/charsum.hpp"
#include "hgfq/counting.hpp"
#include "hgfq/hyperf.hpp"
#include "hgfq/suites.hpp"

using namespace hgfq;

namespace {

struct Tally {
  u64 checks = 0, failed = 0, cases = 0;
  double seconds = 0;
  std::string witness;

  void add(const SuiteCheck& c) {
    ++checks;
    cases += c.cases;
    seconds += c.seconds;
    if (!c.pass && failed++ == 0) witness = c.suite + "/" + c.name + " [" + c.scope + "]: " + c.witness;
  }
  void add_all(const std::vector<SuiteCheck>& cs) {
    for (const auto& c : cs) add(c);
  }
};

bool report(const char* id, const char* what, const Tally& t, double limit) {
  bool ok = t.failed == 0 && t.checks > 0 && t.seconds <= limit;
  std::printf("%s %s  %s: %llu/%llu checks, %llu cases, %.1f s (limit %.0f s)", id, ok ? "PASS" : "FAIL", what,
              static_cast<unsigned long long>(t.checks - t.failed), static_cast<unsigned long long>(t.checks),
              static_cast<unsigned long long>(t.cases), t.seconds, limit);
  if (t.failed) std::printf("  witness: %s", t.witness.c_str());
  else if (t.seconds > limit) std::printf("  time limit exceeded");
  std::printf("\n");
  std::fflush(stdout);
  return ok;
}

void fresh_caches() {
  clear_gauss_cache();
  clear_hyperf_cache();
  clear_counting_caches();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to hgfq cli>\n";
    return 2;
  }
  const std::string cli = argv[1];
  bool all = true;
  auto F = [](u64 p, unsigned f = 1) { return build_field(p, f); };

  {
    fresh_caches();
    Tally t;
    for (auto [p, f] : std::vector<std::pair<u64, unsigned>>{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {2, 4}, {17, 1}})
      t.add_all(identity_suite(F(p, f)));
    all &= report("AC1", "identities over q in {5,7,9,11,13,16,17}", t, 120);
  }

  {
    fresh_caches();
    Tally general, fermat;
    struct Spec {
      u64 p, d;
      std::vector<u64> h;
    };
    for (const auto& s : std::vector<Spec>{{7, 3, {1, 1, 1}}, {13, 3, {1, 1, 1}}, {13, 4, {1, 1, 1, 1}}, {17, 4, {1, 1, 2}}})
      for (const auto& c : count_suite(F(s.p), s.d, s.h)) (c.name == "fermat_vs_oracle" ? fermat : general).add(c);
    all &= report("AC2", "general diagonal counts vs oracle, r=1, all lambda", general, 600);
    all &= report("AC3", "Fermat branch vs oracle, lambda=0", fermat, 60);
  }

  {
    fresh_caches();
    Tally t;
    t.add_all(dwork_extension_suite(F(7), 3, {3, 5}, 3));
    t.add_all(dwork_extension_suite(F(13), 4, {2}, 2));
    all &= report("AC4", "Dwork extension counts vs twisted oracle", t, 600);
  }

  Tally weil;
  {
    fresh_caches();
    Tally t;
    for (auto [p, d] : std::vector<std::pair<u64, u64>>{{7, 3}, {13, 3}, {13, 4}})
      for (const auto& c : relation_suite(F(p), d, 3)) (c.name == "reduced_value_bound" ? weil : t).add(c);
    all &= report("AC5", "cross-field relations, r<=3", t, 300);
  }

  {
    fresh_caches();
    Tally t;
    t.add_all(hesse_suite(F(7), 3));
    for (const auto& c : k3_suite(F(13), 2)) (c.name == "weil_numerators" ? weil : t).add(c);
    t.add_all(permutation_suite(F(7), 3));
    t.add_all(permutation_suite(F(13), 3));
    all &= report("AC6", "L-function and zeta assembly", t, 300);
  }

  {
    fresh_caches();
    for (u64 p : {7u, 13u}) {
      FieldPtr K = F(p);
      std::vector<Elem> ls;
      for (Elem l = 1; l < K->q(); ++l)
        if (K->pow(l, 3) != 1) ls.push_back(l);
      weil.add_all(weil_suite(K, 3, ls));
    }
    all &= report("AC7", "Weil bounds on numerators and reduced values", weil, 60);
  }

  {
    Tally t;
    auto start = std::chrono::steady_clock::now();
    const std::string a = "acceptance_verify_1.json", b = "acceptance_verify_2.json";
    int rc1 = std::system((cli + " verify all --format json --out " + a + " 2>/dev/null").c_str());
    int rc2 = std::system((cli + " verify all --format json --out " + b + " 2>/dev/null").c_str());
    std::string ra = slurp(a), rb = slurp(b);
    t.checks = 1;
    t.cases = 2;
    t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rc1 != 0 || rc2 != 0 || ra.empty() || ra != rb) {
      t.failed = 1;
      t.witness = "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc2) + ", " + std::to_string(ra.size()) + " vs " +
                  std::to_string(rb.size()) + " bytes" + (ra == rb ? "" : ", reports differ");
    }
    all &= report("AC8", "two verify-all runs give byte-identical reports", t, 1200);
  }

  return all ? 0 : 1;
}
