#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "hgfq/charsum.hpp"
#include "hgfq/error.hpp"
#include "hgfq/gauss_series.hpp"

using namespace hgfq;
using namespace hgfq::cli;

namespace {

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "characteristic");
  sub->add_option("--f", o.f, "extension degree")->capture_default_str();
  sub->add_option("--format", o.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  sub->add_option("--out", o.out, "write the report to this file");
  sub->add_option("--mode", o.mode, "auto | exact | numeric")
      ->check(CLI::IsMember({"auto", "exact", "numeric"}))
      ->capture_default_str();
  sub->add_option("--inject-gauss-fault", o.fault)->group("");
}

void add_surface(CLI::App* sub, Options& o) {
  sub->add_option("--d", o.d, "degree");
  sub->add_option("--n", o.n, "number of variables");
  sub->add_option("--h", o.h, "weights h_1,...,h_n")->delimiter(',');
  sub->add_option("--lambda", o.lambda, "g^k, or an integer for prime fields");
  sub->add_option("--class", o.cls, "all | trivial | w_1,...,w_n")->capture_default_str();
}

Json echo_config(const CLI::App* sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_group().empty()) continue;
    std::string name = opt->get_single_name();
    if (name == "help" || name == "out") continue;
    if (opt->count() > 0) {
      std::string v;
      for (const auto& r : opt->results()) v += (v.empty() ? "" : ",") + r;
      j[name] = v;
    } else if (!opt->get_default_str().empty()) {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Gauss sums, finite-field hypergeometric functions, point counts and L-functions"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  Options o;

  auto* gauss = app.add_subcommand("gauss", "tabulate Gauss sums g(phi^k)");
  add_common(gauss, o);
  gauss->add_option("--k", o.ks, "exponents (default: all)")->delimiter(',');

  auto* jac = app.add_subcommand("jacobi", "Jacobi sum of phi^{k_1}, ..., phi^{k_n}");
  add_common(jac, o);
  jac->add_option("--chars", o.chars, "exponents k_1,...,k_n")->delimiter(',')->required();

  auto* hyp = app.add_subcommand("hyperf", "hypergeometric function values");
  add_common(hyp, o);
  hyp->add_option("--alpha", o.alpha, "numerator exponents")->delimiter(',')->required();
  hyp->add_option("--beta", o.beta, "denominator exponents")->delimiter(',')->required();
  hyp->add_option("--lambda", o.lambda, "g^k, an integer, or all");

  auto* cnt = app.add_subcommand("count", "equivariant point counts");
  add_common(cnt, o);
  add_surface(cnt, o);
  cnt->add_option("--r", o.r, "levels, e.g. 1 or 1-3")->capture_default_str();
  cnt->add_option("--verify", o.verify, "none | oracle")->capture_default_str();

  auto* lf = app.add_subcommand("lfunction", "Artin L-functions of the classes");
  add_common(lf, o);
  add_surface(lf, o);
  lf->add_option("--oracle-r", o.oracle_r, "check counts against the oracle up to this level")->capture_default_str();
  lf->add_option("--extra", o.extra, "certification levels beyond the degree")->capture_default_str();

  auto* zt = app.add_subcommand("zeta", "zeta function of the surface");
  add_common(zt, o);
  add_surface(zt, o);
  zt->add_option("--oracle-r", o.oracle_r, "check counts against the oracle up to this level")->capture_default_str();
  zt->add_option("--extra", o.extra, "certification levels beyond the degree")->capture_default_str();
  zt->add_option("--terms", o.terms, "series terms")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "run verification suites");
  add_common(ver, o);
  ver->add_option("suite", o.suite, "identities | counts | relations | lfun | all")->capture_default_str();
  ver->add_option("--d", o.d, "degree");
  ver->add_option("--h", o.h, "weights")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report rep;
  rep.command = sub->get_name();
  rep.config = echo_config(sub);

  auto t0 = std::chrono::steady_clock::now();
  int code = 0;
  try {
    set_backend_preference(o.mode == "exact" ? Backend::Exact : o.mode == "numeric" ? Backend::Modular : Backend::Auto);
    if (o.fault) inject_gauss_fault(o.p ? field_of(o) : build_field(7, 1), *o.fault);
    if (sub == gauss) code = cmd_gauss(o, rep);
    else if (sub == jac) code = cmd_jacobi(o, rep);
    else if (sub == hyp) code = cmd_hyperf(o, rep);
    else if (sub == cnt) code = cmd_count(o, rep);
    else if (sub == lf) code = cmd_lfunction(o, rep);
    else if (sub == zt) code = cmd_zeta(o, rep);
    else code = cmd_verify(o, rep);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    rep.status = "budget";
    rep.message = e.what();
    code = 3;
  } catch (const MismatchError& e) {
    rep.status = "mismatch";
    rep.message = e.what();
    code = 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "[time] " << rep.command << ": " << secs << " s\n";

  std::string text = render(rep, o.format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return 2;
    }
    f << text;
  }
  return code;
}
