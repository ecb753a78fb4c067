// zmoment: command-line front end.
//
//   zmoment coeffs    --k 1/2 --limit 100
//   zmoment constants --name C0 --prime-cutoff 100000 --precision-bits 256
//   zmoment zeta-eval --sigma 0.5 --t 14.134725 --method auto
//   zmoment moment    --kind first --t-max 500,1000
//   zmoment lemma4    --delta 1e-3,1e-4
//   zmoment verify    --level quick
//
// Every run prints a provenance line first (a `#` comment in CSV, the first
// object of the NDJSON stream in JSON).  Exit codes: 0 success, 1 computation
// error (reported as a JSON object), 2 bad flags.

#include <CLI11.hpp>

#include "cli.hpp"

using namespace zmoment;
using namespace zmoment::cli;

int main(int argc, char** argv) {
  CLI::App app{"zmoment: fractional moments of the Riemann zeta function"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ZMOMENT_VERSION);

  RunConfig cfg;
  std::string format = "csv";
  app.add_option("--precision-bits", cfg.precision_bits, "Working precision in bits")->capture_default_str();
  app.add_option("--prime-cutoff", cfg.prime_cutoff, "Largest prime in Euler products")->capture_default_str();
  app.add_option("--sieve-limit", cfg.sieve_limit, "Coefficient table size")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--output", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for randomised checks")->capture_default_str();

  CoeffsArgs coeffs;
  auto* c = app.add_subcommand("coeffs", "Table of d_k(n)");
  c->add_option("--k", coeffs.k, "Order k as a rational")->capture_default_str();
  c->add_option("--limit", coeffs.limit, "Largest n")->capture_default_str()->check(CLI::PositiveNumber);

  ConstantsArgs constants;
  auto* k = app.add_subcommand("constants", "Euler products C0, c_k, h/k and the series g");
  k->add_option("--name", constants.name, "C0, ck, hk or g")
      ->check(CLI::IsMember({"C0", "ck", "hk", "g"}))
      ->capture_default_str();
  k->add_option("--k", constants.k, "Order for ck")->capture_default_str();
  k->add_option("--s", constants.s, "Argument for hk and g")->capture_default_str();
  k->add_option("--factor-depth", constants.factor_depth, "Terms per local factor (0 = automatic)")
      ->capture_default_str();

  ZetaArgs zeta;
  auto* z = app.add_subcommand("zeta-eval", "zeta(sigma + it)");
  z->add_option("--sigma", zeta.sigma, "Real part")->capture_default_str();
  z->add_option("--t", zeta.t, "Imaginary part(s)")->delimiter(',');
  z->add_option("--method", zeta.method, "em, rs or auto")
      ->check(CLI::IsMember({"em", "rs", "auto"}))
      ->capture_default_str();
  z->add_option("--terms", zeta.terms, "Riemann-Siegel correction terms")
      ->check(CLI::Range(0, kMaxRiemannSiegelTerms))
      ->capture_default_str();

  MomentArgs moment;
  auto* m = app.add_subcommand("moment", "Moment integrals");
  m->add_option("--kind", moment.kind, "first, second, laplace, offline or lemma4")
      ->check(CLI::IsMember({"first", "second", "laplace", "offline", "lemma4"}))
      ->capture_default_str();
  m->add_option("--t-max", moment.t_max, "Upper limit(s) T")->delimiter(',');
  m->add_option("--delta", moment.delta, "Smoothing parameter(s)")->delimiter(',');
  m->add_option("--sigma", moment.sigma, "Real part for the off-line moment")->capture_default_str();

  std::vector<std::string> l4_delta{"1e-3", "1e-4", "1e-5"};
  auto* l4 = app.add_subcommand("lemma4", "Smoothed coefficient sum S(delta)");
  l4->add_option("--delta", l4_delta, "delta value(s)")->delimiter(',');

  std::string level = "quick";
  auto* v = app.add_subcommand("verify", "Acceptance suite");
  v->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.output = format == "json" ? Format::json : Format::csv;

  try {
    cfg.validate();
    if (*v) return run_verify(cfg, level);
    std::string out;
    if (*c) {
      out = run_coeffs(cfg, coeffs);
    } else if (*k) {
      out = run_constants(cfg, constants);
    } else if (*z) {
      out = run_zeta(cfg, zeta);
    } else if (*m) {
      out = run_moment(cfg, moment);
    } else if (*l4) {
      out = run_lemma4(cfg, l4_delta);
    }
    std::cout << out;
    return 0;
  } catch (const Error& e) {
    std::cout << error_json(to_string(e.kind()), e.what()) << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cout << error_json("internal", e.what()) << std::endl;
    return 1;
  }
}
