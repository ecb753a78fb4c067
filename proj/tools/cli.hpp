#pragma once

// Subcommand implementations behind the zmoment executable.  Each run_*
// function returns the complete text it would print.

#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zmoment/coeffs.hpp"
#include "zmoment/moments.hpp"
#include "zmoment/products.hpp"
#include "zmoment/verify/acceptance.hpp"
#include "zmoment/zeta.hpp"

#ifndef ZMOMENT_VERSION
#define ZMOMENT_VERSION "dev"
#endif

namespace zmoment::cli {


using json = nlohmann::ordered_json;

enum class Format { csv, json };

struct RunConfig {
  int precision_bits = 192;
  std::uint32_t prime_cutoff = 100'000;
  std::uint32_t sieve_limit = 1'000'000;
  int jobs = 1;
  Format output = Format::csv;
  std::uint64_t seed = verify::Config{}.seed;

  void validate() const {
    if (precision_bits < 64) fail(ErrorKind::domain, "--precision-bits must be >= 64");
    if (prime_cutoff < 2) fail(ErrorKind::domain, "--prime-cutoff must be >= 2");
    if (sieve_limit < 1) fail(ErrorKind::domain, "--sieve-limit must be >= 1");
    if (jobs < 1) fail(ErrorKind::domain, "--jobs must be >= 1");
  }
};

/// Decimal digits that the working precision supports.
inline int digits_for(int bits) { return static_cast<int>(bits * 0.30103) - 3; }

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::string command) : cfg_(cfg), command_(std::move(command)) {}

  void header(const std::string& csv_columns) {
    if (cfg_.output == Format::csv) {
      out_ << "# zmoment " << ZMOMENT_VERSION << " command=" << command_ << " precision_bits=" << cfg_.precision_bits
           << " prime_cutoff=" << cfg_.prime_cutoff << " sieve_limit=" << cfg_.sieve_limit << " seed=" << cfg_.seed
           << '\n'
           << csv_columns << '\n';
    } else {
      json p;
      p["schema"] = "provenance";
      p["tool"] = "zmoment";
      p["version"] = ZMOMENT_VERSION;
      p["command"] = command_;
      p["precision_bits"] = cfg_.precision_bits;
      p["prime_cutoff"] = cfg_.prime_cutoff;
      p["sieve_limit"] = cfg_.sieve_limit;
      p["seed"] = std::to_string(cfg_.seed);
      out_ << p.dump() << '\n';
    }
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  void object(const json& j) { out_ << j.dump() << '\n'; }

  bool csv() const { return cfg_.output == Format::csv; }
  std::string str() const { return out_.str(); }

 private:
  const RunConfig& cfg_;
  std::string command_;
  std::ostringstream out_;
};

inline std::string rational(const mpq_class& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

// ---------------------------------------------------------------------------

struct CoeffsArgs {
  std::string k = "1/2";
  std::uint32_t limit = 100;
};

inline std::string run_coeffs(const RunConfig& cfg, const CoeffsArgs& a) {
  SieveOptions so;
  so.jobs = cfg.jobs;
  const CoefficientTable T = sieve_coeffs(FractionalOrder::parse(a.k), a.limit, so);
  Emitter e(cfg, "coeffs");
  e.header("n,num,den");
  for (std::uint32_t n = 1; n <= T.limit(); ++n) {
    if (e.csv()) {
      e.row({std::to_string(n), T[n].get_num().get_str(), T[n].get_den().get_str()});
    } else {
      json j;
      j["schema"] = "coefficient";
      j["k"] = rational(T.order().value());
      j["n"] = n;
      j["value"] = rational(T[n]);
      e.object(j);
    }
  }
  return e.str();
}

struct ConstantsArgs {
  std::string name = "C0";
  std::string k = "1/2";
  std::string s = "1";
  int factor_depth = 0;
};

inline std::string run_constants(const RunConfig& cfg, const ConstantsArgs& a) {
  const PrecisionContext ctx(cfg.precision_bits);
  EulerProductSpec spec;
  spec.prime_cutoff = cfg.prime_cutoff;
  spec.factor_depth = a.factor_depth;
  spec.precision = ctx;
  spec.jobs = cfg.jobs;
  const int digits = digits_for(cfg.precision_bits);
  Emitter e(cfg, "constants");
  PrecisionGuard guard(ctx.bits + kGuardBits);
  if (a.name == "g") {
    SieveOptions so;
    so.jobs = cfg.jobs;
    const CoefficientTable T = sieve_coeffs(FractionalOrder(1, 2), cfg.sieve_limit, so);
    const SeriesValue g = g_series(Real(a.s), T, cfg.sieve_limit, ctx, cfg.jobs);
    e.header("name,value,cutoff,tail_bound,precision_bits");
    const std::string name = "g(" + a.s + ")";
    if (e.csv()) {
      e.row({name, to_decimal(g.value, digits), std::to_string(cfg.sieve_limit), to_decimal(g.tail_bound, 6),
             std::to_string(cfg.precision_bits)});
    } else {
      json j;
      j["schema"] = "series_value";
      j["name"] = name;
      j["value"] = to_decimal(g.value, digits);
      j["cutoff"] = cfg.sieve_limit;
      j["tail_bound"] = to_decimal(g.tail_bound, 6);
      j["precision_bits"] = cfg.precision_bits;
      e.object(j);
    }
    return e.str();
  }
  ProductValue v;
  if (a.name == "C0") {
    v = C0(spec);
  } else if (a.name == "ck") {
    v = conrey_ghosh_ck(FractionalOrder::parse(a.k), spec);
  } else if (a.name == "hk") {
    v = hk_ratio(Real(a.s), spec);
  } else {
    fail(ErrorKind::domain, "unknown constant '" + a.name + "' (C0, ck, hk, g)");
  }
  e.header("name,value,prime_cutoff,tail_bound,precision_bits");
  if (e.csv()) {
    e.row({v.name, to_decimal(v.value, digits), std::to_string(v.prime_cutoff), to_decimal(v.tail_bound, 6),
           std::to_string(v.precision_bits)});
  } else {
    json j;
    j["schema"] = "product_value";
    j["name"] = v.name;
    j["value"] = to_decimal(v.value, digits);
    j["prime_cutoff"] = v.prime_cutoff;
    j["tail_bound"] = to_decimal(v.tail_bound, 6);
    j["precision_bits"] = v.precision_bits;
    e.object(j);
  }
  return e.str();
}

struct ZetaArgs {
  std::string sigma = "0.5";
  std::vector<std::string> t{"14.134725141734693790457251983562470270784"};
  std::string method = "auto";
  int terms = kMaxRiemannSiegelTerms;
};

inline std::string run_zeta(const RunConfig& cfg, const ZetaArgs& a) {
  const PrecisionContext ctx(cfg.precision_bits);
  const int digits = digits_for(cfg.precision_bits);
  Emitter e(cfg, "zeta-eval");
  e.header("sigma,t,re,im,abs,method,error_bound,hardy_z");
  PrecisionGuard guard(ctx.bits + kGuardBits);
  const Real sigma(a.sigma);
  for (const auto& ts : a.t) {
    const Real t(ts);
    std::string method = a.method;
    if (method == "auto") {
      // Riemann-Siegel only where Euler-Maclaurin would need a huge sum.
      const bool on_line = sigma == Real(1) / 2;
      method = (on_line && abs(t) > Real(2.0e6)) ? "rs" : "em";
    }
    ZetaSample z;
    if (method == "em") {
      z = zeta_em(Complex(sigma, t), ctx);
      if (sigma == Real(1) / 2) {
        const ThetaValue th = theta(t, ctx);
        z.hardy_z = (polar(Real(1), th.value) * z.value).re;
      }
    } else if (method == "rs") {
      if (!(sigma == Real(1) / 2)) fail(ErrorKind::domain, "Riemann-Siegel needs sigma = 1/2");
      z = zeta_rs(t, a.terms, ctx);
    } else {
      fail(ErrorKind::domain, "unknown method '" + a.method + "' (em, rs, auto)");
    }
    const std::string hz = z.hardy_z ? to_decimal(*z.hardy_z, digits) : "";
    if (e.csv()) {
      e.row({to_decimal(z.s.re, digits), to_decimal(z.s.im, digits), to_decimal(z.value.re, digits),
             to_decimal(z.value.im, digits), to_decimal(abs(z.value), digits), std::string(to_string(z.method)),
             to_decimal(z.abs_error_bound, 6), hz});
    } else {
      json j;
      j["schema"] = "zeta_sample";
      j["s"] = {{"sigma", to_decimal(z.s.re, digits)}, {"t", to_decimal(z.s.im, digits)}};
      j["re"] = to_decimal(z.value.re, digits);
      j["im"] = to_decimal(z.value.im, digits);
      j["abs"] = to_decimal(abs(z.value), digits);
      j["method"] = to_string(z.method);
      j["error_bound"] = to_decimal(z.abs_error_bound, 6);
      if (z.hardy_z) j["hardy_z"] = hz;
      e.object(j);
    }
  }
  return e.str();
}

struct MomentArgs {
  std::string kind = "first";
  std::vector<double> t_max{500};
  std::vector<std::string> delta{"0.1"};
  double sigma = 0.75;
};

inline void emit_moments(Emitter& e, const std::vector<MomentEstimate>& ms, int digits) {
  e.header("parameter,value,quadrature_error,model_paper,model_cg,ratio_paper,ratio_cg");
  for (const auto& m : ms) {
    const auto& preds = m.model_predictions;
    const auto primary = preds.find(primary_model_name(m.kind));
    const auto cg = preds.find("cg");
    std::string mp, mc, rp, rc;
    if (primary != preds.end()) {
      mp = to_decimal(primary->second, digits);
      rp = to_decimal(m.value / primary->second, digits);
    }
    if (cg != preds.end()) {
      mc = to_decimal(cg->second, digits);
      rc = to_decimal(m.value / cg->second, digits);
    }
    if (e.csv()) {
      e.row({to_decimal(m.parameter, digits), to_decimal(m.value, digits), to_decimal(m.quadrature_error, 6), mp, mc,
             rp, rc});
    } else {
      json j;
      j["schema"] = "moment_estimate";
      j["kind"] = to_string(m.kind);
      j["parameter"] = to_decimal(m.parameter, digits);
      j["value"] = to_decimal(m.value, digits);
      j["quadrature_error"] = to_decimal(m.quadrature_error, 6);
      json models = json::object();
      for (const auto& [name, v] : preds) models[name] = to_decimal(v, digits);
      j["model_predictions"] = models;
      j["notes"] = m.notes;
      e.object(j);
    }
  }
}

inline std::string run_moment(const RunConfig& cfg, const MomentArgs& a) {
  const PrecisionContext ctx(cfg.precision_bits);
  MomentOptions opts;
  opts.jobs = cfg.jobs;
  std::vector<MomentEstimate> ms;
  if (a.kind == "first") {
    const ModelConstants mc = model_constants(ctx, cfg.prime_cutoff, cfg.jobs);
    ms = first_moment_profile(a.t_max, ctx, mc, opts);
  } else if (a.kind == "second") {
    for (const double T : a.t_max) ms.push_back(second_moment_sharp(T, ctx, opts));
  } else if (a.kind == "laplace") {
    const ModelConstants mc = model_constants(ctx, cfg.prime_cutoff, cfg.jobs);
    for (const auto& d : a.delta) ms.push_back(first_moment_laplace(std::stod(d), ctx, mc, opts));
  } else if (a.kind == "offline") {
    SieveOptions so;
    so.jobs = cfg.jobs;
    const CoefficientTable T = sieve_coeffs(FractionalOrder(1, 2), cfg.sieve_limit, so);
    for (const double t : a.t_max) ms.push_back(fractional_moment_offline(a.sigma, t, ctx, T, opts));
  } else if (a.kind == "lemma4") {
    const ModelConstants mc = model_constants(ctx, cfg.prime_cutoff, cfg.jobs);
    PrecisionGuard guard(ctx.bits + kGuardBits);
    for (const auto& d : a.delta) ms.push_back(lemma4_sum(Real(d), ctx, mc));
  } else {
    fail(ErrorKind::domain, "unknown moment kind '" + a.kind + "'");
  }
  Emitter e(cfg, "moment --kind " + a.kind);
  PrecisionGuard guard(ctx.bits + kGuardBits);
  emit_moments(e, ms, digits_for(cfg.precision_bits));
  return e.str();
}

inline std::string run_lemma4(const RunConfig& cfg, const std::vector<std::string>& deltas) {
  MomentArgs a;
  a.kind = "lemma4";
  a.delta = deltas;
  return run_moment(cfg, a);
}

inline int run_verify(const RunConfig& cfg, const std::string& level) {
  verify::Config vc;
  vc.seed = cfg.seed;
  if (level == "quick") {
    vc.level = verify::Level::quick;
  } else if (level == "full") {
    vc.level = verify::Level::full;
  } else {
    fail(ErrorKind::domain, "unknown level '" + level + "' (quick, full)");
  }
  Emitter e(cfg, "verify --level " + level);
  e.header("criterion,pass,summary");
  std::cout << e.str() << std::flush;
  const auto results = verify::run(vc, [&](const verify::CriterionResult& r) {
    if (cfg.output == Format::csv) {
      json summary = r.summary;  // JSON string quoting doubles as CSV-safe quoting
      std::cout << r.id << ',' << (r.pass ? "PASS" : "FAIL") << ',' << summary.dump() << std::endl;
    } else {
      json j;
      j["schema"] = "criterion";
      j["id"] = r.id;
      j["pass"] = r.pass;
      j["summary"] = r.summary;
      std::cout << j.dump() << std::endl;
    }
  });
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}

/// One-line JSON error object for a failed run.
inline std::string error_json(std::string_view kind, const std::string& message) {
  json j;
  j["schema"] = "error";
  j["kind"] = kind;
  j["message"] = message;
  return j.dump();
}

}  // namespace zmoment::cli
