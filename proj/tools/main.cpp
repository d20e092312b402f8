// Copyright 2026 The smoothot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sot/acceptance.hpp"
#include "sot/common.hpp"
#include "sot/concentration.hpp"
#include "sot/constructions.hpp"
#include "sot/dist_io.hpp"
#include "sot/divergences.hpp"
#include "sot/experiments.hpp"
#include "sot/functional_ineq.hpp"
#include "sot/tail_bounds.hpp"
#include "sot/transport.hpp"

namespace sot {
namespace {

using Json = nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitSchema = 2;
constexpr int kExitNumeric = 3;

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  bool quick = false;
};

struct Context {
  std::string command;
  Json config;
  std::optional<std::uint64_t> seed;
  std::string hash;
};

std::string Fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

Json ReadJsonFile(const std::string& path, const std::string& where) {
  std::ifstream in(path);
  if (!in) throw SchemaError(where, "cannot open file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(where, std::string("invalid JSON: ") + e.what());
  }
}

const Json& Field(const Json& j, const std::string& key) {
  if (!j.contains(key)) throw SchemaError("$." + key, "missing");
  return j.at(key);
}

double Number(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_number()) throw SchemaError("$." + key, "expected a number");
  return v.get<double>();
}

double Number(const Json& j, const std::string& key, double fallback) {
  return j.contains(key) ? Number(j, key) : fallback;
}

std::uint64_t Count(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_number_unsigned()) throw SchemaError("$." + key, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t Count(const Json& j, const std::string& key, std::uint64_t fallback) {
  return j.contains(key) ? Count(j, key) : fallback;
}

std::vector<double> NumberList(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_array()) throw SchemaError("$." + key, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw SchemaError("$." + key + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<std::size_t> CountList(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_array()) throw SchemaError("$." + key, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) {
      throw SchemaError("$." + key + "[" + std::to_string(i) + "]",
                        "expected a nonnegative integer");
    }
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

std::string Text(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_string()) throw SchemaError("$." + key, "expected a string");
  return v.get<std::string>();
}

int IntField(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) throw SchemaError("$." + key, "expected an integer");
  return v.get<int>();
}

// Families: dirac {x}, two_point {h, K}, chi2_hard {K, c, k_max},
// w2_hard {K, sigma, k_max}.
Json Construct(const Json& spec) {
  const std::string family = Text(spec, "family");
  if (family == "dirac") return ToJson(AtomicDistribution::Dirac(Number(spec, "x")));
  if (family == "two_point") return ToJson(BernoulliTwoPoint(Number(spec, "h"), Number(spec, "K")));
  if (family == "chi2_hard") {
    return ToJson(ChiSquareHardExample(Number(spec, "K"), Number(spec, "c"),
                                       IntField(spec, "k_max")));
  }
  if (family == "w2_hard") {
    const HardExample ex =
        W2HardExample(Number(spec, "K"), Number(spec, "sigma"), IntField(spec, "k_max"));
    Json j = ToJson(ex.dist);
    Json recs = Json::array();
    for (const ScheduleRecord& r : ex.schedule.records) {
      recs.push_back({{"k", r.k}, {"c", r.c}, {"r", r.r}, {"t", r.t}, {"log_p", r.log_p},
                      {"probe", r.probe}, {"log_n", r.log_n}, {"n", r.n},
                      {"n_saturated", r.n_saturated}});
    }
    j["schedule"] = {{"K", ex.schedule.K}, {"sigma", ex.schedule.sigma},
                     {"kappa", ex.schedule.kappa}, {"M", ex.schedule.M},
                     {"C", ex.schedule.C}, {"log_cu", ex.schedule.log_cu},
                     {"records", recs}};
    return j;
  }
  throw SchemaError("$.family", "unknown family '" + family + "'");
}

// A distribution is a path to a JSON file, an inline {"atoms": [...]} object
// or an inline {"family": ...} constructor.
AtomicDistribution Distribution(const Json& j, const std::string& key) {
  const Json& v = Field(j, key);
  const std::string path = "$." + key;
  if (v.is_string()) return AtomicFromJson(ReadJsonFile(v.get<std::string>(), path), path);
  if (v.is_object() && v.contains("family")) {
    try {
      return AtomicFromJson(Construct(v), path);
    } catch (const SchemaError& e) {
      throw SchemaError(path + e.path().substr(1), e.what());
    }
  }
  return AtomicFromJson(v, path);
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw SchemaError("--out", "cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string SeedText(const Context& ctx) {
  return ctx.seed ? std::to_string(*ctx.seed) : "none";
}

void CsvHeader(std::ostream& os, const Context& ctx, const std::string& columns,
               const std::string& extra = "") {
  os << "# sot " << kVersion << "\n"
     << "# command: " << ctx.command << "\n"
     << "# seed: " << SeedText(ctx) << "\n"
     << "# config_hash: " << ctx.hash << "\n";
  if (!extra.empty()) os << "# " << extra << "\n";
  os << columns << "\n";
}

Json Meta(const Context& ctx) {
  Json m = {{"version", kVersion}, {"command", ctx.command}, {"config_hash", ctx.hash}};
  m["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
  return m;
}

std::string Num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t RequireSeed(const Context& ctx) {
  if (!ctx.seed) throw SchemaError("$.seed", "missing; pass --seed or set seed in the config");
  return *ctx.seed;
}

int RunConstruct(const Context& ctx, std::ostream& os) {
  Json j = Construct(ctx.config);
  j["meta"] = Meta(ctx);
  os << j.dump(2) << "\n";
  return 0;
}

int RunW2(const Context& ctx, std::ostream& os) {
  const double sigma = Number(ctx.config, "sigma");
  if (!(sigma > 0.0)) throw SchemaError("$.sigma", "must be positive");
  const SmoothedMixture a(Distribution(ctx.config, "a"), sigma);
  const SmoothedMixture b(Distribution(ctx.config, "b"), Number(ctx.config, "sigma_b", sigma));
  TransportOptions opt;
  opt.tol = Number(ctx.config, "tol", 1e-10);
  const bool regions = ctx.config.value("regions", false);
  opt.keep_grid = regions;
  const TransportEvaluation ev = W2Squared(a, b, opt);
  Json j = {{"w2sq", ev.total}, {"tail_bound", ev.tail_bound},
            {"quadrature_error", ev.quadrature_error},
            {"window", {ev.window_lo, ev.window_hi}}};
  if (regions) {
    Json g = Json::array();
    for (const TransportPoint& p : ev.grid) g.push_back({p.t, p.rho_a, p.map, p.contribution});
    j["regions"] = {{"columns", {"t", "rho_a", "map", "contribution"}}, {"rows", g}};
  }
  j["meta"] = Meta(ctx);
  os << j.dump(2) << "\n";
  return 0;
}

int RunMiProbe(const Context& ctx, std::ostream& os) {
  const AtomicDistribution p = Distribution(ctx.config, "distribution");
  const double sigma = Number(ctx.config, "sigma");
  const double tol = Number(ctx.config, "tol", 1e-10);
  const bool renyi = ctx.config.contains("lambda");
  const double lambda = renyi ? Number(ctx.config, "lambda") : 0.0;
  const std::vector<double> radii = NumberList(ctx.config, "R");
  CsvHeader(os, ctx, "R,value,atom,x,partial,increment");
  std::vector<double> prev(p.size(), 0.0);
  for (double r : radii) {
    const MIEstimate e = renyi ? RenyiMutualInformation(p, sigma, lambda, r, tol)
                               : Chi2MutualInformation(p, sigma, r, tol);
    for (std::size_t k = 0; k < p.size(); ++k) {
      os << Num(r) << "," << Num(e.value) << "," << k << "," << Num(p.x(k)) << ","
         << Num(e.partial_by_atom[k]) << "," << Num(e.partial_by_atom[k] - prev[k]) << "\n";
      prev[k] = e.partial_by_atom[k];
    }
  }
  return 0;
}

int RunRateScan(const Context& ctx, std::ostream& os, const std::string& out_path) {
  const Json& c = ctx.config;
  const std::string family = Text(c, "family");
  const double K = Number(c, "K");
  const double sigma = Number(c, "sigma");
  const std::vector<std::size_t> ns = CountList(c, "n_list");
  const std::string quantity = c.value("quantity", std::string("w2sq"));
  McOptions mc;
  mc.seed = RequireSeed(ctx);
  mc.trials = Count(c, "trials", 200);
  mc.tol = Number(c, "tol", 1e-10);
  mc.early_stop_rel = Number(c, "early_stop_rel", 0.0);
  if (quantity != "w2sq" && quantity != "w2" && quantity != "kl") {
    throw SchemaError("$.quantity", "must be w2sq, w2 or kl");
  }
  RateSeries series;
  Json skipped = Json::array();
  if (family == "two_point") {
    const AtomicDistribution p = BernoulliTwoPoint(Number(c, "h"), K);
    for (std::size_t n : ns) {
      const McEstimate e = quantity == "w2sq" ? McExpectedW2Sq(p, sigma, n, mc)
                           : quantity == "w2" ? McExpectedW2(p, sigma, n, mc)
                                              : McExpectedKl(p, sigma, n, mc);
      series.points.push_back({n, e.estimate, e.stderr_, e.trials});
    }
  } else if (family == "bernoulli_scan") {
    if (quantity == "kl") throw SchemaError("$.quantity", "kl is not available for bernoulli_scan");
    const BernoulliScanResult r = BernoulliScan(K, sigma, Number(c, "epsilon"), ns, mc);
    series = quantity == "w2" ? r.w2 : r.w2_sq;
    for (const BernoulliScanRecord& rec : r.plan.records) {
      if (!rec.feasible) skipped.push_back({{"n", rec.n}, {"np", rec.np}});
    }
  } else {
    throw SchemaError("$.family", "must be two_point or bernoulli_scan");
  }
  CsvHeader(os, ctx, "n,estimate,stderr,trials");
  for (const RatePoint& p : series.points) {
    os << p.n << "," << Num(p.estimate) << "," << Num(p.stderr_) << "," << p.trials << "\n";
  }
  Json fit = {{"quantity", quantity}, {"points", series.points.size()}, {"skipped", skipped}};
  if (series.points.size() >= 3) {
    const RateFit f = FitRate(series);
    fit["slope"] = f.slope;
    fit["intercept"] = f.intercept;
    fit["slope_stderr"] = f.slope_stderr;
    fit["r_squared"] = f.r_squared;
    fit["weighted"] = f.weighted;
  } else {
    fit["slope"] = nullptr;
    fit["reason"] = "fewer than 3 points";
  }
  fit["meta"] = Meta(ctx);
  if (out_path.empty()) {
    os << "# fit: " << fit.dump() << "\n";
  } else {
    std::ofstream f(out_path + ".fit.json");
    if (!f) throw SchemaError("--out", "cannot write '" + out_path + ".fit.json'");
    f << fit.dump(2) << "\n";
  }
  return 0;
}

int RunConcentrationCmd(const Context& ctx, std::ostream& os) {
  const Json& c = ctx.config;
  const SmoothedMixture f(Distribution(c, "distribution"), Number(c, "sigma"));
  const ConcentrationBatch b = RunConcentration(f, Count(c, "n"), Number(c, "delta"),
                                                Count(c, "replications"), RequireSeed(ctx));
  CsvHeader(os, ctx, "replication,statistic,bound,violated");
  for (std::size_t i = 0; i < b.replications.size(); ++i) {
    const ConcentrationReport& r = b.replications[i];
    os << i << "," << Num(r.statistic) << "," << Num(r.bound) << "," << (r.violated ? 1 : 0)
       << "\n";
  }
  return 0;
}

int RunTailProbe(const Context& ctx, std::ostream& os) {
  const Json& c = ctx.config;
  const SmoothedMixture m(Distribution(c, "distribution"), Number(c, "sigma"));
  const TailDensityReport rep = TailDensityInequalityProbe(
      m, Number(c, "K"), Number(c, "epsilon"), NumberList(c, "r_grid"));
  CsvHeader(os, ctx, "r,log_tail,log_density,log_ratio", "log_m_hat: " + Num(rep.log_m_hat));
  for (const TailDensityPoint& p : rep.points) {
    os << Num(p.r) << "," << Num(p.log_tail) << "," << Num(p.log_density) << ","
       << Num(p.log_ratio) << "\n";
  }
  return 0;
}

int RunLsiProbe(const Context& ctx, std::ostream& os) {
  const Json& c = ctx.config;
  const double K = Number(c, "K");
  const double sigma = Number(c, "sigma");
  const double x1 = Number(c, "x1", kNaN);
  const double x2 = Number(c, "x2", kNaN);
  CsvHeader(os, ctx, "h,q1,q2,q3,q4,q5,bound");
  for (double h : NumberList(c, "h_list")) {
    const LSIProbe p = LsiLowerBound(h, K, sigma, x1, x2);
    os << Num(h);
    for (double q : p.q) os << "," << Num(q);
    os << "," << Num(p.lsi_lower) << "\n";
  }
  return 0;
}

int RunT2Probe(const Context& ctx, std::ostream& os) {
  const Json& c = ctx.config;
  const double K = Number(c, "K");
  const double sigma = Number(c, "sigma");
  const double delta = Number(c, "delta");
  CsvHeader(os, ctx, "h,w2sq,kl,ratio");
  for (double h : NumberList(c, "h_list")) {
    const T2Probe p = T2LowerBound(h, K, sigma, delta);
    os << Num(h) << "," << Num(p.w2sq) << "," << Num(p.kl) << "," << Num(p.ratio) << "\n";
  }
  return 0;
}

int RunAccept(const Flags& flags, std::ostream& os) {
  AcceptanceOptions opt;
  opt.quick = flags.quick;
  if (flags.seed) opt.seed = *flags.seed;
  os << "# sot " << kVersion << "\n# seed: " << opt.seed << (opt.quick ? "\n# quick\n" : "\n");
  int total = 0, failed = 0, unexpected = 0;
  RunAcceptance(opt, [&](const CriterionResult& r) {
    os << FormatCriterion(r) << "\n" << std::flush;
    ++total;
    if (!r.pass) {
      ++failed;
      if (!r.expected_failure) ++unexpected;
    }
  });
  os << total - failed << "/" << total << " criteria pass; " << unexpected
     << " unexpected failure(s)\n";
  return unexpected == 0 ? 0 : kExitFail;
}

int Dispatch(const std::string& command, const Flags& flags) {
  if (flags.threads) {
    setenv("SOT_THREADS", std::to_string(*flags.threads).c_str(), 1);
  }
  Output out(flags.out);
  if (command == "accept") return RunAccept(flags, out.stream());
  if (flags.config.empty()) throw SchemaError("--config", "required");
  Context ctx;
  ctx.command = command;
  ctx.config = ReadJsonFile(flags.config, "--config");
  if (!ctx.config.is_object()) throw SchemaError("$", "expected an object");
  ctx.hash = Fnv1a(ctx.config.dump());
  if (flags.seed) {
    ctx.seed = flags.seed;
  } else if (ctx.config.contains("seed")) {
    ctx.seed = Count(ctx.config, "seed");
  }
  std::ostream& os = out.stream();
  if (command == "construct") return RunConstruct(ctx, os);
  if (command == "w2") return RunW2(ctx, os);
  if (command == "mi-probe") return RunMiProbe(ctx, os);
  if (command == "rate-scan") return RunRateScan(ctx, os, flags.out);
  if (command == "concentration") return RunConcentrationCmd(ctx, os);
  if (command == "tail-probe") return RunTailProbe(ctx, os);
  if (command == "lsi-probe") return RunLsiProbe(ctx, os);
  if (command == "t2-probe") return RunT2Probe(ctx, os);
  throw SchemaError("command", "unknown subcommand '" + command + "'");
}

}  // namespace
}  // namespace sot

int main(int argc, char** argv) {
  CLI::App app{"Smoothed empirical measures: transport, divergences and probes"};
  app.require_subcommand(1);
  sot::Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"construct", "emit a constructed distribution as JSON"},
      {"w2", "W2 squared between two smoothed laws"},
      {"mi-probe", "chi-square or Renyi mutual information over a radius schedule"},
      {"rate-scan", "Monte Carlo convergence rate scan"},
      {"concentration", "weighted CDF concentration replications"},
      {"tail-probe", "tail versus density probe"},
      {"lsi-probe", "log-Sobolev lower bound over h"},
      {"t2-probe", "transportation inequality ratio over h"},
      {"accept", "run the acceptance suite"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON config path");
    sub->add_option("--out", flags.out, "output path (stdout if omitted)");
    sub->add_option("--seed", flags.seed, "base seed, overrides the config");
    sub->add_option("--threads", flags.threads, "worker threads (default SOT_THREADS)");
    sub->add_flag("--quick", flags.quick, "reduced trial counts");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sot::kExitSchema;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return sot::Dispatch(command, flags);
  } catch (const sot::SchemaError& e) {
    std::cerr << "schema error at " << e.what() << "\n";
    return sot::kExitSchema;
  } catch (const sot::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return sot::kExitSchema;
  } catch (const sot::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (partial " << e.partial() << ")\n";
    return sot::kExitNumeric;
  }
}
