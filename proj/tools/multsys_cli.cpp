// multsys: experiment runner for pretentious multiplicative dynamics.
//
// Subcommands expose the library operations with JSON inputs and
// JSON-lines/CSV outputs.  Output is deterministic for fixed inputs: floats
// print with 15 significant digits, records are ordered by schedule point,
// and wall-clock timings are emitted only on request.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include <multsys/json_io.hpp>

using namespace multsys;

namespace {

struct Options {
  std::string out;
  std::string format = "jsonl";
  i64 sieve_limit = kDefaultSieveLimit;
  int threads = 1;
  bool timings = false;

  std::string fn, fn2, chr, system, T, S, F, G, set;
  i64 N = 0;
  i64 M = 0;
  i64 q = 0;
  i64 r = 0;
  i64 limit = 0;
  i64 q_max = 50;
  i64 band = 0;
  std::string schedule;
  std::string method = "direct";

  // raw count flags; parsed after the fact so 1e6-style values work
  std::string N_raw, M_raw, limit_raw, sieve_raw;
};

i64 parse_count(const std::string& s, const char* flag) {
  try {
    const double v = std::stod(s);
    if (!(v >= 0) || v > 9.2e18) throw domain_error("bad value");
    return static_cast<i64>(v);
  } catch (...) {
    throw domain_error(std::string("cannot parse ") + flag + " value '" + s + "'");
  }
}

std::vector<i64> parse_schedule(const std::string& s) {
  std::vector<i64> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<i64>(std::stod(item)));
    } catch (...) {
      throw domain_error("cannot parse schedule entry '" + item + "'");
    }
  }
  if (out.empty()) throw domain_error("empty schedule");
  for (size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw domain_error("schedule must be strictly increasing");
  return out;
}

// --schedule wins, then --N, then the default decade ladder
std::vector<i64> resolve_schedule(const Options& opt) {
  if (!opt.schedule.empty()) return parse_schedule(opt.schedule);
  if (opt.N > 0) return {opt.N};
  return {1'000, 10'000, 100'000, 1'000'000, 10'000'000};
}

class Output {
 public:
  Output(const Options& opt) : csv_(opt.format == "csv") {
    if (opt.format != "jsonl" && opt.format != "csv")
      throw domain_error("format must be jsonl or csv");
    if (!opt.out.empty()) {
      file_.open(opt.out, std::ios::binary);
      if (!file_) throw domain_error("cannot open output file " + opt.out);
    }
  }

  bool csv() const { return csv_; }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

  void line(const std::string& s) { os() << s << "\n"; }

  void csv_header(const std::string& header) {
    if (!header_done_) {
      line(header);
      header_done_ = true;
    }
  }

 private:
  bool csv_;
  bool header_done_ = false;
  std::ofstream file_;
};

std::string complex_json(std::complex<double> z) {
  return "{\"re\":" + fmt_double(z.real()) + ",\"im\":" + fmt_double(z.imag()) + "}";
}

std::string rationals_json(const std::vector<RationalPhase>& rs) {
  std::string out = "[";
  for (size_t i = 0; i < rs.size(); ++i) {
    if (i) out += ",";
    out += "{\"num\":" + std::to_string(rs[i].num) + ",\"den\":" + std::to_string(rs[i].den) + "}";
  }
  return out + "]";
}

std::string mode_function_json(const ModeFunction& F) { return dump_canonical(to_json(F)); }

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  i64 ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

JsonLineWriter record_head(const std::string& command, const std::string& params_raw) {
  JsonLineWriter w;
  w.field("artifact", "multsys");
  w.field("version", "0.1.0");
  w.field("command", command);
  w.field_raw("params", params_raw);
  return w;
}

void maybe_timing(JsonLineWriter& w, const Options& opt, const Timer& t) {
  if (opt.timings) w.field("wall_ms", t.ms());
}

// ---------------------------------------------------------------- commands

int cmd_primes(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.limit < 2) throw domain_error("primes: --limit must be >= 2");
  const auto ps = sieve_primes(opt.limit, opt.sieve_limit);
  if (out.csv()) {
    out.csv_header("prime");
    for (i64 p : ps) out.line(std::to_string(p));
    return 0;
  }
  std::string arr = "[";
  for (size_t i = 0; i < ps.size(); ++i) {
    if (i) arr += ",";
    arr += std::to_string(ps[i]);
  }
  arr += "]";
  auto w = record_head("primes", "{\"limit\":" + std::to_string(opt.limit) + "}");
  w.field("count", static_cast<i64>(ps.size()));
  w.field_raw("primes", arr);
  maybe_timing(w, opt, timer);
  out.line(w.finish());
  return 0;
}

int cmd_mean(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.fn.empty()) throw domain_error("mean: --fn is required");
  if (opt.method != "direct" && opt.method != "halasz" && opt.method != "both")
    throw domain_error("mean: --method must be direct, halasz or both");
  const FgMultFunction f = parse_mult_function(load_json_file(opt.fn));
  std::vector<i64> schedule =
      opt.schedule.empty() ? std::vector<i64>{opt.N} : parse_schedule(opt.schedule);
  if (schedule.back() < 1) throw domain_error("mean: provide --N or --schedule");
  const SieveTable sieve(std::max<i64>(schedule.back(), 2), opt.sieve_limit);

  std::optional<DirichletCharacter> chi;
  if (!opt.chr.empty()) chi = parse_character(load_json_file(opt.chr));

  std::string params = "{\"fn\":" + dump_canonical(to_json(f));
  if (opt.q > 0) params += ",\"r\":" + std::to_string(opt.r) + ",\"q\":" + std::to_string(opt.q);
  if (chi) params += ",\"char\":" + dump_canonical(to_json(*chi));
  params += "}";

  if (out.csv()) out.csv_header("N,method,re,im,delta");

  std::complex<double> direct = 0.0;
  for (i64 N : schedule) {
    if (opt.method == "direct" || opt.method == "both") {
      if (chi)
        direct = partial_mean_character(f, *chi, N, sieve, opt.threads);
      else if (opt.q > 0)
        direct = partial_mean_twisted(f, N, opt.r, opt.q, sieve, opt.threads);
      else
        direct = partial_mean(f, N, sieve, opt.threads);
      const char* name = chi ? "character" : (opt.q > 0 ? "twisted" : "direct");
      if (out.csv()) {
        out.line(std::to_string(N) + "," + name + "," + fmt_double(direct.real()) + "," +
                 fmt_double(direct.imag()) + ",");
      } else {
        auto w = record_head("mean", params);
        w.field("N", N);
        w.field("method", name);
        w.field_raw("value", complex_json(direct));
        maybe_timing(w, opt, timer);
        out.line(w.finish());
      }
    }
  }
  if (opt.method == "halasz" || opt.method == "both") {
    const std::complex<double> h = halasz_mean(f);
    const double delta = opt.method == "both" ? std::abs(h - direct) : 0.0;
    if (out.csv()) {
      out.line(std::to_string(schedule.back()) + ",halasz," + fmt_double(h.real()) + "," +
               fmt_double(h.imag()) + "," +
               (opt.method == "both" ? fmt_double(delta) : std::string()));
    } else {
      auto w = record_head("mean", params);
      w.field("N", schedule.back());
      w.field("method", "halasz");
      w.field_raw("value", complex_json(h));
      if (opt.method == "both") w.field("agreement_delta", delta);
      maybe_timing(w, opt, timer);
      out.line(w.finish());
    }
  }
  return 0;
}

int cmd_distance(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.fn.empty() || opt.fn2.empty())
    throw domain_error("distance: --fn and --fn2 are required");
  const FgMultFunction f = parse_mult_function(load_json_file(opt.fn));
  const FgMultFunction g = parse_mult_function(load_json_file(opt.fn2));
  std::vector<i64> schedule =
      opt.schedule.empty() ? std::vector<i64>{opt.N} : parse_schedule(opt.schedule);
  if (schedule.back() < 2) throw domain_error("distance: provide --N or --schedule");
  const SieveTable sieve(std::max<i64>(schedule.back(), 2), opt.sieve_limit);

  const std::string params =
      "{\"fn\":" + dump_canonical(to_json(f)) + ",\"fn2\":" + dump_canonical(to_json(g)) + "}";

  if (out.csv()) out.csv_header("N,distance");
  for (i64 N : schedule) {
    const double d = distance_partial(f, g, N, sieve);
    if (out.csv()) {
      out.line(std::to_string(N) + "," + fmt_double(d));
    } else {
      auto w = record_head("distance", params);
      w.field("N", N);
      w.field("distance", d);
      maybe_timing(w, opt, timer);
      out.line(w.finish());
    }
  }
  const FinitenessWitness fw = distance_is_finite(f, g);
  if (!out.csv()) {
    auto w = record_head("distance", params);
    w.field("finite", fw.finite);
    if (fw.finite) {
      std::string arr = "[";
      for (size_t i = 0; i < fw.exceptional_primes.size(); ++i) {
        if (i) arr += ",";
        arr += std::to_string(fw.exceptional_primes[i]);
      }
      w.field_raw("witness_primes", arr + "]");
    } else {
      w.field("divergent_class", fw.divergent_class);
    }
    maybe_timing(w, opt, timer);
    out.line(w.finish());
  }
  return 0;
}

int cmd_classify(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.system.empty()) throw domain_error("classify: --system is required");
  const MultSystem S = parse_mult_system(load_json_file(opt.system));
  const Classification cl = classify_system(S);
  const std::string params = "{\"system\":" + dump_canonical(to_json(S)) + "}";
  if (out.csv()) {
    out.csv_header("pretentiously_ergodic,aperiodic,pretentiously_weak_mixing,band_limited,band");
    out.line(std::string(cl.pretentiously_ergodic ? "true" : "false") + "," +
             (cl.aperiodic ? "true" : "false") + "," +
             (cl.pretentiously_weak_mixing ? "true" : "false") + "," +
             (cl.band_limited ? "true" : "false") + "," + std::to_string(cl.band));
    return 0;
  }
  auto w = record_head("classify", params);
  w.field("pretentiously_ergodic", cl.pretentiously_ergodic);
  w.field("aperiodic", cl.aperiodic);
  w.field("pretentiously_weak_mixing", cl.pretentiously_weak_mixing);
  w.field("band_limited", cl.band_limited);
  if (cl.band_limited) w.field("band", cl.band);
  maybe_timing(w, opt, timer);
  out.line(w.finish());
  return 0;
}

int cmd_average(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.system.empty() || opt.F.empty())
    throw domain_error("average: --system and --F are required");
  const MultSystem S = parse_mult_system(load_json_file(opt.system));
  const ModeFunction F = parse_mode_function(load_json_file(opt.F));
  std::optional<FgMultFunction> weight;
  if (!opt.fn.empty()) weight = parse_mult_function(load_json_file(opt.fn));
  const std::vector<i64> schedule = resolve_schedule(opt);
  const SieveTable sieve(std::max<i64>(schedule.back(), 2), opt.sieve_limit);

  std::string params = "{\"F\":" + dump_canonical(to_json(F)) +
                       ",\"system\":" + dump_canonical(to_json(S));
  if (weight) params += ",\"weight\":" + dump_canonical(to_json(*weight));
  params += "}";

  const auto trace =
      ergodic_average(S, F, weight ? &*weight : nullptr, schedule, sieve, opt.threads);
  const ModeFunction predicted = predicted_limit(S, F, weight ? &*weight : nullptr);

  if (out.csv()) {
    out.csv_header("N,mode,re,im,l2_err");
    for (const auto& pt : trace)
      for (const auto& [j, c] : pt.average.coeffs)
        out.line(std::to_string(pt.N) + "," + std::to_string(j) + "," + fmt_double(c.real()) +
                 "," + fmt_double(c.imag()) + "," + fmt_double(pt.l2_error));
    return 0;
  }
  for (const auto& pt : trace) {
    auto w = record_head("average", params);
    w.field("N", pt.N);
    w.field_raw("average", mode_function_json(pt.average));
    w.field("l2_err", pt.l2_error);
    maybe_timing(w, opt, timer);
    out.line(w.finish());
  }
  auto w = record_head("average", params);
  w.field_raw("predicted_limit", mode_function_json(predicted));
  if (trace.size() >= 2) {
    // convergence verdict from the last two trace points
    w.field("converging", trace.back().l2_error < trace[trace.size() - 2].l2_error);
  }
  maybe_timing(w, opt, timer);
  out.line(w.finish());
  return 0;
}

int cmd_spectra(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.system.empty()) throw domain_error("spectra: --system is required");
  const MultSystem S = parse_mult_system(load_json_file(opt.system));
  const auto tilde = sigma_pr_rat_tilde(S);
  std::optional<AddSystem> T;
  if (!opt.T.empty()) T = parse_add_system(load_json_file(opt.T));

  std::string params = "{\"system\":" + dump_canonical(to_json(S));
  if (T) params += ",\"T\":" + dump_canonical(to_json(*T));
  params += "}";

  if (out.csv()) {
    out.csv_header("set,num,den");
    for (const auto& x : tilde)
      out.line("sigma_tilde," + std::to_string(x.num) + "," + std::to_string(x.den));
    if (T)
      for (const auto& x : sigma_rat(*T))
        out.line("sigma_rat," + std::to_string(x.num) + "," + std::to_string(x.den));
    return 0;
  }
  auto w = record_head("spectra", params);
  w.field_raw("sigma_pr_rat_tilde", rationals_json(tilde));
  if (T) w.field_raw("sigma_rat", rationals_json(sigma_rat(*T)));
  if (!opt.F.empty()) {
    const ModeFunction F = parse_mode_function(load_json_file(opt.F));
    std::string atoms = "[";
    bool first = true;
    for (const auto& atom : spectral_measure(S, F)) {
      if (!first) atoms += ",";
      first = false;
      atoms += "{\"mode\":" + std::to_string(atom.mode) +
               ",\"multiplier\":" + dump_canonical(to_json(atom.multiplier)) +
               ",\"weight\":" + fmt_double(atom.weight) + "}";
    }
    w.field_raw("spectral_atoms", atoms + "]");
  }
  maybe_timing(w, opt, timer);
  out.line(w.finish());
  return 0;
}

int cmd_joint(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.T.empty() || opt.S.empty()) throw domain_error("joint: --T and --S are required");
  const AddSystem T = parse_add_system(load_json_file(opt.T));
  const MultSystem S = parse_mult_system(load_json_file(opt.S));
  const JointVerdict v = decide_joint(T, S);

  std::string params =
      "{\"S\":" + dump_canonical(to_json(S)) + ",\"T\":" + dump_canonical(to_json(T)) + "}";

  if (!out.csv()) {
    auto w = record_head("joint", params);
    w.field("jointly_ergodic", v.jointly_ergodic);
    w.field_raw("sigma_rat_T", rationals_json(v.sigma_rat_T));
    w.field_raw("sigma_tilde_S", rationals_json(v.sigma_tilde_S));
    w.field_raw("intersection", rationals_json(v.intersection));
    maybe_timing(w, opt, timer);
    out.line(w.finish());
  }

  if (!opt.F.empty() && !opt.G.empty()) {
    const ModeFunction F = parse_mode_function(load_json_file(opt.F));
    const ModeFunction G = parse_mode_function(load_json_file(opt.G));
    const auto schedule = resolve_schedule(opt);
    const SieveTable sieve(std::max<i64>(schedule.back(), 2), opt.sieve_limit);
    const auto trace = joint_average(T, S, F, G, schedule, sieve, opt.band, opt.threads);
    if (out.csv()) out.csv_header("N,l2_err");
    for (const auto& pt : trace) {
      if (out.csv()) {
        out.line(std::to_string(pt.N) + "," + fmt_double(pt.l2_error));
      } else {
        auto w = record_head("joint", params);
        w.field("N", pt.N);
        w.field("l2_err", pt.l2_error);
        maybe_timing(w, opt, timer);
        out.line(w.finish());
      }
    }
  } else if (out.csv()) {
    out.csv_header("jointly_ergodic");
    out.line(v.jointly_ergodic ? "true" : "false");
  }
  return 0;
}

int cmd_recurrence(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.T.empty() || opt.fn.empty() || opt.set.empty())
    throw domain_error("recurrence: --T, --fn and --set are required");
  const AddSystem T1 = parse_add_system(load_json_file(opt.T));
  const FgAddFunction a = parse_add_function(load_json_file(opt.fn));

  const json sj = load_json_file(opt.set);
  if (!sj.is_object() || !sj.contains("order") || !sj.contains("members"))
    throw validation_error("recurrence set: expected {\"order\":k,\"members\":[...]} ");
  for (auto it = sj.begin(); it != sj.end(); ++it)
    if (it.key() != "order" && it.key() != "members")
      throw validation_error("recurrence set: unknown field '" + it.key() + "'");
  const i64 k = sj["order"].get<i64>();
  std::vector<i64> A;
  for (const auto& x : sj["members"]) A.push_back(x.get<i64>());

  if (opt.N < 1) throw domain_error("recurrence: --N is required");
  const SieveTable sieve(std::max<i64>(opt.N, 2), opt.sieve_limit);
  if (!T1.angle.rational || T1.angle.rat.den != k)
    throw domain_error("recurrence: T must rotate Z_k for the set's order k");

  const double value = recurrence_average(T1, nullptr, a, A, opt.N, sieve);
  const double mu = static_cast<double>(A.size()) / static_cast<double>(k);
  const double bound = mu * mu * mu;

  const std::string params = "{\"T\":" + dump_canonical(to_json(T1)) +
                             ",\"fn\":" + dump_canonical(to_json(a)) +
                             ",\"set\":" + dump_canonical(sj) + "}";
  if (out.csv()) {
    out.csv_header("N,value,mu_A_cubed");
    out.line(std::to_string(opt.N) + "," + fmt_double(value) + "," + fmt_double(bound));
    return 0;
  }
  auto w = record_head("recurrence", params);
  w.field("N", opt.N);
  w.field("value", value);
  w.field("mu_A_cubed", bound);
  maybe_timing(w, opt, timer);
  out.line(w.finish());
  return 0;
}

int cmd_configs(const Options& opt) {
  Output out(opt);
  Timer timer;
  if (opt.set.empty()) throw domain_error("configs: --set is required");
  const IntegerSetSpec E = parse_integer_set(load_json_file(opt.set));
  if (opt.N < 1 || opt.M < opt.N) throw domain_error("configs: need --M >= --N >= 1");
  const SieveTable sieve(std::max<i64>(opt.N, 2), opt.sieve_limit);

  const double density = count_configurations(E, opt.N, opt.M, sieve);
  const i64 count = static_cast<i64>(
      std::llround(density * static_cast<double>(opt.N) * static_cast<double>(opt.M)));
  const double delta = E.upper_density();

  const std::string params = "{\"set\":" + dump_canonical(to_json(E)) + "}";
  if (out.csv()) {
    out.csv_header("N,M,count,density,delta_cubed");
    out.line(std::to_string(opt.N) + "," + std::to_string(opt.M) + "," + std::to_string(count) +
             "," + fmt_double(density) + "," + fmt_double(delta * delta * delta));
    return 0;
  }
  auto w = record_head("configs", params);
  w.field("N", opt.N);
  w.field("M", opt.M);
  w.field("count", count);
  w.field("density", density);
  w.field("delta_cubed", delta * delta * delta);
  maybe_timing(w, opt, timer);
  out.line(w.finish());
  return 0;
}

int cmd_verify_identities(const Options& opt) {
  Output out(opt);
  Timer timer;
  const i64 qmax = opt.q_max;
  if (qmax < 1) throw domain_error("verify-identities: --q-max must be >= 1");
  const std::string params = "{\"q_max\":" + std::to_string(qmax) + "}";
  if (out.csv()) out.csv_header("identity,q,residual,exact");

  auto emit = [&](const char* identity, i64 q, double residual, bool exact) {
    if (out.csv()) {
      out.line(std::string(identity) + "," + std::to_string(q) + "," + fmt_double(residual) +
               "," + (exact ? "true" : "false"));
      return;
    }
    auto w = record_head("verify-identities", params);
    w.field("identity", identity);
    w.field("q", q);
    w.field("residual", residual);
    w.field("exact", exact);
    maybe_timing(w, opt, timer);
    out.line(w.finish());
  };

  for (i64 q = 1; q <= qmax; ++q) {
    const auto chars = characters_mod(q);

    double fourier = 0.0;
    double gauss = 0.0;
    for (const auto& chi : chars) {
      if (!chi.is_primitive()) continue;
      gauss = std::max(gauss,
                       std::abs(std::abs(gauss_sum(chi)) - std::sqrt(static_cast<double>(q))));
      for (i64 n = 1; n <= q; ++n) fourier = std::max(fourier, verify_fourier_expansion(chi, n));
    }
    emit("fourier_expansion", q, fourier, fourier == 0.0);
    emit("gauss_modulus", q, gauss, gauss == 0.0);

    bool orth = true;
    for (i64 r = 1; r <= q && orth; ++r) {
      if (std::gcd(r, q) != 1) continue;
      for (i64 n = 1; n <= q && orth; ++n) orth = orthogonality_identity_exact(q, r, n);
    }
    emit("orthogonality", q, orth ? 0.0 : 1.0, orth);

    bool geom = true;
    for (i64 r = 1; r <= q && geom; ++r)
      for (i64 n = 1; n <= q && geom; ++n) geom = geometric_indicator_exact(q, r, n);
    emit("geometric_indicator", q, geom ? 0.0 : 1.0, geom);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pretentious multiplicative dynamics experiment runner"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "output file (default stdout)");
    sub->add_option("--format", opt.format, "jsonl|csv");
    sub->add_option("--sieve-limit", opt.sieve_raw, "maximum allowed sieve size");
    sub->add_option("--threads", opt.threads, "worker threads for the summation kernels");
    sub->add_flag("--timings", opt.timings, "include wall_ms in records");
    sub->add_option("--fn", opt.fn, "FG multiplicative/additive function JSON");
    sub->add_option("--fn2", opt.fn2, "second FG function JSON");
    sub->add_option("--char", opt.chr, "Dirichlet character JSON");
    sub->add_option("--system", opt.system, "multiplicative system JSON");
    sub->add_option("--T", opt.T, "additive system JSON");
    sub->add_option("--S", opt.S, "multiplicative system JSON");
    sub->add_option("--F", opt.F, "mode function JSON");
    sub->add_option("--G", opt.G, "mode function JSON");
    sub->add_option("--set", opt.set, "integer set / recurrence set JSON");
    sub->add_option("--N", opt.N_raw, "horizon N");
    sub->add_option("--M", opt.M_raw, "second horizon M");
    sub->add_option("--q", opt.q, "twist denominator");
    sub->add_option("--r", opt.r, "twist numerator");
    sub->add_option("--limit", opt.limit_raw, "sieve/prime limit");
    sub->add_option("--q-max", opt.q_max, "largest modulus to verify");
    sub->add_option("--band", opt.band, "mode band for torus spaces");
    sub->add_option("--schedule", opt.schedule, "comma-separated increasing N list");
    sub->add_option("--method", opt.method, "direct|halasz|both");
  };

  auto* primes = app.add_subcommand("primes", "list primes up to a limit");
  auto* mean = app.add_subcommand("mean", "partial and Halasz mean values");
  auto* distance = app.add_subcommand("distance", "pretentious distance between FG functions");
  auto* classify = app.add_subcommand("classify", "classify a multiplicative system");
  auto* average = app.add_subcommand("average", "ergodic averages against the predicted limit");
  auto* spectra = app.add_subcommand("spectra", "rational spectra and spectral atoms");
  auto* joint = app.add_subcommand("joint", "joint ergodicity verdict and correlation trace");
  auto* recurrence = app.add_subcommand("recurrence", "triple recurrence averages on Z_k");
  auto* configs = app.add_subcommand("configs", "count {m, m+n, m+Omega(n)} configurations");
  auto* verify = app.add_subcommand("verify-identities", "character identity suite");
  for (auto* sub : {primes, mean, distance, classify, average, spectra, joint, recurrence,
                    configs, verify})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (!opt.N_raw.empty()) opt.N = parse_count(opt.N_raw, "--N");
    if (!opt.M_raw.empty()) opt.M = parse_count(opt.M_raw, "--M");
    if (!opt.limit_raw.empty()) opt.limit = parse_count(opt.limit_raw, "--limit");
    if (!opt.sieve_raw.empty()) opt.sieve_limit = parse_count(opt.sieve_raw, "--sieve-limit");
    if (primes->parsed()) return cmd_primes(opt);
    if (mean->parsed()) return cmd_mean(opt);
    if (distance->parsed()) return cmd_distance(opt);
    if (classify->parsed()) return cmd_classify(opt);
    if (average->parsed()) return cmd_average(opt);
    if (spectra->parsed()) return cmd_spectra(opt);
    if (joint->parsed()) return cmd_joint(opt);
    if (recurrence->parsed()) return cmd_recurrence(opt);
    if (configs->parsed()) return cmd_configs(opt);
    if (verify->parsed()) return cmd_verify_identities(opt);
  } catch (const resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
