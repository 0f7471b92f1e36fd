#include "shiftlab/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "shiftlab/cantor.hpp"
#include "shiftlab/dimension.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/experiments.hpp"
#include "shiftlab/hitting.hpp"
#include "shiftlab/parry.hpp"
#include "shiftlab/perron.hpp"
#include "shiftlab/report.hpp"
#include "shiftlab/run_length.hpp"
#include "shiftlab/sft.hpp"
#include "shiftlab/sft_json.hpp"

namespace shiftlab::cli {
namespace {

namespace fs = std::filesystem;

struct File {
  std::string name;
  std::string content;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

// stdout gets the CSV table or the JSON summary; --out gets both plus extras.
void emit(const Common& c, Io io, const std::string& name, const Csv& csv, const Json& summary,
          const std::vector<File>& extras = {}) {
  io.out << (c.format == "json" ? dump(summary) : csv.str());
  if (c.out.empty()) return;
  const fs::path dir(c.out);
  fs::create_directories(dir);
  write_file(dir / (name + ".csv"), csv.str());
  write_file(dir / (name + ".json"), dump(summary));
  for (const File& f : extras) write_file(dir / f.name, f.content);
}

Sft require_sft(const Common& c) {
  if (c.sft.empty()) fail(ErrorKind::MalformedInput, "--sft <path> is required");
  return load_sft(c.sft);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_real(s));
  return out;
}

std::int64_t parse_count(const std::string& text) {
  const double x = parse_real(text);
  if (!std::isfinite(x) || x != std::floor(x) || std::abs(x) > 9e15) {
    fail(ErrorKind::MalformedInput, "\"" + text + "\" is not an integer");
  }
  return static_cast<std::int64_t>(x);
}

Word parse_word(const std::string& text) {
  if (text.find(',') == std::string::npos) return parse_digits(text);
  Word w;
  for (const auto& s : split(text, ',')) {
    const std::int64_t x = parse_count(s);
    if (x < 0 || x >= kMaxAlphabet) fail(ErrorKind::SymbolOutOfRange, "symbol " + s + " out of range");
    w.push_back(static_cast<Symbol>(x));
  }
  return w;
}

TargetFunction make_psi(const PsiSpec& spec, double entropy) {
  std::string family = spec.family;
  std::transform(family.begin(), family.end(), family.begin(), ::toupper);
  if (family == "ZERO") return TargetFunction::zero();
  switch (target_family_from_string(family)) {
    case TargetFamily::LogRate: return TargetFunction::log_rate(parse_real(spec.param), entropy);
    case TargetFamily::LinearRate: return TargetFunction::linear_rate(parse_real(spec.param));
    case TargetFamily::PowerRate: return TargetFunction::power_rate(parse_real(spec.param));
    case TargetFamily::Table: {
      std::vector<std::pair<double, double>> points;
      for (const auto& pair : split(spec.table, ',')) {
        const auto parts = split(pair, ':');
        if (parts.size() != 2) fail(ErrorKind::MalformedInput, "table points are N:Phi pairs");
        points.emplace_back(parse_real(parts[0]), parse_real(parts[1]));
      }
      return TargetFunction::table(std::move(points));
    }
  }
  fail(ErrorKind::MalformedInput, "unknown psi family " + spec.family);
}

Json summary_json(const Summary& s) {
  return Json{{"samples", s.samples}, {"mean", s.mean}, {"median", s.median}, {"p05", s.p05}, {"p25", s.p25},
              {"p75", s.p75},         {"p95", s.p95},   {"iqr", s.iqr()}};
}

}  // namespace

double parse_real(const std::string& text) {
  std::string s = text;
  std::transform(s.begin(), s.end(), s.begin(), ::tolower);
  if (s == "inf" || s == "infinity" || s == "+inf") return kInfinity;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const double den = parse_real(s.substr(slash + 1));
    if (den == 0.0) fail(ErrorKind::MalformedInput, "zero denominator in \"" + text + "\"");
    return parse_real(s.substr(0, slash)) / den;
  }
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || std::isnan(x)) fail(ErrorKind::MalformedInput, "\"" + text + "\" is not a number");
  return x;
}

void run_entropy(const Common& c, const EntropyArgs& args, Io io) {
  if (args.max_n < 1) fail(ErrorKind::MalformedInput, "--max-n must be >= 1");
  const Sft sft = require_sft(c);
  const PerronData pd = perron(sft);
  Csv csv({"n", "words", "log_count", "estimate"});
  Json curve = Json::array();
  for (std::int64_t n = 1; n <= args.max_n; ++n) {
    const WordCount wc = count_words(sft, n);
    const std::string words = wc.exact ? wc.exact->get_str() : "";
    csv.row(n, words, wc.log, wc.log / static_cast<double>(n));
    curve.push_back({{"n", n}, {"log_count", wc.log}, {"estimate", wc.log / static_cast<double>(n)}});
  }
  Json summary{{"m", sft.alphabet_size()},
               {"entropy", pd.entropy},
               {"lambda", pd.lambda},
               {"theta", pd.theta},
               {"gap", sft.gap()},
               {"dim_h", hausdorff_dimension(sft)},
               {"curve", curve}};
  emit(c, io, "entropy", csv, summary);
}

void run_correlations(const Common& c, const CorrelationArgs& args, Io io) {
  const Sft sft = require_sft(c);
  const Word e = parse_word(args.e), f = parse_word(args.f);
  is_admissible(sft, e);
  is_admissible(sft, f);
  const ParryMeasure mu = parry_measure(sft);
  const std::int64_t first = args.n_min > 0 ? args.n_min : static_cast<std::int64_t>(e.size());
  if (args.n_max < first) fail(ErrorKind::MalformedInput, "--n-max must be >= " + std::to_string(first));
  Csv csv({"n", "correlation", "log_abs"});
  Json curve = Json::array();
  for (std::int64_t n = first; n <= args.n_max; ++n) {
    const double r = correlation(mu, e, f, n);
    csv.row(n, r, std::log(std::abs(r)));
    curve.push_back({{"n", n}, {"correlation", r}});
  }
  Json summary{{"e", format_digits(e)}, {"f", format_digits(f)}, {"theta", mu.theta}, {"log_theta", std::log(mu.theta)}};
  if (args.n_max - first >= 1 && mu.theta > 0.0) {
    summary["fitted_rate"] = fitted_decay_rate(mu, e, f, first, args.n_max);
  }
  summary["curve"] = curve;
  emit(c, io, "correlations", csv, summary);
}

void run_ea(const Common& c, const EaArgs& args, Io io) {
  const Sft sft = require_sft(c);
  const ParryMeasure mu = parry_measure(sft);
  const TargetFunction psi = make_psi(args.psi, mu.entropy);
  DichotomyOptions options;
  options.threads = resolve_threads(c.threads);
  options.growth_cap = args.growth_cap;
  if (args.mode == "strict") options.mode = CensorMode::Strict;
  else if (args.mode == "optimistic") options.mode = CensorMode::Optimistic;
  else fail(ErrorKind::MalformedInput, "--mode is strict or optimistic");
  const DichotomyResult r = dichotomy_experiment(mu, psi, {c.seed, c.seeds}, args.n0, args.n1, options);
  Csv csv({"seed_index", "seed", "word_length", "survived", "first_failure", "censored"});
  for (const SurvivalRow& row : r.rows) {
    csv.row(row.seed_index, row.seed, row.word_length, row.report.survived,
            row.report.first_failure ? cell(*row.report.first_failure) : std::string(), row.report.censored);
  }
  Json summary{{"psi", psi.describe()}, {"n0", args.n0},         {"n1", args.n1},
               {"seeds", c.seeds},      {"master_seed", c.seed}, {"survived", r.survived},
               {"censored", r.censored}, {"fraction", r.fraction}};
  emit(c, io, "ea", csv, summary);
}

void run_limit(const Common& c, const LimitArgs& args, Io io) {
  const Sft sft = require_sft(c);
  const ParryMeasure mu = parry_measure(sft);
  std::vector<std::int64_t> checkpoints;
  if (args.checkpoints.empty()) {
    checkpoints = geometric_checkpoints(std::min<std::int64_t>(100, args.n), args.n, 10.0);
  } else {
    for (const auto& s : split(args.checkpoints, ',')) checkpoints.push_back(parse_count(s));
  }
  for (std::int64_t n : checkpoints) {
    if (n < 2) fail(ErrorKind::InvalidParameters, "checkpoint N = " + std::to_string(n) + " < 2: log_A N vanishes at 1");
  }
  LimitOptions options;
  options.threads = resolve_threads(c.threads);
  options.growth_cap = args.growth_cap;
  const LimitResult r = limit_ratio_experiment(mu, {c.seed, c.seeds}, args.n, checkpoints, options);
  Csv csv({"seed", "checkpoint", "L_N", "ratio", "censored"});
  for (const LimitRow& row : r.rows) csv.row(row.seed_index, row.checkpoint, row.longest, row.ratio, row.censored);
  Json per = Json::array();
  std::vector<double> xs, ys;
  for (const LimitCheckpoint& cp : r.checkpoints) {
    Json item = summary_json(cp.ratio);
    item["N"] = cp.checkpoint;
    item["censored"] = cp.censored;
    per.push_back(item);
    xs.push_back(std::log10(static_cast<double>(cp.checkpoint)));
    ys.push_back(cp.ratio.median);
  }
  Json summary{{"n", args.n}, {"seeds", c.seeds}, {"master_seed", c.seed}, {"entropy", mu.entropy}, {"checkpoints", per}};
  std::vector<File> extras;
  if (c.svg) extras.push_back({"limit.svg", svg_curve(xs, ys, "median L_N / log_A N", "log10 N", "median ratio")});
  emit(c, io, "limit", csv, summary, extras);
}

void run_cantor(const Common& c, const CantorArgs& args, Io io) {
  const Sft sft = require_sft(c);
  const Variant variant = variant_from_string(args.variant);
  const double a = parse_real(args.a), b = parse_real(args.b);
  const double dim_h = hausdorff_dimension(sft);

  CantorParams params;
  params.variant = variant;
  params.p = args.p;
  if (args.k0 > 0) params.k0 = args.k0;
  params.n1 = args.n1;
  params.depth_budget = args.depth_budget;

  Json report{{"variant", std::string(to_string(variant))}};
  Json pj{{"a", a}, {"b", b}};
  std::optional<CantorConstruction> construction;
  std::string tag = "FORMULA";
  double target = 0.0;

  if (variant == Variant::Section4) {
    const double tau = parse_real(args.tau);
    if (!(tau > 0.0) || std::isinf(tau)) fail(ErrorKind::InvalidParameters, "SECTION4 needs 0 < tau < inf");
    pj["tau"] = tau;
    if (a > b) fail(ErrorKind::InvalidPair, "a > b");
    const DimensionValue dv = dim_level_set(a, b, tau, dim_h);
    if (dv.tag == RegimeTag::Empty) {
      if (tau * a >= 1.0) fail(ErrorKind::EmptyRegime, "a >= 1/tau: the level set is empty");
      fail(ErrorKind::EmptyRegime, "b = " + cell(b) + " < a/(1 - tau a) = " + cell(a / (1.0 - tau * a)) +
                                       ": the level set is empty");
    }
    tag = std::string(to_string(dv.tag));
    target = dv.absolute;
    if (dv.tag == RegimeTag::Formula && dv.relative > 0.0) {
      params.a = tau * a;
      params.b = tau * b;
      construction = CantorConstruction::build(sft, params);
    }
  } else {
    const TargetFunction psi = make_psi(args.psi, entropy(sft));
    pj["P"] = args.p;
    pj["psi"] = psi.describe();
    params.a = a;
    params.b = b;
    params.psi = psi;
    construction = CantorConstruction::build(sft, params);
  }
  pj["depth_budget"] = args.depth_budget;

  Csv csv({"k", "n_k", "m_k_or_d_k", "t_k_or_l_k", "N_k", "log_mass", "local_dim", "plateau_local_dim"});
  Json levels = Json::array();
  std::vector<File> extras;
  if (construction) {
    target = construction->target_dimension();
    pj["k0"] = construction->k0();
    pj["gap"] = construction->gap();
    pj["initial_length"] = construction->initial_length();
    for (const Level& lv : construction->levels()) {
      const double ld = construction->local_dimension(lv.k), pld = construction->plateau_local_dimension(lv.k);
      csv.row(lv.k, lv.n, lv.m_or_d, lv.t_or_l, lv.end, lv.log_mass, ld, pld);
      levels.push_back({{"k", lv.k},
                        {"n_k", lv.n},
                        {"m_k_or_d_k", lv.m_or_d},
                        {"t_k_or_l_k", lv.t_or_l},
                        {"N_k", lv.end},
                        {"log_mass", lv.log_mass},
                        {"local_dim", ld},
                        {"plateau_local_dim", pld}});
    }
  }
  report["params"] = pj;
  report["tag"] = tag;
  report["dim_h"] = dim_h;
  report["levels"] = levels;
  report["target_dim"] = target;

  if (args.sample_length > 0) {
    if (!construction) fail(ErrorKind::InvalidParameters, "nothing to sample: no construction for these parameters");
    const SampledPoint point = construction->sample_with_mass(c.seed, args.sample_length);
    const RunLengths runs = run_lengths(point.word);
    const TargetFunction phi = construction->ratio_target();
    std::set<std::int64_t> marks;
    for (std::int64_t n : geometric_checkpoints(2, args.sample_length - 1, 2.0)) marks.insert(n);
    std::vector<std::int64_t> lows, highs;
    for (std::int64_t n : construction->liminf_checkpoints()) {
      if (n < args.sample_length) lows.push_back(n), marks.insert(n);
    }
    for (std::int64_t n : construction->limsup_checkpoints()) {
      if (n < args.sample_length) highs.push_back(n), marks.insert(n);
    }
    Csv trace({"N", "L_N", "ratio", "censored", "log_mass", "local_dim"});
    const double log_m = std::log(static_cast<double>(sft.alphabet_size()));
    for (std::int64_t n : marks) {
      if (n < 2 || n > runs.max_index()) continue;
      const std::int64_t L = runs.L(n);
      const double lm = point.log_mass[static_cast<std::size_t>(n - 1)];
      trace.row(n, L, static_cast<double>(L) / phi.phi(static_cast<double>(n)), runs.L_censored(n), lm,
                lm == 0.0 ? 0.0 : -lm / (static_cast<double>(n) * log_m));
    }
    Json sample{{"seed", c.seed}, {"length", args.sample_length}};
    if (!lows.empty()) sample["liminf_estimate"] = liminf_limsup_estimate(runs, phi, lows).liminf;
    if (!highs.empty()) sample["limsup_estimate"] = liminf_limsup_estimate(runs, phi, highs).limsup;
    report["sample"] = sample;
    extras.push_back({"cantor_point.txt", format_word(point.word, sft.alphabet_size()) + "\n"});
    extras.push_back({"cantor_trace.csv", trace.str()});
  }
  emit(c, io, "cantor", csv, report, extras);
}

void run_dims(const Common& c, const DimsArgs& args, Io io) {
  const double dim_h = c.sft.empty() ? 1.0 : hausdorff_dimension(load_sft(c.sft));
  Csv csv({"kind", "tau", "a", "b", "tag", "relative", "absolute", "b_star"});
  Json rows = Json::array();
  auto add = [&](const std::string& kind, double tau, double a, double b, const DimensionValue& v,
                 std::optional<double> b_star) {
    const bool has_tau = kind != "ua", has_a = kind != "hea", has_b = kind == "level";
    csv.row(kind, has_tau ? cell(tau) : "", has_a ? cell(a) : "", has_b ? cell(b) : "", std::string(to_string(v.tag)),
            v.relative, v.absolute, b_star ? cell(*b_star) : "");
    Json row{{"kind", kind}};
    if (has_tau) row["tau"] = tau;
    if (has_a) row["a"] = a;
    if (has_b) row["b"] = b;
    row["tag"] = std::string(to_string(v.tag));
    row["relative"] = v.relative;
    row["absolute"] = v.absolute;
    if (b_star) row["b_star"] = *b_star;
    rows.push_back(row);
  };
  if (args.kind == "hea") {
    for (double tau : real_list(args.tau)) add("hea", tau, 0, 0, dim_hea(tau, dim_h), std::nullopt);
  } else if (args.kind == "ua") {
    for (double a : real_list(args.a)) {
      const UaDimension u = dim_u_a(a, dim_h);
      add("ua", 1.0, a, 0, u.value, u.b_star);
    }
  } else if (args.kind == "level") {
    if (!args.rows.empty()) {
      for (const auto& r : split(args.rows, ',')) {
        const auto parts = split(r, ':');
        if (parts.size() != 3) fail(ErrorKind::MalformedInput, "rows are a:b:tau triples");
        const double a = parse_real(parts[0]), b = parse_real(parts[1]), tau = parse_real(parts[2]);
        if (a > b) fail(ErrorKind::InvalidPair, "row " + r + " has a > b");
        add("level", tau, a, b, dim_level_set(a, b, tau, dim_h), std::nullopt);
      }
    } else {
      for (double tau : real_list(args.tau)) {
        for (double a : real_list(args.a)) {
          for (double b : real_list(args.b)) {
            if (a <= b) add("level", tau, a, b, dim_level_set(a, b, tau, dim_h), std::nullopt);
          }
        }
      }
    }
  } else {
    fail(ErrorKind::MalformedInput, "--kind is level, hea or ua");
  }
  emit(c, io, "dims", csv, Json{{"dim_h", dim_h}, {"rows", rows}});
}

}  // namespace shiftlab::cli
