#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace shiftlab::cli {

struct Common {
  std::string sft;
  std::string out;  // output directory; empty = stdout only
  std::uint64_t seed = 0;
  std::int64_t seeds = 100;
  int threads = 0;
  std::string format = "csv";
  bool svg = false;
};

struct PsiSpec {
  std::string family = "LOG_RATE";
  std::string param = "1";
  std::string table;  // "N:Phi,N:Phi,..."
};

struct EntropyArgs {
  std::int64_t max_n = 30;
};

struct CorrelationArgs {
  std::string e = "0";
  std::string f = "0";
  std::int64_t n_min = 0;  // 0 = |e|
  std::int64_t n_max = 30;
};

struct EaArgs {
  PsiSpec psi;
  std::int64_t n0 = 1000;
  std::int64_t n1 = 100000;
  std::string mode = "strict";
  std::int64_t growth_cap = 8;
};

struct LimitArgs {
  std::int64_t n = 1'000'000;
  std::string checkpoints;  // comma list; empty = decades from 100
  std::int64_t growth_cap = 8;
};

struct CantorArgs {
  std::string variant = "SECTION4";
  std::string a = "0.25";
  std::string b = "1";
  std::string tau = "1";
  int p = 3;
  int k0 = 0;  // 0 = automatic
  std::int64_t n1 = 24;
  std::int64_t depth_budget = 1'000'000;
  std::int64_t sample_length = 0;
  PsiSpec psi{"POWER_RATE", "0.5", ""};
};

struct DimsArgs {
  std::string kind = "level";
  std::string a = "0,0.25,0.5,1";
  std::string b = "0.5,1,2,inf";
  std::string tau = "0,0.5,1,inf";
  std::string rows;  // "a:b:tau,..."; a > b is an error here
};

struct Io {
  std::ostream& out;
  std::ostream& err;
};

void run_entropy(const Common& c, const EntropyArgs& args, Io io);
void run_correlations(const Common& c, const CorrelationArgs& args, Io io);
void run_ea(const Common& c, const EaArgs& args, Io io);
void run_limit(const Common& c, const LimitArgs& args, Io io);
void run_cantor(const Common& c, const CantorArgs& args, Io io);
void run_dims(const Common& c, const DimsArgs& args, Io io);

/// Accepts decimals, "inf" and fractions such as "1/4". Throws MalformedInput.
double parse_real(const std::string& text);

}  // namespace shiftlab::cli
