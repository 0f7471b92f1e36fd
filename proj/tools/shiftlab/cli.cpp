#include "shiftlab/cli.hpp"

#include <algorithm>

#include "CLI11.hpp"
#include "shiftlab/commands.hpp"
#include "shiftlab/manifest.hpp"

namespace shiftlab::cli {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedInput:
    case ErrorKind::InvalidSft:
    case ErrorKind::InvalidParameters:
    case ErrorKind::InvalidPair:
    case ErrorKind::SymbolOutOfRange:
    case ErrorKind::InadmissibleWord:
    case ErrorKind::WindowOverlap:
    case ErrorKind::WordTooShort:
    case ErrorKind::DepthExceeded:
      return 2;
    case ErrorKind::NotPrimitive: return 3;
    case ErrorKind::InsufficientWordLength: return 4;
    case ErrorKind::EmptyRegime: return 5;
    default: return 1;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"shiftlab: shrinking targets and run lengths on subshifts of finite type", "shiftlab"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--manifest", "JSON run manifest; explicit flags override its entries");

  Common common;
  auto add_common = [&](CLI::App* sub, bool seeded) {
    sub->add_option("--sft", common.sft, "SFT JSON file: {\"m\": m, \"allowed\": [[0/1, ...], ...]}");
    sub->add_option("--out", common.out, "directory for <command>.csv, <command>.json and extras");
    sub->add_option("--format", common.format, "what goes to stdout: the csv table or the json summary")
        ->check(CLI::IsMember({"csv", "json"}));
    if (seeded) {
      sub->add_option("--seed", common.seed, "master seed");
      sub->add_option("--seeds", common.seeds, "number of seeds")->check(CLI::PositiveNumber);
      sub->add_option("--threads", common.threads, "worker threads (default: SHIFTLAB_THREADS, then all cores)");
    }
  };
  auto add_psi = [](CLI::App* sub, PsiSpec& psi) {
    sub->add_option("--psi", psi.family, "LOG_RATE, LINEAR_RATE, POWER_RATE, TABLE or ZERO");
    sub->add_option("--psi-param", psi.param, "c (LOG_RATE), tau (LINEAR_RATE) or s (POWER_RATE)");
    sub->add_option("--psi-table", psi.table, "TABLE points as N:Phi,N:Phi,...");
  };

  EntropyArgs entropy_args;
  auto* entropy = app.add_subcommand("entropy", "entropy, Perron data, gap M and dim_H with the word-count curve");
  add_common(entropy, false);
  entropy->add_option("--max-n", entropy_args.max_n, "last n of the estimate curve");
  entropy->footer("CSV columns: n,words,log_count,estimate");

  CorrelationArgs corr_args;
  auto* corr = app.add_subcommand("correlations", "exact correlations mu(e, sigma^-n f) - mu(e)mu(f)");
  add_common(corr, false);
  corr->add_option("--e", corr_args.e, "first word (digits, or comma-separated symbols)");
  corr->add_option("--f", corr_args.f, "second word");
  corr->add_option("--n-min", corr_args.n_min, "first shift (default |e|)");
  corr->add_option("--n-max", corr_args.n_max, "last shift");
  corr->footer("CSV columns: n,correlation,log_abs");

  EaArgs ea_args;
  auto* ea = app.add_subcommand("ea", "fraction of orbits with L_N > Phi(N) - 1 on the whole window [N0, N1]");
  add_common(ea, true);
  add_psi(ea, ea_args.psi);
  ea->add_option("--n0", ea_args.n0, "window start");
  ea->add_option("--n1", ea_args.n1, "window end");
  ea->add_option("--mode", ea_args.mode, "censored runs: strict (error) or optimistic");
  ea->add_option("--growth-cap", ea_args.growth_cap, "orbit length cap as a multiple of N1 + 1");
  ea->footer("CSV columns: seed_index,seed,word_length,survived,first_failure,censored");

  LimitArgs limit_args;
  auto* limit = app.add_subcommand("limit", "L_N / log_A N at checkpoints for random orbits of the Parry measure");
  add_common(limit, true);
  limit->add_option("--n", limit_args.n, "largest N (always a checkpoint)");
  limit->add_option("--checkpoints", limit_args.checkpoints, "comma-separated N values, each in [2, n]");
  limit->add_option("--growth-cap", limit_args.growth_cap, "orbit length cap as a multiple of the largest N");
  limit->add_flag("--svg", common.svg, "also write limit.svg (median ratio against log10 N)");
  limit->footer("CSV columns: seed,checkpoint,L_N,ratio,censored");

  CantorArgs cantor_args;
  auto* cantor = app.add_subcommand("cantor", "Cantor-type level-set constructions and their mass distribution");
  add_common(cantor, false);
  cantor->add_option("--seed", common.seed, "seed of the sampled point");
  cantor->add_option("--variant", cantor_args.variant, "SECTION4, CASE2, CASE3, CASE4, CASE5 or CASE6");
  cantor->add_option("--a", cantor_args.a, "liminf target (decimal, fraction or inf)");
  cantor->add_option("--b", cantor_args.b, "limsup target");
  cantor->add_option("--tau", cantor_args.tau, "SECTION4: rate of Phi(N) = tau N");
  cantor->add_option("--p", cantor_args.p, "CASE variants: block multiplier P >= 3");
  cantor->add_option("--k0", cantor_args.k0, "SECTION4 offset k0 (default: smallest valid)");
  cantor->add_option("--n1", cantor_args.n1, "SECTION4 with a = 0: first length n_1");
  cantor->add_option("--depth-budget", cantor_args.depth_budget, "build levels while their length stays below this");
  cantor->add_option("--sample-length", cantor_args.sample_length, "sample a point of this length (files go to --out)");
  add_psi(cantor, cantor_args.psi);
  cantor->footer(
      "CSV columns: k,n_k,m_k_or_d_k,t_k_or_l_k,N_k,log_mass,local_dim,plateau_local_dim\n"
      "Sample files: cantor_point.txt, cantor_trace.csv (N,L_N,ratio,censored,log_mass,local_dim)");

  DimsArgs dims_args;
  auto* dims = app.add_subcommand("dims", "closed-form dimensions over a parameter grid (--sft optional: dim_H = 1)");
  add_common(dims, false);
  dims->add_option("--kind", dims_args.kind, "level (a, b, tau), hea (tau) or ua (a)");
  dims->add_option("--a", dims_args.a, "comma list of a values");
  dims->add_option("--b", dims_args.b, "comma list of b values (pairs with a > b are skipped)");
  dims->add_option("--tau", dims_args.tau, "comma list of tau values");
  dims->add_option("--rows", dims_args.rows, "explicit a:b:tau triples instead of the grid; a > b is an error");
  dims->footer("CSV columns: kind,tau,a,b,tag,relative,absolute,b_star");

  const std::vector<std::string> names{"entropy", "correlations", "ea", "limit", "cantor", "dims"};
  try {
    std::vector<std::string> argv = expand_manifest(args, names, [&](const std::string& cmd, const std::string& flag) {
      const auto* sub = app.get_subcommand_no_throw(cmd);
      return sub != nullptr && sub->get_option_no_throw(flag) != nullptr;
    });
    std::reverse(argv.begin(), argv.end());
    try {
      app.parse(argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    const Io io{out, err};
    if (entropy->parsed()) run_entropy(common, entropy_args, io);
    else if (corr->parsed()) run_correlations(common, corr_args, io);
    else if (ea->parsed()) run_ea(common, ea_args, io);
    else if (limit->parsed()) run_limit(common, limit_args, io);
    else if (cantor->parsed()) run_cantor(common, cantor_args, io);
    else if (dims->parsed()) run_dims(common, dims_args, io);
    return 0;
  } catch (const Error& e) {
    err << "shiftlab: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "shiftlab: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace shiftlab::cli
