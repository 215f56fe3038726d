#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sigbpe/corpus.hpp"
#include "sigbpe/merge_policy.hpp"
#include "sigbpe/trainer.hpp"

namespace sigbpe {

// One (tokenizer, split) evaluation row.
struct EvalReport {
  std::string mode;
  std::uint32_t vocab_target = 0;
  std::uint64_t vocab_achieved = 0;  // model vocabulary size
  std::uint64_t merge_count = 0;
  std::string split;
  std::uint64_t token_count = 0;
  std::uint64_t char_count = 0;
  double tpc = 0.0;
  double vocab_used = 0.0;
  std::uint64_t oov_count = 0;
  double nll_per_token = 0.0;
  double ppl = 0.0;
  double nll_per_char = 0.0;
  double bpc = 0.0;
};

// Validation-split pairing of each significance-gain point with the
// closest-TPC frequency point. delta_bpc = bpc_freq - bpc_sig: positive means
// significance-gain has the lower (better) BPC.
struct MatchedPair {
  std::uint32_t v_siggain = 0;
  double tpc_sig = 0.0;
  double bpc_sig = 0.0;
  std::uint32_t v_freq_matched = 0;
  double tpc_freq = 0.0;
  double bpc_freq = 0.0;
  double delta_bpc = 0.0;
};

struct SweepConfig {
  std::vector<std::uint32_t> vocab_sizes{300, 400, 600, 800, 1200};
  MergePolicyConfig frequency;          // mode forced to kFrequency
  MergePolicyConfig significance_gain;  // mode forced to kSignificanceGain
  int lm_order = 3;
  double lm_addk = 0.01;

  SweepConfig() {
    frequency.mode = MergeMode::kFrequency;
    significance_gain.mode = MergeMode::kSignificanceGain;
  }
};

// Trains one tokenizer on the train split, encodes all three splits, fits the
// n-gram evaluator on the train tokens and returns one report per split.
std::vector<EvalReport> evaluate_point(const CorpusSplit& train,
                                       const CorpusSplit& val,
                                       const CorpusSplit& test,
                                       const MergePolicyConfig& policy,
                                       std::uint32_t target_vocab, int lm_order,
                                       double lm_addk,
                                       const MergeLogger& log = {});

// Trains both modes at every vocabulary size on the train split, encodes all
// three splits, fits the n-gram evaluator on the train tokens and reports all
// metrics per split. Rows come back in canonical order (mode, V, split).
// Throws ConfigError up front when any vocab size is below the train split's
// base character count.
std::vector<EvalReport> run_sweep(const CorpusSplit& train,
                                  const CorpusSplit& val,
                                  const CorpusSplit& test,
                                  const SweepConfig& cfg,
                                  const MergeLogger& log = {});

// Pairs each significance-gain validation point with the frequency point of
// closest validation TPC; |delta TPC| ties resolve to the smaller frequency
// vocabulary. Throws ConfigError when either mode has no validation rows.
std::vector<MatchedPair> match_compression(
    const std::vector<EvalReport>& reports);

// Writes points.csv, matched.csv and summary.json into out_dir. Columns are
// fixed; floats use shortest round-trip formatting, so identical inputs
// produce byte-identical files. `config_echo` is embedded into summary.json.
void emit_reports(const std::vector<EvalReport>& reports,
                  const std::vector<MatchedPair>& pairs,
                  const std::string& out_dir, const std::string& config_echo);

// Writes a JSON document with the given reports and config echo (the `eval`
// subcommand's output).
void emit_eval_report(const std::vector<EvalReport>& reports,
                      const std::string& path, const std::string& config_echo);

}  // namespace sigbpe
