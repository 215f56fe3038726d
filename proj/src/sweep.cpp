#include "sigbpe/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <set>

#include "sigbpe/codec.hpp"
#include "sigbpe/errors.hpp"
#include "sigbpe/lm_eval.hpp"
#include "sigbpe/metrics.hpp"
#include "sigbpe/unicode.hpp"
#include "sigbpe/version.hpp"

namespace sigbpe {

namespace {

// Shortest representation that parses back to the identical double.
std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::uint64_t distinct_chars(const std::string& text) {
  const auto chars = utf8_chars(text);
  return std::set<std::string>(chars.begin(), chars.end()).size();
}

}  // namespace

std::vector<EvalReport> evaluate_point(const CorpusSplit& train,
                                       const CorpusSplit& val,
                                       const CorpusSplit& test,
                                       const MergePolicyConfig& policy,
                                       std::uint32_t target_vocab, int lm_order,
                                       double lm_addk, const MergeLogger& log) {
  const TokenizerModel model =
      train_incremental(train.text, policy, target_vocab, log);

  const CorpusSplit* splits[3] = {&train, &val, &test};
  TokenIds tokens[3];
  for (int s = 0; s < 3; ++s) tokens[s] = encode(model, splits[s]->text);

  const NgramModel lm = NgramModel::fit(tokens[0], lm_order, lm_addk);

  std::vector<EvalReport> reports;
  for (int s = 0; s < 3; ++s) {
    const TokenizerMetrics tm = tokenizer_metrics(
        tokens[s], splits[s]->char_count, model.vocab_size());
    const LmMetrics lmm = lm_metrics(lm.nll_per_token(tokens[s]), tm.tpc);

    EvalReport r;
    r.mode = merge_mode_name(policy.mode);
    r.vocab_target = target_vocab;
    r.vocab_achieved = model.meta.model_vocab;
    r.merge_count = model.meta.merge_count;
    r.split = splits[s]->name;
    r.token_count = tm.token_count;
    r.char_count = tm.char_count;
    r.tpc = tm.tpc;
    r.vocab_used = tm.vocab_used;
    r.oov_count = tm.oov_count;
    r.nll_per_token = lmm.nll_per_token;
    r.ppl = lmm.ppl;
    r.nll_per_char = lmm.nll_per_char;
    r.bpc = lmm.bpc;
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<EvalReport> run_sweep(const CorpusSplit& train,
                                  const CorpusSplit& val,
                                  const CorpusSplit& test,
                                  const SweepConfig& cfg,
                                  const MergeLogger& log) {
  if (cfg.vocab_sizes.empty()) throw ConfigError("vocab_sizes is empty");
  if (!std::is_sorted(cfg.vocab_sizes.begin(), cfg.vocab_sizes.end()) ||
      std::adjacent_find(cfg.vocab_sizes.begin(), cfg.vocab_sizes.end()) !=
          cfg.vocab_sizes.end()) {
    throw ConfigError("vocab_sizes must be strictly increasing");
  }
  if (cfg.frequency.mode != MergeMode::kFrequency ||
      cfg.significance_gain.mode != MergeMode::kSignificanceGain) {
    throw ConfigError("sweep policy configs have mismatched modes");
  }

  // Fail before any training if a grid point is below the base vocabulary.
  const std::uint64_t base_chars = distinct_chars(train.text);
  for (const std::uint32_t v : cfg.vocab_sizes) {
    if (v < base_chars) {
      throw ConfigError("vocab size " + std::to_string(v) +
                        " is below the base character vocabulary (" +
                        std::to_string(base_chars) + ")");
    }
  }

  std::vector<EvalReport> reports;
  for (const MergePolicyConfig* policy :
       {&cfg.frequency, &cfg.significance_gain}) {
    for (const std::uint32_t target : cfg.vocab_sizes) {
      auto point = evaluate_point(train, val, test, *policy, target,
                                  cfg.lm_order, cfg.lm_addk, log);
      for (auto& r : point) reports.push_back(std::move(r));
    }
  }
  return reports;
}

std::vector<MatchedPair> match_compression(
    const std::vector<EvalReport>& reports) {
  std::vector<const EvalReport*> sig, freq;
  for (const EvalReport& r : reports) {
    if (r.split != "val") continue;
    if (r.mode == merge_mode_name(MergeMode::kSignificanceGain)) {
      sig.push_back(&r);
    } else if (r.mode == merge_mode_name(MergeMode::kFrequency)) {
      freq.push_back(&r);
    }
  }
  if (sig.empty() || freq.empty()) {
    throw ConfigError("match_compression needs validation rows for both modes");
  }

  const auto by_vocab = [](const EvalReport* a, const EvalReport* b) {
    return a->vocab_target < b->vocab_target;
  };
  std::sort(sig.begin(), sig.end(), by_vocab);
  std::sort(freq.begin(), freq.end(), by_vocab);

  std::vector<MatchedPair> pairs;
  for (const EvalReport* s : sig) {
    const EvalReport* best = freq.front();
    for (const EvalReport* f : freq) {
      // Strictly-closer wins; ties keep the smaller frequency vocabulary,
      // which comes first in the sorted scan.
      if (std::fabs(f->tpc - s->tpc) < std::fabs(best->tpc - s->tpc)) best = f;
    }
    MatchedPair p;
    p.v_siggain = s->vocab_target;
    p.tpc_sig = s->tpc;
    p.bpc_sig = s->bpc;
    p.v_freq_matched = best->vocab_target;
    p.tpc_freq = best->tpc;
    p.bpc_freq = best->bpc;
    p.delta_bpc = best->bpc - s->bpc;
    pairs.push_back(p);
  }
  return pairs;
}

void emit_reports(const std::vector<EvalReport>& reports,
                  const std::vector<MatchedPair>& pairs,
                  const std::string& out_dir, const std::string& config_echo) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory: " + out_dir);

  const auto open = [](const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
  };

  // Canonical row order regardless of how reports were produced.
  const auto split_rank = [](const std::string& s) {
    return s == "train" ? 0 : s == "val" ? 1 : 2;
  };
  std::vector<const EvalReport*> ordered;
  for (const EvalReport& r : reports) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [&](const EvalReport* a, const EvalReport* b) {
              if (a->mode != b->mode) return a->mode < b->mode;
              if (a->vocab_target != b->vocab_target) {
                return a->vocab_target < b->vocab_target;
              }
              return split_rank(a->split) < split_rank(b->split);
            });

  const std::string points_path = out_dir + "/points.csv";
  {
    auto out = open(points_path);
    out << "mode,vocab_target,vocab_achieved,merges,split,token_count,"
           "char_count,tpc,vocab_used,oov_count,nll_per_token,ppl,"
           "nll_per_char,bpc\n";
    for (const EvalReport* r : ordered) {
      out << r->mode << ',' << r->vocab_target << ',' << r->vocab_achieved
          << ',' << r->merge_count << ',' << r->split << ',' << r->token_count
          << ',' << r->char_count << ',' << format_double(r->tpc) << ','
          << format_double(r->vocab_used) << ',' << r->oov_count << ','
          << format_double(r->nll_per_token) << ',' << format_double(r->ppl)
          << ',' << format_double(r->nll_per_char) << ','
          << format_double(r->bpc) << '\n';
    }
    if (!out) throw IoError("write failure: " + points_path);
  }

  const std::string matched_path = out_dir + "/matched.csv";
  {
    auto out = open(matched_path);
    out << "v_siggain,tpc_sig,bpc_sig,v_freq_matched,tpc_freq,delta_bpc\n";
    for (const MatchedPair& p : pairs) {
      out << p.v_siggain << ',' << format_double(p.tpc_sig) << ','
          << format_double(p.bpc_sig) << ',' << p.v_freq_matched << ','
          << format_double(p.tpc_freq) << ',' << format_double(p.delta_bpc)
          << '\n';
    }
    if (!out) throw IoError("write failure: " + matched_path);
  }

  const std::string summary_path = out_dir + "/summary.json";
  {
    nlohmann::json config = nlohmann::json::object();
    if (!config_echo.empty()) config = nlohmann::json::parse(config_echo);
    nlohmann::json summary{
        {"config", config},
        {"environment",
         {{"toolkit", "sigbpe"},
          {"toolkit_version", kVersion},
          {"compiler", kCompiler}}},
        {"points", reports.size()},
        {"matched_pairs", pairs.size()}};
    auto out = open(summary_path);
    out << summary.dump(2) << '\n';
    if (!out) throw IoError("write failure: " + summary_path);
  }
}

void emit_eval_report(const std::vector<EvalReport>& reports,
                      const std::string& path, const std::string& config_echo) {
  nlohmann::json rows = nlohmann::json::array();
  for (const EvalReport& r : reports) {
    rows.push_back({{"mode", r.mode},
                    {"vocab_target", r.vocab_target},
                    {"vocab_achieved", r.vocab_achieved},
                    {"merges", r.merge_count},
                    {"split", r.split},
                    {"token_count", r.token_count},
                    {"char_count", r.char_count},
                    {"tpc", r.tpc},
                    {"vocab_used", r.vocab_used},
                    {"oov_count", r.oov_count},
                    {"nll_per_token", r.nll_per_token},
                    {"ppl", r.ppl},
                    {"nll_per_char", r.nll_per_char},
                    {"bpc", r.bpc}});
  }
  nlohmann::json config = nlohmann::json::object();
  if (!config_echo.empty()) config = nlohmann::json::parse(config_echo);
  const nlohmann::json doc{{"config", config}, {"reports", rows}};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace sigbpe
