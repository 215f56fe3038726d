// sigbpe: train and evaluate BPE tokenizers that pick merges either by raw
// pair frequency or by a significance-gain score (z-statistic cohesion under
// an independence null, weighted by compression gain), plus a tokenizer-
// invariant evaluation pipeline (TPC, BPC) and a matched-compression sweep.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sigbpe/codec.hpp"
#include "sigbpe/corpus.hpp"
#include "sigbpe/errors.hpp"
#include "sigbpe/lm_eval.hpp"
#include "sigbpe/metrics.hpp"
#include "sigbpe/sweep.hpp"
#include "sigbpe/trainer.hpp"
#include "sigbpe/unicode.hpp"
#include "sigbpe/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitConfig = 4;
constexpr int kExitInternal = 5;

void print_error(const std::string& kind, const std::string& message) {
  const nlohmann::json line{{"error", kind}, {"message", message}};
  std::cerr << line.dump() << "\n";
}

sigbpe::MergeLogger make_logger(bool verbose) {
  if (!verbose) return {};
  return [](const sigbpe::MergeEvent& e) {
    const nlohmann::json line{
        {"event", "merge"},       {"rank", e.rank},
        {"left", e.left},         {"right", e.right},
        {"merged", e.merged},     {"count", e.count},
        {"score", e.score},       {"vocab", e.vocab_size},
        {"length", e.sequence_length}};
    std::cerr << line.dump() << "\n";
  };
}

struct PolicyFlags {
  std::string mode = "significance_gain";
  bool use_gain = true;
  double alpha = 0.25;
  double lambda_rare = 0.0;
  std::int64_t c_min = 5;
  double epsilon = 1e-9;

  sigbpe::MergePolicyConfig to_config() const {
    sigbpe::MergePolicyConfig cfg;
    cfg.mode = sigbpe::merge_mode_from_name(mode);
    cfg.use_gain = use_gain;
    cfg.alpha_count = alpha;
    cfg.lambda_rare = lambda_rare;
    cfg.c_min = c_min;
    cfg.epsilon = epsilon;
    return cfg;
  }

  nlohmann::json echo() const {
    return {{"mode", mode},           {"use_gain", use_gain},
            {"alpha_count", alpha},   {"lambda_rare", lambda_rare},
            {"c_min", c_min},         {"epsilon", epsilon}};
  }
};

void add_policy_flags(CLI::App* cmd, PolicyFlags* flags, bool with_mode) {
  if (with_mode) {
    cmd->add_option("--mode", flags->mode,
                    "Merge selection rule: frequency|significance_gain "
                    "(aliases freq|siggain)")
        ->envname("SIGBPE_MODE")
        ->capture_default_str();
  }
  cmd->add_flag("--use-gain,!--no-use-gain", flags->use_gain,
                "Multiply the cohesion score by the pair count")
      ->envname("SIGBPE_USE_GAIN")
      ->capture_default_str();
  cmd->add_option("--alpha", flags->alpha,
                  "Support-tempering exponent on the pair count, in [0,1]")
      ->envname("SIGBPE_ALPHA")
      ->capture_default_str();
  cmd->add_option("--lambda-rare", flags->lambda_rare,
                  "Rare-merge penalty weight (>= 0)")
      ->envname("SIGBPE_LAMBDA_RARE")
      ->capture_default_str();
  cmd->add_option("--c-min", flags->c_min,
                  "Minimum pair count for merge candidates")
      ->envname("SIGBPE_C_MIN")
      ->capture_default_str();
  cmd->add_option("--epsilon", flags->epsilon,
                  "Numerical stability constant in the z denominator")
      ->envname("SIGBPE_EPSILON")
      ->capture_default_str();
}

struct SliceFlags {
  std::uint64_t train_chars = 1000000;
  std::uint64_t val_chars = 200000;
  std::uint64_t test_chars = 200000;
};

void add_slice_flags(CLI::App* cmd, SliceFlags* flags) {
  cmd->add_option("--train-chars", flags->train_chars,
                  "Characters of normalized text for the train split")
      ->envname("SIGBPE_TRAIN_CHARS")
      ->capture_default_str();
  cmd->add_option("--val-chars", flags->val_chars,
                  "Characters for the validation split")
      ->envname("SIGBPE_VAL_CHARS")
      ->capture_default_str();
  cmd->add_option("--test-chars", flags->test_chars,
                  "Characters for the test split")
      ->envname("SIGBPE_TEST_CHARS")
      ->capture_default_str();
}

sigbpe::CorpusSlices load_splits(const std::string& path,
                                 const SliceFlags& slice) {
  const std::string normalized =
      sigbpe::normalize(sigbpe::read_text_file(path));
  return sigbpe::slice(
      normalized,
      sigbpe::SliceSpec{slice.train_chars, slice.val_chars, slice.test_chars});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BPE tokenizer training and evaluation toolkit"};
  app.set_version_flag("--version", sigbpe::kVersion);
  app.set_config("--config", "", "Read defaults from an INI/TOML file");
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 2 usage, 3 I/O or file format, 4 configuration, "
      "5 internal.\n"
      "Every option can also be set via its SIGBPE_* environment variable;\n"
      "flags override the --config file, which overrides built-in defaults.");

  bool verbose = false;
  app.add_flag("--verbose", verbose, "Emit JSON progress lines on stderr")
      ->envname("SIGBPE_VERBOSE");

  // ---- train ----
  auto* train_cmd =
      app.add_subcommand("train", "Train a tokenizer and write a model file");
  train_cmd->fallthrough();
  std::string train_input, train_out;
  std::uint32_t train_vocab = 0;
  std::uint64_t train_chars = 0;
  PolicyFlags train_policy;
  train_cmd->add_option("--input", train_input, "UTF-8 text file")
      ->required()
      ->envname("SIGBPE_INPUT");
  train_cmd->add_option("--out", train_out, "Output model path (.tokmodel.json)")
      ->required()
      ->envname("SIGBPE_OUT");
  train_cmd->add_option("--vocab", train_vocab, "Target vocabulary size")
      ->required()
      ->envname("SIGBPE_VOCAB");
  train_cmd
      ->add_option("--train-chars", train_chars,
                   "Train on the first N normalized characters (0 = all)")
      ->envname("SIGBPE_TRAIN_CHARS")
      ->capture_default_str();
  add_policy_flags(train_cmd, &train_policy, true);

  // ---- encode ----
  auto* encode_cmd =
      app.add_subcommand("encode", "Encode text with a trained model");
  encode_cmd->fallthrough();
  std::string enc_model, enc_input, enc_out;
  bool enc_binary = false, enc_strict = false, enc_normalize = false;
  encode_cmd->add_option("--model", enc_model, "Model file")
      ->required()
      ->envname("SIGBPE_MODEL");
  encode_cmd->add_option("--input", enc_input, "UTF-8 text file")
      ->required()
      ->envname("SIGBPE_INPUT");
  encode_cmd->add_option("--out", enc_out, "Token output path")
      ->required()
      ->envname("SIGBPE_OUT");
  encode_cmd
      ->add_flag("--binary", enc_binary,
                 "Write 32-bit little-endian ids instead of decimal lines")
      ->envname("SIGBPE_BINARY");
  encode_cmd
      ->add_flag("--strict-oov", enc_strict,
                 "Fail on characters outside the base vocabulary")
      ->envname("SIGBPE_STRICT_OOV");
  encode_cmd
      ->add_flag("--normalize", enc_normalize,
                 "Apply whitespace normalization before encoding")
      ->envname("SIGBPE_NORMALIZE");

  // ---- decode ----
  auto* decode_cmd =
      app.add_subcommand("decode", "Decode a token file back to text");
  decode_cmd->fallthrough();
  std::string dec_model, dec_input, dec_out;
  bool dec_binary = false;
  decode_cmd->add_option("--model", dec_model, "Model file")
      ->required()
      ->envname("SIGBPE_MODEL");
  decode_cmd->add_option("--input", dec_input, "Token file")
      ->required()
      ->envname("SIGBPE_INPUT");
  decode_cmd->add_option("--out", dec_out, "Text output path")
      ->required()
      ->envname("SIGBPE_OUT");
  decode_cmd->add_flag("--binary", dec_binary, "Input holds 32-bit LE ids")
      ->envname("SIGBPE_BINARY");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand(
      "eval", "Train one tokenizer and report TPC/BPC metrics per split");
  eval_cmd->fallthrough();
  std::string eval_input, eval_out;
  std::uint32_t eval_vocab = 600;
  SliceFlags eval_slice;
  PolicyFlags eval_policy;
  int eval_lm_order = 3;
  double eval_lm_addk = 0.01;
  eval_cmd->add_option("--input", eval_input, "UTF-8 text file")
      ->required()
      ->envname("SIGBPE_INPUT");
  eval_cmd->add_option("--out", eval_out, "Report output path (JSON)")
      ->required()
      ->envname("SIGBPE_OUT");
  eval_cmd->add_option("--vocab", eval_vocab, "Target vocabulary size")
      ->envname("SIGBPE_VOCAB")
      ->capture_default_str();
  add_slice_flags(eval_cmd, &eval_slice);
  add_policy_flags(eval_cmd, &eval_policy, true);
  eval_cmd->add_option("--lm-order", eval_lm_order, "n-gram evaluator order")
      ->envname("SIGBPE_LM_ORDER")
      ->capture_default_str();
  eval_cmd->add_option("--lm-addk", eval_lm_addk, "n-gram add-k constant")
      ->envname("SIGBPE_LM_ADDK")
      ->capture_default_str();

  // ---- sweep ----
  auto* sweep_cmd = app.add_subcommand(
      "sweep",
      "Vocabulary-size sweep over both modes with matched-compression report");
  sweep_cmd->fallthrough();
  std::string sweep_input, sweep_out_dir;
  std::vector<std::uint32_t> sweep_sizes{300, 400, 600, 800, 1200};
  SliceFlags sweep_slice;
  PolicyFlags sweep_policy;  // significance-gain scoring knobs + shared c_min
  int sweep_lm_order = 3;
  double sweep_lm_addk = 0.01;
  sweep_cmd->add_option("--input", sweep_input, "UTF-8 text file")
      ->required()
      ->envname("SIGBPE_INPUT");
  sweep_cmd->add_option("--out-dir", sweep_out_dir, "Output directory")
      ->required()
      ->envname("SIGBPE_OUT_DIR");
  sweep_cmd
      ->add_option("--vocab-sizes", sweep_sizes,
                   "Strictly increasing vocabulary grid")
      ->delimiter(',')
      ->envname("SIGBPE_VOCAB_SIZES")
      ->capture_default_str();
  add_slice_flags(sweep_cmd, &sweep_slice);
  add_policy_flags(sweep_cmd, &sweep_policy, false);
  sweep_cmd->add_option("--lm-order", sweep_lm_order, "n-gram evaluator order")
      ->envname("SIGBPE_LM_ORDER")
      ->capture_default_str();
  sweep_cmd->add_option("--lm-addk", sweep_lm_addk, "n-gram add-k constant")
      ->envname("SIGBPE_LM_ADDK")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  }

  const sigbpe::MergeLogger logger = make_logger(verbose);

  try {
    if (app.got_subcommand(train_cmd)) {
      std::string text = sigbpe::normalize(sigbpe::read_text_file(train_input));
      if (train_chars > 0) {
        text = sigbpe::slice(text, sigbpe::SliceSpec{train_chars, 0, 0})
                   .train.text;
      }
      const sigbpe::TokenizerModel model = sigbpe::train_incremental(
          text, train_policy.to_config(), train_vocab, logger);
      sigbpe::save_model(model, train_out);
    } else if (app.got_subcommand(encode_cmd)) {
      const sigbpe::TokenizerModel model = sigbpe::load_model(enc_model);
      std::string text = sigbpe::read_text_file(enc_input);
      if (enc_normalize) text = sigbpe::normalize(text);
      sigbpe::utf8_validate(text);
      const sigbpe::TokenIds tokens =
          sigbpe::encode(model, text, sigbpe::EncodeOptions{enc_strict});
      sigbpe::write_tokens(tokens, enc_out, enc_binary);
    } else if (app.got_subcommand(decode_cmd)) {
      const sigbpe::TokenizerModel model = sigbpe::load_model(dec_model);
      const sigbpe::TokenIds tokens = sigbpe::read_tokens(dec_input, dec_binary);
      const std::string text = sigbpe::decode(model, tokens);
      std::ofstream out(dec_out, std::ios::binary);
      if (!out) throw sigbpe::IoError("cannot open for writing: " + dec_out);
      out << text;
      if (!out) throw sigbpe::IoError("write failure: " + dec_out);
    } else if (app.got_subcommand(eval_cmd)) {
      const sigbpe::CorpusSlices splits = load_splits(eval_input, eval_slice);
      const auto reports = sigbpe::evaluate_point(
          splits.train, splits.val, splits.test, eval_policy.to_config(),
          eval_vocab, eval_lm_order, eval_lm_addk, logger);
      nlohmann::json echo = eval_policy.echo();
      echo["vocab"] = eval_vocab;
      echo["train_chars"] = eval_slice.train_chars;
      echo["val_chars"] = eval_slice.val_chars;
      echo["test_chars"] = eval_slice.test_chars;
      echo["lm_order"] = eval_lm_order;
      echo["lm_addk"] = eval_lm_addk;
      sigbpe::emit_eval_report(reports, eval_out, echo.dump());
    } else if (app.got_subcommand(sweep_cmd)) {
      const sigbpe::CorpusSlices splits = load_splits(sweep_input, sweep_slice);
      sigbpe::SweepConfig cfg;
      cfg.vocab_sizes = sweep_sizes;
      cfg.lm_order = sweep_lm_order;
      cfg.lm_addk = sweep_lm_addk;
      cfg.significance_gain.use_gain = sweep_policy.use_gain;
      cfg.significance_gain.alpha_count = sweep_policy.alpha;
      cfg.significance_gain.lambda_rare = sweep_policy.lambda_rare;
      cfg.significance_gain.c_min = sweep_policy.c_min;
      cfg.significance_gain.epsilon = sweep_policy.epsilon;
      cfg.frequency.c_min = sweep_policy.c_min;
      cfg.frequency.epsilon = sweep_policy.epsilon;

      const auto reports =
          sigbpe::run_sweep(splits.train, splits.val, splits.test, cfg, logger);
      const auto pairs = sigbpe::match_compression(reports);

      nlohmann::json echo = sweep_policy.echo();
      echo.erase("mode");
      echo["vocab_sizes"] = sweep_sizes;
      echo["train_chars"] = sweep_slice.train_chars;
      echo["val_chars"] = sweep_slice.val_chars;
      echo["test_chars"] = sweep_slice.test_chars;
      echo["lm_order"] = sweep_lm_order;
      echo["lm_addk"] = sweep_lm_addk;
      sigbpe::emit_reports(reports, pairs, sweep_out_dir, echo.dump());
    }
  } catch (const sigbpe::Utf8Error& e) {
    print_error("decode", e.what());
    return kExitIo;
  } catch (const sigbpe::ModelVersionError& e) {
    print_error("model_version", e.what());
    return kExitIo;
  } catch (const sigbpe::ModelChecksumError& e) {
    print_error("model_checksum", e.what());
    return kExitIo;
  } catch (const sigbpe::ModelFormatError& e) {
    print_error("model_format", e.what());
    return kExitIo;
  } catch (const sigbpe::OovError& e) {
    print_error("oov", e.what());
    return kExitIo;
  } catch (const sigbpe::IoError& e) {
    print_error("io", e.what());
    return kExitIo;
  } catch (const sigbpe::ConfigError& e) {
    print_error("config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitInternal;
  }
  return kExitOk;
}
