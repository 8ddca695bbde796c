#include "ofs/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_config.hpp"
#include "ofs/checkpoint.hpp"
#include "ofs/corpus.hpp"
#include "ofs/ensemble.hpp"
#include "ofs/error.hpp"
#include "ofs/feature_store.hpp"
#include "ofs/metrics.hpp"
#include "ofs/naive_bayes.hpp"
#include "ofs/normalizer.hpp"
#include "ofs/trainer.hpp"
#include "ofs/tsv.hpp"

#ifndef OFS_VERSION
#define OFS_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;

namespace ofs::cli {
namespace {

constexpr std::size_t kNormalizeChunk = 1 << 16;

struct TrainFlags {
  std::size_t max_epochs = 50;
  std::size_t batch_size = 32;
  std::size_t patience = 3;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  double val_fraction = 0.1;
  double learning_rate = 1e-3;

  nn::TrainConfig config() const {
    nn::TrainConfig c;
    c.max_epochs = max_epochs;
    c.batch_size = batch_size;
    c.patience = patience;
    c.seed = seed;
    c.decision_threshold = threshold;
    c.adam.learning_rate = learning_rate;
    return c;
  }
};

struct LabelFlags {
  std::string conf_column = "average";
  double conf_threshold = 0.4;
};

struct Options {
  std::string in, out, config, subtask = "A", labels, model, out_model, out_report, pred, gold, train, test, out_pred;
  std::vector<std::string> features, members;
  std::vector<double> weights;
  std::string name;
  TrainFlags train_flags;
  LabelFlags label_flags;
  double threshold = 0.5;
};

void add_train_flags(CLI::App* sub, TrainFlags& t) {
  sub->add_option("--max-epochs", t.max_epochs, "Epoch budget")->capture_default_str();
  sub->add_option("--batch-size", t.batch_size, "Mini-batch size")->capture_default_str();
  sub->add_option("--patience", t.patience, "Epochs without improvement before stopping")->capture_default_str();
  sub->add_option("--seed", t.seed, "Seed for initialization, shuffling, dropout and the split")->capture_default_str();
  sub->add_option("--threshold", t.threshold, "Decision threshold for the positive class")->capture_default_str();
  sub->add_option("--val-fraction", t.val_fraction, "Share of labeled ids held out for early stopping")
      ->capture_default_str();
  sub->add_option("--learning-rate", t.learning_rate, "Adam step size")->capture_default_str();
}

void add_label_flags(CLI::App* sub, LabelFlags& l) {
  sub->add_option("--conf-column", l.conf_column, "Confidence column of score-labeled files")->capture_default_str();
  sub->add_option("--conf-threshold", l.conf_threshold, "Confidence at or above which a tweet counts as OFF")
      ->capture_default_str();
}

std::string canonical_settings(const CLI::App* sub) {
  nlohmann::json options = nlohmann::json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help") continue;
    const auto& results = opt->results();
    if (!results.empty())
      options[opt->get_lnames().front()] = results;
    else
      options[opt->get_lnames().front()] = opt->get_default_str();
  }
  return nlohmann::json{{"command", sub->get_name()}, {"options", options}}.dump();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

class Report {
 public:
  explicit Report(std::string path) : path_(std::move(path)) {}
  std::ostringstream& body() { return body_; }

  void finish(std::ostream& out, const std::string& settings, std::uint64_t seed) {
    const std::string repro = "config_hash=" + hex64(fnv1a(settings)) + "\nseed=" + std::to_string(seed) +
                              "\nversion=" + version_string() + "\n";
    out << body_.str() << repro;
    if (path_.empty()) return;
    std::ofstream file(path_, std::ios::app);
    if (!file || !(file << body_.str() << repro)) throw Error(ErrorCode::Io, "cannot write report " + path_);
  }

 private:
  std::string path_;
  std::ostringstream body_;
};

Subtask subtask_for_classes(std::size_t classes) {
  if (classes == 2) return Subtask::A;
  if (classes == 3) return Subtask::C;
  throw Error(ErrorCode::DimensionMismatch, "probability files must carry 2 or 3 classes");
}

std::vector<ensemble::MemberFile> read_members(const std::vector<std::string>& paths) {
  std::vector<ensemble::MemberFile> members;
  for (const auto& p : paths) members.push_back(ensemble::read_member_file(p));
  return members;
}

std::map<ExampleId, ClassId> label_map(const std::vector<corpus::LabeledExample>& examples) {
  std::map<ExampleId, ClassId> out;
  for (const auto& e : examples)
    if (!out.emplace(e.id, e.label).second)
      throw Error(ErrorCode::DuplicateId, "example " + std::to_string(e.id) + " is labeled twice");
  return out;
}

// ---- normalize -------------------------------------------------------------

void cmd_normalize(const Options& o, Report& report) {
  const text::Normalizer normalizer(text::NormalizerConfig::load(o.config));
  tsv::Reader reader(o.in);
  std::ofstream out(o.out);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + o.out);

  std::string line;
  if (!reader.next(line)) throw Error(ErrorCode::BadHeader, o.in + ": empty file");
  const auto header = tsv::split(line);
  std::ptrdiff_t id_col = -1, text_col = -1;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "id") id_col = static_cast<std::ptrdiff_t>(c);
    if (text_col < 0 && (header[c] == "tweet" || header[c] == "text")) text_col = static_cast<std::ptrdiff_t>(c);
  }
  if (id_col < 0 || text_col < 0) throw Error(ErrorCode::BadHeader, o.in + ": header needs 'id' and 'tweet' or 'text'");
  out << line << '\n';

  std::vector<std::vector<std::string>> rows;
  std::vector<text::Tweet> tweets;
  std::size_t total = 0;
  auto flush = [&] {
    const auto normalized = normalizer.normalize_batch(tweets);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i][text_col] = normalized[i].text;
      for (std::size_t c = 0; c < rows[i].size(); ++c) out << (c ? "\t" : "") << rows[i][c];
      out << '\n';
    }
    total += rows.size();
    rows.clear();
    tweets.clear();
  };
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line);
    if (fields.size() != header.size())
      throw Error(ErrorCode::MalformedRow, o.in + " row " + std::to_string(reader.line_number()) + ": expected " +
                                               std::to_string(header.size()) + " columns");
    tweets.push_back({tsv::parse_id(fields[id_col], reader), std::string(fields[text_col])});
    rows.emplace_back(fields.begin(), fields.end());
    if (rows.size() == kNormalizeChunk) flush();
  }
  flush();
  if (!out) throw Error(ErrorCode::Io, "write failed: " + o.out);
  report.body() << "normalized=" << total << "\n";
}

// ---- weigh -----------------------------------------------------------------

void cmd_weigh(const Options& o, Report& report) {
  const Subtask subtask = parse_subtask(o.subtask);
  const auto examples = corpus::read_labels(o.in, subtask, o.label_flags.conf_column, o.label_flags.conf_threshold);
  const auto weights = corpus::class_weights(examples, subtask);
  const auto names = class_names(subtask);
  auto& b = report.body();
  b << std::setprecision(17);
  for (std::size_t c = 0; c < weights.class_count(); ++c) b << "count." << names[c] << '=' << weights.counts[c] << '\n';
  for (std::size_t c = 0; c < weights.class_count(); ++c) b << "weight." << names[c] << '=' << weights.weights[c] << '\n';
}

// ---- train-head ------------------------------------------------------------

void cmd_train_head(const Options& o, Report& report) {
  const Subtask subtask = parse_subtask(o.subtask);
  std::vector<features::FeatureSet> sets;
  for (const auto& path : o.features) sets.push_back(features::read_features(path));
  const auto aligned = features::align_concat(sets);

  auto examples = corpus::read_labels(o.labels, subtask, o.label_flags.conf_column, o.label_flags.conf_threshold);
  const std::set<ExampleId> available(aligned.ids.begin(), aligned.ids.end());
  const std::size_t labeled = examples.size();
  std::erase_if(examples, [&](const corpus::LabeledExample& e) { return !available.contains(e.id); });
  if (examples.empty()) throw Error(ErrorCode::EmptyIntersection, "no labeled example has features");

  auto [train_part, val_part] =
      corpus::split(std::move(examples), {1.0 - o.train_flags.val_fraction, o.train_flags.seed});
  if (train_part.empty() || val_part.empty())
    throw Error(ErrorCode::Config, "--val-fraction leaves an empty training or validation set");

  auto dataset = [&](const std::vector<corpus::LabeledExample>& part) {
    std::vector<ExampleId> ids;
    nn::Dataset d;
    for (const auto& e : part) {
      ids.push_back(e.id);
      d.y.push_back(e.label);
    }
    d.x = features::select_rows(aligned, ids).matrix;
    return d;
  };
  const nn::Dataset train_data = dataset(train_part);
  const nn::Dataset val_data = dataset(val_part);
  const auto weights = corpus::class_weights(train_part, subtask);

  const auto arch = nn::MlpArchitecture::for_subtask(aligned.dim_total, subtask);
  const auto result = nn::train(arch, train_data, val_data, weights.weights, o.train_flags.config());

  nn::Checkpoint ck{arch, result.params, {}};
  for (std::size_t i = 0; i < aligned.model_names.size(); ++i)
    ck.inputs.push_back({aligned.model_names[i], aligned.dims[i]});
  nn::save_checkpoint(o.out_model, ck);

  auto& b = report.body();
  b << std::setprecision(17);
  b << "feature_dim=" << aligned.dim_total << "\nfeature_ids_dropped=" << aligned.dropped
    << "\nlabels_without_features=" << labeled - train_part.size() - val_part.size() << "\ntrain_examples="
    << train_part.size() << "\nval_examples=" << val_part.size() << '\n';
  for (const auto& r : result.history)
    b << "epoch." << r.epoch << ".train_loss=" << r.train_loss << "\nepoch." << r.epoch << ".val_f1=" << r.val_f1
      << '\n';
  b << "best_epoch=" << result.best_epoch << "\nbest_val_f1=" << result.best_f1 << '\n';
}

// ---- predict ---------------------------------------------------------------

void cmd_predict(const Options& o, Report& report) {
  if (o.features.empty() == o.members.empty())
    throw Error(ErrorCode::Config, "predict needs exactly one of --features and --members");
  const nn::Checkpoint ck = nn::load_checkpoint(o.model);
  ensemble::MemberFile out{o.name.empty() ? fs::path(o.model).stem().string() : o.name, {}, {}};

  if (!o.features.empty()) {
    std::vector<features::FeatureSet> sets;
    for (const auto& path : o.features) sets.push_back(features::read_features(path));
    if (sets.size() != ck.inputs.size())
      throw Error(ErrorCode::MemberOrderMismatch, "model expects " + std::to_string(ck.inputs.size()) + " feature files");
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].model_name() != ck.inputs[i].name)
        throw Error(ErrorCode::MemberOrderMismatch, "feature file " + std::to_string(i + 1) + " is '" +
                                                        sets[i].model_name() + "', model expects '" +
                                                        ck.inputs[i].name + "'");
      if (sets[i].dim() != ck.inputs[i].dim)
        throw Error(ErrorCode::DimensionMismatch, "feature file " + std::to_string(i + 1) + " has dim " +
                                                      std::to_string(sets[i].dim()) + ", model expects " +
                                                      std::to_string(ck.inputs[i].dim));
    }
    const auto aligned = features::align_concat(sets);
    const auto preds = nn::predict(ck.params, ck.arch, aligned, o.threshold);
    out.probs.resize(preds.size(), ck.arch.class_count());
    for (std::size_t r = 0; r < preds.size(); ++r) {
      out.ids.push_back(preds[r].id);
      std::copy(preds[r].probabilities.begin(), preds[r].probabilities.end(), out.probs.row(r).begin());
    }
  } else {
    const auto stacker = ensemble::from_checkpoint(ck);
    const auto members = read_members(o.members);
    const auto probs = ensemble::combine(members);
    out.ids = probs.ids;
    out.probs = ensemble::stack_predict(stacker, probs);
  }
  ensemble::write_member_file(o.out, out);
  report.body() << "predicted=" << out.ids.size() << '\n';
}

// ---- vote ------------------------------------------------------------------

void cmd_vote(const Options& o, Report& report) {
  const auto probs = ensemble::combine(read_members(o.members));
  ensemble::MemberFile out{o.name.empty() ? "soft-vote" : o.name, probs.ids, ensemble::soft_vote(probs, o.weights)};
  ensemble::write_member_file(o.out, out);
  report.body() << "members=" << probs.member_names.size() << "\nvoted=" << out.ids.size() << '\n';
}

// ---- stack -----------------------------------------------------------------

void cmd_stack(const Options& o, Report& report) {
  const auto probs = ensemble::combine(read_members(o.members));
  const Subtask subtask = subtask_for_classes(probs.classes);
  const auto labels = label_map(
      corpus::read_labels(o.labels, subtask, o.label_flags.conf_column, o.label_flags.conf_threshold));

  std::vector<ClassId> y;
  std::vector<corpus::LabeledExample> covered;
  for (ExampleId id : probs.ids) {
    const auto it = labels.find(id);
    if (it == labels.end()) throw Error(ErrorCode::IdMismatch, "no label for example " + std::to_string(id));
    y.push_back(it->second);
    covered.push_back({id, {}, it->second});
  }
  const auto weights = corpus::class_weights(covered, subtask);
  const auto stacker =
      ensemble::train_stacker(probs, y, weights.weights, o.train_flags.config(), o.train_flags.val_fraction);
  nn::save_checkpoint(o.out_model, ensemble::to_checkpoint(stacker));

  auto& b = report.body();
  b << std::setprecision(17) << "members=" << probs.member_names.size() << "\nexamples=" << y.size() << '\n';
  if (!stacker.history.empty()) b << "epochs=" << stacker.history.size() << '\n';
}

// ---- baseline-nb -----------------------------------------------------------

void cmd_baseline_nb(const Options& o, Report& report) {
  const Subtask subtask = parse_subtask(o.subtask);
  const auto train = corpus::read_labels(o.train, subtask, o.label_flags.conf_column, o.label_flags.conf_threshold);
  const auto test = corpus::read_labels(o.test, subtask, o.label_flags.conf_column, o.label_flags.conf_threshold);

  std::vector<std::string> train_text, test_text;
  std::vector<ClassId> train_y, test_y;
  for (const auto& e : train) {
    train_text.push_back(e.text);
    train_y.push_back(e.label);
  }
  for (const auto& e : test) {
    test_text.push_back(e.text);
    test_y.push_back(e.label);
  }
  auto [tfidf, rows] = baseline::tfidf_fit_transform(train_text);
  baseline::NbBundle bundle{subtask, std::move(tfidf), {}};
  bundle.nb = baseline::nb_train(rows, train_y, class_count(subtask), bundle.tfidf.idf.size());
  if (!o.out_model.empty()) baseline::save_nb(o.out_model, bundle);

  const auto preds = baseline::nb_predict(bundle.nb, bundle.tfidf.transform(test_text));
  if (!o.out_pred.empty()) {
    std::vector<corpus::LabeledExample> labeled;
    for (std::size_t i = 0; i < test.size(); ++i) labeled.push_back({test[i].id, {}, preds[i]});
    corpus::write_labels(o.out_pred, labeled, subtask);
  }
  const auto eval = metrics::macro_f1(metrics::confusion(preds, test_y, class_count(subtask)));
  const auto names = class_names(subtask);
  report.body() << "vocabulary=" << bundle.tfidf.idf.size() << '\n' << metrics::format_key_values(eval, names);
}

// ---- evaluate --------------------------------------------------------------

bool is_probability_file(const std::string& path) {
  std::ifstream in(path);
  std::string first;
  return std::getline(in, first) && first.starts_with("#member=");
}

void cmd_evaluate(const Options& o, Report& report, std::ostream& out, bool subtask_given) {
  std::vector<metrics::IdLabel> preds;
  Subtask subtask = subtask_given ? parse_subtask(o.subtask) : Subtask::A;
  if (is_probability_file(o.pred)) {
    const auto member = ensemble::read_member_file(o.pred);
    const Subtask inferred = subtask_for_classes(member.probs.cols());
    if (subtask_given && inferred != subtask)
      throw Error(ErrorCode::DimensionMismatch, o.pred + " does not match subtask " + std::string(to_string(subtask)));
    subtask = inferred;
    for (std::size_t r = 0; r < member.ids.size(); ++r) {
      const auto row = member.probs.row(r);
      const ClassId label = row.size() == 2 ? nn::decide(row.subspan(1), o.threshold) : nn::decide(row);
      preds.emplace_back(member.ids[r], label);
    }
  } else {
    for (const auto& e : corpus::read_labels(o.pred, subtask)) preds.emplace_back(e.id, e.label);
  }
  std::vector<metrics::IdLabel> gold;
  for (const auto& e : corpus::read_labels(o.gold, subtask, o.label_flags.conf_column, o.label_flags.conf_threshold))
    gold.emplace_back(e.id, e.label);

  const auto eval = metrics::macro_f1(metrics::confusion(preds, gold, class_count(subtask)));
  const auto names = class_names(subtask);
  out << metrics::format_table(eval, names);
  report.body() << metrics::format_key_values(eval, names);
}

int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::Config:
      return kConfigError;
    case ErrorCategory::Numeric:
      return kNumericError;
    case ErrorCategory::Data:
      break;
  }
  return kDataError;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string version_string() {
  std::string v = "ofs " OFS_VERSION;
#if defined(__clang__)
  v += "; clang " __clang_version__;
#elif defined(__GNUC__)
  v += "; gcc " __VERSION__;
#endif
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offensive-language classification toolkit", "ofs"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--run-config", "", "JSON run configuration; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  Options o;
  auto* normalize = app.add_subcommand("normalize", "Normalize the text column of a tweet TSV");
  normalize->add_option("--in", o.in, "Input TSV with an id and tweet/text column")->required()->check(CLI::ExistingFile);
  normalize->add_option("--out", o.out, "Output TSV")->required();
  normalize->add_option("--config", o.config, "Normalizer JSON")->required()->check(CLI::ExistingFile);

  auto* weigh = app.add_subcommand("weigh", "Print class counts and loss weights");
  weigh->add_option("--in", o.in, "Labeled file")->required()->check(CLI::ExistingFile);
  weigh->add_option("--subtask", o.subtask, "A or C")->capture_default_str();
  add_label_flags(weigh, o.label_flags);

  auto* train_head = app.add_subcommand("train-head", "Train the dense head on concatenated features");
  train_head->add_option("--features", o.features, "Comma-separated feature files")
      ->required()
      ->delimiter(',')
      ->check(CLI::ExistingFile);
  train_head->add_option("--labels", o.labels, "Labeled file")->required()->check(CLI::ExistingFile);
  train_head->add_option("--subtask", o.subtask, "A or C")->capture_default_str();
  train_head->add_option("--out-model", o.out_model, "Checkpoint to write")->required();
  add_train_flags(train_head, o.train_flags);
  add_label_flags(train_head, o.label_flags);

  auto* predict = app.add_subcommand("predict", "Write class probabilities from a trained head or stacker");
  predict->add_option("--model", o.model, "Checkpoint")->required()->check(CLI::ExistingFile);
  predict->add_option("--features", o.features, "Feature files, in training order")
      ->delimiter(',')
      ->check(CLI::ExistingFile);
  predict->add_option("--members", o.members, "Member probability files, in training order")
      ->delimiter(',')
      ->check(CLI::ExistingFile);
  predict->add_option("--out", o.out, "Probability file")->required();
  predict->add_option("--name", o.name, "Member name written to the output (default: model file stem)");
  predict->add_option("--threshold", o.threshold, "Decision threshold")->capture_default_str();

  auto* vote = app.add_subcommand("vote", "Soft-vote member probabilities");
  vote->add_option("--members", o.members, "Member probability files")
      ->required()
      ->delimiter(',')
      ->check(CLI::ExistingFile);
  vote->add_option("--out", o.out, "Probability file")->required();
  vote->add_option("--weights", o.weights, "Per-member weights")->delimiter(',');
  vote->add_option("--name", o.name, "Member name written to the output")->capture_default_str();

  auto* stack = app.add_subcommand("stack", "Train the logistic-regression stacker");
  stack->add_option("--members", o.members, "Member probability files")
      ->required()
      ->delimiter(',')
      ->check(CLI::ExistingFile);
  stack->add_option("--labels", o.labels, "Labeled file")->required()->check(CLI::ExistingFile);
  stack->add_option("--out-model", o.out_model, "Checkpoint to write")->required();
  add_train_flags(stack, o.train_flags);
  add_label_flags(stack, o.label_flags);

  auto* nb = app.add_subcommand("baseline-nb", "Train and score the tf-idf Naive Bayes baseline");
  nb->add_option("--train", o.train, "Labeled training file with text")->required()->check(CLI::ExistingFile);
  nb->add_option("--test", o.test, "Labeled test file with text")->required()->check(CLI::ExistingFile);
  nb->add_option("--subtask", o.subtask, "A or C")->capture_default_str();
  nb->add_option("--out-model", o.out_model, "Model file to write");
  nb->add_option("--out-pred", o.out_pred, "Predicted labels to write");
  add_label_flags(nb, o.label_flags);

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against gold labels");
  evaluate->add_option("--pred", o.pred, "Probability or label file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--gold", o.gold, "Gold labels")->required()->check(CLI::ExistingFile);
  auto* evaluate_subtask = evaluate->add_option("--subtask", o.subtask, "A or C (default: from the prediction file)");
  evaluate->add_option("--threshold", o.threshold, "Decision threshold for probability files")->capture_default_str();
  add_label_flags(evaluate, o.label_flags);

  for (CLI::App* sub : app.get_subcommands({})) {
    if (sub != normalize && sub != predict && sub != vote && sub != stack)
      sub->add_option("--out-report", o.out_report, "Append the report to this file");
    else
      sub->add_option("--out-report", o.out_report, "Append the run summary to this file");
  }

  std::vector<std::string> argv_storage{"ofs"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string settings = canonical_settings(sub);
  const bool has_seed = sub == train_head || sub == stack;
  Report report(o.out_report);
  try {
    if (sub == normalize) cmd_normalize(o, report);
    else if (sub == weigh) cmd_weigh(o, report);
    else if (sub == train_head) cmd_train_head(o, report);
    else if (sub == predict) cmd_predict(o, report);
    else if (sub == vote) cmd_vote(o, report);
    else if (sub == stack) cmd_stack(o, report);
    else if (sub == nb) cmd_baseline_nb(o, report);
    else cmd_evaluate(o, report, out, evaluate_subtask->count() > 0);
    report.finish(out, settings, has_seed ? o.train_flags.seed : 0);
  } catch (const Error& e) {
    err << "ofs " << sub->get_name() << ": " << e.what() << '\n';
    return exit_code_for(category(e.code()));
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ofs " << sub->get_name() << ": " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

}  // namespace ofs::cli
