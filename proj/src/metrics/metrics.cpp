#include "ofs/metrics.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "ofs/error.hpp"

namespace ofs::metrics {
namespace {

void check_label(ClassId c, std::size_t classes) {
  if (c < 0 || static_cast<std::size_t>(c) >= classes)
    throw Error(ErrorCode::UnknownLabel, "class index " + std::to_string(c) + " out of range");
}

std::string id_list(const std::vector<ExampleId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size() && i < 10; ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
  if (ids.size() > 10) s += ", ... (" + std::to_string(ids.size()) + " total)";
  return s;
}

}  // namespace

std::size_t ConfusionMatrix::total() const { return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0}); }

ConfusionMatrix confusion(std::span<const IdLabel> preds, std::span<const IdLabel> gold, std::size_t classes) {
  std::unordered_map<ExampleId, ClassId> predicted;
  for (const auto& [id, label] : preds) {
    check_label(label, classes);
    if (!predicted.emplace(id, label).second)
      throw Error(ErrorCode::DuplicateId, "prediction for example " + std::to_string(id) + " given twice");
  }

  ConfusionMatrix m(classes);
  std::vector<ExampleId> missing;
  std::unordered_map<ExampleId, bool> gold_ids;
  for (const auto& [id, label] : gold) {
    check_label(label, classes);
    if (!gold_ids.emplace(id, true).second)
      throw Error(ErrorCode::DuplicateId, "gold label for example " + std::to_string(id) + " given twice");
    auto it = predicted.find(id);
    if (it == predicted.end()) {
      missing.push_back(id);
      continue;
    }
    ++m.at(label, it->second);
  }
  std::vector<ExampleId> extra;
  for (const auto& [id, label] : preds)
    if (!gold_ids.contains(id)) extra.push_back(id);
  if (!missing.empty() || !extra.empty())
    throw Error(ErrorCode::IdMismatch, "missing predictions for [" + id_list(missing) + "]; predictions without gold for [" +
                                           id_list(extra) + "]");
  return m;
}

ConfusionMatrix confusion(std::span<const ClassId> preds, std::span<const ClassId> gold, std::size_t classes) {
  if (preds.size() != gold.size()) throw Error(ErrorCode::IdMismatch, "prediction and gold lengths differ");
  ConfusionMatrix m(classes);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    check_label(preds[i], classes);
    check_label(gold[i], classes);
    ++m.at(gold[i], preds[i]);
  }
  return m;
}

EvalReport macro_f1(const ConfusionMatrix& m) {
  const auto k = static_cast<ClassId>(m.classes());
  EvalReport report{m, std::vector<ClassScores>(m.classes()), 0.0};
  double f1_sum = 0.0;
  for (ClassId c = 0; c < k; ++c) {
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (ClassId o = 0; o < k; ++o) {
      predicted += m.at(o, c);
      actual += m.at(c, o);
    }
    const auto tp = static_cast<double>(m.at(c, c));
    ClassScores& s = report.per_class[static_cast<std::size_t>(c)];
    s.support = actual;
    s.precision = predicted ? tp / static_cast<double>(predicted) : 0.0;
    s.recall = actual ? tp / static_cast<double>(actual) : 0.0;
    s.f1 = (s.precision + s.recall) > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
    f1_sum += s.f1;
  }
  report.macro_f1 = k > 0 ? f1_sum / static_cast<double>(k) : 0.0;
  return report;
}

double macro_f1_score(std::span<const ClassId> preds, std::span<const ClassId> gold, std::size_t classes) {
  return macro_f1(confusion(preds, gold, classes)).macro_f1;
}

std::string format_table(const EvalReport& report, std::span<const std::string_view> class_names) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "class      precision  recall     f1         support\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& s = report.per_class[c];
    out << std::left << std::setw(11) << class_names[c] << std::setw(11) << s.precision << std::setw(11) << s.recall
        << std::setw(11) << s.f1 << s.support << '\n';
  }
  out << "macro F1   " << report.macro_f1 << "\n\nconfusion (rows = gold, columns = predicted)\n";
  out << std::setw(6) << "";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) out << std::right << std::setw(8) << class_names[c];
  out << '\n';
  for (std::size_t g = 0; g < report.per_class.size(); ++g) {
    out << std::left << std::setw(6) << class_names[g];
    for (std::size_t p = 0; p < report.per_class.size(); ++p)
      out << std::right << std::setw(8) << report.confusion.at(static_cast<ClassId>(g), static_cast<ClassId>(p));
    out << '\n';
  }
  return out.str();
}

std::string format_key_values(const EvalReport& report, std::span<const std::string_view> class_names) {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "macro_f1=" << report.macro_f1 << '\n';
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto& s = report.per_class[c];
    out << "precision." << class_names[c] << '=' << s.precision << '\n'
        << "recall." << class_names[c] << '=' << s.recall << '\n'
        << "f1." << class_names[c] << '=' << s.f1 << '\n'
        << "support." << class_names[c] << '=' << s.support << '\n';
  }
  return out.str();
}

}  // namespace ofs::metrics
