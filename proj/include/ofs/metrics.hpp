#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofs/types.hpp"

namespace ofs::metrics {

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes = 0) : classes_(classes), counts_(classes * classes, 0) {}

  std::size_t classes() const noexcept { return classes_; }
  std::size_t& at(ClassId gold, ClassId pred) { return counts_.at(index(gold, pred)); }
  std::size_t at(ClassId gold, ClassId pred) const { return counts_.at(index(gold, pred)); }
  std::size_t total() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t index(ClassId gold, ClassId pred) const {
    return static_cast<std::size_t>(gold) * classes_ + static_cast<std::size_t>(pred);
  }

  std::size_t classes_;
  std::vector<std::size_t> counts_;
};

using IdLabel = std::pair<ExampleId, ClassId>;

/// Pairs predictions with gold labels by id. Throws IdMismatch listing
/// missing and extra ids.
ConfusionMatrix confusion(std::span<const IdLabel> preds, std::span<const IdLabel> gold, std::size_t classes);

/// Position-aligned variant.
ConfusionMatrix confusion(std::span<const ClassId> preds, std::span<const ClassId> gold, std::size_t classes);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  ConfusionMatrix confusion;
  std::vector<ClassScores> per_class;
  double macro_f1 = 0.0;
};

/// Zero denominators give zero scores; every class counts toward the mean,
/// including classes with no gold or predicted examples.
EvalReport macro_f1(const ConfusionMatrix& m);

/// Convenience: macro F1 of aligned label vectors.
double macro_f1_score(std::span<const ClassId> preds, std::span<const ClassId> gold, std::size_t classes);

std::string format_table(const EvalReport& report, std::span<const std::string_view> class_names);

/// "key=value" lines: macro_f1, then precision/recall/f1/support per class.
std::string format_key_values(const EvalReport& report, std::span<const std::string_view> class_names);

}  // namespace ofs::metrics
