#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ofs/checkpoint.hpp"
#include "ofs/matrix.hpp"
#include "ofs/trainer.hpp"
#include "ofs/types.hpp"

namespace ofs::ensemble {

/// One member's probability vectors, as stored in an exchange file.
struct MemberFile {
  std::string name;
  std::vector<ExampleId> ids;
  Matrix probs;  // ids.size() x classes
};

/// Probability exchange TSV: "#member=<name>" then "id<TAB>p0<TAB>p1[<TAB>p2]".
MemberFile read_member_file(const std::filesystem::path& path);
void write_member_file(const std::filesystem::path& path, const MemberFile& member);

/// Several members' predictions over the same ids (sorted ascending).
struct MemberProbabilities {
  std::vector<std::string> member_names;
  std::vector<ExampleId> ids;
  std::size_t classes = 0;
  std::vector<Matrix> probs;  // per member, ids.size() x classes

  /// Throws IdMismatch/DimensionMismatch on inconsistent shapes and
  /// NonFiniteValue when a vector does not sum to 1 within 1e-6.
  void validate() const;
};

/// Rows are re-ordered by id. Throws IdMismatch unless all members cover the same ids.
MemberProbabilities combine(std::span<const MemberFile> members);

/// Weighted mean of member probability vectors; `member_weights` empty means
/// uniform, otherwise one positive weight per member (normalized internally).
Matrix soft_vote(const MemberProbabilities& probs, std::span<const double> member_weights = {});

/// Logistic-regression meta-model over concatenated member probability vectors.
struct StackerParams {
  std::vector<std::string> member_names;
  nn::MlpArchitecture arch;
  nn::MlpParams params;
  bool trained = false;
  std::vector<nn::EpochRecord> history;
};

/// Concatenated member probabilities, ids.size() x (members * classes).
Matrix stacker_inputs(const MemberProbabilities& probs);

/// `labels` are aligned with probs.ids. Early stopping uses a seeded
/// `validation_fraction` hold-out (the training rows themselves when the
/// hold-out would be empty).
StackerParams train_stacker(const MemberProbabilities& probs, std::span<const ClassId> labels,
                            std::span<const double> class_weights, const nn::TrainConfig& config,
                            double validation_fraction = 0.1);

/// Per-id probability vectors. Throws MemberOrderMismatch unless the member
/// names match the training order.
Matrix stack_predict(const StackerParams& stacker, const MemberProbabilities& probs);

nn::Checkpoint to_checkpoint(const StackerParams& stacker);
StackerParams from_checkpoint(const nn::Checkpoint& checkpoint);

}  // namespace ofs::ensemble
