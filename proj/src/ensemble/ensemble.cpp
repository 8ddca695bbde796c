#include "ofs/ensemble.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>

#include "ofs/error.hpp"
#include "ofs/random.hpp"
#include "ofs/tsv.hpp"

namespace ofs::ensemble {
namespace {

constexpr double kSumTolerance = 1e-6;
constexpr std::string_view kMemberPrefix = "#member=";

}  // namespace

MemberFile read_member_file(const std::filesystem::path& path) {
  tsv::Reader reader(path);
  std::string line;
  if (!reader.next(line) || !line.starts_with(kMemberPrefix))
    throw Error(ErrorCode::BadHeader, path.string() + ": first line must be '#member=<name>'");
  MemberFile member;
  member.name = line.substr(kMemberPrefix.size());

  std::vector<double> values;
  std::size_t classes = 0;
  while (reader.next(line)) {
    if (line.empty()) continue;
    const auto fields = tsv::split(line);
    if (fields.size() < 3 || fields.size() > 4 || (classes && fields.size() - 1 != classes))
      throw Error(ErrorCode::MalformedRow, path.string() + " row " + std::to_string(reader.line_number()) +
                                               ": expected id and 2 or 3 probabilities");
    classes = fields.size() - 1;
    member.ids.push_back(tsv::parse_id(fields[0], reader));
    for (std::size_t k = 1; k < fields.size(); ++k) values.push_back(tsv::parse_real(fields[k], reader));
  }
  member.probs.resize(member.ids.size(), classes);
  std::copy(values.begin(), values.end(), member.probs.values().begin());
  return member;
}

void write_member_file(const std::filesystem::path& path, const MemberFile& member) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << kMemberPrefix << member.name << '\n' << std::setprecision(17);
  for (std::size_t r = 0; r < member.ids.size(); ++r) {
    out << member.ids[r];
    for (double p : member.probs.row(r)) out << '\t' << p;
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

void MemberProbabilities::validate() const {
  if (member_names.empty() || probs.size() != member_names.size())
    throw Error(ErrorCode::DimensionMismatch, "need at least one member and one probability table per member");
  for (std::size_t m = 0; m < probs.size(); ++m) {
    if (probs[m].rows() != ids.size())
      throw Error(ErrorCode::IdMismatch, "member " + member_names[m] + " does not cover the shared ids");
    if (probs[m].cols() != classes)
      throw Error(ErrorCode::DimensionMismatch, "member " + member_names[m] + " has the wrong class count");
    for (std::size_t r = 0; r < ids.size(); ++r) {
      const auto row = probs[m].row(r);
      const double sum = std::accumulate(row.begin(), row.end(), 0.0);
      if (!std::isfinite(sum) || std::abs(sum - 1.0) > kSumTolerance)
        throw Error(ErrorCode::NonFiniteValue, "member " + member_names[m] + ", example " + std::to_string(ids[r]) +
                                                   ": probabilities do not sum to 1");
    }
  }
}

MemberProbabilities combine(std::span<const MemberFile> members) {
  if (members.empty()) throw Error(ErrorCode::Config, "no ensemble members given");
  MemberProbabilities out;
  out.classes = members.front().probs.cols();

  std::map<ExampleId, std::size_t> first_rows;
  for (std::size_t r = 0; r < members.front().ids.size(); ++r)
    if (!first_rows.emplace(members.front().ids[r], r).second)
      throw Error(ErrorCode::DuplicateId, members.front().name + " lists example " +
                                              std::to_string(members.front().ids[r]) + " twice");
  for (const auto& [id, row] : first_rows) out.ids.push_back(id);

  for (const MemberFile& member : members) {
    std::map<ExampleId, std::size_t> rows;
    for (std::size_t r = 0; r < member.ids.size(); ++r)
      if (!rows.emplace(member.ids[r], r).second)
        throw Error(ErrorCode::DuplicateId, member.name + " lists example " + std::to_string(member.ids[r]) + " twice");
    if (rows.size() != first_rows.size() ||
        !std::equal(rows.begin(), rows.end(), first_rows.begin(), [](const auto& a, const auto& b) { return a.first == b.first; }))
      throw Error(ErrorCode::IdMismatch, member.name + " and " + members.front().name + " cover different ids");
    if (member.probs.cols() != out.classes)
      throw Error(ErrorCode::DimensionMismatch, member.name + " has a different class count");

    Matrix sorted(out.ids.size(), out.classes);
    for (std::size_t r = 0; r < out.ids.size(); ++r) {
      const auto src = member.probs.row(rows.at(out.ids[r]));
      std::copy(src.begin(), src.end(), sorted.row(r).begin());
    }
    out.member_names.push_back(member.name);
    out.probs.push_back(std::move(sorted));
  }
  out.validate();
  return out;
}

Matrix soft_vote(const MemberProbabilities& probs, std::span<const double> member_weights) {
  probs.validate();
  const std::size_t members = probs.probs.size();
  std::vector<double> weights(members, 1.0);
  if (!member_weights.empty()) {
    if (member_weights.size() != members)
      throw Error(ErrorCode::Config, "expected " + std::to_string(members) + " member weights");
    for (double w : member_weights)
      if (!(w > 0.0 && std::isfinite(w))) throw Error(ErrorCode::Config, "member weights must be positive");
    weights.assign(member_weights.begin(), member_weights.end());
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

  Matrix out(probs.ids.size(), probs.classes);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t k = 0; k < probs.classes; ++k) {
      // Offsets from the first member, so agreeing members reproduce it exactly.
      const double base = probs.probs[0](r, k);
      double acc = 0.0;
      for (std::size_t m = 1; m < members; ++m) acc += weights[m] * (probs.probs[m](r, k) - base);
      out(r, k) = base + acc / total;
    }
  }
  return out;
}

Matrix stacker_inputs(const MemberProbabilities& probs) {
  const std::size_t members = probs.probs.size();
  Matrix x(probs.ids.size(), members * probs.classes);
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t m = 0; m < members; ++m)
      for (std::size_t k = 0; k < probs.classes; ++k) x(r, m * probs.classes + k) = probs.probs[m](r, k);
  return x;
}

StackerParams train_stacker(const MemberProbabilities& probs, std::span<const ClassId> labels,
                            std::span<const double> class_weights, const nn::TrainConfig& config,
                            double validation_fraction) {
  probs.validate();
  config.validate();
  if (labels.size() != probs.ids.size()) throw Error(ErrorCode::IdMismatch, "labels must cover every example");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
    throw Error(ErrorCode::Config, "validation fraction must lie in [0, 1)");

  StackerParams stacker;
  stacker.member_names = probs.member_names;
  stacker.arch.input_dim = probs.probs.size() * probs.classes;
  stacker.arch.hidden.clear();
  stacker.arch.output_dim = probs.classes == 2 ? 1 : probs.classes;
  stacker.arch.dropout_rate = 0.0;

  const Matrix x = stacker_inputs(probs);
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng::derive(config.seed, 0x5EED).shuffle(std::span(order));
  const auto n_val = static_cast<std::size_t>(std::floor(static_cast<double>(order.size()) * validation_fraction));

  auto subset = [&](std::span<const std::size_t> rows) {
    nn::Dataset d{Matrix(rows.size(), x.cols()), {}};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::copy(x.row(rows[i]).begin(), x.row(rows[i]).end(), d.x.row(i).begin());
      d.y.push_back(labels[rows[i]]);
    }
    return d;
  };
  const nn::Dataset train_set = subset(std::span(order).subspan(n_val));
  const nn::Dataset val_set = n_val > 0 ? subset(std::span(order).first(n_val)) : train_set;

  nn::TrainResult result = nn::train(stacker.arch, train_set, val_set, class_weights, config);
  stacker.params = std::move(result.params);
  stacker.history = std::move(result.history);
  stacker.trained = true;
  return stacker;
}

Matrix stack_predict(const StackerParams& stacker, const MemberProbabilities& probs) {
  if (!stacker.trained) throw Error(ErrorCode::Config, "stacker has not been trained");
  probs.validate();
  if (probs.member_names != stacker.member_names) {
    std::string expected;
    for (const auto& n : stacker.member_names) expected += (expected.empty() ? "" : ",") + n;
    throw Error(ErrorCode::MemberOrderMismatch, "members must be given in training order: " + expected);
  }
  const Matrix outputs = nn::predict_outputs(stacker.params, stacker.arch, stacker_inputs(probs));
  Matrix out(outputs.rows(), stacker.arch.class_count());
  for (std::size_t r = 0; r < outputs.rows(); ++r) {
    const auto p = nn::class_probabilities(outputs.row(r));
    std::copy(p.begin(), p.end(), out.row(r).begin());
  }
  return out;
}

nn::Checkpoint to_checkpoint(const StackerParams& stacker) {
  nn::Checkpoint ck{stacker.arch, stacker.params, {}};
  const std::size_t per_member = stacker.arch.input_dim / std::max<std::size_t>(1, stacker.member_names.size());
  for (const auto& name : stacker.member_names) ck.inputs.push_back({name, per_member});
  return ck;
}

StackerParams from_checkpoint(const nn::Checkpoint& checkpoint) {
  if (!checkpoint.arch.hidden.empty()) throw Error(ErrorCode::BadHeader, "checkpoint is not a single-layer stacker");
  StackerParams stacker;
  for (const auto& block : checkpoint.inputs) stacker.member_names.push_back(block.name);
  stacker.arch = checkpoint.arch;
  stacker.params = checkpoint.params;
  stacker.trained = true;
  return stacker;
}

}  // namespace ofs::ensemble
