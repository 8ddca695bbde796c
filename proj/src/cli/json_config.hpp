#pragma once

#include <CLI11.hpp>
#include <json.hpp>

namespace ofs::cli {

/// Reads CLI11 settings from a JSON object. Nested objects address
/// subcommands, e.g. {"seed": 3, "train-head": {"max-epochs": 20}}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace ofs::cli
