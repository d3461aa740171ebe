#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fmbound/experiments.hpp"

namespace fmbound::cli {

// Flag-level overrides; flags win over config file values.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<int> jobs;
  std::optional<int> trials;
};

nlohmann::json load_config(const std::string& path);

GroupModel parse_model(const nlohmann::json& spec);
BlockSymbol parse_symbol(const nlohmann::json& spec, const GroupModel& model,
                         std::uint64_t seed);
PhiFunction parse_phi(const nlohmann::json& spec);
EigenvalueSequence parse_eigenvalues(const nlohmann::json& spec);

// Subcommand drivers; return process exit codes
// (0 pass, 1 assertion failure, 2 configuration error).
int cmd_mu(const nlohmann::json& config, const Overrides& overrides);
int cmd_bound(const nlohmann::json& config, const Overrides& overrides);
int cmd_verify(const nlohmann::json& config, const Overrides& overrides);

}  // namespace fmbound::cli
