// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "isac/acquisition.hpp"
#include "isac/bounds.hpp"
#include "isac/comm_rate.hpp"
#include "isac/directions.hpp"
#include "isac/scenario.hpp"
#include "isac/sensing_fim.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac
{

using json = nlohmann::ordered_json;

// Malformed or incomplete configuration. `field` is the JSON path of the
// offending entry, e.g. "targets[1].kappa".
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }
    const std::string &field() const { return field_; }

  private:
    std::string field_;
};

struct SweepSettings
{
    std::vector<std::string> choices{"G1", "G2", "G3", "G4"};
    std::string scheme = "grid:2";
};

struct RunConfig
{
    ScenarioConfig scenario;
    SweepSettings sweep;
};

// Parses the JSON config format (comments allowed). Every scenario field is
// required; the "sweep" section is optional.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::filesystem::path &path);

json config_to_json(const RunConfig &config);

// 16 hex digits identifying the canonical serialization of `j`.
std::string content_hash(const json &j);

// Hash of the inputs that determine the sensing and comm matrices.
std::string matrix_inputs_hash(const ScenarioConfig &scenario);

json matrix_to_json(const cmat &m);
cmat matrix_from_json(const json &j);

json sense_matrix_to_json(const SenseMatrix &m, std::size_t target, const std::string &inputs_hash);
SenseMatrix sense_matrix_from_json(const json &j);

json lbar_to_json(const LbarMatrix &m, const std::string &inputs_hash);
LbarMatrix lbar_from_json(const json &j);

json catalog_to_json(const DirectionCatalog &catalog);

json acquisition_to_json(const AcquisitionResult &result);

// Writes `j` with two-space indentation and a trailing newline.
void write_json(const std::filesystem::path &path, const json &j);
json read_json(const std::filesystem::path &path);

} // namespace isac
