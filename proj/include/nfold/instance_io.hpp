#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nfold/core.hpp"

namespace nfold {

/// Raised for malformed instance documents; field() names the offending key.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

NFoldInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const NFoldInstance& inst);

NFoldInstance parse_instance(const std::string& text);
NFoldInstance read_instance(const std::filesystem::path& path);
void write_instance(const std::filesystem::path& path, const NFoldInstance& inst);

struct ResultFormat {
  bool include_timing = true;
};

nlohmann::json outcome_to_json(const SolveOutcome& outcome, ResultFormat format = {});
void write_result(const std::filesystem::path& path, const SolveOutcome& outcome, ResultFormat format = {});

}  // namespace nfold
