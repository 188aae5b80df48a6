#include "nfold/instance_io.hpp"

#include <fstream>
#include <sstream>

namespace nfold {

using nlohmann::json;

ParseError::ParseError(std::string field, const std::string& what)
    : std::runtime_error("parse-error [" + field + "]: " + what), field_(std::move(field)) {}

namespace {

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(key, "missing required field");
  return *it;
}

Int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where, "expected an integer, got " + std::string(v.type_name()));
  return v.get<Int>();
}

std::vector<Int> as_int_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array");
  std::vector<Int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

NFoldInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("<root>", "expected a JSON object");
  NFoldInstance inst;
  const Int n = as_int(require(doc, "n"), "n");
  const Int r = as_int(require(doc, "r"), "r");
  if (n < 0 || r < 0) throw ParseError(n < 0 ? "n" : "r", "must be non-negative");
  inst.n = static_cast<int>(n);
  inst.r = static_cast<int>(r);
  for (Int tk : as_int_vector(require(doc, "t"), "t")) inst.t.push_back(static_cast<int>(tk));

  const json& blocks = require(doc, "blocks");
  if (!blocks.is_array()) throw ParseError("blocks", "expected an array of matrices");
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const std::string where = "blocks[" + std::to_string(k) + "]";
    if (!blocks[k].is_array()) throw ParseError(where, "expected an array of rows");
    std::vector<std::vector<Int>> rows;
    for (std::size_t i = 0; i < blocks[k].size(); ++i) rows.push_back(as_int_vector(blocks[k][i], where + "[" + std::to_string(i) + "]"));
    int cols = k < inst.t.size() ? inst.t[k] : (rows.empty() ? 0 : static_cast<int>(rows.front().size()));
    try {
      inst.blocks.push_back(Block::from_rows(rows, cols));
    } catch (const InstanceError& e) {
      throw ParseError(where, e.what());
    }
  }
  inst.b_up = as_int_vector(require(doc, "b_up"), "b_up");
  inst.b_low = as_int_vector(require(doc, "b_low"), "b_low");
  if (auto it = doc.find("c"); it != doc.end() && !it->is_null()) inst.c = as_int_vector(*it, "c");
  return inst;
}

json instance_to_json(const NFoldInstance& inst) {
  json doc;
  doc["n"] = inst.n;
  doc["r"] = inst.r;
  doc["t"] = inst.t;
  json blocks = json::array();
  for (const Block& b : inst.blocks) blocks.push_back(b.to_rows());
  doc["blocks"] = std::move(blocks);
  doc["b_up"] = inst.b_up;
  doc["b_low"] = inst.b_low;
  if (inst.c) doc["c"] = *inst.c;
  return doc;
}

NFoldInstance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset is the closest thing nlohmann gives to a position
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError("<document>", "line " + std::to_string(line) + ": " + e.what());
  }
  return instance_from_json(doc);
}

NFoldInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("<file>", "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void write_instance(const std::filesystem::path& path, const NFoldInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

json outcome_to_json(const SolveOutcome& outcome, ResultFormat format) {
  json doc;
  doc["status"] = to_string(outcome.status);
  if (outcome.solution) {
    doc["x"] = outcome.solution->x;
    if (outcome.solution->objective) doc["objective"] = *outcome.solution->objective;
  }
  json stats;
  stats["iterations"] = outcome.stats.iterations;
  stats["support_bound"] = outcome.stats.support_bound;
  stats["box_radius"] = outcome.stats.box_radius;
  stats["dp_cells"] = outcome.stats.dp_cells;
  stats["level_sizes"] = outcome.stats.level_sizes;
  stats["reduced"] = outcome.stats.reduced;
  if (format.include_timing) stats["wall_ms"] = outcome.stats.wall_ms;
  doc["stats"] = std::move(stats);
  return doc;
}

void write_result(const std::filesystem::path& path, const SolveOutcome& outcome, ResultFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << outcome_to_json(outcome, format).dump(2) << '\n';
}

}  // namespace nfold
