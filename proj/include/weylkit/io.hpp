#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylkit/cocycle.hpp"
#include "weylkit/corpus.hpp"
#include "weylkit/groupoid.hpp"
#include "weylkit/reconstruct.hpp"

namespace weylkit {

using json = nlohmann::ordered_json;

/// Everything a groupoid JSON file carries.
struct GroupoidFile {
  FiniteGroupoid groupoid;
  TwoCocycle cocycle;
  std::optional<Grading> grading;
  std::optional<std::vector<std::string>> marked;
  std::optional<std::map<std::string, std::string>> section;  // class id -> arrow id

  Grading grading_or_trivial() const { return grading ? *grading : Grading::trivial(groupoid); }
};

/// Splits a "g,h" key at the unique comma with known ids on both sides.
std::pair<std::string, std::string> split_pair_key(const std::string& key, const std::map<std::string, int>& known,
                                                   const std::string& pointer);

/// Schema problems throw Error(Schema) with a JSON pointer as witness;
/// groupoid and cocycle problems throw their own codes.
GroupoidFile parse_groupoid_json(const json& doc);
json emit_groupoid_json(const GroupoidFile& file);

GroupoidFile read_groupoid_file(const std::filesystem::path& path);
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

GroupoidFile file_from_corpus(const CorpusEntry& entry);
/// Structural equality: same ids, structure, cocycle, grading and marks.
bool same_file_content(const GroupoidFile& a, const GroupoidFile& b);

json emit_action_package(const ActionPackage& pkg, const std::string& groupoid_ref);
/// `h` is the groupoid the sidecar refers to.
ActionPackage parse_action_package(const json& doc, const FiniteGroupoid& h);

json emit_theta(const QuotientHT& q, const DiamondAction& diamond, const ThetaDatum& theta,
                const std::string& groupoid_ref);
ThetaDatum parse_theta(const json& doc, const QuotientHT& q, const DiamondAction& diamond);

json character_json(const CharacterBundle& dual, int x);

}  // namespace weylkit
