#include "semiclass/cli/config.hpp"

#include <cstdio>
#include <set>

#include "config_fields.hpp"
#include "semiclass/error.hpp"

namespace semiclass::cli {

nlohmann::json to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["subcommand"] = cfg.subcommand;
#define SEMICLASS_TO_JSON(name) j[#name] = cfg.name;
  SEMICLASS_CONFIG_FIELDS(SEMICLASS_TO_JSON)
#undef SEMICLASS_TO_JSON
  return j;
}

ExperimentConfig from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object");
  ExperimentConfig cfg;
  std::set<std::string> known{"subcommand"};
#define SEMICLASS_KNOWN(name) known.insert(#name);
  SEMICLASS_CONFIG_FIELDS(SEMICLASS_KNOWN)
#undef SEMICLASS_KNOWN
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw Error(ErrorKind::Config, "unknown config key " + key);
  }
  try {
    if (j.contains("subcommand")) j.at("subcommand").get_to(cfg.subcommand);
#define SEMICLASS_FROM_JSON(name) \
  if (j.contains(#name)) j.at(#name).get_to(cfg.name);
    SEMICLASS_CONFIG_FIELDS(SEMICLASS_FROM_JSON)
#undef SEMICLASS_FROM_JSON
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, std::string("bad config value: ") + e.what());
  }
  return cfg;
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  nlohmann::json j = to_json(cfg);
  j.erase("out");
  j.erase("summary");
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

classical::CatMatrix build_cat_matrix(const ExperimentConfig& cfg) {
  return classical::make_cat_matrix(cfg.a, cfg.b, cfg.c, cfg.d);
}

classical::MapModel build_model(const ExperimentConfig& cfg) {
  if (cfg.map == "cat") return classical::MapModel::cat(build_cat_matrix(cfg));
  if (cfg.map == "baker") return classical::MapModel::baker();
  if (cfg.map == "kicked") {
    classical::KickedParams p;
    p.k = cfg.k;
    p.T = cfg.T;
    if (cfg.potential == "cos") {
      p.potential = classical::Potential::Cosine;
    } else if (cfg.potential == "sawtooth") {
      p.potential = classical::Potential::Sawtooth;
    } else {
      throw Error(ErrorKind::InvalidArgument, "potential must be cos or sawtooth");
    }
    return classical::MapModel::kicked(p);
  }
  throw Error(ErrorKind::InvalidArgument, "map must be cat, baker or kicked");
}

}  // namespace semiclass::cli
