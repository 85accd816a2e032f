#include "bellrobust/behavior_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bellrobust {

using nlohmann::json;

double round_significant(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Behavior parse_behavior(std::string_view json_text, const ReadOptions& opt) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("behavior file is not valid JSON: ") + e.what());
  }
  Behavior p;
  try {
    const Scenario s(doc.at("settings_a").get<int>(),
                     doc.at("settings_b").get<int>(),
                     doc.at("outcomes_a").get<int>(),
                     doc.at("outcomes_b").get<int>());
    const auto& blocks = doc.at("blocks");
    if (!blocks.is_array() || blocks.size() != s.block_count())
      throw InputError("expected " + std::to_string(s.block_count()) +
                       " blocks for scenario " + s.to_string());
    Vector values(static_cast<Eigen::Index>(s.behavior_size()));
    Eigen::Index k = 0;
    for (const auto& block : blocks) {
      if (!block.is_array() || block.size() != s.block_size())
        throw InputError("each block needs " + std::to_string(s.block_size()) +
                         " entries");
      for (const auto& v : block) values(k++) = v.get<double>();
    }
    p = Behavior(s, std::move(values));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed behavior file: ") + e.what());
  } catch (const RangeError& e) {
    throw InputError(std::string("malformed behavior file: ") + e.what());
  }
  if (opt.validate) {
    const ValidationReport report = validate_behavior(p, opt.tol);
    if (!report.ok())
      throw InputError("behavior failed validation:\n" + report.to_string());
  }
  return p;
}

Behavior read_behavior(const std::filesystem::path& path,
                       const ReadOptions& opt) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_behavior(text.str(), opt);
}

std::string serialize_behavior(const Behavior& p) {
  const Scenario& s = p.scenario;
  json blocks = json::array();
  for (int x = 0; x < s.settings_a; ++x)
    for (int y = 0; y < s.settings_b; ++y) {
      json block = json::array();
      for (int a = 0; a < s.outcomes_a; ++a)
        for (int b = 0; b < s.outcomes_b; ++b)
          block.push_back(round_significant(p(x, y, a, b)));
      blocks.push_back(std::move(block));
    }
  json doc = {{"settings_a", s.settings_a},
              {"settings_b", s.settings_b},
              {"outcomes_a", s.outcomes_a},
              {"outcomes_b", s.outcomes_b},
              {"blocks", std::move(blocks)}};
  return doc.dump();
}

void write_behavior(const std::filesystem::path& path, const Behavior& p) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize_behavior(p) << "\n";
}

}  // namespace bellrobust
