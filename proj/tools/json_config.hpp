#pragma once

// CLI11 config formatter reading and writing flat JSON objects, so that every
// subcommand accepts `--config file.json` and can print its settings with
// `--dump-config`.  Options given on the command line take precedence.

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace qtst::cli {

class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames()[0];
      if (opt->get_type_size() == 0) {
        if (opt->count() > 0) {
          j[name] = true;
        } else if (default_also) {
          j[name] = false;
        }
        continue;
      }
      std::string value;
      if (!opt->results().empty()) {
        value = opt->results().front();
      } else if (default_also) {
        value = opt->get_default_str();
      } else {
        continue;
      }
      j[name] = scalar(value);
    }
    return j.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      input >> j;
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      item.name = key;
      if (value.is_boolean()) {
        item.inputs = {value.get<bool>() ? "true" : "false"};
      } else if (value.is_string()) {
        item.inputs = {value.get<std::string>()};
      } else if (value.is_number() || value.is_object()) {
        // dump() prints doubles with round-trip precision; objects are passed
        // through as JSON text (friction models).
        item.inputs = {value.dump()};
      } else {
        throw CLI::ConversionError("config key '" + key + "' must be a number, string, bool or object");
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  // Numbers are written as JSON numbers, everything else as strings.
  static nlohmann::ordered_json scalar(const std::string& s) {
    if (!s.empty() && s.front() == '{') {
      auto parsed = nlohmann::ordered_json::parse(s, nullptr, false);
      if (!parsed.is_discarded()) return parsed;
    }
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec == std::errc() && ptr == end && !s.empty()) {
      long long iv = 0;
      auto [iptr, iec] = std::from_chars(s.data(), end, iv);
      if (iec == std::errc() && iptr == end) return iv;
      return v;
    }
    return s;
  }
};

}  // namespace qtst::cli
