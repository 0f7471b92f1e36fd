#include "shiftlab/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "shiftlab/error.hpp"
#include "shiftlab/report.hpp"

namespace shiftlab::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string scalar(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return cell(v.get<double>());
  fail(ErrorKind::MalformedInput, "manifest key \"" + key + "\" must hold a string or a number");
}

std::string list(const json& v, const std::string& key) {
  if (!v.is_array()) return scalar(v, key);
  std::string s;
  for (const auto& x : v) {
    if (!s.empty()) s += ',';
    if (x.is_array()) {
      if (x.size() != 2) fail(ErrorKind::MalformedInput, "manifest key \"" + key + "\" expects [N, Phi] pairs");
      s += scalar(x[0], key) + ":" + scalar(x[1], key);
    } else {
      s += scalar(x, key);
    }
  }
  return s;
}

std::string flag_name(std::string key) {
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return c == '_' ? '-' : std::tolower(c); });
  return "--" + key;
}

}  // namespace

std::vector<std::string> expand_manifest(const std::vector<std::string>& args,
                                         const std::vector<std::string>& subcommands, const FlagFilter& accepts) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--manifest") {
      if (i + 1 == args.size()) fail(ErrorKind::MalformedInput, "--manifest needs a path");
      path = args[++i];
    } else if (args[i].rfind("--manifest=", 0) == 0) {
      path = args[i].substr(11);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) fail(ErrorKind::MalformedInput, "cannot read manifest " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::MalformedInput, std::string("manifest: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::MalformedInput, "a manifest is a JSON object");

  auto named = std::find_if(rest.begin(), rest.end(), [&](const std::string& a) {
    return std::find(subcommands.begin(), subcommands.end(), a) != subcommands.end();
  });
  std::string command;
  if (named != rest.end()) {
    command = *named;
    rest.erase(named);
  } else if (doc.contains("command") && doc["command"].is_string()) {
    command = doc["command"].get<std::string>();
  } else {
    fail(ErrorKind::MalformedInput, "no subcommand given on the command line or in the manifest");
  }

  std::vector<std::string> tokens;
  auto push = [&](const std::string& flag, const std::string& value, const std::string& key) {
    if (!accepts(command, flag)) {
      fail(ErrorKind::MalformedInput, "manifest key \"" + key + "\" does not apply to " + command);
    }
    tokens.push_back(flag);
    tokens.push_back(value);
  };
  const fs::path base = fs::path(path).parent_path();
  for (const auto& [key, value] : doc.items()) {
    if (key == "command") continue;
    if (key == "sft") {
      fs::path p = scalar(value, key);
      if (p.is_relative()) p = base / p;
      push("--sft", p.string(), key);
    } else if (key == "seeds" && value.is_object()) {
      if (value.contains("master")) push("--seed", scalar(value["master"], key), key);
      if (value.contains("count")) push("--seeds", scalar(value["count"], key), key);
    } else if (key == "psi" && value.is_object()) {
      if (value.contains("family")) push("--psi", scalar(value["family"], key), key);
      for (const char* p : {"c", "tau", "s", "param"}) {
        if (value.contains(p)) push("--psi-param", scalar(value[p], key), key);
      }
      if (value.contains("points")) push("--psi-table", list(value["points"], key), key);
    } else if (value.is_boolean()) {
      if (!accepts(command, flag_name(key))) {
        fail(ErrorKind::MalformedInput, "manifest key \"" + key + "\" does not apply to " + command);
      }
      if (value.get<bool>()) tokens.push_back(flag_name(key));
    } else {
      push(flag_name(key), list(value, key), key);
    }
  }
  std::vector<std::string> out{command};
  out.insert(out.end(), tokens.begin(), tokens.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace shiftlab::cli
