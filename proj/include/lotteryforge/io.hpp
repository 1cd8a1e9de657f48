#pragma once

// System-file parsing and emission. Two mirrored formats selected by file
// extension:
//
//   text (default)            json (*.json)
//   ------------------        ----------------------------------------
//   lottery n=7 k=3 r=2 p=2   {"n":7,"k":3,"r":2,"p":2,
//   0 1 3                      "blocks":[[0,1,3],...]}
//   ...
//
// The text header may carry an optional label; '#' starts a comment.
// Emission is canonical, so parse(emit(S)) == S.

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lotteryforge/common.hpp"
#include "lotteryforge/set_system.hpp"

namespace lotteryforge {

struct SystemFile {
  SetSystem system;
  std::optional<int> r;
  std::optional<int> p;
  std::string label;
};

enum class FileFormat { text, json };

inline FileFormat format_for_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json")
    return FileFormat::json;
  return FileFormat::text;
}

namespace detail {

inline parse_error parse_fail(int line, const std::string& what) {
  return parse_error("line " + std::to_string(line) + ": " + what);
}

inline Block parse_block_tokens(std::istringstream& in, int line, int n, int k) {
  Block b;
  long long v;
  while (in >> v) {
    if (v < 0 || v >= n)
      throw parse_fail(line, "vertex " + std::to_string(v) + " out of range [0," +
                                 std::to_string(n) + ")");
    if (!b.empty() && v <= b.back())
      throw parse_fail(line, "vertices must be strictly ascending");
    b.push_back(static_cast<int>(v));
  }
  if (!in.eof())
    throw parse_fail(line, "malformed vertex token");
  if (static_cast<int>(b.size()) != k)
    throw parse_fail(line, "block has " + std::to_string(b.size()) +
                               " vertices, expected " + std::to_string(k));
  return b;
}

}  // namespace detail

inline SystemFile parse_system_text(std::istream& in) {
  std::string raw;
  int line = 0;
  bool have_header = false;
  int n = 0, k = 0;
  std::optional<int> r, p;
  std::string label;
  std::vector<Block> blocks;

  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    if (!have_header) {
      std::string word;
      if (!(ls >> word)) continue;  // blank or comment before the header
      if (word != "lottery")
        throw detail::parse_fail(line, "expected header starting with 'lottery'");
      std::string kv;
      bool saw_n = false, saw_k = false;
      while (ls >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
          throw detail::parse_fail(line, "expected key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (key == "label") {
          label = value;
          continue;
        }
        int parsed = 0;
        try {
          std::size_t used = 0;
          parsed = std::stoi(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw detail::parse_fail(line, "bad integer for " + key + ": '" + value + "'");
        }
        if (key == "n") {
          n = parsed;
          saw_n = true;
        } else if (key == "k") {
          k = parsed;
          saw_k = true;
        } else if (key == "r") {
          r = parsed;
        } else if (key == "p") {
          p = parsed;
        } else {
          throw detail::parse_fail(line, "unknown header key '" + key + "'");
        }
      }
      if (!saw_n || !saw_k)
        throw detail::parse_fail(line, "header must set n and k");
      have_header = true;
      continue;
    }
    std::istringstream probe(raw);
    std::string first;
    if (!(probe >> first)) continue;  // blank line
    std::istringstream bs(raw);
    blocks.push_back(detail::parse_block_tokens(bs, line, n, k));
  }
  if (!have_header) throw parse_error("missing 'lottery' header line");

  try {
    return {SetSystem(n, k, std::move(blocks)), r, p, std::move(label)};
  } catch (const parameter_error& e) {
    throw parse_error(std::string("invalid system: ") + e.what());
  }
}

inline SystemFile parse_system_json(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("json: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    std::optional<int> r, p;
    if (j.contains("r")) r = j.at("r").get<int>();
    if (j.contains("p")) p = j.at("p").get<int>();
    std::string label = j.value("label", std::string{});
    std::vector<Block> blocks;
    int index = 0;
    for (const auto& jb : j.at("blocks")) {
      Block b;
      for (const auto& jv : jb) {
        const long long v = jv.get<long long>();
        if (v < 0 || v >= n)
          throw parse_error("block " + std::to_string(index) + ": vertex " +
                            std::to_string(v) + " out of range [0," +
                            std::to_string(n) + ")");
        b.push_back(static_cast<int>(v));
      }
      if (static_cast<int>(b.size()) != k)
        throw parse_error("block " + std::to_string(index) + ": has " +
                          std::to_string(b.size()) + " vertices, expected " +
                          std::to_string(k));
      blocks.push_back(std::move(b));
      ++index;
    }
    return {SetSystem(n, k, std::move(blocks)), r, p, std::move(label)};
  } catch (const parse_error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("json: ") + e.what());
  } catch (const parameter_error& e) {
    throw parse_error(std::string("invalid system: ") + e.what());
  }
}

inline SystemFile parse_system(std::istream& in, FileFormat fmt) {
  return fmt == FileFormat::json ? parse_system_json(in) : parse_system_text(in);
}

inline void emit_system(std::ostream& out, const SystemFile& f, FileFormat fmt) {
  const SetSystem& sys = f.system;
  if (fmt == FileFormat::json) {
    nlohmann::ordered_json j;
    j["n"] = sys.n();
    j["k"] = sys.k();
    if (f.r) j["r"] = *f.r;
    if (f.p) j["p"] = *f.p;
    if (!f.label.empty()) j["label"] = f.label;
    j["blocks"] = sys.blocks();
    out << j.dump(2) << "\n";
    return;
  }
  out << "lottery n=" << sys.n() << " k=" << sys.k();
  if (f.r) out << " r=" << *f.r;
  if (f.p) out << " p=" << *f.p;
  if (!f.label.empty()) out << " label=" << f.label;
  out << "\n";
  for (const Block& b : sys.blocks()) {
    for (std::size_t i = 0; i < b.size(); ++i)
      out << (i > 0 ? " " : "") << b[i];
    out << "\n";
  }
}

inline SystemFile load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open '" + path + "'");
  return parse_system(in, format_for_path(path));
}

inline void save_system(const std::string& path, const SystemFile& f) {
  std::ofstream out(path);
  if (!out) throw parse_error("cannot write '" + path + "'");
  emit_system(out, f, format_for_path(path));
}

}  // namespace lotteryforge
