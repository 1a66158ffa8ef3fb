#include "robinflow/io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "robinflow/errors.hpp"

namespace robinflow::io {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string Csv::serialize(const std::string& comment) const {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    out += columns[i];
    out += (i + 1 < columns.size()) ? "," : "\n";
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? "," : "\n";
    }
  }
  return out;
}

RobinSymbol robin_symbol_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::validation, std::string("robin symbol: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind"))
    fail(errc::validation, "robin symbol: object with a \"kind\" field expected");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "zero") return RobinSymbol::zero();
  if (kind == "constant") {
    if (!j.contains("c")) fail(errc::validation, "robin symbol: constant needs \"c\"");
    return RobinSymbol::constant(j["c"].get<double>());
  }
  if (kind == "affine") {
    if (!j.contains("a") || !j.contains("c"))
      fail(errc::validation, "robin symbol: affine needs \"a\" and \"c\"");
    return RobinSymbol::affine(j["a"].get<double>(), j["c"].get<double>());
  }
  if (kind == "table") {
    if (!j.contains("values") || !j["values"].is_object())
      fail(errc::validation, "robin symbol: table needs a \"values\" object");
    std::map<int, double> vals;
    for (auto it = j["values"].begin(); it != j["values"].end(); ++it) {
      int n = 0;
      const std::string& key = it.key();
      auto res = std::from_chars(key.data(), key.data() + key.size(), n);
      if (res.ec != std::errc() || res.ptr != key.data() + key.size())
        fail(errc::validation, "robin symbol: table keys must be integers");
      vals[n] = it.value().get<double>();
    }
    RobinSymbol fallback = RobinSymbol::zero();
    if (j.contains("default")) fallback = robin_symbol_from_json(j["default"].dump());
    return RobinSymbol::table(std::move(vals), fallback);
  }
  fail(errc::validation, "robin symbol: unknown kind \"" + kind + "\"");
}

std::string robin_symbol_to_json(const RobinSymbol& tau) {
  json j;
  switch (tau.kind) {
    case RobinSymbol::Kind::zero: j["kind"] = "zero"; break;
    case RobinSymbol::Kind::constant:
      j["kind"] = "constant";
      j["c"] = tau.c;
      break;
    case RobinSymbol::Kind::affine:
      j["kind"] = "affine";
      j["a"] = tau.a;
      j["c"] = tau.c;
      break;
    case RobinSymbol::Kind::table: {
      j["kind"] = "table";
      json vals = json::object();
      for (const auto& [n, v] : tau.values) vals[std::to_string(n)] = v;
      j["values"] = vals;
      json def;
      if (tau.fallback_kind == RobinSymbol::Kind::affine) {
        def["kind"] = "affine";
        def["a"] = tau.fallback_a;
        def["c"] = tau.fallback_c;
      } else if (tau.fallback_kind == RobinSymbol::Kind::constant) {
        def["kind"] = "constant";
        def["c"] = tau.fallback_c;
      } else {
        def["kind"] = "zero";
      }
      j["default"] = def;
      break;
    }
  }
  return j.dump();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::validation, "cannot open output file: " + path);
  f << content;
}

} // namespace robinflow::io
