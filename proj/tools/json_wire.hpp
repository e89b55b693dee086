// Wire format shared by the CLI and its tests: floats are always %.12e and
// JSON objects keep insertion order, so emitted records diff byte-stably and
// parse + re-serialise is the identity.
#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace wire {

using json = nlohmann::ordered_json;

inline std::string fmt_double(double v) {
  if (v == 0.0) v = 0.0 * std::abs(v); // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

inline void write_json(const json& j, std::string& out, int indent) {
  const std::string pad(indent, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + "  \"" + it.key() + "\": ";
        write_json(it.value(), out, indent + 2);
      }
      out += "\n" + pad + "}";
      break;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ", ";
        write_json(j[i], out, indent);
      }
      out += "]";
      break;
    }
    case json::value_t::number_float:
      out += fmt_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

inline std::string render_json(const json& j) {
  std::string out;
  write_json(j, out, 0);
  out += "\n";
  return out;
}

} // namespace wire
