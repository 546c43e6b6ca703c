#pragma once

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sdnorm/diagram.hpp"

namespace sdnorm {

/// Labels are bare identifiers. Names starting with two underscores are
/// reserved for boundary vertices added internally.
inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || s[0] == '_')) return false;
  for (char c : s.substr(1)) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || c == '_')) return false;
  }
  return true;
}

inline bool is_reserved_label(std::string_view s) {
  return s.size() >= 2 && s[0] == '_' && s[1] == '_';
}

/// Text format: `sd 1`, `S <sources>`, then `V <H> <I> <O> [label]` per vertex.
inline std::string to_text(const Diagram& d) {
  std::string out = "sd 1\nS " + std::to_string(d.sources) + "\n";
  for (const Vertex& v : d.vertices) {
    out += "V " + std::to_string(v.h) + ' ' + std::to_string(v.in) + ' ' +
           std::to_string(v.out);
    if (!v.label.empty()) out += ' ' + v.label;
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline int parse_count(const std::string& tok, std::size_t line) {
  if (tok.empty() || tok.size() > 9)
    throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
  int v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9')
      throw ParseError("expected a non-negative integer, got '" + tok + "'", line);
    v = v * 10 + (c - '0');
  }
  return v;
}

inline void check_label(const std::string& label, std::size_t line,
                        bool allow_reserved) {
  if (!is_identifier(label))
    throw ParseError("invalid label '" + label + "'", line);
  if (!allow_reserved && is_reserved_label(label))
    throw ParseError("label '" + label + "' is reserved", line);
}

}  // namespace detail

/// Parses and validates the text format. Blank lines and `#` comments are
/// skipped.
inline Diagram from_text(std::string_view text, bool allow_reserved = false) {
  Diagram d;
  std::vector<std::size_t> vertex_lines;
  std::size_t lineno = 0;
  int stage = 0;  // 0: expect header, 1: expect S, 2: vertices
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (stage == 0) {
      if (tok.size() != 2 || tok[0] != "sd")
        throw ParseError("expected header 'sd 1'", lineno);
      if (tok[1] != "1")
        throw ParseError("unsupported format version '" + tok[1] + "'", lineno);
      stage = 1;
    } else if (stage == 1) {
      if (tok.size() != 2 || tok[0] != "S")
        throw ParseError("expected 'S <count>'", lineno);
      d.sources = detail::parse_count(tok[1], lineno);
      stage = 2;
    } else {
      if (tok[0] != "V" || tok.size() < 4 || tok.size() > 5)
        throw ParseError("expected 'V <H> <I> <O> [label]'", lineno);
      Vertex v;
      v.h = detail::parse_count(tok[1], lineno);
      v.in = detail::parse_count(tok[2], lineno);
      v.out = detail::parse_count(tok[3], lineno);
      if (tok.size() == 5) {
        detail::check_label(tok[4], lineno, allow_reserved);
        v.label = tok[4];
      }
      d.vertices.push_back(std::move(v));
      vertex_lines.push_back(lineno);
    }
    if (end == text.size()) break;
  }
  if (stage == 0) throw ParseError("missing header 'sd 1'", lineno);
  if (stage == 1) throw ParseError("missing 'S <count>' line", lineno);
  if (auto bad = validate(d))
    throw ParseError(bad->message(),
                     bad->height < vertex_lines.size() ? vertex_lines[bad->height] : lineno);
  return d;
}

inline nlohmann::json to_json(const Diagram& d) {
  nlohmann::json vs = nlohmann::json::array();
  for (const Vertex& v : d.vertices) {
    nlohmann::json j = {{"h", v.h}, {"i", v.in}, {"o", v.out}};
    if (!v.label.empty()) j["label"] = v.label;
    vs.push_back(std::move(j));
  }
  return {{"s", d.sources}, {"vertices", std::move(vs)}};
}

inline Diagram from_json(const nlohmann::json& j, bool allow_reserved = false) {
  auto count = [](const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0 ||
        v.get<long long>() > 1'000'000'000)
      throw ParseError(std::string("field '") + what +
                           "' must be a non-negative integer",
                       0);
    return static_cast<int>(v.get<long long>());
  };
  if (!j.is_object() || !j.contains("s") || !j.contains("vertices") ||
      !j["vertices"].is_array())
    throw ParseError("expected an object with 's' and 'vertices'", 0);
  Diagram d;
  d.sources = count(j["s"], "s");
  for (const auto& jv : j["vertices"]) {
    if (!jv.is_object() || !jv.contains("h") || !jv.contains("i") || !jv.contains("o"))
      throw ParseError("each vertex needs 'h', 'i' and 'o'", 0);
    Vertex v;
    v.h = count(jv["h"], "h");
    v.in = count(jv["i"], "i");
    v.out = count(jv["o"], "o");
    if (jv.contains("label")) {
      if (!jv["label"].is_string()) throw ParseError("'label' must be a string", 0);
      v.label = jv["label"].get<std::string>();
      detail::check_label(v.label, 0, allow_reserved);
    }
    d.vertices.push_back(std::move(v));
  }
  if (auto bad = validate(d)) throw ParseError(bad->message(), 0);
  return d;
}

/// Accepts either format, deciding by the first non-blank character.
inline Diagram parse_diagram(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), 0);
      }
      return from_json(j);
    }
    break;
  }
  return from_text(text);
}

}  // namespace sdnorm
