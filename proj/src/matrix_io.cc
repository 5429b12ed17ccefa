#include "vermilion/matrix_io.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vermilion/error.h"

namespace vermilion {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double ParseNumber(const std::string& token, int line_no) {
  const std::string t = Trim(token);
  double value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                       ": bad number '" + t + "'");
  }
  return value;
}

RawMatrix ParseJson(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorCode::kParse, "JSON matrix needs an 'entries' array");
  }
  const auto& rows = doc["entries"];
  const int n = static_cast<int>(rows.size());
  if (doc.contains("n") && doc["n"].get<int>() != n) {
    throw Error(ErrorCode::kParse, "'n' does not match number of rows");
  }
  RawMatrix out{SquareMatrix<double>(n), std::nullopt, std::nullopt};
  for (int r = 0; r < n; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) {
      throw Error(ErrorCode::kParse, "row " + std::to_string(r) +
                                         " has the wrong length");
    }
    for (int c = 0; c < n; ++c) {
      if (!rows[r][c].is_number()) {
        throw Error(ErrorCode::kParse, "non-numeric entry");
      }
      out.entries(r, c) = rows[r][c].get<double>();
    }
  }
  if (doc.contains("c")) out.link_capacity = doc["c"].get<double>();
  if (doc.contains("d")) out.degree = doc["d"].get<int>();
  return out;
}

RawMatrix ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  RawMatrix out;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string body = Trim(std::string_view(t).substr(1));
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = Trim(std::string_view(body).substr(0, eq));
      const std::string value = body.substr(eq + 1);
      if (key == "c") out.link_capacity = ParseNumber(value, line_no);
      if (key == "d") out.degree = static_cast<int>(ParseNumber(value, line_no));
      continue;
    }
    std::vector<double> row;
    std::stringstream cells(t);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(ParseNumber(cell, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw Error(ErrorCode::kParse, "no matrix rows");
  if (static_cast<int>(rows.front().size()) != n) {
    throw Error(ErrorCode::kParse, "matrix is not square");
  }
  out.entries = SquareMatrix<double>(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out.entries(r, c) = rows[r][c];
  }
  return out;
}

}  // namespace

std::string ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteStringToFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << contents;
}

RawMatrix ParseMatrixText(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return ParseJson(text);
  return ParseCsv(text);
}

RawMatrix ReadMatrixFile(const std::string& path) {
  RawMatrix raw = ParseMatrixText(ReadFileToString(path));
  const std::string sidecar = path + ".json";
  if ((!raw.link_capacity || !raw.degree) && std::filesystem::exists(sidecar)) {
    try {
      const auto doc = nlohmann::json::parse(ReadFileToString(sidecar));
      if (!raw.link_capacity && doc.contains("c")) raw.link_capacity = doc["c"].get<double>();
      if (!raw.degree && doc.contains("d")) raw.degree = doc["d"].get<int>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParse, sidecar + ": " + e.what());
    }
  }
  return raw;
}

TrafficMatrix ReadTrafficMatrix(const std::string& path) {
  RawMatrix raw = ReadMatrixFile(path);
  if (!raw.link_capacity || !raw.degree) {
    throw Error(ErrorCode::kParse,
                path + ": link capacity (c) and degree (d) are required");
  }
  return ValidateHose(std::move(raw.entries), *raw.link_capacity, *raw.degree);
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string MatrixToCsv(const SquareMatrix<double>& m,
                        std::optional<double> link_capacity,
                        std::optional<int> degree) {
  std::string out;
  if (link_capacity) out += "# c=" + FormatDouble(*link_capacity) + "\n";
  if (degree) out += "# d=" + std::to_string(*degree) + "\n";
  for (int r = 0; r < m.size(); ++r) {
    for (int c = 0; c < m.size(); ++c) {
      if (c) out += ',';
      out += FormatDouble(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string MatrixToCsv(const SquareMatrix<std::int64_t>& m) {
  std::string out;
  for (int r = 0; r < m.size(); ++r) {
    for (int c = 0; c < m.size(); ++c) {
      if (c) out += ',';
      out += std::to_string(m(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace vermilion
