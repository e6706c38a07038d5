#include "phasekit/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "phasekit/errors.hpp"

namespace phasekit {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw PipelineError("cannot open for writing: " + path);
  for (size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  if (!out) throw PipelineError("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PipelineError("missing input file: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw PipelineError("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string tok;
  while (std::getline(hs, tok, ',')) t.header.push_back(tok);
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    while (std::getline(ls, tok, ',')) {
      try {
        size_t pos = 0;
        row.push_back(std::stod(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw PipelineError(path + ":" + std::to_string(lineno) +
                            ": bad number '" + tok + "'");
      }
    }
    if (row.size() != t.header.size())
      throw PipelineError(path + ":" + std::to_string(lineno) +
                          ": wrong column count");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace phasekit
