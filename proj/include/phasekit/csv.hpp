#ifndef PHASEKIT_CSV_HPP
#define PHASEKIT_CSV_HPP

#include <string>
#include <vector>

namespace phasekit {

// Minimal CSV table: comma delimiter, '.' decimal point, LF endings, UTF-8.
// Numeric payloads are written with 12 significant digits.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string format_double(double x);  // %.12g
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);  // throws PipelineError on a bad file

}  // namespace phasekit

#endif
