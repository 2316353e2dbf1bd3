#include "srtlab/csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srtlab::csv {

namespace {

std::vector<double> parseRow(const std::string& line) {
  std::vector<double> row;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &pos);
    } catch (const std::exception&) {
      throw std::runtime_error("csv: non-numeric cell '" + cell + "'");
    }
    while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\r')) ++pos;
    if (pos != cell.size()) throw std::runtime_error("csv: trailing junk in cell '" + cell + "'");
    row.push_back(v);
  }
  return row;
}

}  // namespace

std::vector<std::vector<double>> parseMatrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(parseRow(line));
  }
  for (const auto& r : rows) {
    if (r.size() != rows.size())
      throw std::runtime_error("csv: matrix is not square (" + std::to_string(rows.size()) +
                               " rows, row of width " + std::to_string(r.size()) + ")");
  }
  return rows;
}

std::vector<std::vector<double>> readMatrixFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parseMatrix(buf.str());
}

std::vector<double> readColumnFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    for (double v : parseRow(line)) values.push_back(v);
  }
  return values;
}

}  // namespace srtlab::csv
