#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace relboltz {

// CSV writer: header row, '.' decimal, %.12e scientific for doubles.
// The optional timestamp comment line is the only nondeterministic byte.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header,
              bool with_timestamp);

    void row(const std::vector<std::string>& cells);

    static std::string num(double v);
    static std::string num(long v);

  private:
    std::ofstream out_;
};

} // namespace relboltz
