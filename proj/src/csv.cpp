#include "relboltz/csv.hpp"

#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace relboltz {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header,
                     bool with_timestamp)
    : out_(path)
{
    if (!out_) throw std::runtime_error("cannot open output file: " + path);
    if (with_timestamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tmv{};
        gmtime_r(&now, &tmv);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tmv);
        out_ << "# generated " << buf << "\n";
    }
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
}

std::string CsvWriter::num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", v);
    return buf;
}

std::string CsvWriter::num(long v)
{
    return std::to_string(v);
}

} // namespace relboltz
