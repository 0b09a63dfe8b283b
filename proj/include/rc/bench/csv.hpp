#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace rc::bench {

/// 17 significant digits, '.' decimal separator; round-trips every double.
std::string format_double(double v);

std::string csv_escape(const std::string& field);

/// Writes a header row on construction and flushes after every row, so a
/// failed run leaves complete rows behind.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void row(const std::vector<std::string>& fields);

private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace rc::bench
