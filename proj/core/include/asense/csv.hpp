#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace asense {

/// Locale-independent decimal with 17 significant digits; parses back to the same double.
[[nodiscard]] std::string formatDouble(double v);

/// Parses a number written by formatDouble (also accepts nan/inf). Throws std::invalid_argument.
[[nodiscard]] double parseDouble(std::string_view text);

/// Comma-separated writer with a header row. Fields must not contain commas or newlines.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);

    CsvWriter& field(double v);
    CsvWriter& field(long long v);
    CsvWriter& field(std::string_view v);
    void endRow();

private:
    void separator();

    std::ostream& os_;
    std::size_t columns_;
    std::size_t inRow_{0};
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws std::out_of_range for an unknown column name.
    [[nodiscard]] std::size_t column(std::string_view name) const;
    [[nodiscard]] double number(std::size_t row, std::string_view name) const;
    [[nodiscard]] const std::string& text(std::size_t row, std::string_view name) const;
};

/// Reads a header row followed by data rows; every row must have the header's width.
[[nodiscard]] CsvTable readCsv(std::istream& is);
[[nodiscard]] CsvTable readCsvFile(const std::string& path);

}  // namespace asense
