#include "asense/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace asense {

std::string formatDouble(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return {buf.data(), res.ptr};
}

double parseDouble(std::string_view text) {
    if (text == "nan") {
        return std::nan("");
    }
    if (text == "inf") {
        return HUGE_VAL;
    }
    if (text == "-inf") {
        return -HUGE_VAL;
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os), columns_(header.size()) {
    for (const auto& name : header) {
        field(name);
    }
    endRow();
}

void CsvWriter::separator() {
    if (inRow_ > 0) {
        os_ << ',';
    }
    ++inRow_;
}

CsvWriter& CsvWriter::field(double v) {
    separator();
    os_ << formatDouble(v);
    return *this;
}

CsvWriter& CsvWriter::field(long long v) {
    separator();
    std::array<char, 24> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    os_.write(buf.data(), res.ptr - buf.data());
    return *this;
}

CsvWriter& CsvWriter::field(std::string_view v) {
    separator();
    os_ << v;
    return *this;
}

void CsvWriter::endRow() {
    if (inRow_ != columns_) {
        throw std::logic_error("CSV row has " + std::to_string(inRow_) + " fields, header has " +
                               std::to_string(columns_));
    }
    os_ << '\n';
    inRow_ = 0;
}

namespace {

std::vector<std::string> splitLine(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::out_of_range("no CSV column named '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::string_view name) const {
    return parseDouble(rows.at(row).at(column(name)));
}

const std::string& CsvTable::text(std::size_t row, std::string_view name) const {
    return rows.at(row).at(column(name));
}

CsvTable readCsv(std::istream& is) {
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("CSV input is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    table.header = splitLine(line);
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        auto row = splitLine(line);
        if (row.size() != table.header.size()) {
            throw std::runtime_error("CSV row " + std::to_string(table.rows.size() + 1) + " has " +
                                     std::to_string(row.size()) + " fields, expected " +
                                     std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable readCsvFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return readCsv(in);
}

}  // namespace asense
