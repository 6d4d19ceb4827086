#include "raimsim/csv.hpp"

#include <charconv>
#include <cmath>

#include "raimsim/error.hpp"

#ifndef RAIMSIM_VERSION
#define RAIMSIM_VERSION "unknown"
#endif

namespace raimsim {

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0.0)
        return "0";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, p);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<CsvColumn> columns, const std::string& config_hash,
                     const std::vector<std::string>& comments)
    : path_(path), out_(path, std::ios::binary), columns_(columns.size())
{
    if (!out_)
        throw ConfigError("cannot open output file '" + path + "'");
    out_ << "# raimsim " << RAIMSIM_VERSION << "\n";
    out_ << "# config_hash " << config_hash << "\n";
    for (const auto& c : comments)
        out_ << "# " << c << "\n";
    out_ << "# units:";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? ", " : " ") << columns[i].name << "[" << columns[i].unit << "]";
    out_ << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << columns[i].name;
    out_ << "\n";
}

void CsvWriter::cell(const std::string& text)
{
    if (cells_ == columns_)
        throw NumericalError(path_ + ": too many cells in row " + std::to_string(rows_ + 1));
    out_ << (cells_ ? "," : "") << text;
    ++cells_;
}

CsvWriter& CsvWriter::operator<<(double v)
{
    cell(format_number(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(int v)
{
    cell(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(long v)
{
    cell(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(unsigned long v)
{
    cell(std::to_string(v));
    return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& v)
{
    if (v.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : v)
            q += c == '"' ? std::string("\"\"") : std::string(1, c);
        cell(q + "\"");
    } else {
        cell(v);
    }
    return *this;
}

void CsvWriter::end_row()
{
    if (cells_ != columns_)
        throw NumericalError(path_ + ": row " + std::to_string(rows_ + 1) + " has " + std::to_string(cells_) +
                             " cells, expected " + std::to_string(columns_));
    out_ << "\n";
    cells_ = 0;
    ++rows_;
    if (!out_)
        throw ConfigError("write failed on '" + path_ + "'");
}

} // namespace raimsim
