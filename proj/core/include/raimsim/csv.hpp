#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace raimsim {

struct CsvColumn {
    std::string name;
    std::string unit;  // "1" for dimensionless, "-" for labels
};

// Comment-headed CSV:
//   # raimsim <version>
//   # config_hash <16 hex digits>
//   # <free comment lines>
//   # units: name[unit], ...
//   name,name,...
// Numbers use 12 significant digits so identical inputs give identical bytes.
class CsvWriter {
public:
    CsvWriter(const std::string& path, std::vector<CsvColumn> columns, const std::string& config_hash,
              const std::vector<std::string>& comments = {});

    CsvWriter& operator<<(double v);
    CsvWriter& operator<<(int v);
    CsvWriter& operator<<(long v);
    CsvWriter& operator<<(unsigned long v);
    CsvWriter& operator<<(const std::string& v);
    CsvWriter& operator<<(const char* v) { return *this << std::string(v); }
    // terminates the current row; throws when the cell count is wrong
    void end_row();

    std::size_t rows() const { return rows_; }
    const std::string& path() const { return path_; }

private:
    void cell(const std::string& text);

    std::string path_;
    std::ofstream out_;
    std::size_t columns_ = 0;
    std::size_t cells_ = 0;
    std::size_t rows_ = 0;
};

std::string format_number(double v);

} // namespace raimsim
