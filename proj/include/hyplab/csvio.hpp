#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace hyplab {

// CSV writer: one comment line carrying the config hash, then a header row,
// then data rows. Numbers are printed with 17 significant digits so reruns
// are byte-identical.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns,
              std::uint64_t config_hash);

    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& values);

    static std::string format_double(double v);

private:
    std::ofstream out_;
    std::size_t ncols_;
};

// FNV-1a hash of a text blob (used to stamp outputs with the resolved config).
std::uint64_t text_hash(const std::string& text);

} // namespace hyplab
