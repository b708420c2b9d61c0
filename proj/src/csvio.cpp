#include "hyplab/csvio.hpp"

#include <cstdio>

#include "hyplab/errors.hpp"
#include "hyplab/rng.hpp"

namespace hyplab {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns,
                     std::uint64_t config_hash)
    : out_(path), ncols_(columns.size()) {
    if (!out_) throw ValidationError("cannot open CSV output: " + path);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(config_hash));
    out_ << "# config_hash=" << buf << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
    out_ << "\n";
}

std::string CsvWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw ValidationError("CSV row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "");
    out_ << "\n";
}

void CsvWriter::row_mixed(const std::vector<std::string>& values) {
    if (values.size() != ncols_) throw ValidationError("CSV row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << values[i] << (i + 1 < values.size() ? "," : "");
    out_ << "\n";
}

std::uint64_t text_hash(const std::string& text) { return CounterRng::fnv1a(text); }

} // namespace hyplab
