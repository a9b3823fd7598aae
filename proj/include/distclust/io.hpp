#ifndef DISTCLUST_IO_HPP
#define DISTCLUST_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "distclust/core.hpp"

namespace distclust {

enum class MissingPolicy { drop_row };

struct IngestSpec {
    std::filesystem::path path;
    // Empty selects every header column.
    std::vector<std::string> columns;
    MissingPolicy missing = MissingPolicy::drop_row;
    bool standardize = false;
};

struct LoadedData {
    DataMatrix data;
    std::vector<std::string> columns;
    std::size_t total_rows = 0;
    std::size_t dropped_rows = 0;
};

/// Reads a comma-separated file with a header row. Rows holding an empty,
/// "NA" or otherwise non-numeric value in a selected column are dropped and
/// counted; standardization (per-column z-score) runs after the drop.
LoadedData load_csv(const IngestSpec& spec);
LoadedData parse_csv(std::istream& in, const IngestSpec& spec);

/// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);

/// 17 significant digits, enough to round-trip any double.
std::string format_real(double v);

std::vector<std::string> default_column_names(std::size_t p);

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const DataMatrix& m);

}  // namespace distclust

#endif  // DISTCLUST_IO_HPP
