#include "distclust/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace distclust {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_real(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty()) return std::nullopt;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw InvalidArgument("unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

LoadedData parse_csv(std::istream& in, const IngestSpec& spec) {
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("csv: missing header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> header = split_csv_line(line);
    for (auto& h : header) h = trim(h);

    std::vector<std::size_t> picks;
    std::vector<std::string> names = spec.columns.empty() ? header : spec.columns;
    for (const auto& name : names) {
        std::size_t at = header.size();
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name) {
                at = c;
                break;
            }
        }
        if (at == header.size()) throw InvalidArgument("csv: unknown column '" + name + "'");
        picks.push_back(at);
    }
    if (picks.empty()) throw InvalidArgument("csv: no columns selected");

    LoadedData out;
    out.columns = names;
    std::vector<double> values;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw InvalidArgument("csv: line " + std::to_string(line_no) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(header.size()));
        }
        ++out.total_rows;
        std::vector<double> row;
        row.reserve(picks.size());
        for (std::size_t c : picks) {
            auto v = parse_real(fields[c]);
            if (!v) break;
            row.push_back(*v);
        }
        if (row.size() != picks.size()) {
            ++out.dropped_rows;
            continue;
        }
        values.insert(values.end(), row.begin(), row.end());
    }
    const std::size_t kept = values.size() / picks.size();
    if (kept == 0) {
        throw InvalidArgument("csv: zero rows left after dropping " +
                              std::to_string(out.dropped_rows) + " rows with missing values");
    }

    if (spec.standardize) {
        const std::size_t p = picks.size();
        for (std::size_t c = 0; c < p; ++c) {
            double mean = 0.0;
            for (std::size_t j = 0; j < kept; ++j) mean += values[j * p + c];
            mean /= static_cast<double>(kept);
            double ss = 0.0;
            for (std::size_t j = 0; j < kept; ++j) {
                const double t = values[j * p + c] - mean;
                ss += t * t;
            }
            const double sd = kept > 1 ? std::sqrt(ss / static_cast<double>(kept - 1)) : 0.0;
            // Constant columns are centered only.
            const double scale = sd > 0.0 ? sd : 1.0;
            for (std::size_t j = 0; j < kept; ++j) {
                values[j * p + c] = (values[j * p + c] - mean) / scale;
            }
        }
    }
    out.data = DataMatrix(std::move(values), kept, picks.size());
    return out;
}

LoadedData load_csv(const IngestSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw InvalidArgument("cannot open '" + spec.path.string() + "'");
    return parse_csv(in, spec);
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> default_column_names(std::size_t p) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < p; ++c) names.push_back("x" + std::to_string(c + 1));
    return names;
}

void write_matrix_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                      const DataMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t j = 0; j < m.rows(); ++j) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_real(m(j, c));
        out << '\n';
    }
    if (!out) throw InvalidArgument("failed writing '" + path.string() + "'");
}

}  // namespace distclust
