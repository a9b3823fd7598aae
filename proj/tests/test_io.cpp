#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "distclust/datagen.hpp"
#include "distclust/io.hpp"

using namespace distclust;

namespace {

LoadedData parse(const std::string& text, std::vector<std::string> cols = {},
                 bool standardize = false) {
    std::istringstream in(text);
    IngestSpec spec;
    spec.columns = std::move(cols);
    spec.standardize = standardize;
    return parse_csv(in, spec);
}

}  // namespace

TEST_CASE("rows with missing values are dropped") {
    const auto d = parse("a,b\n1,2\n3,\n5,6\n");
    CHECK(d.data.rows() == 2);
    CHECK(d.dropped_rows == 1);
    CHECK(d.total_rows == 3);
    CHECK(d.data == DataMatrix::from_rows({{1, 2}, {5, 6}}));
}

TEST_CASE("column projection") {
    const auto d = parse("a,b\n1,2\n3,4\n", {"b"});
    CHECK(d.data == DataMatrix::from_rows({{2}, {4}}));
    CHECK(d.columns == std::vector<std::string>{"b"});
}

TEST_CASE("drop only considers the selected columns") {
    const auto d = parse("Date,WindSpeed,Humidity\n2008-12-01,44,71\nNA,NA,22\n2008-12-03,46,30\n",
                         {"WindSpeed", "Humidity"});
    CHECK(d.data.rows() == 2);
    CHECK(d.dropped_rows == 1);
}

TEST_CASE("ingest errors") {
    CHECK_THROWS_AS(parse("a,b\nNA,1\nNA,2\n", {"a"}), InvalidArgument);
    CHECK_THROWS_AS(parse("a,b\n1,2\n", {"c"}), InvalidArgument);
    CHECK_THROWS_AS(parse(""), InvalidArgument);
    CHECK_THROWS_AS(parse("a,b\n1,2,3\n"), InvalidArgument);
    CHECK_THROWS_AS(parse("a,b\n\"1,2\n"), InvalidArgument);
    IngestSpec missing;
    missing.path = "/nonexistent/file.csv";
    CHECK_THROWS_AS(load_csv(missing), InvalidArgument);
}

TEST_CASE("quoted fields, CRLF and stray whitespace") {
    const auto d = parse("\"x, first\",y\r\n\" 1.5\", 2 \r\n\"3\",\"4e1\"\r\n", {"x, first", "y"});
    CHECK(d.data == DataMatrix::from_rows({{1.5, 2}, {3, 40}}));
    CHECK(split_csv_line("a,\"b\"\"c\",") == std::vector<std::string>{"a", "b\"c", ""});
}

TEST_CASE("non-numeric and non-finite values count as missing") {
    const auto d = parse("a\n1\nabc\ninf\nnan\n2x\n4\n");
    CHECK(d.data == DataMatrix::from_rows({{1}, {4}}));
    CHECK(d.dropped_rows == 4);
}

TEST_CASE("standardization runs after filtering") {
    const auto d = parse("a,b\n1,10\n2,NA\n3,30\n5,50\n", {}, true);
    REQUIRE(d.data.rows() == 3);
    for (std::size_t c = 0; c < 2; ++c) {
        double mean = 0.0, ss = 0.0;
        for (std::size_t j = 0; j < 3; ++j) mean += d.data(j, c);
        mean /= 3;
        for (std::size_t j = 0; j < 3; ++j) ss += std::pow(d.data(j, c) - mean, 2);
        CHECK(std::abs(mean) < 1e-15);
        CHECK(ss / 2 == doctest::Approx(1.0));
    }
    const auto flat = parse("a\n2\n2\n", {}, true);
    CHECK(flat.data == DataMatrix::from_rows({{0}, {0}}));
}

TEST_CASE("written matrices round-trip exactly") {
    const DataMatrix m = generate({Family::gamma, 0.7, 3.0, 200, 3, 9});
    const std::filesystem::path dir = DISTCLUST_TEST_TMP;
    std::filesystem::create_directories(dir);
    const auto path = dir / "roundtrip.csv";
    write_matrix_csv(path, default_column_names(3), m);
    IngestSpec spec;
    spec.path = path;
    const auto back = load_csv(spec);
    CHECK(back.data == m);
    CHECK(back.columns == std::vector<std::string>{"x1", "x2", "x3"});
}

TEST_CASE("format_real uses 17 significant digits") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(2.0) == "2");
    CHECK(std::strtod(format_real(M_PI).c_str(), nullptr) == M_PI);
}
