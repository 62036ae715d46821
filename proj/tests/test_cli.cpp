#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "temp_dir.hpp"
#include "th4/cli.hpp"
#include "th4/output.hpp"

using namespace th4;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class ScopedCwd {
 public:
  explicit ScopedCwd(const fs::path& p) : saved_(fs::current_path()) { fs::current_path(p); }
  ~ScopedCwd() { fs::current_path(saved_); }

 private:
  fs::path saved_;
};

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("report with defaults reads data.txt and appends to th4.csv") {
  test::TempDir dir;
  dir.write("data.txt", test::kTable1Lines);
  ScopedCwd cwd(dir.path());
  const auto r = run({"report"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out == format_listing(full_report(build_table(test::table1())), 2));
  const auto lines = test::split_lines(test::slurp("th4.csv"));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].rfind("data.txt,4,4,0.81,", 0) == 0);
}

TEST_CASE("report twice appends two identical rows under one header") {
  test::TempDir dir;
  const auto in = dir.write("t1.txt", test::kTable1Lines);
  const auto out = dir / "rows.csv";
  for (int i = 0; i < 2; ++i)
    REQUIRE(run({"report", "--input", in.string(), "--output", out.string()}).code == cli::kOk);
  const auto lines = test::split_lines(test::slurp(out));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == csv_header());
  CHECK(lines[1] == lines[2]);
}

TEST_CASE("report on three-variable data zeroes z columns") {
  test::TempDir dir;
  const auto in = dir.write("tromso.txt", test::kTable3Lines);
  const auto out = dir / "rows.csv";
  REQUIRE(run({"report", "--input", in.string(), "--output", out.string(), "--label", "Tromso"}).code ==
          cli::kOk);
  const auto lines = test::split_lines(test::slurp(out));
  const auto header = csv_fields(lines[0]);
  const auto row = csv_fields(lines[1]);
  REQUIRE(header.size() == row.size());
  CHECK(row[0] == "Tromso");
  CHECK(row[2] == "3");
  for (std::size_t i = 3; i < header.size(); ++i)
    if (header[i].find('Z') != std::string::npos) CHECK(row[i] == "0.00");
}

TEST_CASE("report --json and --full-precision") {
  test::TempDir dir;
  const auto in = dir.write("t1.txt", test::kTable1Lines);
  const auto out = dir / "rows.csv";
  const auto r = run({"report", "--input", in.string(), "--output", out.string(), "--json", "--full-precision"});
  REQUIRE(r.code == cli::kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["n_cases"] == 4);
  CHECK(j["entropies"]["W"].get<double>() == 0.8112781244591328);
  CHECK(j["transmissions"]["WXYZ"].get<double>() < 0.0);
  CHECK(test::slurp(out).find("0.8112781244591328") != std::string::npos);
}

TEST_CASE("report error exit codes") {
  test::TempDir dir;
  SUBCASE("parse error names the line") {
    const auto in = dir.write("bad.txt", {"a,1,2,3", "b,1,2"});
    const auto r = run({"report", "--input", in.string(), "--output", (dir / "o.csv").string()});
    CHECK(r.code == cli::kParseError);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "o.csv"));
  }
  SUBCASE("empty dataset") {
    const auto in = dir.write("empty.txt", {"", "  "});
    CHECK(run({"report", "--input", in.string(), "--output", (dir / "o.csv").string()}).code == cli::kParseError);
  }
  SUBCASE("missing input") {
    CHECK(run({"report", "--input", (dir / "nope.txt").string()}).code == cli::kIoError);
  }
  SUBCASE("unwritable output") {
    const auto in = dir.write("t1.txt", test::kTable1Lines);
    CHECK(run({"report", "--input", in.string(), "--output", (dir / "no/such/dir.csv").string()}).code ==
          cli::kIoError);
  }
  SUBCASE("bad flags") {
    CHECK(run({"report", "--precision", "-3"}).code == cli::kUsageError);
    CHECK(run({"frobnicate"}).code == cli::kUsageError);
    CHECK(run({}).code == cli::kUsageError);
  }
  SUBCASE("help is not an error") { CHECK(run({"--help"}).code == cli::kOk); }
}

TEST_CASE("report --drop-empty-labels") {
  test::TempDir dir;
  const auto in = dir.write("gaps.txt", {"a,1,,x", "b,1,2,x", "c,2,2,y"});
  const auto out = dir / "o.csv";
  REQUIRE(run({"report", "--input", in.string(), "--output", out.string(), "--drop-empty-labels"}).code ==
          cli::kOk);
  CHECK(csv_fields(test::split_lines(test::slurp(out))[1])[1] == "2");
}

TEST_CASE("report output is deterministic") {
  test::TempDir dir;
  const auto in = dir.write("t1.txt", test::kTable1Lines);
  const auto a = run({"report", "--input", in.string(), "--output", (dir / "a.csv").string()});
  const auto b = run({"report", "--input", in.string(), "--output", (dir / "b.csv").string()});
  CHECK(a.out == b.out);
  CHECK(test::slurp(dir / "a.csv") == test::slurp(dir / "b.csv"));
}

TEST_CASE("batch appends rows in file-name order") {
  test::TempDir dir;
  dir.write("regions/c.txt", test::kTable3Lines);
  dir.write("regions/a.txt", test::kTable1Lines);
  dir.write("regions/b.txt", {"x,1,2,3", "y,1,3,3"});
  const auto out = dir / "rows.csv";
  const auto r = run({"batch", (dir / "regions").string(), "--output", out.string()});
  REQUIRE(r.code == cli::kOk);
  const auto lines = test::split_lines(test::slurp(out));
  REQUIRE(lines.size() == 4);
  CHECK(lines[1].rfind("a.txt,", 0) == 0);
  CHECK(lines[2].rfind("b.txt,", 0) == 0);
  CHECK(lines[3].rfind("c.txt,", 0) == 0);
}

TEST_CASE("batch over 21 files with a glob and parallel jobs") {
  test::TempDir dir;
  for (int i = 1; i <= 21; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "county%02d.txt", i);
    std::vector<std::string> lines;
    for (int k = 0; k < 10 + i; ++k)
      lines.push_back(std::to_string(k) + "," + std::to_string(k % 3) + "," + std::to_string((k * i) % 4) + "," +
                      std::to_string(k % 2));
    dir.write(name, lines);
  }
  const auto out = dir / "sweden.csv";
  const auto r = run({"batch", (dir / "county*.txt").string(), "--output", out.string(), "--jobs", "4"});
  REQUIRE(r.code == cli::kOk);
  const auto lines = test::split_lines(test::slurp(out));
  REQUIRE(lines.size() == 22);
  CHECK(lines[1].rfind("county01.txt,11,3,", 0) == 0);
  CHECK(lines[21].rfind("county21.txt,31,3,", 0) == 0);
}

TEST_CASE("batch with no matches creates nothing") {
  test::TempDir dir;
  const auto out = dir / "rows.csv";
  const auto r = run({"batch", (dir / "*.none").string(), "--output", out.string()});
  CHECK(r.code != cli::kOk);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("batch failure handling") {
  test::TempDir dir;
  dir.write("in/1.txt", test::kTable1Lines);
  dir.write("in/2.txt", {"broken"});
  dir.write("in/3.txt", test::kTable3Lines);
  const auto out = dir / "rows.csv";
  SUBCASE("abort keeps earlier rows") {
    const auto r = run({"batch", (dir / "in").string(), "--output", out.string()});
    CHECK(r.code == cli::kParseError);
    CHECK(test::split_lines(test::slurp(out)).size() == 2);
    CHECK(r.err.find("2.txt") != std::string::npos);
  }
  SUBCASE("keep going") {
    const auto r = run({"batch", (dir / "in").string(), "--output", out.string(), "--keep-going"});
    CHECK(r.code == cli::kOk);
    CHECK(test::split_lines(test::slurp(out)).size() == 3);
    CHECK(r.err.find("warning") != std::string::npos);
  }
}

TEST_CASE("decompose by region") {
  test::TempDir dir;
  const auto in = dir.write("t1.txt", test::kTable1Lines);
  const auto csv = dir / "dec.csv";
  const auto r = run({"decompose", "--input", in.string(), "--group-by", "y", "--subset", "w,x,z", "--output",
                      csv.string()});
  REQUIRE(r.code == cli::kOk);
  const auto lines = test::split_lines(test::slurp(csv));
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "group,n_cases,weight,T_WXZ,contribution,synergy");
  CHECK(lines[1] == "region1,1,0.25,0.00,0.00,0.00");
  CHECK(lines[2] == "region2,2,0.50,0.00,0.00,0.00");
  CHECK(lines[3] == "region5,1,0.25,0.00,0.00,0.00");
  CHECK(lines[4] == "t_pooled,4,1,-0.19,,");
  CHECK(lines[5] == "t_between,,,,-0.19,0.19");
  CHECK(r.out.find("region2\t2\t0.50") != std::string::npos);
}

TEST_CASE("decompose errors and single region") {
  test::TempDir dir;
  const auto t1 = dir.write("t1.txt", test::kTable1Lines);
  CHECK(run({"decompose", "--input", t1.string(), "--group-by", "y", "--subset", "wy"}).code == cli::kUsageError);
  CHECK(run({"decompose", "--input", t1.string(), "--group-by", "q", "--subset", "wx"}).code == cli::kUsageError);

  const auto t3 = dir.write("t3.txt", test::kTable3Lines);
  const auto r = run({"decompose", "--input", t3.string(), "--group-by", "w", "--subset", "xy"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("t_between\t0.00") != std::string::npos);
}

TEST_CASE("decompose over group files") {
  test::TempDir dir;
  const auto a = dir.write("north.txt", test::kTable1Lines);
  const auto b = dir.write("south.txt", test::kTable1Lines);
  const auto r = run({"decompose", "--group-files", a.string(), b.string(), "--subset", "wxyz"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("north.txt\t4\t0.50\t-0.19") != std::string::npos);
  CHECK(r.out.find("t_between\t0.00") != std::string::npos);
}

TEST_CASE("ipf subcommand") {
  test::TempDir dir;
  SUBCASE("product structure") {
    std::vector<std::string> lines;
    const auto d = test::product_dataset({{1, 2}, {2, 1, 1}, {3, 1}});
    for (const auto& rec : d.records) lines.push_back(rec.id + "," + rec.labels[0] + "," + rec.labels[1] + "," + rec.labels[2]);
    const auto in = dir.write("prod.txt", lines);
    const auto r = run({"ipf", "--input", in.string()});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("interaction_bits\t0.00\n") != std::string::npos);
    CHECK(r.out.find("converged\tyes") != std::string::npos);
  }
  SUBCASE("parity structure with json") {
    const auto in = dir.write("parity.txt", {"a,0,0,0", "b,0,1,1", "c,1,0,1", "d,1,1,0"});
    const auto js = dir / "ipf.json";
    const auto r = run({"ipf", "--input", in.string(), "--json", js.string()});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("interaction_bits\t1.00\n") != std::string::npos);
    CHECK(r.out.find("redundancy_bits\t2.00\t(experimental)") != std::string::npos);
    const auto j = nlohmann::json::parse(test::slurp(js));
    CHECK(std::abs(j["interaction_bits"].get<double>() - 1.0) <= 1e-6);
    CHECK(j["redundancy_experimental"] == true);
  }
  SUBCASE("quoted sample over wxy") {
    const auto in = dir.write("t1.txt", test::kTable1Lines);
    const auto r = run({"ipf", "--input", in.string(), "--subset", "wxy"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("interaction_bits\t0.00\n") != std::string::npos);
  }
  SUBCASE("non-convergence") {
    const auto in = dir.write("t1.txt", test::kTable1Lines);
    const auto r = run({"ipf", "--input", in.string(), "--subset", "wxz", "--max-iter", "50"});
    CHECK(r.code == cli::kNotConverged);
    CHECK(r.err.find("max margin error") != std::string::npos);
  }
  SUBCASE("bad subsets") {
    const auto in = dir.write("t3.txt", test::kTable3Lines);
    CHECK(run({"ipf", "--input", in.string(), "--subset", "wx"}).code == cli::kUsageError);
    CHECK(run({"ipf", "--input", in.string(), "--subset", "wxz"}).code == cli::kUsageError);
  }
}
