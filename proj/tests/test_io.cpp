#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "stringy/io.hpp"

#include <fstream>
#include <sstream>

using namespace stringy;
using namespace stringy::fixtures;

namespace {

int run_cli(std::initializer_list<std::string> args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int code = run(std::vector<std::string>(args), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/stringy_io_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("matrix format") {
  Polytope p = parse_polytope("2 3\n1 0\n0 1\n-1 -1\n", PolytopeFormat::matrix);
  CHECK(p.vertices() == F1().vertices());
}

TEST_CASE("palp orientations") {
  // 2 <= 3: columns are vertices; trailing comment ignored.
  Polytope cols = parse_polytope("2 3  comment text\n1 0 -1\n0 1 -1\n", PolytopeFormat::palp);
  CHECK(cols.vertices() == F1().vertices());
  // 3 > 2: rows are vertices.
  Polytope rows = parse_polytope("3 2\n1 0\n0 1\n-1 -1\n", PolytopeFormat::palp);
  CHECK(rows.vertices() == F1().vertices());
  // square: rows, with a warning.
  std::ostringstream warn;
  parse_polytope("2 2\n0 1\n1 0\n", PolytopeFormat::palp, &warn);
  CHECK(warn.str().find("rows") != std::string::npos);
}

TEST_CASE("format errors") {
  CHECK_THROWS(parse_polytope("", PolytopeFormat::matrix));
  CHECK_THROWS(parse_polytope("2 2\n1 0\n0\n", PolytopeFormat::matrix));    // ragged
  CHECK_THROWS(parse_polytope("9 10\n", PolytopeFormat::matrix));          // dimension > 8
  CHECK_THROWS(parse_polytope("x 3\n1 0\n0 1\n-1 -1\n", PolytopeFormat::matrix));
}

TEST_CASE("round trips") {
  for (const Polytope& p : {F1(), F2(), F3(), F7(), F4(), F5(), F6(), C3(), C4()}) {
    for (PolytopeFormat f : {PolytopeFormat::matrix, PolytopeFormat::palp}) {
      Polytope q = parse_polytope(emit_polytope(p, f), f);
      CHECK(q.vertices() == p.vertices());
    }
  }
  // CRLF input parses identically.
  Polytope crlf = parse_polytope("2 3\r\n1 0\r\n0 1\r\n-1 -1\r\n", PolytopeFormat::matrix);
  CHECK(crlf.vertices() == F1().vertices());
}

TEST_CASE("fan files") {
  std::string text =
      "rays 3 2\n"
      "1 0\n"
      "0 1\n"
      "-1 -1\n"
      "cones 3\n"
      "0 1\n"
      "1 2\n"
      "2 0\n"
      "divisor H 1 0 0\n";
  ParsedFan pf = parse_fan(text);
  CHECK(pf.fan.ray_count() == 3);
  CHECK(pf.fan.maximal_cones().size() == 3);
  REQUIRE(pf.divisors.count("H") == 1);
  CHECK(pf.divisors["H"].a(0) == 1);

  std::string c3 =
      "rays 8 3\n"
      "-1 -1 -1\n-1 -1 1\n-1 1 -1\n-1 1 1\n1 -1 -1\n1 -1 1\n1 1 -1\n1 1 1\n"
      "cones 6\n"
      "0 1 2 3\n4 5 6 7\n0 1 4 5\n2 3 6 7\n0 2 4 6\n1 3 5 7\n";
  CHECK(parse_fan(c3).fan.maximal_cones().size() == 6);

  std::string incomplete =
      "rays 3 2\n1 0\n0 1\n-1 -1\ncones 2\n0 1\n1 2\n";
  CHECK_THROWS_WITH(parse_fan(incomplete), "fan not complete");

  std::string bad_index = "rays 3 2\n1 0\n0 1\n-1 -1\ncones 3\n0 1\n1 2\n2 5\n";
  CHECK_THROWS(parse_fan(bad_index));

  std::string reserved =
      "rays 3 2\n1 0\n0 1\n-1 -1\ncones 3\n0 1\n1 2\n2 0\ndivisor K 1 1 1\n";
  CHECK_THROWS(parse_fan(reserved));

  // Non-primitive rays normalize with a warning.
  std::ostringstream warn;
  std::string scaled = "rays 3 2\n2 0\n0 1\n-1 -1\ncones 3\n0 1\n1 2\n2 0\n";
  ParsedFan norm = parse_fan(scaled, &warn);
  CHECK(norm.fan.ray(0)(0) == 1);
  CHECK(!warn.str().empty());
}

TEST_CASE("cli verify") {
  std::string f1 = write_temp("f1.txt", emit_polytope(F1(), PolytopeFormat::matrix));
  std::string out;
  int code = run_cli({"verify", f1, "--identity", "refl2"}, &out);
  CHECK(code == 0);
  CHECK(out.find("\"pass\": true") != std::string::npos);
  CHECK(out.find("\"lhs\": 12") != std::string::npos);

  // not reflexive -> input error
  std::string f3 = write_temp("f3.txt", emit_polytope(F3(), PolytopeFormat::matrix));
  CHECK(run_cli({"verify", f3, "--identity", "refl2"}) == 2);
}

TEST_CASE("cli estr reports exact fractional exponents") {
  std::string f3 = write_temp("f3b.txt", emit_polytope(F3(), PolytopeFormat::matrix));
  std::string out;
  CHECK(run_cli({"estr", f3}, &out) == 0);
  CHECK(out.find("\"2/3\"") != std::string::npos);
  CHECK(out.find("\"4/3\"") != std::string::npos);
  CHECK(out.find("\"q\": 3") != std::string::npos);
}

TEST_CASE("cli euler-hyp on the quintic") {
  std::string f5 = write_temp("f5.txt", emit_polytope(F5(), PolytopeFormat::matrix));
  std::string out;
  CHECK(run_cli({"euler-hyp", f5, "--divisor", "K"}, &out) == 0);
  CHECK(out.find("-200") != std::string::npos);
}

TEST_CASE("cli euler-gorenstein") {
  std::string f6 = write_temp("f6.txt", emit_polytope(F6(), PolytopeFormat::matrix));
  std::string out;
  CHECK(run_cli({"euler-gorenstein", f6, "--r", "2"}, &out) == 0);
  CHECK(out.find("24") != std::string::npos);
}

TEST_CASE("cli rejects unknown subcommands and flags") {
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"verify", "--identity"}) == 2);
  CHECK(run_cli({"verify", "/tmp/nonexistent_stringy", "--identity", "refl2"}) == 2);
}

TEST_CASE("cli fan input") {
  std::string fan_text =
      "rays 3 2\n1 0\n0 1\n-1 -1\ncones 3\n0 1\n1 2\n2 0\n";
  std::string path = write_temp("fan1.txt", fan_text);
  std::string out;
  CHECK(run_cli({"verify", path, "--identity", "lwfan"}, &out) == 0);
  CHECK(out.find("\"pass\": true") != std::string::npos);
  CHECK(run_cli({"inter", path, "--divisors", "K,K"}, &out) == 0);
  CHECK(out.find("\"value\": 9") != std::string::npos);
}

TEST_CASE("batch runs are deterministic across job counts") {
  std::string stream;
  for (const Polytope& p : {F1(), F2(), F7()}) stream += emit_polytope(p, PolytopeFormat::matrix);
  stream += emit_polytope(F3(), PolytopeFormat::matrix);  // fails refl2 with an error entry
  std::string path = write_temp("batch.txt", stream);

  std::string out1, out4;
  int c1 = run_cli({"batch", "--file", path, "--identity", "refl2", "--jobs", "1"}, &out1);
  int c4 = run_cli({"batch", "--file", path, "--identity", "refl2", "--jobs", "4"}, &out4);
  CHECK(c1 == c4);
  CHECK(out1 == out4);
  CHECK(out1.find("\"passed\": 3") != std::string::npos);
  CHECK(c1 == 2);  // F3 is not reflexive: reported as an input error

  std::string ok_path = write_temp("batch_ok.txt",
                                   emit_polytope(F1(), PolytopeFormat::matrix) +
                                       emit_polytope(F2(), PolytopeFormat::matrix));
  CHECK(run_cli({"batch", "--file", ok_path, "--identity", "refl2"}) == 0);
}

TEST_CASE("jobs default comes from the environment") {
  setenv("STRINGY_JOBS", "3", 1);
  std::string ok_path = write_temp("batch_env.txt", emit_polytope(F1(), PolytopeFormat::matrix));
  CHECK(run_cli({"batch", "--file", ok_path, "--identity", "refl2"}) == 0);
  unsetenv("STRINGY_JOBS");
}
