#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "vsg/cli.hpp"
#include "vsg/diagram.hpp"
#include "vsg/quandle.hpp"

using namespace vsg;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::vector<const char*> argv = {"vsg"};
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  std::string path = std::string("cli_tmp_") + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("cli yamada prints the frozen theta polynomial and exits 0") {
  std::string theta = temp_file("theta.json", canonical_serialize(fixtures::theta_planar()));
  Run r = cli({"yamada", theta});
  CHECK(r.code == 0);
  CHECK(r.out == "-1*A^2-1*A^1-2*A^0-1*A^-1-1*A^-2\n");
  Run rn = cli({"yamada", "--normalized", theta});
  CHECK(rn.code == 0);
  std::remove(theta.c_str());
}

TEST_CASE("cli validate rejects an unpaired label with exit 1 and a rule id") {
  VsgCode broken = fixtures::unknot0();
  broken.passages["e"] = {{"c1", Role::Over, 1}};
  std::string path = temp_file("broken.json", canonical_serialize(broken));
  Run r = cli({"validate", path});
  CHECK(r.code == 1);
  CHECK(r.err.find("unpaired-crossing") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli search finds the one-move witness, exit 0; exhausted gives 3") {
  std::string kink = temp_file("kink.json", canonical_serialize(fixtures::kink(1)));
  std::string unknot = temp_file("unknot.json", canonical_serialize(fixtures::unknot0()));
  Run r = cli({"search", kink, unknot, "--max-crossings", "3", "--max-states", "1000"});
  CHECK(r.code == 0);
  CHECK(r.out.find("witness_length=1") != std::string::npos);

  std::string vt = temp_file("vt.json", canonical_serialize(fixtures::virtual_trefoil()));
  Run rx = cli({"search", unknot, vt, "--max-crossings", "4", "--max-states", "500"});
  CHECK(rx.code == 3);
  std::remove(kink.c_str());
  std::remove(unknot.c_str());
  std::remove(vt.c_str());
}

TEST_CASE("cli search flags a misconfigured budget with exit 2") {
  std::string vt = temp_file("vt2.json", canonical_serialize(fixtures::virtual_trefoil()));
  std::string unknot = temp_file("unknot2.json", canonical_serialize(fixtures::unknot0()));
  Run r = cli({"search", vt, unknot, "--max-crossings", "1", "--max-states", "10"});
  CHECK(r.code == 2);
  std::remove(vt.c_str());
  std::remove(unknot.c_str());
}

TEST_CASE("cli realize/gauss round trip through files") {
  std::string code_path = temp_file("code.json", canonical_serialize(fixtures::classical_trefoil()));
  std::string diag_path = "cli_tmp_diagram.json";
  Run r = cli({"realize", code_path, "--out", diag_path});
  REQUIRE(r.code == 0);
  Run g = cli({"gauss", diag_path});
  CHECK(g.code == 0);
  CHECK(g.out == canonical_serialize(fixtures::classical_trefoil()) + "\n");
  std::remove(code_path.c_str());
  std::remove(diag_path.c_str());
}

TEST_CASE("cli moves list/apply and policy error for forbidden moves") {
  std::string kink = temp_file("kink2.json", canonical_serialize(fixtures::kink(1)));
  Run l = cli({"moves", "list", kink, "--no-insertions"});
  CHECK(l.code == 0);
  CHECK(l.out.find("\"move\":\"I\"") != std::string::npos);
  Run a = cli({"moves", "apply", kink, "--site",
               "{\"move\":\"I\",\"dir\":\"delete\",\"edge\":\"e\",\"pos\":0}"});
  CHECK(a.code == 0);
  CHECK(a.out == canonical_serialize(fixtures::unknot0()) + "\n");

  std::string vt = temp_file("vt3.json", canonical_serialize(fixtures::virtual_trefoil()));
  Run f = cli({"moves", "apply", vt, "--site",
               "{\"move\":\"VIII*\",\"dir\":\"apply\",\"edge\":\"e\",\"pos\":0}"});
  CHECK(f.code == 1);
  CHECK(f.err.find("policy") != std::string::npos);
  Run ok = cli({"moves", "apply", vt, "--allow", "viii*", "--site",
                "{\"move\":\"VIII*\",\"dir\":\"apply\",\"edge\":\"e\",\"pos\":0}"});
  CHECK(ok.code == 0);
  std::remove(kink.c_str());
  std::remove(vt.c_str());
}

TEST_CASE("cli normalize honors both levels") {
  std::string kink = temp_file("kink3.json", canonical_serialize(fixtures::kink(1)));
  Run r = cli({"normalize", kink, "--forbidden", "viii"});
  CHECK(r.code == 0);
  CHECK(r.out == canonical_serialize(fixtures::unknot0()) + "\n");
  Run p = cli({"normalize", kink, "--forbidden", "pliable"});
  CHECK(p.code == 0);
  std::remove(kink.c_str());
}

TEST_CASE("cli quandle and group agree with the library") {
  std::string tre = temp_file("tre.json", canonical_serialize(fixtures::classical_trefoil()));
  std::string d3 = temp_file("d3.json", FiniteVQS::dihedral(3).to_json());
  Run q = cli({"quandle", tre, "--structure", d3});
  CHECK(q.code == 0);
  CHECK(q.out == "9\n");
  std::remove(tre.c_str());
  std::remove(d3.c_str());
}

TEST_CASE("cli output is byte-identical across runs") {
  std::string theta = temp_file("theta2.json", canonical_serialize(fixtures::theta_planar()));
  for (auto args : {std::vector<std::string>{"tg", theta, "--linking", "--bracket"},
                    std::vector<std::string>{"realize", theta},
                    std::vector<std::string>{"--format", "json", "yamada", theta}}) {
    Run a = cli(args), b = cli(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  std::remove(theta.c_str());
}

TEST_CASE("cli yamada maps budget overruns to exit 2") {
  std::string vt = temp_file("vtb.json", canonical_serialize(fixtures::virtual_trefoil()));
  Run r = cli({"yamada", vt, "--max-crossings", "1"});
  CHECK(r.code == 2);
  std::remove(vt.c_str());
}

TEST_CASE("cli tg --distinct collapses the multiset") {
  std::string theta = temp_file("theta4.json", canonical_serialize(fixtures::theta_planar()));
  Run all = cli({"tg", theta});
  Run distinct = cli({"tg", theta, "--distinct"});
  int all_lines = 0, distinct_lines = 0;
  for (char ch : all.out) all_lines += ch == '\n';
  for (char ch : distinct.out) distinct_lines += ch == '\n';
  CHECK(all_lines == 9);
  CHECK(distinct_lines == 2);
  std::remove(theta.c_str());
}

TEST_CASE("cli tg TSV shape") {
  std::string theta = temp_file("theta3.json", canonical_serialize(fixtures::theta_planar()));
  Run r = cli({"tg", theta, "--linking"});
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, r.out.find('\n')) == "choice\tcomponents\tlinking_halves");
  int lines = 0;
  for (char ch : r.out) lines += ch == '\n';
  CHECK(lines == 10);  // header + 9 choices
  std::remove(theta.c_str());
}
