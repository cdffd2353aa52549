#include "doctest.h"

#include <json.hpp>

#include <filesystem>
#include <sstream>

#include "krq/cli.hpp"

using namespace krq;
using nlohmann::json;

namespace {

RunConfig config(const std::string& type, std::vector<int> nodes = {}) {
  RunConfig c;
  c.lie_type = type;
  c.nodes = std::move(nodes);
  return c;
}

json report(const RunResult& r) { return json::parse(r.output); }

int invoke(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "krq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("krq_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("orders for E6") {
  auto r = run("orders", config("E6"));
  CHECK(r.exit_code == kExitPass);
  auto j = report(r);
  CHECK(j.at("schema") == kReportSchema);
  CHECK(j.at("sorted_orders") == json({27, 27, 73, 243, 243, 1063}));
  CHECK(j.at("nodes")[2].at("order") == "1063");
  CHECK(j.at("nodes")[2].at("blocks").size() == 4);
  auto e7 = report(run("orders", config("E7")));
  CHECK(e7.at("nodes")[3].at("covered") == false);
}

TEST_CASE("dimqp report for G2 node 1") {
  auto j = report(run("dimqp", config("G2", {1})));
  const auto& n = j.at("nodes")[0];
  CHECK(n.at("h_vector") == json({"1", "8", "8", "1"}));
  CHECK(n.at("e") == 6);
  CHECK(n.at("c") == 3);
  CHECK(n.at("leading_coefficient") == "1/40");
  auto all = run("dimqp", config("G2"));
  CHECK(all.exit_code == kExitPass);
  CHECK(report(all).at("qsystem_residuals_zero") == true);
}

TEST_CASE("recurrence verification and exit codes") {
  auto c = config("A2", {1});
  c.m_max = 10;
  auto r = run("verify-recurrence", c);
  CHECK(r.exit_code == kExitPass);
  CHECK(report(r).at("nodes")[0].at("m_range") == json({3, 10}));
  CHECK(run("verify-recurrence", config("E7", {4})).exit_code == kExitUncovered);
  CHECK(run("verify-recurrence", config("E8", {3})).exit_code == kExitUncovered);
  auto low = config("A2", {1});
  low.m_max = 2;
  CHECK(run("verify-recurrence", low).exit_code == kExitUsage);
  CHECK(run("dims", config("Z3")).exit_code == kExitUsage);
  CHECK(run("char", config("A2")).exit_code == kExitUsage);
  CHECK(run("nonsense", config("A2")).exit_code == kExitUsage);
  // printed C3 rows fail, corrected rows pass
  auto ce = config("C3", {2});
  ce.mode = "eval";
  ce.num_points = 1;
  ce.m_max = 30;
  CHECK(run("verify-recurrence", ce).exit_code == kExitFail);
  ce.table = TableVariant::Corrected;
  CHECK(run("verify-recurrence", ce).exit_code == kExitPass);
}

TEST_CASE("command line parsing") {
  std::string text;
  CHECK(invoke({"orders", "--type", "G2", "--format", "csv"}, &text) == kExitPass);
  CHECK(text == "node,order\n1,7\n2,27\n");
  CHECK(invoke({"dims", "--type", "A1", "--node", "1", "--mmax", "3", "--format", "csv"}, &text) == kExitPass);
  CHECK(text == "m,dim\n0,1\n1,2\n2,3\n3,4\n");
  CHECK(invoke({"dims", "--type", "A1", "--format", "xml"}) == kExitUsage);
  CHECK(invoke({}) == kExitUsage);
  CHECK(invoke({"verify-recurrence", "--type", "E7", "--node", "4"}) == kExitUncovered);
  CHECK(invoke({"verify-recurrence", "--type", "B2", "--mode", "symbolic", "--mmax", "12"}) == kExitPass);
  CHECK(invoke({"verify-gf", "--truncation", "4"}) == kExitPass);
  CHECK(invoke({"char", "--type", "G2", "--node", "1", "--m", "1", "--format", "pretty"}, &text) == kExitPass);
  CHECK(text.find("dimension: 15") != std::string::npos);
  CHECK(invoke({"orders", "--type", "G2", "--format", "csv", "--seed"}) == kExitUsage);
}

TEST_CASE("reports are deterministic and the cache round-trips") {
  auto dir = fresh_dir("cache");
  auto c = config("B2", {2});
  c.m = 4;
  c.cache_dir = dir;
  auto cold = run("char", c);
  CHECK(std::filesystem::exists(dir / "B2" / "node2" / "m4.json"));
  auto warm = run("char", c);
  CHECK(cold.output == warm.output);
  auto e = config("G2", {2});
  e.mode = "eval";
  e.seed = 5;
  CHECK(run("verify-recurrence", e).output == run("verify-recurrence", e).output);
  std::filesystem::remove_all(dir);
}

TEST_CASE("decomposition, fermionic and lattice point commands") {
  auto c = config("A2", {1});
  c.m = 2;
  auto j = report(run("decompose", c));
  CHECK(j.at("decomposition").size() == 1);
  CHECK(j.at("dimension") == "6");
  auto f = config("A3");
  f.m_max = 2;
  CHECK(run("verify-fermionic", f).exit_code == kExitPass);
  auto l = config("B3");
  l.m_max = 4;
  CHECK(run("verify-lpsf", l).exit_code == kExitPass);
  auto f4 = config("F4");
  f4.m_max = 2;
  auto lr = report(run("verify-lpsf", f4));
  CHECK(lr.at("skipped") == json({2, 3}));
  f4.conjectural = true;
  CHECK(report(run("verify-lpsf", f4)).at("skipped") == json({3}));
  CHECK(run("verify-lpsf", config("F4", {3})).exit_code == kExitUncovered);
}

TEST_CASE("closed-form G2 verification") {
  auto c = config("");
  c.num_points = 2;
  c.m_max = 12;
  auto r = run("verify-g2", c);
  CHECK(r.exit_code == kExitPass);
  CHECK(report(r).at("asymptotic").at("within_one_percent") == true);
}

TEST_CASE("budgeted bound verification resumes") {
  auto dir = fresh_dir("bound");
  auto c = config("F4", {2});
  c.m_max = 12;
  c.num_points = 1;
  c.cache_dir = dir;
  c.budget_seconds = 1e-9;
  auto first = run("verify-bound", c);
  CHECK(first.exit_code == kExitIncomplete);
  CHECK(report(first).at("status") == "incomplete");
  c.budget_seconds = 0;
  auto second = report(run("verify-bound", c));
  CHECK(second.at("ok") == true);
  CHECK(second.at("m_checked") == 13);
  auto third = report(run("verify-bound", c));
  CHECK(third.at("points")[0].at("records_reused") == 13);
  CHECK(run("verify-bound", config("E7", {4})).exit_code == kExitUncovered);
  std::filesystem::remove_all(dir);
}
