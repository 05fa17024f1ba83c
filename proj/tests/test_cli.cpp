#include "doctest.h"
#include "nangle/cli.hpp"

#include <filesystem>
#include <fstream>

using namespace nangle;

namespace {

const char* kDual = R"(field p=2
n=3
gen P
hom P P dim=2 basis=e,x
id P = e
comp e e = e
comp e x = x
comp x e = x
comp x x = 0
rel x x = 0
sigma gen P -> P
sigma hom e -> e
sigma hom x -> x
angles wrap-exact
)";

Budget quick() {
  Budget b;
  b.cap_solutions = 32;
  b.cap_instances = 12;
  b.seed = 5;
  return b;
}

JobConfig job(Task t) {
  JobConfig cfg;
  cfg.task = t;
  cfg.budget = quick();
  return cfg;
}

std::string corpus_text(const CorpusEntry& e) { return serialize_category_file(export_corpus_entry(e)); }

}  // namespace

TEST_CASE("corpus exports round trip") {
  for (const auto& e : builtin_corpus()) {
    CAPTURE(e.name);
    const std::string text = corpus_text(e);
    const CategoryFile f = parse_category_file(text);
    CHECK(serialize_category_file(f) == text);
    const PresentedCategory& a = e.structure.category();
    const PresentedCategory& b = f.structure.category();
    REQUIRE(a.generator_count() == b.generator_count());
    for (int g = 0; g < a.generator_count(); ++g)
      for (int h = 0; h < a.generator_count(); ++h) CHECK(a.hom_dim(g, h) == b.hom_dim(g, h));
    CHECK(f.n == e.n);
    CHECK(f.oracle == e.oracle);
  }
}

TEST_CASE("hand written files") {
  const CategoryFile f = parse_category_file(kDual);
  CHECK(f.structure.category().hom_dim(0, 0) == 2);
  CHECK(f.oracle == "wrap-exact");
  // reparsing the canonical form is stable
  const std::string canon = serialize_category_file(f);
  CHECK(serialize_category_file(parse_category_file(canon)) == canon);

  SUBCASE("coefficients and signs") {
    const auto g = parse_category_file("field p=3\ngen a\nhom a a dim=1 basis=i\nid a = 4*i - 2*i - i  # 1\ncomp i i = i\n");
    CHECK(g.structure.category().identity_coords(0) == Vec{1});
  }
  SUBCASE("empty generator list") {
    const auto z = parse_category_file("field p=5\nn=4\n");
    CHECK(z.structure.category().generator_count() == 0);
    CHECK(z.n == 4);
  }
  SUBCASE("Z and D lines") {
    const auto s = parse_category_file(corpus_text(split_structure(2, 2, {0, 1}, 4)) + "Z s t\nD s\n");
    REQUIRE(s.Z);
    REQUIRE(s.D);
    CHECK(s.Z->generators == std::vector<int>{0, 1});
    CHECK(s.D->generators == std::vector<int>{0});
  }
}

TEST_CASE("parse errors carry positions") {
  auto error_of = [](const std::string& text) {
    try {
      parse_category_file(text);
    } catch (const ParseError& e) {
      return std::tuple<std::size_t, std::size_t, std::string>{e.line(), e.column(), e.what()};
    }
    FAIL("no error");
    return std::tuple<std::size_t, std::size_t, std::string>{};
  };
  {
    const auto [line, col, msg] = error_of("field p=2\ngen a\nhom a b dim=1 basis=f\n");
    CHECK(line == 3);
    CHECK(col == 7);
    CHECK(msg.find("unknown generator 'b'") != std::string::npos);
  }
  {
    const auto [line, col, msg] = error_of("field p=7\n");
    CHECK(line == 1);
    CHECK(col == 7);
  }
  {
    const auto [line, col, msg] = error_of("field p=2\ngen a\nhom a a dim=2 basis=e,x\nid a = e\ncomp e x = e +* x\n");
    CHECK(line == 5);
    CHECK(msg.find("column") != std::string::npos);
  }
  {
    const auto [line, col, msg] = error_of("field p=2\ngen a\nhom a a dim=1 basis=e\nid a = e\nfrobnicate\n");
    CHECK(line == 5);
    CHECK(col == 1);
  }
  {
    const auto [line, col, msg] = error_of("field p=2\ngen a\ngen b\nhom a a dim=1 basis=e\nhom b b dim=1 basis=e\n");
    CHECK(msg.find("duplicate basis name") != std::string::npos);
  }
  {
    const auto [line, col, msg] =
        error_of("field p=2\ngen a\ngen b\nhom a a dim=1 basis=e\nhom b b dim=1 basis=f\nid a = e\nid b = f\ncomp e f = 0\n");
    CHECK(line == 8);
    CHECK(msg.find("not composable") != std::string::npos);
  }
}

TEST_CASE("a bad structure constant fails validation") {
  std::string bad = kDual;
  bad.replace(bad.find("comp x x = 0"), 12, "comp x x = e");
  try {
    parse_category_file(bad);
    FAIL("accepted");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("associativity/unit consistency") != std::string::npos);
    CHECK(msg.find("triple (P, x, x)") != std::string::npos);
  }
  const JobResult r = run_job_text(job(Task::validate_category), bad);
  CHECK(r.exit_code == 1);
  CHECK(Json::parse(r.report)["overall"] == "fail");
  CHECK(run_job_text(job(Task::validate_category), kDual).exit_code == 0);
}

TEST_CASE("exit statuses") {
  const std::string split = corpus_text(split_structure(2, 1, {0}, 4));
  CHECK(run_job_text(job(Task::check_axioms), split).exit_code == 0);
  CHECK(run_job_text(job(Task::verify_frobenius), split).exit_code == 0);

  JobConfig bad = job(Task::verify_theorem);
  bad.Z = "none";
  bad.D = "s";
  const JobResult r = run_job_text(bad, split);
  CHECK(r.exit_code == 3);
  CHECK(Json::parse(r.report)["error"] == "D must be a subset of Z");

  CHECK(run_job_text(job(Task::check_axioms), "field p=4\n").exit_code == 3);
  JobConfig zero_cap = job(Task::check_axioms);
  zero_cap.budget.cap_instances = 0;
  CHECK(run_job_text(zero_cap, split).exit_code == 3);
  JobConfig short_n = job(Task::check_axioms);
  short_n.n = 2;
  CHECK(run_job_text(short_n, split).exit_code == 3);

  JobConfig unknown = job(Task::verify_theorem);
  unknown.Z = "q";
  CHECK(run_job_text(unknown, split).exit_code == 3);
}

TEST_CASE("reports record seed, budgets and fixed angles") {
  const std::string text = corpus_text(split_structure(2, 2, {0, 1}, 4));
  JobConfig cfg = job(Task::verify_theorem);
  cfg.D = "s";
  const JobResult r = run_job_text(cfg, text);
  CHECK(r.exit_code == 0);
  const Json j = Json::parse(r.report);
  CHECK(j["seed"] == 5);
  CHECK(j["budgets"]["cap_instances"] == 12);
  CHECK(j["choices"]["fixed angles"].size() == 2);
  CHECK(j["choices"]["quotient generators"] == Json::parse(R"(["t"])"));

  JobConfig bq = job(Task::build_quotient);
  bq.D = "s";
  const Json q = Json::parse(run_job_text(bq, text).report);
  CHECK(q["overall"] == "pass");
  CHECK(q["choices"]["quotient hom dims"] == Json::parse("[[1]]"));
}

TEST_CASE("identical jobs give identical reports") {
  for (const auto& e : {split_structure(2, 2, {1, 0}, 4), local_algebra_candidate(3)}) {
    const std::string text = corpus_text(e);
    for (Task t : {Task::check_axioms, Task::verify_theorem}) {
      JobConfig cfg = job(t);
      const JobResult a = run_job_text(cfg, text);
      const JobResult b = run_job_text(cfg, text);
      CHECK(a.report == b.report);
      cfg.exec = Exec::serial;
      CHECK(run_job_text(cfg, text).report == a.report);
    }
  }
}

TEST_CASE("a corrupted witness file is rejected with a well-definedness witness") {
  const std::string text = corpus_text(split_structure(2, 2, {0, 1}, 4));
  JobConfig cfg = job(Task::validate_mutation_pair);
  cfg.D = "s";
  const JobResult pair = run_job_text(cfg, text);
  REQUIRE(pair.exit_code == 0);
  Json w = Json::parse(pair.report);

  cfg.task = Task::verify_theorem;
  CHECK(run_job_text(cfg, text, w.dump()).exit_code == 0);

  // zero the last map of the fixed angle at t
  Json& coords = w["choices"]["fixed angles"][1]["angle"]["maps"][3]["coords"];
  for (auto& v : coords) v = 0;
  const JobResult r = run_job_text(cfg, text, w.dump());
  CHECK(r.exit_code == 1);
  const Json j = Json::parse(r.report);
  bool found = false;
  for (const auto& v : j["verdicts"])
    if (v["axiom"] == "well-definedness of T") {
      found = true;
      CHECK(v["verdict"] == "fail");
      CHECK(!v["witnesses"].empty());
    }
  CHECK(found);

  CHECK(run_job_text(cfg, text, "{not json").exit_code == 3);
}

TEST_CASE("jobs on files and atomic output") {
  const auto dir = std::filesystem::temp_directory_path() / "nangle_cli_test";
  std::filesystem::create_directories(dir);
  const auto in = dir / "dual.cat", out = dir / "report.json";
  std::ofstream(in) << kDual;
  JobConfig cfg = job(Task::check_axioms);
  cfg.input = in.string();
  cfg.output = out.string();
  const JobResult r = run_job(cfg);
  std::ifstream s(out);
  const std::string written((std::istreambuf_iterator<char>(s)), std::istreambuf_iterator<char>());
  CHECK(written == r.report);
  cfg.input = (dir / "missing.cat").string();
  CHECK(run_job(cfg).exit_code == 3);
  std::filesystem::remove_all(dir);
}
