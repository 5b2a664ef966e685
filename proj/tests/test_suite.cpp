// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "crt/examples.hpp"
#include "crt/suite.hpp"

using namespace crt;
using namespace crt::suite;

namespace {

RunConfig quick(const std::string& filter = "all", int points = 3) {
    RunConfig c;
    c.filter = filter;
    c.points = points;
    c.timing = false;
    return c;
}

const CheckResult& result(const Report& r, const std::string& id) {
    for (const auto& c : r.checks)
        if (c.info.id == id) return c;
    throw std::runtime_error("no check " + id);
}

int run(const std::string& args) {
    const std::string cmd = std::string(CRT_VERIFY) + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST_CASE("registry: unique sorted ids, anchors, every criterion covered") {
    const auto& reg = registry();
    REQUIRE(!reg.empty());
    std::set<int> gating;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        CHECK(!reg[i].anchor.empty());
        CHECK(!reg[i].criteria.empty());
        CHECK(reg[i].tol > 0.0);
        if (i) CHECK(reg[i - 1].id < reg[i].id);
        CHECK(reg[i].id.find('.') != std::string::npos);
        if (!reg[i].informational) gating.insert(reg[i].criteria.begin(), reg[i].criteria.end());
        CHECK(find_check(reg[i].id) == &reg[i]);
    }
    for (int k = 1; k <= 12; ++k) {
        INFO("criterion " << k);
        CHECK(gating.count(k) == 1);
    }
    CHECK(find_check("no.such") == nullptr);
}

TEST_CASE("filters") {
    const CheckInfo& c = *find_check("reconstruction.round_trip");
    CHECK(selected(c, "all"));
    CHECK(selected(c, "reconstruction"));
    CHECK(selected(c, "criterion:9"));
    CHECK(selected(c, "algebra,reconstruction.round_trip"));
    CHECK_FALSE(selected(c, "criterion:1"));
    CHECK_FALSE(selected(c, "recon"));
}

TEST_CASE("every selected check appears exactly once and the report is deterministic") {
    const auto& ex = find_example("heisenberg_m1");
    Report a = run_suite(ex, quick());
    CHECK(a.checks.size() == registry().size());
    for (std::size_t i = 0; i < a.checks.size(); ++i) CHECK(a.checks[i].info.id == registry()[i].id);
    Report b = run_suite(ex, quick());
    CHECK(emit_report(a, "json") == emit_report(b, "json"));
    CHECK(emit_report(a, "text") == emit_report(b, "text"));
    RunConfig other = quick();
    other.seed = 7;
    CHECK(emit_report(run_suite(ex, other), "json") != emit_report(a, "json"));
}

TEST_CASE("scalar curvature of the flat Fefferman space") {
    Report r = run_suite(find_example("heisenberg_m1"), quick("scalar"));
    REQUIRE(r.checks.size() == 2);
    for (const auto& c : r.checks) {
        CHECK(c.status == Status::pass);
        CHECK(c.max_abs <= 1e-10);
        CHECK(c.points == 3 * static_cast<int>(find_example("heisenberg_m1").ells.size()));
    }
}

TEST_CASE("statuses, skips and tolerance overrides") {
    const auto& ex = find_example("heisenberg_m2");
    RunConfig cfg = quick("flat,ricci.nonvacuity");
    Report r = run_suite(ex, cfg);
    CHECK(result(r, "ricci.nonvacuity").status == Status::skip);
    CHECK(result(r, "flat.fefferman_scalar").status == Status::pass);
    // Ric(S,S) = m/2 on the flat space
    const auto& ric = result(r, "flat.fefferman_ricci");
    CHECK(ric.status == Status::fail);
    CHECK(ric.max_abs == doctest::Approx(1.0));
    CHECK_FALSE(r.passed());
    cfg.tol_override["flat.fefferman_ricci"] = 1.5;
    Report r2 = run_suite(ex, cfg);
    CHECK(result(r2, "flat.fefferman_ricci").status == Status::pass);
    CHECK(result(r2, "flat.fefferman_ricci").tol == 1.5);
    CHECK(r2.passed());
    // a global override also reaches non-vacuity checks, which then fail
    RunConfig g = quick("complex_element");
    g.tol_override["*"] = 10.0;
    Report r3 = run_suite(ex, g);
    CHECK(result(r3, "complex_element.conclusions").status == Status::pass);
    CHECK(result(r3, "complex_element.margins").status == Status::fail);
}

TEST_CASE("exceptions inside checks become failed checks") {
    ExampleGeometry bad = find_example("heisenberg_m2");
    bad.name = "incompatible";
    bad.structure = incompatible_heisenberg(2);
    Report r;
    REQUIRE_NOTHROW(r = run_suite(bad, quick("scalar,tractor,algebra.jacobi")));
    CHECK(result(r, "algebra.jacobi").status == Status::pass);
    for (const auto& c : r.checks) {
        if (c.info.group() == "algebra" || c.status == Status::skip) continue;
        INFO(c.info.id);
        CHECK(c.status == Status::fail);
        CHECK(c.note.rfind("exception", 0) == 0);
    }
    CHECK_THROWS_AS(run_suite(bad, quick("all", 0)), std::invalid_argument);
}

TEST_CASE("report formats") {
    Report r = run_suite(find_example("heisenberg_m1"), quick("algebra,flat"));
    const std::string js = emit_report(r, "json");
    CHECK(validate_report_json(js).empty());
    auto j = nlohmann::json::parse(js);
    CHECK(j["schema_version"] == schema_version);
    CHECK(j["checks"].size() == r.checks.size());
    CHECK(j["meta"]["passed"] == r.passed());
    // round trip of the numbers
    CHECK(j["checks"][0]["max_abs"].get<double>() == r.checks[0].max_abs);

    auto broken = j;
    broken["checks"][0].erase("anchor");
    CHECK_FALSE(validate_report_json(broken.dump()).empty());
    auto unsorted = j;
    std::swap(unsorted["checks"][0], unsorted["checks"][1]);
    CHECK_FALSE(validate_report_json(unsorted.dump()).empty());
    CHECK_FALSE(validate_report_json("{").empty());
    auto version = j;
    version["schema_version"] = schema_version + 1;
    CHECK_FALSE(validate_report_json(version.dump()).empty());

    const std::string text = emit_report(r, "text");
    for (const auto& c : r.checks) CHECK(text.find(c.info.id) != std::string::npos);
    int lines = 0;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) ++lines;
    CHECK(lines == static_cast<int>(r.checks.size()) + 3);
    CHECK_THROWS_AS(emit_report(r, "xml"), std::invalid_argument);
}

TEST_CASE("command line exit codes") {
    CHECK(run("list-examples") == 0);
    CHECK(run("list-checks") == 0);
    CHECK(run("verify --example heisenberg_m1 --suite algebra --points 2") == 0);
    CHECK(run("verify --example heisenberg_m1 --suite flat --points 2") == 1);
    CHECK(run("verify --example nowhere") == 2);
    CHECK(run("verify --example heisenberg_m1 --suite nothing") == 2);
    CHECK(run("verify --example heisenberg_m1 --format xml") == 2);
    CHECK(run("verify --example heisenberg_m1 --points 0") == 2);
    CHECK(run("verify --example heisenberg_m1 --tol-for bogus=1") == 2);
    CHECK(run("") == 2);
    const std::string out = "suite_cli_report.json";
    CHECK(run("verify --example heisenberg_m1 --suite algebra --points 2 --format json --no-timing --out " + out) == 0);
    std::ifstream f(out);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(validate_report_json(ss.str()).empty());
    std::remove(out.c_str());
}
