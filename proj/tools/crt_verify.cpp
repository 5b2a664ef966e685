// SPDX-License-Identifier: MIT
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "crt/examples.hpp"
#include "crt/suite.hpp"

// exit status: 0 all checks pass, 1 a check failed, 2 usage error
int main(int argc, char** argv) {
    CLI::App app{"verification suite for CR structures, Fefferman spaces and tractors"};
    app.require_subcommand(1);

    std::string example, filter = "all", format = "text", out;
    int points = 20;
    std::uint64_t seed = 42;
    double tol = -1.0;
    std::vector<std::string> tol_for;
    bool no_timing = false;

    auto* verify = app.add_subcommand("verify", "run the checks on one example");
    verify->add_option("--example", example, "example name (see list-examples)")->required();
    verify->add_option("--suite", filter, "all, a group, a check id or criterion:N; comma separated");
    verify->add_option("--points", points, "sample points per l-variant")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--tol", tol, "tolerance for every selected check (default: per check)");
    verify->add_option("--tol-for", tol_for, "per-check tolerance, id=value; repeatable");
    verify->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--out", out, "write the report here instead of stdout");
    verify->add_flag("--no-timing", no_timing, "report zero wall time (byte-stable output)");

    auto* list_ex = app.add_subcommand("list-examples", "registered example geometries");
    auto* list_ck = app.add_subcommand("list-checks", "registered checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list_ex->parsed()) {
        for (const auto& e : crt::builtin_examples()) {
            std::cout << e.name << "  m=" << e.m << "  l:";
            for (const auto& l : e.ells) std::cout << " " << l.name;
            std::cout << "\n    " << e.description << "\n";
        }
        return 0;
    }
    if (list_ck->parsed()) {
        for (const auto& c : crt::suite::registry()) {
            std::cout << c.id << "  [criteria";
            for (int k : c.criteria) std::cout << " " << k;
            std::cout << "]  " << crt::suite::to_string(c.measure) << " " << c.tol
                      << (c.informational ? "  info" : "") << "\n    " << c.anchor << "\n";
        }
        return 0;
    }

    crt::suite::RunConfig cfg;
    cfg.filter = filter;
    cfg.points = points;
    cfg.seed = seed;
    cfg.timing = !no_timing;
    if (tol > 0.0) cfg.tol_override["*"] = tol;
    for (const auto& s : tol_for) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || !crt::suite::find_check(s.substr(0, eq))) {
            std::cerr << "bad --tol-for " << s << "\n";
            return 2;
        }
        try {
            cfg.tol_override[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            std::cerr << "bad --tol-for " << s << "\n";
            return 2;
        }
    }

    const crt::ExampleGeometry* ex = nullptr;
    for (const auto& e : crt::builtin_examples())
        if (e.name == example) ex = &crt::find_example(example);
    if (!ex) {
        std::cerr << "unknown example " << example << "\n";
        return 2;
    }
    bool any = false;
    for (const auto& c : crt::suite::registry()) any = any || crt::suite::selected(c, filter);
    if (!any) {
        std::cerr << "suite filter " << filter << " selects no check\n";
        return 2;
    }

    const auto report = crt::suite::run_suite(*ex, cfg);
    const std::string body = crt::suite::emit_report(report, format);
    if (out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(out);
        if (!(f << body)) {
            std::cerr << "cannot write " << out << "\n";
            return 2;
        }
    }
    return report.passed() ? 0 : 1;
}
