#include <iostream>

#include <CLI11.hpp>

#include "biprox/commands.hpp"

int main(int argc, char** argv) {
    using namespace biprox;
    CLI::App app{"biprox: 2-box invariants of group-subgroup inclusions"};
    app.require_subcommand(1);
    CommandOptions o;

    auto add_group = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--group,-g", o.group, "catalog name, perm:<cycles> or file:<path>");
        if (required) opt->required();
        c->add_option("--subgroup,-s", o.subgroup, "trivial, whole or cycle-notation generators");
        c->add_option("--max-order", o.max_order, "group order cap")->check(CLI::PositiveNumber);
        c->add_option("--seed", o.seed, "seed for randomized numerics");
    };

    auto* analyze = app.add_subcommand("analyze", "classification report for H <= G");
    add_group(analyze, true);
    analyze->add_option("--side", o.side, "primal, dual or both")->check(CLI::IsMember({"primal", "dual", "both"}));
    analyze->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

    auto* table = app.add_subcommand("table", "coproduct table of the 2-box algebra");
    add_group(table, true);
    table->add_option("--side", o.side, "primal or dual")->check(CLI::IsMember({"primal", "dual"}));
    table->add_option("--basis", o.basis)->check(CLI::IsMember({"auto", "cosets", "matrix-units"}));
    table->add_flag("--check-paper", o.check_paper, "compare with the stored reference tables");
    table->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

    auto* survey = app.add_subcommand("survey", "classify catalog inclusions up to an index bound");
    survey->add_option("--max-index", o.max_index);
    survey->add_option("--max-order", o.max_order)->check(CLI::PositiveNumber);
    survey->add_option("--jobs,-j", o.jobs)->check(CLI::PositiveNumber);
    survey->add_option("--seed", o.seed);
    survey->add_option("--group,-g", o.groups, "restrict to these groups (repeatable)");
    survey->add_option("--csv", o.csv_path, "also write the per-class CSV here");
    survey->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

    auto* lattice = app.add_subcommand("lattice", "interval [H,G] as DOT or JSON");
    add_group(lattice, true);
    lattice->add_option("--format", o.format)->check(CLI::IsMember({"dot", "json"}));

    auto* fusion = app.add_subcommand("fusion-check", "verify a fusion ring given as r blocks of r x r integers");
    fusion->add_option("file", o.file)->required();
    fusion->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

    auto* catalog = app.add_subcommand("catalog", "list built-in groups");
    catalog->add_option("--max-order", o.max_order)->check(CLI::PositiveNumber);
    catalog->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*lattice && lattice->count("--format") == 0) o.format = "dot";
        if (*table && table->count("--side") == 0) o.side = "primal";
        if (*analyze) return cmd_analyze(o, std::cout);
        if (*table) return cmd_table(o, std::cout);
        if (*survey) return cmd_survey(o, std::cout);
        if (*lattice) return cmd_lattice(o, std::cout);
        if (*fusion) return cmd_fusion_check(o, std::cout);
        if (*catalog) return cmd_catalog(o, std::cout);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
