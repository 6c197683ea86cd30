#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "orbimorse/commands.hpp"

using namespace orbimorse;

int main(int argc, char** argv) {
    CLI::App app{"Orbifold Morse complexes over the rationals"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::string convention = "plus";
    std::string corpus_dir = default_corpus_dir().string();
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--convention", convention, "Boundary convention")->check(CLI::IsMember({"plus", "minus"}));
    app.add_option("--corpus-dir", corpus_dir, "Directory of bundled instances");

    std::string path, out, action;
    std::optional<std::string> filter;
    auto* validate = app.add_subcommand("validate", "Check every law of an instance");
    validate->add_option("path", path, "Instance file")->required();
    auto* homology = app.add_subcommand("homology", "Boundary matrices and Betti numbers");
    homology->add_option("path", path, "Instance file")->required();
    auto* derive = app.add_subcommand("derive", "Write the intrinsic system of a global quotient");
    derive->add_option("path", path, "Instance file")->required();
    derive->add_option("out", out, "Output file")->required();
    auto* compare = app.add_subcommand("compare", "Morse against simplicial quotient homology");
    compare->add_option("path", path, "Instance file")->required();
    auto* corpus = app.add_subcommand("corpus", "List or run the bundled instances");
    corpus->add_option("action", action, "list or run")->required()->check(CLI::IsMember({"list", "run"}));
    corpus->add_option("filter", filter, "Run a single instance by name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 4;
    }

    const auto conv = convention == "minus" ? Convention::Minus : Convention::Plus;
    const auto resolved = resolve_instance(path, corpus_dir);
    Report report;
    if (*validate) {
        report = cmd_validate(resolved);
    } else if (*homology) {
        report = cmd_homology(resolved, conv);
    } else if (*derive) {
        report = cmd_derive(resolved, out);
    } else if (*compare) {
        report = cmd_compare(resolved);
    } else if (action == "list") {
        report = cmd_corpus_list(corpus_dir);
    } else {
        report = cmd_corpus_run(corpus_dir, filter);
    }
    std::cout << (format == "csv" ? render_csv(report) : render_text(report));
    return exit_code(report.status);
}
