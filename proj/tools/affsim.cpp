// affsim: build B = F<e, sigma> for a finite support, run the witness
// induction and the simple-module census, and write a JSON report.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "affsim/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Exact construction and census of algebras with prescribed simple modules"};

    affsim::RunConfig config;
    std::string spec_inline, spec_file, field, out, leading = "standard", level = "fast";
    int probe_max = -1;

    auto* spec_opt = app.add_option("--spec", spec_inline, "inline support, e.g. \"2:3,5:2\" (or a JSON spec)")
                         ->envname("AFFSIM_SPEC");
    auto* file_opt = app.add_option("--spec-file", spec_file, "path to a JSON support spec")->envname("AFFSIM_SPEC_FILE");
    spec_opt->excludes(file_opt);
    app.add_option("--field", field, "q | fp:<prime>")->envname("AFFSIM_FIELD");
    app.add_option("--lambda", config.lambda, "default | file:<path>")->envname("AFFSIM_LAMBDA");
    app.add_option("--leading-factor", leading, "standard | paper")
        ->check(CLI::IsMember({"standard", "paper"}))
        ->envname("AFFSIM_LEADING_FACTOR");
    app.add_option("--level", level, "fast | full")->check(CLI::IsMember({"fast", "full"}))->envname("AFFSIM_LEVEL");
    app.add_option("--probe-max", probe_max, "largest exponent i probed in e sigma^i e")
                          ->envname("AFFSIM_PROBE_MAX");
    app.add_option("--out", out, "report path (written atomically)")->envname("AFFSIM_OUT");
    app.add_option("--threads", config.threads, "worker threads for the census")
        ->check(CLI::PositiveNumber)
        ->envname("AFFSIM_THREADS");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : static_cast<int>(affsim::ExitCode::InputError);
    }

    if (!spec_inline.empty()) config.spec_inline = spec_inline;
    if (!spec_file.empty()) config.spec_file = spec_file;
    if (!out.empty()) config.out_path = out;
    if (probe_max != -1) config.probe_max = probe_max;
    config.leading = leading == "paper" ? affsim::LeadingFactor::Paper : affsim::LeadingFactor::Standard;
    config.level = level == "full" ? affsim::Level::Full : affsim::Level::Fast;

    try {
        if (!field.empty()) config.field = affsim::parse_field(field);
    } catch (const affsim::Error& err) {
        std::cerr << "affsim: " << err.what() << "\n";
        return static_cast<int>(affsim::ExitCode::InputError);
    }

    const auto result = affsim::run(config);
    if (result.exit_code == affsim::ExitCode::InputError || result.report.is_null())
        std::cerr << "affsim: " << result.summary << "\n";
    else
        std::cout << result.summary;
    return static_cast<int>(result.exit_code);
}
