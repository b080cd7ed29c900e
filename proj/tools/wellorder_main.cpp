#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wellorder/run.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw wellorder::Error(wellorder::Errc::InvalidInput, "cannot open input file " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Build and verify the canonical well-order a choice function induces on a finite set"};
    app.set_version_flag("--version", std::string(wellorder::kToolName) + " " + wellorder::kToolVersion);

    std::string input_path;
    std::string emit;
    std::string verify_subsets;
    std::string output_path;
    bool oracle = false;
    std::uint64_t sample_seed = 0;
    bool sample_seed_given = false;

    app.add_option("--input", input_path, "Problem document (JSON); \"-\" reads stdin")->required();
    app.add_option("--emit", emit, "Report format: json or text (overrides the document)")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--oracle", oracle, "Enable the exhaustive family enumeration (needs <= 4 atoms)");
    app.add_option("--verify-subsets", verify_subsets,
                   "Least-element check mode: exhaustive or sample:<n> (overrides the document)");
    app.add_option("--sample-seed", sample_seed, "Seed for all sampling (default 0)")
        ->each([&](const std::string&) { sample_seed_given = true; });
    app.add_option("--output", output_path, "Write the report to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        wellorder::ProblemSpec spec = wellorder::parse_spec(read_input(input_path));

        // command-line flags override document options
        if (oracle) spec.oracle = true;
        if (!emit.empty())
            spec.format = emit == "json" ? wellorder::ProblemSpec::Format::Json
                                         : wellorder::ProblemSpec::Format::Text;
        if (!verify_subsets.empty()) {
            if (verify_subsets == "exhaustive") {
                spec.verify = wellorder::ProblemSpec::Verify::Exhaustive;
            } else if (verify_subsets.rfind("sample:", 0) == 0) {
                spec.verify = wellorder::ProblemSpec::Verify::Sampled;
                try {
                    spec.sample_count = std::stoull(verify_subsets.substr(7));
                } catch (const std::exception&) {
                    throw wellorder::Error(wellorder::Errc::InvalidInput,
                                           "--verify-subsets sample:<n> needs an integer count");
                }
                if (spec.sample_count == 0)
                    throw wellorder::Error(wellorder::Errc::InvalidInput,
                                           "--verify-subsets sample count must be positive");
            } else {
                throw wellorder::Error(wellorder::Errc::InvalidInput,
                                       "--verify-subsets must be exhaustive or sample:<n>");
            }
        }
        if (sample_seed_given) spec.sample_seed = sample_seed;

        const wellorder::RunOutcome outcome = wellorder::run(spec);
        const std::string rendered = spec.format == wellorder::ProblemSpec::Format::Json
                                         ? outcome.report.dump(2) + "\n"
                                         : wellorder::render_text(outcome.report);
        if (output_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(output_path, std::ios::binary);
            if (!out)
                throw wellorder::Error(wellorder::Errc::InvalidInput,
                                       "cannot open output file " + output_path);
            out << rendered;
        }
        return outcome.exit_code;
    } catch (const wellorder::TheoremViolationError& e) {
        std::cerr << "check failure: " << e.what() << "\n";
        return 2;
    } catch (const wellorder::Error& e) {
        if (e.code() == wellorder::Errc::WitnessMismatch ||
            e.code() == wellorder::Errc::InternalInvariant) {
            std::cerr << "check failure: " << e.what() << "\n";
            return 2;
        }
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    }
}
