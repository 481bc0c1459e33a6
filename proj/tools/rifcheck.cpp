#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rif/limits.hpp"
#include "rif/opacity.hpp"
#include "rif/property_file.hpp"
#include "rif/runner.hpp"

using namespace rif;

namespace {

constexpr int kUsage = 2;
constexpr int kCeiling = 3;

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

std::string pick_language(const PropertyFile& f, const std::string& requested) {
    if (!requested.empty())
        return requested;
    if (f.languages.size() == 1)
        return f.languages.front().name;
    throw Error("the file defines " + std::to_string(f.languages.size()) + " languages; choose one with --language");
}

const Nfa& language_of(const BoundModel& m, const std::string& name) {
    auto it = m.env.languages.find(name);
    if (it == m.env.languages.end())
        throw Error("no language named '" + name + "'");
    return it->second;
}

void print_words(const Alphabet& A, const std::vector<Word>& words) {
    for (const auto& w : words)
        std::cout << "  " << A.render(w) << "\n";
}

PropertyFile raptors_file(std::size_t goats, std::size_t raptors, const std::string& gates, const std::string& ambush) {
    std::string text = "alphabet raptors\n\nlanguage DR = raptors goats=" + std::to_string(goats) +
                       " raptors=" + std::to_string(raptors) + " gates=" + gates + " ambush=" + ambush +
                       "\nlanguage phi = nonfix O_SD DR\n\nobserver O_SD = osd\n\n"
                       "assert opacity system=DR secret=phi observer=O_SD\n";
    return parse_property_text(text);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checks rational information-flow properties of regular systems."};
    app.require_subcommand(1);

    std::size_t max_states = default_state_limit();
    app.add_option("--max-states", max_states, "State ceiling per construction (0: none; default from RIF_MAX_STATES)");

    auto* check_cmd = app.add_subcommand("check", "Check every assertion of a property file");
    std::string file, report_format = "text", mirror;
    unsigned jobs = 1;
    bool timings = false;
    check_cmd->add_option("file", file, "Property file (text or JSON)")->required();
    check_cmd->add_option("--max-states", max_states, "State ceiling per construction");
    check_cmd->add_option("--report", report_format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    check_cmd->add_option("--mirror", mirror, "Also write the structured report to this path");
    check_cmd->add_option("--jobs", jobs, "Check up to this many assertions concurrently")->check(CLI::Range(1u, 256u));
    check_cmd->add_flag("--timings", timings, "Include wall times in the report");

    auto* raptors_cmd = app.add_subcommand("raptors", "Dining Raptors opacity against the selective declassification observer");
    std::size_t goats = 1, raptors = 1;
    std::string gates = "1,3", ambush = "broadcast", emit;
    raptors_cmd->add_option("--goats", goats, "Number of goats")->check(CLI::PositiveNumber);
    raptors_cmd->add_option("--raptors", raptors, "Number of raptors")->check(CLI::PositiveNumber);
    raptors_cmd->add_option("--gates", gates, "Open gates: a list such as 1,3, or all, none, dismantled");
    raptors_cmd->add_option("--ambush", ambush, "Gate synchronization on ambushes")
        ->check(CLI::IsMember({"broadcast", "handshake"}));
    raptors_cmd->add_option("--emit", emit, "Write the scenario as a property file");
    raptors_cmd->add_option("--max-states", max_states, "State ceiling per construction");

    auto* apply_cmd = app.add_subcommand("apply", "Print the image of a language under an observer");
    std::string observer_name, language_name;
    std::size_t max_len = 6;
    apply_cmd->add_option("file", file, "Property file")->required();
    apply_cmd->add_option("--observer", observer_name, "Observer name")->required();
    apply_cmd->add_option("--language", language_name, "Language name")->required();
    apply_cmd->add_option("--max-len", max_len, "Longest word listed");
    apply_cmd->add_option("--max-states", max_states, "State ceiling per construction");

    auto* enum_cmd = app.add_subcommand("enumerate", "List the words of a language in length-lexicographic order");
    enum_cmd->add_option("file", file, "Property file")->required();
    enum_cmd->add_option("--language", language_name, "Language name (optional when the file defines one)");
    enum_cmd->add_option("--max-len", max_len, "Longest word listed")->required();
    enum_cmd->add_option("--max-states", max_states, "State ceiling per construction");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }

    try {
        if (*check_cmd || *raptors_cmd) {
            PropertyFile pf;
            if (*check_cmd) {
                pf = load_property_file(file);
            } else {
                pf = raptors_file(goats, raptors, gates, ambush);
                if (!emit.empty() && !write_file(emit, print_property_text(pf))) {
                    std::cerr << "rifcheck: cannot write " << emit << "\n";
                    return kUsage;
                }
            }
            auto report = run(pf, {max_states, jobs});
            if (report_format == "structured")
                std::cout << render_structured(report, timings);
            else
                std::cout << render_text(report, timings);
            if (!mirror.empty() && !write_file(mirror, render_structured(report, timings))) {
                std::cerr << "rifcheck: cannot write " << mirror << "\n";
                return kUsage;
            }
            if (*raptors_cmd && report.results.front().status == Status::fails) {
                // list the observation class of the disclosing word
                ScopedStateLimit limit(max_states);
                auto model = bind(pf);
                const auto& A = *model.alphabet;
                auto w = A.parse_word(*report.results.front().witness);
                auto cls = observation_class(model.env.languages.at("DR"), model.env.observers.at("O_SD"), w);
                std::cout << "words observed like the disclosing word:\n";
                print_words(A, enumerate(cls, w.size() + 2 * raptors));
            }
            return report.exit_code();
        }

        ScopedStateLimit limit(max_states);
        auto pf = load_property_file(file);
        auto model = bind(pf);
        const auto& A = *model.alphabet;
        if (*apply_cmd) {
            auto it = model.env.observers.find(observer_name);
            if (it == model.env.observers.end())
                throw Error("no observer named '" + observer_name + "'");
            auto image = trim(rif::apply(it->second, language_of(model, language_name)));
            std::cout << observer_name << "(" << language_name << "): " << image.num_states() << " states, "
                      << image.num_transitions() << " transitions\n";
            print_words(A, enumerate(image, max_len));
            return 0;
        }
        auto name = pick_language(pf, language_name);
        const auto& l = language_of(model, name);
        std::cout << name << ": " << l.num_states() << " states, " << l.num_transitions() << " transitions\n";
        print_words(A, enumerate(l, max_len));
        return 0;
    } catch (const StateLimitExceeded& e) {
        std::cerr << "rifcheck: " << e.what() << "\n";
        return kCeiling;
    } catch (const std::exception& e) {
        std::cerr << "rifcheck: " << e.what() << "\n";
        return kUsage;
    }
}
