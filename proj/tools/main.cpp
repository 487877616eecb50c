#include "CLI11.hpp"
#include "folcoh/run.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        std::size_t first = item.find_first_not_of(" \t");
        std::size_t last = item.find_last_not_of(" \t");
        if (first == std::string::npos)
            continue;
        out.push_back(item.substr(first, last - first + 1));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology and formality workbench for invariant "
                 "coframe models of foliated manifolds"};

    std::string input;
    std::string analyses_csv;
    std::string twist = "1";
    std::vector<std::string> params;
    std::string format = "text";
    int degree = -1;
    bool check_identities = false;

    std::string analysis_list;
    for (const auto& name : folcoh::analysis_names())
        analysis_list += (analysis_list.empty() ? "" : ", ") + name;

    app.add_option("-i,--input", input, "manifest file describing the coframe model")
        ->required();
    app.add_option("--analyses", analyses_csv,
                   "comma-separated subset of: " + analysis_list + " (default: all)");
    app.add_option("--twist", twist,
                   "twist for twisted-cohomology: a rational multiple of kappa_b "
                   "or a one-form expression (default: 1)");
    app.add_option("--param", params,
                   "name=value parameter binding, repeatable, overrides the manifest");
    app.add_option("--format", format, "output format (default: text)")
        ->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--degree", degree, "restrict cohomology tables to one degree");
    app.add_flag("--check-identities", check_identities,
                 "include the operator identity checks in the run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::ifstream file(input);
    if (!file) {
        std::cerr << "error: cannot read manifest '" << input << "'\n";
        return 2;
    }
    std::ostringstream text;
    text << file.rdbuf();

    folcoh::RunConfig config;
    config.manifest_text = text.str();
    config.analyses = split_csv(analyses_csv);
    if (check_identities &&
        std::find(config.analyses.begin(), config.analyses.end(),
                  std::string("check-identities")) == config.analyses.end() &&
        !analyses_csv.empty())
        config.analyses.push_back("check-identities");
    config.twist_spec = twist;
    config.format = format == "structured" ? folcoh::OutputFormat::Structured
                                           : folcoh::OutputFormat::Text;
    config.degree_filter = degree;
    for (const auto& binding : params) {
        std::size_t eq = binding.find('=');
        if (eq == std::string::npos || eq == 0) {
            std::cerr << "error: --param expects name=value, got '" << binding << "'\n";
            return 2;
        }
        std::string name = binding.substr(0, eq);
        std::string value = binding.substr(eq + 1);
        try {
            config.param_overrides[name] = folcoh::scalar_from_string(value);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: bad value for parameter '" << name << "': " << e.what()
                      << "\n";
            return 2;
        }
    }

    folcoh::RunResult result = folcoh::run_analyses(config);
    std::cout << result.output;
    return result.exit_code;
}
