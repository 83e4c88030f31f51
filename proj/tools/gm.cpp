// gm: Gauss-Manin connection data of an isolated hypersurface singularity
// from the command line. Exact rational output; see README for the schema.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gm/gm.hpp"

namespace {

long env_default_prec() {
    if (const char* env = std::getenv("GM_DEFAULT_PREC")) {
        try {
            const long v = std::stol(env);
            if (v >= 2) return v;
        } catch (...) {
        }
        std::cerr << "warning: ignoring invalid GM_DEFAULT_PREC\n";
    }
    return 10;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauss-Manin connection data of isolated hypersurface singularities"};
    app.footer("Commands: milnor, basis, tmatrix, connection, saturate, spectrum, all\n"
               "Example:  gm all \"x^2+y^3\"");

    std::string command_name;
    std::string poly_text;
    const long default_prec = env_default_prec();
    long prec_s = default_prec;
    long prec_t = default_prec;
    std::optional<int> prec_x;
    std::string format = "json";
    bool no_stability = false;

    app.add_option("command", command_name,
                   "one of: milnor, basis, tmatrix, connection, saturate, spectrum, all")
        ->required();
    app.add_option("polynomial", poly_text, "polynomial in x,y,z,w or x0..x9, e.g. \"x^2+y^3\"")
        ->required();
    app.add_option("--prec-s", prec_s, "s-adic order of Brieskorn reductions (default 10)");
    app.add_option("--prec-x", prec_x, "x-degree certification bound (default max(10, 3*deg f))");
    app.add_option("--prec-t", prec_t, "t-adic precision of connection data (default 10)");
    app.add_option("--format", format, "json or table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--no-stability-check", no_stability,
                 "skip the (D+5, N+5) recomputation cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors exit 1
    }

    const auto cmd = gm::command_from_string(command_name);
    if (!cmd) {
        std::cerr << "error: unknown command '" << command_name << "'\n";
        return 1;
    }

    gm::RunConfig cfg;
    cfg.prec_s = prec_s;
    cfg.prec_t = prec_t;
    cfg.prec_x = prec_x;
    cfg.format = format == "table" ? gm::OutputFormat::Table : gm::OutputFormat::Json;
    cfg.stability_check = !no_stability;

    try {
        const gm::MultiPoly f = gm::parse_polynomial(poly_text);
        const gm::Report rep = gm::run(*cmd, f, cfg);
        std::cout << gm::render(rep, cfg.format) << "\n";
        return 0;
    } catch (const gm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
