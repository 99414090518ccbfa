#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtr/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"exact rank, orbit-index and Nielsen-class tools for "
                 "lattice-by-cyclic mapping tori"};
    app.require_subcommand(1);

    mtr::RunConfig cfg;
    std::string cmd;

    struct Sub {
        const char* name;
        const char* desc;
    };
    const std::vector<Sub> subs = {
        {"rank2", "exact two-generator decision for a 2x2 matrix"},
        {"rank", "rank verdict and bounds for any dimension"},
        {"vrank", "virtual rank via rational canonical block count"},
        {"delta", "orbit-lattice index sequence delta_n"},
        {"powers", "index sequence with recurrence and two-generator scan"},
        {"nielsen", "generating-pair class count / infinite-index probe"},
        {"spectral", "certified eigenvalues and growth constant"},
        {"corpus", "seeded random unimodular batch report"},
    };

    for (const Sub& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.desc);
        sub->add_option("-m,--matrix", cfg.matrix_text, "matrix text: \"0 1; 1 1\" or [[0,1],[1,1]]");
        sub->add_option("--file", cfg.file, "read the matrix from a file");
        sub->add_option("--bound", cfg.bound, "witness search box half-width");
        sub->add_option("--primes", cfg.primes, "filter primes")->delimiter(',');
        sub->add_option("--nmax", cfg.nmax, "sequence horizon");
        sub->add_option("--mmax", cfg.mmax, "power cap in the two-generator scan");
        sub->add_option("--height", cfg.height, "commutant unit coefficient box");
        sub->add_option("--range", cfg.range, "exponent window for relation scans");
        sub->add_option("--bits", cfg.bits, "float precision in bits");
        sub->add_option("--seed", cfg.seed, "deterministic generator seed");
        sub->add_option("--dim", cfg.dim, "corpus matrix size");
        sub->add_option("--count", cfg.count, "corpus batch size");
        sub->add_option("--steps", cfg.steps, "elementary operations per corpus sample");
        sub->add_option("--format", cfg.format, "json, csv or text");
        sub->add_flag("--strict", cfg.strict, "exit 2 on Unknown verdicts");
        sub->add_flag("--timings", cfg.timings, "include wall-clock timings");
        sub->callback([&cmd, name = std::string(s.name)] { cmd = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    return mtr::run_command(cmd, cfg, std::cout, std::cerr);
}
