#ifndef MTR_CLI_HPP
#define MTR_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mtr {

// Everything a run needs, gathered from flags. No environment lookups:
// a command line alone reproduces a run byte for byte.
struct RunConfig {
    std::string matrix_text;    // -m/--matrix
    std::string file;           // --file, alternative matrix source
    long bound = 8;             // witness search box
    std::vector<long> primes;   // empty = library default filter primes
    long nmax = 12;             // sequence horizon
    long mmax = 4;              // power cap in the two-generator scan
    long height = 10;           // commutant unit coefficient box
    long range = 12;            // exponent window for relation scans
    long bits = 96;             // float precision
    std::uint64_t seed = 1;     // corpus generator seed
    long dim = 2;               // corpus matrix size
    long count = 20;            // corpus batch size
    long steps = 12;            // elementary operations per corpus sample
    std::string format = "text";    // json | csv | text
    bool strict = false;        // Unknown verdicts exit 2
    bool timings = false;       // include wall-clock block (breaks byte determinism)
};

// cmd is one of: rank2, rank, vrank, delta, powers, nielsen, spectral,
// corpus. Writes the report to `out`, diagnostics to `err`. Returns the
// process exit code: 0 success, 1 usage or input failure, 2 when strict
// and the verdict stayed Unknown.
int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out,
                std::ostream& err);

} // namespace mtr

#endif
