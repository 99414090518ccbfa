#include "mtr/cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mtr/errors.hpp"
#include "mtr/io.hpp"
#include "mtr/linalg.hpp"
#include "mtr/nielsen.hpp"
#include "mtr/powers.hpp"
#include "mtr/rank2.hpp"
#include "mtr/rng.hpp"
#include "mtr/spectral.hpp"

namespace mtr {

namespace {

using ojson = nlohmann::ordered_json;

// All bignums travel as decimal strings: JSON numbers would silently
// truncate past 2^53 in downstream tooling.
std::string jint(const Int& x) { return x.get_str(); }
std::string jrat(const Rat& x) { return x.get_str(); }
std::string jreal(const Real& x) { return x.str(24); }

ojson jvec(const Vec& v) {
    ojson a = ojson::array();
    for (const Int& x : v) a.push_back(jint(x));
    return a;
}

ojson jmat(const IntMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jint(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson jwitness(const std::optional<CyclicWitness>& w) {
    if (!w) return nullptr;
    return ojson{{"v", jvec(w->v)}, {"orbit_det", jint(w->det_w)}};
}

std::vector<long> effective_primes(const RunConfig& cfg) {
    return cfg.primes.empty() ? default_filter_primes() : cfg.primes;
}

ojson config_json(const RunConfig& cfg) {
    ojson primes = ojson::array();
    for (long p : effective_primes(cfg)) primes.push_back(p);
    return ojson{
        {"bound", cfg.bound},   {"primes", std::move(primes)},
        {"nmax", cfg.nmax},     {"mmax", cfg.mmax},
        {"height", cfg.height}, {"range", cfg.range},
        {"bits", cfg.bits},     {"seed", cfg.seed},
        {"dim", cfg.dim},       {"count", cfg.count},
        {"steps", cfg.steps},   {"format", cfg.format},
        {"strict", cfg.strict}, {"timings", cfg.timings},
    };
}

ojson sequence_json(const DeltaSequence& s) {
    ojson vals = ojson::array();
    for (const DeltaValue& v : s.values)
        vals.push_back(ojson{{"n", v.n},
                             {"delta", index_to_string(v.delta)},
                             {"signed", jint(v.signed_det)}});
    return vals;
}

std::string sequence_csv(const DeltaSequence& s) {
    std::string csv = "n,delta,is_rank2_power\n";
    for (const DeltaValue& v : s.values) {
        bool unit = v.delta && *v.delta == 1;
        csv += std::to_string(v.n) + ',' + index_to_string(v.delta) + ','
               + (unit ? '1' : '0') + '\n';
    }
    return csv;
}

struct Outcome {
    bool unknown = false;           // drives --strict exit 2
    std::optional<std::string> csv; // set only where CSV is defined
};

Outcome cmd_rank2(const IntMatrix& m, const RunConfig&, ojson& res) {
    Rank2Decision dec = decide_rank2_d2(m);
    BinaryQuadraticForm q = orbit_form(m);
    res["verdict"] = to_string(dec.verdict);
    res["orbit_form"] = ojson{{"a", jint(q.a)}, {"b", jint(q.b)}, {"c", jint(q.c)}};
    res["witness"] = jwitness(dec.witness);
    return {dec.verdict == RankVerdict::Unknown, {}};
}

Outcome cmd_rank(const IntMatrix& m, const RunConfig& cfg, ojson& res) {
    RankReport rep = rank_report(m, cfg.bound, effective_primes(cfg));
    res["verdict"] = to_string(rep.verdict);
    res["lower_bound"] = rep.lower_bound;
    res["upper_bound"] = rep.upper_bound;
    res["vrank"] = rep.vrank;
    res["search_bound"] = rep.search_bound;
    ojson pv = ojson::array();
    for (auto [p, ok] : rep.filters.prime_verdicts) pv.push_back(ojson{{"p", p}, {"cyclic", ok}});
    res["filters"] = ojson{{"pass", rep.filters.pass},
                           {"minpoly_equals_charpoly", rep.filters.minpoly_equals_charpoly},
                           {"prime_verdicts", std::move(pv)},
                           {"reason", rep.filters.reason}};
    res["witness"] = jwitness(rep.witness);
    return {rep.verdict == RankVerdict::Unknown, {}};
}

Outcome cmd_vrank(const IntMatrix& m, const RunConfig&, ojson& res) {
    res["vrank"] = vrank(m);
    return {};
}

Outcome cmd_delta(const IntMatrix& m, const RunConfig& cfg, ojson& res) {
    DeltaSequence s = delta_scan(m, cfg.nmax, cfg.bound);
    res["witness"] = jwitness(s.witness);
    res["values"] = sequence_json(s);
    ojson rp = ojson::array();
    for (long n : s.rank2_powers) rp.push_back(n);
    res["rank2_powers"] = std::move(rp);
    return {false, sequence_csv(s)};
}

Outcome cmd_powers(const IntMatrix& m, const RunConfig& cfg, ojson& res) {
    DeltaSequence s = delta_scan(m, cfg.nmax, cfg.bound);
    res["witness"] = jwitness(s.witness);
    res["values"] = sequence_json(s);

    std::vector<Rat> signature;
    for (const DeltaValue& v : s.values) signature.emplace_back(v.signed_det);
    try {
        LinearRecurrence rec = min_recurrence(signature);
        ojson coeffs = ojson::array(), init = ojson::array();
        for (const Rat& c : rec.coeffs) coeffs.push_back(jrat(c));
        for (const Rat& c : rec.initial) init.push_back(jrat(c));
        res["recurrence"] = ojson{{"order", rec.order},
                                  {"coeffs", std::move(coeffs)},
                                  {"initial", std::move(init)}};
    } catch (const InsufficientData& e) {
        res["recurrence"] = nullptr;
        res["recurrence_note"] = e.what();
    }

    if (m.rows() == 2) {
        Int dm = det(m);
        if (dm == 1 || dm == -1) {
            TraceParams2x2 p{m.at(0, 0) + m.at(1, 1), dm == 1 ? -1 : 1};
            ojson cn = ojson::array();
            for (long n = 1; n <= cfg.nmax; ++n) {
                CnPair c = cn_2x2(p, n);
                cn.push_back(ojson{{"n", n}, {"c", jint(c.c)}, {"d", jint(c.d)}});
            }
            res["cn"] = std::move(cn);
        } else {
            res["cn"] = nullptr;
        }
    } else {
        res["cn"] = nullptr;
    }

    Min2GenResult g = min_2gen_index(m, cfg.nmax, cfg.mmax, cfg.bound);
    res["min_2gen"] = ojson{{"index", g.index ? ojson(jint(*g.index)) : ojson(nullptr)},
                            {"m_max", g.m_max},
                            {"box", g.box},
                            {"best_m", g.best_m},
                            {"best_a", jvec(g.best_a)}};
    return {false, sequence_csv(s)};
}

Outcome cmd_nielsen(const IntMatrix& m, const RunConfig& cfg, ojson& res) {
    NielsenReport rep;
    bool counted = false;
    if (m.rows() == 2) {
        try {
            rep = nielsen_count_d2(m);
            counted = true;
        } catch (const Error&) {
        }
    }
    if (!counted) rep = infinite_nielsen_probe(m, cfg.height, cfg.range, cfg.bits);

    res["verdict"] = to_string(rep.verdict);
    res["count"] = counted ? ojson(jint(rep.count)) : ojson(nullptr);
    res["exponent"] = counted ? ojson(jint(rep.exponent)) : ojson(nullptr);
    res["fundamental_unit"] =
        rep.fundamental_unit ? jmat(*rep.fundamental_unit) : ojson(nullptr);
    res["witness_h"] = rep.witness_h ? jmat(*rep.witness_h) : ojson(nullptr);
    res["height"] = counted ? cfg.height : rep.height;
    res["range"] = counted ? cfg.range : rep.range;
    res["note"] = rep.note;

    // Class listing needs a first generator; only a verified cyclic
    // vector makes the listing meaningful, so skip when none is in reach.
    if (auto w = cyclic_search(m, cfg.bound)) {
        try {
            PairClassReport pc =
                generating_pair_classes(m, w->v, cfg.height, cfg.range, cfg.bits);
            ojson reps = ojson::array(), gens = ojson::array();
            for (const IntMatrix& h : pc.reps) reps.push_back(jmat(h));
            for (const Vec& v : pc.second_generators) gens.push_back(jvec(v));
            res["classes"] = ojson{
                {"reps", std::move(reps)},
                {"second_generators", std::move(gens)},
                {"infinite", pc.infinite},
                {"exact_d2_count",
                 pc.exact_d2_count ? ojson(jint(*pc.exact_d2_count)) : ojson(nullptr)},
            };
        } catch (const Error& e) {
            res["classes"] = nullptr;
            res["classes_note"] = e.what();
        }
    } else {
        res["classes"] = nullptr;
        res["classes_note"] = "no cyclic witness within the search bound";
    }
    return {rep.verdict == NielsenVerdict::Unknown, {}};
}

Outcome cmd_spectral(const IntMatrix& m, const RunConfig& cfg, ojson& res) {
    Poly cp = charpoly(m);
    ojson coeffs = ojson::array();
    for (long i = 0; i <= cp.degree(); ++i) coeffs.push_back(jint(cp[i]));
    res["charpoly"] = std::move(coeffs);

    Spectrum sp = roots(cp, cfg.bits);
    ojson entries = ojson::array();
    for (const SpectrumEntry& e : sp.entries)
        entries.push_back(ojson{{"re", jreal(e.value.re)},
                                {"im", jreal(e.value.im)},
                                {"multiplicity", e.multiplicity},
                                {"radius", jreal(e.radius)}});
    res["spectrum"] = std::move(entries);

    GrowthReport g = growth_K(sp);
    res["growth"] = ojson{{"k", jreal(g.k)}, {"moduli_distinct", g.moduli_distinct}};

    try {
        GrowthComparison c = growth_comparison(m, cfg.nmax, cfg.bits, cfg.bound);
        res["comparison"] = ojson{
            {"n", c.n},
            {"k", jreal(c.k)},
            {"skipped", c.skipped},
            {"deviation", c.skipped ? ojson(nullptr) : ojson(jreal(c.deviation))},
        };
    } catch (const Error& e) {
        res["comparison"] = nullptr;
        res["comparison_note"] = e.what();
    }
    return {};
}

Outcome cmd_corpus(const RunConfig& cfg, ojson& res) {
    Rng rng(cfg.seed);
    ojson entries = ojson::array();
    std::map<std::string, long> tally;
    bool unknown = false;
    std::string csv = "index,dim,det,verdict\n";
    for (long i = 0; i < cfg.count; ++i) {
        IntMatrix m = random_unimodular(static_cast<std::size_t>(cfg.dim), cfg.steps, rng);
        Int dm = det(m);
        RankVerdict v;
        std::optional<CyclicWitness> w;
        if (cfg.dim == 2) {
            Rank2Decision dec = decide_rank2_d2(m);
            v = dec.verdict;
            w = std::move(dec.witness);
        } else {
            RankReport rep = rank_report(m, cfg.bound, effective_primes(cfg));
            v = rep.verdict;
            w = std::move(rep.witness);
        }
        entries.push_back(ojson{{"index", i},
                                {"matrix", jmat(m)},
                                {"det", jint(dm)},
                                {"verdict", to_string(v)},
                                {"witness", jwitness(w)}});
        ++tally[to_string(v)];
        unknown = unknown || v == RankVerdict::Unknown;
        csv += std::to_string(i) + ',' + std::to_string(cfg.dim) + ',' + jint(dm) + ','
               + to_string(v) + '\n';
    }
    res["entries"] = std::move(entries);
    ojson summary;
    for (RankVerdict v : {RankVerdict::Rank2, RankVerdict::Rank3, RankVerdict::RankAtLeast3,
                          RankVerdict::Unknown})
        summary[to_string(v)] = tally[to_string(v)];
    res["summary"] = std::move(summary);
    return {unknown, std::move(csv)};
}

std::string text_matrix(const ojson& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (j) out += ' ';
            out += m[i][j].get<std::string>();
        }
    }
    return out;
}

std::string text_witness(const ojson& w) {
    if (w.is_null()) return "none";
    std::string out = "(";
    const ojson& v = w["v"];
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get<std::string>();
    }
    out += ") orbit det " + w["orbit_det"].get<std::string>();
    return out;
}

void text_sequence(std::ostringstream& os, const ojson& res) {
    os << "witness: " << text_witness(res["witness"]) << '\n';
    for (const ojson& v : res["values"])
        os << "n=" << v["n"].get<long>() << " delta=" << v["delta"].get<std::string>()
           << " signed=" << v["signed"].get<std::string>() << '\n';
}

std::string render_text(const std::string& cmd, const ojson& doc) {
    const ojson& res = doc["results"];
    std::ostringstream os;
    if (cmd == "rank2") {
        os << "verdict: " << res["verdict"].get<std::string>() << '\n';
        const ojson& q = res["orbit_form"];
        os << "orbit form: a=" << q["a"].get<std::string>()
           << " b=" << q["b"].get<std::string>() << " c=" << q["c"].get<std::string>()
           << '\n';
        os << "witness: " << text_witness(res["witness"]) << '\n';
    } else if (cmd == "rank") {
        os << "verdict: " << res["verdict"].get<std::string>() << '\n';
        os << "rank bounds: [" << res["lower_bound"].get<long>() << ", "
           << res["upper_bound"].get<long>() << "]\n";
        os << "vrank: " << res["vrank"].get<long>() << '\n';
        const ojson& f = res["filters"];
        os << "filters: " << (f["pass"].get<bool>() ? "pass" : "fail");
        if (!f["reason"].get<std::string>().empty())
            os << " (" << f["reason"].get<std::string>() << ")";
        os << '\n';
        os << "witness: " << text_witness(res["witness"]) << '\n';
    } else if (cmd == "vrank") {
        os << "vrank: " << res["vrank"].get<long>() << '\n';
    } else if (cmd == "delta") {
        text_sequence(os, res);
        os << "rank-2 powers:";
        for (const ojson& n : res["rank2_powers"]) os << ' ' << n.get<long>();
        os << '\n';
    } else if (cmd == "powers") {
        text_sequence(os, res);
        if (res["recurrence"].is_null()) {
            os << "recurrence: none (" << res["recurrence_note"].get<std::string>() << ")\n";
        } else {
            const ojson& r = res["recurrence"];
            os << "recurrence order " << r["order"].get<long>() << ": coeffs";
            for (const ojson& c : r["coeffs"]) os << ' ' << c.get<std::string>();
            os << '\n';
        }
        const ojson& g = res["min_2gen"];
        os << "min 2-generator index: "
           << (g["index"].is_null() ? std::string("none in range")
                                    : g["index"].get<std::string>())
           << " (m=" << g["best_m"].get<long>() << ")\n";
    } else if (cmd == "nielsen") {
        os << "verdict: " << res["verdict"].get<std::string>() << '\n';
        if (!res["count"].is_null())
            os << "count: " << res["count"].get<std::string>() << " (fundamental unit power "
               << res["exponent"].get<std::string>() << ")\n";
        if (!res["fundamental_unit"].is_null())
            os << "fundamental unit: " << text_matrix(res["fundamental_unit"]) << '\n';
        if (!res["witness_h"].is_null())
            os << "independent unit: " << text_matrix(res["witness_h"]) << '\n';
        if (!res["note"].get<std::string>().empty())
            os << "note: " << res["note"].get<std::string>() << '\n';
        if (!res["classes"].is_null())
            os << "classes at height " << res["height"].get<long>() << ": "
               << res["classes"]["reps"].size()
               << (res["classes"]["infinite"].get<bool>() ? " (independent unit found)" : "")
               << '\n';
    } else if (cmd == "spectral") {
        for (const ojson& e : res["spectrum"])
            os << "eigenvalue: " << e["re"].get<std::string>() << " + "
               << e["im"].get<std::string>() << "i (mult " << e["multiplicity"].get<long>()
               << ", radius " << e["radius"].get<std::string>() << ")\n";
        os << "growth constant K: " << res["growth"]["k"].get<std::string>()
           << (res["growth"]["moduli_distinct"].get<bool>() ? " (moduli distinct)"
                                                            : " (moduli not distinct)")
           << '\n';
        if (!res["comparison"].is_null() && !res["comparison"]["skipped"].get<bool>())
            os << "log-growth deviation at n=" << res["comparison"]["n"].get<long>() << ": "
               << res["comparison"]["deviation"].get<std::string>() << '\n';
    } else if (cmd == "corpus") {
        for (const ojson& e : res["entries"])
            os << "entry " << e["index"].get<long>() << ": det "
               << e["det"].get<std::string>() << ", "
               << e["verdict"].get<std::string>() << '\n';
        os << "summary:";
        for (auto it = res["summary"].begin(); it != res["summary"].end(); ++it)
            os << ' ' << it.key() << '=' << it.value().get<long>();
        os << '\n';
    }
    return os.str();
}

int usage(std::ostream& err, const std::string& msg) {
    err << "usage error: " << msg << '\n';
    return 1;
}

} // namespace

int run_command(const std::string& cmd, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "text")
        return usage(err, "unknown format '" + cfg.format + "'");

    static const std::vector<std::string> kCommands = {
        "rank2", "rank", "vrank", "delta", "powers", "nielsen", "spectral", "corpus"};
    if (std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end())
        return usage(err, "unknown command '" + cmd + "'");

    ojson doc;
    doc["command"] = cmd;
    doc["config"] = config_json(cfg);

    std::optional<IntMatrix> m;
    if (cmd != "corpus") {
        std::string text;
        if (!cfg.file.empty() && !cfg.matrix_text.empty())
            return usage(err, "give the matrix once: -m or --file, not both");
        if (!cfg.file.empty()) {
            std::ifstream in(cfg.file);
            if (!in) return usage(err, "cannot read '" + cfg.file + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        } else if (!cfg.matrix_text.empty()) {
            text = cfg.matrix_text;
        } else {
            return usage(err, "no matrix given (-m or --file)");
        }
        try {
            m = parse_matrix(text);
        } catch (const Error& e) {
            err << "parse error: " << e.what() << '\n';
            return 1;
        }
    }
    doc["matrix"] = m ? jmat(*m) : ojson(nullptr);

    Outcome oc;
    auto t0 = std::chrono::steady_clock::now();
    try {
        ojson& res = doc["results"] = ojson::object();
        if (cmd == "rank2") oc = cmd_rank2(*m, cfg, res);
        else if (cmd == "rank") oc = cmd_rank(*m, cfg, res);
        else if (cmd == "vrank") oc = cmd_vrank(*m, cfg, res);
        else if (cmd == "delta") oc = cmd_delta(*m, cfg, res);
        else if (cmd == "powers") oc = cmd_powers(*m, cfg, res);
        else if (cmd == "nielsen") oc = cmd_nielsen(*m, cfg, res);
        else if (cmd == "spectral") oc = cmd_spectral(*m, cfg, res);
        else oc = cmd_corpus(cfg, res);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    auto t1 = std::chrono::steady_clock::now();

    if (cfg.timings) {
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        doc["timings"] = ojson{{"total_ms", ms}};
    } else {
        doc["timings"] = nullptr;
    }

    if (cfg.format == "json") {
        out << doc.dump(2) << '\n';
    } else if (cfg.format == "csv") {
        if (!oc.csv) return usage(err, "command '" + cmd + "' has no CSV form");
        out << *oc.csv;
    } else {
        out << render_text(cmd, doc);
    }
    return (oc.unknown && cfg.strict) ? 2 : 0;
}

} // namespace mtr
