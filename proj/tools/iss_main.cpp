// Command-line front end: builds frames and models from files, runs
// entailment queries, and drives the verification suites.
//
// Exit codes: 0 ok/holds, 1 query fails, 2 malformed input, 3 cap exceeded.

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iss/iss.hpp"
#include "iss/suites.hpp"

namespace {

using namespace iss;

constexpr std::uint64_t kDefaultSeed = 20250810;

struct Report {
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    bool csv = false;
    std::vector<std::vector<std::string>> rows;

    void row(std::vector<std::string> fields) { rows.push_back(std::move(fields)); }

    static std::string csv_field(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    void emit(std::ostream& os) const {
        os << "# iss " << command << " seed=" << seed << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (i) os << (csv ? "," : "\t");
                os << (csv ? csv_field(r[i]) : r[i]);
            }
            os << "\n";
        }
    }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ParseError("cannot open output file: " + out_path);
    out << text;
}

Signature parse_signature(const std::string& names_csv, const std::string& preds_csv) {
    Signature sig;
    for (const std::string& n : textio::split_top_commas(names_csv)) sig.names.push_back(n);
    for (const std::string& p : textio::split_top_commas(preds_csv)) {
        auto slash = p.find('/');
        if (slash == std::string::npos)
            throw ParseError("predicate must be written name/arity: " + p);
        sig.preds.push_back({p.substr(0, slash), std::stoi(p.substr(slash + 1))});
    }
    return sig;
}

int cmd_check(const std::string& model_path, const std::string& sequent_text, Report& rep) {
    IsModel m = textio::parse_model(slurp(model_path));
    Sequent seq = parse_sequent(sequent_text);
    const std::string pretty = to_string(seq);
    if (sequent_holds(m, seq)) {
        rep.row({"HOLDS", pretty});
        return 0;
    }
    auto witness = sequent_witness(m, seq);
    rep.row({"FAILS", pretty,
             witness ? textio::candidate_to_string(m.frame.universe(), *witness) : ""});
    return 1;
}

int cmd_props(const std::string& frame_path, Report& rep) {
    Frame f = textio::parse_frame(slurp(frame_path));
    const Universe& u = f.universe();
    StructuralReport sr = check_structural(f);
    if (sr.co)
        rep.row({"PASS", "co"});
    else
        rep.row({"FAIL", "co", textio::candidate_to_string(u, *sr.co_witness)});
    if (sr.mo)
        rep.row({"PASS", "mo"});
    else
        rep.row({"FAIL", "mo",
                 textio::candidate_to_string(u, sr.mo_witness->first) + " vs " +
                     textio::candidate_to_string(u, sr.mo_witness->second)});
    if (sr.cut)
        rep.row({"PASS", "cut"});
    else
        rep.row({"FAIL", "cut",
                 textio::candidate_to_string(u, sr.cut_witness->first) + " vs bearer " +
                     u.bearer_name(sr.cut_witness->second)});
    return sr.all() ? 0 : 1;
}

int cmd_partitions(const std::string& frame_path, Report& rep) {
    Frame f = textio::parse_frame(slurp(frame_path));
    const Universe& u = f.universe();
    for (const Partition& p : enumerate_full_partitions(f))
        rep.row({"ENUM", textio::partition_to_string(u, p)});
    std::vector<BearerId> order(f.bearer_count());
    std::iota(order.begin(), order.end(), 0);
    for (const Partition& p : partition_tree(f, order))
        rep.row({"TREE", textio::partition_to_string(u, p)});
    return 0;
}

int cmd_oracle(const std::string& sequent_text, int domain_size, int sweep, bool names_equal,
               Report& rep) {
    Sequent seq = parse_sequent(sequent_text);
    Signature sig = signature_of(seq);
    const std::string pretty = to_string(seq);
    bool valid = true;
    if (sweep > 0) {
        for (int n = 1; n <= sweep; ++n) {
            const bool v = fol_oracle(sig, n, seq, !names_equal);
            rep.row({v ? "VALID" : "INVALID", pretty, "domain size " + std::to_string(n)});
            valid = valid && v;
        }
    } else {
        valid = fol_oracle(sig, domain_size, seq, !names_equal);
        rep.row({valid ? "VALID" : "INVALID", pretty,
                 "domain size " + std::to_string(domain_size)});
    }
    return valid ? 0 : 1;
}

int cmd_verify(const std::string& suite, const suites::SuiteOptions& opt, Report& rep) {
    std::vector<std::string> names =
        suite == "all" ? suites::suite_names() : std::vector<std::string>{suite};
    bool all_passed = true;
    for (const std::string& n : names) {
        suites::SuiteResult r = suites::run_suite(n, opt);
        std::ostringstream time;
        time.setf(std::ios::fixed);
        time.precision(2);
        time << r.seconds << "s";
        rep.row({r.passed ? "PASS" : "FAIL", r.name, r.detail, time.str()});
        all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"implication-space semantics toolkit"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "report format: text or csv")
        ->check(CLI::IsMember({"text", "csv"}));
    std::uint64_t seed = kDefaultSeed;
    app.add_option("--seed", seed, "seed for randomized suites");

    std::string model_path, frame_path, tarski_path, sequent_text, out_path;
    auto* check = app.add_subcommand("check", "decide a sequent in a model");
    check->add_option("model", model_path, "model file")->required();
    check->add_option("sequent", sequent_text, "sequent, e.g. \"Fa, Fc |- Gb\"")->required();

    auto* props = app.add_subcommand("props", "report CO/MO/CUT with witnesses");
    props->add_option("frame", frame_path, "frame file")->required();

    auto* partitions = app.add_subcommand("partitions", "print both partition extractions");
    partitions->add_option("frame", frame_path, "frame file")->required();

    auto* ersatz = app.add_subcommand("ersatz", "emit the frame of a Tarskian model");
    ersatz->add_option("tarski", tarski_path, "Tarskian model file")->required();
    ersatz->add_option("-o,--out", out_path, "output file (default stdout)");

    std::string names_csv, preds_csv;
    int objects = 0;
    auto* canonical = app.add_subcommand("canonical", "emit a canonical model file");
    canonical->add_option("--names", names_csv, "comma-separated names")->required();
    canonical->add_option("--preds", preds_csv, "comma-separated pred/arity")->required();
    canonical->add_option("--objects", objects, "object count")->required();
    canonical->add_option("-o,--out", out_path, "output file (default stdout)");

    std::vector<std::string> adds;
    auto* extend = app.add_subcommand("extend", "add implications to a model");
    extend->add_option("--model", model_path, "base model file")->required();
    extend->add_option("--add", adds, "candidate of atomic sentences, e.g. \"{Fa} => {Gb}\"")
        ->required();
    extend->add_option("-o,--out", out_path, "output file (default stdout)");

    int domain_size = 2, sweep = 0;
    bool names_equal = false;
    auto* oracle = app.add_subcommand("oracle", "classical consequence at fixed domain sizes");
    oracle->add_option("sequent", sequent_text, "sequent")->required();
    oracle->add_option("--domain-size", domain_size, "single domain size (default 2)");
    oracle->add_option("--sweep", sweep, "check every size 1..k instead");
    oracle->add_flag("--names-equal", names_equal, "allow names to share a denotation");

    std::string suite;
    suites::SuiteOptions sopt;
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", suite, "prop1..prop4, lemma1..lemma4, thm3, thm4, oracle, all")
        ->required();
    verify->add_option("--count", sopt.prop3_count, "randomized instances for prop3");
    verify->add_option("--names", sopt.corpus_names, "corpus name count (thm3)");
    verify->add_option("--preds", sopt.corpus_preds, "corpus unary predicate count (thm3)");
    verify->add_option("--depth", sopt.corpus_depth, "corpus formula height (thm3)");
    verify->add_option("--sweep", sopt.oracle_sweep, "oracle sweep bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    Report rep;
    rep.csv = format == "csv";
    rep.seed = seed;
    sopt.seed = seed;

    int code = 0;
    try {
        if (check->parsed()) {
            rep.command = "check";
            code = cmd_check(model_path, sequent_text, rep);
        } else if (props->parsed()) {
            rep.command = "props";
            code = cmd_props(frame_path, rep);
        } else if (partitions->parsed()) {
            rep.command = "partitions";
            code = cmd_partitions(frame_path, rep);
        } else if (ersatz->parsed()) {
            IsModel e = ersatz_of(textio::parse_tarski(slurp(tarski_path)));
            write_out(textio::serialize_frame(e.frame), out_path);
            return 0;
        } else if (canonical->parsed()) {
            IsModel m = canonical_model(parse_signature(names_csv, preds_csv), objects);
            write_out(textio::serialize_model(m), out_path);
            return 0;
        } else if (extend->parsed()) {
            IsModel base = textio::parse_model(slurp(model_path));
            std::vector<Candidate> extras;
            for (const std::string& a : adds)
                extras.push_back(textio::parse_atom_candidate(base, a));
            write_out(textio::serialize_model(extend_model(base, extras)), out_path);
            return 0;
        } else if (oracle->parsed()) {
            rep.command = "oracle";
            code = cmd_oracle(sequent_text, domain_size, sweep, names_equal, rep);
        } else if (verify->parsed()) {
            rep.command = "verify " + suite;
            code = cmd_verify(suite, sopt, rep);
        }
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    rep.emit(std::cout);
    return code;
}
