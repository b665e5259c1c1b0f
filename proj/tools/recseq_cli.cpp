// Command-line interface: load sequence and algebraic-number definitions
// from JSON files, run lattice and closure computations, and emit JSON
// payloads. Exit codes: 0 success, 1 I/O or schema problems, 2 domain
// errors (missing patches, reducible minimal polynomials, degree caps,
// failed verification).

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "recseq/recseq.hpp"

using namespace recseq;

namespace {

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    Json j;
    in >> j;
    return j;
}

struct OutputSink {
    std::string path;  // empty = stdout
    bool compact = false;

    void write(const Json& payload) const {
        std::string text = compact ? payload.dump() : payload.dump(2);
        text += "\n";
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot open output file: " + path);
            out << text;
        }
    }
};

int run_command(const std::string& cmd, const std::vector<std::string>& inputs, long n_terms, long ell, long jj,
                long kk, const std::optional<std::string>& masser, long skolem_horizon, bool stability,
                const OutputSink& sink) {
    FieldCache cache;
    ClosureOptions opts;
    opts.skolem_horizon = skolem_horizon;

    if (cmd == "terms") {
        C2FiniteSeq s = sequence_from_json(read_json_file(inputs.at(0)), cache);
        auto t = s.terms(n_terms);
        sink.write(terms_to_json(t, s.field()));
        return 0;
    }
    if (cmd == "add" || cmd == "mul") {
        C2FiniteSeq a = sequence_from_json(read_json_file(inputs.at(0)), cache);
        C2FiniteSeq b = sequence_from_json(read_json_file(inputs.at(1)), cache);
        ClosureResult r = cmd == "add" ? c2_add(a, b, opts) : c2_mul(a, b, opts);
        sink.write(closure_result_to_json(r));
        return 0;
    }
    if (cmd == "subseq") {
        C2FiniteSeq a = sequence_from_json(read_json_file(inputs.at(0)), cache);
        ClosureResult r = c2_subsequence(a, ell, opts);
        sink.write(closure_result_to_json(r));
        return 0;
    }
    if (cmd == "interlace") {
        std::vector<C2FiniteSeq> seqs;
        for (const auto& p : inputs) seqs.push_back(sequence_from_json(read_json_file(p), cache));
        ClosureResult r = c2_interlace(seqs, opts);
        sink.write(closure_result_to_json(r));
        return 0;
    }
    if (cmd == "sparse") {
        Json j = read_json_file(inputs.at(0));
        CFiniteSeq c = cfinite_from_json(j, cache);
        ClosureResult r = c2_sparse_subsequence(c, jj, kk, ell, opts);
        sink.write(closure_result_to_json(r));
        return 0;
    }
    if (cmd == "lattice" || cmd == "torsion") {
        AlgebraicSpecs specs = algebraic_numbers_from_json(read_json_file(inputs.at(0)));
        auto [field, lams] = common_field(specs);
        ExpLatticeOptions lopts;
        lopts.stability_check = stability;
        if (masser) lopts.masser_override = rat_from_string(*masser);
        ExpLatticeResult r = exp_lattice_basis(lams, lopts);
        Int torsion = r.basis_L.empty() ? Int(1) : invariant_factor(IntMatrix::from_columns(r.basis_L));
        if (cmd == "torsion") {
            Json j;
            j["torsion_number"] = static_cast<long>(torsion.get_si());
            j["basis"] = lattice_result_to_json(r, false, torsion)["basis"];
            j["M_used"] = rat_to_string(r.M_used);
            j["iterations"] = r.iterations;
            if (r.stable.has_value()) j["stable"] = *r.stable;
            sink.write(j);
        } else {
            sink.write(lattice_result_to_json(r, true, torsion));
        }
        return 0;
    }
    if (cmd == "verify") {
        C2FiniteSeq a = sequence_from_json(read_json_file(inputs.at(0)), cache);
        auto ref = terms_from_json(read_json_file(inputs.at(1)), cache);
        long limit = n_terms > 0 ? n_terms : static_cast<long>(ref.size());
        VerifyReport rep = c2_verify(a, ref, limit);
        sink.write(verify_report_to_json(rep));
        return rep.ok ? 0 : 2;
    }
    throw std::runtime_error("unknown command: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with C-finite and C^2-finite sequences"};
    app.require_subcommand(1);

    std::vector<std::string> inputs;
    long n_terms = 10, ell = 1, jj = 1, kk = 0;
    long skolem_horizon = 1000;
    std::optional<std::string> masser;
    bool stability = false;
    OutputSink sink;

    auto add_common = [&](CLI::App* sub, int min_inputs, int max_inputs) {
        sub->add_option("inputs", inputs, "input JSON files")->expected(min_inputs, max_inputs);
        sub->add_option("--output", sink.path, "write the payload to this path instead of stdout");
        sub->add_flag("--json", sink.compact, "compact single-line JSON output");
        sub->add_option("--skolem-horizon", skolem_horizon, "scan limit for leading-coefficient zeros");
        return sub;
    };

    auto* terms = add_common(app.add_subcommand("terms", "unroll the first N terms"), 1, 1);
    terms->add_option("--terms", n_terms, "number of terms")->required();

    add_common(app.add_subcommand("add", "sum of two sequences"), 2, 2);
    add_common(app.add_subcommand("mul", "product of two sequences"), 2, 2);

    auto* subseq = add_common(app.add_subcommand("subseq", "subsequence a(l*n)"), 1, 1);
    subseq->add_option("--ell", ell, "progression step l")->required();

    add_common(app.add_subcommand("interlace", "interlacing of the given sequences"), 1, 16);

    auto* sparse = add_common(app.add_subcommand("sparse", "sparse subsequence c(j n^2 + k n + l)"), 1, 1);
    sparse->add_option("-j", jj, "quadratic coefficient")->required();
    sparse->add_option("-k", kk, "linear coefficient");
    sparse->add_option("--ell", ell, "constant offset l");

    auto* lattice = add_common(app.add_subcommand("lattice", "basis of the exponent lattice"), 1, 1);
    lattice->add_option("--masser-bound", masser, "override the norm bound M as p/q");
    lattice->add_flag("--stability", stability, "re-run with 2M and report stability");

    auto* torsion = add_common(app.add_subcommand("torsion", "torsion number of algebraic numbers"), 1, 1);
    torsion->add_option("--masser-bound", masser, "override the norm bound M as p/q");
    torsion->add_flag("--stability", stability, "re-run with 2M and report stability");

    auto* verify = add_common(app.add_subcommand("verify", "check a recurrence against reference terms"), 2, 2);
    verify->add_option("--terms", n_terms, "number of reference rows to check");

    CLI11_PARSE(app, argc, argv);
    std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "sparse" && app.get_subcommand("sparse")->count("--ell") == 0) ell = 0;
    if (cmd == "verify" && verify->count("--terms") == 0) n_terms = 0;

    try {
        return run_command(cmd, inputs, n_terms, ell, jj, kk, masser, skolem_horizon, stability, sink);
    } catch (const domain_error& e) {
        sink.write(error_to_json(e));
        return 2;
    } catch (const std::exception& e) {
        Json j;
        j["error"] = {{"kind", "io_or_schema"}, {"message", e.what()}};
        std::cerr << j.dump() << "\n";
        return 1;
    }
}
