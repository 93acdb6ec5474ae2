// boolecc: local correction, error reduction, and local list correction of
// low-degree multilinear polynomials over the Boolean cube, with corrupted
// oracle simulation and reproducible experiments.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "boolecc/correct.hpp"
#include "boolecc/decode.hpp"
#include "boolecc/experiment.hpp"
#include "boolecc/gadget.hpp"
#include "boolecc/json_io.hpp"
#include "boolecc/listcorrect.hpp"

using namespace boolecc;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return json::parse(in);
}

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        out << doc.dump(2) << "\n";
    }
}

int cmd_gadget(std::uint32_t k, bool check, bool emit_json, const std::string& out) {
    BalancedMatrix m = build_balanced_matrix(k);
    bool ok = true;
    if (check) {
        const std::uint32_t rows = m.num_rows(), cols = m.num_cols();
        Int csum = 0;
        for (const auto& c : m.c) csum += c;
        ok = ok && csum == 1;
        std::uint32_t all_ones = 0;
        for (std::uint32_t r = 0; r < rows; ++r) {
            Int dot = 0;
            std::uint32_t w = 0;
            for (std::uint32_t j = 0; j < cols; ++j)
                if (m.bit(r, j)) { dot += m.c[j]; ++w; }
            ok = ok && dot == 1;
            if (w == cols) ++all_ones;
        }
        ok = ok && all_ones == 1;
        for (std::uint32_t j = 0; j < cols; ++j) {
            std::uint32_t w = 0;
            for (std::uint32_t r = 0; r < rows; ++r) w += m.bit(r, j);
            ok = ok && w + 1 >= (1u << (k - 1)) && w <= (1u << (k - 1)) + 1;
        }
        std::cout << (ok ? "ok" : "FAILED") << ": A_" << k << " invariants\n";
    }
    if (emit_json) {
        json doc;
        doc["k"] = k;
        json rows = json::array();
        for (std::uint32_t r = 0; r < m.num_rows(); ++r) {
            std::string bits(m.num_cols(), '0');
            for (std::uint32_t j = 0; j < m.num_cols(); ++j)
                if (m.bit(r, j)) bits[j] = '1';
            rows.push_back(bits);
        }
        doc["rows"] = rows;
        json c = json::array();
        for (const auto& v : m.c) c.push_back(v.str());
        doc["c"] = c;
        emit(doc, out);
    }
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local correction of multilinear polynomials over the Boolean cube"};
    app.require_subcommand(1);

    // gadget
    std::uint32_t gk = 4;
    bool gcheck = false, gemit = false;
    std::string gout;
    auto* gadget = app.add_subcommand("gadget", "balanced matrix A_k");
    gadget->add_option("--k", gk, "matrix parameter k >= 2")->required();
    gadget->add_flag("--check", gcheck, "run the matrix invariants");
    gadget->add_flag("--emit", gemit, "dump {rows, c} as JSON");
    std::string gfmt = "json";
    gadget->add_option("--format", gfmt)->check(CLI::IsMember({"json"}));
    gadget->add_option("--out", gout, "output file (default stdout)");

    // correct
    std::string c_oracle, c_point, c_out;
    std::uint64_t c_seed = 1;
    std::string c_delta = "0";
    std::uint32_t c_k = 10, c_levels = 0, c_reps = 5;
    bool c_no_subcube = false;
    auto* correct = app.add_subcommand("correct", "unique local correction at a point");
    correct->add_option("--oracle", c_oracle, "oracle spec JSON file")->required();
    correct->add_option("--point", c_point, "target point as a bit string")->required();
    correct->add_option("--delta", c_delta, "assumed error bound (exact rational)");
    correct->add_option("--seed", c_seed, "master seed");
    correct->add_option("--k", c_k, "subcube stage dimension");
    correct->add_flag("--no-subcube", c_no_subcube, "skip the large-error stage");
    correct->add_option("--levels", c_levels, "error-reduction levels");
    correct->add_option("--reps", c_reps, "small-error plurality repetitions (odd)");
    correct->add_option("--out", c_out, "output file (default stdout)");

    // decode
    std::string d_table, d_radius, d_out;
    int d_d = 1;
    auto* decode = app.add_subcommand("decode", "non-local decoding of a full table");
    decode->add_option("--table", d_table, "table JSON file")->required();
    decode->add_option("--d", d_d, "degree bound")->required();
    decode->add_option("--radius", d_radius, "list-decoding radius (omit: unique decode)");
    decode->add_option("--out", d_out, "output file (default stdout)");

    // list-correct
    std::string lc_oracle, lc_eps = "1/5", lc_points, lc_out;
    std::uint32_t lc_k = 8, lc_ell = 3;
    std::uint64_t lc_seed = 1;
    auto* listc = app.add_subcommand("list-correct", "local list correction");
    listc->add_option("--oracle", lc_oracle, "oracle spec JSON file")->required();
    listc->add_option("--eps", lc_eps, "agreement parameter (exact rational)");
    listc->add_option("--k", lc_k, "advice subcube dimension (even)");
    listc->add_option("--ell", lc_ell, "advice iterations");
    listc->add_option("--seed", lc_seed, "master seed");
    listc->add_option("--eval-points", lc_points, "file with one bit-string point per line");
    listc->add_option("--out", lc_out, "output file (default stdout)");

    // bench
    std::string b_scenario, b_params, b_out;
    std::uint64_t b_seed = 1;
    std::uint32_t b_threads = 0;
    bool b_csv = false;
    auto* bench = app.add_subcommand("bench", "run a named experiment scenario");
    bench->add_option("--scenario", b_scenario, "scenario name")->required();
    bench->add_option("--params", b_params, "scenario params JSON file or inline JSON");
    bench->add_option("--seed", b_seed, "master seed");
    bench->add_option("--threads", b_threads, "thread cap (0: BOOLECC_THREADS/hardware)");
    bench->add_flag("--csv", b_csv, "emit a CSV rate row instead of JSON");
    bench->add_option("--out", b_out, "output file (default stdout)");

    // check-sampling
    std::uint32_t s_n = 16, s_k = 14, s_klow = 4;
    std::uint64_t s_trials = 2000, s_seed = 1;
    std::string s_mu = "1/4", s_eps = "1/10", s_out;
    auto* sampling = app.add_subcommand("check-sampling", "subcube sampling-lemma check");
    sampling->add_option("--n", s_n);
    sampling->add_option("--k", s_k);
    sampling->add_option("--k-low", s_klow);
    sampling->add_option("--mu", s_mu, "predicate density (exact rational)");
    sampling->add_option("--eps", s_eps, "deviation threshold (exact rational)");
    sampling->add_option("--trials", s_trials);
    sampling->add_option("--seed", s_seed);
    sampling->add_option("--out", s_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gadget->parsed()) return cmd_gadget(gk, gcheck, gemit || !gcheck, gout);

        if (correct->parsed()) {
            auto oracle = make_oracle(load_json(c_oracle));
            PointN a = PointN::from_string(c_point);
            CorrectorParams params;
            params.delta = rat_from_json(json(c_delta));
            params.reps = c_reps;
            params.t_levels = c_levels;
            params.k_subcube =
                c_no_subcube ? std::nullopt : std::optional<std::uint32_t>(c_k);
            params.seed = c_seed;
            GroupValue v = unique_correct(*oracle, a, params);
            json doc;
            doc["value"] = value_to_json(v);
            doc["queries"] = oracle->query_count();
            doc["params"] = {{"n", oracle->n()},
                             {"reps", params.reps},
                             {"levels", params.t_levels},
                             {"k", c_no_subcube ? 0 : c_k},
                             {"seed", params.seed},
                             {"query_formula", unique_correct_query_formula(oracle->n(), params)}};
            emit(doc, c_out);
            return 0;
        }

        if (decode->parsed()) {
            DenseTable t = table_from_json(load_json(d_table));
            json doc;
            if (d_radius.empty()) {
                auto p = unique_decode(t, d_d);
                doc["found"] = p.has_value();
                if (p) doc["poly"] = poly_to_json(*p);
            } else {
                auto list = list_decode(t, d_d, rat_from_json(json(d_radius)));
                json arr = json::array();
                for (const auto& p : list) {
                    json entry = poly_to_json(p);
                    entry["distance"] = rat_to_json(distance_to_poly(t, p));
                    arr.push_back(std::move(entry));
                }
                doc["list"] = arr;
            }
            emit(doc, d_out);
            return 0;
        }

        if (listc->parsed()) {
            auto oracle = make_oracle(load_json(lc_oracle));
            ListCorrectParams params;
            params.k = lc_k;
            params.ell = lc_ell;
            params.seed = lc_seed;
            Rat eps = rat_from_json(json(lc_eps));
            auto correctors = local_list_correct(*oracle, eps, params);
            json doc;
            json arr = json::array();
            for (const auto& c : correctors) {
                json entry;
                entry["C"] = embedding_to_json(c.oracle.C);
                entry["sigma"] = c.oracle.sigma;
                entry["Q"] = poly_to_json(c.oracle.Q);
                arr.push_back(std::move(entry));
            }
            doc["oracles"] = arr;
            if (!lc_points.empty()) {
                std::ifstream in(lc_points);
                if (!in) throw std::runtime_error("cannot open " + lc_points);
                json evals = json::array();
                std::string line;
                std::uint64_t idx = 0;
                PsiCache cache;
                while (std::getline(in, line)) {
                    if (line.empty()) continue;
                    PointN b = PointN::from_string(line);
                    json row;
                    row["point"] = line;
                    json vals = json::array();
                    for (const auto& c : correctors)
                        vals.push_back(value_to_json(
                            c.correct_at(*oracle, b, mix64(lc_seed, idx), &cache)));
                    row["values"] = vals;
                    evals.push_back(std::move(row));
                    ++idx;
                }
                doc["evaluations"] = evals;
            }
            doc["queries"] = oracle->query_count();
            emit(doc, lc_out);
            return 0;
        }

        if (bench->parsed()) {
            ExperimentConfig cfg;
            cfg.scenario = b_scenario;
            cfg.seed = b_seed;
            cfg.threads = b_threads;
            if (!b_params.empty()) {
                if (!b_params.empty() && b_params.front() == '{') cfg.params = json::parse(b_params);
                else cfg.params = load_json(b_params);
            }
            ExperimentReport rep = run_experiment(cfg);
            if (b_csv) {
                if (b_out.empty()) std::cout << rep.to_csv();
                else std::ofstream(b_out) << rep.to_csv();
            } else {
                emit(rep.doc, b_out);
            }
            return rep.passed ? 0 : 2;
        }

        if (sampling->parsed()) {
            ExperimentConfig cfg;
            cfg.scenario = "sampling-check";
            cfg.seed = s_seed;
            cfg.params = {{"n", s_n},     {"k", s_k},     {"k_low", s_klow},
                          {"mu", s_mu},   {"eps", s_eps}, {"trials", s_trials}};
            ExperimentReport rep = run_experiment(cfg);
            emit(rep.doc, s_out);
            return rep.passed ? 0 : 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
