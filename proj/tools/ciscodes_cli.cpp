// Command-line front end: classification pipelines, single-code queries, and
// store maintenance.  Progress goes to stderr; stdout stays machine-readable.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ciscodes/pipelines.hpp"

namespace {

using namespace ciscodes;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_store(const CanonStore& store, const std::string& out_path) {
    store.save(out_path);
    store.save_summary(out_path + ".summary");
    std::cerr << "wrote " << store.size() << " records to " << out_path << '\n';
}

void print_summary(const CanonStore& store) {
    std::map<int, uint64_t> by_d;
    for (const auto& [_, rec] : store) ++by_d[rec.d];
    std::cout << "total\t" << store.size() << '\n';
    for (const auto& [d, count] : by_d) std::cout << "d=" << d << '\t' << count << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classification of rate one-half binary codes, CIS codes, and GL(n,F2) classes"};
    app.require_subcommand(1);

    GenerateOptions gen_opt;
    bool extended = false;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--shards", gen_opt.shards, "total shard count")->check(CLI::PositiveNumber);
        cmd->add_option("--shard-index", gen_opt.shard_index, "this shard's index");
        cmd->add_option("--threads", gen_opt.threads, "worker threads (0 = auto)");
        cmd->add_flag("--extended", extended, "acknowledge a multi-hour/day run");
    };

    int n = 0, k = 0, dmin = 1;
    bool even_only = false, dual_column = false;
    std::string in_path, prev_path, out_path, code_path;
    std::vector<std::string> merge_inputs;

    CLI::App* c_gl = app.add_subcommand("classify-gl", "equivalence classes of GL(n,F2)");
    c_gl->add_option("--n", n, "dimension")->required();
    c_gl->add_option("--prev", prev_path, "classified GL(n-1) store");
    c_gl->add_option("--out", out_path, "output store")->required();
    add_common(c_gl);

    CLI::App* c_cis = app.add_subcommand("classify-cis", "CIS code classes [I|A] from a GL store");
    c_cis->add_option("--prev,--in", prev_path, "classified GL(n) store")->required();
    c_cis->add_option("--out", out_path, "output store")->required();
    add_common(c_cis);

    CLI::App* c_chain = app.add_subcommand("chain", "subcode-chain classification of [n,k,>=dmin]");
    c_chain->add_option("--n", n, "target length")->required();
    c_chain->add_option("--k", k, "target dimension")->required();
    c_chain->add_option("--dmin", dmin, "minimum weight bound")->required();
    c_chain->add_flag("--even-only", even_only, "keep even codes only");
    c_chain->add_option("--out", out_path, "output store")->required();
    add_common(c_chain);

    CLI::App* c_ext = app.add_subcommand("extend-dim", "grow dimension at fixed length");
    c_ext->add_option("--in", in_path, "base store")->required();
    c_ext->add_option("--dmin", dmin, "minimum weight bound")->required();
    c_ext->add_option("--out", out_path, "output store")->required();
    add_common(c_ext);

    CLI::App* c_w2 = app.add_subcommand("weight2-cis", "[2n,n,2] CIS codes from length 2n-2 CIS");
    c_w2->add_option("--in,--prev", in_path, "CIS classification at length 2n-2")->required();
    c_w2->add_option("--out", out_path, "output store")->required();
    add_common(c_w2);

    CLI::App* c_is = app.add_subcommand("is-cis", "CIS determination for one generator matrix");
    c_is->add_option("file", code_path, "matrix text file")->required();

    CLI::App* c_survey = app.add_subcommand("survey-optimal", "CIS / non-CIS survey of a store");
    c_survey->add_option("--in", in_path, "code store")->required();

    CLI::App* c_report = app.add_subcommand("report", "per-d SD/FSD classification table");
    c_report->add_option("--in", in_path, "code store")->required();
    c_report->add_flag("--dual-column", dual_column, "add the d-perp != 1 column");

    CLI::App* c_merge = app.add_subcommand("merge", "union of shard stores");
    c_merge->add_option("--out", out_path, "output store")->required();
    c_merge->add_option("inputs", merge_inputs, "shard store files")->required();

    CLI::App* c_validate = app.add_subcommand("validate", "re-key every payload in a store");
    c_validate->add_option("--in", in_path, "store file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*c_gl) {
            if (n >= 7 && !extended)
                throw PreconditionFailed(
                    "classify-gl with n >= 7 is a multi-day run; pass --extended to confirm");
            CanonStore store;
            if (n == 1) {
                store = classify_gl(1, nullptr, gen_opt);
            } else {
                if (prev_path.empty())
                    throw PreconditionFailed("classify-gl: --prev required for n > 1");
                CanonStore prev = CanonStore::load(prev_path);
                store = classify_gl(n, &prev, gen_opt);
            }
            write_store(store, out_path);
            print_summary(store);
        } else if (*c_cis) {
            CanonStore gl = CanonStore::load(prev_path);
            CanonStore store = classify_cis_from_gl(gl, gen_opt);
            write_store(store, out_path);
            print_summary(store);
        } else if (*c_chain) {
            CanonStore store = chain_classify({n, k, dmin, even_only}, gen_opt);
            write_store(store, out_path);
            print_summary(store);
        } else if (*c_ext) {
            CanonStore base = CanonStore::load(in_path);
            if (!base.records().empty() && base.records()[0]->n >= 16 && !extended)
                throw PreconditionFailed(
                    "extend-dim at length >= 16 is a multi-day run; pass --extended to confirm");
            CanonStore store = extend_dimension(base, dmin, gen_opt);
            write_store(store, out_path);
            print_summary(store);
        } else if (*c_w2) {
            CanonStore prev = CanonStore::load(in_path);
            if (!prev.records().empty() && prev.records()[0]->n >= 14 && !extended)
                throw PreconditionFailed(
                    "weight2-cis from length >= 14 is a multi-day run; pass --extended to confirm");
            CanonStore store = build_weight2_cis(prev, gen_opt);
            write_store(store, out_path);
            print_summary(store);
        } else if (*c_is) {
            LinearCode code{Gf2Matrix::parse(read_file(code_path))};
            CisResult res = is_cis(code);
            if (res.cis) {
                std::cout << "YES\n";
                for (size_t i = 0; i < res.witness->columns.size(); ++i)
                    std::cout << (i ? " " : "") << res.witness->columns[i];
                std::cout << '\n';
            } else {
                std::cout << "NO\n";
            }
        } else if (*c_survey) {
            CanonStore store = CanonStore::load(in_path);
            SurveyReport rep = optimal_cis_survey(store);
            std::cout << "category\tcount\n";
            std::cout << "cis\t" << rep.cis << '\n';
            std::cout << "non_cis\t" << rep.non_cis << '\n';
            for (const auto& [dd, count] : rep.non_cis_by_dual_distance)
                std::cout << "non_cis_dperp=" << dd << '\t' << count << '\n';
        } else if (*c_report) {
            CanonStore store = CanonStore::load(in_path);
            std::vector<ReportRow> rows = classification_report(store);
            std::cout << "d\ttotal\tsd\tonly_fsd\tneither";
            if (dual_column) std::cout << "\tdperp_ne1";
            std::cout << '\n';
            ReportRow sum;
            for (const ReportRow& r : rows) {
                std::cout << r.d << '\t' << r.total << '\t' << r.self_dual << '\t' << r.only_fsd
                          << '\t' << r.neither;
                if (dual_column) std::cout << '\t' << r.dual_d_ne1;
                std::cout << '\n';
                sum.total += r.total;
                sum.self_dual += r.self_dual;
                sum.only_fsd += r.only_fsd;
                sum.neither += r.neither;
                sum.dual_d_ne1 += r.dual_d_ne1;
            }
            std::cout << "total\t" << sum.total << '\t' << sum.self_dual << '\t' << sum.only_fsd
                      << '\t' << sum.neither;
            if (dual_column) std::cout << '\t' << sum.dual_d_ne1;
            std::cout << '\n';
        } else if (*c_merge) {
            std::vector<CanonStore> parts;
            parts.reserve(merge_inputs.size());
            for (const std::string& path : merge_inputs) parts.push_back(CanonStore::load(path));
            std::vector<const CanonStore*> ptrs;
            for (const CanonStore& s : parts) ptrs.push_back(&s);
            CanonStore store = merge(ptrs);
            write_store(store, out_path);
        } else if (*c_validate) {
            CanonStore store = CanonStore::load(in_path);
            store.validate_all();
            std::cout << "OK\t" << store.size() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
