// Command-line front end: vocabulary construction, training, evaluation,
// the theta sweep and significance testing.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "hybridvec/cooccurrence.hpp"
#include "hybridvec/corpus.hpp"
#include "hybridvec/embeddings.hpp"
#include "hybridvec/errors.hpp"
#include "hybridvec/evaluation.hpp"
#include "hybridvec/huffman.hpp"
#include "hybridvec/model.hpp"
#include "hybridvec/representation.hpp"
#include "hybridvec/sweep.hpp"

namespace hv = hybridvec;

namespace {

struct CommonOpts {
    std::string corpus;
    std::string lowercase = "on";
    bool lower() const { return lowercase == "on"; }
};

struct TrainOpts {
    CommonOpts common;
    std::string output;
    std::string scheme = "one-hot";
    std::uint64_t theta = 0;
    int cooc_window = 10;
    int size = 100;
    int window = 11;
    double sample = 1e-3;
    int epochs = 5;
    double alpha = 0.025;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string combine = "sum";
    std::string dump_cooc;
    std::string dump_rep;
    std::string save_vocab;
};

struct EvalOpts {
    std::string embeddings;
    std::vector<std::string> datasets;
    std::string lowercase = "on";
    std::string output;
};

struct SweepOpts {
    TrainOpts train;  // shared training/corpus flags
    std::vector<std::string> datasets;
    std::string schemes = "mixed,separate";
    std::string thetas = "1,2,5,10,20,50,100,1000";
    bool no_one_hot = false;
    bool no_distributional = false;
    int models = 10;
    int jobs = 1;
    std::string output;
    std::string report_json;
    std::string dump_plot;
};

struct SignificanceOpts {
    std::string file_a;
    std::string file_b;
    bool paired = false;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

// Dataset argument: "NAME=PATH" or a bare path (name = filename stem).
std::pair<std::string, std::filesystem::path> parse_dataset_arg(const std::string& arg) {
    auto eq = arg.find('=');
    if (eq != std::string::npos && eq > 0) {
        return {arg.substr(0, eq), arg.substr(eq + 1)};
    }
    std::filesystem::path p(arg);
    return {p.stem().string(), p};
}

void add_training_flags(CLI::App* cmd, TrainOpts& o) {
    cmd->add_option("--corpus", o.common.corpus, "UTF-8 corpus, one sentence per line")
        ->required();
    cmd->add_option("--lowercase", o.common.lowercase, "Lowercase tokens (default on)")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--scheme", o.scheme,
                    "Input scheme: one-hot|mixed|separate|distributional");
    cmd->add_option("--theta", o.theta, "Frequency threshold for hybrid schemes");
    cmd->add_option("--cooc-window", o.cooc_window,
                    "Cooccurrence distance for distributional vectors (default 10)");
    cmd->add_option("--size", o.size, "Embedding size (default 100)");
    cmd->add_option("--window", o.window, "Max one-side context width (default 11)");
    cmd->add_option("--sample", o.sample, "Subsampling threshold, <= 0 disables (default 1e-3)");
    cmd->add_option("--epochs", o.epochs, "Training passes (default 5)");
    cmd->add_option("--alpha", o.alpha, "Initial learning rate (default 0.025)");
    cmd->add_option("--seed", o.seed, "RNG seed (default 1)");
    cmd->add_option("--threads", o.threads, "Training worker threads (default 1)");
    cmd->add_option("--combine", o.combine, "Projection of multi-active inputs: sum|mean")
        ->check(CLI::IsMember({"sum", "mean"}));
}

hv::TrainingConfig to_training_config(const TrainOpts& o) {
    hv::TrainingConfig tc;
    tc.dim = o.size;
    tc.window = o.window;
    tc.sample = o.sample;
    tc.epochs = o.epochs;
    tc.alpha0 = o.alpha;
    tc.seed = o.seed;
    tc.threads = o.threads;
    tc.combine = hv::combine_from_name(o.combine);
    return tc;
}

int run_build_vocab(const CommonOpts& common, const std::string& output) {
    hv::CorpusStream corpus(common.corpus, common.lower());
    hv::Vocabulary vocab = hv::build_vocabulary(corpus);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!output.empty()) {
        file.open(output, std::ios::binary);
        if (!file) throw hv::DataError("cannot write vocabulary file: " + output);
        out = &file;
    }
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        *out << vocab.words[i] << '\t' << vocab.freq[i] << '\n';
    }
    std::cerr << "vocabulary: " << vocab.size() << " types, " << vocab.total_tokens
              << " tokens\n";
    return 0;
}

int run_train(const TrainOpts& o) {
    hv::CorpusStream corpus(o.common.corpus, o.common.lower());
    hv::Vocabulary vocab = hv::build_vocabulary(corpus);
    hv::SchemeConfig scheme_cfg{hv::scheme_from_name(o.scheme), o.theta};

    std::unique_ptr<hv::SparseBinaryMatrix> cooc;
    if (scheme_cfg.scheme != hv::Scheme::kOneHot || !o.dump_cooc.empty()) {
        cooc = std::make_unique<hv::SparseBinaryMatrix>(
            hv::build_cooccurrence(corpus, vocab, o.cooc_window));
    }
    if (!o.dump_cooc.empty()) {
        std::ofstream out(o.dump_cooc, std::ios::binary);
        if (!out) throw hv::DataError("cannot write: " + o.dump_cooc);
        cooc->dump(out, vocab);
    }
    if (!o.save_vocab.empty()) {
        std::ofstream out(o.save_vocab, std::ios::binary);
        if (!out) throw hv::DataError("cannot write: " + o.save_vocab);
        for (std::size_t i = 0; i < vocab.size(); ++i) {
            out << vocab.words[i] << '\t' << vocab.freq[i] << '\n';
        }
    }

    hv::InputRepresentation rep = hv::build_representation(vocab, cooc.get(), scheme_cfg);
    if (!o.dump_rep.empty()) {
        std::ofstream out(o.dump_rep, std::ios::binary);
        if (!out) throw hv::DataError("cannot write: " + o.dump_rep);
        rep.dump(out, vocab);
    }
    hv::RepresentationSummary summary = hv::describe(rep);
    std::cerr << "representation: scheme=" << hv::scheme_name(scheme_cfg.scheme)
              << " input_dim=" << summary.input_dim << " k=" << summary.k
              << " n=" << summary.n << " frequent=" << summary.frequent_words
              << " rare=" << summary.rare_words << " mean_active=" << summary.mean_active
              << " max_active=" << summary.max_active
              << " fallback=" << summary.fallback_words << '\n';

    hv::HuffmanTree tree = hv::build_huffman(vocab);
    hv::TrainOutput out = hv::train(corpus, vocab, rep, tree, to_training_config(o));
    hv::save_embeddings_text(out.embeddings, std::filesystem::path(o.output));
    std::cerr << "wrote " << out.embeddings.size() << " x " << out.embeddings.dim()
              << " embeddings to " << o.output << '\n';
    return 0;
}

int run_eval(const EvalOpts& o) {
    hv::EmbeddingSet emb = hv::load_embeddings_text(o.embeddings);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output, std::ios::binary);
        if (!file) throw hv::DataError("cannot write: " + o.output);
        out = &file;
    }
    *out << "dataset\tcovered\ttotal\trho\n";
    char buf[32];
    for (const auto& arg : o.datasets) {
        auto [name, path] = parse_dataset_arg(arg);
        hv::SimilarityDataset ds = hv::load_dataset(path, name, o.lowercase == "on");
        hv::EvalReport report = hv::evaluate(emb, ds);
        std::snprintf(buf, sizeof buf, "%.6f", report.rho);
        *out << report.dataset << '\t' << report.covered << '\t' << report.total << '\t'
             << buf << '\n';
        if (report.zero_vector_pairs > 0) {
            std::cerr << "note: " << report.dataset << ": skipped "
                      << report.zero_vector_pairs << " zero-vector pairs\n";
        }
    }
    return 0;
}

int run_sweep_cmd(const SweepOpts& o) {
    hv::SweepConfig cfg;
    cfg.corpus = o.train.common.corpus;
    cfg.lowercase = o.train.common.lower();
    for (const auto& arg : o.datasets) cfg.datasets.push_back(parse_dataset_arg(arg));
    cfg.hybrid_schemes.clear();
    for (const auto& name : split_list(o.schemes)) {
        hv::Scheme s = hv::scheme_from_name(name);
        if (s != hv::Scheme::kMixed && s != hv::Scheme::kSeparate) {
            throw hv::DataError("--schemes lists hybrid schemes only (mixed, separate); "
                                "one-hot and distributional rows are controlled by "
                                "--no-one-hot / --no-distributional");
        }
        cfg.hybrid_schemes.push_back(s);
    }
    cfg.thetas.clear();
    for (const auto& t : split_list(o.thetas)) {
        try {
            cfg.thetas.push_back(std::stoull(t));
        } catch (const std::exception&) {
            throw hv::DataError("bad theta value: " + t);
        }
    }
    cfg.include_one_hot = !o.no_one_hot;
    cfg.include_distributional = !o.no_distributional;
    cfg.n_models = o.models;
    cfg.base_seed = o.train.seed;
    cfg.cooc_window = o.train.cooc_window;
    cfg.training = to_training_config(o.train);
    cfg.jobs = o.jobs;

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output, std::ios::binary);
        if (!file) throw hv::DataError("cannot write: " + o.output);
        out = &file;
    }

    bool header_written = false;
    std::string last_label = "(none)";
    hv::SweepReport report;
    try {
        report = hv::run_sweep(
            cfg,
            [&](const hv::SweepReport& rep, const hv::SweepRow& row) {
                if (!header_written) {
                    hv::write_sweep_header(*out, rep);
                    header_written = true;
                }
                hv::write_sweep_row(*out, row, rep.config.n_models);
                out->flush();
                last_label = row.label();
                if (row.theta) last_label += " theta=" + std::to_string(*row.theta);
            },
            &std::cerr);
    } catch (...) {
        if (header_written) {
            *out << "# incomplete sweep; last finished configuration: " << last_label
                 << '\n';
            out->flush();
        }
        throw;
    }

    if (!o.report_json.empty()) {
        std::ofstream jf(o.report_json, std::ios::binary);
        if (!jf) throw hv::DataError("cannot write: " + o.report_json);
        hv::write_sweep_json(jf, report);
    }
    if (!o.dump_plot.empty()) {
        std::ofstream pf(o.dump_plot, std::ios::binary);
        if (!pf) throw hv::DataError("cannot write: " + o.dump_plot);
        hv::write_plot_data(pf, report);
    }
    return 0;
}

std::vector<double> read_sample_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hv::DataError("cannot open sample file: " + path);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            values.push_back(std::stod(line));
        } catch (const std::exception&) {
            throw hv::DataError(path + ":" + std::to_string(lineno) + ": bad value");
        }
    }
    if (values.size() < 2) {
        throw hv::DataError(path + ": needs at least 2 values, found " +
                            std::to_string(values.size()));
    }
    return values;
}

int run_significance(const SignificanceOpts& o) {
    auto a = read_sample_file(o.file_a);
    auto b = read_sample_file(o.file_b);
    hv::TTestResult r = o.paired ? hv::ttest_paired(a, b) : hv::ttest(a, b);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.6g\t%g\t%.6g\t%s", r.t, r.df, r.p,
                  r.significant ? "yes" : "no");
    std::cout << "t\tdf\tp\tsignificant\n" << buf << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skip-gram embeddings with one-hot, hybrid and distributional input layers"};
    app.require_subcommand(1);

    CommonOpts bv_common;
    std::string bv_output;
    auto* bv = app.add_subcommand("build-vocab", "Count word frequencies in a corpus");
    bv->add_option("--corpus", bv_common.corpus, "UTF-8 corpus, one sentence per line")
        ->required();
    bv->add_option("--lowercase", bv_common.lowercase, "Lowercase tokens (default on)")
        ->check(CLI::IsMember({"on", "off"}));
    bv->add_option("--output", bv_output, "Output file (default stdout)");
    bv->set_config("--config");

    TrainOpts train_opts;
    auto* tr = app.add_subcommand("train", "Train one model and write its embeddings");
    add_training_flags(tr, train_opts);
    tr->add_option("--output", train_opts.output, "Embedding text file")->required();
    tr->add_option("--dump-cooc", train_opts.dump_cooc, "Dump the cooccurrence rows");
    tr->add_option("--dump-rep", train_opts.dump_rep, "Dump the active input dimensions");
    tr->add_option("--save-vocab", train_opts.save_vocab, "Save the vocabulary");
    tr->set_config("--config");

    EvalOpts eval_opts;
    auto* ev = app.add_subcommand("eval", "Score embeddings on word-relatedness datasets");
    ev->add_option("--embeddings", eval_opts.embeddings, "Embedding text file")->required();
    ev->add_option("--dataset", eval_opts.datasets,
                   "Dataset file, NAME=PATH or bare path (repeatable)")
        ->required();
    ev->add_option("--lowercase", eval_opts.lowercase, "Lowercase dataset words (default on)")
        ->check(CLI::IsMember({"on", "off"}));
    ev->add_option("--output", eval_opts.output, "Output TSV (default stdout)");
    ev->set_config("--config");

    SweepOpts sweep_opts;
    auto* sw = app.add_subcommand(
        "sweep", "Train and evaluate every scheme/theta configuration over several seeds");
    add_training_flags(sw, sweep_opts.train);
    sw->add_option("--dataset", sweep_opts.datasets,
                   "Dataset file, NAME=PATH or bare path (repeatable)")
        ->required();
    sw->add_option("--schemes", sweep_opts.schemes, "Hybrid schemes (default mixed,separate)");
    sw->add_option("--thetas", sweep_opts.thetas,
                   "Threshold list (default 1,2,5,10,20,50,100,1000)");
    sw->add_flag("--no-one-hot", sweep_opts.no_one_hot, "Skip the one-hot baseline row");
    sw->add_flag("--no-distributional", sweep_opts.no_distributional,
                 "Skip the distributional row");
    sw->add_option("--models", sweep_opts.models, "Models per configuration (default 10)");
    sw->add_option("--jobs", sweep_opts.jobs, "Parallel trainings per configuration");
    sw->add_option("--output", sweep_opts.output, "Sweep TSV (default stdout)");
    sw->add_option("--report-json", sweep_opts.report_json,
                   "Full report with per-seed values, as JSON");
    sw->add_option("--dump-plot", sweep_opts.dump_plot, "Theta vs mean rho plot data");
    sw->set_config("--config");

    SignificanceOpts sig_opts;
    auto* sg = app.add_subcommand("significance",
                                  "Student's t-test between two files of per-seed rho values");
    sg->add_option("file_a", sig_opts.file_a, "First sample file")->required();
    sg->add_option("file_b", sig_opts.file_b, "Second sample file")->required();
    sg->add_flag("--paired", sig_opts.paired, "Paired t-test instead of unpaired");
    sg->set_config("--config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (bv->parsed()) return run_build_vocab(bv_common, bv_output);
        if (tr->parsed()) return run_train(train_opts);
        if (ev->parsed()) return run_eval(eval_opts);
        if (sw->parsed()) return run_sweep_cmd(sweep_opts);
        if (sg->parsed()) return run_significance(sig_opts);
    } catch (const hv::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const hv::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
