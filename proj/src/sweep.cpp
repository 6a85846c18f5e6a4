#include "hybridvec/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <memory>
#include <thread>

#include <json.hpp>

#include "hybridvec/cooccurrence.hpp"
#include "hybridvec/errors.hpp"
#include "hybridvec/huffman.hpp"

namespace hybridvec {

std::string SweepRow::label() const {
    return scheme_name(scheme);
}

namespace {

struct SweepJob {
    Scheme scheme;
    std::optional<std::uint64_t> theta;
};

std::vector<SweepJob> enumerate_configs(const SweepConfig& cfg) {
    std::vector<SweepJob> configs;
    if (cfg.include_one_hot) {
        configs.push_back({Scheme::kOneHot, std::nullopt});
    }
    for (Scheme s : cfg.hybrid_schemes) {
        for (std::uint64_t theta : cfg.thetas) {
            configs.push_back({s, theta});
        }
    }
    if (cfg.include_distributional) {
        configs.push_back({Scheme::kDistributional, std::nullopt});
    }
    return configs;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

}  // namespace

SweepReport run_sweep(const SweepConfig& cfg,
                      const std::function<void(const SweepReport&, const SweepRow&)>& on_row,
                      std::ostream* progress) {
    if (cfg.n_models < 1) throw DataError("sweep needs at least 1 model per configuration");
    if (cfg.datasets.empty()) throw DataError("sweep needs at least one dataset");

    CorpusStream corpus(cfg.corpus, cfg.lowercase);
    const Vocabulary vocab = build_vocabulary(corpus);
    const HuffmanTree tree = build_huffman(vocab);

    std::vector<SimilarityDataset> datasets;
    for (const auto& [name, path] : cfg.datasets) {
        datasets.push_back(load_dataset(path, name, cfg.lowercase));
    }

    const auto configs = enumerate_configs(cfg);

    // Cooccurrence is shared by every non-one-hot configuration.
    std::unique_ptr<SparseBinaryMatrix> cooc;
    for (const auto& job : configs) {
        if (job.scheme != Scheme::kOneHot) {
            cooc = std::make_unique<SparseBinaryMatrix>(
                build_cooccurrence(corpus, vocab, cfg.cooc_window));
            break;
        }
    }

    SweepReport report;
    report.corpus_path = cfg.corpus.string();
    report.config = cfg;
    for (int i = 0; i < cfg.n_models; ++i) {
        report.seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(i));
    }

    // Coverage depends only on the vocabulary, not on any trained model.
    for (const auto& ds : datasets) {
        DatasetCoverage cov;
        cov.dataset = ds.name;
        cov.total = ds.pairs.size();
        for (const auto& pair : ds.pairs) {
            if (vocab.lookup(pair.word1) && vocab.lookup(pair.word2)) ++cov.covered;
        }
        report.coverage.push_back(cov);
    }

    // Per-dataset rho samples of the one-hot baseline, for the t-tests.
    std::vector<std::vector<double>> baseline(datasets.size());

    for (const auto& job : configs) {
        SchemeConfig scheme_cfg{job.scheme, job.theta.value_or(0)};
        const InputRepresentation rep =
            build_representation(vocab, cooc.get(), scheme_cfg);

        if (progress) {
            *progress << "sweep: " << scheme_name(job.scheme);
            if (job.theta) *progress << " theta=" << *job.theta;
            *progress << " (input_dim=" << rep.input_dim() << ")\n";
        }

        // rhos[model][dataset]
        std::vector<std::vector<double>> rhos(cfg.n_models,
                                              std::vector<double>(datasets.size()));
        auto run_model = [&](int mi) {
            TrainingConfig tc = cfg.training;
            tc.seed = cfg.base_seed + static_cast<std::uint64_t>(mi);
            TrainOutput out = train(corpus, vocab, rep, tree, tc);
            for (std::size_t di = 0; di < datasets.size(); ++di) {
                rhos[mi][di] = evaluate(out.embeddings, datasets[di]).rho;
            }
        };

        const int jobs = std::min(std::max(1, cfg.jobs), cfg.n_models);
        if (jobs == 1) {
            for (int mi = 0; mi < cfg.n_models; ++mi) run_model(mi);
        } else {
            std::atomic<int> next{0};
            std::vector<std::exception_ptr> errors(jobs);
            std::vector<std::thread> pool;
            for (int t = 0; t < jobs; ++t) {
                pool.emplace_back([&, t] {
                    try {
                        for (int mi = next.fetch_add(1); mi < cfg.n_models;
                             mi = next.fetch_add(1)) {
                            run_model(mi);
                        }
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
            for (auto& th : pool) th.join();
            for (auto& err : errors) {
                if (err) std::rethrow_exception(err);
            }
        }

        SweepRow row;
        row.scheme = job.scheme;
        row.theta = job.theta;
        for (std::size_t di = 0; di < datasets.size(); ++di) {
            SweepCell cell;
            cell.dataset = datasets[di].name;
            for (int mi = 0; mi < cfg.n_models; ++mi) {
                cell.per_seed_rho.push_back(rhos[mi][di]);
            }
            cell.mean_rho = mean_of(cell.per_seed_rho);
            cell.sd_rho = sample_sd(cell.per_seed_rho, cell.mean_rho);
            if (job.scheme == Scheme::kOneHot && baseline[di].empty()) {
                baseline[di] = cell.per_seed_rho;
            }
            if (cfg.n_models >= 2 && !baseline[di].empty()) {
                TTestResult tt = ttest(cell.per_seed_rho, baseline[di]);
                cell.p_vs_onehot = tt.p;
                cell.significant = tt.significant ? 1 : 0;
            } else {
                cell.p_vs_onehot = std::numeric_limits<double>::quiet_NaN();
                cell.significant = -1;
            }
            row.cells.push_back(std::move(cell));
        }
        report.rows.push_back(row);
        if (on_row) on_row(report, report.rows.back());
    }
    return report;
}

namespace {

std::string fmt_x100(double rho) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", rho * 100.0);
    return buf;
}

std::string fmt_p(double p) {
    if (std::isnan(p)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", p);
    return buf;
}

}  // namespace

void write_sweep_header(std::ostream& out, const SweepReport& report) {
    out << "# corpus: " << report.corpus_path << '\n';
    out << "# models per configuration: " << report.config.n_models
        << " (seeds " << report.config.base_seed << ".."
        << report.config.base_seed + static_cast<std::uint64_t>(report.config.n_models) - 1
        << ")\n";
    for (const auto& cov : report.coverage) {
        out << "# coverage " << cov.dataset << ": " << cov.covered << " of " << cov.total
            << " pairs\n";
    }
    out << "scheme\ttheta\tdataset\tmean_rho_x100\tsd_x100\tn_models\tp_vs_onehot\t"
           "significant\n";
}

void write_sweep_row(std::ostream& out, const SweepRow& row, int n_models) {
    for (const auto& cell : row.cells) {
        out << row.label() << '\t';
        if (row.theta) {
            out << *row.theta;
        } else {
            out << '-';
        }
        out << '\t' << cell.dataset << '\t' << fmt_x100(cell.mean_rho) << '\t'
            << (n_models >= 2 ? fmt_x100(cell.sd_rho) : std::string("n/a")) << '\t'
            << n_models << '\t' << fmt_p(cell.p_vs_onehot) << '\t'
            << (cell.significant < 0 ? "n/a" : (cell.significant ? "yes" : "no")) << '\n';
    }
}

void write_sweep_tsv(std::ostream& out, const SweepReport& report) {
    write_sweep_header(out, report);
    for (const auto& row : report.rows) {
        write_sweep_row(out, row, report.config.n_models);
    }
}

void write_sweep_json(std::ostream& out, const SweepReport& report) {
    nlohmann::json j;
    j["corpus"] = report.corpus_path;
    j["seeds"] = report.seeds;
    const auto& cfg = report.config;
    j["config"] = {
        {"lowercase", cfg.lowercase},
        {"n_models", cfg.n_models},
        {"base_seed", cfg.base_seed},
        {"cooc_window", cfg.cooc_window},
        {"thetas", cfg.thetas},
        {"training",
         {{"dim", cfg.training.dim},
          {"window", cfg.training.window},
          {"sample", cfg.training.sample},
          {"epochs", cfg.training.epochs},
          {"alpha0", cfg.training.alpha0},
          {"alpha_floor", cfg.training.resolved_alpha_floor()},
          {"threads", cfg.training.threads},
          {"combine", combine_name(cfg.training.combine)}}},
    };
    j["coverage"] = nlohmann::json::array();
    for (const auto& cov : report.coverage) {
        j["coverage"].push_back(
            {{"dataset", cov.dataset}, {"covered", cov.covered}, {"total", cov.total}});
    }
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json jr;
        jr["scheme"] = row.label();
        if (row.theta) {
            jr["theta"] = *row.theta;
        } else {
            jr["theta"] = nullptr;
        }
        jr["cells"] = nlohmann::json::array();
        for (const auto& cell : row.cells) {
            nlohmann::json jc;
            jc["dataset"] = cell.dataset;
            jc["per_seed_rho"] = cell.per_seed_rho;
            jc["mean_rho"] = cell.mean_rho;
            jc["sd_rho"] = cell.sd_rho;
            if (std::isnan(cell.p_vs_onehot)) {
                jc["p_vs_onehot"] = nullptr;
            } else {
                jc["p_vs_onehot"] = cell.p_vs_onehot;
            }
            jc["significant"] =
                cell.significant < 0 ? nlohmann::json() : nlohmann::json(cell.significant == 1);
            jr["cells"].push_back(jc);
        }
        j["rows"].push_back(jr);
    }
    out << j.dump(2) << '\n';
}

void write_plot_data(std::ostream& out, const SweepReport& report) {
    out << "scheme\ttheta\tdataset\tmean_rho_x100\n";
    for (const auto& row : report.rows) {
        for (const auto& cell : row.cells) {
            out << row.label() << '\t';
            if (row.theta) {
                out << *row.theta;
            } else {
                out << '-';
            }
            out << '\t' << cell.dataset << '\t' << fmt_x100(cell.mean_rho) << '\n';
        }
    }
}

}  // namespace hybridvec
