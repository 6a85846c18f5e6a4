#include "hybridvec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "hybridvec/errors.hpp"

namespace hybridvec {

SimilarityDataset load_dataset(const std::filesystem::path& path, const std::string& name,
                               bool lowercase) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file: " + path.string());

    SimilarityDataset ds;
    ds.name = name;
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;

        std::istringstream fields(line);
        SimilarityDataset::Pair pair;
        std::string score_text, extra;
        if (!(fields >> pair.word1 >> pair.word2 >> score_text) || (fields >> extra)) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": expected \"word1 word2 score\"");
        }
        std::size_t pos = 0;
        try {
            pair.gold = std::stod(score_text, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != score_text.size() || !std::isfinite(pair.gold)) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": bad score \"" + score_text + "\"");
        }
        if (lowercase) {
            auto lower = [](std::string& s) {
                std::transform(s.begin(), s.end(), s.begin(), [](char c) {
                    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
                });
            };
            lower(pair.word1);
            lower(pair.word2);
        }
        auto key = pair.word1 <= pair.word2 ? std::make_pair(pair.word1, pair.word2)
                                            : std::make_pair(pair.word2, pair.word1);
        if (!seen.insert(key).second) {
            throw DataError(path.string() + ":" + std::to_string(lineno) +
                            ": duplicate pair \"" + pair.word1 + " " + pair.word2 + "\"");
        }
        ds.pairs.push_back(std::move(pair));
    }
    if (ds.pairs.empty()) {
        throw DataError("empty dataset: " + path.string());
    }
    return ds;
}

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw DataError("cosine: dimension mismatch");
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) throw NumericError("zero vector");
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

namespace {

// Fractional (average) ranks, 1-based: ties get the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("undefined correlation");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DataError("spearman: length mismatch");
    if (xs.size() < 3) throw DataError("undefined correlation");
    const auto rx = fractional_ranks(xs);
    const auto ry = fractional_ranks(ys);
    return pearson(rx, ry);
}

EvalReport evaluate(const EmbeddingSet& emb, const SimilarityDataset& ds) {
    if (emb.size() == 0) throw DataError("empty embedding set");
    EvalReport report;
    report.dataset = ds.name;
    report.total = ds.pairs.size();
    std::vector<double> gold, sim;
    for (const auto& pair : ds.pairs) {
        auto u = emb.find(pair.word1);
        auto v = emb.find(pair.word2);
        if (u.empty() || v.empty()) continue;
        ++report.covered;
        try {
            sim.push_back(cosine(u, v));
        } catch (const NumericError&) {
            ++report.zero_vector_pairs;
            continue;
        }
        gold.push_back(pair.gold);
    }
    if (gold.size() < 3) {
        throw DataError("insufficient coverage: " + std::to_string(gold.size()) +
                        " usable pairs in " + ds.name);
    }
    report.rho = spearman(gold, sim);
    return report;
}

// Continued-fraction evaluation of I_x(a,b) (modified Lentz method).
double regularized_incomplete_beta(double x, double a, double b) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // Use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a) where the fraction
    // converges faster.
    if (x > (a + 1.0) / (a + b + 2.0)) {
        return 1.0 - regularized_incomplete_beta(1.0 - x, b, a);
    }

    const double log_front = a * std::log(x) + b * std::log1p(-x) -
                             (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= 500; ++m) {
        const double dm = m;
        // Even step.
        double num = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        result *= d * c;
        // Odd step.
        num = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(log_front) * result / a;
}

namespace {

TTestResult finish_ttest(double t, double df) {
    TTestResult r;
    r.t = t;
    r.df = df;
    if (std::isinf(t)) {
        r.p = 0.0;
    } else {
        const double x = df / (t * t + df);
        r.p = regularized_incomplete_beta(x, df / 2.0, 0.5);
    }
    r.significant = r.p < 0.05;
    return r;
}

}  // namespace

TTestResult ttest(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) {
        throw DataError("t-test needs at least 2 samples per group");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / na;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / nb;
    double va = 0.0, vb = 0.0;
    for (double x : a) va += (x - ma) * (x - ma);
    for (double x : b) vb += (x - mb) * (x - mb);
    const double df = na + nb - 2.0;
    const double pooled = (va + vb) / df;
    const double se = std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    double t;
    if (se == 0.0) {
        if (ma == mb) {
            TTestResult r;
            r.t = 0.0;
            r.df = df;
            r.p = 1.0;
            r.significant = false;
            return r;
        }
        t = ma > mb ? std::numeric_limits<double>::infinity()
                    : -std::numeric_limits<double>::infinity();
    } else {
        t = (ma - mb) / se;
    }
    return finish_ttest(t, df);
}

TTestResult ttest_paired(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DataError("paired t-test needs equal sample counts");
    if (a.size() < 2) throw DataError("t-test needs at least 2 samples per group");
    const std::size_t n = a.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / n;
    double var = 0.0;
    for (double d : diff) var += (d - mean) * (d - mean);
    var /= (n - 1);
    const double df = static_cast<double>(n - 1);
    const double se = std::sqrt(var / n);
    double t;
    if (se == 0.0) {
        if (mean == 0.0) {
            TTestResult r;
            r.t = 0.0;
            r.df = df;
            r.p = 1.0;
            r.significant = false;
            return r;
        }
        t = mean > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
    } else {
        t = mean / se;
    }
    return finish_ttest(t, df);
}

}  // namespace hybridvec
