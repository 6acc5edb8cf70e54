#include "cone/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cone {

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // Positions i..j (0-based) share the mean of ranks i+1..j+1.
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

namespace {

struct RankStats {
    std::vector<double> ranks;
    double mean = 0.0;
    double sd = 0.0;  // population standard deviation of the ranks
};

RankStats make_rank_stats(const std::vector<double>& values, const char* side) {
    RankStats rs;
    rs.ranks = average_ranks(values);
    const double n = static_cast<double>(rs.ranks.size());
    rs.mean = std::accumulate(rs.ranks.begin(), rs.ranks.end(), 0.0) / n;
    double ss = 0.0;
    for (const double r : rs.ranks) ss += (r - rs.mean) * (r - rs.mean);
    rs.sd = std::sqrt(ss / n);
    if (rs.sd == 0.0)
        throw std::invalid_argument(std::string("spearman_rho: ") + side +
                                    " ranks have zero variance; correlation undefined");
    return rs;
}

double pearson_of_ranks(const RankStats& x, const RankStats& y) {
    const std::size_t n = x.ranks.size();
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        cov += (x.ranks[i] - x.mean) * (y.ranks[i] - y.mean);
    cov /= static_cast<double>(n);
    return cov / (x.sd * y.sd);
}

void check_lengths(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("spearman_rho: length mismatch");
    if (xs.size() < 2)
        throw std::invalid_argument("spearman_rho: need at least two observations");
}

// Deterministic Fisher-Yates; avoids std::shuffle, whose sequence is
// implementation-defined.
template <typename T>
void det_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng() % i]);
}

} // namespace

double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys) {
    check_lengths(xs, ys);
    const RankStats rx = make_rank_stats(xs, "x");
    const RankStats ry = make_rank_stats(ys, "y");
    return pearson_of_ranks(rx, ry);
}

double permutation_p_value(const std::vector<double>& xs, const std::vector<double>& ys,
                           std::int64_t iterations, std::uint64_t seed) {
    check_lengths(xs, ys);
    if (iterations < 1)
        throw std::invalid_argument("permutation_p_value: iterations must be positive");
    const RankStats rx = make_rank_stats(xs, "x");
    RankStats ry = make_rank_stats(ys, "y");
    const double observed = std::abs(pearson_of_ranks(rx, ry));
    // Tolerate floating-point jitter when a permuted statistic ties the
    // observed one (the identity permutation must always count as a hit).
    const double threshold = observed - 1e-12;

    // Permuting y's values permutes its ranks; mean and sd never change, so
    // each trial is a single pass over the shuffled rank vector.
    const std::size_t n = rx.ranks.size();

    // Exact enumeration when the permutation group is small enough.
    double fact = 1.0;
    bool exhaustive = false;
    for (std::size_t k = 2; k <= n; ++k) {
        fact *= static_cast<double>(k);
        if (fact > static_cast<double>(iterations)) break;
    }
    exhaustive = fact <= static_cast<double>(iterations);

    const auto trial_rho = [&](const std::vector<double>& perm_ranks) {
        double cov = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            cov += (rx.ranks[i] - rx.mean) * (perm_ranks[i] - ry.mean);
        cov /= static_cast<double>(n);
        return cov / (rx.sd * ry.sd);
    };

    if (exhaustive) {
        std::vector<double> perm = ry.ranks;
        std::sort(perm.begin(), perm.end());
        std::int64_t hits = 0;
        std::int64_t total = 0;
        do {
            if (std::abs(trial_rho(perm)) >= threshold) ++hits;
            ++total;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return static_cast<double>(hits) / static_cast<double>(total);
    }

    std::mt19937_64 rng(seed);
    std::vector<double> perm = ry.ranks;
    std::int64_t hits = 0;
    for (std::int64_t it = 0; it < iterations; ++it) {
        det_shuffle(perm, rng);
        if (std::abs(trial_rho(perm)) >= threshold) ++hits;
    }
    return static_cast<double>(1 + hits) / static_cast<double>(iterations + 1);
}

} // namespace cone
