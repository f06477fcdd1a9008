#include "qcd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qcd {

BoxDomain BoxDomain::unit(std::size_t d) {
    BoxDomain dom{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
    dom.validate();
    return dom;
}

void BoxDomain::validate() const {
    if (lower.empty()) throw std::invalid_argument("BoxDomain: dimension must be >= 1");
    if (lower.size() != upper.size()) throw std::invalid_argument("BoxDomain: bound sizes differ");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] <= upper[i])) throw std::invalid_argument("BoxDomain: bounds out of order");
}

std::vector<std::vector<double>> lattice_starts(const BoxDomain& dom, std::size_t max_starts,
                                                std::uint64_t seed) {
    dom.validate();
    const std::size_t d = dom.dim();
    auto level = [&](std::size_t dim, int lvl) {
        return dom.lower[dim] + 0.5 * lvl * (dom.upper[dim] - dom.lower[dim]);
    };

    // 3^d, saturating once it passes max_starts.
    std::size_t lattice_size = 1;
    for (std::size_t i = 0; i < d && lattice_size <= max_starts; ++i) lattice_size *= 3;

    std::vector<std::vector<double>> starts;
    if (lattice_size <= max_starts) {
        for (std::size_t code = 0; code < lattice_size; ++code) {
            std::vector<double> x(d);
            std::size_t rest = code;
            for (std::size_t i = 0; i < d; ++i, rest /= 3) x[i] = level(i, static_cast<int>(rest % 3));
            starts.push_back(std::move(x));
        }
        return starts;
    }

    std::set<std::vector<int>> seen;
    auto push = [&](std::vector<int> lv) {
        if (starts.size() >= max_starts || !seen.insert(lv).second) return;
        std::vector<double> x(d);
        for (std::size_t i = 0; i < d; ++i) x[i] = level(i, lv[i]);
        starts.push_back(std::move(x));
    };
    push(std::vector<int>(d, 1));
    push(std::vector<int>(d, 0));
    push(std::vector<int>(d, 2));

    const std::size_t m = max_starts > starts.size() ? max_starts - starts.size() : 0;
    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> columns(d, std::vector<int>(m));
    for (auto& col : columns) {
        for (std::size_t k = 0; k < m; ++k) col[k] = static_cast<int>((3 * k) / m);
        std::shuffle(col.begin(), col.end(), rng);
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<int> lv(d);
        for (std::size_t i = 0; i < d; ++i) lv[i] = columns[i][k];
        push(std::move(lv));
    }
    return starts;
}

namespace {

struct Vertex {
    std::vector<double> x;
    double cost;  // negated objective
};

class NelderMead {
public:
    NelderMead(const Objective& f, const BoxDomain& dom, const OptConfig& cfg)
        : f_(f), dom_(dom), cfg_(cfg) {}

    long evaluations() const { return evals_; }

    // Returns the best vertex found from `start`; `converged` reports whether
    // the tolerance test was met before the budget ran out.
    Vertex run(const std::vector<double>& start, bool& converged) {
        Vertex best = make_vertex(start);
        converged = false;
        double step = cfg_.initial_step;
        // A converged simplex may have collapsed onto a face of the box, so
        // always rebuild it at least once around the best point.
        for (int attempt = 0; attempt <= cfg_.max_restarts; ++attempt) {
            bool ok = false;
            Vertex found = descend(best, step, ok);
            const double gain = best.cost - found.cost;
            if (found.cost < best.cost) best = std::move(found);
            converged = ok;
            if (!ok || (attempt > 0 && gain <= cfg_.ftol)) break;
            step = std::max(step * 0.5, 1e-3);
        }
        return best;
    }

private:
    Vertex make_vertex(std::vector<double> x) {
        clamp(x);
        ++evals_;
        const double value = f_(std::span<const double>(x));
        return {std::move(x), -value};
    }

    void clamp(std::vector<double>& x) const {
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], dom_.lower[i], dom_.upper[i]);
    }

    bool budget_left() const { return evals_ < cfg_.max_evals_per_start; }

    Vertex descend(const Vertex& start, double step_fraction, bool& converged) {
        const std::size_t d = start.x.size();

        std::vector<Vertex> simplex;
        simplex.reserve(d + 1);
        simplex.push_back(start);
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<double> x = simplex.front().x;
            const double width = dom_.upper[i] - dom_.lower[i];
            double h = step_fraction * width;
            if (x[i] + h > dom_.upper[i]) h = -h;
            x[i] += h;
            simplex.push_back(make_vertex(std::move(x)));
        }

        auto by_cost = [](const Vertex& a, const Vertex& b) { return a.cost < b.cost; };
        // Trial point, clamped. One that lands on an existing vertex would
        // degenerate the simplex and is rejected without evaluation.
        auto trial = [&](std::vector<double> x) {
            clamp(x);
            for (const auto& v : simplex)
                if (v.x == x) return Vertex{std::move(x), std::numeric_limits<double>::infinity()};
            return make_vertex(std::move(x));
        };
        std::vector<double> centroid(d);
        auto along = [&](const std::vector<double>& from, double t) {
            // centroid + t (from - centroid)
            std::vector<double> x(d);
            for (std::size_t i = 0; i < d; ++i) x[i] = centroid[i] + t * (from[i] - centroid[i]);
            return x;
        };

        converged = false;
        while (true) {
            std::stable_sort(simplex.begin(), simplex.end(), by_cost);
            const Vertex& best = simplex.front();
            const Vertex& worst = simplex.back();

            double extent = 0.0;
            for (std::size_t v = 1; v <= d; ++v)
                for (std::size_t i = 0; i < d; ++i)
                    extent = std::max(extent, std::abs(simplex[v].x[i] - best.x[i]));
            if (worst.cost - best.cost < cfg_.ftol && extent < cfg_.xtol) {
                converged = true;
                break;
            }
            if (!budget_left()) break;

            std::fill(centroid.begin(), centroid.end(), 0.0);
            for (std::size_t v = 0; v < d; ++v)
                for (std::size_t i = 0; i < d; ++i) centroid[i] += simplex[v].x[i] / static_cast<double>(d);

            Vertex reflected = trial(along(worst.x, -1.0));
            if (reflected.cost < best.cost) {
                Vertex expanded = trial(along(worst.x, -2.0));
                simplex.back() = expanded.cost < reflected.cost ? std::move(expanded) : std::move(reflected);
                continue;
            }
            if (reflected.cost < simplex[d - 1].cost) {
                simplex.back() = std::move(reflected);
                continue;
            }
            if (reflected.cost < worst.cost) {
                Vertex outside = trial(along(worst.x, -0.5));
                if (outside.cost < reflected.cost) {
                    simplex.back() = std::move(outside);
                    continue;
                }
            } else {
                Vertex inside = trial(along(worst.x, 0.5));
                if (inside.cost < worst.cost) {
                    simplex.back() = std::move(inside);
                    continue;
                }
            }
            // shrink toward the best vertex
            for (std::size_t v = 1; v <= d; ++v) {
                std::vector<double> x(d);
                for (std::size_t i = 0; i < d; ++i)
                    x[i] = simplex[0].x[i] + 0.5 * (simplex[v].x[i] - simplex[0].x[i]);
                simplex[v] = make_vertex(std::move(x));
            }
        }
        std::stable_sort(simplex.begin(), simplex.end(), by_cost);
        return simplex.front();
    }

    const Objective& f_;
    const BoxDomain& dom_;
    const OptConfig& cfg_;
    long evals_ = 0;  // per start, restarts included
};

}  // namespace

OptResult maximize(const Objective& objective, const BoxDomain& dom, const OptConfig& cfg) {
    dom.validate();
    std::vector<std::vector<double>> starts;
    for (const auto& x : cfg.extra_starts) {
        if (x.size() != dom.dim()) throw std::invalid_argument("maximize: extra start has wrong dimension");
        starts.push_back(x);
    }
    for (auto& x : lattice_starts(dom, cfg.max_starts, cfg.seed)) starts.push_back(std::move(x));

    OptResult result;
    bool have_best = false;
    for (const auto& start : starts) {
        NelderMead nm(objective, dom, cfg);
        bool converged = false;
        Vertex v = nm.run(start, converged);
        result.evaluations += nm.evaluations();
        if (!have_best || -v.cost > result.best_value) {
            result.best_point = std::move(v.x);
            result.best_value = -v.cost;
            result.converged = converged;
            have_best = true;
        }
    }
    return result;
}

}  // namespace qcd
