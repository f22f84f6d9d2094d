#include "slpinn/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "slpinn/errors.hpp"
#include "slpinn/rng.hpp"

namespace slpinn {

namespace {

constexpr long kDrawBudget = 1000000;

// sub-stream tags so changing one group's count never shifts another group
constexpr std::uint64_t kInteriorStream = 1;
constexpr std::uint64_t kLayerStreamBase = 2;  // + side index
constexpr std::uint64_t kBoundaryStream = 9;

[[noreturn]] void budget_error(const std::string& side) {
    throw TrainAbort("sampling exhausted the 1e6-draw budget on side '" + side + "'");
}

void sample_interior(const ProblemSpec& problem, Rng& rng, int count,
                     std::vector<Eigen::Vector2d>& out) {
    const DomainDesc& dom = problem.domain();
    const Bounds& b = dom.bounds;
    long draws = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++draws > kDrawBudget) budget_error("interior");
        switch (dom.kind) {
            case DomainDesc::Kind::Interval: {
                const double x = rng.uniform(b.a, b.b);
                if (x > b.a && x < b.b) out.emplace_back(x, 0.0);
                break;
            }
            case DomainDesc::Kind::Rectangle: {
                const double x = rng.uniform(b.a, b.b);
                const double y = rng.uniform(b.c, b.d);
                if (x > b.a && x < b.b && y > b.c && y < b.d) out.emplace_back(x, y);
                break;
            }
            case DomainDesc::Kind::LevelSet: {
                const double x = rng.uniform(b.a, b.b);
                const double y = rng.uniform(b.c, b.d);
                if (dom.phi(x, y).v < -1e-14) out.emplace_back(x, y);
                break;
            }
        }
    }
}

void sample_layer_side(const ProblemSpec& problem, Rng& rng, int side, int count, double sigma,
                       std::vector<Eigen::Vector2d>& out) {
    const DomainDesc& dom = problem.domain();
    const Bounds& b = dom.bounds;
    long draws = 0;
    if (dom.kind == DomainDesc::Kind::Interval) {
        const char* names[] = {"left", "right"};
        const double anchor = side == 0 ? b.a : b.b;
        while (static_cast<int>(out.size()) < count) {
            if (++draws > kDrawBudget) budget_error(names[side]);
            const double x = rng.normal(anchor, sigma);
            if (x > b.a && x < b.b) out.emplace_back(x, 0.0);
        }
        return;
    }
    if (dom.kind == DomainDesc::Kind::Rectangle) {
        const char* names[] = {"left", "right", "bottom", "top"};
        while (static_cast<int>(out.size()) < count) {
            if (++draws > kDrawBudget) budget_error(names[side]);
            const double off = std::abs(rng.normal()) * sigma;
            const double t = side < 2 ? rng.uniform(b.c, b.d) : rng.uniform(b.a, b.b);
            Eigen::Vector2d p;
            switch (side) {
                case 0: p = {b.a + off, t}; break;
                case 1: p = {b.b - off, t}; break;
                case 2: p = {t, b.c + off}; break;
                default: p = {t, b.d - off}; break;
            }
            if (p[0] > b.a && p[0] < b.b && p[1] > b.c && p[1] < b.d) out.push_back(p);
        }
        return;
    }
    // level set: one "side" (the whole boundary); pick a boundary point
    // uniformly in arc length and step inward along -grad(phi)
    while (static_cast<int>(out.size()) < count) {
        if (++draws > kDrawBudget) budget_error("boundary tube");
        const Eigen::Vector2d base = dom.boundary_point(rng.uniform());
        const PhiJet pj = dom.phi(base[0], base[1]);
        const double gn = std::sqrt(pj.dx * pj.dx + pj.dy * pj.dy);
        if (!(gn > 0.0) || !std::isfinite(gn)) continue;
        const double off = std::abs(rng.normal()) * sigma;
        const Eigen::Vector2d p = base - (off / gn) * Eigen::Vector2d(pj.dx, pj.dy);
        if (dom.phi(p[0], p[1]).v < -1e-14) out.push_back(p);
    }
}

void sample_boundary_into(const ProblemSpec& problem, Rng& rng, int count,
                          std::vector<Eigen::Vector2d>& out) {
    const DomainDesc& dom = problem.domain();
    const Bounds& b = dom.bounds;
    switch (dom.kind) {
        case DomainDesc::Kind::Interval:
            for (int i = 0; i < count; ++i) out.emplace_back(i % 2 == 0 ? b.a : b.b, 0.0);
            return;
        case DomainDesc::Kind::Rectangle: {
            const double w = b.b - b.a, h = b.d - b.c;
            const double per = 2.0 * (w + h);
            for (int i = 0; i < count; ++i) {
                double s = rng.uniform() * per;
                if (s < w) {
                    out.emplace_back(b.a + s, b.c);
                    continue;
                }
                s -= w;
                if (s < h) {
                    out.emplace_back(b.b, b.c + s);
                    continue;
                }
                s -= h;
                if (s < w) {
                    out.emplace_back(b.b - s, b.d);
                    continue;
                }
                s -= w;
                out.emplace_back(b.a, b.d + (b.c - b.d) * (s / h));
            }
            return;
        }
        case DomainDesc::Kind::LevelSet:
            for (int i = 0; i < count; ++i) out.push_back(dom.boundary_point(rng.uniform()));
            return;
    }
}

int layer_side_count(const DomainDesc& dom) {
    switch (dom.kind) {
        case DomainDesc::Kind::Interval: return 2;
        case DomainDesc::Kind::Rectangle: return 4;
        case DomainDesc::Kind::LevelSet: return 1;
    }
    return 0;
}

}  // namespace

SampleCounts default_counts(const ProblemSpec& problem) {
    switch (problem.domain().kind) {
        case DomainDesc::Kind::Interval: return {500, 500, 2};
        case DomainDesc::Kind::Rectangle: return {500, 500, 880};
        case DomainDesc::Kind::LevelSet: return {500, 2000, 220};
    }
    throw ConfigError("unknown domain kind");
}

CollocationSet sample_collocation(const ProblemSpec& problem, double eps,
                                  const SampleCounts& counts, std::uint64_t seed,
                                  double sigma_mult) {
    if (eps <= 0.0) throw ConfigError("epsilon must be positive");
    if (counts.interior <= 0 || counts.layer_per_side <= 0 || counts.boundary <= 0)
        throw ConfigError("sample counts must be positive");
    CollocationSet set;
    set.sigma_std = sigma_mult * eps;
    if (!(set.sigma_std > 0.0)) throw ConfigError("sigma_std must be positive");

    set.interior.reserve(counts.interior);
    Rng interior_rng(Rng::mix(seed, kInteriorStream));
    sample_interior(problem, interior_rng, counts.interior, set.interior);

    const int sides = layer_side_count(problem.domain());
    set.layer.reserve(static_cast<std::size_t>(sides) * counts.layer_per_side);
    for (int side = 0; side < sides; ++side) {
        Rng rng(Rng::mix(seed, kLayerStreamBase + side));
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(counts.layer_per_side);
        sample_layer_side(problem, rng, side, counts.layer_per_side, set.sigma_std, pts);
        set.layer.insert(set.layer.end(), pts.begin(), pts.end());
    }

    set.boundary.reserve(counts.boundary);
    Rng boundary_rng(Rng::mix(seed, kBoundaryStream));
    sample_boundary_into(problem, boundary_rng, counts.boundary, set.boundary);
    return set;
}

std::vector<Eigen::Vector2d> sample_boundary(const ProblemSpec& problem, int count,
                                             std::uint64_t seed) {
    if (count < 1) throw ConfigError("boundary count must be at least 1");
    std::vector<Eigen::Vector2d> out;
    out.reserve(count);
    Rng rng(Rng::mix(seed, kBoundaryStream));
    sample_boundary_into(problem, rng, count, out);
    return out;
}

CollocationSet sample_test_set(const ProblemSpec& problem, double eps,
                               const SampleCounts& train_counts, std::uint64_t seed,
                               double sigma_mult) {
    SampleCounts doubled{2 * train_counts.interior, 2 * train_counts.layer_per_side,
                         2 * train_counts.boundary};
    return sample_collocation(problem, eps, doubled, seed, sigma_mult);
}

void write_points_csv(const std::string& path, const CollocationSet& points,
                      const std::string& header) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    if (!header.empty()) out << header;
    out << "x,y,tag\n";
    char buf[80];
    auto emit = [&](const Eigen::Vector2d& p, const char* tag) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", p[0], p[1], tag);
        out << buf;
    };
    for (const auto& p : points.interior) emit(p, "interior");
    for (const auto& p : points.layer) emit(p, "layer");
    for (const auto& p : points.boundary) emit(p, "boundary");
    if (!out.good()) throw IoError("write failed for '" + path + "'");
}

}  // namespace slpinn
