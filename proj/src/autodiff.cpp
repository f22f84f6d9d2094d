#include "slpinn/autodiff.hpp"

#include <cmath>

#include "ansatz_detail.hpp"
#include "slpinn/errors.hpp"
#include "slpinn/problem.hpp"
#include "slpinn/sampling.hpp"

namespace slpinn {

std::vector<Jet2> jet2_block_forward(const MlpBlock& block, const std::vector<Jet2>& inputs) {
    if (static_cast<int>(inputs.size()) != block.input_dim())
        throw ConfigError("block '" + block.name + "': expected " +
                          std::to_string(block.input_dim()) + " jet inputs, got " +
                          std::to_string(inputs.size()));
    const int h = block.hidden(), k = block.input_dim(), n = block.output_dim();
    std::vector<Jet2> act(h);
    for (int j = 0; j < h; ++j) {
        Jet2 z = Jet2::constant(block.hidden_biases[j]);
        for (int l = 0; l < k; ++l) z = z + block.hidden_weights(j, l) * inputs[l];
        act[j] = sigmoid(z);
    }
    std::vector<Jet2> out(n);
    for (int i = 0; i < n; ++i) {
        Jet2 acc = Jet2::constant(0.0);
        for (int j = 0; j < h; ++j) acc = acc + block.output_weights(i, j) * act[j];
        out[i] = acc;
    }
    return out;
}

namespace {

// Everything the parameter tangents need at one point, for one block:
// inputs with their axis derivatives, preactivation jets, and the sigmoid
// derivative stack. v/g/l are the block's value and per-axis first/second
// derivatives after the output layer.
struct BlockEval {
    detail::BlockInputs in;
    Eigen::VectorXd z;
    Eigen::MatrixXd zd, zdd;          // h x d
    Eigen::VectorXd s0, s1, s2, s3;   // h
    Eigen::VectorXd v;                // n
    Eigen::MatrixXd g, l;             // n x d
};

struct PointEval {
    std::vector<BlockEval> blocks;
    SolutionJet jet;
    // Product-ansatz group sums (TwoDRegular only): value, first and second
    // derivative per axis of Gx = B_rx + B_L + B_R and Gy = B_ry + B_B + B_T.
    Eigen::VectorXd Gx, Gy;
    Eigen::MatrixXd Gxd, Gyd, Gxl, Gyl;
};

void eval_block(const MlpBlock& b, const SolutionModel& model, int bi, const Eigen::Vector2d& p,
                double eps, int d, BlockEval& out) {
    out.in = detail::block_inputs(model, bi, p, eps);
    const int h = b.hidden();
    // kept expression-identical to MlpBlock::value so residual vectors match
    // the plain loss path bit for bit
    out.z = b.hidden_weights * out.in.xi + b.hidden_biases;
    out.zd.noalias() = b.hidden_weights * out.in.t;
    out.zdd.noalias() = b.hidden_weights * out.in.cc;
    out.s0.resize(h);
    out.s1.resize(h);
    out.s2.resize(h);
    out.s3.resize(h);
    for (int j = 0; j < h; ++j)
        sigmoid_stack(out.z[j], out.s0[j], out.s1[j], out.s2[j], out.s3[j]);
    out.v.noalias() = b.output_weights * out.s0;
    out.g.resize(b.output_dim(), d);
    out.l.resize(b.output_dim(), d);
    for (int q = 0; q < d; ++q) {
        out.g.col(q).noalias() = b.output_weights * (out.s1.array() * out.zd.col(q).array()).matrix();
        out.l.col(q).noalias() =
            b.output_weights * (out.s2.array() * out.zd.col(q).array().square() +
                                out.s1.array() * out.zdd.col(q).array())
                                   .matrix();
    }
}

void eval_point(const SolutionModel& model, const Eigen::Vector2d& p, double eps, PointEval& pe) {
    const int d = model.dim();
    const int n = model.n;
    const int nb = static_cast<int>(model.blocks.size());
    pe.blocks.resize(nb);
    for (int bi = 0; bi < nb; ++bi) eval_block(model.blocks[bi], model, bi, p, eps, d, pe.blocks[bi]);

    SolutionJet& J = pe.jet;
    J.u.setZero(n);
    J.grad.setZero(n, d);
    J.lap.setZero(n);
    switch (model.geometry) {
        case Geometry::OneD:
        case Geometry::TwoDIrregular:
            for (const auto& be : pe.blocks) {
                J.u += be.v;
                J.grad += be.g;
                for (int q = 0; q < d; ++q) J.lap += be.l.col(q);
            }
            return;
        case Geometry::TwoDRegular: {
            pe.Gx = pe.blocks[1].v + pe.blocks[3].v + pe.blocks[4].v;
            pe.Gy = pe.blocks[2].v + pe.blocks[5].v + pe.blocks[6].v;
            pe.Gxd = pe.blocks[1].g + pe.blocks[3].g + pe.blocks[4].g;
            pe.Gyd = pe.blocks[2].g + pe.blocks[5].g + pe.blocks[6].g;
            pe.Gxl = pe.blocks[1].l + pe.blocks[3].l + pe.blocks[4].l;
            pe.Gyl = pe.blocks[2].l + pe.blocks[5].l + pe.blocks[6].l;
            J.u = (pe.blocks[0].v.array() + pe.Gx.array() * pe.Gy.array()).matrix();
            for (int q = 0; q < d; ++q) {
                J.grad.col(q) = (pe.blocks[0].g.col(q).array() +
                                 pe.Gxd.col(q).array() * pe.Gy.array() +
                                 pe.Gx.array() * pe.Gyd.col(q).array())
                                    .matrix();
                J.lap.array() += pe.blocks[0].l.col(q).array() +
                                 pe.Gxl.col(q).array() * pe.Gy.array() +
                                 2.0 * pe.Gxd.col(q).array() * pe.Gyd.col(q).array() +
                                 pe.Gx.array() * pe.Gyl.col(q).array();
            }
            return;
        }
    }
    throw ConfigError("unknown geometry");
}

enum class Group { Additive, XGroup, YGroup };

Group block_group(Geometry g, int bi) {
    if (g != Geometry::TwoDRegular || bi == 0) return Group::Additive;
    return (bi == 1 || bi == 3 || bi == 4) ? Group::XGroup : Group::YGroup;
}

// Maps one block-level parameter tangent (component direction c, value/first/
// second derivative scalars tv, tg[q], tl[q]) to the solution-level tangent.
// Additive blocks pass through; product-group blocks apply the product rule
// against the cached opposite-group sums.
inline void fill_dir(Group grp, const PointEval& pe, int n, int d, const double* c, double tv,
                     const double* tg, const double* tl, SolutionJet& dir) {
    switch (grp) {
        case Group::Additive: {
            const double tls = (d == 2) ? tl[0] + tl[1] : tl[0];
            for (int i = 0; i < n; ++i) {
                dir.u[i] = c[i] * tv;
                for (int q = 0; q < d; ++q) dir.grad(i, q) = c[i] * tg[q];
                dir.lap[i] = c[i] * tls;
            }
            return;
        }
        case Group::XGroup: {
            for (int i = 0; i < n; ++i) {
                const double G = pe.Gy[i];
                dir.u[i] = c[i] * tv * G;
                double lacc = 0.0;
                for (int q = 0; q < 2; ++q) {
                    dir.grad(i, q) = c[i] * (tg[q] * G + tv * pe.Gyd(i, q));
                    lacc += tl[q] * G + 2.0 * tg[q] * pe.Gyd(i, q) + tv * pe.Gyl(i, q);
                }
                dir.lap[i] = c[i] * lacc;
            }
            return;
        }
        case Group::YGroup: {
            for (int i = 0; i < n; ++i) {
                const double G = pe.Gx[i];
                dir.u[i] = c[i] * tv * G;
                double lacc = 0.0;
                for (int q = 0; q < 2; ++q) {
                    dir.grad(i, q) = c[i] * (tg[q] * G + tv * pe.Gxd(i, q));
                    lacc += tl[q] * G + 2.0 * tg[q] * pe.Gxd(i, q) + tv * pe.Gxl(i, q);
                }
                dir.lap[i] = c[i] * lacc;
            }
            return;
        }
    }
}

// Visits every model parameter in flat order; for each, fills `dir` with the
// exact tangent of (u, grad u, lap u) and calls f(column_index). `unit` is a
// zero n-vector used as scratch for the output-weight directions.
template <class F>
void for_each_param_tangent(const SolutionModel& model, const PointEval& pe, SolutionJet& dir,
                            Eigen::VectorXd& unit, F&& f) {
    const int n = model.n;
    const int d = model.dim();
    int col = 0;
    double tg[2], tl[2];
    for (int bi = 0; bi < static_cast<int>(model.blocks.size()); ++bi) {
        const MlpBlock& b = model.blocks[bi];
        const BlockEval& be = pe.blocks[bi];
        const Group grp = block_group(model.geometry, bi);
        const int h = b.hidden(), k = b.input_dim();
        for (int j = 0; j < h; ++j) {
            const double s1 = be.s1[j], s2 = be.s2[j], s3 = be.s3[j];
            const double* cw = &b.output_weights(0, j);
            for (int l = 0; l < k; ++l) {
                const double xi = be.in.xi[l];
                const double tv = s1 * xi;
                for (int q = 0; q < d; ++q) {
                    const double zd = be.zd(j, q), zdd = be.zdd(j, q);
                    const double tt = be.in.t(l, q), cc = be.in.cc(l, q);
                    tg[q] = s2 * xi * zd + s1 * tt;
                    tl[q] = s3 * xi * zd * zd + 2.0 * s2 * zd * tt + s2 * xi * zdd + s1 * cc;
                }
                fill_dir(grp, pe, n, d, cw, tv, tg, tl, dir);
                f(col++);
            }
        }
        for (int j = 0; j < h; ++j) {
            const double s1 = be.s1[j], s2 = be.s2[j], s3 = be.s3[j];
            const double* cw = &b.output_weights(0, j);
            for (int q = 0; q < d; ++q) {
                const double zd = be.zd(j, q), zdd = be.zdd(j, q);
                tg[q] = s2 * zd;
                tl[q] = s3 * zd * zd + s2 * zdd;
            }
            fill_dir(grp, pe, n, d, cw, s1, tg, tl, dir);
            f(col++);
        }
        for (int i = 0; i < n; ++i) {
            unit[i] = 1.0;
            for (int j = 0; j < h; ++j) {
                const double s0 = be.s0[j], s1 = be.s1[j], s2 = be.s2[j];
                for (int q = 0; q < d; ++q) {
                    const double zd = be.zd(j, q), zdd = be.zdd(j, q);
                    tg[q] = s1 * zd;
                    tl[q] = s2 * zd * zd + s1 * zdd;
                }
                fill_dir(grp, pe, n, d, unit.data(), s0, tg, tl, dir);
                f(col++);
            }
            unit[i] = 0.0;
        }
    }
}

}  // namespace

SolutionJet eval_solution_jet(const SolutionModel& model, const Eigen::Vector2d& point,
                              double epsilon) {
    if (!point.allFinite()) throw ConfigError("non-finite evaluation point");
    PointEval pe;
    eval_point(model, point, epsilon, pe);
    return pe.jet;
}

ResidualJacobian assemble_residual_jacobian(const ProblemSpec& problem, const SolutionModel& model,
                                            const CollocationSet& colloc, double epsilon) {
    const int n = model.n;
    const int d = model.dim();
    if (n != problem.n_components())
        throw ConfigError("model has " + std::to_string(n) + " components, problem '" +
                          problem.id() + "' needs " + std::to_string(problem.n_components()));
    const int m = colloc.m();
    const int mb = colloc.m_b();
    if (m <= 0 || mb <= 0) throw ConfigError("collocation set has no residual or boundary points");

    ResidualJacobian out;
    out.jac.resize(static_cast<Eigen::Index>(m + mb) * n, model.param_count());
    out.residual.resize(static_cast<Eigen::Index>(m + mb) * n);

    PointEval pe;
    SolutionJet dir;
    dir.u.resize(n);
    dir.grad.resize(n, d);
    dir.lap.resize(n);
    Eigen::VectorXd dres(n);
    Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);

    Eigen::Index r = 0;
    auto residual_rows = [&](const std::vector<Eigen::Vector2d>& pts) {
        for (const auto& pt : pts) {
            eval_point(model, pt, epsilon, pe);
            const double scale = std::sqrt(problem.weight(pt) / m);
            const Eigen::VectorXd res = problem.residual(pe.jet, pt, epsilon);
            for (int i = 0; i < n; ++i) out.residual[r + i] = scale * res[i];
            for_each_param_tangent(model, pe, dir, unit, [&](int col) {
                problem.residual_tangent(pe.jet, dir, pt, epsilon, dres);
                for (int i = 0; i < n; ++i) out.jac(r + i, col) = scale * dres[i];
            });
            r += n;
        }
    };
    residual_rows(colloc.interior);
    residual_rows(colloc.layer);

    const double bscale = std::sqrt(1.0 / mb);
    for (const auto& pt : colloc.boundary) {
        eval_point(model, pt, epsilon, pe);
        const Eigen::VectorXd g = problem.boundary_value(pt, epsilon);
        for (int i = 0; i < n; ++i) out.residual[r + i] = bscale * (pe.jet.u[i] - g[i]);
        for_each_param_tangent(model, pe, dir, unit, [&](int col) {
            for (int i = 0; i < n; ++i) out.jac(r + i, col) = bscale * dir.u[i];
        });
        r += n;
    }
    return out;
}

}  // namespace slpinn
