#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "../geom/mesh.hpp"
#include "area_gradient.hpp"
#include "flips.hpp"

namespace plateau {

struct SolveOptions {
    int max_iters = 2000;
    double grad_tol = 1e-8;   // stop when the largest vertex gradient is below this
    double step_init = 0.5;   // first trial step, in units of the mean edge length
    double min_step = 1e-14;  // line-search floor on the largest vertex displacement
    int improve_every = 25;   // edge-flip pass period (iterations)
    std::uint64_t seed = 1;
    int memory = 8;           // quasi-Newton history length

    void validate() const {
        if (max_iters <= 0 || !(grad_tol > 0) || !(step_init > 0) || !(min_step > 0) || improve_every <= 0 || memory <= 0)
            throw Error("solve options must all be positive");
    }
};

struct SolveReport {
    bool converged = false;
    int iters = 0;
    double final_area = 0.0;
    double final_grad_norm = 0.0;
    std::vector<double> area_history;
    int flips = 0;
    int projections = 0;
    int degenerate_triangles = 0;
    std::string message;
};

namespace detail {

inline double mean_edge_length(const TriSurfaceMesh& m) {
    double s = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto p = m.corners(t);
        for (int c = 0; c < 3; ++c, ++n) s += distance(p[static_cast<std::size_t>(c)], p[static_cast<std::size_t>((c + 1) % 3)]);
    }
    return n ? s / static_cast<double>(n) : 1.0;
}

inline void check_pinned_boundary(const TriSurfaceMesh& m) {
    const auto mask = boundary_vertex_mask(m);
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v] && !m.boundary_fixed[v]) throw Error("every boundary vertex must be pinned before solving");
}

/// Minimum-norm element of the area subdifferential. A collinear triangle
/// contributes any vector perpendicular to its line of length up to half the
/// opposite edge, so that much of the perpendicular pull is absorbed.
inline void reduce_at_kinks(const TriSurfaceMesh& m, const std::vector<Point3>& pos, std::vector<Vec3>& g) {
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& tri = m.triangles[t];
        Point3 p[3];
        for (int c = 0; c < 3; ++c)
            p[c] = pos[static_cast<std::size_t>(tri[static_cast<std::size_t>(c)])] + m.ambient.lattice(m.lift(t, c));
        if (!is_collinear(p[0], p[1], p[2])) continue;
        int lo = 0;
        double best = -1.0;
        for (int c = 0; c < 3; ++c) {
            const double l = norm2(p[(c + 1) % 3] - p[c]);
            if (l > best) {
                best = l;
                lo = c;
            }
        }
        if (!(best > 0.0)) continue;
        const Vec3 dir = normalized(p[(lo + 1) % 3] - p[lo]);
        for (int c = 0; c < 3; ++c) {
            const auto v = static_cast<std::size_t>(tri[static_cast<std::size_t>(c)]);
            if (m.boundary_fixed[v]) continue;
            const double cap = 0.5 * norm(p[(c + 2) % 3] - p[(c + 1) % 3]);
            const Vec3 perp = g[v] - dir * dot(g[v], dir);
            const double lp = norm(perp);
            g[v] -= lp <= cap ? perp : perp * (cap / lp);
        }
    }
}

inline std::vector<Vec3> reduced_gradient(const TriSurfaceMesh& m, const std::vector<Point3>& pos,
                                          std::vector<Vec3> g) {
    reduce_at_kinks(m, pos, g);
    return g;
}

/// Pushes a point that entered the excluded region out to its nearest face.
inline bool project_out(const Ambient& amb, Point3& p) {
    if (!amb.excluded) return false;
    for (int x = -1; x <= 1; ++x)
        for (int y = -1; y <= 1; ++y)
            for (int z = -1; z <= 1; ++z) {
                const Vec3 off = amb.lattice({x, y, z});
                if (amb.excluded->contains_interior(p + off, 0.0)) {
                    p = amb.excluded->project_to_boundary(p + off) - off;
                    return true;
                }
            }
    return false;
}

/// Re-wraps free vertices into the fundamental domain, moving the lattice
/// offset into the lifts of every incident triangle corner.
inline void rewrap(TriSurfaceMesh& m, std::vector<Point3>& pos) {
    std::vector<ShiftVec> moved(pos.size());
    bool any = false;
    for (std::size_t v = 0; v < pos.size(); ++v) {
        if (m.boundary_fixed[v]) continue;
        const auto [w, k] = m.ambient.wrap(pos[v]);
        if (!k.is_zero()) {
            pos[v] = w;
            moved[v] = k;
            any = true;
        }
    }
    if (!any) return;
    for (std::size_t t = 0; t < m.triangles.size(); ++t)
        for (int c = 0; c < 3; ++c) {
            const auto v = static_cast<std::size_t>(m.triangles[t][static_cast<std::size_t>(c)]);
            if (!moved[v].is_zero()) m.tri_lifts[t][static_cast<std::size_t>(c)] = m.tri_lifts[t][static_cast<std::size_t>(c)] + moved[v];
        }
}

inline std::pair<TriSurfaceMesh, SolveReport> run_descent(TriSurfaceMesh m, const SolveOptions& opts) {
    opts.validate();
    validate_mesh(m);
    check_pinned_boundary(m);
    const bool torus = m.ambient.is_torus();
    SolveReport rep;
    std::vector<std::size_t> free;
    for (std::size_t v = 0; v < m.vertices.size(); ++v)
        if (!m.boundary_fixed[v]) free.push_back(v);
    const std::size_t nf = free.size();

    std::vector<Point3> pos = m.vertices;
    auto ev = area_and_gradient(m, pos);
    double area = ev.area;
    std::vector<Vec3> g = reduced_gradient(m, pos, ev.grad);
    rep.area_history.push_back(area);
    const double h_mean = mean_edge_length(m);

    std::deque<std::vector<Vec3>> S, Y;
    std::deque<double> rho;
    const auto dotf = [&](const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < nf; ++i) s += dot(a[i], b[i]);
        return s;
    };
    const auto gnorm_of = [&](const std::vector<Vec3>& gg) {
        double mx = 0.0;
        for (std::size_t v : free) mx = std::max(mx, norm(gg[v]));
        return mx;
    };
    const auto reset = [&] {
        S.clear();
        Y.clear();
        rho.clear();
    };

    int it = 0;
    bool steepest_retry = false;
    for (; it < opts.max_iters; ++it) {
        double gnorm = gnorm_of(g);
        rep.final_grad_norm = gnorm;
        if (gnorm < opts.grad_tol) {
            rep.converged = true;
            break;
        }
        if (it > 0 && it % opts.improve_every == 0) {
            m.vertices = pos;
            const int f = delaunay_flip_pass(m);
            if (f > 0) {
                rep.flips += f;
                ev = area_and_gradient(m, pos);
                area = ev.area;
                g = reduced_gradient(m, pos, ev.grad);
                reset();
                gnorm = gnorm_of(g);
            }
        }
        // two-loop recursion on the free coordinates
        std::vector<Vec3> q(nf);
        for (std::size_t i = 0; i < nf; ++i) q[i] = g[free[i]];
        std::vector<double> alpha_k(S.size());
        for (std::size_t k = S.size(); k-- > 0;) {
            alpha_k[k] = rho[k] * dotf(S[k], q);
            for (std::size_t i = 0; i < nf; ++i) q[i] -= alpha_k[k] * Y[k][i];
        }
        if (!S.empty()) {
            const double gamma = dotf(S.back(), Y.back()) / dotf(Y.back(), Y.back());
            for (auto& x : q) x *= gamma;
        }
        for (std::size_t k = 0; k < S.size(); ++k) {
            const double beta = rho[k] * dotf(Y[k], q);
            for (std::size_t i = 0; i < nf; ++i) q[i] += (alpha_k[k] - beta) * S[k][i];
        }
        std::vector<Vec3> d(nf);
        double gd = 0.0, dmax = 0.0;
        for (std::size_t i = 0; i < nf; ++i) {
            d[i] = -q[i];
            gd += dot(g[free[i]], d[i]);
            dmax = std::max(dmax, norm(d[i]));
        }
        if (!(gd < 0.0) || !(dmax > 0.0)) {
            reset();
            gd = 0.0;
            dmax = 0.0;
            for (std::size_t i = 0; i < nf; ++i) {
                d[i] = -g[free[i]];
                gd += dot(g[free[i]], d[i]);
                dmax = std::max(dmax, norm(d[i]));
            }
        }
        double step = S.empty() ? opts.step_init * h_mean / dmax : 1.0;
        if (step * dmax > h_mean) step = h_mean / dmax;

        std::vector<Point3> trial = pos;
        double trial_area = area;
        bool accepted = false;
        int projections = 0;
        while (step * dmax >= opts.min_step) {
            projections = 0;
            for (std::size_t i = 0; i < nf; ++i) {
                Point3 p = pos[free[i]] + d[i] * step;
                if (torus && project_out(m.ambient, p)) ++projections;
                trial[free[i]] = p;
            }
            trial_area = area_at(m, trial);
            if (trial_area <= area + 1e-4 * step * gd && trial_area <= area) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (!S.empty() && !steepest_retry) {
                reset();
                steepest_retry = true;
                --it;
                continue;
            }
            rep.message = "line search stalled below min_step";
            break;
        }
        steepest_retry = false;
        rep.projections += projections;
        ev = area_and_gradient(m, trial);
        ev.grad = reduced_gradient(m, trial, std::move(ev.grad));
        std::vector<Vec3> s(nf), y(nf);
        for (std::size_t i = 0; i < nf; ++i) {
            s[i] = trial[free[i]] - pos[free[i]];
            y[i] = ev.grad[free[i]] - g[free[i]];
        }
        const double sy = dotf(s, y);
        if (sy > 1e-300) {
            S.push_back(std::move(s));
            Y.push_back(std::move(y));
            rho.push_back(1.0 / sy);
            if (static_cast<int>(S.size()) > opts.memory) {
                S.pop_front();
                Y.pop_front();
                rho.pop_front();
            }
        }
        pos = std::move(trial);
        area = ev.area;
        g = ev.grad;
        rep.degenerate_triangles = ev.degenerate;
        rep.area_history.push_back(area);
        if (torus) rewrap(m, pos);
    }
    rep.iters = it;
    m.vertices = pos;
    rep.final_area = mesh_area(m);
    rep.final_grad_norm = gnorm_of(reduced_gradient(m, m.vertices, area_gradient(m)));
    if (!rep.converged && rep.message.empty()) {
        if (rep.final_grad_norm < opts.grad_tol)
            rep.converged = true;
        else
            rep.message = "iteration limit reached";
    }
    return {std::move(m), std::move(rep)};
}

}  // namespace detail

/// Area descent with pinned boundary in a euclidean ambient.
inline std::pair<TriSurfaceMesh, SolveReport> minimize_area(const TriSurfaceMesh& m, const SolveOptions& opts) {
    if (m.ambient.is_torus()) throw Error("minimize_area needs a euclidean mesh; use minimize_area_torus");
    return detail::run_descent(m, opts);
}

/// Area descent in a flat torus; vertices stay in the fundamental domain and
/// are kept out of the excluded region by projection.
inline std::pair<TriSurfaceMesh, SolveReport> minimize_area_torus(const TriSurfaceMesh& m, const SolveOptions& opts) {
    if (!m.ambient.is_torus()) throw Error("minimize_area_torus needs a flat-torus mesh");
    return detail::run_descent(m, opts);
}

}  // namespace plateau
