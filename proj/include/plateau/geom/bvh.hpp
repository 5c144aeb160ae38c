#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "vec.hpp"

namespace plateau {

struct Aabb {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    void expand(const Point3& p) {
        for (int i = 0; i < 3; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    }
    void expand(const Aabb& b) {
        expand(b.lo);
        expand(b.hi);
    }
    Aabb padded(double r) const { return {lo - Vec3{r, r, r}, hi + Vec3{r, r, r}}; }
    Aabb shifted(const Vec3& d) const { return {lo + d, hi + d}; }
    Point3 center() const { return (lo + hi) * 0.5; }

    bool overlaps(const Aabb& o) const {
        for (int i = 0; i < 3; ++i)
            if (hi[i] < o.lo[i] || o.hi[i] < lo[i]) return false;
        return true;
    }

    double distance2(const Point3& p) const {
        double d = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double e = std::max({lo[i] - p[i], 0.0, p[i] - hi[i]});
            d += e * e;
        }
        return d;
    }
};

template <class It>
Aabb bounds_of(It first, It last) {
    Aabb b;
    for (; first != last; ++first) b.expand(*first);
    return b;
}

/// Static bounding-volume tree over a list of boxes (median split, small leaves).
class Bvh {
public:
    Bvh() = default;
    explicit Bvh(std::vector<Aabb> boxes) : boxes_(std::move(boxes)) {
        order_.resize(boxes_.size());
        std::iota(order_.begin(), order_.end(), 0);
        if (!boxes_.empty()) build(0, order_.size());
    }

    std::size_t size() const { return boxes_.size(); }

    /// Calls f(index) for every box overlapping q.
    template <class F>
    void query(const Aabb& q, F&& f) const {
        if (nodes_.empty()) return;
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            const Node& n = nodes_[stack.back()];
            stack.pop_back();
            if (!n.box.overlaps(q)) continue;
            if (n.count > 0) {
                for (std::size_t i = n.start; i < n.start + n.count; ++i)
                    if (boxes_[order_[i]].overlaps(q)) f(order_[i]);
            } else {
                stack.push_back(n.left);
                stack.push_back(n.right);
            }
        }
    }

    /// Branch-and-bound nearest search: dist2(index) returns the exact squared
    /// distance from p to item `index`. Returns the minimum squared distance.
    template <class F>
    double nearest(const Point3& p, F&& dist2, double best = std::numeric_limits<double>::infinity()) const {
        if (nodes_.empty()) return best;
        std::vector<std::size_t> stack{0};
        while (!stack.empty()) {
            const Node& n = nodes_[stack.back()];
            stack.pop_back();
            if (n.box.distance2(p) >= best) continue;
            if (n.count > 0) {
                for (std::size_t i = n.start; i < n.start + n.count; ++i)
                    if (boxes_[order_[i]].distance2(p) < best) best = std::min(best, dist2(order_[i]));
            } else {
                const double dl = nodes_[n.left].box.distance2(p), dr = nodes_[n.right].box.distance2(p);
                if (dl < dr) {
                    stack.push_back(n.right);
                    stack.push_back(n.left);
                } else {
                    stack.push_back(n.left);
                    stack.push_back(n.right);
                }
            }
        }
        return best;
    }

private:
    struct Node {
        Aabb box;
        std::size_t left = 0, right = 0, start = 0, count = 0;
    };

    std::size_t build(std::size_t start, std::size_t end) {
        const std::size_t id = nodes_.size();
        nodes_.push_back({});
        Aabb box, cbox;
        for (std::size_t i = start; i < end; ++i) {
            box.expand(boxes_[order_[i]]);
            cbox.expand(boxes_[order_[i]].center());
        }
        nodes_[id].box = box;
        if (end - start <= 4) {
            nodes_[id].start = start;
            nodes_[id].count = end - start;
            return id;
        }
        int axis = 0;
        const Vec3 ext = cbox.hi - cbox.lo;
        if (ext.y > ext[axis]) axis = 1;
        if (ext.z > ext[axis]) axis = 2;
        const std::size_t mid = start + (end - start) / 2;
        std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(start), order_.begin() + static_cast<std::ptrdiff_t>(mid),
                         order_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                             const double ca = boxes_[a].center()[axis], cb = boxes_[b].center()[axis];
                             return ca < cb || (ca == cb && a < b);
                         });
        const std::size_t l = build(start, mid);
        const std::size_t r = build(mid, end);
        nodes_[id].left = l;
        nodes_[id].right = r;
        return id;
    }

    std::vector<Aabb> boxes_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
};

}  // namespace plateau
