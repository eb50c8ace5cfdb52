// Copyright 2026 The Madawipol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "madawipol/geometry/region.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace madawipol::geometry {
namespace {

// A point with a cached double approximation used by the filtered
// predicates below. The approximation never decides a result on its own
// unless it is separated from the decision boundary by a safe margin.
template <typename Scalar>
struct FPoint {
  Vector2<Scalar> p;
  double x = 0;
  double y = 0;
};

template <typename Scalar>
FPoint<Scalar> filtered(const Vector2<Scalar>& p) {
  return {p, toDouble(p.x()), toDouble(p.y())};
}

template <typename Scalar>
int compareFiltered(const Scalar& a, double ad, const Scalar& b, double bd) {
  const double diff = ad - bd;
  if constexpr (std::is_same_v<Scalar, double>) {
    return diff > 0 ? 1 : (diff < 0 ? -1 : 0);
  } else {
    if (std::abs(diff) > 1e-12 * (std::abs(ad) + std::abs(bd))) {
      return diff > 0 ? 1 : -1;
    }
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
  }
}

template <typename Scalar>
int compareLex(const FPoint<Scalar>& a, const FPoint<Scalar>& b) {
  const int c = compareFiltered(a.p.x(), a.x, b.p.x(), b.x);
  if (c != 0) return c;
  return compareFiltered(a.p.y(), a.y, b.p.y(), b.y);
}

template <typename Scalar>
int compareY(const FPoint<Scalar>& a, const FPoint<Scalar>& b) {
  return compareFiltered(a.p.y(), a.y, b.p.y(), b.y);
}

// Sign of the turn a -> b -> c (positive when counter-clockwise).
template <typename Scalar>
int orient(const FPoint<Scalar>& a, const FPoint<Scalar>& b,
           const FPoint<Scalar>& c) {
  const double d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if constexpr (std::is_same_v<Scalar, double>) {
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
  } else {
    const double bound =
        1e-12 * ((std::abs(b.x) + std::abs(a.x)) * (std::abs(c.y) + std::abs(a.y)) +
                 (std::abs(b.y) + std::abs(a.y)) * (std::abs(c.x) + std::abs(a.x)));
    if (d > bound) return 1;
    if (d < -bound) return -1;
    const Scalar e = (b.p.x() - a.p.x()) * (c.p.y() - a.p.y()) -
                     (b.p.y() - a.p.y()) * (c.p.x() - a.p.x());
    return signOf(e);
  }
}

enum class Rule { kUnion, kDifference, kIntersection, kFirstOnly };

bool applyRule(Rule rule, bool inA, bool inB) {
  switch (rule) {
    case Rule::kUnion:
      return inA || inB;
    case Rule::kDifference:
      return inA && !inB;
    case Rule::kIntersection:
      return inA && inB;
    case Rule::kFirstOnly:
      return inA;
  }
  return false;
}

Rule ruleFor(BooleanKind kind) {
  switch (kind) {
    case BooleanKind::kUnion:
      return Rule::kUnion;
    case BooleanKind::kDifference:
      return Rule::kDifference;
    case BooleanKind::kIntersection:
      return Rule::kIntersection;
  }
  return Rule::kUnion;
}

// Overlay of two even-odd ring sets. Every input edge is split at every
// exact intersection, the resulting pieces are classified by ray parity on
// both of their sides, and the pieces that separate inside from outside are
// chained back into rings.
template <typename Scalar>
class Overlay {
 public:
  using P = FPoint<Scalar>;
  using Ring = typename Region2D<Scalar>::Ring;

  void addRings(const std::vector<Ring>& rings, int operand) {
    for (const Ring& ring : rings) {
      if (ring.size() < 2) continue;
      const int base = static_cast<int>(pool_.size());
      for (const auto& p : ring) pool_.push_back(filtered<Scalar>(p));
      const int n = static_cast<int>(ring.size());
      for (int i = 0; i < n; ++i) {
        const int a = base + i;
        const int b = base + (i + 1) % n;
        if (compareLex(pool_[a], pool_[b]) == 0) continue;
        edges_.push_back({a, b, operand});
      }
    }
  }

  // Runs the overlay. With stopAtFirst, returns as soon as one boundary
  // piece of the result is found and leaves the ring list empty; the return
  // value says whether the result is nonempty.
  bool run(Rule rule, bool stopAtFirst) {
    split();
    buildPieces();
    return classify(rule, stopAtFirst);
  }

  std::vector<Ring> rings() { return chain(); }

 private:
  struct Edge {
    int a;
    int b;
    int operand;
  };
  struct Piece {
    int lo;
    int hi;
    int countA;
    int countB;
  };
  struct Directed {
    int from;  // vertex id
    int to;
    int fromPoint;  // pool index
    int toPoint;
  };

  void split() {
    const std::size_t n = edges_.size();
    splits_.assign(n, {});
    struct Bounds {
      double x0, x1, y0, y1;
    };
    std::vector<Bounds> bounds(n);
    for (std::size_t i = 0; i < n; ++i) {
      const P& a = pool_[edges_[i].a];
      const P& b = pool_[edges_[i].b];
      const double tol =
          1e-9 * (1.0 + std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x),
                                  std::abs(b.y)}));
      bounds[i] = {std::min(a.x, b.x) - tol, std::max(a.x, b.x) + tol,
                   std::min(a.y, b.y) - tol, std::max(a.y, b.y) + tol};
      splits_[i] = {edges_[i].a, edges_[i].b};
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
      return bounds[l].x0 < bounds[r].x0;
    });
    for (std::size_t oi = 0; oi < n; ++oi) {
      const std::size_t i = order[oi];
      for (std::size_t oj = oi + 1; oj < n; ++oj) {
        const std::size_t j = order[oj];
        if (bounds[j].x0 > bounds[i].x1) break;
        if (bounds[j].y0 > bounds[i].y1 || bounds[i].y0 > bounds[j].y1) continue;
        intersect(i, j);
      }
    }
  }

  bool strictlyInside(int a, int b, int q) const {
    const int ca = compareLex(pool_[q], pool_[a]);
    const int cb = compareLex(pool_[q], pool_[b]);
    return ca != 0 && cb != 0 && ca != cb;
  }

  void intersect(std::size_t i, std::size_t j) {
    const int p1 = edges_[i].a, p2 = edges_[i].b;
    const int q1 = edges_[j].a, q2 = edges_[j].b;
    const int o1 = orient(pool_[p1], pool_[p2], pool_[q1]);
    const int o2 = orient(pool_[p1], pool_[p2], pool_[q2]);
    if (o1 == 0 && o2 == 0) {
      if (strictlyInside(p1, p2, q1)) splits_[i].push_back(q1);
      if (strictlyInside(p1, p2, q2)) splits_[i].push_back(q2);
      if (strictlyInside(q1, q2, p1)) splits_[j].push_back(p1);
      if (strictlyInside(q1, q2, p2)) splits_[j].push_back(p2);
      return;
    }
    if (o1 * o2 > 0) return;
    const int o3 = orient(pool_[q1], pool_[q2], pool_[p1]);
    const int o4 = orient(pool_[q1], pool_[q2], pool_[p2]);
    if (o3 * o4 > 0) return;
    if (o1 == 0) splits_[i].push_back(q1);
    if (o2 == 0) splits_[i].push_back(q2);
    if (o3 == 0) splits_[j].push_back(p1);
    if (o4 == 0) splits_[j].push_back(p2);
    if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
      const Vector2<Scalar>& a = pool_[p1].p;
      const Vector2<Scalar>& b = pool_[p2].p;
      const Vector2<Scalar>& c = pool_[q1].p;
      const Vector2<Scalar>& d = pool_[q2].p;
      const Vector2<Scalar> r = b - a;
      const Vector2<Scalar> s = d - c;
      const Scalar t = cross<Scalar>(c - a, s) / cross<Scalar>(r, s);
      const Vector2<Scalar> x = a + r * t;
      pool_.push_back(filtered<Scalar>(x));
      const int idx = static_cast<int>(pool_.size()) - 1;
      splits_[i].push_back(idx);
      splits_[j].push_back(idx);
    }
  }

  void buildPieces() {
    std::vector<Piece> raw;
    auto less = [this](int l, int r) { return compareLex(pool_[l], pool_[r]) < 0; };
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      std::vector<int>& s = splits_[e];
      std::sort(s.begin(), s.end(), less);
      s.erase(std::unique(s.begin(), s.end(),
                          [this](int l, int r) {
                            return compareLex(pool_[l], pool_[r]) == 0;
                          }),
              s.end());
      const bool first = edges_[e].operand == 0;
      for (std::size_t k = 0; k + 1 < s.size(); ++k) {
        raw.push_back({s[k], s[k + 1], first ? 1 : 0, first ? 0 : 1});
      }
    }
    std::sort(raw.begin(), raw.end(), [this](const Piece& l, const Piece& r) {
      const int c = compareLex(pool_[l.lo], pool_[r.lo]);
      if (c != 0) return c < 0;
      return compareLex(pool_[l.hi], pool_[r.hi]) < 0;
    });
    pieces_.clear();
    for (const Piece& p : raw) {
      if (!pieces_.empty() &&
          compareLex(pool_[pieces_.back().lo], pool_[p.lo]) == 0 &&
          compareLex(pool_[pieces_.back().hi], pool_[p.hi]) == 0) {
        pieces_.back().countA += p.countA;
        pieces_.back().countB += p.countB;
      } else {
        pieces_.push_back(p);
      }
    }
    pieces_.erase(std::remove_if(pieces_.begin(), pieces_.end(),
                                 [](const Piece& p) {
                                   return (p.countA & 1) == 0 && (p.countB & 1) == 0;
                                 }),
                  pieces_.end());
  }

  bool classify(Rule rule, bool stopAtFirst) {
    kept_.clear();
    // Pieces sorted by their upper y bound allow skipping everything below
    // the ray quickly.
    const std::size_t n = pieces_.size();
    std::vector<double> maxX(n);
    for (std::size_t j = 0; j < n; ++j) {
      maxX[j] = std::max(pool_[pieces_[j].lo].x, pool_[pieces_[j].hi].x);
    }
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const Piece& piece = pieces_[i];
      const P& lo = pool_[piece.lo];
      const P& hi = pool_[piece.hi];
      const P m = filtered<Scalar>(Vector2<Scalar>((lo.p + hi.p) / Scalar(2)));
      const double slack = 1e-9 * (1.0 + std::abs(m.x));
      int parityA = 0;
      int parityB = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (maxX[j] < m.x - slack) continue;
        const Piece& other = pieces_[j];
        const P& u = pool_[other.lo];
        const P& v = pool_[other.hi];
        const bool uAbove = compareY(u, m) > 0;
        const bool vAbove = compareY(v, m) > 0;
        if (uAbove == vAbove) continue;
        const P& low = uAbove ? v : u;
        const P& high = uAbove ? u : v;
        if (orient(low, high, m) > 0) {
          parityA ^= other.countA & 1;
          parityB ^= other.countB & 1;
        }
      }
      // The ray leaves m towards +x just above the piece's line, so it
      // samples the piece's left side when the piece runs downward or is
      // horizontal (lo is lexicographically first).
      const bool rayOnLeft = compareY(hi, lo) <= 0;
      const int flipA = piece.countA & 1;
      const int flipB = piece.countB & 1;
      const bool leftA = rayOnLeft ? parityA : parityA ^ flipA;
      const bool rightA = rayOnLeft ? parityA ^ flipA : parityA;
      const bool leftB = rayOnLeft ? parityB : parityB ^ flipB;
      const bool rightB = rayOnLeft ? parityB ^ flipB : parityB;
      const bool inLeft = applyRule(rule, leftA, leftB);
      const bool inRight = applyRule(rule, rightA, rightB);
      if (inLeft == inRight) continue;
      any = true;
      if (stopAtFirst) return true;
      if (inLeft) {
        kept_.push_back({-1, -1, piece.lo, piece.hi});
      } else {
        kept_.push_back({-1, -1, piece.hi, piece.lo});
      }
    }
    return any;
  }

  std::vector<Ring> chain() {
    // Identify coincident endpoints.
    std::vector<int> ends;
    ends.reserve(kept_.size() * 2);
    for (const Directed& d : kept_) {
      ends.push_back(d.fromPoint);
      ends.push_back(d.toPoint);
    }
    std::sort(ends.begin(), ends.end(),
              [this](int l, int r) { return compareLex(pool_[l], pool_[r]) < 0; });
    std::vector<int> uniqueEnds;
    for (int e : ends) {
      if (uniqueEnds.empty() || compareLex(pool_[uniqueEnds.back()], pool_[e]) != 0) {
        uniqueEnds.push_back(e);
      }
    }
    auto idOf = [&](int point) {
      auto it = std::lower_bound(
          uniqueEnds.begin(), uniqueEnds.end(), point,
          [this](int l, int r) { return compareLex(pool_[l], pool_[r]) < 0; });
      return static_cast<int>(it - uniqueEnds.begin());
    };
    std::vector<std::vector<int>> outgoing(uniqueEnds.size());
    for (std::size_t k = 0; k < kept_.size(); ++k) {
      kept_[k].from = idOf(kept_[k].fromPoint);
      kept_[k].to = idOf(kept_[k].toPoint);
      outgoing[kept_[k].from].push_back(static_cast<int>(k));
    }

    std::vector<bool> used(kept_.size(), false);
    std::vector<std::vector<int>> ringIds;
    for (std::size_t start = 0; start < kept_.size(); ++start) {
      if (used[start]) continue;
      used[start] = true;
      std::vector<int> ring{kept_[start].from};
      int current = static_cast<int>(start);
      for (;;) {
        const Directed& in = kept_[current];
        const int vertex = in.to;
        const P& here = pool_[uniqueEnds[vertex]];
        const P& back = pool_[uniqueEnds[in.from]];
        int best = -1;
        int bestHalf = 0;
        auto consider = [&](int candidate) {
          const P& next = pool_[uniqueEnds[kept_[candidate].to]];
          const int half = orient(here, back, next) < 0 ? 0 : 1;
          if (best < 0 || half < bestHalf ||
              (half == bestHalf &&
               orient(here, pool_[uniqueEnds[kept_[best].to]], next) < 0)) {
            best = candidate;
            bestHalf = half;
          }
        };
        for (int candidate : outgoing[vertex]) {
          if (!used[candidate]) consider(candidate);
        }
        if (vertex == kept_[start].from) consider(static_cast<int>(start));
        if (best < 0 || best == static_cast<int>(start)) break;
        used[best] = true;
        ring.push_back(vertex);
        current = best;
      }
      ringIds.push_back(std::move(ring));
    }

    std::vector<std::vector<int>> cleaned;
    for (std::vector<int>& ids : ringIds) {
      std::vector<int> pts;
      pts.reserve(ids.size());
      for (int id : ids) pts.push_back(uniqueEnds[id]);
      bool changed = true;
      while (changed && pts.size() >= 3) {
        changed = false;
        for (std::size_t k = 0; k < pts.size() && pts.size() >= 3; ++k) {
          const std::size_t prev = (k + pts.size() - 1) % pts.size();
          const std::size_t next = (k + 1) % pts.size();
          if (orient(pool_[pts[prev]], pool_[pts[k]], pool_[pts[next]]) == 0) {
            pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(k));
            changed = true;
            break;
          }
        }
      }
      if (pts.size() < 3) continue;
      std::size_t least = 0;
      for (std::size_t k = 1; k < pts.size(); ++k) {
        if (compareLex(pool_[pts[k]], pool_[pts[least]]) < 0) least = k;
      }
      std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(least),
                  pts.end());
      cleaned.push_back(std::move(pts));
    }
    std::sort(cleaned.begin(), cleaned.end(),
              [this](const std::vector<int>& l, const std::vector<int>& r) {
                const std::size_t n = std::min(l.size(), r.size());
                for (std::size_t k = 0; k < n; ++k) {
                  const int c = compareLex(pool_[l[k]], pool_[r[k]]);
                  if (c != 0) return c < 0;
                }
                return l.size() < r.size();
              });
    std::vector<Ring> out;
    out.reserve(cleaned.size());
    for (const std::vector<int>& pts : cleaned) {
      Ring ring;
      ring.reserve(pts.size());
      for (int p : pts) ring.push_back(pool_[p].p);
      out.push_back(std::move(ring));
    }
    return out;
  }

  std::vector<P> pool_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> splits_;
  std::vector<Piece> pieces_;
  std::vector<Directed> kept_;
};

template <typename Scalar>
void canonicalizeRingOrder(std::vector<typename Region2D<Scalar>::Ring>& rings) {
  for (auto& ring : rings) {
    auto least = std::min_element(ring.begin(), ring.end(), lexLess<Scalar>);
    std::rotate(ring.begin(), least, ring.end());
  }
  std::sort(rings.begin(), rings.end(), [](const auto& l, const auto& r) {
    return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end(),
                                        lexLess<Scalar>);
  });
}

template <typename Scalar>
std::optional<Box2<Scalar>> exactBox(const Region2D<Scalar>& s) {
  if (s.empty()) return std::nullopt;
  Box2<Scalar> box{s.rings().front().front(), s.rings().front().front()};
  for (const auto& ring : s.rings()) {
    for (const auto& p : ring) {
      if (p.x() < box.min.x()) box.min.x() = p.x();
      if (p.y() < box.min.y()) box.min.y() = p.y();
      if (p.x() > box.max.x()) box.max.x() = p.x();
      if (p.y() > box.max.y()) box.max.y() = p.y();
    }
  }
  return box;
}

}  // namespace

template <typename Scalar>
Region2D<Scalar> Region2D<Scalar>::fromRings(const std::vector<Ring>& rings) {
  Overlay<Scalar> overlay;
  overlay.addRings(rings, 0);
  overlay.run(Rule::kFirstOnly, false);
  return fromCanonicalRings(overlay.rings());
}

template <typename Scalar>
Region2D<Scalar> Region2D<Scalar>::rectangle(const Scalar& x0, const Scalar& y0,
                                             const Scalar& x1, const Scalar& y1) {
  Ring ring{Point(x0, y0), Point(x1, y0), Point(x1, y1), Point(x0, y1)};
  return fromRings({ring});
}

template <typename Scalar>
Region2D<Scalar> booleanOp(BooleanKind kind, const Region2D<Scalar>& a,
                           const Region2D<Scalar>& b) {
  if (b.empty()) {
    return kind == BooleanKind::kIntersection ? Region2D<Scalar>() : a;
  }
  if (a.empty()) {
    return kind == BooleanKind::kUnion ? b : Region2D<Scalar>();
  }
  Overlay<Scalar> overlay;
  overlay.addRings(a.rings(), 0);
  overlay.addRings(b.rings(), 1);
  overlay.run(ruleFor(kind), false);
  return Region2D<Scalar>::fromCanonicalRings(overlay.rings());
}

template <typename Scalar>
Region2D<Scalar> transformRegion(const LinearTransform2D<Scalar>& l,
                                 const Region2D<Scalar>& s) {
  const Scalar det = l(0, 0) * l(1, 1) - l(0, 1) * l(1, 0);
  if (det == 0) throw SingularTransform();
  std::vector<typename Region2D<Scalar>::Ring> rings;
  rings.reserve(s.rings().size());
  for (const auto& ring : s.rings()) {
    typename Region2D<Scalar>::Ring image;
    image.reserve(ring.size());
    for (const auto& p : ring) image.push_back(l * p);
    if (det < 0) std::reverse(image.begin(), image.end());
    rings.push_back(std::move(image));
  }
  if (det < 0) {
    // Reflection swaps which of the two pairings at a pinch vertex counts
    // as canonical, so the rings are rebuilt.
    return Region2D<Scalar>::fromRings(rings);
  }
  canonicalizeRingOrder<Scalar>(rings);
  return Region2D<Scalar>::fromCanonicalRings(std::move(rings));
}

template <typename Scalar>
Region2D<Scalar> translateRegion(const Region2D<Scalar>& s,
                                 const Vector2<Scalar>& offset) {
  std::vector<typename Region2D<Scalar>::Ring> rings = s.rings();
  for (auto& ring : rings) {
    for (auto& p : ring) p += offset;
  }
  return Region2D<Scalar>::fromCanonicalRings(std::move(rings));
}

template <typename Scalar>
bool regionContains(const Region2D<Scalar>& a, const Region2D<Scalar>& b) {
  if (b.empty()) return true;
  if (a.empty()) return false;
  const auto boxA = *exactBox(a);
  const auto boxB = *exactBox(b);
  if (boxB.min.x() < boxA.min.x() || boxB.min.y() < boxA.min.y() ||
      boxB.max.x() > boxA.max.x() || boxB.max.y() > boxA.max.y()) {
    return false;
  }
  Overlay<Scalar> overlay;
  overlay.addRings(b.rings(), 0);
  overlay.addRings(a.rings(), 1);
  return !overlay.run(Rule::kDifference, true);
}

template <typename Scalar>
bool containsPoint(const Region2D<Scalar>& s, const Vector2<Scalar>& p) {
  const FPoint<Scalar> q = filtered<Scalar>(p);
  bool inside = false;
  for (const auto& ring : s.rings()) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const FPoint<Scalar> u = filtered<Scalar>(ring[i]);
      const FPoint<Scalar> v = filtered<Scalar>(ring[(i + 1) % n]);
      const int o = orient(u, v, q);
      if (o == 0) {
        const int cu = compareLex(q, u);
        const int cv = compareLex(q, v);
        if (cu == 0 || cv == 0 || cu != cv) return true;
      }
      const bool uAbove = compareY(u, q) > 0;
      const bool vAbove = compareY(v, q) > 0;
      if (uAbove == vAbove) continue;
      const bool crosses = uAbove ? orient(v, u, q) > 0 : orient(u, v, q) > 0;
      if (crosses) inside = !inside;
    }
  }
  return inside;
}

template <typename Scalar>
Scalar area(const Region2D<Scalar>& s) {
  Scalar twice(0);
  for (const auto& ring : s.rings()) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      twice += cross<Scalar>(ring[i], ring[(i + 1) % n]);
    }
  }
  return twice / Scalar(2);
}

template <typename Scalar>
std::optional<Box2<Scalar>> boundingBox(const Region2D<Scalar>& s) {
  return exactBox(s);
}

template <typename Scalar>
Region2D<Scalar> convexHull(const Region2D<Scalar>& s) {
  std::vector<Vector2<Scalar>> pts;
  for (const auto& ring : s.rings()) pts.insert(pts.end(), ring.begin(), ring.end());
  if (pts.size() < 3) return Region2D<Scalar>();
  std::sort(pts.begin(), pts.end(), lexLess<Scalar>);
  std::vector<Vector2<Scalar>> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Vector2<Scalar>& o, const Vector2<Scalar>& a,
                 const Vector2<Scalar>& b) {
    return cross<Scalar>(Vector2<Scalar>(a - o), Vector2<Scalar>(b - o));
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return Region2D<Scalar>();
  return Region2D<Scalar>::polygon(hull);
}

template <typename Scalar>
Region2D<Scalar> erode(const Region2D<Scalar>& s, const Scalar& eps) {
  if (eps <= 0 || s.empty()) return s;
  Region2D<Scalar> band;
  for (const auto& ring : s.rings()) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = ring[i];
      const auto& b = ring[(i + 1) % n];
      typename Region2D<Scalar>::Ring corners;
      for (const auto& p : {a, b}) {
        corners.emplace_back(p.x() - eps, p.y() - eps);
        corners.emplace_back(p.x() + eps, p.y() - eps);
        corners.emplace_back(p.x() + eps, p.y() + eps);
        corners.emplace_back(p.x() - eps, p.y() + eps);
      }
      band = unite(band, convexHull(Region2D<Scalar>::fromCanonicalRings({corners})));
    }
  }
  return subtract(s, band);
}

template <typename Scalar>
Triangulation<Scalar> triangulate(const Region2D<Scalar>& s) {
  using V = Vector2<Scalar>;
  Triangulation<Scalar> out;
  struct Seg {
    V a, b;  // a.x < b.x
  };
  std::vector<Scalar> xs;
  std::vector<Seg> segs;
  std::vector<V> vertices;
  for (const auto& ring : s.rings()) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const V& a = ring[i];
      const V& b = ring[(i + 1) % n];
      xs.push_back(a.x());
      vertices.push_back(a);
      if (a.x() < b.x()) segs.push_back({a, b});
      if (b.x() < a.x()) segs.push_back({b, a});
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  auto yAt = [](const Seg& g, const Scalar& x) {
    return g.a.y() + (x - g.a.x()) * (g.b.y() - g.a.y()) / (g.b.x() - g.a.x());
  };
  // Every boundary point lying on each vertical line x = xs[k].
  std::vector<std::vector<Scalar>> line(xs.size());
  for (const V& v : vertices) {
    const auto k = std::lower_bound(xs.begin(), xs.end(), v.x()) - xs.begin();
    line[k].push_back(v.y());
  }
  for (const Seg& g : segs) {
    auto k = std::upper_bound(xs.begin(), xs.end(), g.a.x()) - xs.begin();
    for (; k < static_cast<std::ptrdiff_t>(xs.size()) && xs[k] < g.b.x(); ++k) {
      line[k].push_back(yAt(g, xs[k]));
    }
  }
  for (std::size_t k = 0; k < xs.size(); ++k) {
    std::sort(line[k].begin(), line[k].end());
    line[k].erase(std::unique(line[k].begin(), line[k].end()), line[k].end());
    for (const Scalar& y : line[k]) out.boundaryPoints.emplace_back(xs[k], y);
  }
  auto column = [&](std::size_t k, const Scalar& y0, const Scalar& y1) {
    std::vector<V> pts;
    auto lo = std::lower_bound(line[k].begin(), line[k].end(), y0);
    auto hi = std::upper_bound(line[k].begin(), line[k].end(), y1);
    for (auto it = lo; it != hi; ++it) pts.emplace_back(xs[k], *it);
    return pts;
  };
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Scalar& xl = xs[k];
    const Scalar& xr = xs[k + 1];
    struct Span {
      Scalar yl, yr, mid;
    };
    std::vector<Span> spans;
    for (const Seg& g : segs) {
      if (g.a.x() <= xl && g.b.x() >= xr) {
        Scalar yl = yAt(g, xl);
        Scalar yr = yAt(g, xr);
        Scalar mid = yl + yr;
        spans.push_back({std::move(yl), std::move(yr), std::move(mid)});
      }
    }
    std::sort(spans.begin(), spans.end(),
              [](const Span& l, const Span& r) { return l.mid < r.mid; });
    for (std::size_t i = 0; i + 1 < spans.size(); i += 2) {
      const std::vector<V> left = column(k, spans[i].yl, spans[i + 1].yl);
      const std::vector<V> right = column(k + 1, spans[i].yr, spans[i + 1].yr);
      std::size_t li = 0, ri = 0;
      while (li + 1 < left.size() || ri + 1 < right.size()) {
        const bool advanceLeft =
            ri + 1 >= right.size() ||
            (li + 1 < left.size() && !(right[ri + 1].y() < left[li + 1].y()));
        if (advanceLeft) {
          out.triangles.push_back({left[li], right[ri], left[li + 1]});
          ++li;
        } else {
          out.triangles.push_back({left[li], right[ri], right[ri + 1]});
          ++ri;
        }
      }
    }
  }
  return out;
}

#define MADAWIPOL_INSTANTIATE_REGION(S)                                          \
  template class Region2D<S>;                                                    \
  template Region2D<S> booleanOp(BooleanKind, const Region2D<S>&,               \
                                 const Region2D<S>&);                            \
  template Region2D<S> transformRegion(const LinearTransform2D<S>&,             \
                                       const Region2D<S>&);                      \
  template Region2D<S> translateRegion(const Region2D<S>&, const Vector2<S>&);  \
  template bool regionContains(const Region2D<S>&, const Region2D<S>&);         \
  template bool containsPoint(const Region2D<S>&, const Vector2<S>&);           \
  template S area(const Region2D<S>&);                                           \
  template std::optional<Box2<S>> boundingBox(const Region2D<S>&);               \
  template Region2D<S> convexHull(const Region2D<S>&);                           \
  template Region2D<S> erode(const Region2D<S>&, const S&);                      \
  template Triangulation<S> triangulate(const Region2D<S>&);

MADAWIPOL_INSTANTIATE_REGION(Rational)
MADAWIPOL_INSTANTIATE_REGION(double)

#undef MADAWIPOL_INSTANTIATE_REGION

}  // namespace madawipol::geometry
