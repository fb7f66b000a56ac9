#include "padiq/ball.hpp"

#include "padiq/error.hpp"

#include <algorithm>

namespace padiq {

Ball::Ball(Int prime, Int center, ValN radius)
    : prime_(std::move(prime)), center_(std::move(center)), radius_(radius) {
    if (prime_ < 2) throw DomainError("ball prime must be at least 2");
    if (radius_.is_finite()) {
        if (radius_.value() < 0) throw DomainError("ball radius must be nonnegative");
        center_ = mod(center_, ipow(prime_, radius_.value()));
    }
}

bool Ball::contains(const Int& x) const {
    if (radius_.is_infinite()) return x == center_;
    return valuation(prime_, x - center_) >= radius_;
}

std::vector<Ball> Ball::subdivide(std::int64_t k) const {
    if (radius_.is_infinite()) throw DomainError("cannot subdivide a singleton ball");
    if (k < 0) throw DomainError("negative subdivision depth");
    Int step = ipow(prime_, radius_.value());
    Int count = ipow(prime_, k);
    std::vector<Ball> out;
    for (Int j = 0; j < count; ++j) out.emplace_back(prime_, center_ + j * step, radius_.plus(k));
    return out;
}

std::string Ball::to_string() const {
    return "B(" + center_.str() + ", " + radius_.to_string() + ")";
}

BallRelation ball_compare(const Ball& a, const Ball& b) {
    if (a.prime() != b.prime()) throw DomainError("balls over different primes");
    ValN d = valuation(a.prime(), a.center() - b.center());
    if (a.radius() == b.radius()) return d >= a.radius() ? BallRelation::Equal : BallRelation::Disjoint;
    if (a.radius() > b.radius())
        return d >= b.radius() ? BallRelation::FirstInsideSecond : BallRelation::Disjoint;
    return d >= a.radius() ? BallRelation::SecondInsideFirst : BallRelation::Disjoint;
}

bool ball_within(const Ball& a, const Ball& b) {
    auto r = ball_compare(a, b);
    return r == BallRelation::Equal || r == BallRelation::FirstInsideSecond;
}

namespace {

bool strictly_inside(const Ball& a, const Ball& b) {
    return ball_compare(a, b) == BallRelation::FirstInsideSecond;
}

}  // namespace

bool is_covered(const Ball& outer, const std::vector<Ball>& holes) {
    for (const auto& h : holes)
        if (ball_within(outer, h)) return true;
    if (outer.radius().is_infinite()) return false;
    // Maximal finite holes strictly inside outer are disjoint; they cover
    // outer iff their Haar measures add up to that of outer.
    std::vector<Ball> inside;
    for (const auto& h : holes)
        if (h.radius().is_finite() && strictly_inside(h, outer)) inside.push_back(h);
    std::vector<Ball> maximal;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < inside.size() && !dominated; ++j) {
            if (i == j) continue;
            auto r = ball_compare(inside[i], inside[j]);
            dominated = r == BallRelation::FirstInsideSecond || (r == BallRelation::Equal && j < i);
        }
        if (!dominated) maximal.push_back(inside[i]);
    }
    if (maximal.empty()) return false;
    std::int64_t r0 = outer.radius().value(), depth = 0;
    for (const auto& h : maximal) depth = std::max(depth, h.radius().value() - r0);
    Int sum = 0;
    for (const auto& h : maximal) sum += ipow(outer.prime(), depth - (h.radius().value() - r0));
    return sum == ipow(outer.prime(), depth);
}

SwissCheese::SwissCheese(Ball outer, std::vector<Ball> holes)
    : outer_(std::move(outer)), holes_(std::move(holes)) {
    for (std::size_t i = 0; i < holes_.size(); ++i) {
        if (holes_[i].prime() != outer_.prime()) throw DomainError("hole over a different prime");
        if (!strictly_inside(holes_[i], outer_))
            throw DomainError("hole " + holes_[i].to_string() + " is not strictly inside " +
                              outer_.to_string());
        for (std::size_t j = 0; j < i; ++j)
            if (ball_compare(holes_[i], holes_[j]) != BallRelation::Disjoint)
                throw DomainError("holes " + holes_[j].to_string() + " and " + holes_[i].to_string() +
                                  " overlap");
    }
    if (is_covered(outer_, holes_)) throw DomainError("swiss cheese " + to_string() + " is empty");
}

bool SwissCheese::member(const Int& x) const {
    if (!outer_.contains(x)) return false;
    for (const auto& h : holes_)
        if (h.contains(x)) return false;
    return true;
}

std::string SwissCheese::to_string() const {
    std::string s = outer_.to_string();
    if (holes_.empty()) return s;
    s += " \\ {";
    for (std::size_t i = 0; i < holes_.size(); ++i) {
        if (i) s += ", ";
        s += holes_[i].to_string();
    }
    return s + "}";
}

std::vector<SwissCheese> split_cheese(const SwissCheese& f, std::int64_t k) {
    if (f.outer().radius().is_infinite()) throw DomainError("cannot split a singleton cheese");
    std::vector<SwissCheese> out;
    for (const auto& piece : f.outer().subdivide(k)) {
        bool eaten = false;
        std::vector<Ball> inside;
        for (const auto& h : f.holes()) {
            auto r = ball_compare(h, piece);
            if (r == BallRelation::Equal || r == BallRelation::SecondInsideFirst) eaten = true;
            else if (r == BallRelation::FirstInsideSecond) inside.push_back(h);
        }
        if (eaten || is_covered(piece, inside)) continue;
        out.push_back(SwissCheese(SwissCheese::Unchecked{}, piece, std::move(inside)));
    }
    return out;
}

std::optional<SwissCheese> union_cheeses(const SwissCheese& x, const SwissCheese& y) {
    if (x.prime() != y.prime()) throw DomainError("cheeses over different primes");
    const SwissCheese& a = x.outer().radius() <= y.outer().radius() ? x : y;
    const SwissCheese& b = &a == &x ? y : x;
    if (!ball_within(b.outer(), a.outer())) return std::nullopt;
    std::vector<Ball> all = a.holes();
    all.insert(all.end(), b.holes().begin(), b.holes().end());
    if (is_covered(b.outer(), all)) return std::nullopt;

    // Points of a.outer missing from both: each hole h of a either misses
    // b.outer, or lies inside it and loses the parts b still covers.
    std::vector<Ball> holes;
    auto add = [&](const Ball& h) {
        if (std::find(holes.begin(), holes.end(), h) == holes.end()) holes.push_back(h);
    };
    for (const auto& h : a.holes()) {
        if (ball_compare(h, b.outer()) == BallRelation::Disjoint) {
            add(h);
            continue;
        }
        for (const auto& g : b.holes()) {
            auto r = ball_compare(h, g);
            if (r == BallRelation::Equal || r == BallRelation::FirstInsideSecond) add(h);
            else if (r == BallRelation::SecondInsideFirst) add(g);
        }
    }
    std::sort(holes.begin(), holes.end(), [](const Ball& p, const Ball& q) {
        if (p.center() != q.center()) return p.center() < q.center();
        return p.radius() < q.radius();
    });
    return SwissCheese(SwissCheese::Unchecked{}, a.outer(), std::move(holes));
}

Ball minimal_outer_ball(const SwissCheese& f) {
    Ball cur = f.outer();
    std::vector<Ball> holes = f.holes();
    while (cur.radius().is_finite() && !holes.empty()) {
        std::optional<Ball> only;
        int meeting = 0;
        for (const auto& child : cur.subdivide(1)) {
            if (is_covered(child, holes)) continue;
            if (++meeting > 1) break;
            only = child;
        }
        if (meeting != 1) break;
        cur = *only;
        std::vector<Ball> inside;
        for (const auto& h : holes)
            if (strictly_inside(h, cur)) inside.push_back(h);
        holes = std::move(inside);
    }
    return cur;
}

namespace {

std::int64_t max_offset(const Ball& outer, const std::vector<Ball>& holes) {
    std::int64_t k = 0;
    for (const auto& h : holes) k = std::max(k, h.radius().value() - outer.radius().value());
    return k;
}

void check_antichain(const Ball& outer, const std::vector<Ball>& holes) {
    if (outer.radius().is_infinite()) throw DomainError("outer ball must have a finite radius");
    for (std::size_t i = 0; i < holes.size(); ++i) {
        if (holes[i].radius().is_infinite())
            throw DomainError("hole " + holes[i].to_string() + " has infinite radius");
        if (!strictly_inside(holes[i], outer))
            throw DomainError("hole " + holes[i].to_string() + " is not strictly inside " +
                              outer.to_string());
        for (std::size_t j = 0; j < i; ++j)
            if (ball_compare(holes[i], holes[j]) != BallRelation::Disjoint)
                throw DomainError("holes " + holes[j].to_string() + " and " + holes[i].to_string() +
                                  " overlap");
    }
}

}  // namespace

Int residual_count(const Ball& outer, const std::vector<Ball>& holes) {
    check_antichain(outer, holes);
    std::int64_t kn = max_offset(outer, holes);
    Int n = ipow(outer.prime(), kn);
    for (const auto& h : holes) n -= ipow(outer.prime(), kn - (h.radius().value() - outer.radius().value()));
    return n;
}

std::vector<Ball> residual_balls(const Ball& outer, const std::vector<Ball>& holes,
                                 std::size_t enumeration_cap) {
    check_antichain(outer, holes);
    std::int64_t kn = max_offset(outer, holes);
    if (ipow(outer.prime(), kn) > Int(enumeration_cap))
        throw ResourceError("residual enumeration needs " + ipow(outer.prime(), kn).str() +
                            " sub-balls (cap " + std::to_string(enumeration_cap) + ")");
    std::vector<Ball> out;
    for (const auto& s : outer.subdivide(kn)) {
        bool in_hole = false;
        for (const auto& h : holes)
            if (ball_within(s, h)) {
                in_hole = true;
                break;
            }
        if (!in_hole) out.push_back(s);
    }
    return out;
}

std::optional<Ball> first_residual_ball(const Ball& outer, const std::vector<Ball>& holes) {
    if (is_covered(outer, holes)) return std::nullopt;
    std::vector<Ball> inside;
    for (const auto& h : holes)
        if (ball_compare(h, outer) != BallRelation::Disjoint) inside.push_back(h);
    if (inside.empty()) return outer;
    for (const auto& child : outer.subdivide(1))
        if (auto r = first_residual_ball(child, inside)) return r;
    return std::nullopt;
}

}  // namespace padiq
